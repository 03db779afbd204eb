#pragma once

#include <string>
#include <utility>
#include <vector>

#include <rplink/errors.hpp>

namespace rplink {

// A braid word on n strands. Letters are signed generator indices: +k stands
// for sigma_k (a positive crossing of strands k, k+1), -k for its inverse.
// Words are read left to right.
struct BraidWord {
  int n = 1;
  std::vector<int> letters;
};

// A permutation of {1..n} stored as its image array: p[i] is the image of
// i+1. For a braid word, perm_of maps the top position of a strand to its
// bottom position. Composition convention (fixed once, used everywhere):
// compose(p, q) applies p first, then q — matching word concatenation.
using Perm = std::vector<int>;

BraidWord make_word(int n, std::vector<int> letters);  // validates letter range
BraidWord concat(const BraidWord& a, const BraidWord& b);
BraidWord inverse(const BraidWord& w);

// The positive half twist: (s1..s_{n-1})(s1..s_{n-2})...(s1).
BraidWord delta(int n);

// The flip automorphism sigma_k -> sigma_{n-k} (letter-wise, sign preserved);
// equals conjugation by the half twist.
BraidWord tau(const BraidWord& w);

long long exponent_sum(const BraidWord& w);

Perm identity_perm(int n);
Perm delta_perm(int n);  // i -> n+1-i
Perm perm_of(const BraidWord& w);
Perm compose(const Perm& p, const Perm& q);  // p first, then q
Perm inverse_perm(const Perm& p);
int inversion_count(const Perm& p);
bool is_identity(const Perm& p);

// The positive word realizing p with every pair of strands crossing at most
// once; emitted deterministically by insertion-sorting the image array and
// recording one letter per adjacent swap. Inverse to perm_of on its image.
BraidWord permutation_braid_of(const Perm& p);

// True iff the element is positive and its normal form has at most one factor.
bool is_permutation_braid(const BraidWord& w);

// Left-greedy normal form of a positive element: a sequence of non-identity
// permutation-braid factors, each taking as much of the remainder as fits.
struct CanonicalForm {
  int n = 1;
  std::vector<Perm> factors;
  bool operator==(const CanonicalForm&) const = default;
};

// Accepts words with inverse letters as long as the element itself is
// positive (decided exactly); otherwise throws NotPositive.
CanonicalForm canonical_form(const BraidWord& w);
BraidWord word_of(const CanonicalForm& cf);
std::string to_string(const CanonicalForm& cf);  // "n; [images]|[images]|..."

// Equality of positive elements via normal forms. Throws NotPositive if
// either side is not positive.
bool equal_positive(const BraidWord& a, const BraidWord& b);

// An all-positive word equal to w in the braid group, or NotPositive. The
// element is scanned once, accumulating half-twist denominators; positivity
// is decided by exact left division at the end.
BraidWord positive_witness(const BraidWord& w);

// The right complement c with x * c = half twist; meaningful when x is a
// permutation braid (then exponent sums add to n(n-1)/2).
BraidWord complement_in_delta(const BraidWord& x);

// Whether the half twist left-divides the (positive) element; on success the
// second member is a positive word for the quotient.
std::pair<bool, BraidWord> left_divisible_by_delta(const BraidWord& w);

// Given ys, a permutation of (1..m) with m <= n-1, returns a positive word u
// over sigma_1..sigma_{m-1} with u * (s_{ys1}...s_{ysm}) = (s_1...s_m) * u.
// Built by the two-case recursion on the last two letter groups; composite
// run tokens are expanded only in the final output.
BraidWord ascending_conjugator(const std::vector<int>& ys, int n);

// Text format: "B<n>: k1 k2 ... km"; the empty word prints as "B<n>:".
std::string to_text(const BraidWord& w);
BraidWord parse_braid_text(const std::string& text);

}  // namespace rplink
