#include <rplink/braid.hpp>

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace rplink {

namespace {

void check_strands(int n) {
  if (n < 1) throw FormatError("strand count must be at least 1");
}

void check_letter(int n, int k) {
  int a = std::abs(k);
  if (a < 1 || a > n - 1)
    throw FormatError("letter " + std::to_string(k) + " out of range for " + std::to_string(n) +
                      " strands");
}

bool has_negative(const BraidWord& w) {
  return std::any_of(w.letters.begin(), w.letters.end(), [](int k) { return k < 0; });
}

// Starting set membership: sigma_j left-divides the permutation braid with
// image array p iff p has a descent at j.
bool starts_with(const Perm& p, int j) { return p[j - 1] > p[j]; }

// Finishing set membership: sigma_j right-divides iff p^{-1} has a descent at
// j, i.e. the value j appears to the right of j+1.
bool finishes_with(const Perm& p, int j) {
  int pos_j = -1, pos_j1 = -1;
  for (int i = 0; i < (int)p.size(); ++i) {
    if (p[i] == j) pos_j = i;
    if (p[i] == j + 1) pos_j1 = i;
  }
  return pos_j > pos_j1;
}

// Move every head letter of B that fits onto the tail of A. Returns true if
// anything moved. A <- A * t_j swaps the values j, j+1 of A; B <- t_j * B
// swaps the positions j, j+1 of B.
bool slide_pair(Perm& a, Perm& b) {
  int n = (int)a.size();
  bool moved = false;
  bool progress = true;
  while (progress) {
    progress = false;
    for (int j = 1; j < n; ++j) {
      if (starts_with(b, j) && !finishes_with(a, j)) {
        for (int i = 0; i < n; ++i) {
          if (a[i] == j)
            a[i] = j + 1;
          else if (a[i] == j + 1)
            a[i] = j;
        }
        std::swap(b[j - 1], b[j]);
        moved = progress = true;
      }
    }
  }
  return moved;
}

Perm transposition(int n, int j) {
  Perm p = identity_perm(n);
  std::swap(p[j - 1], p[j]);
  return p;
}

std::vector<Perm> left_weight(int n, std::vector<Perm> factors) {
  bool changed = true;
  while (changed) {
    changed = false;
    factors.erase(std::remove_if(factors.begin(), factors.end(),
                                 [](const Perm& p) { return is_identity(p); }),
                  factors.end());
    for (int i = (int)factors.size() - 2; i >= 0; --i) {
      if (slide_pair(factors[i], factors[i + 1])) changed = true;
    }
  }
  return factors;
}

CanonicalForm canonical_form_positive(const BraidWord& w) {
  std::vector<Perm> factors;
  factors.reserve(w.letters.size());
  for (int k : w.letters) factors.push_back(transposition(w.n, k));
  return CanonicalForm{w.n, left_weight(w.n, std::move(factors))};
}

}  // namespace

BraidWord make_word(int n, std::vector<int> letters) {
  check_strands(n);
  for (int k : letters) check_letter(n, k);
  return BraidWord{n, std::move(letters)};
}

BraidWord concat(const BraidWord& a, const BraidWord& b) {
  if (a.n != b.n) throw FormatError("strand counts differ in concatenation");
  BraidWord out = a;
  out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
  return out;
}

BraidWord inverse(const BraidWord& w) {
  BraidWord out{w.n, {}};
  out.letters.reserve(w.letters.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) out.letters.push_back(-*it);
  return out;
}

BraidWord delta(int n) {
  check_strands(n);
  BraidWord out{n, {}};
  for (int top = n - 1; top >= 1; --top)
    for (int k = 1; k <= top; ++k) out.letters.push_back(k);
  return out;
}

BraidWord tau(const BraidWord& w) {
  BraidWord out{w.n, {}};
  out.letters.reserve(w.letters.size());
  for (int k : w.letters) out.letters.push_back(k > 0 ? w.n - k : -(w.n + k));
  return out;
}

long long exponent_sum(const BraidWord& w) {
  long long e = 0;
  for (int k : w.letters) e += k > 0 ? 1 : -1;
  return e;
}

Perm identity_perm(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 1);
  return p;
}

Perm delta_perm(int n) {
  Perm p(n);
  for (int i = 0; i < n; ++i) p[i] = n - i;
  return p;
}

Perm perm_of(const BraidWord& w) {
  Perm p = identity_perm(w.n);
  for (int k : w.letters) {
    int j = std::abs(k);
    // Applying sigma_j (or its inverse) after p swaps the values j, j+1.
    for (int i = 0; i < w.n; ++i) {
      if (p[i] == j)
        p[i] = j + 1;
      else if (p[i] == j + 1)
        p[i] = j;
    }
  }
  return p;
}

Perm compose(const Perm& p, const Perm& q) {
  Perm r(p.size());
  for (size_t i = 0; i < p.size(); ++i) r[i] = q[p[i] - 1];
  return r;
}

Perm inverse_perm(const Perm& p) {
  Perm r(p.size());
  for (size_t i = 0; i < p.size(); ++i) r[p[i] - 1] = (int)i + 1;
  return r;
}

int inversion_count(const Perm& p) {
  int c = 0;
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++c;
  return c;
}

bool is_identity(const Perm& p) {
  for (size_t i = 0; i < p.size(); ++i)
    if (p[i] != (int)i + 1) return false;
  return true;
}

BraidWord permutation_braid_of(const Perm& p) {
  Perm a = p;
  std::vector<int> out;
  for (size_t i = 1; i < a.size(); ++i)
    for (size_t j = i; j > 0 && a[j - 1] > a[j]; --j) {
      std::swap(a[j - 1], a[j]);
      out.push_back((int)j);
    }
  return BraidWord{(int)p.size(), std::move(out)};
}

bool is_permutation_braid(const BraidWord& w) {
  BraidWord pos;
  try {
    pos = positive_witness(w);
  } catch (const NotPositive&) {
    return false;
  }
  return canonical_form_positive(pos).factors.size() <= 1;
}

CanonicalForm canonical_form(const BraidWord& w) {
  return canonical_form_positive(has_negative(w) ? positive_witness(w) : w);
}

BraidWord word_of(const CanonicalForm& cf) {
  BraidWord out{cf.n, {}};
  for (const Perm& f : cf.factors) {
    BraidWord fw = permutation_braid_of(f);
    out.letters.insert(out.letters.end(), fw.letters.begin(), fw.letters.end());
  }
  return out;
}

std::string to_string(const CanonicalForm& cf) {
  std::string s = std::to_string(cf.n) + ";";
  for (size_t i = 0; i < cf.factors.size(); ++i) {
    s += i == 0 ? " " : "|";
    s += "[";
    for (size_t j = 0; j < cf.factors[i].size(); ++j) {
      if (j) s += ",";
      s += std::to_string(cf.factors[i][j]);
    }
    s += "]";
  }
  return s;
}

bool equal_positive(const BraidWord& a, const BraidWord& b) {
  return canonical_form(a) == canonical_form(b);
}

BraidWord positive_witness(const BraidWord& w) {
  if (!has_negative(w)) return w;
  int n = w.n;
  // Maintain the element as (half twist)^{-k} * P with P positive: a positive
  // letter appends to P; sigma_i^{-1} contributes via the factorization
  // sigma_i^{-1} = Delta^{-1} * (Delta sigma_i^{-1}), where Delta sigma_i^{-1}
  // is the permutation braid whose image array is j -> t_i(n+1-j). Pulling the
  // new Delta^{-1} to the front conjugates P by the flip map.
  long long k = 0;
  std::vector<int> p;
  for (int letter : w.letters) {
    if (letter > 0) {
      p.push_back(letter);
    } else {
      int i = -letter;
      for (int& x : p) x = n - x;
      Perm q(n);
      for (int j = 1; j <= n; ++j) {
        int v = n + 1 - j;
        if (v == i)
          v = i + 1;
        else if (v == i + 1)
          v = i;
        q[j - 1] = v;
      }
      BraidWord qw = permutation_braid_of(q);
      p.insert(p.end(), qw.letters.begin(), qw.letters.end());
      ++k;
    }
  }
  CanonicalForm cf = canonical_form_positive(BraidWord{n, std::move(p)});
  if ((long long)cf.factors.size() < k)
    throw NotPositive("element is a proper half-twist denominator");
  Perm dp = delta_perm(n);
  for (long long i = 0; i < k; ++i)
    if (cf.factors[i] != dp) throw NotPositive("left division by the half twist fails");
  CanonicalForm rest{n, {cf.factors.begin() + k, cf.factors.end()}};
  return word_of(rest);
}

BraidWord complement_in_delta(const BraidWord& x) {
  int n = x.n;
  Perm ip = inverse_perm(perm_of(x));
  Perm c(n);
  for (int i = 0; i < n; ++i) c[i] = n + 1 - ip[i];
  return permutation_braid_of(c);
}

std::pair<bool, BraidWord> left_divisible_by_delta(const BraidWord& w) {
  CanonicalForm cf = canonical_form(w);
  if (cf.factors.empty() || cf.factors.front() != delta_perm(cf.n))
    return {false, BraidWord{cf.n, {}}};
  CanonicalForm rest{cf.n, {cf.factors.begin() + 1, cf.factors.end()}};
  return {true, word_of(rest)};
}

BraidWord ascending_conjugator(const std::vector<int>& ys, int n) {
  int m = (int)ys.size();
  std::vector<bool> seen(m + 1, false);
  for (int v : ys) {
    if (v < 1 || v > m || seen[v])
      throw NotAPermutationOfGenerators("expected a permutation of 1.." + std::to_string(m));
    seen[v] = true;
  }
  if (m > n - 1) throw RangeViolation("generator word needs at most n-1 distinct indices");

  // Tokens are runs (s..e) standing for the ascending product s_s s_{s+1}..s_e;
  // only the token with the currently largest start is composite. Reduce the
  // top two groups per the two order cases, collecting the conjugator pieces;
  // each level's piece multiplies on the right of all later ones.
  struct Tok {
    int s, e;
  };
  std::vector<Tok> word;
  word.reserve(m);
  for (int v : ys) word.push_back({v, v});
  std::vector<int> u;
  for (int k = m; k >= 2; --k) {
    int top = -1, sec = -1;
    for (int i = 0; i < (int)word.size(); ++i) {
      if (word[i].s == k) top = i;
      if (word[i].s == k - 1) sec = i;
    }
    if (sec < top) {
      // ... x_{k-1} ... x_k ... : the top run commutes back to x_{k-1}.
      word[sec].e = word[top].e;
      word[sec].s = k - 1;
      word.erase(word.begin() + top);
    } else {
      // A x_k B x_{k-1} C: conjugating by x_{k-1} C yields x'_{k-1} C A B.
      std::vector<Tok> a(word.begin(), word.begin() + top);
      std::vector<Tok> b(word.begin() + top + 1, word.begin() + sec);
      std::vector<Tok> c(word.begin() + sec + 1, word.end());
      std::vector<int> piece{k - 1};
      for (const Tok& t : c) piece.push_back(t.s);  // all plain letters here
      std::vector<Tok> next{{k - 1, word[top].e}};
      next.insert(next.end(), c.begin(), c.end());
      next.insert(next.end(), a.begin(), a.end());
      next.insert(next.end(), b.begin(), b.end());
      word = std::move(next);
      u.insert(u.begin(), piece.begin(), piece.end());
    }
  }
  return make_word(n, std::move(u));
}

std::string to_text(const BraidWord& w) {
  std::string s = "B" + std::to_string(w.n) + ":";
  for (int k : w.letters) s += " " + std::to_string(k);
  return s;
}

BraidWord parse_braid_text(const std::string& text) {
  size_t i = 0;
  while (i < text.size() && std::isspace((unsigned char)text[i])) ++i;
  if (i >= text.size() || text[i] != 'B') throw FormatError("expected leading 'B'");
  ++i;
  size_t colon = text.find(':', i);
  if (colon == std::string::npos) throw FormatError("expected ':' after strand count");
  int n = 0;
  try {
    size_t used = 0;
    n = std::stoi(text.substr(i, colon - i), &used);
    if (i + used != colon) throw FormatError("bad strand count");
  } catch (const std::exception&) {
    throw FormatError("bad strand count");
  }
  std::istringstream rest(text.substr(colon + 1));
  std::vector<int> letters;
  std::string tok;
  while (rest >> tok) {
    try {
      size_t used = 0;
      int k = std::stoi(tok, &used);
      if (used != tok.size()) throw FormatError("bad letter '" + tok + "'");
      letters.push_back(k);
    } catch (const FormatError&) {
      throw;
    } catch (const std::exception&) {
      throw FormatError("bad letter '" + tok + "'");
    }
  }
  return make_word(n, std::move(letters));
}

}  // namespace rplink
