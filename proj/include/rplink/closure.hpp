#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include <rplink/braid.hpp>

namespace rplink {

// Closure of a braid diagram drawn in a round disk, with the n bottom ends
// glued to the n top ends through the boundary in reversed order; components
// are the cycles of the resulting permutation.
struct ClosureDescriptor {
  BraidWord braid;
  Perm closure_perm;                        // perm of (word * half twist)
  std::vector<std::vector<int>> components;  // cycles, ordered by least strand
  std::vector<int> component_lengths;        // aligned with components
};

// Symmetric integer matrix holding twice the pairwise linking numbers, so
// half-integer values (possible for projective closures) stay exact.
struct DoubledLinkingMatrix {
  Eigen::MatrixXi entries;
  int size() const { return (int)entries.rows(); }
};

// Witness statistics of the given diagram (not minimized invariants).
struct DiagramStats {
  int arcs = 0;
  long long crossings = 0;
  bool all_positive = true;
  std::vector<long long> per_component_self_crossings;
};

// Order-independent fingerprint of a closure. Equality compares component
// counts and the canonicalized linking matrices of the closure and of its
// two-fold cover; the sorted length profile is carried as information only
// (diagrams of the same link can use different arc counts).
struct InvariantSignature {
  int components = 0;
  std::vector<int> component_lengths;
  Eigen::MatrixXi dlk_rp3;
  int lift_components = 0;
  Eigen::MatrixXi dlk_s3_lift;
};

bool matrix_equal(const Eigen::MatrixXi& a, const Eigen::MatrixXi& b);

inline bool operator==(const InvariantSignature& a, const InvariantSignature& b) {
  return a.components == b.components && a.lift_components == b.lift_components &&
         matrix_equal(a.dlk_rp3, b.dlk_rp3) && matrix_equal(a.dlk_s3_lift, b.dlk_s3_lift);
}
inline bool operator!=(const InvariantSignature& a, const InvariantSignature& b) {
  return !(a == b);
}

ClosureDescriptor describe_closure(const BraidWord& w);

// The braid of the orientation double cover: w followed by its flip.
BraidWord lift(const BraidWord& w);

// For each component of the plain closure of lift(w) (indexed by least
// strand), the index of the disk-closure component it covers. Odd-length
// components are covered once, even-length ones twice.
std::vector<int> lift_component_map(const BraidWord& w);

// Doubled linking matrix of the plain (unglued) closure of w: signed count of
// crossings between distinct components.
DoubledLinkingMatrix s3_doubled_linking_matrix(const BraidWord& w);

// Doubled linking matrix of the disk closure, computed through the double
// cover: entry (i,j) sums the plain linking numbers over covering pairs.
DoubledLinkingMatrix rp3_doubled_linking_matrix(const BraidWord& w);

DiagramStats diagram_stats(const BraidWord& w);

InvariantSignature invariant_signature(const BraidWord& w);

// Canonical representative of a symmetric integer matrix under simultaneous
// row/column permutation: iterated neighborhood refinement, then lexicographic
// minimization inside refinement cells (cells whose transpositions all fix the
// matrix are skipped).
Eigen::MatrixXi canonical_matrix(const Eigen::MatrixXi& m);

// JSON with fields components, component_lengths, dlk_rp3, lift_components,
// dlk_s3_lift; matrices row-major.
std::string signature_json(const InvariantSignature& s);

}  // namespace rplink
