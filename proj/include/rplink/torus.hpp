#pragma once

#include <string>

#include <rplink/braid.hpp>

namespace rplink {

// Parameters of a projective torus link. Constraint: p == q (mod 2), not both
// zero. (p, q), (-p, -q) and (q, p) describe isotopic links.
struct TorusParams {
  int p = 0;
  int q = 0;
};

// Coordinates on the quadric carrying the link: a = (p+q)/2, b = (p-q)/2.
struct Bidegree {
  int a = 0;
  int b = 0;
};

Bidegree bidegree_of(TorusParams t);  // throws ParityViolation
TorusParams params_of(Bidegree b);    // throws ParityViolation on (0,0)

// Representative with p >= q >= 0 when reachable by the two isotopy moves;
// otherwise p >= |q| with the sign of q retained (mirrors are distinct).
TorusParams canonicalize(TorusParams t);

// The standard positive braid on p strands with q rows, alternating the odd
// and even generator batches; q < 0 mirrors (negates) all letters.
BraidWord t_braid(int p, int q);  // throws ParityViolation, RangeViolation

long long cr_formula(TorusParams t);  // p(q-1)/2, requires 1 <= q <= p
long long ps_formula(TorusParams t);  // min(|p|, |q|)
int component_count(TorusParams t);   // gcd of the bidegree

// Homology records on the hyperboloid complement: the class in the stated
// (alpha, beta) basis, doubled linking numbers with the two core circles, and
// the classes in the two solid-torus pieces. All linking numbers are stored
// doubled so they stay integers.
struct TorusHomology {
  int class_alpha = 0;
  int class_beta = 0;
  int dlk_u = 0;
  int dlk_v = 0;
  int class_in_U = 0;
  int class_in_V = 0;
  int dlk_alpha_u = 1;
  int dlk_beta_u = 1;
  int dlk_alpha_v = 1;
  int dlk_beta_v = -1;
};

TorusHomology homology_data(TorusParams t);

// CLI-facing JSON: {p, q, a, b, components, cr, ps, dlk_u, dlk_v}; cr is null
// when the 1 <= q <= p precondition fails.
std::string torus_json(TorusParams t);

}  // namespace rplink
