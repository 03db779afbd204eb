#pragma once

#include <string>

#include <rplink/braid.hpp>
#include <rplink/closure.hpp>
#include <rplink/errors.hpp>

namespace rplink {

// Machine-checkable witness that a permutation d-braid with maximal exponent
// sum and knotted projective closure closes to the (d, d-2) torus link: the
// half-twist complement X' is conjugated onto the ascending word by u.
struct CertificateA {
  BraidWord input;
  BraidWord x_prime;  // positive word with X' * X = half twist
  BraidWord u;        // positive conjugator, u * x_prime = target * u
  BraidWord target;   // sigma_1 ... sigma_{d-1}
  bool verified = false;
};

// Same witness shape for the companion criterion one degree down: a positive
// braid on d-2 strands that factors as half twist times a quotient A.
struct CertificateB {
  BraidWord input;
  BraidWord quotient;  // A with input = half twist * A
  BraidWord u;         // positive conjugator, u * quotient = target * u
  BraidWord target;    // sigma_1 ... sigma_{d-3}
  bool verified = false;
};

// Checks the hypotheses (permutation braid on d strands, exponent sum
// (d-1)(d-2)/2, one-component projective closure), then constructs and
// re-verifies the conjugation certificate.
CertificateA check_a(const BraidWord& x, int d);  // throws HypothesisFailed, CertificateFailed

// Checks positivity, exponent sum (d-1)(d-2)/2 - 1 on d-2 strands, left
// divisibility by the half twist, and knottedness; certifies the quotient.
CertificateB check_b(const BraidWord& x, int d);  // throws HypothesisFailed, CertificateFailed

// The stabilization fixture: the (d-1)-strand half twist framed by one
// inverse and one plain letter, viewed as a d-braid. Positive as an element
// but not a permutation braid, and its projective closure matches the
// (d, d-2) torus reference.
struct DegreeDropReport {
  BraidWord word;
  BraidWord witness;            // all-positive word for the same element
  bool positive = false;
  bool permutation_braid = true;
  bool signatures_match = false;
  InvariantSignature fixture_signature;
  InvariantSignature reference_signature;
};

DegreeDropReport degree_drop_fixture(int d);  // throws RangeViolation for d < 4

std::string certificate_json(const CertificateA& c);
std::string certificate_json(const CertificateB& c);

}  // namespace rplink
