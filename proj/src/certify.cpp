#include <rplink/certify.hpp>

#include <numeric>
#include <utility>

#include <nlohmann/json.hpp>

#include <rplink/mw.hpp>
#include <rplink/torus.hpp>

namespace rplink {

namespace {

int cycle_count(const Perm& p) {
  int n = (int)p.size();
  std::vector<char> seen(n + 1, 0);
  int cycles = 0;
  for (int s = 1; s <= n; ++s) {
    if (seen[s]) continue;
    ++cycles;
    for (int t = s; !seen[t]; t = p[t - 1]) seen[t] = 1;
  }
  return cycles;
}

// The left complement q with q * p = half twist (as permutations).
Perm left_complement_perm(const Perm& p) {
  Perm pinv = inverse_perm(p);
  Perm dp = delta_perm((int)p.size());
  return compose(dp, pinv);
}

BraidWord ascending_word(int n, int m) {
  std::vector<int> letters(m);
  std::iota(letters.begin(), letters.end(), 1);
  return make_word(n, std::move(letters));
}

// Each generator index 1..m occurs exactly once.
bool letters_cover_once(const std::vector<int>& letters, int m) {
  if ((int)letters.size() != m) return false;
  std::vector<char> seen(m + 1, 0);
  for (int k : letters) {
    if (k < 1 || k > m || seen[k]) return false;
    seen[k] = 1;
  }
  return true;
}

void verify_conjugation(const BraidWord& u, const BraidWord& word, const BraidWord& target) {
  if (!equal_positive(concat(u, word), concat(target, u)))
    throw CertificateFailed("conjugator does not carry the word onto the target");
}

}  // namespace

CertificateA check_a(const BraidWord& x, int d) {
  if (d < 3) throw HypothesisFailed("degree must be at least 3");
  if (x.n != d) throw HypothesisFailed("braid must live on d strands");
  bool pb = false;
  try {
    pb = is_permutation_braid(x);
  } catch (const NotPositive&) {
    pb = false;
  }
  if (!pb) throw HypothesisFailed("braid is not a permutation braid");
  if (exponent_sum(x) != nd(d))
    throw HypothesisFailed("exponent sum must equal (d-1)(d-2)/2");
  Perm p = perm_of(x);
  if (cycle_count(compose(p, delta_perm(d))) != 1)
    throw HypothesisFailed("projective closure must have one component");

  BraidWord x_prime = permutation_braid_of(left_complement_perm(p));
  if (!letters_cover_once(x_prime.letters, d - 1))
    throw CertificateFailed("complement is not a product of the d-1 distinct generators");

  CertificateA cert;
  cert.input = x;
  cert.x_prime = x_prime;
  cert.u = ascending_conjugator(x_prime.letters, d);
  cert.target = ascending_word(d, d - 1);
  verify_conjugation(cert.u, cert.x_prime, cert.target);
  cert.verified = true;
  return cert;
}

CertificateB check_b(const BraidWord& x, int d) {
  if (d < 4) throw HypothesisFailed("degree must be at least 4");
  if (x.n != d - 2) throw HypothesisFailed("braid must live on d-2 strands");
  BraidWord witness;
  try {
    witness = positive_witness(x);
  } catch (const NotPositive&) {
    throw HypothesisFailed("braid is not a positive element");
  }
  if (exponent_sum(x) != nd(d) - 1)
    throw HypothesisFailed("exponent sum must equal (d-1)(d-2)/2 - 1");
  auto [divisible, quotient] = left_divisible_by_delta(witness);
  if (!divisible) throw HypothesisFailed("half twist does not left-divide the braid");
  if (cycle_count(compose(perm_of(witness), delta_perm(d - 2))) != 1)
    throw HypothesisFailed("projective closure must have one component");

  if (exponent_sum(quotient) != d - 3)
    throw CertificateFailed("quotient exponent sum is not d-3");
  if (!letters_cover_once(quotient.letters, d - 3))
    throw CertificateFailed("quotient is not a product of the d-3 distinct generators");

  CertificateB cert;
  cert.input = x;
  cert.quotient = quotient;
  cert.u = ascending_conjugator(quotient.letters, d - 2);
  cert.target = ascending_word(d - 2, d - 3);
  verify_conjugation(cert.u, cert.quotient, cert.target);
  cert.verified = true;
  return cert;
}

DegreeDropReport degree_drop_fixture(int d) {
  if (d < 4) throw RangeViolation("fixture needs degree at least 4");
  std::vector<int> letters{-(d - 2)};
  for (int k : delta(d - 1).letters) letters.push_back(k);
  letters.push_back(2);

  DegreeDropReport r;
  r.word = make_word(d, std::move(letters));
  r.witness = positive_witness(r.word);
  r.positive = true;
  r.permutation_braid = is_permutation_braid(r.witness);
  r.fixture_signature = invariant_signature(r.word);
  r.reference_signature = invariant_signature(t_braid(d - 2, d));
  r.signatures_match = (r.fixture_signature == r.reference_signature);
  return r;
}

namespace {

nlohmann::json certificate_body(const BraidWord& input, const BraidWord& x_prime,
                                const BraidWord& u, const BraidWord& target,
                                bool verified, nlohmann::json hypotheses) {
  nlohmann::json j;
  j["hypotheses"] = std::move(hypotheses);
  j["input"] = to_text(input);
  j["x_prime"] = to_text(x_prime);
  j["u"] = to_text(u);
  j["target"] = to_text(target);
  j["verified"] = verified;
  return j;
}

}  // namespace

std::string certificate_json(const CertificateA& c) {
  nlohmann::json h{{"permutation_braid", true},
                   {"exponent_sum", true},
                   {"knotted_closure", true}};
  return certificate_body(c.input, c.x_prime, c.u, c.target, c.verified, h).dump();
}

std::string certificate_json(const CertificateB& c) {
  nlohmann::json h{{"positive", true},
                   {"exponent_sum", true},
                   {"left_divisible", true},
                   {"knotted_closure", true}};
  return certificate_body(c.input, c.quotient, c.u, c.target, c.verified, h).dump();
}

}  // namespace rplink
