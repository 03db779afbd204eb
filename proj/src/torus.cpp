#include <rplink/torus.hpp>

#include <algorithm>
#include <array>
#include <cstdlib>
#include <numeric>

#include <nlohmann/json.hpp>

namespace rplink {

namespace {

void check_params(TorusParams t) {
  if (t.p == 0 && t.q == 0) throw ParityViolation("(p, q) must not both be zero");
  if (((t.p - t.q) % 2 + 2) % 2 != 0)
    throw ParityViolation("p and q must have equal parity");
}

}  // namespace

Bidegree bidegree_of(TorusParams t) {
  check_params(t);
  return Bidegree{(t.p + t.q) / 2, (t.p - t.q) / 2};
}

TorusParams params_of(Bidegree b) {
  if (b.a == 0 && b.b == 0) throw ParityViolation("(a, b) must not both be zero");
  return TorusParams{b.a + b.b, b.a - b.b};
}

TorusParams canonicalize(TorusParams t) {
  check_params(t);
  std::array<TorusParams, 4> orbit{{{t.p, t.q}, {t.q, t.p}, {-t.p, -t.q}, {-t.q, -t.p}}};
  TorusParams best = t;
  bool found = false;
  for (TorusParams c : orbit) {
    bool ok = c.p >= std::abs(c.q);
    if (!ok) continue;
    if (!found || c.q > best.q || (c.q == best.q && c.p > best.p)) best = c;
    found = true;
  }
  return best;
}

BraidWord t_braid(int p, int q) {
  if (p < 1) throw RangeViolation("strand count p must be at least 1");
  check_params({p, q});
  bool mirror = q < 0;
  int rows = std::abs(q);
  std::vector<int> letters;
  for (int r = 1; r <= rows; ++r) {
    int first = r % 2 == 1 ? 1 : 2;
    for (int k = first; k <= p - 1; k += 2) letters.push_back(mirror ? -k : k);
  }
  return make_word(p, std::move(letters));
}

long long cr_formula(TorusParams t) {
  check_params(t);
  if (t.q < 1 || t.q > t.p) throw RangeViolation("crossing formula needs 1 <= q <= p");
  return (long long)t.p * (t.q - 1) / 2;
}

long long ps_formula(TorusParams t) {
  check_params(t);
  return std::min(std::abs(t.p), std::abs(t.q));
}

int component_count(TorusParams t) {
  Bidegree b = bidegree_of(t);
  return (int)std::gcd(std::abs(b.a), std::abs(b.b));
}

TorusHomology homology_data(TorusParams t) {
  Bidegree b = bidegree_of(t);
  TorusHomology h;
  h.class_alpha = b.a;
  h.class_beta = b.b;
  h.dlk_u = t.p;
  h.dlk_v = t.q;
  h.class_in_U = t.q;
  h.class_in_V = t.p;
  return h;
}

std::string torus_json(TorusParams t) {
  Bidegree b = bidegree_of(t);
  nlohmann::json j;
  j["p"] = t.p;
  j["q"] = t.q;
  j["a"] = b.a;
  j["b"] = b.b;
  j["components"] = component_count(t);
  if (t.q >= 1 && t.q <= t.p)
    j["cr"] = cr_formula(t);
  else
    j["cr"] = nullptr;
  j["ps"] = ps_formula(t);
  j["dlk_u"] = t.p;
  j["dlk_v"] = t.q;
  return j.dump();
}

}  // namespace rplink
