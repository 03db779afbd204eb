#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <rplink/braid.hpp>
#include <rplink/torus.hpp>

#include <algorithm>

using namespace rplink;

TEST_CASE("bidegree conversion") {
  CHECK(bidegree_of({4, 2}).a == 3);
  CHECK(bidegree_of({4, 2}).b == 1);
  TorusParams t = params_of({1, 1});
  CHECK(t.p == 2);
  CHECK(t.q == 0);
  CHECK(bidegree_of({5, 3}).a == 4);
  CHECK(bidegree_of({5, 3}).b == 1);
  CHECK_THROWS_AS(bidegree_of({3, 2}), ParityViolation);
  CHECK_THROWS_AS(bidegree_of({0, 0}), ParityViolation);

  for (int p = -6; p <= 6; ++p)
    for (int q = -6; q <= 6; ++q) {
      if ((p + q) % 2 != 0 || (p == 0 && q == 0)) continue;
      TorusParams back = params_of(bidegree_of({p, q}));
      CHECK(back.p == p);
      CHECK(back.q == q);
    }
}

TEST_CASE("canonical parameter representative") {
  auto c1 = canonicalize({-4, -2});
  CHECK(c1.p == 4);
  CHECK(c1.q == 2);
  auto c2 = canonicalize({2, 4});
  CHECK(c2.p == 4);
  CHECK(c2.q == 2);
  auto c3 = canonicalize({3, 3});
  CHECK(c3.p == 3);
  CHECK(c3.q == 3);
  // Mixed signs are never silently mirrored.
  auto c4 = canonicalize({-3, 5});
  CHECK(c4.p == 5);
  CHECK(c4.q == -3);
}

TEST_CASE("torus braid words") {
  CHECK(t_braid(2, 4).letters == std::vector<int>{1, 1});
  CHECK(t_braid(2, 4).n == 2);
  CHECK(t_braid(3, 5).letters == std::vector<int>{1, 2, 1, 2, 1});
  CHECK(t_braid(5, 7).letters ==
        std::vector<int>{1, 3, 2, 4, 1, 3, 2, 4, 1, 3, 2, 4, 1, 3});
  CHECK(t_braid(4, 0).letters.empty());
  CHECK(t_braid(1, 1).letters.empty());
  CHECK_THROWS_AS(t_braid(3, 2), ParityViolation);
  // Mirrored rows: all letters negated.
  CHECK(t_braid(3, -3).letters == std::vector<int>{-1, -2, -1});
}

TEST_CASE("exponent sum of torus words") {
  for (int p = 1; p <= 12; ++p)
    for (int q = p % 2; q <= 12; q += 2) {
      BraidWord b = t_braid(p, q);
      CHECK(exponent_sum(b) == (long long)q * (p - 1) / 2);
      CHECK((long long)b.letters.size() == (long long)q * (p - 1) / 2);
      CHECK(std::all_of(b.letters.begin(), b.letters.end(), [](int k) { return k > 0; }));
    }
}

TEST_CASE("closed-form crossing and arc counts") {
  CHECK(cr_formula({5, 3}) == 5);
  CHECK(cr_formula({4, 2}) == 2);
  CHECK(cr_formula({7, 1}) == 0);
  CHECK_THROWS_AS(cr_formula({3, 5}), RangeViolation);
  CHECK_THROWS_AS(cr_formula({4, 0}), RangeViolation);

  CHECK(ps_formula({5, 3}) == 3);
  CHECK(ps_formula({6, 4}) == 4);
  CHECK(ps_formula({-4, 2}) == 2);
}

TEST_CASE("component counts from the bidegree") {
  CHECK(component_count({4, 2}) == 1);
  CHECK(component_count({2, 2}) == 2);
  CHECK(component_count({6, 2}) == 2);
  CHECK(component_count({2, 0}) == 1);
  CHECK(component_count({12, 12}) == 12);
}

TEST_CASE("hyperboloid homology record") {
  TorusHomology h = homology_data({2, 0});
  CHECK(h.class_alpha == 1);
  CHECK(h.class_beta == 1);
  CHECK(h.dlk_u == 2);
  CHECK(h.dlk_v == 0);

  TorusHomology k = homology_data({6, 4});
  CHECK(k.class_in_U == 4);
  CHECK(k.class_in_V == 6);
  CHECK(k.dlk_alpha_u == 1);
  CHECK(k.dlk_beta_u == 1);
  CHECK(k.dlk_alpha_v == 1);
  CHECK(k.dlk_beta_v == -1);

  for (int p = -6; p <= 6; ++p)
    for (int q = -6; q <= 6; q += 1) {
      if ((p + q) % 2 != 0 || (p == 0 && q == 0)) continue;
      TorusHomology d = homology_data({p, q});
      Bidegree bd = bidegree_of({p, q});
      CHECK(d.dlk_u == bd.a * d.dlk_alpha_u + bd.b * d.dlk_beta_u);
      CHECK(d.dlk_v == bd.a * d.dlk_alpha_v + bd.b * d.dlk_beta_v);
    }
}
