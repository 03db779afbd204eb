#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <rplink/braid.hpp>
#include <rplink/closure.hpp>
#include <rplink/mw.hpp>
#include <rplink/torus.hpp>

#include <algorithm>
#include <functional>
#include <vector>

using namespace rplink;

namespace {

std::vector<std::vector<int>> compositions_up_to(int max_total) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int remaining) {
    if (!cur.empty()) out.push_back(cur);
    for (int a = 1; a <= remaining; ++a) {
      cur.push_back(a);
      rec(remaining - a);
      cur.pop_back();
    }
  };
  rec(max_total);
  return out;
}

}  // namespace

TEST_CASE("nodal count") {
  CHECK(nd(4) == 3);
  CHECK(nd(3) == 1);
  CHECK(nd(2) == 0);
  CHECK(nd(12) == 55);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(make_wparams({}), InvalidComposition);
  CHECK_THROWS_AS(make_wparams({0, 2}), InvalidComposition);
  CHECK_THROWS_AS(make_wparams({1, -1}), InvalidComposition);
  WParams p = make_wparams({1, 1, 2});
  CHECK(p.d() == 6);
  CHECK(p.g() == 2);
}

TEST_CASE("expected invariant records") {
  WExpected a = expected_invariants(make_wparams({1, 1}));
  CHECK(a.components == 2);
  CHECK(a.dlk(0, 1) == 1);
  CHECK(a.total_cr == 1);
  CHECK(a.w_lambda_abs == 2);
  CHECK(a.per_component_cr == std::vector<long long>{0, 0});
  CHECK(a.component_params ==
        std::vector<std::pair<int, int>>{{3, 1}, {3, 1}});
  CHECK(a.identity_check);

  WExpected b = expected_invariants(make_wparams({1, 1, 2}));
  CHECK(b.components == 3);
  std::vector<int> off{b.dlk(0, 1), b.dlk(0, 2), b.dlk(1, 2)};
  std::sort(off.begin(), off.end());
  CHECK(off == std::vector<int>{1, 2, 2});
  CHECK(b.per_component_cr == std::vector<long long>{0, 0, 2});
  CHECK(b.total_cr == 7);
  CHECK(b.w_lambda_abs == 8);

  WExpected c = expected_invariants(make_wparams({4}));
  CHECK(c.components == 1);
  CHECK(c.total_cr == 9);
  CHECK(c.component_params == std::vector<std::pair<int, int>>{{6, 4}});
}

TEST_CASE("model braid words") {
  BraidWord a = w_braid(make_wparams({1, 1}));
  CHECK(a.n == 2);
  CHECK(a.letters == std::vector<int>{1});

  BraidWord b = w_braid(make_wparams({2}));
  CHECK(b.letters == t_braid(2, 4).letters);

  BraidWord c = w_braid(make_wparams({1, 1, 1}));
  CHECK(c.n == 3);
  CHECK(c.letters == std::vector<int>{1, 2, 1});

  BraidWord e = w_braid(make_wparams({1, 1, 2}));
  CHECK(e.n == 4);
  CHECK(e.letters == std::vector<int>{1, 2, 3, 1, 2, 1, 1});
}

TEST_CASE("model verification fixtures") {
  WModel a = verify_w_model(make_wparams({1, 1, 2}));
  CHECK(a.expected.total_cr == 7);
  CHECK((long long)a.braid.letters.size() == 7);
  CHECK(a.actual.components == 3);

  WModel b = verify_w_model(make_wparams({4}));
  CHECK((long long)b.braid.letters.size() == 9);
  CHECK(b.actual.components == 1);

  WModel c = verify_w_model(make_wparams({1}));
  CHECK(c.braid.letters.empty());
  CHECK(c.actual.components == 1);
}

TEST_CASE("exhaustive verification of small compositions") {
  for (const auto& parts : compositions_up_to(7)) {
    CAPTURE(parts);
    CHECK_NOTHROW(verify_w_model(make_wparams(parts)));
  }
}

TEST_CASE("crossing-count identity") {
  for (const auto& parts : compositions_up_to(10)) {
    WParams wp = make_wparams(parts);
    WExpected e = expected_invariants(wp);
    long long sum = 0;
    for (int a : parts) sum += a;
    long long local = 0, mutual = 0;
    for (size_t i = 0; i < parts.size(); ++i) {
      local += (long long)(parts[i] + 2) * (parts[i] - 1) / 2;
      for (size_t j = i + 1; j < parts.size(); ++j) mutual += (long long)parts[i] * parts[j];
    }
    CHECK(2 * (local + mutual) == sum * sum + sum - 2 * (long long)parts.size());
    CHECK(local + mutual == nd(wp.d()) - wp.g() - 1);
    CHECK(e.identity_check);
  }
}

TEST_CASE("pairwise positive linking for higher genus") {
  CHECK(all_pairs_positively_linked(make_wparams({1, 1})));
  WExpected e = expected_invariants(make_wparams({2, 3}));
  CHECK(e.dlk(0, 1) == 6);
  CHECK(all_pairs_positively_linked(make_wparams({2, 3})));
  CHECK(all_pairs_positively_linked(make_wparams({1, 1, 1})));
  CHECK_THROWS_AS(all_pairs_positively_linked(make_wparams({2})), InvalidComposition);
}

TEST_CASE("model depends only on the part multiset") {
  InvariantSignature base = invariant_signature(w_braid(make_wparams({1, 2, 3})));
  std::vector<int> parts{1, 2, 3};
  std::sort(parts.begin(), parts.end());
  do {
    CHECK(invariant_signature(w_braid(make_wparams(parts))) == base);
  } while (std::next_permutation(parts.begin(), parts.end()));

  InvariantSignature p = invariant_signature(w_braid(make_wparams({2, 1, 1})));
  CHECK(p == invariant_signature(w_braid(make_wparams({1, 1, 2}))));
}

TEST_CASE("mirror negates mutual linking") {
  for (const auto& parts : {std::vector<int>{1, 2}, std::vector<int>{2, 3}, std::vector<int>{1, 1, 2}}) {
    BraidWord b = w_braid(make_wparams(parts));
    std::vector<int> neg;
    for (int k : b.letters) neg.push_back(-k);
    BraidWord mb = make_word(b.n, neg);
    Eigen::MatrixXi m1 = rp3_doubled_linking_matrix(b).entries;
    Eigen::MatrixXi m2 = rp3_doubled_linking_matrix(mb).entries;
    CHECK(matrix_equal(m2, (-m1).eval()));
  }
}

TEST_CASE("model JSON shape") {
  std::string j = w_model_json(verify_w_model(make_wparams({1, 1})));
  for (const char* key : {"\"parts\"", "\"d\"", "\"g\"", "\"components\"", "\"dlk_matrix\"",
                          "\"total_cr\"", "\"per_component_cr\"", "\"w_lambda_abs\"",
                          "\"verified\""}) {
    CAPTURE(key);
    CHECK(j.find(key) != std::string::npos);
  }
  CHECK(j.find("\"verified\":true") != std::string::npos);
}
