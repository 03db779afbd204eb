#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <rplink/line_config.hpp>

#include <Eigen/LU>

#include <nlohmann/json.hpp>

#include <random>
#include <string>
#include <vector>

using namespace rplink;

namespace {

ProjLine ruling(int c) {
  return affine_line(Vec3Q(0, 0, c), Vec3Q(1, c, 0));
}

bool mat4_identity(const Mat4Q& m) {
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      if (m(r, c) != Rational(r == c ? 1 : 0)) return false;
  return true;
}

bool vec3_eq(const Vec3Q& a, const Vec3Q& b) {
  return a[0] == b[0] && a[1] == b[1] && a[2] == b[2];
}

bool is_standard_shape(const std::vector<ProjLine>& cfg, int infinity_index) {
  for (int i = 0; i < (int)cfg.size(); ++i) {
    const ProjLine& l = cfg[i];
    if (i == infinity_index) {
      if (!(l.at_infinity && l.direction[0] > 0 && l.direction[1] == 0 &&
            l.direction[2] == 0))
        return false;
      continue;
    }
    if (l.at_infinity) return false;
    if (!(l.direction[0] > 0 && l.direction[2] == 0)) return false;
    if (l.direction[1] != l.point[2] * l.direction[0]) return false;
    if (l.point[1] != l.point[2] * l.point[0]) return false;
  }
  return true;
}

std::vector<std::vector<int>> table_of(const std::vector<ProjLine>& cfg) {
  int n = (int)cfg.size();
  std::vector<std::vector<int>> t(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) t[i][j] = t[j][i] = dlk_lines(cfg[i], cfg[j]);
  return t;
}

Rational poly_eval(const PolyQ& p, const Rational& x) {
  Rational v = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
  return v;
}

}  // namespace

TEST_CASE("rational text round trip") {
  CHECK(rational_text(Rational(5)) == "5");
  CHECK(rational_text(Rational(-3, 4)) == "-3/4");
  CHECK(rational_text(Rational(0)) == "0");
  CHECK(parse_rational("22/7") == Rational(22, 7));
  CHECK(parse_rational("-9") == Rational(-9));
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK_THROWS_AS(parse_rational(""), FormatError);
  CHECK_THROWS_AS(parse_rational("abc"), FormatError);
  CHECK_THROWS_AS(parse_rational("1/0"), FormatError);
  CHECK_THROWS_AS(parse_rational("1/2/3"), FormatError);
}

TEST_CASE("line constructors validate input") {
  CHECK_THROWS_AS(affine_line(Vec3Q(1, 2, 3), Vec3Q(0, 0, 0)), FormatError);
  CHECK_THROWS_AS(infinity_line(Vec3Q(0, 0, 0)), FormatError);
  ProjLine l = affine_line(Vec3Q(1, 2, 3), Vec3Q(4, 5, 6));
  CHECK_FALSE(l.at_infinity);
  ProjLine inf = infinity_line(Vec3Q(1, 0, 0));
  CHECK(inf.at_infinity);
}

TEST_CASE("directed linking of disjoint line pairs") {
  ProjLine a = ruling(1);  // z = 1, y = x
  ProjLine b = ruling(2);  // z = 2, y = 2x

  CHECK(dlk_lines(a, b) == 1);
  CHECK(dlk_lines(b, a) == 1);  // symmetric

  // Reversing one orientation negates the pairing.
  Vec3Q a_dir_rev = -a.direction;
  ProjLine a_rev = affine_line(a.point, a_dir_rev);
  CHECK(dlk_lines(a_rev, b) == -1);
  CHECK(dlk_lines(b, a_rev) == -1);
  Vec3Q b_dir_rev = -b.direction;
  ProjLine b_rev = affine_line(b.point, b_dir_rev);
  CHECK(dlk_lines(a_rev, b_rev) == 1);

  // The line at infinity of the vertical-plane pencil pairs +1 with any
  // ruling line oriented toward increasing x.
  ProjLine inf = infinity_line(Vec3Q(1, 0, 0));
  CHECK(dlk_lines(inf, ruling(0)) == 1);
  CHECK(dlk_lines(inf, a) == 1);
  CHECK(dlk_lines(inf, b) == 1);
  CHECK(dlk_lines(a, inf) == 1);
  ProjLine backwards = affine_line(Vec3Q(0, 0, 5), Vec3Q(-1, 0, 0));
  CHECK(dlk_lines(inf, backwards) == -1);
}

TEST_CASE("intersecting pairs are rejected") {
  // Concurrent lines through the origin.
  ProjLine x_axis = affine_line(Vec3Q(0, 0, 0), Vec3Q(1, 0, 0));
  ProjLine y_axis = affine_line(Vec3Q(0, 0, 0), Vec3Q(0, 1, 0));
  CHECK_THROWS_AS(dlk_lines(x_axis, y_axis), LinesIntersect);

  // Parallel affine lines meet at infinity.
  ProjLine p1 = affine_line(Vec3Q(0, 0, 0), Vec3Q(1, 1, 0));
  ProjLine p2 = affine_line(Vec3Q(0, 0, 7), Vec3Q(2, 2, 0));
  CHECK_THROWS_AS(dlk_lines(p1, p2), LinesIntersect);

  // A line with no x-extent hits the vertical-pencil infinity line.
  ProjLine vertical = affine_line(Vec3Q(3, 0, 0), Vec3Q(0, 1, 2));
  ProjLine inf = infinity_line(Vec3Q(1, 0, 0));
  CHECK_THROWS_AS(dlk_lines(vertical, inf), LinesIntersect);

  // Two lines at infinity always meet.
  CHECK_THROWS_AS(dlk_lines(inf, infinity_line(Vec3Q(0, 1, 0))), LinesIntersect);

  // A line is never disjoint from itself.
  CHECK_THROWS_AS(dlk_lines(x_axis, x_axis), LinesIntersect);
}

TEST_CASE("pairwise positive configurations") {
  CHECK(is_hopf_config({ruling(0), ruling(1), ruling(2)}));
  CHECK(is_hopf_config({infinity_line(Vec3Q(1, 0, 0)), ruling(0), ruling(1)}));

  // A negatively paired line spoils the configuration.
  ProjLine bad = affine_line(Vec3Q(0, 0, 2), Vec3Q(1, -2, 0));
  CHECK_FALSE(is_hopf_config({ruling(1), bad}));

  CHECK_THROWS_AS(is_hopf_config({ruling(1)}), RangeViolation);
  CHECK_THROWS_AS(is_hopf_config({}), RangeViolation);

  // Intersecting members are an error, not a false.
  CHECK_THROWS_AS(is_hopf_config({ruling(1), ruling(1)}), LinesIntersect);
}

TEST_CASE("standard ruling family") {
  CHECK_THROWS_AS(standard_hyperboloid_config(0), RangeViolation);

  auto one = standard_hyperboloid_config(1);
  REQUIRE(one.size() == 1);
  CHECK(vec3_eq(one[0].point, Vec3Q(0, 0, 1)));
  CHECK(vec3_eq(one[0].direction, Vec3Q(1, 1, 0)));

  auto three = standard_hyperboloid_config(3);
  REQUIRE(three.size() == 3);
  CHECK(is_hopf_config(three));
  CHECK(vec3_eq(three[2].point, Vec3Q(0, 0, 3)));
  CHECK(vec3_eq(three[2].direction, Vec3Q(1, 3, 0)));

  auto with_inf = standard_hyperboloid_config(3, true);
  REQUIRE(with_inf.size() == 4);
  CHECK(with_inf[3].at_infinity);
  CHECK(is_hopf_config(with_inf));
  CHECK(is_standard_shape(with_inf, 3));
}

TEST_CASE("transforms preserve or flip the pairing by determinant sign") {
  ProjLine a = ruling(1);
  ProjLine b = ruling(2);
  ProjLine inf = infinity_line(Vec3Q(1, 0, 0));

  // Identity round trip.
  Mat4Q id = Mat4Q::Identity();
  ProjLine inf2 = transform_line(id, inf);
  CHECK(inf2.at_infinity);
  CHECK(vec3_eq(inf2.direction, Vec3Q(1, 0, 0)));
  ProjLine a2 = transform_line(id, a);
  CHECK(vec3_eq(a2.point, a.point));
  CHECK(vec3_eq(a2.direction, a.direction));

  // Unimodular shears leave every pairing alone.
  std::mt19937 rng(777);
  std::uniform_int_distribution<int> pick(0, 3), val(-3, 3);
  for (int trial = 0; trial < 25; ++trial) {
    Mat4Q m = Mat4Q::Identity();
    for (int s = 0; s < 5; ++s) {
      int r = pick(rng), c = pick(rng);
      if (r == c) continue;
      Mat4Q e = Mat4Q::Identity();
      e(r, c) = Rational(val(rng), 4);
      Mat4Q next = e.lazyProduct(m);
      m = next;
    }
    CHECK(m.determinant() == 1);
    CHECK(dlk_lines(transform_line(m, a), transform_line(m, b)) == 1);
    CHECK(dlk_lines(transform_line(m, inf), transform_line(m, a)) == 1);
  }

  // An orientation-reversing chart negates the pairing.
  Mat4Q neg = Mat4Q::Identity();
  neg(3, 3) = -1;
  CHECK(neg.determinant() == -1);
  CHECK(dlk_lines(transform_line(neg, a), transform_line(neg, b)) == -1);
  CHECK(dlk_lines(transform_line(neg, inf), transform_line(neg, a)) == -1);
}

TEST_CASE("root counting in the unit interval") {
  CHECK(count_roots_in_unit(PolyQ{Rational(1)}) == 0);                      // 1
  CHECK(count_roots_in_unit(PolyQ{Rational(-1), Rational(2)}) == 1);        // 2t-1
  CHECK(count_roots_in_unit(PolyQ{Rational(2), Rational(-3), Rational(1)}) == 1);  // (t-1)(t-2)
  CHECK(count_roots_in_unit(PolyQ{Rational(2, 9), Rational(-1), Rational(1)}) ==
        2);  // (t-1/3)(t-2/3)
  CHECK(count_roots_in_unit(PolyQ{Rational(1), Rational(-4), Rational(4)}) ==
        1);  // (2t-1)^2, counted once
  CHECK(count_roots_in_unit(PolyQ{Rational(0), Rational(-1), Rational(1)}) ==
        2);  // t(t-1), both endpoints
  CHECK(count_roots_in_unit(PolyQ{Rational(0), Rational(-1), Rational(0), Rational(1)}) ==
        2);  // t^3 - t
  CHECK(count_roots_in_unit(PolyQ{Rational(1), Rational(0), Rational(1)}) == 0);  // t^2+1
  CHECK_THROWS_AS(count_roots_in_unit(PolyQ{}), RangeViolation);
  CHECK_THROWS_AS(count_roots_in_unit(PolyQ{Rational(0), Rational(0)}), RangeViolation);
}

TEST_CASE("already standard input yields an identity script") {
  auto cfg = standard_hyperboloid_config(3, true);
  IsotopyScript s = standardize(cfg);

  REQUIRE(s.stages.size() == 8);  // chart, shift, 3 pivots, 3 slides
  CHECK(s.stages[0].kind == Stage::Kind::Chart);
  CHECK(mat4_identity(s.stages[0].chart));
  CHECK(s.stages[1].kind == Stage::Kind::Shift);
  CHECK(vec3_eq(s.stages[1].shift, Vec3Q(0, 0, 0)));
  for (size_t i = 2; i < s.stages.size(); ++i) {
    CAPTURE(i);
    CHECK(s.stages[i].kind == Stage::Kind::Move);
    CHECK(vec3_eq(s.stages[i].base_from, s.stages[i].base_to));
    CHECK(vec3_eq(s.stages[i].dir_from, s.stages[i].dir_to));
  }

  Certificate cert = verify_script(s);
  for (const PairCheck& e : cert.entries) CHECK(e.roots == 0);

  auto final_cfg = apply_script(s);
  REQUIRE(final_cfg.size() == 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(final_cfg[i].at_infinity == cfg[i].at_infinity);
    CHECK(vec3_eq(final_cfg[i].point, cfg[i].point));
    CHECK(vec3_eq(final_cfg[i].direction, cfg[i].direction));
  }
}

TEST_CASE("two generic lines standardize in four stages") {
  ProjLine l1 = affine_line(Vec3Q(0, 0, 0), Vec3Q(1, 0, 0));
  ProjLine l2 = affine_line(Vec3Q(0, 1, 1), Vec3Q(0, -1, -2));
  REQUIRE(dlk_lines(l1, l2) == 1);

  IsotopyScript s = standardize({l1, l2});
  REQUIRE(s.stages.size() == 4);
  CHECK(s.stages[0].kind == Stage::Kind::Chart);
  CHECK(s.stages[1].kind == Stage::Kind::Shift);
  CHECK(s.stages[2].kind == Stage::Kind::Move);
  CHECK(s.stages[3].kind == Stage::Kind::Move);
  CHECK(s.stages[0].chart.determinant() > 0);

  verify_script(s);

  auto final_cfg = apply_script(s);
  REQUIRE(final_cfg.size() == 2);
  CHECK(final_cfg[0].at_infinity);
  CHECK(is_standard_shape(final_cfg, 0));
  const ProjLine& moved = final_cfg[1];
  CHECK(moved.direction[2] == 0);
  CHECK(moved.direction[1] == moved.point[2] * moved.direction[0]);
  CHECK(moved.point[1] == moved.point[2] * moved.point[0]);
}

TEST_CASE("four line pipeline reaches the standard shape") {
  std::mt19937 rng(2024);
  auto cfg = random_hopf_config(4, rng, false);
  REQUIRE(cfg.size() == 4);
  REQUIRE(is_hopf_config(cfg));

  IsotopyScript s = standardize(cfg);
  Certificate cert = verify_script(s);
  CHECK(!cert.entries.empty());
  for (const PairCheck& e : cert.entries) {
    CHECK(e.roots == 0);
    REQUIRE(!e.det.empty());
    CHECK(poly_eval(e.det, Rational(0)) != 0);
    CHECK(poly_eval(e.det, Rational(1)) != 0);
    CHECK(e.det.size() <= 3);  // degree at most two in the stage parameter

    // Quadratic entries cannot dip through zero between the endpoints: check
    // the sign at the parabola vertex when it lies inside the stage.
    if (e.det.size() == 3 && e.det[2] != 0) {
      Rational vertex = -e.det[1] / (2 * e.det[2]);
      if (vertex > 0 && vertex < 1) {
        Rational at_vertex = poly_eval(e.det, vertex);
        Rational at_start = poly_eval(e.det, Rational(0));
        CHECK(at_vertex != 0);
        CHECK((at_vertex > 0) == (at_start > 0));
      }
    }
  }

  auto final_cfg = apply_script(s);
  int inf_index = -1;
  for (int i = 0; i < (int)final_cfg.size(); ++i)
    if (final_cfg[i].at_infinity) inf_index = i;
  REQUIRE(inf_index >= 0);
  CHECK(is_standard_shape(final_cfg, inf_index));
  CHECK(table_of(final_cfg) == table_of(cfg));

  // Heights of the standardized affine lines are pairwise distinct.
  std::vector<Rational> heights;
  for (int i = 0; i < (int)final_cfg.size(); ++i)
    if (i != inf_index) heights.push_back(final_cfg[i].point[2]);
  for (size_t i = 0; i < heights.size(); ++i)
    for (size_t j = i + 1; j < heights.size(); ++j) CHECK(heights[i] != heights[j]);
}

TEST_CASE("randomized configurations standardize and certify") {
  std::mt19937 rng(99);
  int done = 0;
  for (int n = 2; n <= 6; ++n) {
    for (int rep = 0; rep < 6; ++rep) {
      bool with_inf = rep % 2 == 1;
      auto cfg = random_hopf_config(n, rng, with_inf);
      CAPTURE(n);
      CAPTURE(rep);
      REQUIRE(cfg.size() == (size_t)(n + (with_inf ? 1 : 0)));
      REQUIRE(is_hopf_config(cfg));

      IsotopyScript s = standardize(cfg);
      verify_script(s);
      auto final_cfg = apply_script(s);

      int inf_index = -1;
      for (int i = 0; i < (int)final_cfg.size(); ++i)
        if (final_cfg[i].at_infinity) inf_index = i;
      REQUIRE(inf_index >= 0);
      CHECK(is_standard_shape(final_cfg, inf_index));
      CHECK(is_hopf_config(final_cfg));
      ++done;
    }
  }
  CHECK(done == 30);
}

TEST_CASE("a colliding motion is caught with a witness interval") {
  IsotopyScript s;
  s.initial = {ruling(1), ruling(2)};
  Stage mv;
  mv.kind = Stage::Kind::Move;
  mv.line = 0;
  mv.base_from = Vec3Q(0, 0, 1);
  mv.base_to = Vec3Q(0, 0, 3);  // passes through the second line at t = 1/2
  mv.dir_from = Vec3Q(1, 1, 0);
  mv.dir_to = Vec3Q(1, 1, 0);
  s.stages.push_back(mv);

  CHECK_THROWS_AS(verify_script(s), CollisionFound);
  try {
    verify_script(s);
  } catch (const CollisionFound& e) {
    std::string msg = e.what();
    CHECK(msg.find("stage 0") != std::string::npos);
    CHECK(msg.find("1/2") != std::string::npos);
  }
}

TEST_CASE("malformed scripts are format errors") {
  auto cfg = standard_hyperboloid_config(2, true);

  // Chaining: the recorded start must match the current position.
  IsotopyScript bad_chain;
  bad_chain.initial = cfg;
  Stage mv;
  mv.kind = Stage::Kind::Move;
  mv.line = 0;
  mv.base_from = Vec3Q(5, 5, 5);  // not where line 0 actually is
  mv.base_to = Vec3Q(0, 0, 1);
  mv.dir_from = Vec3Q(1, 1, 0);
  mv.dir_to = Vec3Q(1, 1, 0);
  bad_chain.stages.push_back(mv);
  CHECK_THROWS_AS(verify_script(bad_chain), FormatError);

  // The line at infinity cannot be carried by a motion stage.
  IsotopyScript bad_inf;
  bad_inf.initial = cfg;
  Stage mv2 = mv;
  mv2.line = 2;
  bad_inf.stages.push_back(mv2);
  CHECK_THROWS_AS(verify_script(bad_inf), FormatError);

  // Index out of range.
  IsotopyScript bad_index;
  bad_index.initial = cfg;
  Stage mv3 = mv;
  mv3.line = 17;
  bad_index.stages.push_back(mv3);
  CHECK_THROWS_AS(verify_script(bad_index), FormatError);

  // Orientation-reversing charts are rejected.
  IsotopyScript bad_chart;
  bad_chart.initial = cfg;
  Stage ch;
  ch.kind = Stage::Kind::Chart;
  ch.chart = Mat4Q::Identity();
  ch.chart(3, 3) = -1;
  bad_chart.stages.push_back(ch);
  CHECK_THROWS_AS(verify_script(bad_chart), FormatError);

  // An empty script verifies trivially.
  IsotopyScript empty;
  empty.initial = cfg;
  Certificate cert = verify_script(empty);
  CHECK(cert.entries.empty());
}

TEST_CASE("standardize validates its input") {
  CHECK_THROWS_AS(standardize({ruling(1)}), RangeViolation);

  ProjLine bad = affine_line(Vec3Q(0, 0, 2), Vec3Q(1, -2, 0));
  CHECK_THROWS_AS(standardize({ruling(1), bad}), NotHopf);

  CHECK_THROWS_AS(standardize({ruling(1), ruling(1)}), LinesIntersect);
}

TEST_CASE("line file format round trip") {
  auto cfg = standard_hyperboloid_config(2, true);
  cfg[0].point = Vec3Q(Rational(1, 2), Rational(1, 2), Rational(1));
  std::string text = to_lines_text(cfg);
  auto parsed = parse_lines_text(text);
  REQUIRE(parsed.size() == cfg.size());
  for (size_t i = 0; i < cfg.size(); ++i) {
    CHECK(parsed[i].at_infinity == cfg[i].at_infinity);
    CHECK(vec3_eq(parsed[i].point, cfg[i].point));
    CHECK(vec3_eq(parsed[i].direction, cfg[i].direction));
  }

  auto commented = parse_lines_text("# heading\n\nP 0 0 1 D 1 1 0\nINF 1 0 0\n");
  REQUIRE(commented.size() == 2);
  CHECK_FALSE(commented[0].at_infinity);
  CHECK(commented[1].at_infinity);

  CHECK_THROWS_AS(parse_lines_text("Q 1 2 3\n"), FormatError);
  CHECK_THROWS_AS(parse_lines_text("P 1 2\n"), FormatError);
  CHECK_THROWS_AS(parse_lines_text("P 0 0 1 D 0 0 0\n"), FormatError);
  CHECK_THROWS_AS(parse_lines_text("INF 0 0 0\n"), FormatError);
  CHECK_THROWS_AS(parse_lines_text("P 0 0 x D 1 1 0\n"), FormatError);
}

TEST_CASE("script and certificate serialize to json") {
  auto cfg = standard_hyperboloid_config(2, true);
  IsotopyScript s = standardize(cfg);
  auto j = nlohmann::json::parse(script_json(s));
  CHECK(j["lines"] == 3);
  REQUIRE(j["stages"].is_array());
  REQUIRE(j["stages"].size() == s.stages.size());
  CHECK(j["stages"][0]["kind"] == "chart");
  CHECK(j["stages"][1]["kind"] == "shift");
  CHECK(j["stages"][2]["kind"] == "move");
  CHECK(j["stages"][2].contains("base_from"));
  CHECK(j["stages"][2].contains("dir_to"));

  Certificate cert = verify_script(s);
  auto cj = nlohmann::json::parse(certificate_json(cert));
  CHECK(cj["verified"] == true);
  REQUIRE(cj["entries"].is_array());
  CHECK(cj["entries"].size() == cert.entries.size());
  if (!cert.entries.empty()) {
    CHECK(cj["entries"][0].contains("stage"));
    CHECK(cj["entries"][0].contains("pair"));
    CHECK(cj["entries"][0].contains("det"));
    CHECK(cj["entries"][0]["roots"] == 0);
  }
}

TEST_CASE("random generator rejects bad sizes") {
  std::mt19937 rng(1);
  CHECK_THROWS_AS(random_hopf_config(0, rng, false), RangeViolation);
}
