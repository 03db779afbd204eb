#pragma once

#include <Eigen/Core>

#include <random>
#include <string>
#include <utility>
#include <vector>

#include <rplink/errors.hpp>
#include <rplink/rational.hpp>

namespace rplink {

using Vec3Q = Eigen::Matrix<Rational, 3, 1>;
using Mat4Q = Eigen::Matrix<Rational, 4, 4>;

// An oriented projective line in a fixed affine chart: either an affine line
// (base point + nonzero direction, orientation = direction sign) or the line
// at infinity of the planes orthogonal to `direction` (which then stores the
// plane normal; the normal's sign fixes the orientation).
struct ProjLine {
  bool at_infinity = false;
  Vec3Q point = Vec3Q::Zero();
  Vec3Q direction = Vec3Q::Zero();
};

ProjLine affine_line(Vec3Q point, Vec3Q direction);  // throws FormatError on zero direction
ProjLine infinity_line(Vec3Q normal);                // throws FormatError on zero normal

// Twice the linking number of two disjoint oriented lines, calibrated so the
// ruling {z=c, y=cx} (and its line at infinity, normal +x) is pairwise +1.
int dlk_lines(const ProjLine& a, const ProjLine& b);  // throws LinesIntersect

// All pairs linked +1. Throws RangeViolation for fewer than two lines and
// LinesIntersect when any pair meets.
bool is_hopf_config(const std::vector<ProjLine>& lines);

// One step of an isotopy. Chart stages re-coordinatize the whole space by a
// positive-determinant projective map; shift stages translate every affine
// line by t * shift; move stages carry one line along a linear interpolation
// of base point and direction, t in [0, 1].
struct Stage {
  enum class Kind { Chart, Shift, Move };
  Kind kind = Kind::Shift;
  Mat4Q chart = Mat4Q::Identity();
  Vec3Q shift = Vec3Q::Zero();
  int line = -1;
  Vec3Q base_from = Vec3Q::Zero(), base_to = Vec3Q::Zero();
  Vec3Q dir_from = Vec3Q::Zero(), dir_to = Vec3Q::Zero();
};

struct IsotopyScript {
  std::vector<ProjLine> initial;
  std::vector<Stage> stages;
};

// Dense polynomial in the stage parameter t; coefficient i multiplies t^i.
using PolyQ = std::vector<Rational>;

// One certified disjointness check: the pair's determinant along the stage
// and the exact count of its roots inside [0, 1] (always 0 on success).
struct PairCheck {
  int stage = 0;
  int first = 0;
  int second = 0;
  PolyQ det;
  int roots = 0;
};

struct Certificate {
  std::vector<PairCheck> entries;
};

// Rigid isotopy onto the standard ruling {z=c_i, y=c_i x}: an optional chart
// stage sending the designated line to infinity (composed with a rational
// rotation when projected slopes tie), a vertical shift pushing all crossing
// heights below the smallest slope, then per line one rotation to its
// horizontal plane (largest slope first) and one horizontal translation.
IsotopyScript standardize(const std::vector<ProjLine>& lines);
// throws NotHopf, LinesIntersect, DegenerateChart, RangeViolation

// Replays the script, certifying every stage pair-by-pair with exact Sturm
// root counts and checking that linking is unchanged across stage endpoints.
Certificate verify_script(const IsotopyScript& s);  // throws CollisionFound, FormatError

// Endpoint composition without certification.
std::vector<ProjLine> apply_script(const IsotopyScript& s);

std::vector<ProjLine> standard_hyperboloid_config(int n, bool with_infinity = false);
// throws RangeViolation for n < 1

// Image of a line under a positive-determinant projective map, with the
// orientation carried along exactly.
ProjLine transform_line(const Mat4Q& m, const ProjLine& l);

// Distinct real roots of a nonzero polynomial in the closed interval [0, 1].
int count_roots_in_unit(const PolyQ& p);  // throws RangeViolation on the zero polynomial

// Text format: `P x y z D dx dy dz` per affine line, `INF a b c` per line at
// infinity, rationals as num/den.
std::string to_lines_text(const std::vector<ProjLine>& lines);
std::vector<ProjLine> parse_lines_text(const std::string& text);  // throws FormatError

std::string script_json(const IsotopyScript& s);
std::string certificate_json(const Certificate& c);

// Random rational configuration with all pairs linked +1: jittered ruling
// lines pushed through a random special-linear chart.
std::vector<ProjLine> random_hopf_config(int n, std::mt19937& rng, bool with_infinity);

}  // namespace rplink
