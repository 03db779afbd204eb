#include <rplink/tangent.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace rplink {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kCuspSpeedThreshold = 1e-3;  // fraction of the max speed
constexpr double kCuspReversalDot = -0.5;
constexpr double kClosureTolerance = 1e-6;
constexpr double kPlaneSolveFloor = 1e-8;

using Cx = std::complex<double>;

// Fixed gnomonic chart of the quotient of the unit three-sphere by the
// antipodal map. Base point (e^{i pi/4}, e^{i pi/4}) / sqrt(2); the phases
// are chosen so the knot crosses the chart's polar plane at simple,
// analytically known parameters.
struct Chart {
  std::array<double, 4> pole;
  std::array<std::array<double, 4>, 3> basis;
};

Chart knot_chart() {
  Chart c;
  c.pole = {0.5, 0.5, 0.5, 0.5};
  double r = 1.0 / std::sqrt(2.0);
  c.basis = {{{r, -r, 0.0, 0.0}, {0.0, 0.0, r, -r}, {0.5, 0.5, -0.5, -0.5}}};
  return c;
}

double dot4(const std::array<double, 4>& a, const std::array<double, 4>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

// Detect cusps as strict local minima of the segment speeds (ties broken to
// the right) that additionally reverse the direction of travel or drop below
// a small fraction of the maximum speed. Returns segment indices.
std::vector<int> detect_cusp_segments(const std::vector<std::array<double, 2>>& p) {
  int m = (int)p.size();
  std::vector<int> out;
  if (m < 5) return out;

  std::vector<double> vx(m), vy(m), v(m);
  for (int k = 0; k < m; ++k) {
    int j = (k + 1) % m;
    vx[k] = p[j][0] - p[k][0];
    vy[k] = p[j][1] - p[k][1];
    v[k] = std::hypot(vx[k], vy[k]);
  }
  double vmax = *std::max_element(v.begin(), v.end());
  if (vmax <= 0) return out;

  for (int k = 0; k < m; ++k) {
    int prev = (k + m - 1) % m;
    int next = (k + 1) % m;
    if (!(v[k] <= v[prev] && v[k] < v[next])) continue;
    bool reversal = false;
    if (v[prev] > 0 && v[next] > 0) {
      double d = (vx[prev] * vx[next] + vy[prev] * vy[next]) / (v[prev] * v[next]);
      reversal = d < kCuspReversalDot;
    }
    if (reversal || v[k] < kCuspSpeedThreshold * vmax) out.push_back(k);
  }
  return out;
}

std::string format_row(std::initializer_list<double> vals) {
  std::string row;
  char buf[40];
  bool first = true;
  for (double v : vals) {
    std::snprintf(buf, sizeof(buf), "%.12e", v);
    if (!first) row += ',';
    row += buf;
    first = false;
  }
  row += '\n';
  return row;
}

std::string svg_header() {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1024 1024\">\n";
}

std::string polyline(const std::vector<std::array<double, 2>>& pix) {
  std::string s = "  <polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
  char buf[64];
  for (size_t i = 0; i < pix.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%s%.2f,%.2f", i ? " " : "", pix[i][0], pix[i][1]);
    s += buf;
  }
  s += "\"/>\n";
  return s;
}

double compactify(double x) {
  double c = x / (1.0 + std::fabs(x));
  if (!std::isfinite(c)) c = std::copysign(1.0, x);
  return c;
}

}  // namespace

CurveSample mw_knot_sample(int degree, int samples) {
  if (degree < 3) throw RangeViolation("degree must be at least 3");
  if (samples < 16) throw RangeViolation("need at least 16 samples");

  Chart chart = knot_chart();
  CurveSample s;
  s.degree = degree;
  s.theta.reserve(samples);
  s.z.reserve(samples);
  s.w.reserve(samples);
  s.chart.reserve(samples);
  s.chart_scale.reserve(samples);

  for (int k = 0; k < samples; ++k) {
    double t = kPi * double(k) / double(samples);
    Cx z = std::polar(1.0, (degree - 2) * t);
    Cx w = std::polar(1.0, degree * t);
    // Unit vector on the three-sphere (the torus point has norm sqrt(2)).
    double r = 1.0 / std::sqrt(2.0);
    std::array<double, 4> x = {r * z.real(), r * z.imag(), r * w.real(), r * w.imag()};
    double f = dot4(x, chart.pole);
    std::array<double, 3> img;
    for (int i = 0; i < 3; ++i) img[i] = dot4(x, chart.basis[i]) / f;

    s.theta.push_back(t);
    s.z.push_back(z);
    s.w.push_back(w);
    s.chart.push_back(img);
    s.chart_scale.push_back(f);
  }
  return s;
}

SectionCurve section(int degree, Pencil pencil, double phi, int samples) {
  if (degree < 3) throw RangeViolation("degree must be at least 3");
  if (samples < 512) throw RangeViolation("need at least 512 samples");

  SectionCurve c;
  c.degree = degree;
  c.pencil = pencil;
  c.phi = phi;
  c.theta.reserve(samples);
  c.points.reserve(samples);

  Cx rot = std::polar(1.0, -phi);
  for (int k = 0; k < samples; ++k) {
    double t = kPi * double(k) / double(samples);
    Cx z = std::polar(1.0, (degree - 2) * t);
    Cx w = std::polar(1.0, degree * t);
    Cx dz = Cx(0, 1) * double(degree - 2) * z;
    Cx dw = Cx(0, 1) * double(degree) * w;

    // Pencil plane {Re(e^{-i phi} * axis coordinate) = 0}; intersect the
    // tangent line span(gamma, gamma') with it in the pencil's coordinate.
    Cx az = (pencil == Pencil::ThroughLPrime) ? z : w;    // constrained part
    Cx adz = (pencil == Pencil::ThroughLPrime) ? dz : dw;
    Cx bz = (pencil == Pencil::ThroughLPrime) ? w : z;    // plotted part
    Cx bdz = (pencil == Pencil::ThroughLPrime) ? dw : dz;

    double alpha = (rot * adz).real();
    double beta = -(rot * az).real();
    Cx on_axis = alpha * az + beta * adz;
    Cx plotted = alpha * bz + beta * bdz;

    double s = (rot * on_axis).imag();
    double norm = std::abs(on_axis) + std::abs(plotted);
    if (std::fabs(s) < kPlaneSolveFloor * norm)
      throw DegeneratePlane("tangent line nearly contained in a pencil plane");

    c.theta.push_back(t);
    c.points.push_back({plotted.real() / s, plotted.imag() / s});
  }

  std::vector<int> segs = detect_cusp_segments(c.points);
  double h = kPi / double(samples);
  for (int k : segs) {
    double tc = std::fmod(c.theta[k] + 0.5 * h, kPi);
    c.cusp_theta.push_back(tc);
  }
  return c;
}

int cusp_count(const SectionCurve& c) {
  return (int)detect_cusp_segments(c.points).size();
}

std::string emit_csv(const SectionCurve& c) {
  std::string out = "theta,x,y\n";
  for (size_t k = 0; k < c.points.size(); ++k)
    out += format_row({c.theta[k], c.points[k][0], c.points[k][1]});
  return out;
}

std::string emit_csv(const CurveSample& c) {
  std::string out = "theta,x,y,z\n";
  for (size_t k = 0; k < c.chart.size(); ++k)
    out += format_row({c.theta[k], c.chart[k][0], c.chart[k][1], c.chart[k][2]});
  return out;
}

std::string emit_svg(const SectionCurve& c) {
  double radius = 1.0;
  for (auto& p : c.points)
    radius = std::max({radius, std::fabs(p[0]), std::fabs(p[1])});
  radius *= 1.05;

  std::vector<std::array<double, 2>> pix;
  pix.reserve(c.points.size());
  for (auto& p : c.points)
    pix.push_back({512.0 + 480.0 * p[0] / radius, 512.0 - 480.0 * p[1] / radius});

  nlohmann::json meta = {
      {"degree", c.degree},
      {"pencil", c.pencil == Pencil::ThroughLPrime ? "lprime" : "l"},
      {"phi", c.phi},
      {"samples", c.points.size()},
      {"cusp_count", c.cusp_theta.size()},
      {"tolerances",
       {{"cusp_threshold", kCuspSpeedThreshold}, {"closure", kClosureTolerance}}},
  };

  std::string svg = svg_header();
  svg += "  <metadata>" + meta.dump() + "</metadata>\n";
  if (!pix.empty()) svg += polyline(pix);
  svg += "</svg>\n";
  return svg;
}

std::string emit_svg(const CurveSample& c) {
  int m = (int)c.chart.size();

  // Orthographic view of the compactified chart coordinates. Arcs are split
  // where the projection denominator changes sign; the parameter wraps with
  // the antipodal twist, under which the chart point itself is continuous, so
  // the wrap joins the last arc to the first when no sign change sits there.
  std::vector<std::vector<std::array<double, 2>>> arcs;
  auto sign_of = [](double v) { return v >= 0.0; };
  for (int k = 0; k < m; ++k) {
    std::array<double, 2> pix = {512.0 + 480.0 * compactify(c.chart[k][0]),
                                 512.0 - 480.0 * compactify(c.chart[k][1])};
    bool fresh = arcs.empty() ||
                 sign_of(c.chart_scale[k]) != sign_of(c.chart_scale[k - 1]);
    if (fresh) arcs.emplace_back();
    arcs.back().push_back(pix);
  }
  if (m > 0 && arcs.size() > 1) {
    double wrapped = (c.degree % 2 == 0) ? c.chart_scale[0] : -c.chart_scale[0];
    if (sign_of(wrapped) == sign_of(c.chart_scale[m - 1])) {
      // Continue the final arc into the first one and drop the duplicate.
      auto& last = arcs.back();
      last.insert(last.end(), arcs.front().begin(), arcs.front().end());
      arcs.front() = std::move(last);
      arcs.pop_back();
    }
  }

  nlohmann::json meta = {
      {"degree", c.degree},
      {"samples", m},
      {"arcs", arcs.size()},
      {"camera", "orthographic projection of compactified chart coordinates"},
      {"tolerances",
       {{"cusp_threshold", kCuspSpeedThreshold}, {"closure", kClosureTolerance}}},
  };

  std::string svg = svg_header();
  svg += "  <metadata>" + meta.dump() + "</metadata>\n";
  for (auto& arc : arcs) svg += polyline(arc);
  svg += "</svg>\n";
  return svg;
}

std::string section_json(const SectionCurve& c) {
  nlohmann::json j = {
      {"degree", c.degree},
      {"pencil", c.pencil == Pencil::ThroughLPrime ? "lprime" : "l"},
      {"phi", c.phi},
      {"samples", c.points.size()},
      {"cusp_count", c.cusp_theta.size()},
      {"cusps", c.cusp_theta},
      {"tolerances",
       {{"cusp_threshold", kCuspSpeedThreshold}, {"closure", kClosureTolerance}}},
  };
  return j.dump(2);
}

}  // namespace rplink
