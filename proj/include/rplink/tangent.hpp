#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include <rplink/errors.hpp>

namespace rplink {

// Uniform samples of the most symmetric maximally writhed knot
//   gamma(theta) = (e^{i(d-2)theta}, e^{i d theta}),  theta in [0, pi),
// which lives on the unit torus |z| = |w| = 1, together with its image in a
// fixed gnomonic chart of the quotient three-sphere.
struct CurveSample {
  int degree = 0;
  std::vector<double> theta;
  std::vector<std::complex<double>> z;
  std::vector<std::complex<double>> w;
  // Gnomonic chart image and the projection denominator per sample; the
  // denominator's sign changes mark passes through the chart's polar plane.
  std::vector<std::array<double, 3>> chart;
  std::vector<double> chart_scale;
};

// The two pencils of planes used for sections of the tangent-line surface:
// planes containing the axis line {z = 0} or the axis line {w = 0}.
enum class Pencil { ThroughLPrime, ThroughL };

// Planar section of the tangent-line surface: for each parameter the real
// tangent line of the knot is intersected with the fixed plane of the pencil,
// giving a closed curve in that plane's affine coordinates.
struct SectionCurve {
  int degree = 0;
  Pencil pencil = Pencil::ThroughLPrime;
  double phi = 0.0;
  std::vector<double> theta;
  std::vector<std::array<double, 2>> points;
  std::vector<double> cusp_theta;  // detected cusp parameters
};

// degree >= 3, samples >= 16; throws RangeViolation otherwise.
CurveSample mw_knot_sample(int degree, int samples);

// degree >= 3, samples >= 512; throws RangeViolation otherwise and
// DegeneratePlane when the tangent-plane solve is ill conditioned.
SectionCurve section(int degree, Pencil pencil, double phi, int samples);

// Number of detected cusps: strict local minima of the discrete speed that
// either reverse direction or fall below the speed threshold.
int cusp_count(const SectionCurve& c);

// CSV columns theta,x,y (sections) or theta,x,y,z (knot chart image), one row
// per sample, %.12e formatting; an empty curve yields only the header row.
std::string emit_csv(const SectionCurve& c);
std::string emit_csv(const CurveSample& c);

// SVG with a fixed 0 0 1024 1024 view box. A section is a single polyline; a
// knot sample is split into one polyline per chart-continuous arc.
std::string emit_svg(const SectionCurve& c);
std::string emit_svg(const CurveSample& c);

std::string section_json(const SectionCurve& c);

}  // namespace rplink
