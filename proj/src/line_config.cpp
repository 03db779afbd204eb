#include <rplink/line_config.hpp>

#include <Eigen/LU>

#include <algorithm>
#include <array>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

namespace rplink {

std::string rational_text(const Rational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << '/' << denominator(r);
  return os.str();
}

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw FormatError("empty rational");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(boost::multiprecision::cpp_int(s));
    boost::multiprecision::cpp_int n(s.substr(0, slash));
    boost::multiprecision::cpp_int d(s.substr(slash + 1));
    if (d == 0) throw FormatError("zero denominator in '" + s + "'");
    return Rational(n) / Rational(d);
  } catch (const Error&) {
    throw;
  } catch (const std::runtime_error&) {
    throw FormatError("bad rational '" + s + "'");
  }
}

namespace {

using Vec4Q = Eigen::Matrix<Rational, 4, 1>;

bool is_zero3(const Vec3Q& v) { return v[0] == 0 && v[1] == 0 && v[2] == 0; }
bool eq3(const Vec3Q& a, const Vec3Q& b) {
  return a[0] == b[0] && a[1] == b[1] && a[2] == b[2];
}

Vec3Q cross3(const Vec3Q& a, const Vec3Q& b) {
  return Vec3Q(a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
               a[0] * b[1] - a[1] * b[0]);
}

Vec4Q lift(const Rational& w, const Vec3Q& v) {
  Vec4Q u;
  u << w, v[0], v[1], v[2];
  return u;
}

// Oriented frame (b, a) spanning the direction plane of an infinity line with
// normal n; the (b, a) order makes the ruling calibration come out +1.
std::pair<Vec3Q, Vec3Q> infinity_frame(const Vec3Q& n) {
  Vec3Q a = Vec3Q::Zero();
  for (int k = 0; k < 3 && is_zero3(a); ++k) {
    Vec3Q e = Vec3Q::Zero();
    e[k] = 1;
    a = cross3(n, e);
  }
  return {cross3(n, a), a};
}

std::pair<Vec4Q, Vec4Q> lift_pair(const ProjLine& l) {
  if (l.at_infinity) {
    auto [b, a] = infinity_frame(l.direction);
    return {lift(0, b), lift(0, a)};
  }
  return {lift(1, l.point), lift(0, l.direction)};
}

Rational pair_det(const ProjLine& x, const ProjLine& y) {
  auto [u1, u2] = lift_pair(x);
  auto [v1, v2] = lift_pair(y);
  Mat4Q m;
  m.row(0) = u1.transpose();
  m.row(1) = u2.transpose();
  m.row(2) = v1.transpose();
  m.row(3) = v2.transpose();
  return m.determinant();
}

std::vector<std::vector<int>> dlk_table(const std::vector<ProjLine>& cfg) {
  int n = (int)cfg.size();
  std::vector<std::vector<int>> t(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) t[i][j] = t[j][i] = dlk_lines(cfg[i], cfg[j]);
  return t;
}

// ---------- exact polynomials in the stage parameter ----------

PolyQ ptrim(PolyQ p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

Rational peval(const PolyQ& p, const Rational& x) {
  Rational v = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
  return v;
}

PolyQ padd(const PolyQ& a, const PolyQ& b) {
  PolyQ r(std::max(a.size(), b.size()), Rational(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

PolyQ psub(const PolyQ& a, const PolyQ& b) {
  PolyQ r(std::max(a.size(), b.size()), Rational(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return r;
}

PolyQ pmul(const PolyQ& a, const PolyQ& b) {
  if (a.empty() || b.empty()) return {};
  PolyQ r(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

PolyQ pderiv(const PolyQ& p) {
  PolyQ r;
  for (size_t i = 1; i < p.size(); ++i) r.push_back(p[i] * Rational((long)i));
  return r;
}

// Division with remainder; b must be nonzero and trimmed.
std::pair<PolyQ, PolyQ> pdivmod(PolyQ a, const PolyQ& b) {
  a = ptrim(std::move(a));
  PolyQ q(a.size() > b.size() ? a.size() - b.size() + 1 : 1, Rational(0));
  while (a.size() >= b.size() && !a.empty()) {
    Rational f = a.back() / b.back();
    size_t shift = a.size() - b.size();
    q[shift] = f;
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    a = ptrim(std::move(a));
  }
  return {ptrim(std::move(q)), a};
}

PolyQ pgcd(PolyQ a, PolyQ b) {
  a = ptrim(std::move(a));
  b = ptrim(std::move(b));
  while (!b.empty()) {
    PolyQ r = pdivmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Rational lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

std::vector<PolyQ> sturm_chain(const PolyQ& p) {
  std::vector<PolyQ> chain{p, ptrim(pderiv(p))};
  while (!chain.back().empty() && chain.back().size() > 1) {
    PolyQ r = pdivmod(chain[chain.size() - 2], chain.back()).second;
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  if (chain.back().empty()) chain.pop_back();
  return chain;
}

int sign_of(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

int variations(const std::vector<PolyQ>& chain, const Rational& x) {
  int count = 0, prev = 0;
  for (const auto& p : chain) {
    int s = sign_of(peval(p, x));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++count;
    prev = s;
  }
  return count;
}

// Distinct roots of a nonzero polynomial in the closed interval [a, b].
int count_roots_closed(PolyQ p, const Rational& a, const Rational& b) {
  p = ptrim(std::move(p));
  if (p.empty()) throw RangeViolation("zero polynomial has no isolated roots");
  int endpoint = 0;
  if (peval(p, a) == 0) {
    ++endpoint;
    while (peval(p, a) == 0) p = pdivmod(p, PolyQ{-a, Rational(1)}).first;
  }
  if (peval(p, b) == 0) {
    ++endpoint;
    while (peval(p, b) == 0) p = pdivmod(p, PolyQ{-b, Rational(1)}).first;
  }
  if (p.size() <= 1) return endpoint;
  PolyQ square_free = pdivmod(p, pgcd(p, ptrim(pderiv(p)))).first;
  auto chain = sturm_chain(square_free);
  return endpoint + variations(chain, a) - variations(chain, b);
}

// ---------- polynomial 4x4 determinant for moving stages ----------

using PolyRow = std::array<PolyQ, 4>;

PolyQ pdet2(const PolyQ& a, const PolyQ& b, const PolyQ& c, const PolyQ& d) {
  return psub(pmul(a, d), pmul(b, c));
}

PolyQ pdet3(const std::array<PolyRow, 3>& m) {
  PolyQ r;
  r = pmul(m[0][0], pdet2(m[1][1], m[1][2], m[2][1], m[2][2]));
  r = psub(r, pmul(m[0][1], pdet2(m[1][0], m[1][2], m[2][0], m[2][2])));
  r = padd(r, pmul(m[0][2], pdet2(m[1][0], m[1][1], m[2][0], m[2][1])));
  return r;
}

PolyQ pdet4(const std::array<PolyRow, 4>& m) {
  PolyQ r;
  for (int c = 0; c < 4; ++c) {
    std::array<PolyRow, 3> minor;
    for (int i = 1; i < 4; ++i) {
      int cc = 0;
      for (int j = 0; j < 4; ++j) {
        if (j == c) continue;
        minor[i - 1][cc++] = m[i][j];
      }
      minor[i - 1][3] = {};
    }
    PolyQ term = pmul(m[0][c], pdet3(minor));
    r = (c % 2 == 0) ? padd(r, term) : psub(r, term);
  }
  return r;
}

PolyRow const_row(const Vec4Q& v) {
  PolyRow r;
  for (int i = 0; i < 4; ++i) r[i] = PolyQ{v[i]};
  return r;
}

PolyQ linear_coord(const Rational& from, const Rational& to) {
  return PolyQ{from, to - from};
}

}  // namespace

ProjLine affine_line(Vec3Q point, Vec3Q direction) {
  if (is_zero3(direction)) throw FormatError("line direction must be nonzero");
  return ProjLine{false, std::move(point), std::move(direction)};
}

ProjLine infinity_line(Vec3Q normal) {
  if (is_zero3(normal)) throw FormatError("plane normal must be nonzero");
  return ProjLine{true, Vec3Q::Zero(), std::move(normal)};
}

int dlk_lines(const ProjLine& a, const ProjLine& b) {
  Rational det = pair_det(a, b);
  if (det == 0) throw LinesIntersect("lines are not disjoint");
  return det < 0 ? 1 : -1;
}

bool is_hopf_config(const std::vector<ProjLine>& lines) {
  if (lines.size() < 2) throw RangeViolation("a configuration needs at least two lines");
  for (size_t i = 0; i < lines.size(); ++i)
    for (size_t j = i + 1; j < lines.size(); ++j)
      if (dlk_lines(lines[i], lines[j]) != 1) return false;
  return true;
}

int count_roots_in_unit(const PolyQ& p) {
  return count_roots_closed(p, Rational(0), Rational(1));
}

ProjLine transform_line(const Mat4Q& m, const ProjLine& l) {
  auto [u1, u2] = lift_pair(l);
  // lazyProduct avoids the scalar-product operator overload, which does not
  // compile for matrices over this scalar type.
  Vec4Q g1 = m.lazyProduct(u1), g2 = m.lazyProduct(u2);
  if (g1[0] == 0 && g2[0] == 0) {
    Vec3Q A(g1[1], g1[2], g1[3]), B(g2[1], g2[2], g2[3]);
    Vec3Q n = cross3(A, B);
    // Match the oriented frame convention: flip the normal when the frame of
    // n spans (A, B) negatively.
    auto [fb, fa] = infinity_frame(n);
    // Solve (A, B) = (fb, fa) * T using two independent coordinates.
    int r1 = -1, r2 = -1;
    for (int i = 0; i < 3 && r2 < 0; ++i) {
      if (fb[i] == 0 && fa[i] == 0) continue;
      if (r1 < 0) {
        r1 = i;
      } else if (fb[r1] * fa[i] - fa[r1] * fb[i] != 0) {
        r2 = i;
      }
    }
    Rational det2 = fb[r1] * fa[r2] - fa[r1] * fb[r2];
    Rational t11 = (A[r1] * fa[r2] - A[r2] * fa[r1]) / det2;
    Rational t21 = (fb[r1] * A[r2] - fb[r2] * A[r1]) / det2;
    Rational t12 = (B[r1] * fa[r2] - B[r2] * fa[r1]) / det2;
    Rational t22 = (fb[r1] * B[r2] - fb[r2] * B[r1]) / det2;
    if (t11 * t22 - t12 * t21 < 0) n = -n;
    return infinity_line(n);
  }
  Vec4Q h = g1[0] * g2 - g2[0] * g1;  // the direction representative (w = 0)
  Vec4Q pl;
  if (g1[0] != 0)
    pl = g1 / g1[0];
  else
    pl = g2 / g2[0];
  return affine_line(Vec3Q(pl[1], pl[2], pl[3]), Vec3Q(h[1], h[2], h[3]));
}

std::vector<ProjLine> standard_hyperboloid_config(int n, bool with_infinity) {
  if (n < 1) throw RangeViolation("the standard family needs at least one line");
  std::vector<ProjLine> out;
  for (int i = 1; i <= n; ++i)
    out.push_back(affine_line(Vec3Q(0, 0, i), Vec3Q(1, i, 0)));
  if (with_infinity) out.push_back(infinity_line(Vec3Q(1, 0, 0)));
  return out;
}

namespace {

Mat4Q chart_matrix(const ProjLine& l0) {
  auto [u1, u2] = lift_pair(l0);
  Mat4Q b = Mat4Q::Zero();
  b.col(2) = u1;
  b.col(3) = u2;
  Rational det = 0;
  for (int k1 = 0; k1 < 4 && det == 0; ++k1)
    for (int k2 = 0; k2 < 4 && det == 0; ++k2) {
      if (k1 == k2) continue;
      Mat4Q c = Mat4Q::Zero();
      c(k1, 0) = 1;
      c(k2, 1) = 1;
      c.col(2) = u1;
      c.col(3) = u2;
      det = c.determinant();
      if (det != 0) b = c;
    }
  if (det > 0) b.col(0) = -b.col(0);
  Mat4Q target = Mat4Q::Zero();
  target(0, 0) = 1;
  target(1, 1) = 1;
  target(2, 2) = -1;  // frame of the +x normal: ((0,-1,0), (0,0,1))
  target(3, 3) = 1;
  Mat4Q inv = b.inverse();
  return target.lazyProduct(inv);
}

// Rotation of the (y, z) coordinates by the rational point of angle 2*atan(r);
// fixes the standard infinity line together with its orientation.
Mat4Q stabilizer_rotation(const Rational& r) {
  Rational den = 1 + r * r, c = (1 - r * r) / den, s = 2 * r / den;
  Mat4Q m = Mat4Q::Identity();
  m(2, 2) = c;
  m(2, 3) = -s;
  m(3, 2) = s;
  m(3, 3) = c;
  return m;
}

bool is_standard_infinity(const ProjLine& l) {
  return l.at_infinity && l.direction[0] > 0 && l.direction[1] == 0 &&
         l.direction[2] == 0;
}

bool is_standard_ruling_line(const ProjLine& l) {
  if (l.at_infinity) return false;
  const Vec3Q& p = l.point;
  const Vec3Q& d = l.direction;
  return d[0] > 0 && d[2] == 0 && d[1] == p[2] * d[0] && p[1] == p[2] * p[0];
}

struct StagedConfig {
  std::vector<ProjLine> cfg;
  int l0 = 0;
};

Rational slope_of(const ProjLine& l) { return l.direction[1] / l.direction[0]; }

}  // namespace

IsotopyScript standardize(const std::vector<ProjLine>& lines) {
  if (lines.size() < 2) throw RangeViolation("standardize needs at least two lines");
  if (!is_hopf_config(lines)) throw NotHopf("all pairs must be linked +1");

  IsotopyScript script;
  script.initial = lines;
  int n = (int)lines.size();

  int l0 = 0;
  for (int i = 0; i < n; ++i)
    if (lines[i].at_infinity) {
      l0 = i;
      break;
    }

  std::vector<int> affine;
  for (int i = 0; i < n; ++i)
    if (i != l0) affine.push_back(i);

  bool already_standard = is_standard_infinity(lines[l0]);
  for (int i : affine) already_standard = already_standard && is_standard_ruling_line(lines[i]);

  std::vector<ProjLine> cfg = lines;
  if (already_standard) {
    Stage chart;
    chart.kind = Stage::Kind::Chart;
    script.stages.push_back(chart);
    script.stages.push_back(Stage{});  // zero shift
  } else {
    Mat4Q base_chart = chart_matrix(lines[l0]);
    int pair_budget = (int)affine.size() * ((int)affine.size() - 1) + 2;
    bool separated = false;
    for (int k = 0; k <= pair_budget && !separated; ++k) {
      Mat4Q m = base_chart;
      if (k > 0) m = stabilizer_rotation(Rational(1, k)).lazyProduct(base_chart);
      std::vector<ProjLine> candidate;
      candidate.reserve(n);
      bool good = true;
      for (int i = 0; i < n; ++i) candidate.push_back(transform_line(m, lines[i]));
      for (int i : affine)
        good = good && !candidate[i].at_infinity && candidate[i].direction[0] != 0;
      if (good)
        for (size_t a = 0; a < affine.size() && good; ++a)
          for (size_t b = a + 1; b < affine.size() && good; ++b)
            good = slope_of(candidate[affine[a]]) != slope_of(candidate[affine[b]]);
      if (good) {
        Stage chart;
        chart.kind = Stage::Kind::Chart;
        chart.chart = m;
        script.stages.push_back(chart);
        cfg = std::move(candidate);
        separated = true;
      }
    }
    if (!separated) throw DegenerateChart("projected slopes could not be separated");

    // Vertical shift pushing every crossing height below the smallest slope.
    bool have_pairs = affine.size() >= 2;
    Rational zmax = 0, cmin = 0;
    bool first = true;
    for (int i : affine) {
      Rational c = slope_of(cfg[i]);
      if (first || c < cmin) cmin = c;
      first = false;
    }
    bool any_crossing = false;
    for (size_t a = 0; a < affine.size(); ++a)
      for (size_t b = a + 1; b < affine.size(); ++b) {
        const ProjLine& la = cfg[affine[a]];
        const ProjLine& lb = cfg[affine[b]];
        Rational ca = slope_of(la), cb = slope_of(lb);
        Rational ba = la.point[1] - ca * la.point[0];
        Rational bb = lb.point[1] - cb * lb.point[0];
        Rational xq = (bb - ba) / (ca - cb);
        for (const ProjLine* l : {&la, &lb}) {
          Rational z = l->point[2] +
                       (xq - l->point[0]) * l->direction[2] / l->direction[0];
          if (!any_crossing || z > zmax) zmax = z;
          any_crossing = true;
        }
      }
    Stage shift;
    shift.kind = Stage::Kind::Shift;
    if (have_pairs && any_crossing && !(cmin > zmax)) shift.shift[2] = cmin - zmax - 1;
    script.stages.push_back(shift);
    for (int i : affine) cfg[i].point += shift.shift;
  }

  std::vector<int> order = affine;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return slope_of(cfg[a]) > slope_of(cfg[b]); });

  for (int i : order) {
    Rational c = slope_of(cfg[i]);
    Stage rot;
    rot.kind = Stage::Kind::Move;
    rot.line = i;
    rot.base_from = cfg[i].point;
    rot.dir_from = cfg[i].direction;
    rot.base_to = Vec3Q(cfg[i].point[0], cfg[i].point[1], c);
    rot.dir_to = Vec3Q(cfg[i].direction[0], cfg[i].direction[1], Rational(0));
    script.stages.push_back(rot);
    cfg[i] = affine_line(rot.base_to, rot.dir_to);
  }
  for (int i : order) {
    Rational c = slope_of(cfg[i]);
    Rational intercept = cfg[i].point[1] - c * cfg[i].point[0];
    Stage tr;
    tr.kind = Stage::Kind::Move;
    tr.line = i;
    tr.base_from = cfg[i].point;
    tr.dir_from = cfg[i].direction;
    tr.base_to = Vec3Q(cfg[i].point[0], cfg[i].point[1] - intercept, cfg[i].point[2]);
    tr.dir_to = cfg[i].direction;
    script.stages.push_back(tr);
    cfg[i] = affine_line(tr.base_to, tr.dir_to);
  }
  return script;
}

namespace {

void certify_entry(Certificate& cert, int stage, int i, int j, PolyQ det) {
  det = ptrim(std::move(det));
  if (det.empty())
    throw CollisionFound("stage " + std::to_string(stage) + ": lines " + std::to_string(i) +
                         " and " + std::to_string(j) + " coincide throughout");
  int roots = count_roots_closed(det, Rational(0), Rational(1));
  if (roots > 0) {
    Rational a = 0, b = 1;
    for (int step = 0; step < 12; ++step) {
      Rational mid = (a + b) / 2;
      if (peval(det, mid) == 0) {
        a = mid;
        b = mid;
        break;
      }
      if (count_roots_closed(det, a, mid) > 0)
        b = mid;
      else
        a = mid;
    }
    throw CollisionFound("stage " + std::to_string(stage) + ": lines " + std::to_string(i) +
                         " and " + std::to_string(j) + " cross for t in [" +
                         rational_text(a) + ", " + rational_text(b) + "]");
  }
  cert.entries.push_back(PairCheck{stage, i, j, std::move(det), 0});
}

void certify_constants(Certificate& cert, int stage, const std::vector<ProjLine>& cfg) {
  for (size_t i = 0; i < cfg.size(); ++i)
    for (size_t j = i + 1; j < cfg.size(); ++j)
      certify_entry(cert, stage, (int)i, (int)j, PolyQ{pair_det(cfg[i], cfg[j])});
}

std::pair<PolyRow, PolyRow> moving_rows(const Stage& st) {
  PolyRow u1{PolyQ{Rational(1)}, linear_coord(st.base_from[0], st.base_to[0]),
             linear_coord(st.base_from[1], st.base_to[1]),
             linear_coord(st.base_from[2], st.base_to[2])};
  PolyRow u2{PolyQ{Rational(0)}, linear_coord(st.dir_from[0], st.dir_to[0]),
             linear_coord(st.dir_from[1], st.dir_to[1]),
             linear_coord(st.dir_from[2], st.dir_to[2])};
  return {u1, u2};
}

}  // namespace

Certificate verify_script(const IsotopyScript& s) {
  std::vector<ProjLine> cur = s.initial;
  auto base = dlk_table(cur);
  Certificate cert;
  for (int si = 0; si < (int)s.stages.size(); ++si) {
    const Stage& st = s.stages[si];
    if (st.kind == Stage::Kind::Chart) {
      if (!(st.chart.determinant() > 0))
        throw FormatError("chart stage must have positive determinant");
      for (auto& l : cur) l = transform_line(st.chart, l);
      certify_constants(cert, si, cur);
    } else if (st.kind == Stage::Kind::Shift) {
      certify_constants(cert, si, cur);
      for (auto& l : cur)
        if (!l.at_infinity) l.point += st.shift;
    } else {
      int m = st.line;
      if (m < 0 || m >= (int)cur.size())
        throw FormatError("move stage line index out of range");
      if (cur[m].at_infinity) throw FormatError("move stage cannot move a line at infinity");
      if (!eq3(cur[m].point, st.base_from) || !eq3(cur[m].direction, st.dir_from))
        throw FormatError("stage endpoints do not chain");
      auto [u1, u2] = moving_rows(st);
      for (int j = 0; j < (int)cur.size(); ++j) {
        if (j == m) continue;
        auto [v1, v2] = lift_pair(cur[j]);
        std::array<PolyRow, 4> rows =
            m < j ? std::array<PolyRow, 4>{u1, u2, const_row(v1), const_row(v2)}
                  : std::array<PolyRow, 4>{const_row(v1), const_row(v2), u1, u2};
        certify_entry(cert, si, std::min(m, j), std::max(m, j), pdet4(rows));
      }
      for (int i = 0; i < (int)cur.size(); ++i)
        for (int j = i + 1; j < (int)cur.size(); ++j) {
          if (i == m || j == m) continue;
          certify_entry(cert, si, i, j, PolyQ{pair_det(cur[i], cur[j])});
        }
      cur[m] = affine_line(st.base_to, st.dir_to);
    }
    if (dlk_table(cur) != base)
      throw CollisionFound("linking changed across stage " + std::to_string(si));
  }
  return cert;
}

std::vector<ProjLine> apply_script(const IsotopyScript& s) {
  std::vector<ProjLine> cur = s.initial;
  for (const Stage& st : s.stages) {
    if (st.kind == Stage::Kind::Chart) {
      for (auto& l : cur) l = transform_line(st.chart, l);
    } else if (st.kind == Stage::Kind::Shift) {
      for (auto& l : cur)
        if (!l.at_infinity) l.point += st.shift;
    } else {
      cur.at(st.line) = affine_line(st.base_to, st.dir_to);
    }
  }
  return cur;
}

std::string to_lines_text(const std::vector<ProjLine>& lines) {
  std::ostringstream os;
  for (const ProjLine& l : lines) {
    if (l.at_infinity) {
      os << "INF " << rational_text(l.direction[0]) << ' ' << rational_text(l.direction[1])
         << ' ' << rational_text(l.direction[2]) << '\n';
    } else {
      os << "P " << rational_text(l.point[0]) << ' ' << rational_text(l.point[1]) << ' '
         << rational_text(l.point[2]) << " D " << rational_text(l.direction[0]) << ' '
         << rational_text(l.direction[1]) << ' ' << rational_text(l.direction[2]) << '\n';
    }
  }
  return os.str();
}

std::vector<ProjLine> parse_lines_text(const std::string& text) {
  std::vector<ProjLine> out;
  std::istringstream is(text);
  std::string row;
  while (std::getline(is, row)) {
    std::istringstream ls(row);
    std::vector<std::string> tok;
    std::string t;
    while (ls >> t) tok.push_back(t);
    if (tok.empty() || tok[0][0] == '#') continue;
    if (tok[0] == "INF" && tok.size() == 4) {
      out.push_back(infinity_line(
          Vec3Q(parse_rational(tok[1]), parse_rational(tok[2]), parse_rational(tok[3]))));
    } else if (tok[0] == "P" && tok.size() == 8 && tok[4] == "D") {
      out.push_back(affine_line(
          Vec3Q(parse_rational(tok[1]), parse_rational(tok[2]), parse_rational(tok[3])),
          Vec3Q(parse_rational(tok[5]), parse_rational(tok[6]), parse_rational(tok[7]))));
    } else {
      throw FormatError("unrecognized line record '" + row + "'");
    }
  }
  return out;
}

namespace {

nlohmann::json vec_json(const Vec3Q& v) {
  return nlohmann::json::array({rational_text(v[0]), rational_text(v[1]), rational_text(v[2])});
}

}  // namespace

std::string script_json(const IsotopyScript& s) {
  nlohmann::json j;
  j["lines"] = s.initial.size();
  nlohmann::json stages = nlohmann::json::array();
  for (const Stage& st : s.stages) {
    nlohmann::json o;
    if (st.kind == Stage::Kind::Chart) {
      o["kind"] = "chart";
      nlohmann::json rows = nlohmann::json::array();
      for (int r = 0; r < 4; ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < 4; ++c) row.push_back(rational_text(st.chart(r, c)));
        rows.push_back(row);
      }
      o["matrix"] = rows;
    } else if (st.kind == Stage::Kind::Shift) {
      o["kind"] = "shift";
      o["delta"] = vec_json(st.shift);
    } else {
      o["kind"] = "move";
      o["line"] = st.line;
      o["base_from"] = vec_json(st.base_from);
      o["base_to"] = vec_json(st.base_to);
      o["dir_from"] = vec_json(st.dir_from);
      o["dir_to"] = vec_json(st.dir_to);
    }
    stages.push_back(o);
  }
  j["stages"] = stages;
  return j.dump();
}

std::string certificate_json(const Certificate& c) {
  nlohmann::json j;
  nlohmann::json entries = nlohmann::json::array();
  for (const PairCheck& e : c.entries) {
    nlohmann::json o;
    o["stage"] = e.stage;
    o["pair"] = nlohmann::json::array({e.first, e.second});
    nlohmann::json poly = nlohmann::json::array();
    for (const Rational& r : e.det) poly.push_back(rational_text(r));
    o["det"] = poly;
    o["roots"] = e.roots;
    entries.push_back(o);
  }
  j["entries"] = entries;
  j["verified"] = true;
  return j.dump();
}

std::vector<ProjLine> random_hopf_config(int n, std::mt19937& rng, bool with_infinity) {
  if (n < 1) throw RangeViolation("need at least one line");
  std::uniform_int_distribution<int> num(-6, 6), den(2, 7), xoff(-4, 4);
  std::vector<ProjLine> out;
  for (int i = 1; i <= n; ++i) {
    Rational c = Rational(i) + Rational(num(rng), 7 * den(rng));
    Rational b(num(rng), den(rng));
    Rational x0(xoff(rng));
    out.push_back(affine_line(Vec3Q(x0, c * x0 + b, c), Vec3Q(1, c, 0)));
  }
  if (with_infinity) out.push_back(infinity_line(Vec3Q(1, 0, 0)));
  Mat4Q q = Mat4Q::Identity();
  std::uniform_int_distribution<int> idx(0, 3);
  for (int s = 0; s < 6; ++s) {
    int a = idx(rng), b = idx(rng);
    if (a == b) continue;
    Mat4Q e = Mat4Q::Identity();
    e(a, b) = Rational(num(rng), 5);
    Mat4Q next = e.lazyProduct(q);
    q = next;
  }
  for (auto& l : out) l = transform_line(q, l);
  return out;
}

}  // namespace rplink
