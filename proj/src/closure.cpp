#include <rplink/closure.hpp>

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>

#include <nlohmann/json.hpp>

namespace rplink {

namespace {

std::vector<std::vector<int>> cycles_of(const Perm& p) {
  int n = (int)p.size();
  std::vector<bool> seen(n + 1, false);
  std::vector<std::vector<int>> out;
  for (int s = 1; s <= n; ++s) {
    if (seen[s]) continue;
    std::vector<int> cyc;
    int cur = s;
    while (!seen[cur]) {
      seen[cur] = true;
      cyc.push_back(cur);
      cur = p[cur - 1];
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

std::vector<int> component_of_strand(const std::vector<std::vector<int>>& comps, int n) {
  std::vector<int> idx(n + 1, -1);
  for (int c = 0; c < (int)comps.size(); ++c)
    for (int s : comps[c]) idx[s] = c;
  return idx;
}

// Signed crossing accumulation over a braid word with position tracking:
// visit(a, b, sign) is called with the two strand labels at each letter.
template <typename Visit>
void scan_crossings(const BraidWord& w, Visit visit) {
  std::vector<int> at(w.n + 1);  // position -> strand label
  std::iota(at.begin(), at.end(), 0);
  for (int letter : w.letters) {
    int k = std::abs(letter);
    visit(at[k], at[k + 1], letter > 0 ? 1 : -1);
    std::swap(at[k], at[k + 1]);
  }
}

}  // namespace

bool matrix_equal(const Eigen::MatrixXi& a, const Eigen::MatrixXi& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return (a.array() == b.array()).all();
}

ClosureDescriptor describe_closure(const BraidWord& w) {
  ClosureDescriptor d;
  d.braid = w;
  d.closure_perm = compose(perm_of(w), delta_perm(w.n));
  d.components = cycles_of(d.closure_perm);
  for (const auto& c : d.components) d.component_lengths.push_back((int)c.size());
  return d;
}

BraidWord lift(const BraidWord& w) { return concat(w, tau(w)); }

std::vector<int> lift_component_map(const BraidWord& w) {
  ClosureDescriptor d = describe_closure(w);
  std::vector<int> proj_of = component_of_strand(d.components, w.n);
  std::vector<std::vector<int>> lift_comps = cycles_of(perm_of(lift(w)));
  std::vector<int> map;
  map.reserve(lift_comps.size());
  for (const auto& c : lift_comps) map.push_back(proj_of[c.front()]);
  return map;
}

DoubledLinkingMatrix s3_doubled_linking_matrix(const BraidWord& w) {
  std::vector<std::vector<int>> comps = cycles_of(perm_of(w));
  std::vector<int> comp = component_of_strand(comps, w.n);
  Eigen::MatrixXi m = Eigen::MatrixXi::Zero((int)comps.size(), (int)comps.size());
  scan_crossings(w, [&](int a, int b, int sign) {
    int ca = comp[a], cb = comp[b];
    if (ca != cb) {
      m(ca, cb) += sign;
      m(cb, ca) += sign;
    }
  });
  return DoubledLinkingMatrix{std::move(m)};
}

DoubledLinkingMatrix rp3_doubled_linking_matrix(const BraidWord& w) {
  ClosureDescriptor d = describe_closure(w);
  int s = (int)d.components.size();
  std::vector<int> cover = lift_component_map(w);
  DoubledLinkingMatrix lifted = s3_doubled_linking_matrix(lift(w));
  Eigen::MatrixXi m = Eigen::MatrixXi::Zero(s, s);
  for (int a = 0; a < lifted.size(); ++a)
    for (int b = 0; b < lifted.size(); ++b) {
      if (a == b || cover[a] == cover[b]) continue;
      // Sum of plain linking numbers lk = entry/2 over covering pairs; the
      // ordered scan hits each (cover a -> i, cover b -> j) pair once.
      int e = lifted.entries(a, b);
      if (e % 2 != 0) throw Error("Internal", "odd doubled linking in the plain closure");
      m(cover[a], cover[b]) += e / 2;
    }
  return DoubledLinkingMatrix{std::move(m)};
}

DiagramStats diagram_stats(const BraidWord& w) {
  DiagramStats st;
  st.arcs = w.n;
  st.crossings = (long long)w.letters.size();
  st.all_positive =
      std::all_of(w.letters.begin(), w.letters.end(), [](int k) { return k > 0; });
  ClosureDescriptor d = describe_closure(w);
  std::vector<int> comp = component_of_strand(d.components, w.n);
  st.per_component_self_crossings.assign(d.components.size(), 0);
  scan_crossings(w, [&](int a, int b, int sign) {
    if (comp[a] == comp[b]) st.per_component_self_crossings[comp[a]] += sign;
  });
  return st;
}

InvariantSignature invariant_signature(const BraidWord& w) {
  InvariantSignature s;
  ClosureDescriptor d = describe_closure(w);
  s.components = (int)d.components.size();
  s.component_lengths = d.component_lengths;
  std::sort(s.component_lengths.begin(), s.component_lengths.end());
  s.dlk_rp3 = canonical_matrix(rp3_doubled_linking_matrix(w).entries);
  DoubledLinkingMatrix lifted = s3_doubled_linking_matrix(lift(w));
  s.lift_components = lifted.size();
  s.dlk_s3_lift = canonical_matrix(lifted.entries);
  return s;
}

namespace {

bool lex_less(const Eigen::MatrixXi& a, const Eigen::MatrixXi& b) {
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      if (a(i, j) != b(i, j)) return a(i, j) < b(i, j);
    }
  return false;
}

Eigen::MatrixXi apply_order(const Eigen::MatrixXi& m, const std::vector<int>& order) {
  int s = (int)order.size();
  Eigen::MatrixXi p(s, s);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) p(i, j) = m(order[i], order[j]);
  return p;
}

bool swap_fixes(const Eigen::MatrixXi& m, int a, int b) {
  int s = (int)m.rows();
  for (int j = 0; j < s; ++j) {
    int ja = j == a ? b : j == b ? a : j;
    if (m(a, j) != m(b, ja)) return false;
    if (m(j, a) != m(ja, b)) return false;
  }
  return m(a, a) == m(b, b);
}

}  // namespace

Eigen::MatrixXi canonical_matrix(const Eigen::MatrixXi& m) {
  int s = (int)m.rows();
  if (s <= 1) return m;

  // Neighborhood refinement with content-based color keys, compressed to rank
  // ids each round; ranks come from sorted key order, so the final cell order
  // is independent of the input labeling.
  std::vector<std::string> color(s);
  for (int i = 0; i < s; ++i) {
    std::vector<int> row(m.row(i).begin(), m.row(i).end());
    std::sort(row.begin(), row.end());
    color[i] = std::to_string(m(i, i)) + "#";
    for (int v : row) color[i] += std::to_string(v) + ",";
  }
  auto compress = [](std::vector<std::string>& c) {
    std::vector<std::string> uniq = c;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    for (auto& x : c) {
      auto it = std::lower_bound(uniq.begin(), uniq.end(), x);
      x = std::to_string(it - uniq.begin());
    }
    return uniq.size();
  };
  size_t cells_before = compress(color);
  for (int round = 0; round < s; ++round) {
    std::vector<std::string> next(s);
    for (int i = 0; i < s; ++i) {
      std::vector<std::string> nbr;
      for (int j = 0; j < s; ++j)
        if (j != i) nbr.push_back(color[j] + "@" + std::to_string(m(i, j)));
      std::sort(nbr.begin(), nbr.end());
      next[i] = color[i] + "|";
      for (const auto& x : nbr) next[i] += x + ";";
    }
    size_t cells_after = compress(next);
    color = std::move(next);
    // Refinement only splits cells: an unchanged count means a stable partition.
    if (cells_after == cells_before || (int)cells_after == s) break;
    cells_before = cells_after;
  }

  // Cells ordered by color key.
  std::vector<int> order(s);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return color[a] < color[b]; });
  std::vector<std::pair<int, int>> cells;  // [begin, end) into order
  for (int i = 0; i < s;) {
    int j = i;
    while (j < s && color[order[j]] == color[order[i]]) ++j;
    cells.emplace_back(i, j);
    i = j;
  }

  // Cells all of whose transpositions fix the matrix cannot change the
  // result; skip enumerating them.
  std::vector<std::pair<int, int>> active;
  long long work = 1;
  for (auto [b, e] : cells) {
    if (e - b <= 1) continue;
    bool fixes = true;
    for (int i = b; i < e && fixes; ++i)
      for (int j = i + 1; j < e && fixes; ++j)
        if (!swap_fixes(m, order[i], order[j])) fixes = false;
    if (fixes) continue;
    active.emplace_back(b, e);
    for (int k = 2; k <= e - b; ++k) work *= k;
    if (work > 2'000'000) throw Error("Internal", "matrix canonicalization too large");
  }

  Eigen::MatrixXi best = apply_order(m, order);
  std::vector<int> cand = order;
  std::function<void(size_t)> rec = [&](size_t idx) {
    if (idx == active.size()) {
      Eigen::MatrixXi p = apply_order(m, cand);
      if (lex_less(p, best)) best = std::move(p);
      return;
    }
    auto [b, e] = active[idx];
    std::sort(cand.begin() + b, cand.begin() + e);
    do {
      rec(idx + 1);
    } while (std::next_permutation(cand.begin() + b, cand.begin() + e));
  };
  rec(0);
  return best;
}

std::string signature_json(const InvariantSignature& s) {
  nlohmann::json j;
  j["components"] = s.components;
  j["component_lengths"] = s.component_lengths;
  // Eigen stores column-major; emit row-major explicitly.
  std::vector<int> rp3;
  for (int i = 0; i < s.dlk_rp3.rows(); ++i)
    for (int jcol = 0; jcol < s.dlk_rp3.cols(); ++jcol) rp3.push_back(s.dlk_rp3(i, jcol));
  j["dlk_rp3"] = rp3;
  j["lift_components"] = s.lift_components;
  std::vector<int> lm;
  for (int i = 0; i < s.dlk_s3_lift.rows(); ++i)
    for (int jcol = 0; jcol < s.dlk_s3_lift.cols(); ++jcol) lm.push_back(s.dlk_s3_lift(i, jcol));
  j["dlk_s3_lift"] = lm;
  return j.dump();
}

}  // namespace rplink
