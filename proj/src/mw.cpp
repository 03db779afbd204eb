#include <rplink/mw.hpp>

#include <numeric>
#include <utility>

#include <nlohmann/json.hpp>

#include <rplink/torus.hpp>

namespace rplink {

namespace {

// Appends the positive band letting a lower block of width s cross over an
// adjacent upper block of width r; both blocks start at strand offset u.
void emit_block_crossing(std::vector<int>& letters, int u, int r, int s) {
  for (int i = 1; i <= s; ++i)
    for (int j = u + r + i - 1; j >= u + i; --j) letters.push_back(j);
}

}  // namespace

long long nd(int d) { return (long long)(d - 1) * (d - 2) / 2; }

int WParams::d() const {
  return std::accumulate(parts.begin(), parts.end(), 0) + 2;
}

int WParams::g() const { return (int)parts.size() - 1; }

WParams make_wparams(std::vector<int> parts) {
  if (parts.empty()) throw InvalidComposition("composition must have at least one part");
  for (int a : parts)
    if (a < 1) throw InvalidComposition("every part must be a positive integer");
  return WParams{std::move(parts)};
}

WExpected expected_invariants(const WParams& p) {
  const auto& a = p.parts;
  int m = (int)a.size();
  WExpected e;
  e.components = m;
  e.dlk_matrix = Eigen::MatrixXi::Zero(m, m);
  long long mutual = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i != j) {
        e.dlk_matrix(i, j) = a[i] * a[j];
        if (i < j) mutual += (long long)a[i] * a[j];
      }
  long long local = 0;
  for (int ai : a) {
    long long cr = (long long)(ai + 2) * (ai - 1) / 2;
    e.per_component_cr.push_back(cr);
    e.component_params.emplace_back(ai + 2, ai);
    local += cr;
  }
  e.total_cr = nd(p.d()) - p.g() - 1;
  e.w_lambda_abs = nd(p.d()) - p.g();
  e.identity_check = (local + mutual == e.total_cr);
  return e;
}

BraidWord w_braid(const WParams& p) {
  const auto& a = p.parts;
  int m = (int)a.size();
  int n = std::accumulate(a.begin(), a.end(), 0);
  std::vector<int> letters;

  // Half twist of the m fat strands, each fat crossing expanded blockwise.
  std::vector<int> ord(m);
  std::iota(ord.begin(), ord.end(), 0);
  if (m >= 2) {
    for (int fat : delta(m).letters) {
      int upper = ord[fat - 1];
      int lower = ord[fat];
      int u = 0;
      for (int t = 0; t < fat - 1; ++t) u += a[ord[t]];
      emit_block_crossing(letters, u, a[upper], a[lower]);
      std::swap(ord[fat - 1], ord[fat]);
    }
  }

  // Torus insert inside each block; after the half twist block i sits below
  // exactly the blocks with larger index.
  for (int i = 0; i < m; ++i) {
    int off = 0;
    for (int k = i + 1; k < m; ++k) off += a[k];
    if (a[i] >= 2)
      for (int letter : t_braid(a[i], a[i] + 2).letters) letters.push_back(letter + off);
  }
  return make_word(n, std::move(letters));
}

WModel verify_w_model(const WParams& p) {
  WModel model;
  model.params = p;
  model.expected = expected_invariants(p);
  model.braid = w_braid(p);

  ClosureDescriptor desc = describe_closure(model.braid);
  int m = (int)p.parts.size();
  if ((int)desc.components.size() != model.expected.components)
    throw ModelMismatch("components");

  std::vector<int> strand_component(model.braid.n + 1, -1);
  for (int c = 0; c < (int)desc.components.size(); ++c)
    for (int s : desc.components[c]) strand_component[s] = c;

  // Strands are labelled by starting position, so block i begins right
  // after the blocks with smaller index.
  model.block_component.assign(m, -1);
  int top = 0;
  for (int i = 0; i < m; ++i) {
    int c = strand_component[top + 1];
    for (int s = top + 1; s <= top + p.parts[i]; ++s)
      if (strand_component[s] != c) throw ModelMismatch("block_connected");
    model.block_component[i] = c;
    top += p.parts[i];
  }
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (model.block_component[i] == model.block_component[j])
        throw ModelMismatch("block_connected");

  model.measured_dlk = rp3_doubled_linking_matrix(model.braid);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i != j && model.measured_dlk.entries(model.block_component[i],
                                               model.block_component[j]) !=
                        model.expected.dlk(i, j))
        throw ModelMismatch("dlk");

  model.stats = diagram_stats(model.braid);
  if (!model.stats.all_positive) throw ModelMismatch("positivity");
  if (model.stats.crossings != model.expected.total_cr) throw ModelMismatch("total_cr");
  for (int i = 0; i < m; ++i)
    if (model.stats.per_component_self_crossings[model.block_component[i]] !=
        model.expected.per_component_cr[i])
      throw ModelMismatch("per_component_cr");

  model.actual = invariant_signature(model.braid);
  return model;
}

bool all_pairs_positively_linked(const WParams& p) {
  if (p.parts.size() < 2)
    throw InvalidComposition("pairwise linking needs at least two parts");
  WModel model = verify_w_model(p);
  int m = (int)p.parts.size();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i != j && model.measured_dlk.entries(model.block_component[i],
                                               model.block_component[j]) <= 0)
        return false;
  return true;
}

std::string w_model_json(const WModel& m) {
  nlohmann::json j;
  j["parts"] = m.params.parts;
  j["d"] = m.params.d();
  j["g"] = m.params.g();
  j["components"] = m.actual.components;
  std::vector<std::vector<int>> dlk;
  for (int r = 0; r < m.measured_dlk.size(); ++r) {
    std::vector<int> row;
    for (int c = 0; c < m.measured_dlk.size(); ++c) row.push_back(m.measured_dlk.entries(r, c));
    dlk.push_back(std::move(row));
  }
  j["dlk_matrix"] = dlk;
  j["total_cr"] = m.stats.crossings;
  j["per_component_cr"] = m.stats.per_component_self_crossings;
  j["w_lambda_abs"] = m.expected.w_lambda_abs;
  j["verified"] = true;
  return j.dump();
}

}  // namespace rplink
