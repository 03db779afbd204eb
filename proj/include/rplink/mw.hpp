#pragma once

#include <Eigen/Core>

#include <string>
#include <utility>
#include <vector>

#include <rplink/braid.hpp>
#include <rplink/closure.hpp>
#include <rplink/errors.hpp>

namespace rplink {

// Maximal node count of a plane curve of degree d: (d-1)(d-2)/2.
long long nd(int d);

// A composition a_1, ..., a_{g+1} of positive integers selecting one model
// link per (degree, genus) pair: the degree is (sum of parts) + 2 and the
// genus is one less than the number of parts.
struct WParams {
  std::vector<int> parts;
  int d() const;
  int g() const;
};

// Validates the composition (non-empty, all parts >= 1).
WParams make_wparams(std::vector<int> parts);  // throws InvalidComposition

// Closed-form invariants the model link must realize, indexed in block
// order (block i corresponds to part a_i).
struct WExpected {
  int components = 0;
  Eigen::MatrixXi dlk_matrix;  // doubled linking; diagonal kept at zero
  std::vector<long long> per_component_cr;
  long long total_cr = 0;
  long long w_lambda_abs = 0;
  std::vector<std::pair<int, int>> component_params;  // (a_i + 2, a_i) torus type
  bool identity_check = false;

  int dlk(int i, int j) const { return dlk_matrix(i, j); }
};

WExpected expected_invariants(const WParams& p);

// The model braid: a positive half twist of g+1 cabled strands (block i
// cabled to width a_i) followed by an (a_i, a_i+2) torus insert inside
// each block.
BraidWord w_braid(const WParams& p);

// A verified model: the braid together with its expected and measured data.
struct WModel {
  WParams params;
  BraidWord braid;
  WExpected expected;
  InvariantSignature actual;
  DiagramStats stats;
  DoubledLinkingMatrix measured_dlk;          // component order
  std::vector<int> block_component;           // closure component per block
};

// Builds the model braid and checks every expected invariant against the
// measured diagram; throws ModelMismatch naming the first failing field.
WModel verify_w_model(const WParams& p);

// True when every pair of distinct components has positive measured
// linking; requires at least two parts (throws InvalidComposition).
bool all_pairs_positively_linked(const WParams& p);

// JSON report of a verified model.
std::string w_model_json(const WModel& m);

}  // namespace rplink
