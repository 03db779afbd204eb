#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <rplink/braid.hpp>
#include <rplink/certify.hpp>
#include <rplink/closure.hpp>
#include <rplink/line_config.hpp>
#include <rplink/mw.hpp>
#include <rplink/selftest.hpp>
#include <rplink/tangent.hpp>
#include <rplink/torus.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;
using namespace rplink;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path);
  out << content;
}

std::string trimmed(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, ',')) {
    item = trimmed(item);
    if (item.empty()) throw UsageError("empty entry in integer list '" + s + "'");
    size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw UsageError("not an integer: '" + item + "'");
    }
    if (used != item.size()) throw UsageError("not an integer: '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("empty integer list");
  return out;
}

// Every subcommand prints a human summary followed by one machine-readable
// JSON object; --json suppresses the summary.
void emit(bool json_only, const std::string& human, const json& machine) {
  if (!json_only) std::cout << human;
  std::cout << machine.dump(2) << "\n";
}

json braid_json(const BraidWord& w) {
  return json{{"word", to_text(w)},
              {"n", w.n},
              {"exponent_sum", exponent_sum(w)},
              {"permutation", perm_of(w)},
              {"tau", to_text(tau(w))},
              {"delta", to_text(delta(w.n))}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"projective links toolkit: braids, closures, torus links, maximal-writhe "
               "models, certified line isotopies, and tangent-surface plots"};
  app.require_subcommand(1);

  bool json_only = false;
  int exit_rc = 0;

  // ---- braid ----
  std::string braid_word;
  bool want_normal_form = false;
  auto* braid_cmd = app.add_subcommand("braid", "normal form and basic homomorphisms");
  braid_cmd->add_option("--word", braid_word, "braid word, e.g. \"B3: 2 1 2\"")->required();
  braid_cmd->add_flag("--normal-form", want_normal_form, "compute the left-greedy normal form");
  braid_cmd->add_flag("--json", json_only, "machine output only");
  braid_cmd->callback([&] {
    BraidWord w = parse_braid_text(braid_word);
    json j = braid_json(w);
    std::ostringstream human;
    human << "word " << to_text(w) << ": " << w.n << " strands, exponent sum "
          << exponent_sum(w) << "\n";
    if (want_normal_form) {
      CanonicalForm cf = canonical_form(w);
      j["normal_form"] = {{"factors", (int)cf.factors.size()},
                          {"text", to_string(cf)},
                          {"word", to_text(word_of(cf))}};
      human << "normal form: " << cf.factors.size() << " factor(s), " << to_string(cf) << "\n";
    }
    emit(json_only, human.str(), j);
  });

  // ---- closure ----
  std::string closure_word;
  auto* closure_cmd = app.add_subcommand("closure", "disk-closure invariant signature");
  closure_cmd->add_option("--word", closure_word, "braid word")->required();
  closure_cmd->add_flag("--json", json_only, "machine output only");
  closure_cmd->callback([&] {
    BraidWord w = parse_braid_text(closure_word);
    ClosureDescriptor cd = describe_closure(w);
    InvariantSignature sig = invariant_signature(w);
    DiagramStats st = diagram_stats(w);
    json j{{"word", to_text(w)},
           {"components", cd.components},
           {"stats", {{"arcs", st.arcs}, {"crossings", st.crossings},
                      {"all_positive", st.all_positive}}},
           {"signature", json::parse(signature_json(sig))}};
    std::ostringstream human;
    human << "closure of " << to_text(w) << ": " << sig.components << " component(s), "
          << sig.lift_components << " in the double cover, " << st.crossings
          << " diagram crossings\n";
    emit(json_only, human.str(), j);
  });

  // ---- torus ----
  int torus_p = 0, torus_q = 0;
  auto* torus_cmd = app.add_subcommand("torus", "projective torus link formulas and braid");
  torus_cmd->add_option("--p", torus_p, "first parameter")->required();
  torus_cmd->add_option("--q", torus_q, "second parameter (same parity as --p)")->required();
  torus_cmd->add_flag("--json", json_only, "machine output only");
  torus_cmd->callback([&] {
    TorusParams t{torus_p, torus_q};
    json j = json::parse(torus_json(t));
    std::ostringstream human;
    human << "torus link (" << torus_p << ", " << torus_q << "): components "
          << component_count(t) << ", ps " << ps_formula(t);
    try {
      BraidWord w = t_braid(torus_q, torus_p);  // q strands, p rows
      j["braid"] = to_text(w);
      human << ", cr " << cr_formula(t) << ", braid " << to_text(w);
    } catch (const Error&) {
      // No standard positive witness for this parameter range.
    }
    human << "\n";
    emit(json_only, human.str(), j);
  });

  // ---- mw ----
  std::string mw_parts;
  auto* mw_cmd = app.add_subcommand("mw", "build and verify a maximal-writhe model link");
  mw_cmd->add_option("--parts", mw_parts, "composition, e.g. 1,1,2")->required();
  mw_cmd->add_flag("--json", json_only, "machine output only");
  mw_cmd->callback([&] {
    WParams p = make_wparams(parse_int_list(mw_parts));
    WModel m = verify_w_model(p);
    json j = json::parse(w_model_json(m));
    std::ostringstream human;
    human << "model W_" << p.g() << " verified: degree " << p.d() << ", "
          << m.expected.components << " component(s), total crossings "
          << m.expected.total_cr << ", |w_lambda| " << m.expected.w_lambda_abs << "\n";
    emit(json_only, human.str(), j);
  });

  // ---- lines ----
  std::string lines_file, lines_out;
  int lines_random = 0;
  unsigned lines_seed = 12345;
  bool lines_with_inf = false;
  auto* lines_cmd = app.add_subcommand(
      "lines", "standardize a pairwise +1 linked line configuration with a certified isotopy");
  lines_cmd->add_option("--file", lines_file, "input configuration (P x y z D dx dy dz / INF a b c)");
  lines_cmd->add_option("--random", lines_random, "generate this many random lines instead");
  lines_cmd->add_option("--seed", lines_seed, "seed for --random");
  lines_cmd->add_flag("--with-infinity", lines_with_inf, "include a line at infinity");
  lines_cmd->add_option("--out", lines_out, "also write the result object to this file");
  lines_cmd->add_flag("--json", json_only, "machine output only");
  lines_cmd->callback([&] {
    if (lines_file.empty() == (lines_random == 0))
      throw UsageError("lines: give exactly one of --file and --random");
    std::vector<ProjLine> cfg;
    if (!lines_file.empty()) {
      cfg = parse_lines_text(read_file(lines_file));
    } else {
      std::mt19937 rng(lines_seed);
      cfg = random_hopf_config(lines_random, rng, lines_with_inf);
    }
    IsotopyScript script = standardize(cfg);
    Certificate cert = verify_script(script);
    std::vector<ProjLine> final_lines = apply_script(script);
    json j{{"lines", (int)cfg.size()},
           {"input", to_lines_text(cfg)},
           {"script", json::parse(script_json(script))},
           {"certificate", json::parse(certificate_json(cert))},
           {"final", to_lines_text(final_lines)}};
    if (!lines_file.empty()) j["source"] = lines_file;
    else j["seed"] = lines_seed;
    if (!lines_out.empty()) write_file(lines_out, j.dump(2) + "\n");
    std::ostringstream human;
    human << "standardized " << cfg.size() << " line(s) in " << script.stages.size()
          << " stage(s); certificate has " << cert.entries.size()
          << " pair check(s), every root count zero\n";
    emit(json_only, human.str(), j);
  });

  // ---- tangent ----
  int tng_degree = 0, tng_samples = 2048;
  double tng_phi = 0.0;
  std::string tng_pencil = "lprime", tng_format = "csv", tng_out;
  bool tng_knot = false;
  auto* tng_cmd = app.add_subcommand("tangent", "tangent-surface sections and knot plots");
  tng_cmd->add_option("--degree", tng_degree, "curve degree, at least 3")->required();
  tng_cmd->add_option("--pencil", tng_pencil, "pencil axis: lprime | l");
  tng_cmd->add_option("--phi", tng_phi, "pencil angle");
  tng_cmd->add_option("--samples", tng_samples, "sample count");
  tng_cmd->add_option("--format", tng_format, "csv | svg");
  tng_cmd->add_option("--out", tng_out, "write the document here instead of stdout");
  tng_cmd->add_flag("--knot", tng_knot, "emit the knot's chart image instead of a section");
  tng_cmd->add_flag("--json", json_only, "machine output only");
  tng_cmd->callback([&] {
    if (tng_format != "csv" && tng_format != "svg")
      throw UsageError("tangent: --format must be csv or svg");
    if (tng_pencil != "lprime" && tng_pencil != "l")
      throw UsageError("tangent: --pencil must be lprime or l");
    std::string doc;
    json j;
    if (tng_knot) {
      CurveSample s = mw_knot_sample(tng_degree, tng_samples);
      doc = tng_format == "csv" ? emit_csv(s) : emit_svg(s);
      j = {{"kind", "knot-chart"}, {"degree", tng_degree}, {"samples", tng_samples},
           {"format", tng_format}};
    } else {
      Pencil p = tng_pencil == "lprime" ? Pencil::ThroughLPrime : Pencil::ThroughL;
      SectionCurve c = section(tng_degree, p, tng_phi, tng_samples);
      doc = tng_format == "csv" ? emit_csv(c) : emit_svg(c);
      j = json::parse(section_json(c));
      j["format"] = tng_format;
    }
    if (tng_out.empty()) {
      std::cout << doc;
      return;
    }
    write_file(tng_out, doc);
    j["out"] = tng_out;
    std::ostringstream human;
    human << "wrote " << tng_format << " to " << tng_out;
    if (!tng_knot) human << " (" << j["cusp_count"] << " cusps detected)";
    human << "\n";
    emit(json_only, human.str(), j);
  });

  // ---- check-a / check-b ----
  std::string ca_file, ca_word, cb_file, cb_word;
  int ca_degree = 0, cb_degree = 0;
  auto* ca_cmd = app.add_subcommand("check-a", "certify a maximal permutation braid");
  ca_cmd->add_option("--braid", ca_file, "file containing the braid word");
  ca_cmd->add_option("--word", ca_word, "braid word given inline");
  ca_cmd->add_option("--degree", ca_degree, "degree d")->required();
  ca_cmd->add_flag("--json", json_only, "machine output only");
  ca_cmd->callback([&] {
    if (ca_file.empty() == ca_word.empty())
      throw UsageError("check-a: give exactly one of --braid and --word");
    std::string text = ca_file.empty() ? ca_word : trimmed(read_file(ca_file));
    CertificateA cert = check_a(parse_braid_text(text), ca_degree);
    std::ostringstream human;
    human << "certificate verified: conjugator carries the complement onto "
          << to_text(cert.target) << "\n";
    emit(json_only, human.str(), json::parse(certificate_json(cert)));
  });
  auto* cb_cmd = app.add_subcommand("check-b", "certify a half-twist multiple one degree down");
  cb_cmd->add_option("--braid", cb_file, "file containing the braid word");
  cb_cmd->add_option("--word", cb_word, "braid word given inline");
  cb_cmd->add_option("--degree", cb_degree, "degree d")->required();
  cb_cmd->add_flag("--json", json_only, "machine output only");
  cb_cmd->callback([&] {
    if (cb_file.empty() == cb_word.empty())
      throw UsageError("check-b: give exactly one of --braid and --word");
    std::string text = cb_file.empty() ? cb_word : trimmed(read_file(cb_file));
    CertificateB cert = check_b(parse_braid_text(text), cb_degree);
    std::ostringstream human;
    human << "certificate verified: quotient conjugate to " << to_text(cert.target) << "\n";
    emit(json_only, human.str(), json::parse(certificate_json(cert)));
  });

  // ---- selftest ----
  auto* st_cmd = app.add_subcommand("selftest", "run the full acceptance suite (fixed seeds)");
  st_cmd->add_flag("--json", json_only, "machine output only");
  st_cmd->callback([&] {
    std::vector<CriterionResult> results = run_acceptance();
    emit(json_only, acceptance_report(results), json::parse(acceptance_json(results)));
    exit_rc = all_passed(results) ? 0 : 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const UsageError& e) {
    std::cerr << json{{"error", "UsageError"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << json{{"error", e.code()}, {"message", e.what()}}.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "InternalError"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
  return exit_rc;
}
