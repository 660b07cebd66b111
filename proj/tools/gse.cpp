// Command-line front end: operator dumps, mechanical verification of the
// fault-detection propositions, the resource/threshold tables, and the
// Monte-Carlo error-injection runs.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "gse/analysis.hpp"
#include "gse/encoding.hpp"
#include "gse/faults.hpp"
#include "gse/gadgets.hpp"
#include "json.hpp"

using namespace gse;
using nlohmann::json;

namespace {

struct RunConfig {
  int rows = 4, cols = 4;
  std::string topology = "planar";
  std::string connectivity = "both";
  std::string which = "cost";
  std::string format = "markdown";
  std::string output = "-";
  double s = 0.99999;
  long trials = 200000;
  uint64_t seed = 7;
  int threads = 4;
  bool native = true;
  bool bj_flips_detect = false;
  std::string swap_accounting = "unit";
  std::string faults_out;
};

Encoding make_encoding(const RunConfig& cfg) {
  if (cfg.topology == "planar")
    return Encoding::build(InteractionGraph::planar(cfg.rows, cfg.cols));
  if (cfg.topology == "torus") return Encoding::build(InteractionGraph::torus(cfg.rows, cfg.cols));
  throw CLI::ValidationError("topology must be planar or torus");
}

// Applies key=value lines to options the command line left untouched.
void apply_config_file(CLI::App* sub, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot read " + path);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t"));
      s.erase(s.find_last_not_of(" \t") + 1);
      return s;
    };
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key.empty() || key == "config") continue;
    CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (!opt) throw CLI::ValidationError("--config", "unknown key '" + key + "'");
    if (opt->count() > 0) continue;  // command-line flags win
    opt->add_result(value);
    opt->run_callback();
  }
}

// Output stream honoring --output and GSE_OUTPUT_DIR.
struct Sink {
  std::unique_ptr<std::ofstream> file;
  std::ostream* os = &std::cout;
  explicit Sink(const std::string& target) {
    if (target == "-") return;
    std::string path = target;
    const char* dir = std::getenv("GSE_OUTPUT_DIR");
    if (dir && *dir && path.find('/') == std::string::npos)
      path = std::string(dir) + "/" + path;
    file = std::make_unique<std::ofstream>(path);
    if (!*file) throw std::runtime_error("cannot open output file: " + path);
    os = file.get();
  }
  std::ostream& out() { return *os; }
};

int cmd_encode(const RunConfig& cfg) {
  Encoding enc = make_encoding(cfg);
  Sink sink(cfg.output);
  if (cfg.format == "json") {
    json j = enc.operators_json();
    j["graph"] = enc.graph().to_json();
    sink.out() << j.dump(2) << '\n';
    return 0;
  }
  json ops = enc.operators_json();
  for (const auto& e : ops["edge_operators"])
    sink.out() << fmt::format("A {} {} {} {}\n", e["j"].get<int>(), e["k"].get<int>(),
                              e["kind"].get<std::string>(), e["label"].get<std::string>());
  for (const auto& v : ops["vertex_operators"])
    sink.out() << fmt::format("B {} {}\n", v["vertex"].get<int>(),
                              v["label"].get<std::string>());
  for (const auto& l : ops["loop_operators"])
    sink.out() << fmt::format("L {} {} {}\n", l["kind"].get<std::string>(),
                              l["index"].get<int>(), l["label"].get<std::string>());
  return 0;
}

struct GadgetResult {
  std::string name;
  FaultSummary summary;
  bool skipped = false;
};

// One JSON line per injected fault: location, residual, flips, verdict.
void dump_fault_lines(std::ostream& os, const Circuit& c, const EnumerationResult& res) {
  for (const FaultOutcome& o : res.outcomes) {
    json j = {{"gadget", c.name},
              {"gate", o.event.gate_index},
              {"position", o.event.before ? "before" : "after"},
              {"qubit", o.event.qubit},
              {"pauli", std::string(1, pauli_char(o.event.pauli))},
              {"swap_qq", o.event.swap_qq},
              {"residual", o.residual_data.str()},
              {"flips", o.ancilla_flips},
              {"time_reversal", o.time_reversal},
              {"verdict", verdict_name(o.verdict)}};
    os << j.dump() << '\n';
  }
}

std::vector<GadgetResult> run_all_gadgets(const Encoding& enc, Connectivity conn, bool native,
                                          std::ostream* fault_lines) {
  std::vector<GadgetResult> out;
  auto run = [&](const Circuit& c) {
    EnumerationResult res = enumerate_single_faults(c, enc);
    if (fault_lines) dump_fault_lines(*fault_lines, c, res);
    out.push_back({c.name, res.summary, false});
  };
  for (int li = 0; li < enc.n_loops(); ++li) run(syndrome_measurement_circuit(enc, li, conn));
  for (int v = 0; v < enc.graph().n_vertices(); ++v) run(bj_measurement_circuit(enc, v, conn));
  for (const TermSpec& t : hva_terms(enc)) {
    EvolutionPlan plan = plan_protected_evolution(enc, t, native);
    if (conn == Connectivity::reduced && !native) continue;  // reduced gadgets are native
    if (conn == Connectivity::reduced && plan.flag_second) {
      // Flag qubits have no reduced-connectivity realization; the full-
      // connectivity run still covers the plan.
      out.push_back({"evolve-" + plan.label + "-reduced", {}, true});
      continue;
    }
    run(evolution_circuit(enc, plan, conn));
  }
  return out;
}

int cmd_verify(const RunConfig& cfg) {
  Encoding enc = make_encoding(cfg);
  Sink sink(cfg.output);
  std::unique_ptr<Sink> fault_sink;
  if (!cfg.faults_out.empty()) fault_sink = std::make_unique<Sink>(cfg.faults_out);
  json report;
  report["lattice"] = {{"rows", cfg.rows}, {"cols", cfg.cols}, {"topology", cfg.topology}};
  report["native_two_qubit"] = cfg.native;

  DistanceReport dist = enc.verify_detection_distance();
  report["detection_distance"] = {{"checked", dist.checked}, {"violations", dist.violations}};

  bool fail = !dist.ok();
  int exceptions = 0;
  json gadgets = json::array();
  std::vector<Connectivity> conns;
  if (cfg.connectivity == "both" || cfg.connectivity == "full") conns.push_back(Connectivity::full);
  if (cfg.connectivity == "both" || cfg.connectivity == "reduced")
    conns.push_back(Connectivity::reduced);
  for (Connectivity conn : conns) {
    for (const auto& g : run_all_gadgets(enc, conn, cfg.native,
                                         fault_sink ? &fault_sink->out() : nullptr)) {
      if (g.skipped) {
        gadgets.push_back({{"gadget", g.name}, {"skipped", "flag qubit needs full connectivity"}});
        continue;
      }
      int undet = g.summary.count(Verdict::undetectable_logical);
      int exc = g.summary.count(Verdict::evolved_operator_exception);
      fail |= (undet != 0);
      exceptions += exc;
      json jg = {{"gadget", g.name},
                 {"faults", g.summary.total},
                 {"undetectable_logical", undet},
                 {"evolved_operator_exception", exc}};
      if (exc > 0) {
        json sites = json::array();
        for (const auto& ev : g.summary.exception_events)
          sites.push_back({{"gate", ev.gate_index},
                           {"qubit", ev.qubit},
                           {"pauli", std::string(1, pauli_char(ev.pauli))}});
        jg["exception_sites"] = sites;
      }
      gadgets.push_back(jg);
    }
  }
  report["gadgets"] = gadgets;
  report["verdict"] = fail                  ? "FAIL"
                      : (exceptions > 0)    ? "PASS-with-exceptions"
                                            : "PASS";
  sink.out() << report.dump(2) << '\n';
  return fail ? 1 : 0;
}

std::string fraction(int m) {
  int d = 3 * m * m;
  return fmt::format("{}/{}", d - 1, d);
}

int cmd_tables(const RunConfig& cfg) {
  Sink sink(cfg.output);
  std::ostream& os = sink.out();
  const std::vector<std::pair<int, int>> sizes = {{4, 4}, {8, 8}, {16, 16}};
  const bool md = cfg.format == "markdown";
  auto sep = [&] { return md ? " | " : ","; };

  if (cfg.which == "cost") {
    if (md)
      os << "| m | n | zero gates | zero depth | ansatz gates | ansatz depth | vqe gates | vqe "
            "depth | detected gates | detected depth | ansatz built | ansatz 79mn-39(m+n-1) | "
            "ansatz mn+39E |\n|---|---|---|---|---|---|---|---|---|---|---|---|---|\n";
    else
      os << "m,n,zero_gates,zero_depth,ansatz_gates,ansatz_depth,vqe_gates,vqe_depth,"
            "detected_gates,detected_depth,ansatz_built,ansatz_formula,ansatz_sum\n";
    for (auto [m, n] : sizes) {
      auto r = analysis::cost_table(m, n, m <= 16);
      if (md) os << "| ";
      os << r.m << sep() << r.n << sep() << r.zero_gates << sep() << r.zero_depth << sep()
         << r.ansatz_gates_table << sep() << r.ansatz_depth << sep() << r.vqe_gates << sep()
         << r.vqe_depth << sep() << r.ed_gates << sep() << r.ed_depth << sep()
         << r.ansatz_gates_built << sep() << r.ansatz_gates_formula << sep() << r.ansatz_gates_sum;
      os << (md ? " |\n" : "\n");
    }
    os << (md ? "\n" : "");
    os << (md ? "Notes: zero-state depth 10 counts ancilla preparation and readout; the "
                "two-qubit layers alone meet the depth-8 bound. Three ansatz gate "
                "accountings are reported side by side; the totals use the "
                "table-consistent 13(mn+3E) value.\n"
              : "");
    return 0;
  }
  if (cfg.which == "thresholds") {
    if (md)
      os << "| m | n | threshold s | p_g at threshold | p_g | p_d | p_g^ed |\n"
            "|---|---|---|---|---|---|---|\n";
    else
      os << "m,n,threshold_s,p_g_at_threshold,p_g,p_d,p_g_ed\n";
    for (auto [m, n] : sizes) {
      auto r = analysis::success_probability_row(m, n);
      if (md) os << "| ";
      os << r.m << sep() << r.n << sep() << fmt::format("{:.6f}", r.threshold_s) << sep()
         << fmt::format("{:.6f}", r.p_g_at_threshold) << sep() << fmt::format("{:.6f}", r.pg)
         << sep() << fmt::format("{:.6f}", r.pd) << sep() << fmt::format("{:.6f}", r.pged);
      os << (md ? " |\n" : "\n");
    }
    return 0;
  }
  if (cfg.which == "optimistic") {
    if (md)
      os << "| m | n | p_a | improvement s | p_g | required s (0.95) | p_g |\n"
            "|---|---|---|---|---|---|---|\n";
    else
      os << "m,n,p_a,improvement_s,p_g_at_improvement,required_s,p_g_at_required\n";
    for (auto [m, n] : sizes) {
      auto r = analysis::optimistic_row(m, n);
      if (md) os << "| ";
      os << r.m << sep() << r.n << sep() << fraction(m) << sep()
         << fmt::format("{:.6f}", r.improvement_s) << sep()
         << fmt::format("{:.6g}", r.p_g_at_improvement) << sep()
         << fmt::format("{:.6f}", r.required_s) << sep()
         << fmt::format("{:.6f}", r.p_g_at_required);
      os << (md ? " |\n" : "\n");
    }
    return 0;
  }
  if (cfg.which == "budget") {
    if (md)
      os << "| m | n | p_a | d | s | d_b |\n|---|---|---|---|---|---|\n";
    else
      os << "m,n,p_a,d,s,d_b\n";
    for (auto [m, n] : sizes)
      for (const auto& r : analysis::budget_rows(m, n)) {
        if (md) os << "| ";
        os << r.m << sep() << r.n << sep() << fraction(m) << sep() << r.d << sep()
           << fmt::format("{:g}", r.s) << sep() << r.d_b;
        os << (md ? " |\n" : "\n");
      }
    return 0;
  }
  throw CLI::ValidationError("--which must be cost, thresholds, optimistic, or budget");
}

int cmd_montecarlo(const RunConfig& cfg) {
  Encoding enc = make_encoding(cfg);
  Connectivity conn =
      cfg.connectivity == "full" ? Connectivity::full : Connectivity::reduced;
  Circuit circ = error_detected_vqe_circuit(enc, conn);
  MonteCarloOptions opts;
  opts.bj_flips_detect = cfg.bj_flips_detect;
  opts.threads = cfg.threads;
  opts.result_measurements = circ.result_measurements;
  DetectionStats st = monte_carlo(circ, enc, cfg.s, cfg.trials, cfg.seed, opts);
  int swap_cost = cfg.swap_accounting == "expanded" ? 3 : 1;
  Resources res = circ.count_resources(swap_cost);
  // Faults are injected per two-qubit gate, so the clean-run prediction always
  // uses the unit-swap count even when swaps are priced as three CNOTs.
  double expect_clean =
      analysis::p_g(double(circ.count_resources(1).two_qubit_gates), cfg.s);

  Sink sink(cfg.output);
  if (cfg.format == "json") {
    json j = {{"trials", st.trials},
              {"detected", st.detected},
              {"undetected_correct", st.undetected_correct},
              {"undetected_faulty", st.undetected_faulty},
              {"fault_trials", st.fault_trials},
              {"two_qubit_gates", res.two_qubit_gates},
              {"no_fault_fraction", st.no_fault_fraction()},
              {"expected_no_fault", expect_clean},
              {"detected_given_faulty", st.detected_given_faulty()},
              {"detected_given_injection", st.detected_given_injection()},
              {"p_a_estimate", analysis::p_a_estimate(cfg.rows)},
              {"seed", cfg.seed},
              {"s", cfg.s}};
    sink.out() << j.dump(2) << '\n';
  } else {
    std::ostream& os = sink.out();
    os << "trials,detected,undetected_correct,undetected_faulty,fault_trials,two_qubit_gates,"
          "no_fault_fraction,expected_no_fault,detected_given_faulty,detected_given_injection,p_a_estimate\n";
    os << fmt::format("{},{},{},{},{},{},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f}\n", st.trials,
                      st.detected, st.undetected_correct, st.undetected_faulty, st.fault_trials,
                      res.two_qubit_gates, st.no_fault_fraction(), expect_clean,
                      st.detected_given_faulty(), st.detected_given_injection(),
                      analysis::p_a_estimate(cfg.rows));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized superfast encoding of the spinless Hubbard model: "
               "operators, fault-detecting gadgets, verification, and resource tables"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path;
  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "read key=value defaults from a file");
  };
  auto add_lattice = [&](CLI::App* sub) {
    sub->add_option("--rows", cfg.rows, "lattice rows");
    sub->add_option("--cols", cfg.cols, "lattice columns");
    sub->add_option("--topology", cfg.topology, "planar or torus");
  };
  auto add_io = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "output format");
    sub->add_option("--output", cfg.output, "output file, - for stdout");
  };

  CLI::App* enc = app.add_subcommand("encode", "dump all encoded operators");
  add_config(enc);
  add_lattice(enc);
  add_io(enc);

  CLI::App* ver = app.add_subcommand("verify", "exhaustive single-fault verification");
  add_config(ver);
  add_lattice(ver);
  add_io(ver);
  ver->add_option("--connectivity", cfg.connectivity, "full, reduced, or both");
  ver->add_option("--faults-out", cfg.faults_out, "write every fault outcome as JSON lines");
  ver->add_flag("--native,!--no-native", cfg.native, "native two-qubit evolution gates");

  CLI::App* tab = app.add_subcommand("tables", "emit the resource and threshold tables");
  add_config(tab);
  tab->add_option("--which", cfg.which, "cost, thresholds, optimistic, or budget");
  add_io(tab);

  CLI::App* mc = app.add_subcommand("montecarlo", "Monte-Carlo error injection");
  add_config(mc);
  add_lattice(mc);
  add_io(mc);
  mc->add_option("--s", cfg.s, "per-qubit-per-gate success probability");
  mc->add_option("--trials", cfg.trials, "number of trials");
  mc->add_option("--seed", cfg.seed, "RNG seed");
  mc->add_option("--threads", cfg.threads, "worker threads");
  mc->add_option("--connectivity", cfg.connectivity, "full or reduced");
  mc->add_flag("--bj-flips-detect", cfg.bj_flips_detect,
               "count flipped B_j readouts as detections");
  mc->add_option("--swap-accounting", cfg.swap_accounting, "unit or expanded");

  try {
    app.parse(argc, argv);
    if (!config_path.empty())
      for (CLI::App* sub : app.get_subcommands()) apply_config_file(sub, config_path);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (enc->parsed()) return cmd_encode(cfg);
    if (ver->parsed()) return cmd_verify(cfg);
    if (tab->parsed()) return cmd_tables(cfg);
    if (mc->parsed()) return cmd_montecarlo(cfg);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
