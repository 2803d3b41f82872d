#include "urnlab/cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "urnlab/chain.hpp"
#include "urnlab/drift.hpp"
#include "urnlab/errors.hpp"
#include "urnlab/ode.hpp"
#include "urnlab/sim.hpp"
#include "urnlab/synth.hpp"
#include "urnlab/version.hpp"

namespace urnlab::cli {

namespace {

using nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

ordered_json root_json(const AlgebraicNumber& a) {
  return ordered_json{{"interval_lo", fraction_string(a.lower())},
                      {"interval_hi", fraction_string(a.upper())},
                      {"approx", round_sig15(a.to_double())}};
}

ordered_json alpha_json(const AlgebraicNumber& a) {
  ordered_json j = root_json(a);
  j["rational"] = a.is_rational() ? ordered_json(fraction_string(*a.exact())) : ordered_json(nullptr);
  return j;
}

ordered_json rule_json(const Rule& r) {
  ordered_json j;
  to_json(j, r);
  return j;
}

struct Sink {
  std::ostream& out;
  std::string out_path;  // empty: stdout

  void write(const std::string& payload) const {
    if (out_path.empty()) {
      out << payload;
      return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw Error("cannot open output file: " + out_path);
    file << payload;
  }
};

// Runs the command body, wraps the result in the output envelope and maps
// domain errors to exit code 1 with a machine-readable error payload.
int finish(const Sink& sink, const std::string& command, const ordered_json& inputs,
           const std::function<ordered_json()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  ordered_json envelope{{"tool_version", kVersion}, {"command", command}, {"inputs", inputs}};
  int code = 0;
  try {
    envelope["results"] = body();
  } catch (const MultipleRecurrentClassesError& e) {
    envelope["error"] =
        ordered_json{{"message", e.what()}, {"recurrent_classes", e.recurrent_classes}};
    code = 1;
  } catch (const SynthesisFailure& e) {
    ordered_json err{{"message", e.what()}};
    if (e.best) {
      err["best"] = ordered_json{{"rule", rule_json(e.best->rule)},
                                 {"alpha", alpha_json(e.best->alpha)},
                                 {"target", fraction_string(e.best->target)},
                                 {"achieved_error", fraction_string(e.best->achieved_error)},
                                 {"achieved_error_approx", round_sig15(to_double(e.best->achieved_error))},
                                 {"lemma_bound", round_sig15(e.best->lemma_bound)}};
    }
    envelope["error"] = std::move(err);
    code = 1;
  } catch (const Error& e) {
    envelope["error"] = ordered_json{{"message", e.what()}};
    code = 1;
  }
  const auto elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
  envelope["timing_ms"] = elapsed.count();
  sink.write(envelope.dump(2) + "\n");
  return code;
}

// Raw CSV output path: no envelope; domain errors go to stderr.
int finish_csv(const Sink& sink, std::ostream& err, const std::function<std::string()>& body) {
  try {
    sink.write(body());
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

std::string sim_csv(const std::vector<Trajectory>& trajectories, int64_t n) {
  std::ostringstream csv;
  const bool with_run = trajectories.size() > 1;
  csv << (with_run ? "run,step,count,proportion\n" : "step,count,proportion\n");
  for (size_t j = 0; j < trajectories.size(); ++j) {
    for (const auto& [step, count] : trajectories[j].samples) {
      if (with_run) csv << j << ",";
      csv << step << "," << count << ","
          << format_double(static_cast<double>(count) / static_cast<double>(n)) << "\n";
    }
  }
  return csv.str();
}

ordered_json sim_json(const std::vector<Trajectory>& trajectories, int64_t n) {
  ordered_json runs = ordered_json::array();
  for (size_t j = 0; j < trajectories.size(); ++j) {
    const auto& traj = trajectories[j];
    ordered_json samples = ordered_json::array();
    for (const auto& [step, count] : traj.samples)
      samples.push_back(ordered_json::array(
          {step, count, round_sig15(static_cast<double>(count) / static_cast<double>(n))}));
    runs.push_back(ordered_json{
        {"run", j},
        {"record_stride", traj.record_stride},
        {"samples", std::move(samples)},
        {"endpoint_count", traj.endpoint},
        {"endpoint_proportion",
         round_sig15(static_cast<double>(traj.endpoint) / static_cast<double>(n))}});
  }
  return ordered_json{{"n", n}, {"trajectories", std::move(runs)}};
}

ordered_json catalog_entry_json(const CatalogEntry& entry) {
  ordered_json rules = ordered_json::array();
  for (const auto& r : entry.rules) rules.push_back(rule_json(r));
  return ordered_json{
      {"rule", rule_json(entry.rules.front())},
      {"rules", std::move(rules)},
      {"alpha_interval", ordered_json::array({fraction_string(entry.alpha.lower()),
                                              fraction_string(entry.alpha.upper())})},
      {"alpha_approx", round_sig15(entry.alpha.to_double())},
      {"rational", entry.rational ? ordered_json(fraction_string(*entry.rational))
                                  : ordered_json(nullptr)}};
}

ordered_json violations_json(const std::vector<RationalRootViolation>& violations) {
  ordered_json out = ordered_json::array();
  for (const auto& v : violations)
    out.push_back(ordered_json{{"rule", rule_json(v.rule)}, {"root", fraction_string(v.root)}});
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"urnlab: analysis, simulation and synthesis of two-color urn protocols (k, E)"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();  // lets --out appear after the subcommand as well

  std::string out_path;
  app.add_option("--out", out_path, "write the output payload to this file instead of stdout")
      ->capture_default_str();

  // analyze
  auto* analyze = app.add_subcommand(
      "analyze", "drift polynomial, roots in [0,1] and the computed number of a rule");
  std::string analyze_rule;
  analyze->add_option("--rule", analyze_rule, "rule as k:i1,i2,... (k: for the empty set)")
      ->required();

  // simulate
  auto* simulate = app.add_subcommand("simulate", "seeded Monte Carlo runs of the urn chain");
  std::string sim_rule;
  int64_t sim_n = 0;
  uint64_t sim_steps = 0, sim_seed = 0, sim_runs = 1, sim_stride = 0;
  std::string sim_initial = "random-half";
  std::string sim_format = "json";
  simulate->add_option("--rule", sim_rule)->required();
  simulate->add_option("--n", sim_n, "population size")->required();
  simulate->add_option("--steps", sim_steps, "number of steps")->required();
  simulate->add_option("--seed", sim_seed, "RNG seed")->capture_default_str();
  simulate->add_option("--runs", sim_runs, "independent runs")->capture_default_str();
  simulate->add_option("--record-stride", sim_stride, "sample every this many steps (0 = auto)")
      ->capture_default_str();
  simulate->add_option("--initial", sim_initial, "random-half or m=<count>")
      ->capture_default_str();
  simulate->add_option("--format", sim_format, "csv or json")->capture_default_str();

  // stationary
  auto* stat = app.add_subcommand("stationary", "exact invariant measure of the finite chain");
  std::string stat_rule;
  int stat_n = 0;
  bool stat_distribution = false;
  stat->add_option("--rule", stat_rule)->required();
  stat->add_option("--n", stat_n, "population size")->required();
  stat->add_flag("--distribution", stat_distribution, "include the full distribution");

  // ode
  auto* ode = app.add_subcommand("ode", "integrate the mean-field ODE x' = b(x)");
  std::string ode_rule;
  double ode_x0 = 0.5, ode_t_end = 50.0, ode_tol = 1e-10;
  std::string ode_format = "csv";
  ode->add_option("--rule", ode_rule)->required();
  ode->add_option("--x0", ode_x0, "initial proportion")->capture_default_str();
  ode->add_option("--t-end", ode_t_end, "integration horizon")->capture_default_str();
  ode->add_option("--tol", ode_tol, "local error tolerance")->capture_default_str();
  ode->add_option("--format", ode_format, "csv or json")->capture_default_str();

  // flow
  auto* flow = app.add_subcommand("flow", "sample the drift b on a grid (for flow overlays)");
  std::string flow_rule;
  int flow_points = 513;
  std::string flow_format = "csv";
  flow->add_option("--rule", flow_rule)->required();
  flow->add_option("--points", flow_points, "grid points on [0,1]")->capture_default_str();
  flow->add_option("--format", flow_format, "csv or json")->capture_default_str();

  // synthesize
  auto* synth = app.add_subcommand("synthesize", "search a residue rule computing a/b within epsilon");
  std::string synth_target, synth_epsilon;
  int synth_k_max = 60;
  synth->add_option("--target", synth_target, "target fraction a/b in lowest terms")->required();
  synth->add_option("--epsilon", synth_epsilon, "tolerance as an exact fraction")->required();
  synth->add_option("--k-max", synth_k_max, "largest k to try")->capture_default_str();

  // verify
  auto* verify = app.add_subcommand(
      "verify", "exhaustive rational-root scan over all rules with k <= k-max");
  int verify_k_max = 6, verify_q_max = 20;
  verify->add_option("--k-max", verify_k_max)->capture_default_str();
  verify->add_option("--q-max", verify_q_max, "largest reduced denominator to test")
      ->capture_default_str();

  // search
  auto* search = app.add_subcommand("search", "catalog of computed numbers over all rules with k <= k-max");
  int search_k_max = 5, search_q_max = 0;
  search->add_option("--k-max", search_k_max)->capture_default_str();
  search->add_option("--q-max", search_q_max, "also scan rational roots up to this denominator")
      ->capture_default_str();

  std::vector<std::string> argv_storage = args;
  std::vector<const char*> argv;
  argv.push_back("urnlab");
  for (const auto& a : argv_storage) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion& e) {
    out << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  const Sink sink{out, out_path};

  try {
    if (analyze->parsed()) {
      const ordered_json inputs{{"rule", analyze_rule}};
      return finish(sink, "analyze", inputs, [&] {
        const Rule rule = parse_rule(analyze_rule);
        const RationalPolynomial b = drift_polynomial(rule);
        ordered_json coefficients = ordered_json::array();
        if (b.is_zero()) {
          coefficients.push_back("0");
        } else {
          for (const auto& c : b.coefficients()) coefficients.push_back(fraction_string(c));
        }
        ordered_json roots = ordered_json::array();
        if (!b.is_zero())
          for (const auto& root : roots_in_unit_interval(b)) roots.push_back(root_json(root));
        return ordered_json{{"rule", rule_json(rule)},
                            {"b_coefficients", std::move(coefficients)},
                            {"roots", std::move(roots)},
                            {"alpha", alpha_json(computed_number(rule))},
                            {"b_at_half_sign", sgn(b.eval(Rational(1, 2)))}};
      });
    }

    if (simulate->parsed()) {
      const ordered_json inputs{{"rule", sim_rule},     {"n", sim_n},
                                {"steps", sim_steps},   {"seed", sim_seed},
                                {"runs", sim_runs},     {"record_stride", sim_stride},
                                {"initial", sim_initial}, {"format", sim_format}};
      auto make_config = [&] {
        SimConfig cfg;
        cfg.rule = parse_rule(sim_rule);
        cfg.n = sim_n;
        cfg.steps = sim_steps;
        cfg.seed = sim_seed;
        cfg.record_stride = sim_stride;
        if (sim_initial != "random-half") {
          if (sim_initial.rfind("m=", 0) != 0)
            throw ValidationError("--initial must be random-half or m=<count>");
          cfg.initial_count = std::stoll(sim_initial.substr(2));
        }
        return cfg;
      };
      if (sim_format == "csv")
        return finish_csv(sink, err, [&] { return sim_csv(run_batch(make_config(), sim_runs), sim_n); });
      if (sim_format != "json") {
        err << "usage error: --format must be csv or json\n";
        return 2;
      }
      return finish(sink, "simulate", inputs,
                    [&] { return sim_json(run_batch(make_config(), sim_runs), sim_n); });
    }

    if (stat->parsed()) {
      const ordered_json inputs{{"rule", stat_rule}, {"n", stat_n}, {"distribution", stat_distribution}};
      return finish(sink, "stationary", inputs, [&] {
        const Rule rule = parse_rule(stat_rule);
        const StationaryResult result = stationary(transition_kernel(rule, stat_n));
        ordered_json j{{"rule", rule_json(rule)},
                       {"n", stat_n},
                       {"mean", fraction_string(result.mean)},
                       {"mean_approx", round_sig15(to_double(result.mean))}};
        if (stat_distribution) {
          ordered_json dist = ordered_json::array();
          for (const auto& p : result.distribution) dist.push_back(fraction_string(p));
          j["distribution"] = std::move(dist);
        }
        return j;
      });
    }

    if (ode->parsed()) {
      const ordered_json inputs{{"rule", ode_rule},
                                {"x0", round_sig15(ode_x0)},
                                {"t_end", round_sig15(ode_t_end)},
                                {"tol", round_sig15(ode_tol)},
                                {"format", ode_format}};
      auto compute = [&] { return integrate(parse_rule(ode_rule), ode_x0, ode_t_end, ode_tol); };
      if (ode_format == "csv") {
        return finish_csv(sink, err, [&] {
          std::ostringstream csv;
          csv << "t,x\n";
          for (const auto& [t, x] : compute().samples)
            csv << format_double(t) << "," << format_double(x) << "\n";
          return csv.str();
        });
      }
      if (ode_format != "json") {
        err << "usage error: --format must be csv or json\n";
        return 2;
      }
      return finish(sink, "ode", inputs, [&] {
        const OdeTrajectory traj = compute();
        ordered_json samples = ordered_json::array();
        for (const auto& [t, x] : traj.samples)
          samples.push_back(ordered_json::array({round_sig15(t), round_sig15(x)}));
        return ordered_json{{"samples", std::move(samples)}, {"limit", alpha_json(traj.limit)}};
      });
    }

    if (flow->parsed()) {
      const ordered_json inputs{{"rule", flow_rule}, {"points", flow_points}, {"format", flow_format}};
      auto compute = [&] {
        if (flow_points < 2) throw ValidationError("flow: --points must be >= 2");
        const RationalPolynomial b = drift_polynomial(parse_rule(flow_rule));
        std::vector<std::pair<double, double>> grid;
        grid.reserve(static_cast<size_t>(flow_points));
        for (int i = 0; i < flow_points; ++i) {
          const double x = static_cast<double>(i) / static_cast<double>(flow_points - 1);
          grid.emplace_back(x, b.eval_double(x));
        }
        return grid;
      };
      if (flow_format == "csv") {
        return finish_csv(sink, err, [&] {
          std::ostringstream csv;
          csv << "x,b\n";
          for (const auto& [x, bx] : compute())
            csv << format_double(x) << "," << format_double(bx) << "\n";
          return csv.str();
        });
      }
      if (flow_format != "json") {
        err << "usage error: --format must be csv or json\n";
        return 2;
      }
      return finish(sink, "flow", inputs, [&] {
        ordered_json samples = ordered_json::array();
        for (const auto& [x, bx] : compute())
          samples.push_back(ordered_json::array({round_sig15(x), round_sig15(bx)}));
        return ordered_json{{"samples", std::move(samples)}};
      });
    }

    if (synth->parsed()) {
      const ordered_json inputs{{"target", synth_target},
                                {"epsilon", synth_epsilon},
                                {"k_max", synth_k_max}};
      return finish(sink, "synthesize", inputs, [&] {
        const Rational target = parse_fraction(synth_target);
        if (target <= 0 || target >= 1)
          throw ValidationError("synthesize: target must lie strictly inside (0, 1)");
        if (!target.get_num().fits_sint_p() || !target.get_den().fits_sint_p())
          throw ValidationError("synthesize: target fraction too large");
        const SynthesisResult result =
            synthesize(static_cast<int>(target.get_num().get_si()),
                       static_cast<int>(target.get_den().get_si()),
                       parse_fraction(synth_epsilon), synth_k_max);
        return ordered_json{{"rule", rule_json(result.rule)},
                            {"k", result.rule.k},
                            {"alpha", alpha_json(result.alpha)},
                            {"target", fraction_string(result.target)},
                            {"achieved_error", fraction_string(result.achieved_error)},
                            {"achieved_error_approx", round_sig15(to_double(result.achieved_error))},
                            {"lemma_bound", round_sig15(result.lemma_bound)}};
      });
    }

    if (verify->parsed()) {
      const ordered_json inputs{{"k_max", verify_k_max}, {"q_max", verify_q_max}};
      return finish(sink, "verify", inputs, [&] {
        const SearchReport report = exhaustive_search(verify_k_max, verify_q_max);
        uint64_t rules_checked = 0;
        for (int k = 1; k <= verify_k_max; ++k) rules_checked += uint64_t{1} << (k + 1);
        return ordered_json{{"rules_checked", rules_checked},
                            {"violations", violations_json(report.violations)}};
      });
    }

    if (search->parsed()) {
      const ordered_json inputs{{"k_max", search_k_max}, {"q_max", search_q_max}};
      return finish(sink, "search", inputs, [&] {
        const SearchReport report = exhaustive_search(search_k_max, search_q_max);
        ordered_json catalog = ordered_json::array();
        for (const auto& entry : report.catalog) catalog.push_back(catalog_entry_json(entry));
        ordered_json j{{"catalog", std::move(catalog)}};
        if (search_q_max >= 4) j["violations"] = violations_json(report.violations);
        return j;
      });
    }
  } catch (const Error& e) {
    // Domain errors raised before a command-specific envelope could be built.
    err << "error: " << e.what() << "\n";
    return 1;
  }

  err << "usage error: no subcommand given\n";
  return 2;
}

}  // namespace urnlab::cli
