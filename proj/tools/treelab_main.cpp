// Command-line front end: symbolic tables and formulas, seeded simulators,
// and the acceptance suite. Every file output carries a JSON manifest with
// the full configuration so it can be reproduced exactly.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "treelab/coalescent.hpp"
#include "treelab/gen_table.hpp"
#include "treelab/moments.hpp"
#include "treelab/moran.hpp"
#include "treelab/rng.hpp"
#include "treelab/verify.hpp"

using nlohmann::json;
using namespace treelab;

namespace {

constexpr const char* kVersion = "1.0.0";

// Exact rational from a decimal or "p/q" literal.
BigRational parse_rational(const std::string& s) {
  auto dot = s.find('.');
  if (dot == std::string::npos) return rat_from_string(s);
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  std::string den = "1" + std::string(s.size() - dot - 1, '0');
  return rat_from_string(digits + "/" + den);
}

std::vector<double> parse_grid(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i] <= out[i - 1])
      throw CLI::ValidationError("--t-grid", "grid must be increasing");
  if (out.empty()) throw CLI::ValidationError("--t-grid", "grid is empty");
  return out;
}

struct Sink {
  std::string path;    // empty = stdout
  std::string format;  // csv | json
  std::ostringstream data;

  void finish(const json& manifest) {
    if (format == "json") {
      json doc;
      doc["manifest"] = manifest;
      doc["rows"] = json::parse(data.str());
      write(path, doc.dump(2) + "\n");
      return;
    }
    if (path.empty()) {
      std::cerr << "manifest: " << manifest.dump() << "\n";
      std::cout << data.str();
    } else {
      write(path, data.str());
      write(path + ".manifest.json", manifest.dump(2) + "\n");
    }
  }

  static void write(const std::string& p, const std::string& body) {
    if (p.empty()) {
      std::cout << body;
      return;
    }
    std::ofstream f(p);
    f << body;
    if (!f) throw std::runtime_error("cannot write output file: " + p);
  }
};

json base_manifest(const std::string& sub) {
  return json{{"tool", "treelab"}, {"version", kVersion}, {"subcommand", sub}};
}

json check_to_json(const CheckResult& r) {
  return json{{"name", r.name},
              {"estimate", r.estimate},
              {"target", r.target},
              {"tolerance", r.tolerance},
              {"standard_error", r.standard_error},
              {"n_samples", r.n_samples},
              {"seed", r.seed},
              {"pass", r.pass},
              {"note", r.note}};
}

int run_gen_table(const std::string& out_path) {
  std::ostringstream os;
  os << "generator action on the 36-element basis (derived vs reference, "
        "exact)\n";
  for (const auto& r : check_reference_table()) {
    os << (r.match ? "  ok  " : " DIFF ") << "item " << r.item << "  "
       << r.label << "\n        derived:   " << r.derived
       << "\n        reference: " << r.reference << "\n";
    if (!r.note.empty()) os << "        note: " << r.note << "\n";
  }
  os << "\n" << render_marked_block();
  Sink::write(out_path, os.str());
  return 0;
}

int run_moments(const std::string& formula, const std::string& lam,
                const std::string& th, const std::string& sv,
                const std::string& tv, const std::string& out_path) {
  MomentEngine eng;
  RationalFunction f;
  if (formula == "variance") {
    f = centered_moment(2);
  } else if (formula == "third") {
    f = centered_moment(3);
  } else if (formula == "fourth") {
    f = centered_moment(4);
  } else if (formula == "pair") {
    f = eng.equilibrium(parse_pair_graph("12"));
  } else if (formula == "chain") {
    f = eng.equilibrium(parse_pair_graph("12,23"));
  } else if (formula == "disjoint") {
    f = eng.equilibrium(parse_pair_graph("12,34"));
  } else if (formula == "z-cov") {
    f = z_moments().cov;
  } else if (formula == "z-third") {
    f = z_moments().third;
  } else {
    throw CLI::ValidationError("--formula", "unknown formula " + formula);
  }
  std::array<BigRational, kSymbolCount> vals = {
      parse_rational(lam), parse_rational(th), parse_rational(sv),
      parse_rational(tv)};
  BigRational v = f.eval(vals);
  std::ostringstream os;
  os << "exact " << to_string(v) << " (~ " << to_double(v) << ")\n";
  Sink::write(out_path, os.str());
  return 0;
}

int run_sim_coalescent(double eps, int n0, int reps, std::uint64_t seed,
                       double lambda, Sink& sink) {
  json manifest = base_manifest("sim-coalescent");
  manifest["config"] = {{"eps", eps},     {"n0", n0},        {"reps", reps},
                        {"seed", seed},   {"lambda", lambda}};
  const bool laplace = lambda > 0;
  const char* stat = laplace ? "laplace_psi12" : "eps_n";
  double param = laplace ? lambda : eps;
  if (!laplace && n0 == 0) n0 = recommended_n0(eps);
  if (laplace && n0 == 0) n0 = 1000;
  manifest["config"]["n0_effective"] = n0;
  json rows = json::array();
  std::ostringstream csv;
  csv << "seed,replicate,param,statistic,value\n";
  for (int rep = 0; rep < reps; ++rep) {
    Rng r = Rng::substream(seed, rep);
    double value;
    if (laplace) {
      value = laplace_psi12(sample_tree(n0, r), lambda);
    } else {
      value = eps * sample_slice(eps, n0, r).n;
    }
    if (sink.format == "json") {
      rows.push_back({{"seed", seed},
                      {"replicate", rep},
                      {"param", param},
                      {"statistic", stat},
                      {"value", value}});
    } else {
      csv << seed << "," << rep << "," << param << "," << stat << ","
          << value << "\n";
    }
  }
  sink.data << (sink.format == "json" ? rows.dump() : csv.str());
  sink.finish(manifest);
  return 0;
}

int run_sim_moran(int N, double theta, double alpha, double lambda, double eps,
                  int reps, std::uint64_t seed, const std::string& grid_str,
                  const std::string& functional, Sink& sink) {
  std::vector<double> grid = parse_grid(grid_str);
  json manifest = base_manifest("sim-moran");
  manifest["config"] = {{"N", N},           {"theta", theta},
                        {"alpha", alpha},   {"lambda", lambda},
                        {"eps", eps},       {"reps", reps},
                        {"seed", seed},     {"t_grid", grid},
                        {"functional", functional}};
  json rows = json::array();
  std::ostringstream csv;
  csv << "replicate,time,functional,value\n";
  for (int rep = 0; rep < reps; ++rep) {
    Rng r = Rng::substream(seed, rep);
    MoranConfig cfg;
    cfg.theta = theta;
    cfg.alpha = alpha;
    MoranModel m(N, MoranInit::stationary, cfg, r);
    if (functional == "w") m.track_w(lambda);
    if (functional == "b") m.track_b(eps, tavare_mean_N(eps, 1e-12));
    double t_prev = 0;
    for (double t : grid) {
      m.advance(t - t_prev, r);
      t_prev = t;
      double value;
      if (functional == "psi12") {
        value = m.psi12(lambda);
      } else if (functional == "psihat12") {
        value = m.psihat12(lambda);
      } else if (functional == "n_eps") {
        value = static_cast<double>(m.n_eps(eps));
      } else if (functional == "mark_ratio") {
        if (lambda > 0) {
          value = (N * m.psihat12(lambda) - 1) / (N * m.psi12(lambda) - 1);
        } else {
          auto v = m.mark_ratio(eps);
          value = v ? *v : std::nan("");
        }
      } else if (functional == "w") {
        value = m.w_value();
      } else if (functional == "b") {
        value = m.b_value();
      } else {
        throw CLI::ValidationError("--functional",
                                   "unknown functional " + functional);
      }
      if (sink.format == "json") {
        rows.push_back({{"replicate", rep},
                        {"time", t},
                        {"functional", functional},
                        {"value", value}});
      } else {
        csv << rep << "," << t << "," << functional << "," << value << "\n";
      }
    }
  }
  sink.data << (sink.format == "json" ? rows.dump() : csv.str());
  sink.finish(manifest);
  return 0;
}

int run_verify(const std::string& suite, std::uint64_t seed,
               const std::string& out_path) {
  std::vector<CheckResult> checks;
  auto append = [&](std::vector<CheckResult> v) {
    for (auto& c : v) checks.push_back(std::move(c));
  };
  if (suite == "symbolic" || suite == "all") append(verify_symbolic());
  if (suite == "coalescent" || suite == "all") append(verify_coalescent(seed));
  if (suite == "moran" || suite == "all") append(verify_moran(seed));
  if (checks.empty())
    throw CLI::ValidationError("suite", "unknown suite " + suite);
  int fails = 0;
  json report = base_manifest("verify");
  report["config"] = {{"suite", suite}, {"seed", seed}};
  report["checks"] = json::array();
  for (const auto& c : checks) {
    std::cerr << format_check_line(c) << "\n";
    report["checks"].push_back(check_to_json(c));
    if (!c.pass) ++fails;
  }
  report["failures"] = fails;
  Sink::write(out_path, report.dump(2) + "\n");
  return fails ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tree-valued Fleming-Viot verification laboratory"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  double eps = 0.01, lambda = 0, theta = 0, alpha = 0;
  int N = 100, n0 = 0, reps = 1;
  std::string t_grid = "1", out_path, format = "csv";
  std::string formula = "variance", functional = "psi12", suite = "all";
  std::string lam_s = "1", th_s = "0", s_s = "0", t_s = "0";

  auto* gen = app.add_subcommand("gen-table", "derived vs reference table");
  gen->add_option("--out", out_path);

  auto* mom = app.add_subcommand("moments", "exact formula evaluation");
  mom->add_option("--formula", formula,
                  "variance|third|fourth|pair|chain|disjoint|z-cov|z-third");
  mom->add_option("--lambda", lam_s, "exact rational, e.g. 1, 0.5, 7/3");
  mom->add_option("--theta", th_s);
  mom->add_option("--s", s_s);
  mom->add_option("--t", t_s);
  mom->add_option("--out", out_path);

  auto* simc = app.add_subcommand("sim-coalescent", "seeded slice/tree draws");
  simc->add_option("--eps", eps)->check(CLI::PositiveNumber);
  simc->add_option("--n0", n0)->check(CLI::Range(0, 1000000));
  simc->add_option("--reps", reps)->check(CLI::Range(1, 100000000));
  simc->add_option("--seed", seed);
  simc->add_option("--lambda", lambda,
                   "if > 0, emit tree Laplace functionals instead of eps_n");
  simc->add_option("--out", out_path);
  simc->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

  auto* simm = app.add_subcommand("sim-moran", "seeded Moran-path draws");
  simm->add_option("--N", N)->check(CLI::Range(2, 5000));
  simm->add_option("--theta", theta)->check(CLI::NonNegativeNumber);
  simm->add_option("--alpha", alpha)->check(CLI::NonNegativeNumber);
  simm->add_option("--lambda", lambda)->check(CLI::NonNegativeNumber);
  simm->add_option("--eps", eps)->check(CLI::PositiveNumber);
  simm->add_option("--reps", reps)->check(CLI::Range(1, 100000000));
  simm->add_option("--seed", seed);
  simm->add_option("--t-grid", t_grid, "comma-separated increasing times");
  simm->add_option("--functional", functional,
                   "psi12|psihat12|n_eps|mark_ratio|w|b");
  simm->add_option("--out", out_path);
  simm->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

  auto* ver = app.add_subcommand("verify", "acceptance criteria");
  ver->add_option("suite", suite, "symbolic|coalescent|moran|all");
  ver->add_option("--seed", seed);
  ver->add_option("--reps", reps)->check(CLI::Range(1, 100000000));
  ver->add_option("--out", out_path);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return run_gen_table(out_path);
    if (mom->parsed())
      return run_moments(formula, lam_s, th_s, s_s, t_s, out_path);
    Sink sink;
    sink.path = out_path;
    sink.format = format;
    if (simc->parsed())
      return run_sim_coalescent(eps, n0, reps, seed, lambda, sink);
    if (simm->parsed())
      return run_sim_moran(N, theta, alpha, lambda, eps, reps, seed, t_grid,
                           functional, sink);
    if (ver->parsed()) return run_verify(suite, seed, out_path);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
