#include "bilax/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bilax/experiments.hpp"

namespace bilax::cli {

namespace {

namespace ex = bilax::experiments;

struct Flags {
  ex::ExperimentConfig cfg;
  std::uint64_t seed = 0;
  double h = 0.0;
  std::vector<std::string> tols;
  std::string config_path;
  std::string out;
};

void add_run_options(CLI::App* sub, Flags& f) {
  sub->set_help_flag("--help", "print this help");
  sub->add_option("--n", f.cfg.n, "matrix dimension");
  sub->add_option("--seed", f.seed, "random seed (required)");
  sub->add_option("--k", f.cfg.k, "flow index k");
  sub->add_option("--l", f.cfg.l, "flow index l (even)");
  sub->add_option("--t", f.cfg.t_final, "final time");
  sub->add_option("--h", f.h, "RK4 step");
  sub->add_option("--M", f.cfg.M, "unit-circle samples for factorization");
  sub->add_option("--J", f.cfg.J, "Toeplitz blocks for factorization");
  sub->add_option("--K", f.cfg.K, "Fourier modes for the PDE");
  sub->add_option("--tol", f.tols, "tolerance override gate=value (repeatable)");
  sub->add_option("--config", f.config_path, "JSON config applied over the flags");
  sub->add_option("--out", f.out, "output directory");
}

ex::ExperimentConfig finish_config(const CLI::App* sub, Flags& f) {
  ex::ExperimentConfig cfg = f.cfg;
  cfg.experiment = sub->get_name();
  if (sub->count("--seed") > 0) cfg.seed = f.seed;
  if (sub->count("--h") > 0) cfg.h = f.h;
  for (const auto& t : f.tols) {
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("--tol expects gate=value, got '" + t + "'");
    std::size_t used = 0;
    const std::string num = t.substr(eq + 1);
    double v = 0.0;
    try {
      v = std::stod(num, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != num.size()) throw std::invalid_argument("--tol: bad number in '" + t + "'");
    cfg.tol_overrides[t.substr(0, eq)] = v;
  }
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) throw std::invalid_argument("cannot read config " + f.config_path);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument(std::string("bad config JSON: ") + e.what());
    }
    const std::string experiment = cfg.experiment;
    ex::apply_json(cfg, j);
    if (cfg.experiment != experiment) throw std::invalid_argument("config names a different experiment");
  }
  if (!f.out.empty()) cfg.out_dir = f.out;
  if (cfg.out_dir.empty()) {
    const char* env = std::getenv(kOutEnv);
    cfg.out_dir = (env != nullptr && *env != '\0') ? env : "bilax_out";
  }
  return cfg;
}

void print_result(const ex::ExperimentResult& r, std::ostream& out) {
  for (const auto& g : r.gates) {
    out << r.experiment << ' ' << g.name << ' ' << g.value << " <= " << g.tol << ' ' << (g.pass ? "PASS" : "FAIL")
        << '\n';
  }
}

int run_one(ex::ExperimentConfig cfg, std::ostream& out, std::ostream& err) {
  const ex::ExperimentResult r = ex::run_experiment(cfg);
  ex::write_outputs(r, cfg.out_dir);
  print_result(r, out);
  if (!r.pass()) {
    err << r.experiment << ": failing gates:";
    for (const auto& name : r.failures()) err << ' ' << name;
    err << '\n';
    return kExitGateFailure;
  }
  return kExitPass;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Isospectral flow experiments with tolerance gates"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print this help");
  Flags flags;
  std::vector<CLI::App*> runs;
  for (const auto& name : ex::experiment_names()) {
    runs.push_back(app.add_subcommand(name, "run the " + name + " experiment"));
  }
  runs.push_back(app.add_subcommand("all", "run every experiment with one configuration"));
  for (auto* sub : runs) add_run_options(sub, flags);
  std::string report_dir;
  auto* report = app.add_subcommand("report", "merge the JSON summaries in a directory");
  report->add_option("dir", report_dir, "results directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  if (report->parsed()) {
    try {
      const auto merged = ex::merge_reports(report_dir);
      out << merged.dump(2) << '\n';
      return merged["pass"].get<bool>() ? kExitPass : kExitGateFailure;
    } catch (const std::exception& e) {
      err << "report: " << e.what() << '\n';
      return kExitUsage;
    }
  }

  for (auto* sub : runs) {
    if (!sub->parsed()) continue;
    ex::ExperimentConfig cfg;
    try {
      cfg = finish_config(sub, flags);
      ex::validate(cfg);
    } catch (const std::exception& e) {
      err << "usage error: " << e.what() << '\n';
      return kExitUsage;
    }
    try {
      if (cfg.experiment != "all") return run_one(cfg, out, err);
      int code = kExitPass;
      for (const auto& name : ex::experiment_names()) {
        ex::ExperimentConfig one = cfg;
        one.experiment = name;
        const auto& own = ex::gate_names(name);
        std::erase_if(one.tol_overrides,
                      [&](const auto& kv) { return std::find(own.begin(), own.end(), kv.first) == own.end(); });
        if (run_one(one, out, err) != kExitPass) code = kExitGateFailure;
      }
      return code;
    } catch (const std::invalid_argument& e) {
      err << "usage error: " << e.what() << '\n';
      return kExitUsage;
    } catch (const std::exception& e) {
      err << cfg.experiment << ": run failed: " << e.what() << '\n';
      return kExitGateFailure;
    }
  }
  return kExitUsage;
}

}  // namespace bilax::cli
