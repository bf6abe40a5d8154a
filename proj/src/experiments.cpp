#include "bilax/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "bilax/blockpde.hpp"
#include "bilax/factorization.hpp"
#include "bilax/findim.hpp"
#include "bilax/flows.hpp"
#include "bilax/random.hpp"
#include "bilax/symmetrizer.hpp"

namespace bilax::experiments {

namespace {

using nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();

const std::map<std::string, std::vector<std::string>>& gate_table() {
  static const std::map<std::string, std::vector<std::string>> table{
      {"flow", {"drift", "m_equivalence", "m_skew_drift"}},
      {"invariants", {"index_count", "poisson", "independence", "spectral_parity"}},
      {"commute", {"commutation"}},
      {"factorize",
       {"aliasing", "winding", "gamma_symmetry", "birkhoff_residual", "tail", "reality", "factor_symmetry",
        "n_residual", "form_gap", "delta_ode", "orbit"}},
      {"findim",
       {"group_law", "bracket", "pairing", "coadjoint_defining", "homomorphism", "casimir_preservation",
        "induced_flow", "orbit_dimension"}},
      {"pde",
       {"quadratic_oracle", "cubic_oracle", "trace_drift", "block_vs_matrix", "parity_sector", "reduced_l2",
        "pde_l2", "parity_leakage"}},
      {"lemma41", {"lemma_a", "parity", "cayley_hamilton", "witness_rank", "random_rank"}},
  };
  return table;
}

class GateList {
 public:
  explicit GateList(const ExperimentConfig& cfg) : cfg_(cfg) {}

  void add(const std::string& name, double value, double default_tol) {
    const auto it = cfg_.tol_overrides.find(name);
    const double tol = it != cfg_.tol_overrides.end() ? it->second : default_tol;
    gates_.push_back({name, value, tol, std::isfinite(value) && value <= tol});
  }
  std::vector<Gate> take() { return std::move(gates_); }

 private:
  const ExperimentConfig& cfg_;
  std::vector<Gate> gates_;
};

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double rel_gap(const Matrix& a, const Matrix& b) {
  return frobenius_norm(a - b) / std::max(1.0, frobenius_norm(b));
}

int floor_quarter_square(std::size_t n) { return static_cast<int>(n * n / 4); }

double casimir_drift(const SymMatrix& s, const SymMatrix& s0, const SkewMatrix& n) {
  const auto a = casimirs(s, n);
  const auto b = casimirs(s0, n);
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]) / std::max(1.0, std::abs(b[i])));
  return m;
}

// Columns: t, H_k_l..., eig_i..., casimir_l..., I_r_k...
std::string flow_csv(const Trajectory& traj) {
  auto rank = [](const std::string& name) {
    if (name.rfind("H_", 0) == 0) return 0;
    if (name.rfind("eig_", 0) == 0) return 1;
    if (name.rfind("casimir_", 0) == 0) return 2;
    return 3;
  };
  const auto first = monitored_values(traj.states.front(), traj.N);
  std::vector<std::size_t> order(first.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return rank(first[x].name) < rank(first[y].name); });
  std::ostringstream os;
  os << "# bilax flow schema " << kSchemaVersion
     << ": time, Hamiltonians H_k_l, eigenvalues eig_i, Casimirs casimir_l, spectral coefficients I_r_k\n";
  os << "t";
  for (const auto i : order) os << ',' << first[i].name;
  os << '\n';
  for (std::size_t s = 0; s < traj.states.size(); ++s) {
    const auto vals = s == 0 ? first : monitored_values(traj.states[s], traj.N);
    os << fmt(traj.times[s]);
    for (const auto i : order) os << ',' << fmt(vals[i].initial);
    os << '\n';
  }
  return os.str();
}

ExperimentResult run_flow(const ExperimentConfig& cfg, GateList& g) {
  const std::uint64_t seed = *cfg.seed;
  const SymMatrix s0 = random_sym(cfg.n, seed);
  const SkewMatrix n = random_skew_simple(cfg.n, seed);
  const double h = cfg.h.value_or(1e-3);
  const Trajectory traj = integrate(s0, n, {cfg.k, cfg.l}, cfg.t_final, h);
  g.add("drift", drift_report(traj).max_drift(), 1e-8);

  const Matrix m0 = s0.matrix() + n.matrix();
  g.add("m_equivalence", frobenius_norm(m_rhs(m0) - bi_rhs(s0, n).matrix()), 1e-12);
  g.add("m_skew_drift", integrate_m(m0, cfg.t_final, h).max_skew_drift, 1e-10);
  return {"flow", {}, g.take(), flow_csv(traj)};
}

ExperimentResult run_invariants(const ExperimentConfig& cfg, GateList& g) {
  const std::uint64_t seed = *cfg.seed;
  const BILoop x{random_sym(cfg.n, seed), random_skew_simple(cfg.n, seed)};
  const auto idx = enumerate_indices(cfg.n);
  g.add("index_count", std::abs(static_cast<int>(idx.size()) - floor_quarter_square(cfg.n)), 0.0);
  double worst = 0.0;
  for (const auto a : idx)
    for (const auto b : idx) worst = std::max(worst, std::abs(poisson_bracket(x, a, b)) / poisson_scale(x, a, b));
  g.add("poisson", worst, 1e-10);
  g.add("independence", floor_quarter_square(cfg.n) - integral_independence_rank(x.S, x.N), 0.0);
  const SpectralTable spec = spectral_coeffs(x.S, x.N);
  double big = 1.0;
  for (int r = 0; r <= static_cast<int>(cfg.n); ++r)
    for (int d = 0; d <= r; ++d) big = std::max(big, std::abs(spec.coefficient(r, d)));
  g.add("spectral_parity", spec.odd_residual() / big, 1e-10);
  return {"invariants", {}, g.take(), {}};
}

std::vector<std::pair<IntegralIndex, IntegralIndex>> commute_pairs(std::size_t n) {
  const auto idx = enumerate_indices(n);
  std::vector<std::pair<IntegralIndex, IntegralIndex>> rich;
  std::vector<std::pair<IntegralIndex, IntegralIndex>> rest;
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = i + 1; j < idx.size(); ++j)
      (idx[i].k >= 2 ? rich : rest).emplace_back(idx[i], idx[j]);
  rich.insert(rich.end(), rest.begin(), rest.end());
  if (rich.size() > 3) rich.resize(3);
  return rich;
}

ExperimentResult run_commute(const ExperimentConfig& cfg, GateList& g) {
  const std::uint64_t seed = *cfg.seed;
  const SymMatrix s0 = random_sym(cfg.n, seed);
  const SkewMatrix n = random_skew_simple(cfg.n, seed);
  const double h = cfg.h.value_or(1e-4);
  double worst = 0.0;
  for (const auto& [a, b] : commute_pairs(cfg.n))
    worst = std::max(worst, flow_commutation(s0, n, a, b, cfg.t_final, cfg.t_final, h));
  g.add("commutation", worst, 1e-6);
  return {"commute", {}, g.take(), {}};
}

ExperimentResult run_factorize(const ExperimentConfig& cfg, GateList& g) {
  const std::uint64_t seed = *cfg.seed;
  const BILoop x{random_sym(cfg.n, seed), random_skew_simple(cfg.n, seed)};
  const IntegralIndex idx{cfg.k, cfg.l};
  BirkhoffOptions opts;
  opts.residual_tol = kInf;  // reported through the gate instead
  FactorizationSolution sol;
  try {
    sol = solve_by_factorization(x, idx, cfg.t_final, cfg.M, cfg.J, opts);
  } catch (const ConvergenceError&) {
    g.add("aliasing", kInf, kAliasingTol);
    return {"factorize", {}, g.take(), {}};
  } catch (const SingularSystemError&) {
    g.add("birkhoff_residual", kInf, 1e-8);
    return {"factorize", {}, g.take(), {}};
  }
  const SymMatrix ode = flow_endpoint(x.S, x.N, idx, cfg.t_final, cfg.h.value_or(1e-4));
  g.add("aliasing", sol.aliasing, kAliasingTol);
  g.add("winding", std::abs(sol.winding), 0.0);
  g.add("gamma_symmetry", sol.gamma_symmetry, 1e-10);
  g.add("birkhoff_residual", sol.factors.residual, 1e-8);
  g.add("tail", sol.factors.tail, 1e-10);
  g.add("reality", sol.factors.max_imag, 1e-10);
  g.add("factor_symmetry", std::max(sol.factors.sym_minus, sol.factors.sym_plus), 1e-8);
  g.add("n_residual", sol.n_residual, 1e-8);
  g.add("form_gap", sol.form_gap, 1e-7);
  g.add("delta_ode", frobenius_norm((sol.S - ode).matrix()), 1e-6);
  g.add("orbit", casimir_drift(sol.S, x.S, x.N), 1e-7);
  return {"factorize", {}, g.take(), {}};
}

ExperimentResult run_findim(const ExperimentConfig& cfg, GateList& g) {
  using namespace findim;
  const std::uint64_t seed = *cfg.seed;
  const std::size_t n = cfg.n;
  auto sym = [&](std::uint64_t k) { return random_sym(n, seed * 16 + k); };
  auto skew = [&](std::uint64_t k) { return SkewMatrix::project(random_matrix(n, seed * 16 + k)); };
  const GroupElem g1{sym(1), skew(2)};
  const GroupElem g2{sym(3), skew(4)};
  const AlgElem x1{sym(5), skew(6)};
  const AlgElem x2{sym(7), skew(8)};
  const DualElem a{sym(9), skew(10)};

  g.add("group_law", rel_gap(materialize(group_mul(g1, g2)), materialize(g1) * materialize(g2)), 1e-13);
  g.add("bracket", rel_gap(materialize(alg_bracket(x1, x2)), commutator(materialize(x1), materialize(x2))), 1e-13);
  const double tr = (materialize(x1) * materialize(a)).trace();
  g.add("pairing", std::abs(pairing_f(x1, a) - tr) / std::max(1.0, std::abs(tr)), 1e-13);
  const Matrix conj = materialize(g1) * materialize(x1) * materialize(group_inverse(g1));
  const double lhs = pairing_f(x1, coadjoint_f(g1, a));
  const double rhs = (conj * materialize(a)).trace();
  g.add("coadjoint_defining", std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)), 1e-12);
  g.add("homomorphism",
        rel_gap(materialize(coadjoint_f(group_mul(g1, g2), a)), materialize(coadjoint_f(g1, coadjoint_f(g2, a)))),
        1e-12);
  const DualElem moved = coadjoint_f(g1, a);
  g.add("casimir_preservation", casimir_drift(moved.S, a.S, a.N), 1e-12);
  g.add("induced_flow", rel_gap(induced_flow_rhs(a).S.matrix(), bi_rhs(a.S, a.N).matrix()), 1e-12);
  const SkewMatrix generic = random_skew_simple(n, seed);
  g.add("orbit_dimension", std::abs(orbit_dimension_f(generic) - 2 * floor_quarter_square(n)), 0.0);
  return {"findim", {}, g.take(), {}};
}

blockpde::Vec random_vec(std::size_t m, CounterRng& rng, double scale) {
  blockpde::Vec v(m);
  for (auto& x : v) x = scale * rng.uniform(-1.0, 1.0);
  return v;
}

ExperimentResult run_pde(const ExperimentConfig& cfg, GateList& g) {
  using namespace blockpde;
  const std::uint64_t seed = *cfg.seed;
  const std::size_t n = cfg.n;
  const double h = cfg.h.value_or(1e-3);
  const BlockState bs = extract(random_sym(n, seed));
  const SkewMatrix nm = n0(n);
  const Matrix s = embed(bs).matrix();
  const Matrix s2 = s * s;
  g.add("quadratic_oracle",
        rel_gap(embed(rhs_quadratic(bs)).matrix(), SymMatrix::project(commutator(nm.matrix(), s2)).matrix()),
        1e-13);
  g.add("cubic_oracle",
        rel_gap(embed(rhs_cubic(bs)).matrix(), SymMatrix::project(commutator(nm.matrix(), Matrix(s2 * s))).matrix()),
        1e-12);

  const BlockRun run = integrate_block(bs, BlockFlow::kCubic, cfg.t_final, h);
  const BlockRun run2 = integrate_block(bs, BlockFlow::kQuadratic, cfg.t_final, h);
  g.add("trace_drift", std::max(run.max_trace_drift, run2.max_trace_drift), 1e-10);
  if (n >= 4) {
    const SymMatrix mat = flow_endpoint(embed(bs), nm, {3, 0}, cfg.t_final, h);
    g.add("block_vs_matrix", frobenius_norm((embed(run.final_state) - mat).matrix()), 1e-9);
  }

  // B couples even and odd coordinates only; u and v live on the even ones.
  CounterRng rng(seed, 5);
  const std::size_t m = n - 2;
  BlockState sector = BlockState::zero(n);
  for (std::size_t i = 0; i < m; ++i) {
    if (i % 2 == 0) {
      sector.u[i] = rng.uniform(-1.0, 1.0);
      sector.v[i] = rng.uniform(-1.0, 1.0);
    }
    for (std::size_t j = 0; j < i; ++j)
      if ((i + j) % 2 == 1) sector.B.set(i, j, rng.uniform(-1.0, 1.0));
  }
  const BlockState ds = rhs_cubic(sector);
  g.add("parity_sector", std::max({std::abs(ds.a), std::abs(ds.b), std::abs(ds.c)}), 1e-12);

  const SymMatrix bred = random_sym(m, seed + 1);
  const ReducedRun red = integrate_reduced(random_vec(m, rng, 0.5), random_vec(m, rng, 0.5), bred, cfg.t_final, h);
  g.add("reduced_l2", red.max_energy_drift, 1e-6);

  double l2 = 0.0;
  double leak = 0.0;
  for (const Parity p : {Parity::kEven, Parity::kOdd}) {
    const PDEState st = pde_from_modes(cfg.K, p, random_vec(4, rng, 0.2), random_vec(4, rng, 0.2));
    const PDERun pr = integrate_pde(st, cfg.t_final, h);
    l2 = std::max(l2, pr.max_energy_drift);
    leak = std::max(leak, pr.max_parity_leakage);
  }
  g.add("pde_l2", l2, 1e-6);
  g.add("parity_leakage", leak, 1e-12);
  return {"pde", {}, g.take(), {}};
}

ExperimentResult run_symmetrizer_checks(const ExperimentConfig& cfg, GateList& g) {
  const std::uint64_t seed = *cfg.seed;
  const std::size_t n = cfg.n;
  const Matrix a = random_matrix(n, seed);
  const Matrix b = random_matrix(n, seed + 1);
  const Matrix an = a / frobenius_norm(a);
  const Matrix bn = b / frobenius_norm(b);
  const SymMatrix s = random_sym(n, seed);
  const SkewMatrix nn = random_skew_simple(n, seed);
  double worst = 0.0;
  bool parity_ok = true;
  for (int i = 0; i <= 8; ++i) {
    for (int j = 0; i + j <= 8; ++j) {
      if (i + j + 1 <= 8) worst = std::max(worst, lemma_a_residual(an, bn, i, j));
      parity_ok = parity_ok && parity_check(s, nn, i, j);
    }
  }
  g.add("lemma_a", worst, 1e-12);
  g.add("parity", parity_ok ? 0.0 : 1.0, 0.0);
  g.add("cayley_hamilton", cayley_hamilton_dependence(s.matrix(), nn.matrix()), 1e-8);
  const int full = static_cast<int>(n * (n + 1) / 2);
  const WitnessPair w = witness_pair(n, 2.0);
  g.add("witness_rank", full - numerical_rank(symmetrizers_below_degree(w.a, w.b)), 0.0);
  int misses = 0;
  for (std::uint64_t k = 0; k < 20; ++k)
    if (generic_independence(random_sym(n, seed + k), random_skew_simple(n, seed + k)) != full) ++misses;
  g.add("random_rank", misses, 1.0);
  return {"lemma41", {}, g.take(), {}};
}

bool is_power_of_two(int m) { return m > 0 && (m & (m - 1)) == 0; }

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"flow", "invariants", "commute", "factorize", "findim", "pde", "lemma41"};
  return names;
}

const std::vector<std::string>& gate_names(const std::string& experiment) {
  const auto it = gate_table().find(experiment);
  if (it == gate_table().end()) throw std::invalid_argument("unknown experiment '" + experiment + "'");
  return it->second;
}

void validate(const ExperimentConfig& cfg) {
  const auto& table = gate_table();
  const bool all = cfg.experiment == "all";
  if (!all && !table.contains(cfg.experiment)) throw std::invalid_argument("unknown experiment '" + cfg.experiment + "'");
  if (!cfg.seed) throw std::invalid_argument("--seed is required");
  if (cfg.n < 2 || cfg.n > 12) throw std::invalid_argument("n must be in [2, 12]");
  if (!std::isfinite(cfg.t_final) || cfg.t_final < 0.0) throw std::invalid_argument("t must be finite and >= 0");
  if (cfg.h && !(*cfg.h > 0.0 && std::isfinite(*cfg.h))) throw std::invalid_argument("h must be positive");
  if (!is_power_of_two(cfg.M) || cfg.M < 8) throw std::invalid_argument("M must be a power of two >= 8");
  if (cfg.J < 1 || cfg.J >= cfg.M / 2) throw std::invalid_argument("J must satisfy 1 <= J < M/2");
  if (cfg.K < 8 || cfg.K % 2 != 0) throw std::invalid_argument("K must be even and >= 8");
  const auto uses = [&](const char* name) { return all || cfg.experiment == name; };
  if ((uses("flow") || uses("factorize")) && !is_admissible({cfg.k, cfg.l}, cfg.n)) {
    throw std::invalid_argument("(k, l) = (" + std::to_string(cfg.k) + ", " + std::to_string(cfg.l) +
                                ") is not admissible for n = " + std::to_string(cfg.n));
  }
  if ((uses("commute") || uses("pde")) && cfg.n < 3) throw std::invalid_argument("this experiment needs n >= 3");
  std::set<std::string> known;
  for (const auto& [exp, gates] : table)
    if (all || exp == cfg.experiment) known.insert(gates.begin(), gates.end());
  for (const auto& [name, tol] : cfg.tol_overrides) {
    if (!known.contains(name)) throw std::invalid_argument("unknown gate '" + name + "' in tolerance override");
    if (!(tol >= 0.0)) throw std::invalid_argument("tolerance for '" + name + "' must be >= 0");
  }
}

void apply_json(ExperimentConfig& cfg, const json& j) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  for (const auto& [key, val] : j.items()) {
    if (key == "experiment") cfg.experiment = val.get<std::string>();
    else if (key == "n") cfg.n = val.get<std::size_t>();
    else if (key == "seed") cfg.seed = val.get<std::uint64_t>();
    else if (key == "k") cfg.k = val.get<int>();
    else if (key == "l") cfg.l = val.get<int>();
    else if (key == "t") cfg.t_final = val.get<double>();
    else if (key == "h") cfg.h = val.get<double>();
    else if (key == "M") cfg.M = val.get<int>();
    else if (key == "J") cfg.J = val.get<int>();
    else if (key == "K") cfg.K = val.get<int>();
    else if (key == "out") cfg.out_dir = val.get<std::string>();
    else if (key == "tol") {
      for (const auto& [name, tol] : val.items()) cfg.tol_overrides[name] = tol.get<double>();
    } else {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }
}

json config_json(const ExperimentConfig& cfg) {
  json j{{"experiment", cfg.experiment}, {"n", cfg.n}, {"k", cfg.k}, {"l", cfg.l}, {"t", cfg.t_final},
         {"M", cfg.M}, {"J", cfg.J}, {"K", cfg.K}};
  j["seed"] = cfg.seed ? json(*cfg.seed) : json(nullptr);
  j["h"] = cfg.h ? json(*cfg.h) : json(nullptr);
  j["tol"] = cfg.tol_overrides;
  return j;
}

bool ExperimentResult::pass() const {
  return std::all_of(gates.begin(), gates.end(), [](const Gate& g) { return g.pass; });
}

std::vector<std::string> ExperimentResult::failures() const {
  std::vector<std::string> out;
  for (const auto& g : gates)
    if (!g.pass) out.push_back(g.name);
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.experiment == "all") throw std::invalid_argument("run_experiment: run each experiment separately");
  validate(cfg);
  GateList gates(cfg);
  ExperimentResult r;
  const std::string& e = cfg.experiment;
  if (e == "flow") r = run_flow(cfg, gates);
  else if (e == "invariants") r = run_invariants(cfg, gates);
  else if (e == "commute") r = run_commute(cfg, gates);
  else if (e == "factorize") r = run_factorize(cfg, gates);
  else if (e == "findim") r = run_findim(cfg, gates);
  else if (e == "pde") r = run_pde(cfg, gates);
  else r = run_symmetrizer_checks(cfg, gates);
  r.config = config_json(cfg);
  return r;
}

json summary_json(const ExperimentResult& r) {
  json gates = json::array();
  for (const auto& g : r.gates) gates.push_back({{"name", g.name}, {"value", g.value}, {"tol", g.tol}, {"pass", g.pass}});
  return {{"schema", kSchemaVersion}, {"experiment", r.experiment}, {"config", r.config}, {"gates", gates},
          {"pass", r.pass()}};
}

void write_outputs(const ExperimentResult& r, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  auto write = [](const std::filesystem::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    f << text;
  };
  write(out_dir / (r.experiment + ".json"), summary_json(r).dump(2) + "\n");
  if (!r.csv.empty()) write(out_dir / (r.experiment + ".csv"), r.csv);
}

json merge_reports(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw std::runtime_error("not a directory: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const auto& p = entry.path();
    if (entry.is_regular_file() && p.extension() == ".json" && p.filename() != "report.json") files.push_back(p);
  }
  std::sort(files.begin(), files.end());
  json experiments = json::array();
  json failures = json::array();
  bool pass = true;
  for (const auto& p : files) {
    std::ifstream f(p);
    json j;
    try {
      j = json::parse(f);
    } catch (const json::exception& e) {
      throw std::runtime_error("corrupt summary " + p.filename().string() + ": " + e.what());
    }
    if (!j.is_object() || j.value("schema", 0) != kSchemaVersion || !j.contains("gates") || !j.contains("experiment")) {
      throw std::runtime_error("not a schema " + std::to_string(kSchemaVersion) + " summary: " + p.filename().string());
    }
    json entry{{"experiment", j["experiment"]}, {"file", p.filename().string()}};
    json values = json::object();
    json failed = json::array();
    bool ok = true;
    for (const auto& g : j["gates"]) {
      values[g.at("name").get<std::string>()] = g.at("value");
      if (!g.at("pass").get<bool>()) {
        ok = false;
        failed.push_back(g.at("name"));
        failures.push_back(j["experiment"].get<std::string>() + ":" + g.at("name").get<std::string>());
      }
    }
    entry["gates"] = values;
    entry["failures"] = failed;
    entry["pass"] = ok;
    pass = pass && ok;
    experiments.push_back(entry);
  }
  return {{"schema", kSchemaVersion}, {"experiments", experiments}, {"failures", failures}, {"pass", pass}};
}

}  // namespace bilax::experiments
