#include "dyadic_lasso/experiments.hpp"

#include <chrono>
#include <cmath>

namespace dyadic_lasso {

namespace {

// Stream indices reserved for setup draws, far above any replication index.
constexpr std::uint64_t kDesignStream = 1ull << 62;
constexpr std::uint64_t kDictionaryStream = (1ull << 62) + 1;

std::vector<std::string> harness_columns(const std::string& name) {
  if (name == "oracle-ratio") {
    return {"p", "eps", "lambda", "numerator_mean", "numerator_stderr", "denominator", "ratio",
            "ratio_stderr", "risk_mean", "risk_stderr"};
  }
  if (name == "selected-oracle") {
    return {"eps",          "numerator_mean", "numerator_stderr", "denominator",     "ratio",
            "ratio_stderr", "risk_mean",      "risk_stderr",      "p_hat_median",    "p_hat_mean",
            "best_level",   "best_level_loss", "best_level_stderr", "adaptive_pass"};
  }
  if (name == "rates") return {"eps", "risk_mean", "risk_stderr", "p_hat_median", "slope", "slope_stderr"};
  if (name == "lemma-checks") {
    return {"trial", "gamma", "lemma82_lhs", "lemma82_rhs", "lemma83_lhs", "lemma83_rhs", "pass"};
  }
  if (name == "packing") return {"t", "greedy_packing_count", "bound", "pass"};
  if (name == "minimax-hypercube") {
    return {"target", "p",         "d",           "M",         "weak_lq", "strong_lq",
            "besov",  "risk_mean", "risk_stderr", "reference", "ratio"};
  }
  return {};
}

SolverOptions solver_options(const RunConfig& c) {
  SolverOptions o;
  o.tol = c.tol;
  o.max_iter = c.max_iter;
  return o;
}

std::shared_ptr<const Design> make_design(const RunConfig& c) {
  if (c.design == "grid") return std::make_shared<const Design>(Design::grid(c.n));
  RandomStream rng(c.seed, kDesignStream);
  return std::make_shared<const Design>(Design::uniform(c.n, c.d, rng));
}

std::shared_ptr<const Dictionary> make_dictionary(const RunConfig& c) {
  if (c.is_sequence() || c.family == "orthonormal") {
    return std::make_shared<const Dictionary>(make_orthonormal_sequence(c.p_max));
  }
  if (c.family == "haar") {
    const Dictionary haar = make_haar_grid(c.n);
    return std::make_shared<const Dictionary>(c.p_max < haar.p() ? truncate(haar, c.p_max) : haar);
  }
  if (c.family == "fourier") return std::make_shared<const Dictionary>(make_fourier_grid(c.n, c.p_max));
  if (c.family == "gaussian") {
    RandomStream rng(c.seed, kDictionaryStream);
    return std::make_shared<const Dictionary>(make_gaussian_design(c.n, c.p_max, rng));
  }
  return std::make_shared<const Dictionary>(enumerate_heaviside_patterns(make_design(c)));
}

Coefficients target_coefficients(const RunConfig& c, int length) {
  if (c.target_kind == "power_law") return make_power_law_target(c.q, c.r, c.R, length).coefficients;
  if (c.target_kind == "custom") {
    return Eigen::Map<const Eigen::VectorXd>(c.coefficients.data(),
                                             static_cast<Eigen::Index>(c.coefficients.size()));
  }
  Coefficients theta = Coefficients::Zero(length);
  if (c.target_kind == "sparse") {
    for (int k = 0; k < c.sparsity; ++k) {
      theta[static_cast<Eigen::Index>(k) * length / c.sparsity] = c.amplitude;
    }
  }
  return theta;
}

Problem build_problem(const RunConfig& c, std::shared_ptr<const Dictionary> dict, double eps) {
  if (c.is_sequence()) return Problem::sequence(target_coefficients(c, c.target_length()), eps, c.p_max);
  const int n = dict->n();
  SampleVector f;
  if (c.target_kind == "step") {
    f = SampleVector::Zero(n);
    for (int i = 0; i < n; ++i) {
      if (dict->design().points()(i, 0) > c.jump) f[i] = c.amplitude;
    }
  } else {
    const Coefficients theta = target_coefficients(c, c.target_length());
    Coefficients padded = Coefficients::Zero(dict->p());
    const Eigen::Index shared = std::min<Eigen::Index>(theta.size(), dict->p());
    padded.head(shared) = theta.head(shared);
    f = dict->synthesize(padded);
  }
  return Problem::regression(std::move(dict), std::move(f), eps * std::sqrt(static_cast<double>(n)));
}

double elapsed_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double lambda_for(const RunConfig& c, const Problem& problem) {
  if (!problem.is_sequence() && c.family == "heaviside") {
    const Design& design = problem.dictionary->design();
    return c.lambda_multiplier * lambda_nn(design.n(), design.dim(), problem.sigma);
  }
  return c.lambda_multiplier * lambda_p(problem.max_level(), problem.eps);
}

SampleVector observe(const Problem& problem, RandomStream& rng) {
  if (problem.is_sequence()) {
    return sample_sequence_model(problem.theta_star, problem.eps, problem.p_obs, rng);
  }
  return sample_regression(problem.f_on_design, problem.sigma, problem.dictionary->design(), rng);
}

ExperimentReport run_fit(const RunConfig& c) {
  const auto start = std::chrono::steady_clock::now();
  const auto dict = make_dictionary(c);
  const Problem problem = build_problem(c, dict, c.eps_grid.front());
  RandomStream rng(c.seed, 0);
  SampleVector y = observe(problem, rng);
  if (problem.is_sequence()) {
    // Identity design with sqrt(p) on the diagonal: samples are sqrt(p) times coefficients.
    y *= std::sqrt(static_cast<double>(c.p_max));
  }
  const double lam = lambda_for(c, problem);
  const LassoFit fit = lasso_cd(*dict, y, lam, solver_options(c));

  ExperimentReport rep;
  rep.name = "fit";
  rep.seed = c.seed;
  rep.header = {"j", "theta"};
  for (Eigen::Index j = 0; j < fit.theta.size(); ++j) {
    rep.rows.push_back({static_cast<double>(j + 1), fit.theta[j]});
  }
  double sq_error = 0.0;
  if (problem.is_sequence()) {
    Coefficients star = Coefficients::Zero(c.p_max);
    const Eigen::Index shared = std::min<Eigen::Index>(problem.theta_star.size(), c.p_max);
    star.head(shared) = problem.theta_star.head(shared);
    sq_error = (star - fit.theta).squaredNorm() +
               (problem.theta_star.size() > c.p_max
                    ? problem.theta_star.tail(problem.theta_star.size() - c.p_max).squaredNorm()
                    : 0.0);
  } else {
    sq_error = empirical_sq_norm(problem.f_on_design - fit.fitted);
  }
  rep.summary = {{"lambda", lam},
                 {"objective", fit.objective},
                 {"kkt_violation", fit.kkt_violation},
                 {"iterations", static_cast<double>(fit.iterations)},
                 {"l1_norm", fit.l1_norm()},
                 {"support", static_cast<double>((fit.theta.array() != 0.0).count())},
                 {"sq_error", sq_error}};
  rep.wall_time = elapsed_since(start);
  return rep;
}

ExperimentReport run_select(const RunConfig& c) {
  const auto start = std::chrono::steady_clock::now();
  const auto dict = c.is_sequence() ? nullptr : make_dictionary(c);
  const Problem problem = build_problem(c, dict, c.eps_grid.front());
  RandomStream rng(c.seed, 0);
  const SampleVector y = observe(problem, rng);
  SelectionTrace trace;
  if (problem.is_sequence()) {
    trace = selected_soft_threshold(y, problem.eps, c.p_max, c.lambda_multiplier);
  } else {
    SelectionOptions so;
    so.solver = solver_options(c);
    so.lambda_multiplier = c.lambda_multiplier;
    trace = selected_lasso(*dict, y, problem.eps, dict->p(), so);
  }
  ExperimentReport rep;
  rep.name = "select";
  rep.seed = c.seed;
  rep.header = {"p", "lambda", "pen", "gamma", "l1_norm", "criterion", "chosen"};
  for (std::size_t k = 0; k < trace.per_level.size(); ++k) {
    const auto& rec = trace.per_level[k];
    rep.rows.push_back({static_cast<double>(rec.p), rec.lambda, rec.pen, rec.gamma,
                        rec.fit.l1_norm(), rec.criterion, k == trace.chosen ? 1.0 : 0.0});
  }
  rep.summary = {{"p_hat", static_cast<double>(trace.p_hat)},
                 {"criterion", trace.chosen_level().criterion}};
  rep.wall_time = elapsed_since(start);
  return rep;
}

ExperimentReport run_delta_m(const RunConfig& c, int threads) {
  const auto start = std::chrono::steady_clock::now();
  const auto dict = make_dictionary(c);
  const double eps = c.eps_grid.front();
  const DeltaMResult r = delta_m_check(*dict, c.m, eps, c.n_rep, c.seed, threads);
  ExperimentReport rep;
  rep.name = "delta-m";
  rep.seed = c.seed;
  rep.header = {"m", "eps", "p", "mc_estimate", "mc_stderr", "bound", "pass"};
  rep.rows.push_back({static_cast<double>(c.m), eps, static_cast<double>(dict->p()), r.mc_estimate,
                      r.mc_stderr, r.bound, r.pass ? 1.0 : 0.0});
  rep.summary = {{"pass", r.pass ? 1.0 : 0.0}};
  rep.wall_time = elapsed_since(start);
  return rep;
}

}  // namespace

const std::vector<ExperimentInfo>& experiment_catalog() {
  static const std::vector<ExperimentInfo> catalog = {
      {"fit", "Lasso at level p_max by coordinate descent, with KKT certificate", "Theorem 3.1",
       {"j", "theta"}},
      {"select", "selected Lasso over dyadic truncation levels, per-level criterion table",
       "Theorem 4.1", {"p", "lambda", "pen", "gamma", "l1_norm", "criterion", "chosen"}},
      {"oracle-ratio", "Monte Carlo risk over the deterministic-Lasso oracle bound at fixed p",
       "Theorem 3.1 (Theorem 6.1 with the heaviside family)", harness_columns("oracle-ratio")},
      {"selected-oracle", "selected-Lasso risk over the oracle bound, with adaptivity check",
       "Theorem 4.1", harness_columns("selected-oracle")},
      {"rates", "log-log risk slope of the selected Lasso on a power-law target",
       "Proposition 5.6", harness_columns("rates")},
      {"delta-m", "expected noise supremum over an l1 ball against m eps sqrt(2 ln 2p)",
       "Theorem 3.1 (bound on Delta_m)", {"m", "eps", "p", "mc_estimate", "mc_stderr", "bound", "pass"}},
      {"lemma-checks", "threshold inequality and identity on random sequences", "Lemmas 8.2 and 8.3",
       harness_columns("lemma-checks")},
      {"packing", "greedy packing of Heaviside patterns against the hyperplane bound", "Lemma 8.1",
       harness_columns("packing")},
      {"minimax-hypercube", "selected-Lasso risk on random hypercube vertices", "Proposition 5.8",
       harness_columns("minimax-hypercube")},
  };
  return catalog;
}

const ExperimentInfo& find_experiment(const std::string& name) {
  for (const auto& info : experiment_catalog())
    if (info.name == name) return info;
  throw UnknownExperimentError("unknown experiment '" + name + "' (see list-experiments)");
}

Problem make_problem(const RunConfig& config, double eps) {
  return build_problem(config, config.is_sequence() ? nullptr : make_dictionary(config), eps);
}

ExperimentReport run_experiment(const RunConfig& c, int threads) {
  find_experiment(c.name);
  const SolverOptions solver = solver_options(c);
  if (c.name == "fit") return run_fit(c);
  if (c.name == "select") return run_select(c);
  if (c.name == "delta-m") return run_delta_m(c, threads);
  if (c.name == "lemma-checks") return lemma_sweep(c.n_trials, c.seed);
  if (c.name == "packing") {
    ExperimentReport rep = packing_check(make_design(c), c.t_grid);
    rep.seed = c.seed;
    return rep;
  }
  if (c.name == "rates") {
    RatesConfig rc;
    rc.q = c.q;
    rc.r = c.r;
    rc.R = c.R;
    rc.eps_grid = c.eps_grid;
    rc.length = c.target_length();
    rc.n_rep = c.n_rep;
    rc.seed = c.seed;
    rc.threads = threads;
    return rates_experiment(rc);
  }
  if (c.name == "minimax-hypercube") {
    MinimaxConfig mc;
    mc.q = c.q;
    mc.r = c.r;
    mc.R = c.R;
    mc.eps = c.eps_grid.front();
    mc.n_targets = c.n_targets;
    mc.n_rep = c.n_rep;
    mc.observe_factor = c.observe_factor;
    mc.seed = c.seed;
    mc.threads = threads;
    return minimax_hypercube_experiment(mc);
  }

  const auto dict = c.is_sequence() ? nullptr : make_dictionary(c);
  ProblemFactory factory = [&c, dict](double eps) { return build_problem(c, dict, eps); };
  if (c.name == "oracle-ratio") {
    RatioConfig rc;
    rc.make_problem = factory;
    rc.p_grid = c.p_grid;
    if (dict) {
      for (int& p : rc.p_grid) p = std::min(p, dict->p());
    }
    rc.eps_grid = c.eps_grid;
    rc.n_rep = c.n_rep;
    rc.seed = c.seed;
    rc.lambda_multiplier = c.lambda_multiplier;
    rc.rule = !c.is_sequence() && c.family == "heaviside" ? LambdaRule::neural : LambdaRule::schedule;
    rc.solver = solver;
    rc.threads = threads;
    return oracle_ratio_experiment(rc);
  }
  SelectedConfig sc;
  sc.make_problem = factory;
  sc.p_max = dict ? dict->p() : c.p_max;
  sc.eps_grid = c.eps_grid;
  sc.n_rep = c.n_rep;
  sc.seed = c.seed;
  sc.lambda_multiplier = c.lambda_multiplier;
  sc.solver = solver;
  sc.threads = threads;
  return selected_oracle_experiment(sc);
}

}  // namespace dyadic_lasso
