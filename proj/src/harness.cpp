#include "dyadic_lasso/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <numbers>
#include <thread>

#include <Eigen/Eigenvalues>

namespace dyadic_lasso {

namespace {

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

double elapsed_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Independent stream families for one master seed.
std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t domain) {
  return seed ^ (0x9E3779B97F4A7C15ull * (domain + 1));
}

double loss_of(const ReplicationOutcome& o) { return o.sq_error + o.l1_term + o.pen; }

}  // namespace

double ExperimentReport::summary_value(const std::string& key) const {
  for (const auto& [k, v] : summary)
    if (k == key) return v;
  throw ParameterError("report " + name + " has no summary entry " + key);
}

MeanStderr mean_stderr(std::span<const double> values) {
  MeanStderr out;
  const std::size_t n = values.size();
  if (n == 0) return out;
  out.mean = pairwise_sum(values) / static_cast<double>(n);
  if (n < 2) return out;
  std::vector<double> dev(n);
  for (std::size_t i = 0; i < n; ++i) dev[i] = (values[i] - out.mean) * (values[i] - out.mean);
  const double var = pairwise_sum(dev) / static_cast<double>(n - 1);
  out.std_error = std::sqrt(var / static_cast<double>(n));
  return out;
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

void parallel_for(int count, int threads, const std::function<void(int)>& body) {
  if (count <= 0) return;
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      for (int i = w; i < count; i += threads) {
        try {
          body(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

Problem Problem::sequence(Coefficients theta_star, double eps, int p_obs) {
  if (!(eps > 0.0)) throw ParameterError("sequence problem: eps must be > 0");
  if (p_obs < 1) throw ParameterError("sequence problem: p_obs must be >= 1");
  Problem pr;
  pr.theta_star = std::move(theta_star);
  pr.eps = eps;
  pr.sigma = eps;
  pr.p_obs = p_obs;
  return pr;
}

Problem Problem::regression(std::shared_ptr<const Dictionary> dictionary, SampleVector f,
                            double sigma) {
  if (!dictionary) throw ParameterError("regression problem: null dictionary");
  if (f.size() != dictionary->n()) throw DimensionError("regression problem: f length != n");
  Problem pr;
  pr.eps = NoiseLevel::from_regression(sigma, dictionary->n()).eps();
  pr.sigma = sigma;
  pr.dictionary = std::move(dictionary);
  pr.f_on_design = std::move(f);
  pr.p_obs = pr.dictionary->p();
  return pr;
}

namespace {

// ||theta* - theta_hat||^2 where theta_hat has the given length.
double sequence_sq_error(const Coefficients& theta_star, const Coefficients& theta_hat) {
  const Eigen::Index len = std::max(theta_star.size(), theta_hat.size());
  double s = 0.0;
  for (Eigen::Index j = 0; j < len; ++j) {
    const double a = j < theta_star.size() ? theta_star[j] : 0.0;
    const double b = j < theta_hat.size() ? theta_hat[j] : 0.0;
    s += (a - b) * (a - b);
  }
  return s;
}

int support_of(const Coefficients& theta) {
  return static_cast<int>((theta.array() != 0.0).count());
}

}  // namespace

ReplicationOutcome replicate(const Problem& problem, const Estimator& est, RandomStream& rng) {
  ReplicationOutcome out;
  const double eps = problem.eps;
  auto level_lambda = [&](int p) {
    return est.lambda > 0.0 ? est.lambda : est.lambda_multiplier * lambda_p(p, eps);
  };
  if (est.p < 1 || est.p > problem.max_level()) {
    throw ParameterError("estimator level " + std::to_string(est.p) + " outside [1, " +
                         std::to_string(problem.max_level()) + "]");
  }

  if (problem.is_sequence()) {
    const Coefficients y = sample_sequence_model(problem.theta_star, eps, problem.p_obs, rng);
    if (est.kind == EstimatorKind::selected_lasso) {
      const SelectionTrace trace = selected_soft_threshold(y.head(est.p), eps, est.p, est.lambda_multiplier);
      for (const auto& rec : trace.per_level) {
        out.level_loss.push_back(sequence_sq_error(problem.theta_star, rec.fit.theta) +
                                 rec.lambda * rec.fit.l1_norm() + rec.pen);
      }
      const auto& rec = trace.chosen_level();
      out.sq_error = sequence_sq_error(problem.theta_star, rec.fit.theta);
      out.l1_norm = rec.fit.l1_norm();
      out.l1_term = rec.lambda * out.l1_norm;
      out.pen = rec.pen;
      out.p_hat = rec.p;
      out.support = support_of(rec.fit.theta);
      return out;
    }
    const double lam = level_lambda(est.p);
    const Coefficients theta = soft_threshold_fit(y.head(est.p), lam);
    out.sq_error = sequence_sq_error(problem.theta_star, theta);
    out.l1_norm = theta.lpNorm<1>();
    out.l1_term = lam * out.l1_norm;
    out.p_hat = est.p;
    out.support = support_of(theta);
    return out;
  }

  const Dictionary& dict = *problem.dictionary;
  const SampleVector y = sample_regression(problem.f_on_design, problem.sigma, dict.design(), rng);
  const double inv_n = 1.0 / dict.n();
  if (est.kind == EstimatorKind::selected_lasso) {
    SelectionOptions so;
    so.solver = est.solver;
    so.lambda_multiplier = est.lambda_multiplier;
    const SelectionTrace trace = selected_lasso(dict, y, eps, est.p, so);
    for (const auto& rec : trace.per_level) {
      out.level_loss.push_back((problem.f_on_design - rec.fit.fitted).squaredNorm() * inv_n +
                               rec.lambda * rec.fit.l1_norm() + rec.pen);
    }
    const auto& rec = trace.chosen_level();
    out.sq_error = (problem.f_on_design - rec.fit.fitted).squaredNorm() * inv_n;
    out.l1_norm = rec.fit.l1_norm();
    out.l1_term = rec.lambda * out.l1_norm;
    out.pen = rec.pen;
    out.p_hat = rec.p;
    out.support = support_of(rec.fit.theta);
    return out;
  }
  if (est.kind == EstimatorKind::soft_threshold) {
    throw ParameterError("soft_threshold estimator needs the orthonormal sequence model");
  }
  const double lam = level_lambda(est.p);
  const Dictionary sub = est.p == dict.p() ? dict : truncate(dict, est.p);
  const LassoFit fit = lasso_cd(sub, y, lam, est.solver);
  out.sq_error = (problem.f_on_design - fit.fitted).squaredNorm() * inv_n;
  out.l1_norm = fit.l1_norm();
  out.l1_term = lam * out.l1_norm;
  out.p_hat = est.p;
  out.support = support_of(fit.theta);
  return out;
}

McResult mc_risk(const Problem& problem, const Estimator& estimator, int n_rep,
                 std::uint64_t seed, int threads) {
  if (n_rep < 2) throw ParameterError("mc_risk: n_rep must be >= 2");
  McResult res;
  res.replications.resize(n_rep);
  parallel_for(n_rep, threads, [&](int i) {
    RandomStream rng(seed, static_cast<std::uint64_t>(i));
    try {
      res.replications[i] = replicate(problem, estimator, rng);
    } catch (const NonConvergenceError& e) {
      throw NonConvergenceError(e.best(), "replication " + std::to_string(i) + ": " + e.what());
    }
  });
  std::vector<double> sq(n_rep), loss(n_rep), l1(n_rep), ph(n_rep), sup(n_rep);
  for (int i = 0; i < n_rep; ++i) {
    const auto& o = res.replications[i];
    sq[i] = o.sq_error;
    loss[i] = loss_of(o);
    l1[i] = o.l1_norm;
    ph[i] = o.p_hat;
    sup[i] = o.support;
  }
  res.risk = mean_stderr(sq);
  res.loss = mean_stderr(loss);
  res.mean_l1 = mean_stderr(l1).mean;
  res.mean_p_hat = mean_stderr(ph).mean;
  res.median_p_hat = median(ph);
  res.mean_support = mean_stderr(sup).mean;
  return res;
}

DeterministicLasso oracle_value(const Problem& problem, int p, double lambda,
                                const SolverOptions& options) {
  if (problem.is_sequence()) {
    const Coefficients& ts = problem.theta_star;
    Coefficients head = Coefficients::Zero(p);
    const Eigen::Index shared = std::min<Eigen::Index>(p, ts.size());
    head.head(shared) = ts.head(shared);
    const double tail = ts.size() > p ? ts.tail(ts.size() - p).squaredNorm() : 0.0;
    DeterministicLasso out;
    if (p <= 1024) {
      const Dictionary basis = make_orthonormal_sequence(p);
      out = deterministic_lasso(basis, basis.synthesize(head), lambda, options);
    } else {
      // Closed form: the soft threshold at lambda / 2 solves the orthonormal problem.
      out.fit.theta = soft_threshold_fit(head, lambda);
      out.fit.lambda = lambda;
      out.fit.objective = (head - out.fit.theta).squaredNorm() + lambda * out.fit.l1_norm();
      out.fit.fitted = out.fit.theta;
      out.value = out.fit.objective;
    }
    out.value += tail;
    return out;
  }
  const Dictionary& dict = *problem.dictionary;
  const Dictionary sub = p == dict.p() ? dict : truncate(dict, p);
  return deterministic_lasso(sub, problem.f_on_design, lambda, options);
}

ExperimentReport oracle_ratio_experiment(const RatioConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport rep;
  rep.name = "oracle-ratio";
  rep.seed = cfg.seed;
  rep.header = {"p",           "eps",   "lambda",       "numerator_mean", "numerator_stderr",
                "denominator", "ratio", "ratio_stderr", "risk_mean",      "risk_stderr"};
  double max_ratio = 0.0;
  double min_ratio = std::numeric_limits<double>::infinity();
  std::uint64_t cell = 0;
  for (double eps : cfg.eps_grid) {
    const Problem problem = cfg.make_problem(eps);
    const std::vector<int> p_grid =
        cfg.rule == LambdaRule::neural ? std::vector<int>{problem.max_level()} : cfg.p_grid;
    for (int p : p_grid) {
      Estimator est;
      est.kind = EstimatorKind::lasso;
      est.p = p;
      est.solver = cfg.solver;
      if (cfg.rule == LambdaRule::neural) {
        const auto& design = problem.dictionary->design();
        est.lambda = cfg.lambda_multiplier * lambda_nn(design.n(), design.dim(), problem.sigma);
      } else {
        est.lambda = cfg.lambda_multiplier * lambda_p(p, problem.eps);
      }
      const McResult mc = mc_risk(problem, est, cfg.n_rep, sub_seed(cfg.seed, cell++), cfg.threads);
      SolverOptions det = cfg.solver;
      det.tol = std::min(det.tol, 1e-10);
      const double denom = oracle_value(problem, p, est.lambda, det).value + est.lambda * problem.eps;
      const double ratio = mc.loss.mean / denom;
      max_ratio = std::max(max_ratio, ratio);
      min_ratio = std::min(min_ratio, ratio);
      rep.rows.push_back({static_cast<double>(p), problem.eps, est.lambda, mc.loss.mean,
                          mc.loss.std_error, denom, ratio, mc.loss.std_error / denom, mc.risk.mean,
                          mc.risk.std_error});
    }
  }
  rep.summary = {{"max_ratio", max_ratio}, {"min_ratio", min_ratio}};
  rep.wall_time = elapsed_since(start);
  return rep;
}

ExperimentReport selected_oracle_experiment(const SelectedConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport rep;
  rep.name = "selected-oracle";
  rep.seed = cfg.seed;
  rep.header = {"eps",          "numerator_mean",    "numerator_stderr", "denominator",
                "ratio",        "ratio_stderr",      "risk_mean",        "risk_stderr",
                "p_hat_median", "p_hat_mean",        "best_level",       "best_level_loss",
                "best_level_stderr", "adaptive_pass"};
  double max_ratio = 0.0;
  double all_adaptive = 1.0;
  std::uint64_t cell = 0;
  for (double eps : cfg.eps_grid) {
    const Problem problem = cfg.make_problem(eps);
    Estimator est;
    est.kind = EstimatorKind::selected_lasso;
    est.p = cfg.p_max;
    est.lambda_multiplier = cfg.lambda_multiplier;
    est.solver = cfg.solver;
    const McResult mc = mc_risk(problem, est, cfg.n_rep, sub_seed(cfg.seed, cell++), cfg.threads);

    SolverOptions det = cfg.solver;
    det.tol = std::min(det.tol, 1e-10);
    const DyadicLevels levels = dyadic_levels(cfg.p_max);
    double inf_term = std::numeric_limits<double>::infinity();
    for (int p : levels) {
      const double lam = cfg.lambda_multiplier * lambda_p(p, problem.eps);
      inf_term = std::min(inf_term, oracle_value(problem, p, lam, det).value + pen_p(p, problem.eps));
    }
    const double denom = inf_term + problem.eps * problem.eps;
    const double ratio = mc.loss.mean / denom;

    // Per-level Monte Carlo loss on the same replications.
    std::size_t best = 0;
    std::vector<MeanStderr> level_stats(levels.size());
    for (std::size_t k = 0; k < levels.size(); ++k) {
      std::vector<double> v(mc.replications.size());
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = mc.replications[i].level_loss[k];
      level_stats[k] = mean_stderr(v);
      if (level_stats[k].mean < level_stats[best].mean) best = k;
    }
    const MeanStderr& b = level_stats[best];
    const double slack = 2.0 * std::hypot(mc.loss.std_error, b.std_error);
    const bool adaptive = mc.loss.mean <= 1.05 * b.mean + slack;
    if (!adaptive) all_adaptive = 0.0;
    max_ratio = std::max(max_ratio, ratio);

    std::vector<double> ph(mc.replications.size());
    for (std::size_t i = 0; i < ph.size(); ++i) ph[i] = mc.replications[i].p_hat;
    rep.rows.push_back({problem.eps, mc.loss.mean, mc.loss.std_error, denom, ratio,
                        mc.loss.std_error / denom, mc.risk.mean, mc.risk.std_error,
                        mc.median_p_hat, mc.mean_p_hat, static_cast<double>(levels[best]), b.mean,
                        b.std_error, adaptive ? 1.0 : 0.0});
  }
  rep.summary = {{"max_ratio", max_ratio}, {"all_adaptive", all_adaptive}};
  rep.wall_time = elapsed_since(start);
  return rep;
}

SlopeFit fit_slope(std::span<const double> x, std::span<const double> y,
                   std::span<const double> y_stderr) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n || y_stderr.size() != n) {
    throw DimensionError("fit_slope: need at least two points of matching length");
  }
  double xm = 0.0, ym = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    xm += x[i];
    ym += y[i];
  }
  xm /= n;
  ym /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - xm) * (x[i] - xm);
    sxy += (x[i] - xm) * (y[i] - ym);
  }
  if (!(sxx > 0.0)) throw ParameterError("fit_slope: x values are all equal");
  SlopeFit out;
  out.slope = sxy / sxx;
  out.intercept = ym - out.slope * xm;
  double var = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = (x[i] - xm) / sxx;
    var += w * w * y_stderr[i] * y_stderr[i];
  }
  out.slope_stderr = std::sqrt(var);
  return out;
}

ExperimentReport rates_experiment(const RatesConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  if (cfg.eps_grid.size() < 2) throw ParameterError("rates: eps_grid needs at least two values");
  const double floor_snr = std::max(std::numbers::e, cfg.q / (4.0 * cfg.r));
  for (double eps : cfg.eps_grid) {
    if (!(eps > 0.0) || cfg.R / eps < floor_snr) {
      throw RegimeError("rates: eps = " + std::to_string(eps) + " violates R/eps >= max(e, q/(4r)) = " +
                        std::to_string(floor_snr));
    }
  }
  const TargetSpec target = make_power_law_target(cfg.q, cfg.r, cfg.R, cfg.length);

  ExperimentReport rep;
  rep.name = "rates";
  rep.seed = cfg.seed;
  rep.header = {"eps", "risk_mean", "risk_stderr", "p_hat_median", "slope", "slope_stderr"};
  std::vector<double> xs, ys, ses;
  std::vector<std::vector<double>> partial;
  std::uint64_t cell = 0;
  for (double eps : cfg.eps_grid) {
    const Problem problem = Problem::sequence(target.coefficients, eps, cfg.length);
    Estimator est;
    est.kind = EstimatorKind::selected_lasso;
    est.p = cfg.length;
    const McResult mc = mc_risk(problem, est, cfg.n_rep, sub_seed(cfg.seed, cell++), cfg.threads);
    xs.push_back(std::log(eps * std::sqrt(std::log(cfg.R / eps))));
    ys.push_back(std::log(mc.risk.mean));
    ses.push_back(mc.risk.std_error / mc.risk.mean);
    partial.push_back({eps, mc.risk.mean, mc.risk.std_error, mc.median_p_hat});
  }
  const SlopeFit fit = fit_slope(xs, ys, ses);
  for (auto& row : partial) {
    row.push_back(fit.slope);
    row.push_back(fit.slope_stderr);
    rep.rows.push_back(std::move(row));
  }
  rep.summary = {{"slope", fit.slope},
                 {"slope_stderr", fit.slope_stderr},
                 {"intercept", fit.intercept},
                 {"expected_slope", 2.0 - cfg.q}};
  rep.wall_time = elapsed_since(start);
  return rep;
}

DeltaMResult delta_m_check(const Dictionary& dictionary, int m, double eps, int n_rep,
                           std::uint64_t seed, int threads) {
  if (m < 1) throw ParameterError("delta_m_check: m must be >= 1");
  if (!(eps > 0.0)) throw ParameterError("delta_m_check: eps must be > 0");
  if (n_rep < 2) throw ParameterError("delta_m_check: n_rep must be >= 2");
  const int p = dictionary.p();

  // Symmetric square root of the Gram matrix, negative eigenvalues clipped.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(dictionary.gram());
  const Eigen::VectorXd roots = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Eigen::MatrixXd root =
      eig.eigenvectors() * roots.asDiagonal() * eig.eigenvectors().transpose();
  const bool identity = root.isIdentity(1e-12);

  std::vector<double> draws(n_rep);
  const int chunk = 1000;
  const int chunks = (n_rep + chunk - 1) / chunk;
  parallel_for(chunks, threads, [&](int c) {
    Eigen::VectorXd z(p), w(p);
    for (int i = c * chunk; i < std::min(n_rep, (c + 1) * chunk); ++i) {
      RandomStream rng(seed, static_cast<std::uint64_t>(i));
      for (int j = 0; j < p; ++j) z[j] = rng.normal();
      if (identity) {
        w = z;
      } else {
        w.noalias() = root * z;
      }
      draws[i] = m * eps * w.cwiseAbs().maxCoeff();
    }
  });
  const MeanStderr ms = mean_stderr(draws);
  DeltaMResult out;
  out.mc_estimate = ms.mean;
  out.mc_stderr = ms.std_error;
  out.bound = m * eps * std::sqrt(2.0 * std::log(2.0 * p));
  out.pass = out.mc_estimate - 3.0 * out.mc_stderr <= out.bound;
  return out;
}

bool LemmaRecord::holds(double tol) const {
  return lemma82_lhs <= lemma82_rhs + tol && std::abs(lemma83_lhs - lemma83_rhs) <= tol;
}

LemmaRecord lemma_identity_checks(std::span<const double> a, double gamma) {
  if (!(gamma > 0.0)) throw ParameterError("lemma_identity_checks: gamma must be > 0");
  LemmaRecord rec;
  double count_above = 0.0;
  double tail_integral = 0.0;
  double head_integral = 0.0;
  for (double v : a) {
    const double mag = std::abs(v);
    if (mag <= gamma) rec.lemma82_lhs += v * v;
    const double capped = std::min(mag, gamma);
    head_integral += 0.5 * capped * capped;
    if (mag > gamma) {
      rec.lemma83_lhs += mag;
      count_above += 1.0;
    }
    tail_integral += std::max(mag - gamma, 0.0);
  }
  rec.lemma82_rhs = 2.0 * head_integral;
  rec.lemma83_rhs = gamma * count_above + tail_integral;
  return rec;
}

ExperimentReport lemma_sweep(int n_trials, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  if (n_trials < 1) throw ParameterError("lemma_sweep: n_trials must be >= 1");
  ExperimentReport rep;
  rep.name = "lemma-checks";
  rep.seed = seed;
  rep.header = {"trial", "gamma", "lemma82_lhs", "lemma82_rhs", "lemma83_lhs", "lemma83_rhs", "pass"};
  double all = 1.0;
  for (int t = 0; t < n_trials; ++t) {
    RandomStream rng(seed, static_cast<std::uint64_t>(t));
    const int len = 1 + static_cast<int>(rng.below(50));
    std::vector<double> a(len);
    const double scale = std::exp(4.0 * (rng.uniform() - 0.5));
    for (double& v : a) v = scale * rng.normal();
    const double gamma = std::exp(4.0 * (rng.uniform() - 0.5));
    const LemmaRecord rec = lemma_identity_checks(a, gamma);
    // Absolute tolerance 1e-12 scaled by the magnitude of the sums compared.
    const double scale83 = std::max(1.0, rec.lemma83_lhs);
    const bool pass = rec.lemma82_lhs <= rec.lemma82_rhs + 1e-12 * std::max(1.0, rec.lemma82_rhs) &&
                      std::abs(rec.lemma83_lhs - rec.lemma83_rhs) <= 1e-12 * scale83;
    if (!pass) all = 0.0;
    rep.rows.push_back({static_cast<double>(t), gamma, rec.lemma82_lhs, rec.lemma82_rhs,
                        rec.lemma83_lhs, rec.lemma83_rhs, pass ? 1.0 : 0.0});
  }
  rep.summary = {{"all_pass", all}};
  rep.wall_time = elapsed_since(start);
  return rep;
}

int greedy_packing_count(const Dictionary& dictionary, double t) {
  if (!(t > 0.0)) throw ParameterError("greedy_packing_count: t must be > 0");
  const double t2 = t * t * dictionary.n();
  std::vector<int> chosen;
  for (int j = 0; j < dictionary.p(); ++j) {
    bool far = true;
    for (int k : chosen) {
      if ((dictionary.column(j) - dictionary.column(k)).squaredNorm() < t2) {
        far = false;
        break;
      }
    }
    if (far) chosen.push_back(j);
  }
  return static_cast<int>(chosen.size());
}

ExperimentReport packing_check(std::shared_ptr<const Design> design, std::span<const double> t_grid) {
  const auto start = std::chrono::steady_clock::now();
  const Dictionary patterns = enumerate_heaviside_patterns(design);
  const double cells = std::pow(design->n() + 1.0, design->dim() + 1.0);
  ExperimentReport rep;
  rep.name = "packing";
  rep.header = {"t", "greedy_packing_count", "bound", "pass"};
  double all = 1.0;
  for (double t : t_grid) {
    const int count = greedy_packing_count(patterns, t);
    const double bound = cells * (4.0 + t) / t;
    const bool pass = count <= bound;
    if (!pass) all = 0.0;
    rep.rows.push_back({t, static_cast<double>(count), bound, pass ? 1.0 : 0.0});
  }
  rep.summary = {{"all_pass", all},
                 {"dictionary_size", static_cast<double>(patterns.p())},
                 {"hyperplane_bound", cells}};
  rep.wall_time = elapsed_since(start);
  return rep;
}

ExperimentReport minimax_hypercube_experiment(const MinimaxConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  if (cfg.n_targets < 1) throw ParameterError("minimax: n_targets must be >= 1");
  if (cfg.observe_factor < 1) throw ParameterError("minimax: observe_factor must be >= 1");
  const double u = u_param(cfg.q, cfg.r);
  ExperimentReport rep;
  rep.name = "minimax-hypercube";
  rep.seed = cfg.seed;
  rep.header = {"target", "p",         "d",           "M",         "weak_lq", "strong_lq",
                "besov",  "risk_mean", "risk_stderr", "reference", "ratio"};
  std::vector<double> ratios;
  double certified = 1.0;
  for (int t = 0; t < cfg.n_targets; ++t) {
    RandomStream target_rng(sub_seed(cfg.seed, 1000), static_cast<std::uint64_t>(t));
    const TargetSpec target = hypercube_target(cfg.q, cfg.r, cfg.R, cfg.eps, target_rng);
    const auto& c = target.certificates;
    if (c.strong_lq > cfg.R * (1 + 1e-12) || c.besov > cfg.R * (1 + 1e-12)) certified = 0.0;
    const int observed = cfg.observe_factor * target.cube_p;
    const Problem problem = Problem::sequence(target.coefficients, cfg.eps, observed);
    Estimator est;
    est.kind = EstimatorKind::selected_lasso;
    est.p = observed;
    const McResult mc =
        mc_risk(problem, est, cfg.n_rep, sub_seed(cfg.seed, static_cast<std::uint64_t>(t)), cfg.threads);
    const double reference = std::pow(u, 1.0 - cfg.q / 2.0) * std::pow(cfg.R, cfg.q) *
                             std::pow(cfg.eps * std::sqrt(std::log(cfg.R / cfg.eps)), 2.0 - cfg.q);
    const double ratio = mc.risk.mean / reference;
    ratios.push_back(ratio);
    rep.rows.push_back({static_cast<double>(t), static_cast<double>(target.cube_p),
                        static_cast<double>(target.cube_d), target.cube_m, c.weak_lq, c.strong_lq,
                        c.besov, mc.risk.mean, mc.risk.std_error, reference, ratio});
  }
  const MeanStderr summary = mean_stderr(ratios);
  rep.summary = {{"ratio_mean", summary.mean},
                 {"ratio_stderr", summary.std_error},
                 {"u", u},
                 {"all_certified", certified}};
  rep.wall_time = elapsed_since(start);
  return rep;
}

}  // namespace dyadic_lasso
