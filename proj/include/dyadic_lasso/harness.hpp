#pragma once

// Monte Carlo verification of the risk bounds and exact checks of the
// proof-level inequalities.
//
// Replication i of an experiment always draws from RandomStream(seed, i), and
// aggregates are summed in replication order, so results do not depend on the
// number of worker threads.

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dyadic_lasso/oracle_spaces.hpp"
#include "dyadic_lasso/selection.hpp"

namespace dyadic_lasso {

/// Columns of a result table plus scalar summaries. Rows hold numbers only;
/// flags are 0/1.
struct ExperimentReport {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, double>> summary;
  std::uint64_t seed = 0;
  double wall_time = 0.0;

  double summary_value(const std::string& key) const;
};

struct MeanStderr {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Sample mean and standard error (n - 1 denominator), summed pairwise in
/// index order.
MeanStderr mean_stderr(std::span<const double> values);
double median(std::vector<double> values);

/// Runs body(i) for i in [0, count) on up to `threads` workers. The first
/// exception (lowest index) is rethrown after all workers stop.
void parallel_for(int count, int threads, const std::function<void(int)>& body);

/// A statistical setting: either the Gaussian sequence model (observed
/// coefficients y_j = theta*_j + eps xi_j, j = 1..p_obs) or fixed-design
/// regression y = f + sigma xi with a dictionary on the design.
struct Problem {
  std::shared_ptr<const Dictionary> dictionary;  // null in the sequence model
  Coefficients theta_star;                       // sequence model target
  SampleVector f_on_design;                      // regression target
  double eps = 0.0;
  double sigma = 0.0;
  int p_obs = 0;

  static Problem sequence(Coefficients theta_star, double eps, int p_obs);
  static Problem regression(std::shared_ptr<const Dictionary> dictionary, SampleVector f,
                            double sigma);
  bool is_sequence() const { return dictionary == nullptr; }
  int max_level() const { return is_sequence() ? p_obs : dictionary->p(); }
};

enum class EstimatorKind { lasso, selected_lasso, soft_threshold };

struct Estimator {
  EstimatorKind kind = EstimatorKind::lasso;
  /// Truncation level for lasso / soft_threshold, p_max for selected_lasso.
  int p = 1;
  /// Explicit lambda for lasso / soft_threshold; <= 0 uses multiplier * lambda_p(p, eps).
  double lambda = 0.0;
  double lambda_multiplier = 1.0;
  SolverOptions solver;
};

struct ReplicationOutcome {
  double sq_error = 0.0;  // ||f - f_hat||^2
  double l1_term = 0.0;   // lambda ||theta_hat||_1 at the used level
  double pen = 0.0;       // pen(p_hat) for the selected Lasso, else 0
  int p_hat = 0;
  int support = 0;
  double l1_norm = 0.0;
  /// Selected Lasso only: ||f - f_p||^2 + lambda_p ||theta_p||_1 + pen(p) per level.
  std::vector<double> level_loss;
};

ReplicationOutcome replicate(const Problem& problem, const Estimator& estimator,
                             RandomStream& rng);

struct McResult {
  std::vector<ReplicationOutcome> replications;
  MeanStderr risk;  // of sq_error
  MeanStderr loss;  // of sq_error + l1_term + pen
  double mean_l1 = 0.0;
  double mean_p_hat = 0.0;
  double median_p_hat = 0.0;
  double mean_support = 0.0;
};

/// Errors from replication i are rethrown prefixed with "replication i".
McResult mc_risk(const Problem& problem, const Estimator& estimator, int n_rep,
                 std::uint64_t seed, int threads = 1);

/// L_{D_p}(f, lambda) for the problem's target; in the sequence model the
/// target's coefficients past p contribute their squared norm.
DeterministicLasso oracle_value(const Problem& problem, int p, double lambda,
                                const SolverOptions& options = {});

/// Builds a problem at noise level eps (the harness sweeps eps).
using ProblemFactory = std::function<Problem(double eps)>;

enum class LambdaRule { schedule, neural };

struct RatioConfig {
  ProblemFactory make_problem;
  std::vector<int> p_grid;
  std::vector<double> eps_grid;
  int n_rep = 200;
  std::uint64_t seed = 1;
  double lambda_multiplier = 1.0;
  /// schedule: lambda_p(p, eps); neural: lambda_nn(n, d, sigma) over the whole dictionary.
  LambdaRule rule = LambdaRule::schedule;
  SolverOptions solver;
  int threads = 1;
};

/// E[||f - f_hat_p||^2 + lambda_p ||f_hat_p||_1] / (L_{D_p}(f, lambda_p) + lambda_p eps)
/// per (p, eps). Columns:
/// p,eps,lambda,numerator_mean,numerator_stderr,denominator,ratio,ratio_stderr,risk_mean,risk_stderr
ExperimentReport oracle_ratio_experiment(const RatioConfig& config);

struct SelectedConfig {
  ProblemFactory make_problem;
  int p_max = 64;
  std::vector<double> eps_grid;
  int n_rep = 200;
  std::uint64_t seed = 1;
  double lambda_multiplier = 1.0;
  SolverOptions solver;
  int threads = 1;
};

/// E[||f - f_hat||^2 + lambda_phat ||f_hat||_1 + pen(phat)] divided by
/// min_p (L_{D_p}(f, lambda_p) + pen(p)) + eps^2, with the adaptivity check
/// against the best single level. Columns:
/// eps,numerator_mean,numerator_stderr,denominator,ratio,ratio_stderr,risk_mean,risk_stderr,
/// p_hat_median,p_hat_mean,best_level,best_level_loss,best_level_stderr,adaptive_pass
ExperimentReport selected_oracle_experiment(const SelectedConfig& config);

struct RatesConfig {
  double q = 1.5;
  double r = 0.1;
  double R = 1.0;
  std::vector<double> eps_grid;
  int length = 4096;  // target length = number of observed coefficients
  int n_rep = 200;
  std::uint64_t seed = 1;
  int threads = 1;
};

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
};

/// Unweighted least squares of y on x; slope stderr by the delta method from
/// the per-point standard errors of y.
SlopeFit fit_slope(std::span<const double> x, std::span<const double> y,
                   std::span<const double> y_stderr);

/// Selected-Lasso risk on a power-law target in the sequence model and the
/// log-log slope against eps sqrt(ln(R / eps)). Columns:
/// eps,risk_mean,risk_stderr,p_hat_median,slope,slope_stderr
ExperimentReport rates_experiment(const RatesConfig& config);

struct DeltaMResult {
  double mc_estimate = 0.0;
  double mc_stderr = 0.0;
  double bound = 0.0;
  bool pass = false;
};

/// E[sup over the l1-ball of radius m eps of W] = m eps E[max_j |W(phi_j)|] with
/// W(phi) ~ N(0, Gram), against m eps sqrt(2 ln(2p)).
DeltaMResult delta_m_check(const Dictionary& dictionary, int m, double eps, int n_rep,
                           std::uint64_t seed, int threads = 1);

struct LemmaRecord {
  double lemma82_lhs = 0.0;
  double lemma82_rhs = 0.0;
  double lemma83_lhs = 0.0;
  double lemma83_rhs = 0.0;
  bool holds(double tol = 1e-12) const;
};

/// sum a_j^2 1{|a_j| <= g} <= 2 sum int_0^g t 1{|a_j| > t} dt and
/// sum |a_j| 1{|a_j| > g} = g sum 1{|a_j| > g} + sum int_g^inf 1{|a_j| > t} dt,
/// with the integrals in closed form.
LemmaRecord lemma_identity_checks(std::span<const double> a, double gamma);

/// Random (a, gamma) sweep. Columns:
/// trial,gamma,lemma82_lhs,lemma82_rhs,lemma83_lhs,lemma83_rhs,pass
ExperimentReport lemma_sweep(int n_trials, std::uint64_t seed);

/// Greedy maximal t-packing of the unnormalized Heaviside patterns against
/// (n + 1)^{d + 1} (4 + t) / t. Columns: t,greedy_packing_count,bound,pass
ExperimentReport packing_check(std::shared_ptr<const Design> design,
                               std::span<const double> t_grid);
int greedy_packing_count(const Dictionary& dictionary, double t);

struct MinimaxConfig {
  double q = 1.5;
  double r = 0.1;
  double R = 1.0;
  double eps = 0.01;
  int n_targets = 4;
  int n_rep = 50;
  /// Observed coefficients = factor * cube dimension p.
  int observe_factor = 2;
  std::uint64_t seed = 1;
  int threads = 1;
};

/// Selected-Lasso risk on random hypercube vertices, divided by
/// u^{1-q/2} R^q (eps sqrt(ln(R / eps)))^{2-q}. Columns:
/// target,p,d,M,weak_lq,strong_lq,besov,risk_mean,risk_stderr,reference,ratio
ExperimentReport minimax_hypercube_experiment(const MinimaxConfig& config);

}  // namespace dyadic_lasso
