#include "dyadic_lasso/selection.hpp"

#include <cmath>
#include <exception>
#include <thread>

namespace dyadic_lasso {

double lambda_p(int p, double eps) {
  if (p < 1) throw ParameterError("lambda_p: p must be >= 1");
  if (!(eps > 0.0)) throw ParameterError("lambda_p: eps must be > 0");
  return 4.0 * eps * (std::sqrt(std::log(static_cast<double>(p))) + 1.0);
}

double pen_p(int p, double eps) {
  if (p < 1) throw ParameterError("pen_p: p must be >= 1");
  if (!(eps > 0.0)) throw ParameterError("pen_p: eps must be > 0");
  return 5.0 * eps * eps * std::log(static_cast<double>(p));
}

double lambda_nn(int n, int d, double sigma) {
  if (n < 1 || d < 1) throw ParameterError("lambda_nn: n and d must be >= 1");
  if (!(sigma > 0.0)) throw ParameterError("lambda_nn: sigma must be > 0");
  const double log_count = (d + 1) * std::log(n + 1.0);
  return 28.0 * sigma / std::sqrt(static_cast<double>(n)) * (std::sqrt(log_count) + 4.0);
}

std::size_t argmin_level(const std::vector<LevelRecord>& per_level) {
  if (per_level.empty()) throw ParameterError("argmin_level: no levels");
  std::size_t best = 0;
  for (std::size_t k = 1; k < per_level.size(); ++k) {
    const auto& a = per_level[k];
    const auto& b = per_level[best];
    if (a.criterion < b.criterion || (a.criterion == b.criterion && a.p < b.p)) best = k;
  }
  return best;
}

SelectionTrace selected_lasso(const Dictionary& dictionary, const SampleVector& y, double eps,
                              int p_max, const SelectionOptions& options) {
  if (!(eps > 0.0)) throw ParameterError("selected_lasso: eps must be > 0");
  if (p_max < 1 || p_max > dictionary.p()) {
    throw ParameterError("selected_lasso: p_max = " + std::to_string(p_max) +
                         " exceeds the dictionary size " + std::to_string(dictionary.p()));
  }
  SelectionTrace trace;
  trace.levels = dyadic_levels(p_max);
  trace.per_level.resize(trace.levels.size());

  auto fit_level = [&](std::size_t k, const Coefficients* warm) {
    LevelRecord& rec = trace.per_level[k];
    rec.p = trace.levels[k];
    rec.lambda = options.lambda_multiplier * lambda_p(rec.p, eps);
    rec.pen = options.pen_multiplier * pen_p(rec.p, eps);
    SolverOptions so = options.solver;
    if (warm) so.warm_start = *warm;
    try {
      rec.fit = lasso_cd(truncate(dictionary, rec.p), y, rec.lambda, so);
    } catch (const NonConvergenceError& e) {
      throw NonConvergenceError(e.best(), "selected_lasso level p = " + std::to_string(rec.p) +
                                              ": " + e.what());
    }
    rec.gamma = (y - rec.fit.fitted).squaredNorm() / y.size();
    rec.criterion = rec.gamma + rec.lambda * rec.fit.l1_norm() + rec.pen;
  };

  const std::size_t count = trace.levels.size();
  if (options.threads > 1 && count > 1) {
    std::vector<std::exception_ptr> errors(count);
    std::vector<std::thread> pool;
    const std::size_t workers = std::min<std::size_t>(options.threads, count);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t k = w; k < count; k += workers) {
          try {
            fit_level(k, nullptr);
          } catch (...) {
            errors[k] = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  } else {
    for (std::size_t k = 0; k < count; ++k) {
      const Coefficients* warm =
          (options.warm_start && k > 0) ? &trace.per_level[k - 1].fit.theta : nullptr;
      fit_level(k, warm);
    }
  }

  trace.chosen = argmin_level(trace.per_level);
  trace.p_hat = trace.per_level[trace.chosen].p;
  return trace;
}

SelectionTrace selected_soft_threshold(const Coefficients& y_coeffs, double eps, int p_max,
                                       double lambda_multiplier, double pen_multiplier) {
  if (!(eps > 0.0)) throw ParameterError("selected_soft_threshold: eps must be > 0");
  if (p_max < 1 || p_max > y_coeffs.size()) {
    throw ParameterError("selected_soft_threshold: p_max outside [1, number of coefficients]");
  }
  const Coefficients y = y_coeffs.head(p_max);
  SelectionTrace trace;
  trace.levels = dyadic_levels(p_max);
  for (int p : trace.levels) {
    LevelRecord rec;
    rec.p = p;
    rec.lambda = lambda_multiplier * lambda_p(p, eps);
    rec.pen = pen_multiplier * pen_p(p, eps);
    rec.fit.lambda = rec.lambda;
    rec.fit.theta = soft_threshold_fit(y.head(p), rec.lambda);
    rec.fit.fitted = Coefficients::Zero(p_max);
    rec.fit.fitted.head(p) = rec.fit.theta;
    rec.gamma = (y - rec.fit.fitted).squaredNorm();
    rec.fit.objective = rec.gamma + rec.lambda * rec.fit.l1_norm();
    rec.criterion = rec.gamma + rec.lambda * rec.fit.l1_norm() + rec.pen;
    trace.per_level.push_back(std::move(rec));
  }
  trace.chosen = argmin_level(trace.per_level);
  trace.p_hat = trace.per_level[trace.chosen].p;
  return trace;
}

}  // namespace dyadic_lasso
