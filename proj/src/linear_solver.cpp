#include "ovqite/linear_solver.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "ovqite/errors.hpp"

namespace ovqite {

PinvResult pinv_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, PinvConfig cfg) {
  if (a.rows() == 0 || a.cols() == 0) throw DimensionError("empty matrix");
  if (a.rows() != b.size()) throw DimensionError("matrix rows and right-hand side differ");
  if (!(cfg.rcond > 0.0 && cfg.rcond < 1.0)) throw ValidationError("rcond must lie in (0, 1)");

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double threshold = sv.size() > 0 ? sv(0) * cfg.rcond : 0.0;

  Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
  std::size_t kept = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > 0.0 && sv(i) >= threshold) {
      inv(i) = 1.0 / sv(i);
      ++kept;
    }
  }
  PinvResult out;
  out.x = svd.matrixV() * (inv.asDiagonal() * (svd.matrixU().transpose() * b));
  out.report.singular_values = sv;
  out.report.kept = kept;
  out.report.residual = (a * out.x - b).norm();
  return out;
}

namespace {

void check_problem(const EivProblem& p, const Eigen::VectorXd& x) {
  const auto m = p.a.rows();
  const auto k = p.a.cols();
  if (p.b.size() != m || x.size() != k || p.omega_b.rows() != m || p.omega_b.cols() != m ||
      p.omega_a.rows() != m * k || p.omega_a.cols() != m * k) {
    throw DimensionError("error-in-variables problem has inconsistent shapes");
  }
  if (!(p.lambda > 0.0)) throw ValidationError("prior variance must be positive");
}

struct Factored {
  Eigen::LLT<Eigen::MatrixXd> llt;
  Eigen::VectorXd d;
};

Factored factor(const EivProblem& p, const Eigen::VectorXd& x) {
  Factored f{Eigen::LLT<Eigen::MatrixXd>(eiv_residual_covariance(p, x)), p.b - p.a * x};
  if (f.llt.info() != Eigen::Success) {
    throw SolverError("residual covariance is not positive definite");
  }
  return f;
}

}  // namespace

Eigen::MatrixXd eiv_residual_covariance(const EivProblem& p, const Eigen::VectorXd& x) {
  check_problem(p, x);
  const auto m = p.a.rows();
  const auto k = p.a.cols();
  Eigen::MatrixXd cov = p.omega_b;
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      cov(i, j) += x.dot(p.omega_a.block(i * k, j * k, k, k) * x);
  return cov;
}

double eiv_log_likelihood(const EivProblem& p, const Eigen::VectorXd& x) {
  const Factored f = factor(p, x);
  const auto m = static_cast<double>(p.a.rows());
  const Eigen::VectorXd w = f.llt.solve(f.d);
  const Eigen::MatrixXd l = f.llt.matrixL();
  const double log_det = 2.0 * l.diagonal().array().log().sum();
  double ll = -0.5 * f.d.dot(w) - 0.5 * log_det - 0.5 * m * std::log(2.0 * std::numbers::pi);
  if (std::isfinite(p.lambda)) ll -= x.squaredNorm() / (2.0 * p.lambda);
  return ll;
}

Eigen::VectorXd eiv_gradient(const EivProblem& p, const Eigen::VectorXd& x) {
  const Factored f = factor(p, x);
  const auto m = p.a.rows();
  const auto k = p.a.cols();
  const Eigen::VectorXd w = f.llt.solve(f.d);  // Omega_D^{-1} d
  const Eigen::MatrixXd inv = f.llt.solve(Eigen::MatrixXd::Identity(m, m));

  Eigen::VectorXd grad(k);
  for (Eigen::Index s = 0; s < k; ++s) {
    // dOmega_D/dx_s (i,j) = sum_l x_l Cov(A_is, A_jl) + sum_m x_m Cov(A_im, A_js)
    Eigen::MatrixXd dcov(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index j = 0; j < m; ++j) {
        double acc = 0.0;
        for (Eigen::Index l = 0; l < k; ++l) {
          acc += x(l) * p.omega_a(i * k + s, j * k + l);
          acc += x(l) * p.omega_a(i * k + l, j * k + s);
        }
        dcov(i, j) = acc;
      }
    }
    // d(Ax)/dx_s is column s of A.
    double g = p.a.col(s).dot(w);
    g += 0.5 * w.dot(dcov * w);
    g -= 0.5 * (inv * dcov).trace();
    if (std::isfinite(p.lambda)) g -= x(s) / p.lambda;
    grad(s) = g;
  }
  return grad;
}

EivResult eiv_solve(const EivProblem& p, const EivOptions& options) {
  EivResult r;
  r.x = Eigen::VectorXd::Zero(p.a.cols());
  {
    Eigen::LLT<Eigen::MatrixXd> llt(p.omega_b);
    if (llt.info() != Eigen::Success) throw SolverError("Omega_B is not positive definite");
  }
  r.log_likelihood = eiv_log_likelihood(p, r.x);
  Eigen::VectorXd g = eiv_gradient(p, r.x);
  r.gradient_norm = g.norm();
  double last_step = options.initial_step;
  while (r.iterations < options.max_iters && r.gradient_norm > options.tol) {
    double step = std::max(options.initial_step, 2.0 * last_step);
    bool accepted = false;
    for (int attempt = 0; attempt < 60; ++attempt, step *= options.shrink) {
      const Eigen::VectorXd trial = r.x + step * g;
      double ll = -std::numeric_limits<double>::infinity();
      try {
        ll = eiv_log_likelihood(p, trial);
      } catch (const SolverError&) {
        continue;  // left the positive-definite region; shrink
      }
      if (ll >= r.log_likelihood + options.armijo * step * g.squaredNorm()) {
        r.x = trial;
        r.log_likelihood = ll;
        last_step = step;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      // Converged to round-off: no representable step improves the objective.
      if (r.gradient_norm < 1e3 * options.tol) break;
      std::ostringstream os;
      os << "line search failed at iteration " << r.iterations
         << " (gradient norm " << r.gradient_norm << ", log-likelihood " << r.log_likelihood
         << ")";
      throw SolverError(os.str());
    }
    ++r.iterations;
    g = eiv_gradient(p, r.x);
    r.gradient_norm = g.norm();
  }
  return r;
}

}  // namespace ovqite
