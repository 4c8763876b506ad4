#pragma once

#include <cstddef>
#include <limits>

#include <Eigen/Dense>

namespace ovqite {

/// Relative singular-value cutoff: modes below sigma_max * rcond are dropped.
struct PinvConfig {
  double rcond = 1e-6;
};

struct SolveReport {
  Eigen::VectorXd singular_values;  // descending
  std::size_t kept = 0;
  double residual = 0.0;  // ||A x - b||
};

struct PinvResult {
  Eigen::VectorXd x;
  SolveReport report;
};

/// Truncated-SVD least-squares solve of A x = b.
PinvResult pinv_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, PinvConfig cfg);

/// Linear model b = A x with Gaussian noise on both b and A.
///
/// omega_a is the covariance of the entries of A flattened row-major: entry
/// (i*k + m, j*k + l) is Cov(A_im, A_jl) for an m x k design.
struct EivProblem {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  Eigen::MatrixXd omega_b;
  Eigen::MatrixXd omega_a;
  /// Prior variance of x ~ N(0, lambda I); infinity disables the prior.
  double lambda = std::numeric_limits<double>::infinity();
};

/// Omega_D = Omega_B + x^T Omega_A x, contracted on the column indices of A.
Eigen::MatrixXd eiv_residual_covariance(const EivProblem& p, const Eigen::VectorXd& x);

/// log N(b - A x; 0, Omega_D) - ||x||^2 / (2 lambda).
double eiv_log_likelihood(const EivProblem& p, const Eigen::VectorXd& x);
Eigen::VectorXd eiv_gradient(const EivProblem& p, const Eigen::VectorXd& x);

struct EivOptions {
  std::size_t max_iters = 500;
  double tol = 1e-8;
  double initial_step = 1.0;
  double shrink = 0.5;
  double armijo = 1e-4;
};

struct EivResult {
  Eigen::VectorXd x;
  std::size_t iterations = 0;
  double gradient_norm = 0.0;
  double log_likelihood = 0.0;
};

/// Gradient ascent on the log-likelihood from x = 0 with backtracking.
EivResult eiv_solve(const EivProblem& p, const EivOptions& options = {});

}  // namespace ovqite
