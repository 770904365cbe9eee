#include "sqz/special.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sqz/errors.hpp"

namespace sqz {

double hyp2f1_series(double a, double b, double c, double x, double rel_tol, int max_terms) {
  if (!(std::abs(x) < 1.0)) {
    throw SeriesDivergence("2F1 power series needs |x| < 1, got x = " + num(x));
  }
  double term = 1.0;
  double sum = 1.0;
  for (int j = 0; j < max_terms; ++j) {
    const double jd = static_cast<double>(j);
    const double ratio = (a + jd) * (b + jd) / ((c + jd) * (jd + 1.0)) * x;
    term *= ratio;
    sum += term;
    if (term == 0.0) return sum;
    // Once the ratio has settled below one the tail is at most term * q / (1 - q).
    const double next = std::abs((a + jd + 1.0) * (b + jd + 1.0) / ((c + jd + 1.0) * (jd + 2.0)) * x);
    if (next < 1.0 && std::abs(term) * next / (1.0 - next) <= rel_tol * std::abs(sum)) {
      return sum;
    }
  }
  throw SeriesDivergence("2F1 series did not converge in " + std::to_string(max_terms) + " terms");
}

double scaled_hyp2f1_diagonal(int n, double x, double log_scale, double rel_tol) {
  if (n < 0) throw DomainError("2F1 diagonal index must be nonnegative");
  if (!(x >= 0.0 && x < 1.0)) {
    throw SeriesDivergence("2F1(1+n,1+n;1;x) series needs 0 <= x < 1, got " + num(x));
  }
  if (x == 0.0) return std::exp(log_scale);

  const double log_x = std::log(x);
  const double n1 = n + 1.0;
  double log_term = log_scale;
  double sum = 0.0;
  for (long j = 0;; ++j) {
    const double term = std::exp(log_term);
    sum += term;
    // term ratio ((n+1+j)/(j+1))^2 x, decreasing in j
    const double q = (n1 + j) / (j + 1.0);
    const double ratio = q * q * x;
    if (ratio < 1.0 && term * ratio / (1.0 - ratio) <= rel_tol * sum) break;
    if (sum == 0.0 && ratio < 1.0 && log_term < -800.0) break;
    log_term += 2.0 * std::log(q) + log_x;
    if (j > 100000000L) throw SeriesDivergence("2F1 diagonal series did not converge");
  }
  return sum;
}

Eigen::MatrixXd binomial_loss_kernel(double eta, int dim) {
  if (!(eta > 0.0 && eta <= 1.0)) throw DomainError("efficiency must lie in (0, 1]");
  if (dim < 1) throw DomainError("kernel dimension must be positive");
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(dim, dim);
  k(0, 0) = 1.0;
  const double loss = 1.0 - eta;
  for (int row = 1; row < dim; ++row) {
    k(row, 0) = loss * k(row - 1, 0);
    for (int n = 1; n <= row; ++n) {
      k(row, n) = eta * k(row - 1, n - 1) + loss * k(row - 1, n);
    }
  }
  return k;
}

}  // namespace sqz
