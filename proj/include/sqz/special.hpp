#pragma once

#include <Eigen/Dense>

namespace sqz {

/// Gauss hypergeometric 2F1(a, b; c; x) by its power series, |x| < 1.
/// Summation stops once a term falls below rel_tol times the partial sum and
/// the remaining terms are bounded geometrically. Throws SeriesDivergence for
/// |x| >= 1 or when max_terms is exhausted.
double hyp2f1_series(double a, double b, double c, double x, double rel_tol = 1e-16,
                     int max_terms = 1000000);

/// exp(log_scale) * 2F1(1+n, 1+n; 1; x) for 0 <= x < 1, evaluated with the
/// prefactor folded into every term so that large n neither overflows nor
/// loses the leading terms.
double scaled_hyp2f1_diagonal(int n, double x, double log_scale, double rel_tol = 1e-16);

/// Binomial loss kernel: K(k, n) = C(k, n) eta^n (1 - eta)^(k - n), the
/// probability of n counts from k photons, for 0 <= n, k < dim. Built by the
/// Pascal recurrence so eta = 1 gives the identity exactly.
Eigen::MatrixXd binomial_loss_kernel(double eta, int dim);

}  // namespace sqz
