#pragma once

#include <Eigen/Dense>

#include "sqz/fock.hpp"

namespace sqz {

/// Two-mode covariance matrix, quadrature order (q1, p1, q2, p2), vacuum = 1/2.
using CovMat = Eigen::Matrix4d;
using Symplectic2 = Eigen::Matrix2d;
using Symplectic4 = Eigen::Matrix4d;

/// Block-diagonal [[0, 1], [-1, 0]] per mode.
Symplectic4 symplectic_form();

/// diag(e^r, e^-r).
Symplectic2 sympl_squeeze(double r);

/// (1/sqrt2) [[1, -1], [1, 1]] in mode blocks.
Symplectic4 sympl_bs();

/// Local squeezers diag(S(x), S(y)).
Symplectic4 sympl_local(double x, double y);

/// S sigma S^T.
CovMat transform(const Symplectic4& s, const CovMat& sigma);

CovMat vacuum_cov();

/// Output covariance for inputs squeezed by r and s (the second one phase
/// shifted to -s), from the closed form with
///   f(x, y) = (e^2x + e^2y) / 2,  g(x, y) = (e^2x - e^2y) / 2.
CovMat sigma_out(double r, double s);

/// S_BS LS(r, -s) sigma0 LS^T S_BS^T, composed numerically.
CovMat sigma_out_composed(double r, double s);

/// LS(r-, r-) S2(r+) sigma0 S2^T LS^T with S2(x) = S_BS LS(x, -x).
CovMat sigma_prime(double r, double s);

/// max |S Omega S^T - Omega|.
double symplectic_defect(const Symplectic4& s);

/// Smallest eigenvalue of sigma + (i/2) Omega.
double uncertainty_margin(const CovMat& sigma);

/// Second moments of a two-mode Fock state on its grid, same ordering.
CovMat fock_covariance(const JointFockState& state);

struct CrosscheckReport {
  CovMat gaussian;
  CovMat fock;
  double max_deviation = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

/// Compares fock_covariance(output_state(r, s)) with sigma_out(r, s);
/// passes when the largest deviation is <= 100 tail_tol. Negative r or s
/// squeeze along the other axis (phase pi).
CrosscheckReport crosscheck_fock(double r, double s, const Truncation& trunc);

}  // namespace sqz
