#pragma once

#include <complex>

#include <Eigen/Dense>

namespace sqz {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Complex squeezing parameter gamma = magnitude * exp(i * phase).
///
/// The magnitude is nonnegative and the phase is kept in [0, 2pi). A signed
/// real parameter maps onto phase 0 or pi.
class SqueezeParam {
 public:
  SqueezeParam() = default;
  explicit SqueezeParam(double magnitude, double phase = 0.0);

  static SqueezeParam from_complex(Complex gamma);
  static SqueezeParam real(double x);

  double magnitude() const { return magnitude_; }
  double phase() const { return phase_; }
  Complex value() const;
  SqueezeParam negated() const;

 private:
  double magnitude_ = 0.0;
  double phase_ = 0.0;
};

/// True when the two parameters lie on one line through the origin, i.e. their
/// phases agree modulo pi (real parameters of either sign). A zero magnitude
/// carries no phase and matches anything.
bool same_phase(const SqueezeParam& a, const SqueezeParam& b);

/// Fock cutoff: basis {|0>, ..., |n_max>} and the probability mass allowed to
/// fall beyond it.
class Truncation {
 public:
  Truncation(int n_max, double tail_tol);

  int n_max() const { return n_max_; }
  int dim() const { return n_max_ + 1; }
  double tail_tol() const { return tail_tol_; }

  Truncation with_n_max(int n_max) const { return Truncation(n_max, tail_tol_); }

 private:
  int n_max_;
  double tail_tol_;
};

/// Truncated single-mode operator in the number basis.
class FockOperator {
 public:
  explicit FockOperator(ComplexMatrix elements);

  int dim() const { return static_cast<int>(elements_.rows()); }
  const ComplexMatrix& elements() const { return elements_; }
  Complex operator()(int h, int k) const { return elements_(h, k); }

 private:
  ComplexMatrix elements_;
};

/// Two-mode pure state amps(h, k) = <h|<k|Psi> on the truncated grid.
class JointFockState {
 public:
  explicit JointFockState(ComplexMatrix amps);

  int dim() const { return static_cast<int>(amps_.rows()); }
  const ComplexMatrix& amps() const { return amps_; }
  Complex operator()(int h, int k) const { return amps_(h, k); }
  /// 1 - sum |d_hk|^2 over the grid.
  double norm_deficit() const { return norm_deficit_; }

 private:
  ComplexMatrix amps_;
  double norm_deficit_;
};

/// exp(i arg gamma) * tanh|gamma|.
Complex lambda(const SqueezeParam& gamma);

/// Exact matrix elements <h|S(gamma)|m> for 0 <= h < rows, 0 <= m < cols.
/// No cutoff is involved: every returned element is the untruncated value.
ComplexMatrix squeeze_elements(const SqueezeParam& gamma, int rows, int cols);

/// [S(gamma)]_{hk} on the truncated basis. Throws TruncationTooSmall when the
/// squeezed vacuum (column 0) loses more than tail_tol beyond n_max.
FockOperator squeeze_matrix(const SqueezeParam& gamma, const Truncation& trunc);

/// S(gamma)|0>; only even entries are populated.
ComplexVector squeezed_vacuum(const SqueezeParam& gamma, const Truncation& trunc);

/// Two-mode squeezed vacuum sqrt(1-|l|^2) sum l^n |n>|n>, l = lambda(gamma).
JointFockState twb_state(const SqueezeParam& gamma, const Truncation& trunc);

/// Output of the comparator interferometer for inputs S(xi)|0>, S(zeta)|0>
/// with collinear squeezing parameters (see same_phase):
///   d_hk = sqrt(1-|l+|^2) sum_n l+^n [S(r-)]_hn [S(r-)]_kn,
/// r+- = (xi +- zeta)/2, l+ = lambda(r+). Throws PhaseMismatch for unequal
/// phases and TruncationTooSmall when the grid misses more than tail_tol.
JointFockState output_state(const SqueezeParam& xi, const SqueezeParam& zeta,
                            const Truncation& trunc);

/// |d_hk|^2.
double joint_prob(const JointFockState& state, int h, int k);

/// Chernoff upper bound on P(N_a + N_b > n_max) for the input pair
/// S(r)|0> (x) S(s)|0>. The interferometer conserves total photon number, so
/// this also bounds the output mass outside the (n_max+1)^2 grid.
double photon_tail_bound(double r, double s, int n_max);

/// Smallest even cutoff whose photon_tail_bound stays below tail_tol / 2.
Truncation recommended_truncation(double r, double s, double tail_tol);

namespace detail {

/// Factored form of the output state, used by probability routines that do
/// not need the full amplitude grid.
struct OutputFactors {
  Complex lambda_plus;
  double norm;              // sqrt(1 - |lambda_plus|^2)
  ComplexMatrix s_minus;    // [S(r-)]_{hn}, rows 0..n_max, columns 0..terms-1
  double dropped_amplitude; // |lambda_plus|^terms, norm of the omitted TWB tail
};

/// Keeps at least min_terms twin-beam terms (default: the grid dimension,
/// which makes r- = 0 reproduce twb_state exactly).
OutputFactors output_factors(const SqueezeParam& xi, const SqueezeParam& zeta,
                             const Truncation& trunc, int min_terms = -1);

/// d = norm * S diag(lambda_plus^n) S^T on the (n_max+1)^2 grid.
ComplexMatrix assemble_amplitudes(const OutputFactors& f);

}  // namespace detail

}  // namespace sqz
