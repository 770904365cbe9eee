#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sqz/fock.hpp"

namespace sqz {

/// Detector quantum efficiency, 0 < eta <= 1. Both detectors share it.
class Efficiency {
 public:
  explicit Efficiency(double eta);

  double value() const { return eta_; }
  bool ideal() const { return eta_ == 1.0; }

 private:
  double eta_;
};

/// Operator diagonal in the joint number basis, weights w(h, k) in [0, 1].
class PovmElement {
 public:
  explicit PovmElement(Eigen::MatrixXd weights);

  int dim() const { return static_cast<int>(weights_.rows()); }
  const Eigen::MatrixXd& weights() const { return weights_; }
  double operator()(int h, int k) const { return weights_(h, k); }

  /// 1 - w elementwise.
  PovmElement complement() const;

 private:
  Eigen::MatrixXd weights_;
};

/// "Same" (E0) and "different" (ED) outcomes of the comparison.
struct PovmPair {
  PovmElement zero;
  PovmElement diff;
};

struct ComparisonResult {
  double p_zero = 0.0;
  double p_diff = 0.0;
  /// Upper bound on the probability mass the truncated grid cannot see.
  double truncation_bound = 0.0;
};

/// E0 = sum_n |n,n><n,n|, ED = 1 - E0.
PovmPair ideal_povm(const Truncation& trunc);

/// Weights of the lossy n-count projector on |k>, k = 0..n_max.
Eigen::VectorXd single_detector_povm(int n, Efficiency eta, const Truncation& trunc);

/// E0(eta) = sum_n Pi_n(eta) (x) Pi_n(eta) and its complement. eta = 1 gives
/// ideal_povm bit for bit.
PovmPair smeared_povm(Efficiency eta, const Truncation& trunc);

/// <Psi|E|Psi> for both elements of the pair on the state's grid.
ComparisonResult evaluate(const JointFockState& state, const PovmPair& povm);

/// Ideal detectors. p_zero = sum_h |d_hh|^2, p_diff the remaining grid mass.
ComparisonResult p_zero(const SqueezeParam& xi, const SqueezeParam& zeta, const Truncation& trunc);

/// Lossy detectors, contracting |d_hk|^2 with the smeared weights.
ComparisonResult p_zero_eta(const SqueezeParam& xi, const SqueezeParam& zeta, Efficiency eta,
                            const Truncation& trunc);

/// Same, reusing a precomputed smeared POVM (its dim must match trunc).
ComparisonResult p_zero_eta(const SqueezeParam& xi, const SqueezeParam& zeta,
                            const PovmPair& povm, const Truncation& trunc);

/// p_eta(0 | r, r) in closed form as a series over 2F1(1+n, 1+n; 1; x).
/// Summation continues until the remaining mass is below 1e-14 or n_max is
/// reached; TruncationTooSmall if the remainder then still exceeds tail_tol.
double p_eta_same(double r, Efficiency eta, const Truncation& trunc);

/// 1 - 2 eta (1 - eta) r^2.
double small_r_approx(double r, Efficiency eta);

/// |<r|s>| = (cosh delta_minus)^(-1/2).
double overlap(double delta_minus);

/// (1 - omega^2) / 2, the universal comparator.
double p_universal(double omega);

/// (1 - omega^2) / (1 + omega^2), comparison between two known squeezings.
double p_two_hypotheses(double omega);

/// R_D for equal priors over the pair {r, s}. Throws DegenerateDenominator
/// when the four "different" probabilities sum to no more than ten times
/// their largest truncation bound.
double reliability(double r, double s, Efficiency eta, const Truncation& trunc);

struct NoErrorReport {
  std::vector<double> r_grid;
  std::vector<double> p_diff;
  double max_p_diff = 0.0;
  double threshold = 0.0;
  bool strict = false;  // eta == 1; otherwise the check only documents leakage
  bool passed = false;
};

/// p(D | r, r) over the grid; passes iff every value is <= 10 * tail_tol.
NoErrorReport verify_no_error(std::span<const double> r_grid, Efficiency eta,
                              const Truncation& trunc);

}  // namespace sqz
