#include "sqz/comparator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sqz/errors.hpp"
#include "sqz/special.hpp"

namespace sqz {

namespace {

// Stop the closed-form series once everything left is below this.
constexpr double kSeriesTail = 1e-14;

double clamp_probability(double p) { return std::clamp(p, 0.0, 1.0); }

// Extra error from dropping the twin-beam tail of amplitude eps.
double dropped_term_bound(double eps) { return 2.0 * eps + eps * eps; }

void check_deficit(double deficit, const Truncation& trunc, const char* what) {
  if (deficit > trunc.tail_tol()) {
    throw TruncationTooSmall(std::string(what) + ": grid misses " + num(deficit) +
                                 " at n_max = " + std::to_string(trunc.n_max()),
                             deficit, trunc.tail_tol());
  }
}

}  // namespace

Efficiency::Efficiency(double eta) : eta_(eta) {
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw DomainError("efficiency must lie in (0, 1], got " + num(eta));
  }
}

PovmElement::PovmElement(Eigen::MatrixXd weights) : weights_(std::move(weights)) {
  if (weights_.rows() != weights_.cols()) throw DomainError("POVM weight grid must be square");
  if (weights_.size() > 0 && (weights_.minCoeff() < 0.0 || weights_.maxCoeff() > 1.0)) {
    throw DomainError("POVM weights must lie in [0, 1]");
  }
}

PovmElement PovmElement::complement() const {
  return PovmElement((1.0 - weights_.array()).matrix());
}

PovmPair ideal_povm(const Truncation& trunc) {
  PovmElement zero(Eigen::MatrixXd::Identity(trunc.dim(), trunc.dim()));
  PovmElement diff = zero.complement();
  return {std::move(zero), std::move(diff)};
}

Eigen::VectorXd single_detector_povm(int n, Efficiency eta, const Truncation& trunc) {
  if (n < 0 || n > trunc.n_max()) {
    throw IndexOutOfRange("detector outcome " + std::to_string(n) + " outside 0.." +
                          std::to_string(trunc.n_max()));
  }
  return binomial_loss_kernel(eta.value(), trunc.dim()).col(n);
}

PovmPair smeared_povm(Efficiency eta, const Truncation& trunc) {
  const Eigen::MatrixXd k = binomial_loss_kernel(eta.value(), trunc.dim());
  // w0(h, k) = sum_n K(h, n) K(k, n)
  Eigen::MatrixXd w0 = k * k.transpose();
  w0 = w0.cwiseMax(0.0).cwiseMin(1.0);
  PovmElement zero(std::move(w0));
  PovmElement diff = zero.complement();
  return {std::move(zero), std::move(diff)};
}

ComparisonResult evaluate(const JointFockState& state, const PovmPair& povm) {
  if (povm.zero.dim() != state.dim()) {
    throw DomainError("POVM dimension " + std::to_string(povm.zero.dim()) +
                      " does not match state dimension " + std::to_string(state.dim()));
  }
  const Eigen::MatrixXd probs = state.amps().cwiseAbs2();
  ComparisonResult out;
  out.p_zero = clamp_probability(povm.zero.weights().cwiseProduct(probs).sum());
  out.p_diff = clamp_probability(povm.diff.weights().cwiseProduct(probs).sum());
  out.truncation_bound = state.norm_deficit();
  return out;
}

ComparisonResult p_zero(const SqueezeParam& xi, const SqueezeParam& zeta, const Truncation& trunc) {
  // Only the diagonal of d and the grid norm are needed, so work with the
  // factors d = N S W S^T instead of the full grid:
  //   d_hh = N sum_n w_n S_hn^2
  //   sum |d_hk|^2 = N^2 sum_{n,m} w_n conj(w_m) (S^H S)_{mn}^2
  const detail::OutputFactors f = detail::output_factors(xi, zeta, trunc, 1);
  const auto terms = f.s_minus.cols();
  ComplexVector w(terms);
  Complex power = 1.0;
  for (Eigen::Index n = 0; n < terms; ++n) {
    w(n) = power;
    power *= f.lambda_plus;
  }

  const ComplexVector diag = f.norm * (f.s_minus.array().square().matrix() * w);
  const double p0 = diag.squaredNorm();

  ComplexMatrix gram(terms, terms);
  gram.noalias() = f.s_minus.adjoint() * f.s_minus;
  const ComplexVector gw = gram.array().square().matrix() * w;
  const double grid_norm = f.norm * f.norm * w.dot(gw).real();

  const double deficit = std::max(0.0, 1.0 - grid_norm);
  check_deficit(deficit, trunc, "p_zero");

  ComparisonResult out;
  out.p_zero = clamp_probability(p0);
  out.p_diff = clamp_probability(std::max(0.0, grid_norm - p0));
  out.truncation_bound = deficit + dropped_term_bound(f.dropped_amplitude);
  return out;
}

ComparisonResult p_zero_eta(const SqueezeParam& xi, const SqueezeParam& zeta, Efficiency eta,
                            const Truncation& trunc) {
  return p_zero_eta(xi, zeta, smeared_povm(eta, trunc), trunc);
}

ComparisonResult p_zero_eta(const SqueezeParam& xi, const SqueezeParam& zeta,
                            const PovmPair& povm, const Truncation& trunc) {
  const detail::OutputFactors f = detail::output_factors(xi, zeta, trunc);
  const JointFockState state(detail::assemble_amplitudes(f));
  check_deficit(state.norm_deficit(), trunc, "p_zero_eta");
  ComparisonResult out = evaluate(state, povm);
  out.truncation_bound += dropped_term_bound(f.dropped_amplitude);
  return out;
}

double p_eta_same(double r, Efficiency eta, const Truncation& trunc) {
  if (!std::isfinite(r) || r < 0.0) throw DomainError("p_eta_same needs finite r >= 0");
  const double lam = std::tanh(r);
  if (lam == 0.0) return 1.0;

  const double e = eta.value();
  const double x = (1.0 - e) * (1.0 - e) * lam * lam;
  if (!(x < 1.0)) throw SeriesDivergence("hypergeometric argument reached 1");

  const double log_el2 = 2.0 * std::log(e * lam);
  const double lam2 = lam * lam;
  double total = 0.0;
  double tail = 1.0;  // lam^(2(n+1)) bounds everything past term n
  bool converged = false;
  for (int n = 0; n <= trunc.n_max(); ++n) {
    total += scaled_hyp2f1_diagonal(n, x, n * log_el2);
    tail *= lam2;
    if (tail < kSeriesTail) {
      converged = true;
      break;
    }
  }
  if (!converged && tail > trunc.tail_tol()) {
    throw TruncationTooSmall("p_eta_same series remainder " + num(tail) +
                                 " at n_max = " + std::to_string(trunc.n_max()),
                             tail, trunc.tail_tol());
  }
  const double c = std::cosh(r);
  return clamp_probability(total / (c * c));
}

double small_r_approx(double r, Efficiency eta) {
  const double e = eta.value();
  return 1.0 - 2.0 * e * (1.0 - e) * r * r;
}

double overlap(double delta_minus) {
  if (!std::isfinite(delta_minus) || delta_minus < 0.0) {
    throw DomainError("overlap needs a finite nonnegative squeezing difference");
  }
  return 1.0 / std::sqrt(std::cosh(delta_minus));
}

namespace {
void check_omega(double omega) {
  if (!(omega >= 0.0 && omega <= 1.0)) {
    throw DomainError("overlap must lie in [0, 1], got " + num(omega));
  }
}
}  // namespace

double p_universal(double omega) {
  check_omega(omega);
  return 0.5 * (1.0 - omega * omega);
}

double p_two_hypotheses(double omega) {
  check_omega(omega);
  const double w2 = omega * omega;
  return (1.0 - w2) / (1.0 + w2);
}

double reliability(double r, double s, Efficiency eta, const Truncation& trunc) {
  if (!(r >= 0.0) || !(s >= 0.0)) throw DomainError("reliability needs r, s >= 0");
  const PovmPair povm = smeared_povm(eta, trunc);
  const SqueezeParam a(r), b(s);
  const ComparisonResult rs = p_zero_eta(a, b, povm, trunc);
  const ComparisonResult sr = p_zero_eta(b, a, povm, trunc);
  const ComparisonResult rr = p_zero_eta(a, a, povm, trunc);
  const ComparisonResult ss = p_zero_eta(b, b, povm, trunc);

  const double numerator = rs.p_diff + sr.p_diff;
  const double denominator = numerator + rr.p_diff + ss.p_diff;
  const double bound = std::max({rs.truncation_bound, sr.truncation_bound, rr.truncation_bound,
                                 ss.truncation_bound});
  if (denominator <= 10.0 * bound) {
    throw DegenerateDenominator("reliability undefined: all difference probabilities vanish (sum " +
                                num(denominator) + ")");
  }
  return clamp_probability(numerator / denominator);
}

NoErrorReport verify_no_error(std::span<const double> r_grid, Efficiency eta,
                              const Truncation& trunc) {
  NoErrorReport report;
  report.strict = eta.ideal();
  report.threshold = 10.0 * trunc.tail_tol();
  const PovmPair povm = smeared_povm(eta, trunc);
  for (double r : r_grid) {
    const SqueezeParam g(r);
    const double pd =
        eta.ideal() ? p_zero(g, g, trunc).p_diff : p_zero_eta(g, g, povm, trunc).p_diff;
    report.r_grid.push_back(r);
    report.p_diff.push_back(pd);
    report.max_p_diff = std::max(report.max_p_diff, pd);
  }
  report.passed = report.max_p_diff <= report.threshold;
  return report;
}

}  // namespace sqz
