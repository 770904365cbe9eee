#include "sqz/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "sqz/errors.hpp"

namespace sqz {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Below this the squeezer is the identity to far better than double precision
// on every element we could store.
constexpr double kNegligibleSqueezing = 1e-150;

double normalize_phase(double phase) {
  double p = std::fmod(phase, kTwoPi);
  if (p < 0.0) p += kTwoPi;
  if (p >= kTwoPi) p = 0.0;
  return p;
}

// Column m of S(r e^{i theta}) on rows h <= h_last (h_last <= m), produced by
// the three-term recurrence that follows from (S N S^+) S|m> = m S|m>:
//
//   c s [e^{i th} sqrt(h(h-1)) S_{h-2,m} + e^{-i th} sqrt((h+1)(h+2)) S_{h+2,m}]
//       = ((c^2 + s^2) h + s^2 - m) S_{h,m}
//
// Run forward from the closed-form seed at h = m mod 2 it only visits the
// region below the diagonal's turning point, where it is stable. Magnitudes
// are carried with a separate log scale because seeds underflow for large m.
class UpperTriangleRecurrence {
 public:
  UpperTriangleRecurrence(double r, double theta)
      : c_(std::cosh(r)),
        s_(std::sinh(r)),
        cs_(c_ * s_),
        c2s2_(c_ * c_ + s_ * s_),
        s2_(s_ * s_),
        e_(std::polar(1.0, theta)),
        theta_(theta),
        log_c_(std::log(c_)),
        log_t_(std::log(std::tanh(r))) {}

  template <typename Sink>
  void column(int m, int h_last, Sink&& sink) {
    const int parity = m % 2;
    if (h_last < parity) return;
    const int j = (m - parity) / 2;

    // |S_{parity,m}| = c^{-1/2} t^j sqrt((2j)!)/(2^j j!)  [* sqrt(m)/c if odd]
    double log_seed = -0.5 * log_c_ + j * log_t_ + half_log_central(j);
    if (parity == 1) log_seed += 0.5 * std::log(static_cast<double>(m)) - log_c_;
    const Complex seed_phase = std::polar(1.0, std::fmod(j * (std::numbers::pi - theta_), kTwoPi));

    Complex prev2 = 0.0;
    Complex prev = seed_phase;
    double log_scale = log_seed;
    int h = parity;
    sink(h, rescale(prev, log_scale));

    const double md = static_cast<double>(m);
    while (h + 2 <= h_last) {
      const double hd = static_cast<double>(h);
      const Complex next =
          e_ * ((c2s2_ * hd + s2_ - md) * prev - cs_ * e_ * std::sqrt(hd * (hd - 1.0)) * prev2) /
          (cs_ * std::sqrt((hd + 1.0) * (hd + 2.0)));
      prev2 = prev;
      prev = next;
      h += 2;

      const double a = std::abs(prev);
      if (a > 1e100 || (a < 1e-100 && a > 0.0)) {
        prev /= a;
        prev2 /= a;
        log_scale += std::log(a);
      }
      sink(h, rescale(prev, log_scale));
    }
  }

 private:
  static Complex rescale(Complex v, double log_scale) {
    const double a = std::abs(v);
    if (a == 0.0) return 0.0;
    return (v / a) * std::exp(std::log(a) + log_scale);
  }

  // sum_{i=1}^{j} 0.5 * log(1 - 1/(2i)) = log( sqrt((2j)!) / (2^j j!) )
  double half_log_central(int j) {
    while (static_cast<int>(cumulative_.size()) <= j) {
      const int i = static_cast<int>(cumulative_.size());
      cumulative_.push_back(cumulative_.back() + 0.5 * std::log1p(-1.0 / (2.0 * i)));
    }
    return cumulative_[j];
  }

  double c_, s_, cs_, c2s2_, s2_;
  Complex e_;
  double theta_;
  double log_c_, log_t_;
  std::vector<double> cumulative_{0.0};
};

}  // namespace

SqueezeParam::SqueezeParam(double magnitude, double phase) {
  if (!std::isfinite(magnitude) || magnitude < 0.0) {
    throw DomainError("squeezing magnitude must be finite and nonnegative, got " +
                      num(magnitude));
  }
  if (!std::isfinite(phase)) throw DomainError("squeezing phase must be finite");
  magnitude_ = magnitude;
  phase_ = magnitude == 0.0 ? 0.0 : normalize_phase(phase);
}

SqueezeParam SqueezeParam::from_complex(Complex gamma) {
  const double mag = std::abs(gamma);
  return SqueezeParam(mag, mag == 0.0 ? 0.0 : std::arg(gamma));
}

SqueezeParam SqueezeParam::real(double x) {
  return x >= 0.0 ? SqueezeParam(x, 0.0) : SqueezeParam(-x, std::numbers::pi);
}

Complex SqueezeParam::value() const { return std::polar(magnitude_, phase_); }

SqueezeParam SqueezeParam::negated() const {
  return SqueezeParam(magnitude_, phase_ + std::numbers::pi);
}

bool same_phase(const SqueezeParam& a, const SqueezeParam& b) {
  if (a.magnitude() == 0.0 || b.magnitude() == 0.0) return true;
  // Opposite phases are the same axis with a signed magnitude.
  return std::abs(std::remainder(a.phase() - b.phase(), std::numbers::pi)) <= 1e-12;
}

Truncation::Truncation(int n_max, double tail_tol) : n_max_(n_max), tail_tol_(tail_tol) {
  if (n_max < 2) throw DomainError("n_max must be at least 2, got " + std::to_string(n_max));
  if (!(tail_tol > 0.0 && tail_tol < 1.0)) {
    throw DomainError("tail_tol must lie in (0, 1), got " + num(tail_tol));
  }
}

FockOperator::FockOperator(ComplexMatrix elements) : elements_(std::move(elements)) {}

JointFockState::JointFockState(ComplexMatrix amps) : amps_(std::move(amps)) {
  norm_deficit_ = std::max(0.0, 1.0 - amps_.squaredNorm());
}

Complex lambda(const SqueezeParam& gamma) {
  return std::polar(std::tanh(gamma.magnitude()), gamma.phase());
}

ComplexMatrix squeeze_elements(const SqueezeParam& gamma, int rows, int cols) {
  if (rows < 0 || cols < 0) throw IndexOutOfRange("negative matrix extent");
  if (gamma.magnitude() < kNegligibleSqueezing) {
    return ComplexMatrix::Identity(rows, cols);
  }
  ComplexMatrix out = ComplexMatrix::Zero(rows, cols);

  UpperTriangleRecurrence upper(gamma.magnitude(), gamma.phase());
  for (int m = 0; m < cols; ++m) {
    upper.column(m, std::min(m, rows - 1), [&](int h, Complex v) { out(h, m) = v; });
  }

  // Below the diagonal: <h|S(g)|m> = conj(<m|S(-g)|h>), an upper element of S(-g).
  const SqueezeParam neg = gamma.negated();
  UpperTriangleRecurrence lower(neg.magnitude(), neg.phase());
  for (int h = 1; h < rows; ++h) {
    lower.column(h, std::min(h - 1, cols - 1), [&](int m, Complex v) { out(h, m) = std::conj(v); });
  }
  return out;
}

FockOperator squeeze_matrix(const SqueezeParam& gamma, const Truncation& trunc) {
  ComplexMatrix s = squeeze_elements(gamma, trunc.dim(), trunc.dim());
  const double deficit = 1.0 - s.col(0).squaredNorm();
  if (deficit > trunc.tail_tol()) {
    throw TruncationTooSmall("squeezed vacuum |" + num(gamma.magnitude()) +
                                 "> loses " + num(deficit) + " beyond n_max = " +
                                 std::to_string(trunc.n_max()),
                             deficit, trunc.tail_tol());
  }
  return FockOperator(std::move(s));
}

ComplexVector squeezed_vacuum(const SqueezeParam& gamma, const Truncation& trunc) {
  return squeeze_matrix(gamma, trunc).elements().col(0);
}

JointFockState twb_state(const SqueezeParam& gamma, const Truncation& trunc) {
  const Complex l = lambda(gamma);
  const double a2 = std::norm(l);
  const double deficit = std::pow(a2, trunc.n_max() + 1);
  if (deficit > trunc.tail_tol()) {
    throw TruncationTooSmall("twin beam tail " + num(deficit) +
                                 " exceeds tail_tol at n_max = " + std::to_string(trunc.n_max()),
                             deficit, trunc.tail_tol());
  }
  const double norm = std::sqrt(1.0 - a2);
  ComplexMatrix d = ComplexMatrix::Zero(trunc.dim(), trunc.dim());
  Complex power = 1.0;
  for (int n = 0; n < trunc.dim(); ++n) {
    d(n, n) = norm * power;
    power *= l;
  }
  return JointFockState(std::move(d));
}

namespace detail {

OutputFactors output_factors(const SqueezeParam& xi, const SqueezeParam& zeta,
                             const Truncation& trunc, int min_terms) {
  if (!same_phase(xi, zeta)) {
    throw PhaseMismatch("output state needs equal squeezing phases, got " +
                        num(xi.phase()) + " and " + num(zeta.phase()));
  }
  const SqueezeParam plus = SqueezeParam::from_complex(0.5 * (xi.value() + zeta.value()));
  const SqueezeParam minus = SqueezeParam::from_complex(0.5 * (xi.value() - zeta.value()));

  OutputFactors f;
  f.lambda_plus = lambda(plus);
  const double a = std::abs(f.lambda_plus);
  f.norm = std::sqrt(1.0 - a * a);

  // Keep TWB terms until the omitted tail amplitude is far below tail_tol.
  const int floor_terms = min_terms < 1 ? trunc.dim() : min_terms;
  int terms = floor_terms;
  if (a > 0.0) {
    const double needed = std::ceil(std::log(1e-3 * trunc.tail_tol()) / std::log(a));
    const double cap = 16.0 * trunc.dim();
    terms = static_cast<int>(std::clamp(needed, static_cast<double>(floor_terms), cap));
  }
  f.dropped_amplitude = a > 0.0 ? std::pow(a, terms) : 0.0;
  f.s_minus = squeeze_elements(minus, trunc.dim(), terms);
  return f;
}

ComplexMatrix assemble_amplitudes(const OutputFactors& f) {
  const auto terms = f.s_minus.cols();
  ComplexVector weights(terms);
  Complex power = 1.0;
  for (Eigen::Index n = 0; n < terms; ++n) {
    weights(n) = power;
    power *= f.lambda_plus;
  }
  const ComplexMatrix scaled = f.s_minus * weights.asDiagonal();
  return f.norm * (scaled * f.s_minus.transpose());
}

}  // namespace detail

JointFockState output_state(const SqueezeParam& xi, const SqueezeParam& zeta,
                            const Truncation& trunc) {
  ComplexMatrix d = detail::assemble_amplitudes(detail::output_factors(xi, zeta, trunc));
  JointFockState state(std::move(d));
  if (state.norm_deficit() > trunc.tail_tol()) {
    throw TruncationTooSmall("output state loses " + num(state.norm_deficit()) +
                                 " beyond n_max = " + std::to_string(trunc.n_max()),
                             state.norm_deficit(), trunc.tail_tol());
  }
  return state;
}

double joint_prob(const JointFockState& state, int h, int k) {
  if (h < 0 || k < 0 || h >= state.dim() || k >= state.dim()) {
    throw IndexOutOfRange("joint_prob index (" + std::to_string(h) + ", " + std::to_string(k) +
                          ") outside 0.." + std::to_string(state.dim() - 1));
  }
  return std::norm(state(h, k));
}

double photon_tail_bound(double r, double s, int n_max) {
  const double tr = std::tanh(std::abs(r));
  const double ts = std::tanh(std::abs(s));
  const double tmax = std::max(tr, ts);
  if (tmax == 0.0) return 0.0;

  // log of G_r(z) G_s(z) z^{-(n+1)} with z = e^u, G the generating function
  // E[z^N] = 1 / (cosh x sqrt(1 - z^2 tanh^2 x)) of a squeezed vacuum.
  const double base = -std::log(std::cosh(r)) - std::log(std::cosh(s));
  auto log_bound = [&](double u) {
    const double z2 = std::exp(2.0 * u);
    return base - 0.5 * std::log1p(-z2 * tr * tr) - 0.5 * std::log1p(-z2 * ts * ts) -
           (n_max + 1.0) * u;
  };

  // Convex in u on (0, -log tmax): golden-section search.
  double lo = 0.0;
  double hi = -std::log(tmax);
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - g * (hi - lo);
  double x2 = lo + g * (hi - lo);
  double f1 = log_bound(x1);
  double f2 = log_bound(x2);
  for (int it = 0; it < 200; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = log_bound(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = log_bound(x2);
    }
  }
  return std::min(1.0, std::exp(std::min(f1, f2)));
}

Truncation recommended_truncation(double r, double s, double tail_tol) {
  const double target = 0.5 * tail_tol;
  int hi = 2;
  while (photon_tail_bound(r, s, hi) > target) {
    if (hi > (1 << 24)) throw TruncationTooSmall("no feasible cutoff", 1.0, tail_tol);
    hi *= 2;
  }
  int lo = hi / 2;
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    if (photon_tail_bound(r, s, mid) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (hi % 2 != 0) ++hi;
  return Truncation(std::max(hi, 2), tail_tol);
}

}  // namespace sqz
