#include "sqz/oracle.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sqz/errors.hpp"

namespace sqz::oracle {

namespace {

void check_dim(int dim) {
  if (dim < 8) throw DomainError("oracle dimension must be at least 8, got " + std::to_string(dim));
}

// dim used to draw reference elements for the literal sum
constexpr int kLiteralDim = 256;

double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)));
}

}  // namespace

GeneratorMatrix::GeneratorMatrix(ComplexMatrix entries) : entries_(std::move(entries)) {}

double GeneratorMatrix::anti_hermitian_defect() const {
  return (entries_ + entries_.adjoint()).cwiseAbs().maxCoeff();
}

GeneratorMatrix squeeze_generator(const SqueezeParam& gamma, int dim) {
  const Complex g = gamma.value();
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (int n = 0; n + 2 < dim; ++n) {
    const double c = std::sqrt((n + 1.0) * (n + 2.0));
    m(n + 2, n) = 0.5 * g * c;
    m(n, n + 2) = -0.5 * std::conj(g) * c;
  }
  return GeneratorMatrix(std::move(m));
}

GeneratorMatrix twb_generator(const SqueezeParam& gamma, int dim) {
  const Complex g = gamma.value();
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (int n = 0; n + 1 < dim; ++n) {
    m(n + 1, n) = g * (n + 1.0);
    m(n, n + 1) = -std::conj(g) * (n + 1.0);
  }
  return GeneratorMatrix(std::move(m));
}

GeneratorMatrix bs_generator(int total) {
  const int n = total + 1;
  const double angle = 0.25 * std::numbers::pi;
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  // a b^+ |j, N-j> = sqrt(j (N-j+1)) |j-1, N-j+1>
  for (int j = 1; j <= total; ++j) {
    const double c = angle * std::sqrt(j * (total - j + 1.0));
    m(j - 1, j) += c;
    m(j, j - 1) -= c;
  }
  return GeneratorMatrix(std::move(m));
}

ComplexMatrix expm(const GeneratorMatrix& g) {
  const ComplexMatrix h = Complex(0.0, 1.0) * g.entries();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  const ComplexMatrix& v = solver.eigenvectors();
  ComplexVector phases(g.dim());
  for (int i = 0; i < g.dim(); ++i) phases(i) = std::polar(1.0, -solver.eigenvalues()(i));
  return v * phases.asDiagonal() * v.adjoint();
}

FockOperator expm_squeeze(const SqueezeParam& gamma, int dim) {
  check_dim(dim);
  return FockOperator(expm(squeeze_generator(gamma, dim)));
}

JointFockState expm_twb(const SqueezeParam& gamma, int dim) {
  check_dim(dim);
  const ComplexVector sector = expm(twb_generator(gamma, dim)).col(0);
  ComplexMatrix d = ComplexMatrix::Zero(dim, dim);
  d.diagonal() = sector;
  return JointFockState(std::move(d));
}

JointFockState expm_output_state(const SqueezeParam& xi, const SqueezeParam& zeta, int dim) {
  check_dim(dim);
  const ComplexVector va = expm_squeeze(xi, dim).elements().col(0);
  const ComplexVector vb = expm_squeeze(zeta.negated(), dim).elements().col(0);
  const int out = dim / 2 + 1;
  ComplexMatrix d = ComplexMatrix::Zero(out, out);
  for (int total = 0; total <= 2 * (out - 1); ++total) {
    ComplexVector in = ComplexVector::Zero(total + 1);
    for (int j = 0; j <= total; ++j) {
      if (j < dim && total - j < dim) in(j) = va(j) * vb(total - j);
    }
    const ComplexVector res = expm(bs_generator(total)) * in;
    for (int j = 0; j <= total; ++j) {
      if (j < out && total - j < out) d(j, total - j) = res(j);
    }
  }
  return JointFockState(std::move(d));
}

double literal_five_fold_sum(const SqueezeParam& xi, const SqueezeParam& zeta, Efficiency eta,
                    int n_max_small) {
  if (n_max_small > 16) {
    throw CostGuard("literal five-fold sum limited to n_max_small <= 16, got " +
                    std::to_string(n_max_small));
  }
  if (n_max_small < 0) throw DomainError("n_max_small must be nonnegative");
  if (!same_phase(xi, zeta)) throw PhaseMismatch("literal sum needs equal squeezing phases");

  const Complex plus = 0.5 * (xi.value() + zeta.value());
  const Complex minus = 0.5 * (xi.value() - zeta.value());
  const Complex lam = std::polar(std::tanh(std::abs(plus)), std::abs(plus) > 0 ? std::arg(plus) : 0.0);
  const ComplexMatrix s = expm_squeeze(SqueezeParam::from_complex(minus), kLiteralDim).elements();

  const int n_top = n_max_small;
  const double e = eta.value();
  Complex total = 0.0;
  for (int n = 0; n <= n_top; ++n) {
    for (int l = 0; l <= n_top; ++l) {
      for (int m = 0; m <= n_top; ++m) {
        const Complex lm = std::pow(e, 2 * n) * std::pow(lam, l) * std::pow(std::conj(lam), m);
        for (int h = n; h <= n_top; ++h) {
          for (int k = n; k <= n_top; ++k) {
            const double w = std::pow(1.0 - e, h + k - 2 * n) * binom(h, n) * binom(k, n);
            // [S^+]_{mk} = conj([S]_{km})
            total += lm * w * s(k, l) * s(h, l) * std::conj(s(k, m)) * std::conj(s(h, m));
          }
        }
      }
    }
  }
  return (1.0 - std::norm(lam)) * total.real();
}

}  // namespace sqz::oracle
