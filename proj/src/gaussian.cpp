#include "sqz/gaussian.hpp"

#include <cmath>

namespace sqz {

namespace {

double f_plus(double x, double y) { return 0.5 * (std::exp(2.0 * x) + std::exp(2.0 * y)); }
double g_minus(double x, double y) { return 0.5 * (std::exp(2.0 * x) - std::exp(2.0 * y)); }

}  // namespace

Symplectic4 symplectic_form() {
  Symplectic4 omega = Symplectic4::Zero();
  omega(0, 1) = 1.0;
  omega(1, 0) = -1.0;
  omega(2, 3) = 1.0;
  omega(3, 2) = -1.0;
  return omega;
}

Symplectic2 sympl_squeeze(double r) {
  Symplectic2 s = Symplectic2::Zero();
  s(0, 0) = std::exp(r);
  s(1, 1) = std::exp(-r);
  return s;
}

Symplectic4 sympl_bs() {
  const double h = 1.0 / std::sqrt(2.0);
  Symplectic4 s;
  s << h, 0, -h, 0,
       0, h, 0, -h,
       h, 0, h, 0,
       0, h, 0, h;
  return s;
}

Symplectic4 sympl_local(double x, double y) {
  Symplectic4 s = Symplectic4::Zero();
  s.topLeftCorner<2, 2>() = sympl_squeeze(x);
  s.bottomRightCorner<2, 2>() = sympl_squeeze(y);
  return s;
}

CovMat transform(const Symplectic4& s, const CovMat& sigma) { return s * sigma * s.transpose(); }

CovMat vacuum_cov() { return 0.5 * CovMat::Identity(); }

CovMat sigma_out(double r, double s) {
  const double fa = f_plus(r, -s), fb = f_plus(-r, s);
  const double ga = g_minus(r, -s), gb = g_minus(-r, s);
  CovMat m;
  m << fa, 0, ga, 0,
       0, fb, 0, gb,
       ga, 0, fa, 0,
       0, gb, 0, fb;
  return 0.5 * m;
}

CovMat sigma_out_composed(double r, double s) {
  return transform(sympl_bs() * sympl_local(r, -s), vacuum_cov());
}

CovMat sigma_prime(double r, double s) {
  const double rp = 0.5 * (r + s);
  const double rm = 0.5 * (r - s);
  const Symplectic4 s2 = sympl_bs() * sympl_local(rp, -rp);
  return transform(sympl_local(rm, rm) * s2, vacuum_cov());
}

double symplectic_defect(const Symplectic4& s) {
  const Symplectic4 omega = symplectic_form();
  return (s * omega * s.transpose() - omega).cwiseAbs().maxCoeff();
}

double uncertainty_margin(const CovMat& sigma) {
  const Eigen::Matrix4cd h =
      sigma.cast<Complex>() + Complex(0.0, 0.5) * symplectic_form().cast<Complex>();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

CovMat fock_covariance(const JointFockState& state) {
  const ComplexMatrix& d = state.amps();
  const int n = state.dim();
  double na = 0.0, nb = 0.0;
  Complex a2 = 0.0, b2 = 0.0, ab = 0.0, adag_b = 0.0;
  for (int h = 0; h < n; ++h) {
    for (int k = 0; k < n; ++k) {
      const Complex c = std::conj(d(h, k));
      const double p = std::norm(d(h, k));
      na += h * p;
      nb += k * p;
      if (h + 2 < n) a2 += c * std::sqrt((h + 1.0) * (h + 2.0)) * d(h + 2, k);
      if (k + 2 < n) b2 += c * std::sqrt((k + 1.0) * (k + 2.0)) * d(h, k + 2);
      if (h + 1 < n && k + 1 < n) ab += c * std::sqrt((h + 1.0) * (k + 1.0)) * d(h + 1, k + 1);
      if (h >= 1 && k + 1 < n) adag_b += c * std::sqrt(h * (k + 1.0)) * d(h - 1, k + 1);
    }
  }
  CovMat m;
  m(0, 0) = a2.real() + na + 0.5;
  m(1, 1) = -a2.real() + na + 0.5;
  m(0, 1) = a2.imag();
  m(2, 2) = b2.real() + nb + 0.5;
  m(3, 3) = -b2.real() + nb + 0.5;
  m(2, 3) = b2.imag();
  m(0, 2) = ab.real() + adag_b.real();
  m(1, 3) = -ab.real() + adag_b.real();
  m(0, 3) = ab.imag() + adag_b.imag();
  m(1, 2) = ab.imag() - adag_b.imag();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < i; ++j) m(i, j) = m(j, i);
  }
  return m;
}

CrosscheckReport crosscheck_fock(double r, double s, const Truncation& trunc) {
  CrosscheckReport rep;
  rep.gaussian = sigma_out(r, s);
  rep.fock = fock_covariance(output_state(SqueezeParam::real(r), SqueezeParam::real(s), trunc));
  rep.max_deviation = (rep.gaussian - rep.fock).cwiseAbs().maxCoeff();
  rep.threshold = 100.0 * trunc.tail_tol();
  rep.passed = rep.max_deviation <= rep.threshold;
  return rep;
}

}  // namespace sqz
