#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "sqz/comparator.hpp"
#include "sqz/errors.hpp"
#include "sqz/oracle.hpp"

using namespace sqz;

TEST(Oracle, GeneratorsAreAntiHermitian) {
  EXPECT_LE(oracle::squeeze_generator(SqueezeParam(0.7, 1.1), 40).anti_hermitian_defect(), 1e-12);
  EXPECT_LE(oracle::twb_generator(SqueezeParam(0.7, 1.1), 40).anti_hermitian_defect(), 1e-12);
  EXPECT_LE(oracle::bs_generator(9).anti_hermitian_defect(), 1e-12);
}

TEST(Oracle, ExpmSqueezeBasics) {
  EXPECT_LT((oracle::expm_squeeze(SqueezeParam(0.0), 16).elements() -
             ComplexMatrix::Identity(16, 16)).cwiseAbs().maxCoeff(), 1e-15);
  const FockOperator s64 = oracle::expm_squeeze(SqueezeParam(0.5), 64);
  EXPECT_NEAR(s64(0, 0).real(), 1.0 / std::sqrt(std::cosh(0.5)), 1e-10);
  for (int h = 0; h < 64; ++h) {
    for (int k = 0; k < 64; ++k) {
      if ((h + k) % 2) ASSERT_LT(std::abs(s64(h, k)), 1e-14);
    }
  }
  EXPECT_THROW(oracle::expm_squeeze(SqueezeParam(0.5), 4), DomainError);
}

TEST(Oracle, ExpmSqueezeConvergesWithDimension) {
  const ComplexMatrix a = oracle::expm_squeeze(SqueezeParam(0.5), 64).elements().topLeftCorner(17, 17);
  const ComplexMatrix b = oracle::expm_squeeze(SqueezeParam(0.5), 128).elements().topLeftCorner(17, 17);
  EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-10);
  // the vacuum column at dim 64 is already converged
  EXPECT_LT(std::abs(oracle::expm_squeeze(SqueezeParam(0.5), 64)(0, 0) -
                     oracle::expm_squeeze(SqueezeParam(0.5), 128)(0, 0)), 1e-10);
}

TEST(Oracle, ExpmTwb) {
  const JointFockState v = oracle::expm_twb(SqueezeParam(0.0), 16);
  EXPECT_NEAR(std::abs(v(0, 0)), 1.0, 1e-15);
  const JointFockState t = oracle::expm_twb(SqueezeParam(0.5), 64);
  EXPECT_NEAR((t(1, 1) / t(0, 0)).real(), std::tanh(0.5), 1e-8);
  EXPECT_NEAR(t(0, 0).real(), std::sqrt(1 - std::pow(std::tanh(0.5), 2)), 1e-10);
  double off = 0.0;
  for (int h = 0; h < 64; ++h) {
    for (int k = 0; k < 64; ++k) {
      if (h != k) off = std::max(off, std::abs(t(h, k)));
    }
  }
  EXPECT_LE(off, 1e-10);
}

TEST(Oracle, BeamSplitterBlocksAreUnitary) {
  for (int total : {1, 4, 11}) {
    const ComplexMatrix u = oracle::expm(oracle::bs_generator(total));
    EXPECT_LT((u.adjoint() * u - ComplexMatrix::Identity(total + 1, total + 1)).cwiseAbs().maxCoeff(),
              1e-13);
  }
  // one photon in a: (|1,0> + |0,1>)/sqrt2 up to the sign convention
  const ComplexMatrix u1 = oracle::expm(oracle::bs_generator(1));
  EXPECT_NEAR(std::abs(u1(0, 1)), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(std::abs(u1(1, 1)), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(Oracle, OutputPipelineAgreesWithMain) {
  for (auto [r, s] : {std::pair{0.5, 0.0}, {0.3, 0.7}}) {
    const JointFockState ref = oracle::expm_output_state(SqueezeParam(r), SqueezeParam(s), 128);
    const JointFockState d =
        output_state(SqueezeParam(r), SqueezeParam(s), Truncation(ref.dim() - 1, 1e-6));
    EXPECT_LE((ref.amps() - d.amps()).cwiseAbs().maxCoeff(), 1e-8) << r << " " << s;
  }
}

TEST(Oracle, OutputPipelineConverges) {
  const JointFockState a = oracle::expm_output_state(SqueezeParam(0.3), SqueezeParam(0.7), 64);
  const JointFockState b = oracle::expm_output_state(SqueezeParam(0.3), SqueezeParam(0.7), 128);
  EXPECT_LT((a.amps() - b.amps().topLeftCorner(a.dim(), a.dim())).cwiseAbs().maxCoeff(), 1e-7);
}

TEST(Oracle, LiteralSum) {
  const Efficiency e(0.9);
  // ideal detectors collapse to the diagonal sum
  EXPECT_NEAR(oracle::literal_five_fold_sum(SqueezeParam(0.4), SqueezeParam(0.1), Efficiency(1.0), 12),
              p_zero(SqueezeParam(0.4), SqueezeParam(0.1), Truncation(60, 1e-6)).p_zero, 1e-4);
  EXPECT_NEAR(oracle::literal_five_fold_sum(SqueezeParam(0.3), SqueezeParam(0.3), e, 12),
              p_eta_same(0.3, e, Truncation(60, 1e-6)), 1e-4);
  EXPECT_NEAR(oracle::literal_five_fold_sum(SqueezeParam(0.3), SqueezeParam(0.1), e, 12),
              p_zero_eta(SqueezeParam(0.3), SqueezeParam(0.1), e, Truncation(60, 1e-6)).p_zero, 1e-4);
  EXPECT_THROW(oracle::literal_five_fold_sum(SqueezeParam(0.3), SqueezeParam(0.1), e, 17), CostGuard);
}
