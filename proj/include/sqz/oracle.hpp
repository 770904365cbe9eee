#pragma once

#include "sqz/comparator.hpp"
#include "sqz/fock.hpp"

// Brute-force references. Everything here is built from truncated generators
// and dense exponentials only; nothing calls into the fast recurrences.
namespace sqz::oracle {

/// Anti-Hermitian generator in a truncated Fock basis.
class GeneratorMatrix {
 public:
  explicit GeneratorMatrix(ComplexMatrix entries);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const ComplexMatrix& entries() const { return entries_; }
  /// max |G + G^H|.
  double anti_hermitian_defect() const;

 private:
  ComplexMatrix entries_;
};

/// (gamma/2) a^+2 - (gamma*/2) a^2 on {|0>, ..., |dim-1>}.
GeneratorMatrix squeeze_generator(const SqueezeParam& gamma, int dim);

/// (gamma a^+ b^+ - gamma* a b) restricted to the |n, n> sector, n < dim.
/// The generator conserves h - k, so this is the only block vacuum reaches.
GeneratorMatrix twb_generator(const SqueezeParam& gamma, int dim);

/// (pi/4)(a b^+ - a^+ b) on the block of total photon number `total`, basis
/// |j, total - j>, j = 0..total. The block is finite, so no cutoff enters.
GeneratorMatrix bs_generator(int total);

/// exp(G) through the eigendecomposition of the Hermitian matrix iG.
ComplexMatrix expm(const GeneratorMatrix& g);

/// exp of the truncated squeeze generator. Elements with indices up to about
/// dim/2 are reliable once dim is large enough for gamma; check by doubling.
FockOperator expm_squeeze(const SqueezeParam& gamma, int dim);

/// Two-mode squeezed vacuum from the exponentiated generator.
JointFockState expm_twb(const SqueezeParam& gamma, int dim);

/// Beam splitter applied block by block to S(xi)|0> (x) S(-zeta)|0>, the
/// squeezed vacua taken from expm_squeeze at `dim`. Returns the
/// (dim/2 + 1)^2 corner of the output grid.
JointFockState expm_output_state(const SqueezeParam& xi, const SqueezeParam& zeta, int dim);

/// p_eta(0 | xi, zeta) from the five-fold sum over n, l, m, h, k in
/// 0..n_max_small exactly as written, no regrouping. Throws CostGuard for
/// n_max_small > 16.
double literal_five_fold_sum(const SqueezeParam& xi, const SqueezeParam& zeta, Efficiency eta,
                    int n_max_small);

}  // namespace sqz::oracle
