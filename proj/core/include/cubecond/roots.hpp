#pragma once

#include <complex>
#include <span>
#include <vector>

namespace cubecond {

struct RootOptions {
  int max_sweeps = 1000;
};

/// All complex roots of sum_k coeffs[k] z^k by Aberth-Ehrlich simultaneous
/// iteration, with multiplicity. Leading zero coefficients are dropped and
/// trailing ones give exact roots at 0. Starting points are spread on the
/// circles of the Newton polygon of |coeffs|. Throws OracleFailure when the
/// iteration has not converged after max_sweeps sweeps.
std::vector<std::complex<double>> polynomial_roots(std::span<const double> coeffs,
                                                   const RootOptions& options = {});

}  // namespace cubecond
