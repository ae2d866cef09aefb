#pragma once

#include "expara/types.hpp"

namespace expara {

inline constexpr int kPhiMaxIndex = 8;
// Below this modulus phi_j is summed as a Taylor series.
inline constexpr double kPhiTaylorRadius = 1.0;
// Between the Taylor radius and this modulus a Gauss-Legendre rule is used;
// above it the upward recurrence from exp(z) is stable for j <= 8.
inline constexpr double kPhiQuadratureRadius = 16.0;

// phi_j(z) with phi_j(0) = 1/j!.
cplx phi_scalar(int j, cplx z);

cvec phi_diag(int j, const cvec& z);

}  // namespace expara
