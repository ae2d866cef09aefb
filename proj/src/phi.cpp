#include "expara/phi.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "expara/errors.hpp"

namespace expara {

namespace {

constexpr int kGaussNodes = 32;

struct GaussRule {
  std::array<double, kGaussNodes> x{};  // nodes on [0, 1]
  std::array<double, kGaussNodes> w{};
};

// Newton iteration on the Legendre polynomial, mapped to [0, 1].
GaussRule make_gauss_rule() {
  GaussRule r;
  const int n = kGaussNodes;
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    r.x[i] = 0.5 * (1.0 - x);
    r.w[i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

const GaussRule& gauss_rule() {
  static const GaussRule rule = make_gauss_rule();
  return rule;
}

double inv_factorial(int j) {
  double f = 1.0;
  for (int i = 2; i <= j; ++i) f *= i;
  return 1.0 / f;
}

cplx phi_taylor(int j, cplx z) {
  cplx term = inv_factorial(j);
  cplx sum = term;
  for (int k = 1; k < 60; ++k) {
    term *= z / double(k + j);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

cplx phi_quadrature(int j, cplx z) {
  const GaussRule& g = gauss_rule();
  const double scale = inv_factorial(j - 1);
  cplx sum = 0.0;
  for (int i = 0; i < kGaussNodes; ++i) {
    double th = g.x[i];
    sum += g.w[i] * std::exp((1.0 - th) * z) * std::pow(th, j - 1);
  }
  return sum * scale;
}

cplx phi_recurrence(int j, cplx z) {
  cplx p = std::exp(z);
  double fact = 1.0;
  for (int i = 0; i < j; ++i) {
    if (i > 0) fact /= i;
    p = (p - fact) / z;
  }
  return p;
}

}  // namespace

cplx phi_scalar(int j, cplx z) {
  if (j < 0 || j > kPhiMaxIndex)
    throw DomainError("phi index " + std::to_string(j) + " outside [0, " +
                      std::to_string(kPhiMaxIndex) + "]");
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw DomainError("phi argument is not finite");
  if (j == 0) return std::exp(z);
  double r = std::abs(z);
  if (r < kPhiTaylorRadius) return phi_taylor(j, z);
  if (r < kPhiQuadratureRadius) return phi_quadrature(j, z);
  return phi_recurrence(j, z);
}

cvec phi_diag(int j, const cvec& z) {
  cvec out(z.size());
  for (std::size_t k = 0; k < z.size(); ++k) {
    try {
      out[k] = phi_scalar(j, z[k]);
    } catch (const DomainError& e) {
      throw DomainError(std::string(e.what()) + " at index " +
                        std::to_string(k));
    }
  }
  return out;
}

}  // namespace expara
