#include "expara/repartition.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "expara/errors.hpp"

namespace expara {

double epsilon_from_rho(double rho) {
  if (!(rho >= 0.0) || !(rho < std::numbers::pi / 2))
    throw DomainError("rho must lie in [0, pi/2), got " + std::to_string(rho));
  return std::tan(rho);
}

double RepartitionSpec::strength() const {
  if (use_epsilon) {
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon))
      throw DomainError("epsilon must be finite and nonnegative");
    return epsilon;
  }
  return epsilon_from_rho(rho);
}

SemilinearProblem apply_repartition(const SemilinearProblem& problem,
                                    const RepartitionSpec& spec) {
  if (spec.kind == RepartitionKind::none) return problem;
  if (spec.kind == RepartitionKind::hyperviscosity)
    throw UnsupportedError("hyperviscosity modifies the problem; use apply_hyperviscosity");
  const double eps = spec.strength();
  const std::size_t n = problem.dim();
  rvec D(n);
  if (spec.kind == RepartitionKind::spectral_abs) {
    for (std::size_t k = 0; k < n; ++k) D[k] = -std::abs(problem.L[k]);
  } else {
    if (problem.kmag.size() != n)
      throw DomainError("power repartitioning needs wavenumber metadata");
    for (std::size_t k = 0; k < n; ++k)
      D[k] = -std::pow(problem.kmag[k], double(spec.power));
  }
  SemilinearProblem out = problem;
  cvec shift(n);
  for (std::size_t k = 0; k < n; ++k) {
    shift[k] = eps * D[k];
    out.L[k] = problem.L[k] + shift[k];
  }
  NonlinearFn base = problem.nonlinear;
  out.nonlinear = [base, shift](double t, const cvec& y) {
    cvec r = base(t, y);
    for (std::size_t k = 0; k < r.size(); ++k) r[k] -= shift[k] * y[k];
    return r;
  };
  return out;
}

SemilinearProblem apply_hyperviscosity(const SemilinearProblem& problem,
                                       int hyper_order, double gamma, double h,
                                       int q) {
  if (hyper_order <= 0 || hyper_order % 2 != 0)
    throw DomainError("hyperviscosity order must be a positive even integer");
  if (!(h > 0.0)) throw DomainError("hyperviscosity needs a positive step size");
  if (gamma == 0.0) return problem;
  if (problem.kmag.size() != problem.dim())
    throw DomainError("hyperviscosity needs wavenumber metadata");
  SemilinearProblem out = problem;
  const double scale = std::pow(h, q + 1) * gamma;
  for (std::size_t k = 0; k < out.dim(); ++k)
    out.L[k] -= scale * std::pow(problem.kmag[k], double(hyper_order));
  return out;
}

const char* repartition_kind_name(RepartitionKind k) {
  switch (k) {
    case RepartitionKind::none: return "none";
    case RepartitionKind::spectral_abs: return "spectral-abs";
    case RepartitionKind::power: return "power";
    case RepartitionKind::hyperviscosity: return "hyperviscosity";
  }
  return "none";
}

RepartitionKind parse_repartition_kind(const std::string& s) {
  if (s == "none") return RepartitionKind::none;
  if (s == "spectral-abs") return RepartitionKind::spectral_abs;
  if (s == "power") return RepartitionKind::power;
  if (s == "hyperviscosity") return RepartitionKind::hyperviscosity;
  throw ConfigError("unknown repartition kind '" + s + "'");
}

}  // namespace expara
