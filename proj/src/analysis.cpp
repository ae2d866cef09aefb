#include "expara/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "expara/errors.hpp"
#include "expara/format.hpp"

namespace expara {

namespace {

cplx ipow(cplx base, long n) {
  cplx r = 1.0;
  while (n > 0) {
    if (n & 1) r *= base;
    base *= base;
    n >>= 1;
  }
  return r;
}

double rep_strength(const RepartitionSpec& rep) {
  switch (rep.kind) {
    case RepartitionKind::none: return 0.0;
    case RepartitionKind::spectral_abs: return rep.strength();
    default:
      throw UnsupportedError(std::string("Dahlquist analysis does not support ") +
                             repartition_kind_name(rep.kind) + " repartitioning");
  }
}

}  // namespace

cplx method_R(const ExpTableau& tab, cplx z1, cplx z2, const RepartitionSpec& rep) {
  const double eps = rep_strength(rep);
  const double a = eps * std::abs(z1);
  SemilinearProblem p;
  p.L = {z1 - a};
  const cplx nz = z2 + a;
  p.nonlinear = [nz](double, const cvec& y) { return cvec{nz * y[0]}; };
  ErkStepper s(std::move(p), tab, 1.0);
  return s.step(0.0, cvec{1.0})[0];
}

cplx propagator_R(const PararealConfig& cfg, Propagator which, cplx z1, cplx z2,
                  const RepartitionSpec& rep) {
  if (which == Propagator::fine)
    return ipow(method_R(erk_tableau(cfg.fine_order), z1, z2, rep), cfg.Nf);
  const double d = double(cfg.Nf) / double(cfg.Ng);
  return ipow(method_R(erk_tableau(cfg.coarse_order), d * z1, d * z2, rep), cfg.Ng);
}

double E_norm_inf(const PararealConfig& cfg, cplx z1, cplx z2,
                  const RepartitionSpec& rep) {
  const cplx RF = propagator_R(cfg, Propagator::fine, z1, z2, rep);
  const cplx RG = propagator_R(cfg, Propagator::coarse, z1, z2, rep);
  const double a = std::abs(RG);
  const double diff = std::abs(RG - RF);
  if (diff == 0.0) return 0.0;
  // (1 - a^Np) / (1 - a), written to avoid cancellation near a = 1.
  double geo;
  if (a == 1.0)
    geo = cfg.Np;
  else
    geo = std::expm1(cfg.Np * std::log1p(a - 1.0)) / (a - 1.0);
  return geo * diff;
}

double parareal_R(const PararealConfig& cfg, int k, cplx z1, cplx z2,
                  const RepartitionSpec& rep) {
  if (k < 0 || k > cfg.Np) throw DomainError("parareal_R needs 0 <= k <= Np");
  const cplx RF = propagator_R(cfg, Propagator::fine, z1, z2, rep);
  const cplx RG = propagator_R(cfg, Propagator::coarse, z1, z2, rep);
  std::vector<cplx> y(cfg.Np + 1);
  y[0] = 1.0;
  for (int n = 0; n < cfg.Np; ++n) y[n + 1] = RG * y[n];
  for (int it = 0; it < k; ++it) {
    std::vector<cplx> next(cfg.Np + 1);
    next[0] = 1.0;
    for (int n = 0; n < cfg.Np; ++n) next[n + 1] = RG * next[n] + (RF - RG) * y[n];
    y = std::move(next);
  }
  return std::abs(y[cfg.Np]);
}

rvec linspace(double lo, double hi, std::size_t n) {
  if (n == 0) throw DomainError("linspace needs at least one point");
  if (n == 1) return {lo};
  if (!(hi > lo)) throw DomainError("linspace needs hi > lo");
  rvec v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = lo + (hi - lo) * double(i) / double(n - 1);
  return v;
}

namespace {

template <class F>
RegionGrid fill_grid(const rvec& r1, const rvec& r2, F f) {
  if (r1.empty() || r2.empty()) throw DomainError("region grid needs positive resolution");
  RegionGrid g;
  g.r1 = r1;
  g.r2 = r2;
  g.values.resize(r1.size() * r2.size());
  for (std::size_t j = 0; j < r2.size(); ++j)
    for (std::size_t i = 0; i < r1.size(); ++i)
      g.values[j * r1.size() + i] = f(cplx(0.0, r1[i]), cplx(0.0, r2[j]));
  return g;
}

}  // namespace

RegionGrid stability_region(const ExpTableau& tab, const rvec& r1, const rvec& r2,
                            const RepartitionSpec& rep) {
  return fill_grid(r1, r2, [&](cplx z1, cplx z2) { return std::abs(method_R(tab, z1, z2, rep)); });
}

RegionGrid parareal_stability_region(const PararealConfig& cfg, int k, const rvec& r1,
                                     const rvec& r2, const RepartitionSpec& rep) {
  return fill_grid(r1, r2, [&](cplx z1, cplx z2) { return parareal_R(cfg, k, z1, z2, rep); });
}

RegionGrid convergence_region(const PararealConfig& cfg, const rvec& r1,
                              const rvec& r2, const RepartitionSpec& rep) {
  return fill_grid(r1, r2, [&](cplx z1, cplx z2) { return E_norm_inf(cfg, z1, z2, rep); });
}

std::string RegionGrid::to_csv(const std::string& header) const {
  std::ostringstream os;
  if (!header.empty()) os << header << '\n';
  os << "r1";
  for (double v : r1) os << ',' << fmt_double(v);
  os << "\nr2";
  for (double v : r2) os << ',' << fmt_double(v);
  os << '\n';
  for (std::size_t j = 0; j < r2.size(); ++j) {
    for (std::size_t i = 0; i < r1.size(); ++i) {
      if (i) os << ',';
      os << fmt_double(at(i, j));
    }
    os << '\n';
  }
  return os.str();
}

R1MaxResult r1_max(const PararealConfig& cfg, double r2_bound,
                   const RepartitionSpec& rep, const R1MaxOptions& opt) {
  if (!(r2_bound >= 0.0)) throw DomainError("r2_bound must be nonnegative");
  if (opt.r2_samples < 1 || !(opt.scan_step > 0.0) || !(opt.tolerance > 0.0))
    throw DomainError("invalid r1_max options");
  const rvec r2s = r2_bound > 0.0 ? linspace(-r2_bound, r2_bound, opt.r2_samples)
                                  : rvec{0.0};
  auto ok = [&](double w) {
    for (double r2 : r2s)
      if (!(E_norm_inf(cfg, cplx(0.0, w), cplx(0.0, r2), rep) < 1.0)) return false;
    return true;
  };
  R1MaxResult res;
  if (!ok(0.0)) return res;
  res.found = true;
  double lo = 0.0, hi = opt.scan_step;
  while (ok(hi)) {
    lo = hi;
    hi += opt.scan_step;
    if (hi > opt.scan_limit) {
      res.unbounded = true;
      res.r1max = lo;
      return res;
    }
  }
  for (int it = 0; it < 200 && hi - lo > opt.tolerance; ++it) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? lo : hi) = mid;
  }
  res.r1max = lo;
  return res;
}

ConvergentModes convergent_modes(const ProblemInstance& inst, const PararealConfig& cfg,
                                 const RepartitionSpec& rep, double c2,
                                 const R1MaxOptions& opt) {
  cfg.validate();
  const double h = cfg.h();
  ConvergentModes out;
  out.r1max = r1_max(cfg, c2 * h, rep, opt).r1max;
  const auto& p = inst.problem;
  std::vector<int> idx;
  if (inst.grid.dims == 1) idx = fft_indices(inst.grid.sizes[0]);
  for (std::size_t q = 0; q < p.dim(); ++q) {
    if (!p.mask.empty() && !p.mask[q]) continue;
    ++out.kept;
    const double r1 = h * std::abs(p.L[q]);
    out.max_scaled_L = std::max(out.max_scaled_L, r1);
    if (r1 < out.r1max) {
      out.indices.push_back(q);
      if (!idx.empty()) out.max_index = std::max(out.max_index, std::abs(idx[q]));
    }
  }
  return out;
}

}  // namespace expara
