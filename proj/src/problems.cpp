#include "expara/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "expara/errors.hpp"
#include "expara/format.hpp"

namespace expara {

namespace {

constexpr double pi = std::numbers::pi;
const cplx I(0.0, 1.0);

void require_even(std::size_t n, const char* what) {
  if (n < 2 || n % 2 != 0)
    throw DomainError(std::string(what) + " must be even, got " + std::to_string(n));
}

std::vector<bool> mask_2d(std::size_t nx, std::size_t ny) {
  auto mx = dealias_mask(nx), my = dealias_mask(ny);
  std::vector<bool> m(nx * ny);
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i) m[j * nx + i] = mx[i] && my[j];
  return m;
}

void apply_mask(cvec& v, const std::vector<bool>& m) {
  for (std::size_t k = 0; k < v.size(); ++k)
    if (!m[k]) v[k] = 0.0;
}

rvec abs_of(const rvec& k) {
  rvec r(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) r[i] = std::abs(k[i]);
  return r;
}

// Shared body of the cubic Schrodinger-type nonlinearities: 2i F(|u|^2 u).
NonlinearFn cubic_nonlinearity(std::vector<bool> mask) {
  return [mask](double, const cvec& y) {
    cvec u = idft(y);
    for (auto& v : u) v = std::norm(v) * v;
    cvec r = dft(u);
    for (auto& v : r) v *= 2.0 * I;
    apply_mask(r, mask);
    return r;
  };
}

ProblemInstance make_1d(const std::string& name, std::size_t nx, double length,
                        double x0) {
  require_even(nx, "Nx");
  ProblemInstance inst;
  inst.name = name;
  inst.grid = make_grid_1d(nx, length);
  inst.origin = {x0};
  inst.problem.mask = dealias_mask(nx);
  inst.problem.kmag = abs_of(inst.grid.k[0]);
  inst.to_physical = [](const cvec& y) { return idft(y); };
  return inst;
}

rvec grid_points(std::size_t n, double x0, double length) {
  rvec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = x0 + length * double(i) / double(n);
  return x;
}

cvec masked_dft(const cvec& u, const std::vector<bool>& m) {
  cvec y = dft(u);
  apply_mask(y, m);
  return y;
}

}  // namespace

ProblemInstance make_zds(std::size_t nx) {
  ProblemInstance inst = make_1d("zds", nx, 8 * pi, -4 * pi);
  const rvec& k = inst.grid.k[0];
  inst.problem.L.resize(nx);
  for (std::size_t i = 0; i < nx; ++i) inst.problem.L[i] = I * k[i] * k[i] * k[i];
  inst.problem.nonlinear = cubic_nonlinearity(inst.problem.mask);
  rvec x = grid_points(nx, -4 * pi, 8 * pi);
  cvec u(nx);
  for (std::size_t i = 0; i < nx; ++i) u[i] = 1.0 + 0.01 * std::exp(I * 0.75 * x[i]);
  inst.initial = masked_dft(u, inst.problem.mask);
  inst.tfinal = 40.0;
  return inst;
}

NlsInitial parse_nls_initial(const std::string& s) {
  if (s == "smooth") return NlsInitial::smooth;
  if (s == "oscillatory") return NlsInitial::oscillatory;
  if (s == "full" || s == "full-spectrum") return NlsInitial::full_spectrum;
  throw ConfigError("unknown NLS initial condition '" + s + "'");
}

ProblemInstance make_nls(std::size_t nx, NlsInitial ic) {
  ProblemInstance inst = make_1d("nls", nx, 8 * pi, -4 * pi);
  const rvec& k = inst.grid.k[0];
  inst.problem.L.resize(nx);
  for (std::size_t i = 0; i < nx; ++i) inst.problem.L[i] = -I * k[i] * k[i];
  inst.problem.nonlinear = cubic_nonlinearity(inst.problem.mask);
  rvec x = grid_points(nx, -4 * pi, 8 * pi);
  cvec u(nx);
  for (std::size_t i = 0; i < nx; ++i) {
    double v = 1.0;
    switch (ic) {
      case NlsInitial::smooth:
        v += 0.01 * std::cos(x[i] / 4);
        break;
      case NlsInitial::oscillatory:
        v += 0.01 * std::cos(x[i] / 4) + 0.01 * std::cos(45 * x[i] / 4);
        break;
      case NlsInitial::full_spectrum:
        for (int m = 1; m <= 45; ++m) v += 0.01 * std::cos(m * x[i] / 4);
        break;
    }
    u[i] = v;
  }
  inst.initial = masked_dft(u, inst.problem.mask);
  inst.tfinal = 14.0;
  return inst;
}

ProblemInstance make_kdv(std::size_t nx, double delta) {
  ProblemInstance inst = make_1d("kdv", nx, 2.0, 0.0);
  const rvec k = inst.grid.k[0];
  const double d2 = delta * delta;
  inst.problem.L.resize(nx);
  for (std::size_t i = 0; i < nx; ++i) inst.problem.L[i] = I * d2 * k[i] * k[i] * k[i];
  auto mask = inst.problem.mask;
  inst.problem.nonlinear = [k, mask](double, const cvec& y) {
    cvec u = idft(y);
    for (auto& v : u) v = v.real() * v.real();
    cvec r = dft(u);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] *= -0.5 * I * k[i];
    apply_mask(r, mask);
    return r;
  };
  rvec x = grid_points(nx, 0.0, 2.0);
  cvec u(nx);
  for (std::size_t i = 0; i < nx; ++i) u[i] = std::cos(pi * x[i]);
  inst.initial = masked_dft(u, inst.problem.mask);
  inst.tfinal = 160.0;
  return inst;
}

ProblemInstance make_kp(std::size_t nx, std::size_t ny, bool check_constraint) {
  require_even(nx, "Nx");
  require_even(ny, "Ny");
  ProblemInstance inst;
  inst.name = "kp";
  inst.grid = make_grid_2d(nx, ny, 16 * pi, 8 * pi);
  inst.origin = {-8 * pi, 0.0};
  const double wx = inst.grid.omega(0), wy = inst.grid.omega(1);
  auto ix = fft_indices(nx), iy = fft_indices(ny);
  const std::size_t n = nx * ny;
  auto& p = inst.problem;
  p.L.assign(n, 0.0);
  p.kmag.resize(n);
  rvec kx_phys(n);
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i) {
      const std::size_t q = j * nx + i;
      const double Kx = wx * ix[i], Ky = wy * iy[j];
      kx_phys[q] = Kx;
      p.kmag[q] = std::hypot(Kx, Ky);
      // sigma^2 = -1; the kx = 0 multiplier is set to zero.
      if (ix[i] != 0) p.L[q] = I * Kx * Kx * Kx + 3.0 * I * Ky * Ky / Kx;
    }
  p.mask = mask_2d(nx, ny);
  auto mask = p.mask;
  p.nonlinear = [kx_phys, mask, nx, ny](double, const cvec& y) {
    cvec u = idft2(y, ny, nx);
    for (auto& v : u) v = v.real() * v.real();
    cvec r = dft2(u, ny, nx);
    for (std::size_t q = 0; q < r.size(); ++q) r[q] *= -3.0 * I * kx_phys[q];
    apply_mask(r, mask);
    return r;
  };
  rvec x = grid_points(nx, -8 * pi, 16 * pi), yy = grid_points(ny, 0.0, 8 * pi);
  cvec u(n);
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i) {
      double s = 1.0 / std::cosh((x[i] + 4 * pi) + 0.2 * std::cos(yy[j] / 4));
      u[j * nx + i] = 2.0 * s * s;
    }
  inst.initial = dft2(u, ny, nx);
  apply_mask(inst.initial, p.mask);
  inst.tfinal = 4.0;
  inst.to_physical = [nx, ny](const cvec& v) { return idft2(v, ny, nx); };
  if (check_constraint && kp_constraint_residual(inst, inst.initial) >= 1e-12)
    throw DomainError("KP initial condition violates the integral constraint");
  return inst;
}

double kp_constraint_residual(const ProblemInstance& kp, const cvec& state) {
  const std::size_t nx = kp.grid.sizes.at(0), ny = kp.grid.sizes.at(1);
  const double wy = kp.grid.omega(1);
  auto iy = fft_indices(ny);
  double worst = 0.0;
  for (std::size_t j = 0; j < ny; ++j) {
    if (iy[j] == 0) continue;
    const double Ky = wy * iy[j];
    worst = std::max(worst, std::abs(Ky * Ky * state[j * nx]) / double(nx * ny));
  }
  return worst;
}

ProblemInstance make_vp(std::size_t nx, std::size_t nv) {
  require_even(nx, "Nx");
  require_even(nv, "Nv");
  ProblemInstance inst;
  inst.name = "vp";
  const double lx = 20 * pi, lv = 16.0;
  inst.grid = make_grid_2d(nx, nv, lx, lv);
  inst.origin = {0.0, -8.0};
  const double dv = lv / double(nv);
  const rvec K = inst.grid.k[0];
  const rvec Kv = inst.grid.k[1];
  rvec v = grid_points(nv, -8.0, lv);
  auto xmask = dealias_mask(nx);
  const std::size_t n = nx * nv;
  auto& p = inst.problem;
  p.L.resize(n);
  p.kmag.resize(n);
  p.mask.resize(n);
  for (std::size_t j = 0; j < nv; ++j)
    for (std::size_t i = 0; i < nx; ++i) {
      p.L[j * nx + i] = I * K[i] * v[j];
      p.kmag[j * nx + i] = std::abs(K[i]);
      p.mask[j * nx + i] = xmask[i];
    }
  auto mask = p.mask;
  p.nonlinear = [=](double, const cvec& fhat) {
    // E(x) from the velocity moment.
    cvec rho(nx, 0.0);
    for (std::size_t j = 0; j < nv; ++j)
      for (std::size_t i = 0; i < nx; ++i) rho[i] += dv * fhat[j * nx + i];
    cvec ehat(nx, 0.0);
    for (std::size_t i = 0; i < nx; ++i)
      if (K[i] != 0.0) ehat[i] = rho[i] / (I * K[i]);
    cvec E = idft(ehat);
    // f_v by spectral differentiation along v (columns of the physical array).
    cvec f = idft_rows(fhat, nv, nx);
    cvec ft(n);
    for (std::size_t j = 0; j < nv; ++j)
      for (std::size_t i = 0; i < nx; ++i) ft[i * nv + j] = f[j * nx + i].real();
    cvec fth = dft_rows(ft, nx, nv);
    for (std::size_t i = 0; i < nx; ++i)
      for (std::size_t j = 0; j < nv; ++j) fth[i * nv + j] *= I * Kv[j];
    cvec fvt = idft_rows(fth, nx, nv);
    cvec prod(n);
    for (std::size_t j = 0; j < nv; ++j)
      for (std::size_t i = 0; i < nx; ++i)
        prod[j * nx + i] = E[i].real() * fvt[i * nv + j].real();
    cvec r = dft_rows(prod, nv, nx);
    apply_mask(r, mask);
    return r;
  };
  rvec x = grid_points(nx, 0.0, lx);
  cvec f(n);
  const double c = 1.0 / std::sqrt(2 * pi);
  for (std::size_t j = 0; j < nv; ++j) {
    const double fv = 0.9 * c * std::exp(-v[j] * v[j] / 2) +
                      0.2 * c * std::exp(-2 * (v[j] - 4.5) * (v[j] - 4.5));
    for (std::size_t i = 0; i < nx; ++i)
      f[j * nx + i] = fv * (1.0 + 0.04 * std::cos(0.3 * x[i]));
  }
  inst.initial = dft_rows(f, nv, nx);
  apply_mask(inst.initial, p.mask);
  inst.tfinal = 50.0;
  inst.to_physical = [nx, nv](const cvec& s) { return idft_rows(s, nv, nx); };
  return inst;
}

rvec vp_efield(const ProblemInstance& vp, const cvec& fhat) {
  const std::size_t nx = vp.grid.sizes.at(0), nv = vp.grid.sizes.at(1);
  const double dv = vp.grid.lengths.at(1) / double(nv);
  const rvec& K = vp.grid.k[0];
  cvec ehat(nx, 0.0);
  for (std::size_t i = 0; i < nx; ++i) {
    if (K[i] == 0.0) continue;
    cplx rho = 0.0;
    for (std::size_t j = 0; j < nv; ++j) rho += dv * fhat[j * nx + i];
    ehat[i] = rho / (I * K[i]);
  }
  cvec E = idft(ehat);
  rvec out(nx);
  for (std::size_t i = 0; i < nx; ++i) out[i] = E[i].real();
  return out;
}

double spectral_radius(const SemilinearProblem& p) {
  double r = 0.0;
  for (std::size_t k = 0; k < p.dim(); ++k)
    if (p.mask.empty() || p.mask[k]) r = std::max(r, std::abs(p.L[k]));
  return r;
}

double rel_error(const cvec& y, const cvec& yref) {
  if (y.size() != yref.size()) throw DomainError("rel_error: size mismatch");
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < y.size(); ++k) {
    num = std::max(num, std::abs(y[k] - yref[k]));
    den = std::max(den, std::abs(yref[k]));
  }
  if (den == 0.0) throw DomainError("rel_error: reference has zero norm");
  return num / den;
}

std::string snapshot_csv(const ProblemInstance& inst, const cvec& state, double t,
                         const std::string& header_extra) {
  cvec u = inst.to_physical(state);
  std::ostringstream os;
  os << "# ";
  if (!header_extra.empty()) os << header_extra << ' ';
  os << "problem=" << inst.name << " t=" << fmt_double(t) << '\n';
  if (inst.grid.dims == 1) {
    const std::size_t n = inst.grid.sizes[0];
    rvec x = grid_points(n, inst.origin[0], inst.grid.lengths[0]);
    for (std::size_t i = 0; i < n; ++i)
      os << fmt_double(x[i]) << ',' << fmt_double(std::norm(u[i])) << '\n';
  } else {
    const std::size_t nx = inst.grid.sizes[0], ny = inst.grid.sizes[1];
    for (std::size_t j = 0; j < ny; ++j) {
      for (std::size_t i = 0; i < nx; ++i) {
        if (i) os << ',';
        os << fmt_double(std::abs(u[j * nx + i]));
      }
      os << '\n';
    }
  }
  return os.str();
}

}  // namespace expara
