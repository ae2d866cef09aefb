#include "expara/integrators.hpp"

#include <cmath>
#include <string>

#include "expara/errors.hpp"
#include "expara/phi.hpp"

namespace expara {

bool all_finite(const cvec& y) {
  for (const auto& v : y)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

cvec eval_combo(const PhiCombo& combo, const cvec& hL) {
  cvec out(hL.size(), 0.0);
  for (const auto& term : combo)
    for (std::size_t k = 0; k < hL.size(); ++k)
      out[k] += term.coeff * phi_scalar(term.index, term.scale * hL[k]);
  return out;
}

ExpTableau erk_tableau(int order) {
  ExpTableau t;
  t.order = order;
  switch (order) {
    case 1:
      t.name = "ERK1";
      t.s = 1;
      t.c = {0.0};
      t.a = {{}};
      t.b = {{{1, 1, 1}}};
      break;
    case 2:
      t.name = "ERK2";
      t.s = 2;
      t.c = {0.0, 1.0};
      t.a = {{}, {{{1, 1, 1}}}};
      t.b = {{{1, 1, 1}, {-1, 2, 1}}, {{1, 2, 1}}};
      break;
    case 3:
      t.name = "ERK3";
      t.s = 3;
      t.c = {0.0, 0.5, 1.0};
      t.a = {{}, {{{0.5, 1, 0.5}}}, {{{-1, 1, 1}}, {{2, 1, 1}}}};
      t.b = {{{1, 1, 1}, {-3, 2, 1}, {4, 3, 1}},
             {{4, 2, 1}, {-8, 3, 1}},
             {{-1, 2, 1}, {4, 3, 1}}};
      break;
    case 4:
      t.name = "ERK4";
      t.s = 4;
      t.c = {0.0, 0.5, 0.5, 1.0};
      t.a = {{},
             {{{0.5, 1, 0.5}}},
             {{{0.5, 1, 0.5}, {-1, 2, 0.5}}, {{1, 2, 0.5}}},
             {{{1, 1, 1}, {-2, 2, 1}}, {}, {{2, 2, 1}}}};
      t.b = {{{1, 1, 1}, {-3, 2, 1}, {4, 3, 1}},
             {{2, 2, 1}, {-4, 3, 1}},
             {{2, 2, 1}, {-4, 3, 1}},
             {{-1, 2, 1}, {4, 3, 1}}};
      break;
    default:
      throw UnsupportedError("no ERK tableau of order " + std::to_string(order));
  }
  return t;
}

cvec SemilinearProblem::rhs(double t, const cvec& y) const {
  cvec out = nonlinear(t, y);
  for (std::size_t k = 0; k < y.size(); ++k) out[k] += L[k] * y[k];
  return out;
}

ErkStepper::ErkStepper(SemilinearProblem problem, const ExpTableau& tab, double h)
    : prob_(std::move(problem)), tab_(tab), h_(h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("step size must be positive");
  const std::size_t n = prob_.dim();
  cvec hL(n);
  for (std::size_t k = 0; k < n; ++k) hL[k] = h * prob_.L[k];
  auto scaled_exp = [&](double c) {
    cvec e(n);
    for (std::size_t k = 0; k < n; ++k) e[k] = std::exp(c * hL[k]);
    return e;
  };
  auto times_h = [&](cvec v) {
    for (auto& x : v) x *= h;
    return v;
  };
  for (int i = 0; i < tab_.s; ++i) {
    stage_exp_.push_back(scaled_exp(tab_.c[i]));
    std::vector<cvec> row;
    for (int j = 0; j < i; ++j) {
      const auto& combo = tab_.a[i][j];
      row.push_back(combo.empty() ? cvec{} : times_h(eval_combo(combo, hL)));
    }
    a_.push_back(std::move(row));
    b_.push_back(times_h(eval_combo(tab_.b[i], hL)));
  }
  exp_hl_ = scaled_exp(1.0);
}

cvec ErkStepper::step(double t, const cvec& y) const {
  const std::size_t n = y.size();
  if (n != prob_.dim()) throw DomainError("state size does not match problem");
  std::vector<cvec> nl;
  nl.reserve(tab_.s);
  for (int i = 0; i < tab_.s; ++i) {
    cvec Y(n);
    for (std::size_t k = 0; k < n; ++k) Y[k] = stage_exp_[i][k] * y[k];
    for (int j = 0; j < i; ++j) {
      const cvec& a = a_[i][j];
      if (a.empty()) continue;
      for (std::size_t k = 0; k < n; ++k) Y[k] += a[k] * nl[j][k];
    }
    nl.push_back(prob_.nonlinear(t + tab_.c[i] * h_, Y));
    if (!all_finite(nl.back()))
      throw OverflowError(tab_.name + " stage " + std::to_string(i + 1) +
                          " produced a non-finite value");
  }
  cvec out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = exp_hl_[k] * y[k];
  for (int j = 0; j < tab_.s; ++j)
    for (std::size_t k = 0; k < n; ++k) out[k] += b_[j][k] * nl[j][k];
  if (!all_finite(out))
    throw OverflowError(tab_.name + " output produced a non-finite value");
  return out;
}

cvec erk_step(const SemilinearProblem& problem, const ExpTableau& tab, double t,
              const cvec& y, double h) {
  return ErkStepper(problem, tab, h).step(t, y);
}

cvec rk4_step(const RhsFn& rhs, double t, const cvec& y, double h) {
  const std::size_t n = y.size();
  auto axpy = [n](const cvec& a, double s, const cvec& b) {
    cvec r(n);
    for (std::size_t k = 0; k < n; ++k) r[k] = a[k] + s * b[k];
    return r;
  };
  auto check = [](const cvec& v, int stage) {
    if (!all_finite(v))
      throw OverflowError("RK4 stage " + std::to_string(stage) +
                          " produced a non-finite value");
  };
  cvec k1 = rhs(t, y);
  check(k1, 1);
  cvec k2 = rhs(t + h / 2, axpy(y, h / 2, k1));
  check(k2, 2);
  cvec k3 = rhs(t + h / 2, axpy(y, h / 2, k2));
  check(k3, 3);
  cvec k4 = rhs(t + h, axpy(y, h, k3));
  check(k4, 4);
  cvec out(n);
  for (std::size_t k = 0; k < n; ++k)
    out[k] = y[k] + h / 6 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
  return out;
}

Rk4Stepper::Rk4Stepper(SemilinearProblem problem, double h)
    : prob_(std::move(problem)), h_(h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("step size must be positive");
}

cvec Rk4Stepper::step(double t, const cvec& y) const {
  return rk4_step([this](double s, const cvec& v) { return prob_.rhs(s, v); }, t,
                  y, h_);
}

IntegrationResult integrate(const Stepper& stepper, const cvec& y0, double t0,
                            double tfinal, long Ns, const rvec& snapshot_times) {
  if (!(tfinal > t0)) throw DomainError("integrate needs tfinal > t0");
  if (Ns < 1) throw DomainError("integrate needs at least one step");
  const double h = (tfinal - t0) / double(Ns);
  if (std::abs(stepper.h() - h) > 1e-12 * h)
    throw DomainError("stepper step size does not match (tfinal - t0) / Ns");

  // Each snapshot is taken at the nearest step boundary.
  std::vector<long> snap_steps;
  for (double ts : snapshot_times) {
    long n = std::lround((ts - t0) / h);
    if (n < 0 || n > Ns) throw DomainError("snapshot time outside the interval");
    snap_steps.push_back(n);
  }

  IntegrationResult res;
  auto take = [&](long n, const cvec& y) {
    for (long s : snap_steps)
      if (s == n) res.snapshots.emplace_back(t0 + double(n) * h, y);
  };
  cvec y = y0;
  take(0, y);
  for (long n = 0; n < Ns; ++n) {
    try {
      y = stepper.step(t0 + double(n) * h, y);
    } catch (const OverflowError& e) {
      throw OverflowError(std::string(e.what()) + " at step " + std::to_string(n + 1));
    }
    take(n + 1, y);
  }
  res.final_state = std::move(y);
  return res;
}

}  // namespace expara
