#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "expara/errors.hpp"
#include "expara/parareal.hpp"
#include "expara/repartition.hpp"

using namespace expara;
constexpr double pi = std::numbers::pi;

namespace {

// y' = l1 y + l2 y with l1 in L and l2 y as the explicit part.
SemilinearProblem dahlquist(cvec l1, cplx l2, rvec kmag = {}) {
  SemilinearProblem p;
  p.L = std::move(l1);
  p.kmag = std::move(kmag);
  p.nonlinear = [l2](double, const cvec& y) {
    cvec r(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) r[i] = l2 * y[i];
    return r;
  };
  return p;
}

double max_diff(const cvec& a, const cvec& b) {
  double w = 0;
  for (std::size_t i = 0; i < a.size(); ++i) w = std::max(w, std::abs(a[i] - b[i]));
  return w;
}

}  // namespace

TEST_CASE("config validation and step sizes") {
  PararealConfig c;
  c.Np = 8;
  c.Nf = 4;
  c.Ng = 2;
  c.K = 3;
  c.tfinal = 2.0;
  CHECK_NOTHROW(c.validate());
  CHECK(c.Ns() == 32);
  CHECK(c.h() == 1.0 / 16);
  CHECK(c.coarse_h() == 1.0 / 8);
  c.K = 9;
  CHECK_THROWS_AS(c.validate(), DomainError);
  c.K = -1;
  CHECK_THROWS_AS(c.validate(), DomainError);
  c.K = 0;
  c.Nf = 0;
  CHECK_THROWS_AS(c.validate(), DomainError);
}

TEST_CASE("speedup model") {
  CHECK(speedup(64, 0, 1.0) == 1.0);
  CHECK(std::abs(speedup(2048, 5, 3.0 / 128) - 38.56) < 0.01);
  CHECK(speedup(2048, 5, 1e-12) == doctest::Approx(2048.0 / 5).epsilon(1e-9));
  for (int k = 0; k < 10; ++k) CHECK(speedup(512, k + 1, 0.05) < speedup(512, k, 0.05));
  for (double a = 0.01; a < 1; a *= 2) CHECK(speedup(512, 3, 2 * a) < speedup(512, 3, a));
  CHECK_THROWS_AS(speedup(8, 1, 0.0), DomainError);
  CHECK_THROWS_AS(speedup(8, -1, 0.5), DomainError);
}

TEST_CASE("cost ratio") {
  PararealConfig c;
  c.Np = 2048;
  c.Nf = 32;
  c.Ng = 1;
  CHECK(cost_alpha(c, stage_cost_model(c)) == 3.0 / 128);
  c.Ng = 3;
  CHECK(cost_alpha(c, stage_cost_model(c)) == 9.0 / 128);
  c.Ng = 32;
  CHECK(cost_alpha(c, {2.5, 2.5}) == 1.0);
  CHECK_THROWS_AS(cost_alpha(c, {0.0, 1.0}), DomainError);
}

TEST_CASE("fine_serial agrees with integrate and the exact linear solution") {
  auto p = dahlquist({cplx(0, 3), cplx(-1, 0.5)}, 0.0);
  PararealConfig c;
  c.Np = 4;
  c.Nf = 5;
  c.tfinal = 1.0;
  cvec y0 = {1.0, cplx(0, 2)};
  cvec f = fine_serial(p, c, y0);
  ErkStepper s(p, erk_tableau(4), c.h());
  CHECK(f == integrate(s, y0, 0.0, 1.0, 20).final_state);
  for (std::size_t i = 0; i < 2; ++i) CHECK(std::abs(f[i] - std::exp(p.L[i]) * y0[i]) < 1e-13);
}

TEST_CASE("coarse equal to fine converges after one iteration") {
  auto inst = make_nls(64, NlsInitial::smooth);
  PararealConfig c;
  c.Np = 8;
  c.Nf = c.Ng = 4;
  c.fine_order = c.coarse_order = 4;
  c.K = 1;
  c.tfinal = 0.5;
  auto run = parareal_run(inst.problem, c, inst.initial);
  REQUIRE(run.iterates.size() == 2);
  CHECK(run.iterates[1][c.Np] == run.fine);
  CHECK(run.errors_vs_fine[1] == 0.0);
}

TEST_CASE("iterate Np reproduces the fine solution on scalar linear problems") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3, 3);
  std::uniform_int_distribution<int> np(1, 16), nf(1, 8);
  for (int trial = 0; trial < 40; ++trial) {
    PararealConfig c;
    c.Np = np(rng);
    c.Nf = nf(rng);
    c.Ng = 1 + trial % 3;
    c.coarse_order = 1 + trial % 3;
    c.K = c.Np;
    c.tfinal = 1.0;
    auto p = dahlquist({cplx(-std::abs(u(rng)), u(rng))}, cplx(0.1 * u(rng), 0.1 * u(rng)));
    auto run = parareal_run(p, c, {1.0});
    CHECK(std::abs(run.iterates[c.Np][c.Np][0] - run.fine[0]) <= 1e-12 * std::abs(run.fine[0]));
  }
}

TEST_CASE("stored iterates satisfy the correction recurrence") {
  auto inst = make_nls(64, NlsInitial::oscillatory);
  auto p = apply_repartition(inst.problem, {RepartitionKind::spectral_abs, pi / 128});
  PararealConfig c;
  c.Np = 6;
  c.Nf = 8;
  c.Ng = 2;
  c.K = 3;
  c.tfinal = 0.3;
  auto run = parareal_run(p, c, inst.initial);
  const double H = c.tfinal / c.Np;
  ErkStepper f(p, erk_tableau(4), c.h()), g(p, erk_tableau(3), c.coarse_h());
  auto prop = [](const Stepper& s, cvec y, double t, int n) {
    for (int i = 0; i < n; ++i) y = s.step(t + i * s.h(), y);
    return y;
  };
  CHECK(run.iterates[0][0] == inst.initial);
  for (int n = 0; n < c.Np; ++n)
    CHECK(run.iterates[0][n + 1] == prop(g, run.iterates[0][n], n * H, c.Ng));
  for (int k = 0; k < c.K; ++k)
    for (int n = 0; n < c.Np; ++n) {
      const auto& prev = run.iterates[k];
      const auto& cur = run.iterates[k + 1];
      cvec gn = prop(g, cur[n], n * H, c.Ng), fo = prop(f, prev[n], n * H, c.Nf),
           go = prop(g, prev[n], n * H, c.Ng);
      cvec expect(gn.size());
      for (std::size_t q = 0; q < gn.size(); ++q) expect[q] = gn[q] + (fo[q] - go[q]);
      CHECK(max_diff(cur[n + 1], expect) <= 1e-13);
    }
}

TEST_CASE("thread count does not change the result") {
  auto inst = make_nls(64, NlsInitial::full_spectrum);
  auto p = apply_repartition(inst.problem, {RepartitionKind::spectral_abs, pi / 128});
  PararealConfig c;
  c.Np = 7;
  c.Nf = 16;
  c.K = 4;
  c.tfinal = 0.7;
  auto serial = parareal_run(p, c, inst.initial, 1, inst.to_physical);
  for (int t : {2, 3, 7, 32}) {
    auto par = parareal_run(p, c, inst.initial, t, inst.to_physical);
    CHECK(par.iterates == serial.iterates);
    CHECK(par.errors_vs_fine == serial.errors_vs_fine);
  }
  CHECK(serial.speedup.size() == 5);
  CHECK(serial.alpha == 3.0 / 64);
}

TEST_CASE("overflow reports the propagator and coordinates") {
  auto p = dahlquist({cplx(0, 1)}, cplx(1e200, 0));
  PararealConfig c;
  c.Np = 2;
  c.Nf = 2;
  c.K = 1;
  try {
    parareal_run(p, c, {1e200});
    FAIL("expected overflow");
  } catch (const OverflowError& e) {
    CHECK(std::string(e.what()).find("coarse propagator (k=0, n=0)") != std::string::npos);
  }
  CHECK_THROWS_AS(parareal_run(p, c, {cplx(NAN, 0)}), DomainError);
}

// Linearized NLS modes at the full Np = 2048, Nf = 32, Ng = 1 configuration.
// The explicit part is i r2 / h with r2 at the top of the NLS range.
TEST_CASE("classical Parareal diverges on stiff NLS modes while repartitioned converges") {
  std::vector<int> idx = {0, 1, 40, 73, 120, 200, 341};
  cvec L, y0;
  rvec kmag;
  for (int i : idx) {
    const double k = 0.25 * i;
    L.push_back(cplx(0, -k * k));
    kmag.push_back(k);
    y0.push_back(std::exp(-0.1 * i));
  }
  auto p = dahlquist(L, cplx(0, 2), kmag);
  PararealConfig c;
  c.Np = 2048;
  c.Nf = 32;
  c.K = 10;
  c.tfinal = 14;
  auto classical = parareal_run(p, c, y0);
  auto rep = parareal_run(apply_repartition(p, {RepartitionKind::spectral_abs, pi / 128}), c, y0);
  CHECK(classical.errors_vs_fine.back() > 1.0);
  CHECK(classical.errors_vs_fine.back() > 1e3 * classical.errors_vs_fine[1]);
  for (int k = 0; k < c.K; ++k)
    CHECK(rep.errors_vs_fine[k + 1] <= rep.errors_vs_fine[k] * (1 + 1e-9));
  CHECK(rep.errors_vs_fine.back() < 1e-5);
}
