#include <cmath>
#include <random>

#include "doctest.h"
#include "expara/errors.hpp"
#include "expara/integrators.hpp"
#include "expara/phi.hpp"
#include "expara/problems.hpp"
#include "oracles.hpp"

using namespace expara;

namespace {

SemilinearProblem scalar(cplx l, cplx mu) {
  SemilinearProblem p;
  p.L = {l};
  p.nonlinear = [mu](double, const cvec& y) { return cvec{mu * y[0]}; };
  return p;
}

}  // namespace

TEST_CASE("tableau structure") {
  for (int p = 1; p <= 4; ++p) {
    auto t = erk_tableau(p);
    CHECK(t.order == p);
    CHECK(t.s == p);
    CHECK(t.c.size() == std::size_t(p));
    CHECK(t.c[0] == 0.0);
    for (int i = 0; i < t.s; ++i) CHECK(t.a[i].size() == std::size_t(i));
  }
  CHECK_THROWS_AS(erk_tableau(5), UnsupportedError);
  CHECK_THROWS_AS(erk_tableau(0), UnsupportedError);
}

TEST_CASE("tableau coefficients reproduce the published rows") {
  auto e1 = erk_tableau(1);
  CHECK(e1.b[0].size() == 1);
  CHECK(e1.b[0][0].coeff == 1.0);
  CHECK(e1.b[0][0].index == 1);

  // b of ERK3 as phi combinations evaluated at a test point.
  const cvec z = {cplx(0.3, 2.0)};
  auto e3 = erk_tableau(3);
  auto phi = [&](int j) { return phi_scalar(j, z[0]); };
  CHECK(std::abs(eval_combo(e3.b[0], z)[0] - (phi(1) - 3.0 * phi(2) + 4.0 * phi(3))) < 1e-14);
  CHECK(std::abs(eval_combo(e3.b[1], z)[0] - (4.0 * phi(2) - 8.0 * phi(3))) < 1e-14);
  CHECK(std::abs(eval_combo(e3.b[2], z)[0] - (-phi(2) + 4.0 * phi(3))) < 1e-14);

  auto e4 = erk_tableau(4);
  CHECK(e4.c == rvec{0.0, 0.5, 0.5, 1.0});
  CHECK(std::abs(eval_combo(e4.a[2][1], z)[0] - phi_scalar(2, 0.5 * z[0])) < 1e-14);
  CHECK(std::abs(eval_combo(e4.a[3][2], z)[0] - 2.0 * phi(2)) < 1e-14);
  CHECK(e4.a[3][1].empty());
  CHECK(std::abs(eval_combo(e4.b[0], z)[0] - (phi(1) - 3.0 * phi(2) + 4.0 * phi(3))) < 1e-14);
}

TEST_CASE("linear problems are propagated exactly") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  SemilinearProblem p;
  for (int k = 0; k < 20; ++k) p.L.push_back(cplx(-std::abs(u(rng)), 50.0 * u(rng)));
  p.nonlinear = [](double, const cvec& y) { return cvec(y.size(), 0.0); };
  cvec y(20);
  for (auto& v : y) v = cplx(u(rng), u(rng));
  for (int order = 1; order <= 4; ++order) {
    ErkStepper s(p, erk_tableau(order), 0.37);
    cvec out = s.step(0.0, y);
    for (int k = 0; k < 20; ++k)
      CHECK(std::abs(out[k] - std::exp(0.37 * p.L[k]) * y[k]) <= 1e-14 * std::abs(y[k]));
  }
}

TEST_CASE("ZDS with zero nonlinearity propagates as exp(i h k^3)") {
  auto inst = make_zds(32);
  inst.problem.nonlinear = [](double, const cvec& y) { return cvec(y.size(), 0.0); };
  const double h = 0.02;
  for (int order = 1; order <= 4; ++order) {
    cvec out = erk_step(inst.problem, erk_tableau(order), 0.0, inst.initial, h);
    for (std::size_t k = 0; k < out.size(); ++k)
      CHECK(std::abs(out[k] - std::exp(h * inst.problem.L[k]) * inst.initial[k]) < 1e-12);
  }
  // Any step count gives the same linear propagation.
  ErkStepper a(inst.problem, erk_tableau(4), 1.0), b(inst.problem, erk_tableau(4), 0.125);
  cvec ya = integrate(a, inst.initial, 0.0, 1.0, 1).final_state;
  cvec yb = integrate(b, inst.initial, 0.0, 1.0, 8).final_state;
  CHECK(rel_error(yb, ya) < 1e-12);
}

TEST_CASE("ERK1 with L = 0 is forward Euler") {
  auto p = scalar(0.0, 1.0);
  cvec out = erk_step(p, erk_tableau(1), 0.0, {2.0}, 0.1);
  CHECK(std::abs(out[0] - 2.2) < 1e-15);
}

TEST_CASE("ERK4 Richardson ratio on y' = iy + iy") {
  auto p = scalar(cplx(0, 1), cplx(0, 1));
  auto err = [&](double h) {
    ErkStepper s(p, erk_tableau(4), h);
    const long n = std::lround(1.0 / h);
    cvec y = integrate(s, {1.0}, 0.0, 1.0, n).final_state;
    return std::abs(y[0] - std::exp(cplx(0, 2)));
  };
  const double ratio = err(0.1) / err(0.05);
  CHECK(ratio == doctest::Approx(16.0).epsilon(0.1));
}

TEST_CASE("rk4 step") {
  RhsFn zero = [](double, const cvec& y) { return cvec(y.size(), 0.0); };
  CHECK(rk4_step(zero, 0.0, {3.0}, 0.5)[0] == cplx(3.0));
  RhsFn grow = [](double, const cvec& y) { return y; };
  const double h = 0.1;
  const double poly = 1 + h + h * h / 2 + h * h * h / 6 + h * h * h * h / 24;
  CHECK(std::abs(rk4_step(grow, 0.0, {1.0}, h)[0] - poly) < 1e-15);
  CHECK(poly == doctest::Approx(1.1051708333333333));

  RhsFn osc = [](double, const cvec& y) { return cvec{cplx(0, 1) * y[0]}; };
  auto err = [&](long n) {
    cvec y = {1.0};
    for (long i = 0; i < n; ++i) y = rk4_step(osc, i * 1.0 / n, y, 1.0 / n);
    return std::abs(y[0] - std::exp(cplx(0, 1)));
  };
  CHECK(std::log2(err(10) / err(20)) == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("stepping is deterministic") {
  auto inst = make_nls(64, NlsInitial::smooth);
  ErkStepper s(inst.problem, erk_tableau(4), 0.01);
  cvec a = integrate(s, inst.initial, 0.0, 0.5, 50).final_state;
  cvec b = integrate(s, inst.initial, 0.0, 0.5, 50).final_state;
  CHECK(a == b);
}

TEST_CASE("integrate bookkeeping") {
  auto p = scalar(cplx(0, 1), 0.0);
  int calls = 0;
  struct Counting : Stepper {
    int* calls;
    double h_;
    cvec step(double, const cvec& y) const override {
      ++*calls;
      return y;
    }
    double h() const override { return h_; }
  } c;
  c.calls = &calls;
  c.h_ = 2.0;
  integrate(c, {1.0}, 0.0, 2.0, 1);
  CHECK(calls == 1);

  ErkStepper s(p, erk_tableau(2), 0.1);
  auto r = integrate(s, {1.0}, 0.0, 1.0, 10, {0.0, 0.52, 1.0});
  REQUIRE(r.snapshots.size() == 3);
  CHECK(r.snapshots[1].first == doctest::Approx(0.5));
  CHECK(std::abs(r.snapshots[1].second[0] - std::exp(cplx(0, 0.5))) < 1e-14);

  CHECK_THROWS_AS(integrate(s, {1.0}, 1.0, 0.0, 10), DomainError);
  CHECK_THROWS_AS(integrate(s, {1.0}, 0.0, 1.0, 0), DomainError);
  CHECK_THROWS_AS(integrate(s, {1.0}, 0.0, 1.0, 20), DomainError);
  CHECK_THROWS_AS(ErkStepper(p, erk_tableau(4), -1.0), DomainError);
}

TEST_CASE("overflow is reported with stage and step") {
  auto p = scalar(0.0, 1.0);
  p.nonlinear = [](double, const cvec& y) { return cvec{y[0] * y[0]}; };
  ErkStepper s(p, erk_tableau(4), 0.5);
  try {
    integrate(s, {1e200}, 0.0, 5.0, 10);
    FAIL("expected overflow");
  } catch (const OverflowError& e) {
    const std::string w = e.what();
    CHECK(w.find("stage") != std::string::npos);
    CHECK(w.find("step 1") != std::string::npos);
  }
}

TEST_CASE("KdV self-convergence is fourth order") {
  auto inst = make_kdv(512);
  const double T = 0.5;
  auto run = [&](long n) {
    ErkStepper s(inst.problem, erk_tableau(4), T / n);
    return inst.to_physical(integrate(s, inst.initial, 0.0, T, n).final_state);
  };
  // Steps small enough to be past the stiff pre-asymptotic range.
  cvec ref = run(12800);
  const double e1 = rel_error(run(800), ref), e2 = rel_error(run(1600), ref);
  CHECK(std::log2(e1 / e2) == doctest::Approx(4.0).epsilon(0.05));
}
