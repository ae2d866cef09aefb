#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "expara/errors.hpp"
#include "expara/problems.hpp"
#include "expara/repartition.hpp"

using namespace expara;
constexpr double pi = std::numbers::pi;

namespace {

cvec random_state(std::size_t n, const std::vector<bool>& mask, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  cvec y(n);
  for (std::size_t k = 0; k < n; ++k)
    if (mask.empty() || mask[k]) y[k] = cplx(g(rng), g(rng));
  return y;
}

RepartitionSpec spectral(double rho) {
  RepartitionSpec r;
  r.kind = RepartitionKind::spectral_abs;
  r.rho = rho;
  return r;
}

}  // namespace

TEST_CASE("epsilon from rho") {
  CHECK(epsilon_from_rho(0.0) == 0.0);
  CHECK(epsilon_from_rho(pi / 4) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(epsilon_from_rho(pi / 128) - 0.024548622108925444) < 1e-16);
  CHECK_THROWS_AS(epsilon_from_rho(-0.1), DomainError);
  CHECK_THROWS_AS(epsilon_from_rho(pi / 2), DomainError);
}

TEST_CASE("kind none is the identity") {
  auto inst = make_zds(32);
  auto p = apply_repartition(inst.problem, {});
  CHECK(p.L == inst.problem.L);
  CHECK(p.nonlinear(0.0, inst.initial) == inst.problem.nonlinear(0.0, inst.initial));
}

TEST_CASE("ZDS spectral-abs rotates eigenvalues by rho") {
  auto inst = make_zds(128);
  const double rho = pi / 128, eps = std::tan(rho);
  auto p = apply_repartition(inst.problem, spectral(rho));
  const rvec& k = inst.grid.k[0];
  for (std::size_t i = 0; i < k.size(); ++i) {
    const double k3 = k[i] * k[i] * k[i];
    CHECK(std::abs(p.L[i] - cplx(-eps * std::abs(k3), k3)) <= 1e-15 * std::abs(k3));
    if (inst.problem.L[i].imag() > 0)
      CHECK(std::abs(std::arg(p.L[i]) - (pi / 2 + rho)) < 1e-12);
    if (inst.problem.L[i].imag() < 0)
      CHECK(std::abs(std::arg(p.L[i]) + (pi / 2 + rho)) < 1e-12);
  }
}

TEST_CASE("zeroth-order repartitioning shifts every eigenvalue") {
  auto inst = make_zds(64);
  RepartitionSpec r;
  r.kind = RepartitionKind::power;
  r.power = 0;
  r.use_epsilon = true;
  r.epsilon = 2.0;
  auto p = apply_repartition(inst.problem, r);
  for (std::size_t i = 0; i < p.dim(); ++i)
    CHECK(std::abs(p.L[i] - (inst.problem.L[i] - 2.0)) < 1e-12);
}

TEST_CASE("repartitioning preserves the right-hand side") {
  std::vector<std::pair<ProblemInstance, RepartitionSpec>> cases;
  cases.emplace_back(make_zds(64), spectral(pi / 128));
  cases.emplace_back(make_nls(64, NlsInitial::smooth), spectral(pi / 8));
  RepartitionSpec pw;
  pw.kind = RepartitionKind::power;
  pw.power = 2;
  pw.rho = pi / 64;
  cases.emplace_back(make_kdv(64), pw);
  cases.emplace_back(make_kp(16, 8), pw);
  cases.emplace_back(make_vp(16, 16), spectral(pi / 16));
  for (auto& [inst, spec] : cases) {
    auto rep = apply_repartition(inst.problem, spec);
    double worst = 0.0;
    for (unsigned s = 0; s < 100; ++s) {
      cvec y = random_state(inst.problem.dim(), {}, s);
      cvec a = inst.problem.rhs(0.0, y), b = rep.rhs(0.0, y);
      double num = 0, den = 0;
      for (std::size_t i = 0; i < y.size(); ++i) {
        num = std::max(num, std::abs(a[i] - b[i]));
        den = std::max(den, std::abs(a[i]));
      }
      worst = std::max(worst, num / den);
    }
    CHECK(worst <= 1e-13);
  }
}

TEST_CASE("repartitioning only damps") {
  auto inst = make_kdv(128);
  for (double rho : {pi / 2048, pi / 64, pi / 3}) {
    auto p = apply_repartition(inst.problem, spectral(rho));
    for (std::size_t i = 0; i < p.dim(); ++i) {
      CHECK(p.L[i].real() <= 0.0);
      if (inst.problem.L[i] != 0.0) CHECK(p.L[i].real() < 0.0);
    }
  }
}

TEST_CASE("power repartitioning needs wavenumbers") {
  SemilinearProblem p;
  p.L = {cplx(0, 1)};
  p.nonlinear = [](double, const cvec& y) { return y; };
  RepartitionSpec r;
  r.kind = RepartitionKind::power;
  CHECK_THROWS_AS(apply_repartition(p, r), DomainError);
  r.kind = RepartitionKind::hyperviscosity;
  CHECK_THROWS_AS(apply_repartition(p, r), UnsupportedError);
}

TEST_CASE("hyperviscosity modifies L only") {
  auto inst = make_zds(32);
  auto same = apply_hyperviscosity(inst.problem, 8, 0.0, 0.02, 4);
  CHECK(same.L == inst.problem.L);
  auto p = apply_hyperviscosity(inst.problem, 8, 1e10, 0.02, 4);
  const rvec& k = inst.grid.k[0];
  for (std::size_t i = 0; i < k.size(); ++i)
    CHECK(std::abs(p.L[i] - (inst.problem.L[i] - std::pow(0.02, 5) * 1e10 * std::pow(k[i], 8))) <=
          1e-13 * std::abs(p.L[i]) + 1e-300);
  CHECK(p.nonlinear(0.0, inst.initial) == inst.problem.nonlinear(0.0, inst.initial));
  CHECK_THROWS_AS(apply_hyperviscosity(inst.problem, 5, 1.0, 0.02, 4), DomainError);
}

TEST_CASE("ZDS: eighth-order hyperviscosity tracks repartitioning, fourth-order does not") {
  auto inst = make_zds(128);
  Rk4Stepper r(inst.problem, 40.0 / 50000);
  cvec ref = inst.to_physical(integrate(r, inst.initial, 0.0, 40.0, 50000).final_state);
  const long n = 2000;
  const double h = 40.0 / n;
  auto err = [&](const SemilinearProblem& p) {
    ErkStepper s(p, erk_tableau(4), h);
    return rel_error(inst.to_physical(integrate(s, inst.initial, 0.0, 40.0, n).final_state), ref);
  };
  const double rep = err(apply_repartition(inst.problem, spectral(pi / 128)));
  const double hv8 = err(apply_hyperviscosity(inst.problem, 8, 1e2, h, 4));
  const double hv4 = err(apply_hyperviscosity(inst.problem, 4, 1e2, h, 4));
  CHECK(rep < 1e-4);
  CHECK(hv8 < 2 * rep);
  CHECK(hv4 > 1.0);
}
