#include "expara/parareal.hpp"

#include <algorithm>
#include <exception>
#include <string>
#include <thread>

#include "expara/errors.hpp"

namespace expara {

void PararealConfig::validate() const {
  if (Np < 1 || Nf < 1 || Ng < 1) throw DomainError("Np, Nf, Ng must be positive");
  if (K < 0 || K > Np) throw DomainError("K must lie in [0, Np]");
  if (!(tfinal > t0)) throw DomainError("parareal needs tfinal > t0");
}

CostModel stage_cost_model(const PararealConfig& cfg) {
  return {double(erk_tableau(cfg.coarse_order).s), double(erk_tableau(cfg.fine_order).s)};
}

double speedup(int Np, int K, double alpha) {
  if (Np < 1) throw DomainError("speedup needs Np >= 1");
  if (K < 0) throw DomainError("speedup needs K >= 0");
  if (!(alpha > 0.0)) throw DomainError("speedup needs alpha > 0");
  return Np / (Np * alpha + K * (1.0 + alpha));
}

double cost_alpha(const PararealConfig& cfg, const CostModel& costs) {
  if (!(costs.coarse > 0.0) || !(costs.fine > 0.0))
    throw DomainError("cost model needs positive per-step costs");
  return (cfg.Ng * costs.coarse) / (cfg.Nf * costs.fine);
}

cvec fine_serial(const SemilinearProblem& problem, const PararealConfig& cfg,
                 const cvec& y0) {
  cfg.validate();
  ErkStepper f(problem, erk_tableau(cfg.fine_order), cfg.h());
  return integrate(f, y0, cfg.t0, cfg.tfinal, cfg.Ns()).final_state;
}

namespace {

cvec propagate(const Stepper& s, cvec y, double t, int steps) {
  for (int i = 0; i < steps; ++i) y = s.step(t + i * s.h(), y);
  return y;
}

}  // namespace

PararealRun parareal_run(const SemilinearProblem& problem, const PararealConfig& cfg,
                         const cvec& y0, int threads,
                         const std::function<cvec(const cvec&)>& to_physical) {
  cfg.validate();
  if (!all_finite(y0)) throw DomainError("parareal initial state is not finite");
  const int Np = cfg.Np;
  const double H = (cfg.tfinal - cfg.t0) / Np;
  ErkStepper fine(problem, erk_tableau(cfg.fine_order), cfg.h());
  ErkStepper coarse(problem, erk_tableau(cfg.coarse_order), cfg.coarse_h());
  auto T = [&](int n) { return cfg.t0 + n * H; };

  auto G = [&](const cvec& y, int n, int k) {
    try {
      return propagate(coarse, y, T(n), cfg.Ng);
    } catch (const OverflowError& e) {
      throw OverflowError(std::string(e.what()) + " in coarse propagator (k=" +
                          std::to_string(k) + ", n=" + std::to_string(n) + ")");
    }
  };

  PararealRun run;
  run.alpha = cost_alpha(cfg, stage_cost_model(cfg));

  // Provisional coarse sweep.
  std::vector<cvec> U(Np + 1), Gprev(Np);
  U[0] = y0;
  for (int n = 0; n < Np; ++n) {
    Gprev[n] = G(U[n], n, 0);
    U[n + 1] = Gprev[n];
  }
  run.iterates.push_back(U);

  const int nthreads = std::max(1, std::min(threads, Np));
  for (int k = 0; k < cfg.K; ++k) {
    // Fine propagations are independent and write disjoint slots.
    std::vector<cvec> F(Np);
    std::vector<std::exception_ptr> errs(nthreads);
    auto work = [&](int tid) {
      try {
        for (int n = tid; n < Np; n += nthreads) {
          try {
            F[n] = propagate(fine, U[n], T(n), cfg.Nf);
          } catch (const OverflowError& e) {
            throw OverflowError(std::string(e.what()) + " in fine propagator (k=" +
                                std::to_string(k) + ", n=" + std::to_string(n) + ")");
          }
        }
      } catch (...) {
        errs[tid] = std::current_exception();
      }
    };
    if (nthreads == 1) {
      work(0);
    } else {
      std::vector<std::jthread> pool;
      for (int t = 0; t < nthreads; ++t) pool.emplace_back(work, t);
    }
    for (auto& e : errs)
      if (e) std::rethrow_exception(e);

    std::vector<cvec> Unew(Np + 1), Gnew(Np);
    Unew[0] = y0;
    for (int n = 0; n < Np; ++n) {
      Gnew[n] = G(Unew[n], n, k + 1);
      cvec next(Gnew[n].size());
      for (std::size_t q = 0; q < next.size(); ++q)
        next[q] = Gnew[n][q] + (F[n][q] - Gprev[n][q]);
      Unew[n + 1] = std::move(next);
    }
    U = std::move(Unew);
    Gprev = std::move(Gnew);
    run.iterates.push_back(U);
  }

  run.fine = fine_serial(problem, cfg, y0);
  auto phys = [&](const cvec& v) { return to_physical ? to_physical(v) : v; };
  const cvec ref = phys(run.fine);
  for (int k = 0; k <= cfg.K; ++k) {
    run.errors_vs_fine.push_back(rel_error(phys(run.iterates[k][Np]), ref));
    run.speedup.push_back(speedup(Np, k, run.alpha));
  }
  return run;
}

}  // namespace expara
