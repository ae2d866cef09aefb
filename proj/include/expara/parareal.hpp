#pragma once

#include <string>
#include <vector>

#include "expara/integrators.hpp"
#include "expara/problems.hpp"

namespace expara {

struct PararealConfig {
  int Np = 1;
  int Nf = 1;
  int Ng = 1;
  int K = 0;
  int fine_order = 4;
  int coarse_order = 3;
  double t0 = 0.0;
  double tfinal = 1.0;

  long Ns() const { return long(Np) * Nf; }
  double h() const { return (tfinal - t0) / double(Ns()); }
  double coarse_h() const { return h() * Nf / Ng; }
  void validate() const;
};

struct PararealRun {
  // iterates[k][n]: value at coarse boundary n after k iterations.
  std::vector<std::vector<cvec>> iterates;
  rvec errors_vs_fine;  // per k, relative error at tfinal (physical space)
  rvec speedup;         // modeled speedup per k
  double alpha = 0.0;
  cvec fine;            // serial fine solution at tfinal
};

// Relative per-step costs of the coarse and fine methods.
struct CostModel {
  double coarse = 1.0;
  double fine = 1.0;
};
// Cost of one ERK step taken as its stage count.
CostModel stage_cost_model(const PararealConfig& cfg);

double speedup(int Np, int K, double alpha);
double cost_alpha(const PararealConfig& cfg, const CostModel& costs);

cvec fine_serial(const SemilinearProblem& problem, const PararealConfig& cfg,
                 const cvec& y0);

// threads <= 1 runs everything on the calling thread; results are
// bit-identical for any thread count.
PararealRun parareal_run(const SemilinearProblem& problem, const PararealConfig& cfg,
                         const cvec& y0, int threads = 1,
                         const std::function<cvec(const cvec&)>& to_physical = {});

}  // namespace expara
