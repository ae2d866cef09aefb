#pragma once

#include <string>
#include <vector>

#include "expara/integrators.hpp"
#include "expara/parareal.hpp"
#include "expara/problems.hpp"
#include "expara/repartition.hpp"

namespace expara {

enum class Propagator { coarse, fine };

// One step of the method on y' = l1 y + l2 y with h l_i = z_i, taken by
// running the stepper itself. Only kinds none and spectral-abs apply.
cplx method_R(const ExpTableau& tab, cplx z1, cplx z2,
              const RepartitionSpec& rep = {});

cplx propagator_R(const PararealConfig& cfg, Propagator which, cplx z1, cplx z2,
                  const RepartitionSpec& rep = {});

double E_norm_inf(const PararealConfig& cfg, cplx z1, cplx z2,
                  const RepartitionSpec& rep = {});

// |y_Np^k| from the scalar Parareal recurrence with y0 = 1.
double parareal_R(const PararealConfig& cfg, int k, cplx z1, cplx z2,
                  const RepartitionSpec& rep = {});

// values[j * r1.size() + i] belongs to (r1[i], r2[j]).
struct RegionGrid {
  rvec r1, r2;
  rvec values;
  double threshold = 1.0;
  double at(std::size_t i1, std::size_t i2) const { return values[i2 * r1.size() + i1]; }
  std::string to_csv(const std::string& header = "") const;
};

rvec linspace(double lo, double hi, std::size_t n);

RegionGrid stability_region(const ExpTableau& tab, const rvec& r1, const rvec& r2,
                            const RepartitionSpec& rep = {});
RegionGrid parareal_stability_region(const PararealConfig& cfg, int k, const rvec& r1,
                                     const rvec& r2, const RepartitionSpec& rep = {});
RegionGrid convergence_region(const PararealConfig& cfg, const rvec& r1,
                              const rvec& r2, const RepartitionSpec& rep = {});

struct R1MaxOptions {
  int r2_samples = 33;
  double tolerance = 1e-10;
  double scan_step = 1e-3;
  double scan_limit = 1e3;
};

struct R1MaxResult {
  double r1max = 0.0;
  bool found = false;      // false when even omega = 0 is not convergent
  bool unbounded = false;  // scan reached scan_limit without failing
};

R1MaxResult r1_max(const PararealConfig& cfg, double r2_bound,
                   const RepartitionSpec& rep = {}, const R1MaxOptions& opt = {});

struct ConvergentModes {
  double r1max = 0.0;
  std::vector<std::size_t> indices;  // flat state indices of kept modes that converge
  std::size_t kept = 0;
  int max_index = -1;                // 1-D only: largest |n| among converging modes
  double max_scaled_L = 0.0;         // max h |L| over kept modes
};

ConvergentModes convergent_modes(const ProblemInstance& inst, const PararealConfig& cfg,
                                 const RepartitionSpec& rep, double c2,
                                 const R1MaxOptions& opt = {});

}  // namespace expara
