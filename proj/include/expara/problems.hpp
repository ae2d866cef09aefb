#pragma once

#include <functional>
#include <string>

#include "expara/integrators.hpp"
#include "expara/spectral.hpp"

namespace expara {

enum class NlsInitial { smooth, oscillatory, full_spectrum };

struct ProblemInstance {
  std::string name;
  SpectralGrid grid;
  rvec origin;  // physical coordinate of the first grid point per dimension
  SemilinearProblem problem;
  cvec initial;
  double tfinal = 0.0;
  std::function<cvec(const cvec&)> to_physical;
};

ProblemInstance make_zds(std::size_t nx);
ProblemInstance make_nls(std::size_t nx, NlsInitial ic);
// The dispersive term is delta^2 u_xxx (Zabusky-Kruskal scaling).
ProblemInstance make_kdv(std::size_t nx, double delta = 0.022);
ProblemInstance make_kp(std::size_t nx, std::size_t ny, bool check_constraint = false);
// State rows are velocities, columns are x-modes: index j * nx + kx.
ProblemInstance make_vp(std::size_t nx, std::size_t nv);

NlsInitial parse_nls_initial(const std::string& s);

// Largest |L| over kept modes.
double spectral_radius(const SemilinearProblem& p);

// Largest |kx=0, ky!=0| coefficient of u_yy, normalized by the grid size.
double kp_constraint_residual(const ProblemInstance& kp, const cvec& state);

// Physical electric field E(x) for a VP state.
rvec vp_efield(const ProblemInstance& vp, const cvec& fhat);

// max |y - yref| / max |yref|
double rel_error(const cvec& y, const cvec& yref);

// One header line, then |u|^2 per point (1-D) or a row-major |u| grid (2-D).
std::string snapshot_csv(const ProblemInstance& inst, const cvec& state, double t,
                         const std::string& header_extra = "");

}  // namespace expara
