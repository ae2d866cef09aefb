#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "expara/types.hpp"

namespace expara {

// coeff * phi_index(scale * hL)
struct PhiTerm {
  double coeff;
  int index;
  double scale;
};
using PhiCombo = std::vector<PhiTerm>;

cvec eval_combo(const PhiCombo& combo, const cvec& hL);

struct ExpTableau {
  std::string name;
  int order = 0;
  int s = 0;
  rvec c;
  std::vector<std::vector<PhiCombo>> a;  // a[i][j], j < i; empty combo means zero
  std::vector<PhiCombo> b;
};

ExpTableau erk_tableau(int order);

using NonlinearFn = std::function<cvec(double t, const cvec& y)>;

struct SemilinearProblem {
  cvec L;
  NonlinearFn nonlinear;
  std::vector<bool> mask;  // empty means no dealiasing
  rvec kmag;               // |k| per entry; empty when the problem has none

  std::size_t dim() const { return L.size(); }
  cvec rhs(double t, const cvec& y) const;
};

class Stepper {
 public:
  virtual ~Stepper() = default;
  virtual cvec step(double t, const cvec& y) const = 0;
  virtual double h() const = 0;
};

// All phi-combinations are evaluated at construction for one (h, L).
class ErkStepper : public Stepper {
 public:
  ErkStepper(SemilinearProblem problem, const ExpTableau& tab, double h);
  cvec step(double t, const cvec& y) const override;
  double h() const override { return h_; }
  const ExpTableau& tableau() const { return tab_; }

 private:
  SemilinearProblem prob_;
  ExpTableau tab_;
  double h_;
  std::vector<cvec> stage_exp_;             // exp(c_i hL)
  std::vector<std::vector<cvec>> a_;        // h * a_ij(hL)
  std::vector<cvec> b_;                     // h * b_j(hL)
  cvec exp_hl_;
};

class Rk4Stepper : public Stepper {
 public:
  Rk4Stepper(SemilinearProblem problem, double h);
  cvec step(double t, const cvec& y) const override;
  double h() const override { return h_; }

 private:
  SemilinearProblem prob_;
  double h_;
};

cvec erk_step(const SemilinearProblem& problem, const ExpTableau& tab, double t,
              const cvec& y, double h);

using RhsFn = std::function<cvec(double t, const cvec& y)>;
cvec rk4_step(const RhsFn& rhs, double t, const cvec& y, double h);

struct IntegrationResult {
  cvec final_state;
  std::vector<std::pair<double, cvec>> snapshots;  // (step-boundary time, state)
};

IntegrationResult integrate(const Stepper& stepper, const cvec& y0, double t0,
                            double tfinal, long Ns,
                            const rvec& snapshot_times = {});

bool all_finite(const cvec& y);

}  // namespace expara
