#pragma once

#include <string>

#include "expara/integrators.hpp"

namespace expara {

enum class RepartitionKind { none, spectral_abs, power, hyperviscosity };

struct RepartitionSpec {
  RepartitionKind kind = RepartitionKind::none;
  double rho = 0.0;         // radians; used unless use_epsilon is set
  double epsilon = 0.0;     // raw strength, used when use_epsilon is set
  bool use_epsilon = false;
  int power = 2;            // exponent m for kind power
  // hyperviscosity parameters
  int hyper_order = 8;
  double gamma = 0.0;
  int q = 4;

  double strength() const;  // epsilon actually applied
};

double epsilon_from_rho(double rho);

// L_hat = L + eps D, N_hat = N - eps D y with D <= 0 entrywise.
SemilinearProblem apply_repartition(const SemilinearProblem& problem,
                                    const RepartitionSpec& spec);

// L_tilde = L - h^{q+1} gamma |k|^order; the nonlinearity is untouched.
SemilinearProblem apply_hyperviscosity(const SemilinearProblem& problem,
                                       int hyper_order, double gamma, double h,
                                       int q);

const char* repartition_kind_name(RepartitionKind k);
RepartitionKind parse_repartition_kind(const std::string& s);

}  // namespace expara
