#include <cctype>
#include <sstream>

#include "expara/config.hpp"
#include "expara/errors.hpp"

namespace expara {

namespace {

std::vector<PresetInfo> build() {
  std::vector<PresetInfo> p;
  auto add = [&](const char* name, const char* summary, const char* text) {
    p.push_back({name, summary, text});
  };

  add("zds-128", "ZDS, repartitioned ERK4 vs RK4 reference", R"(
[experiment]
kind = integrate
name = zds-128
[problem]
type = zds
nx = 128
tfinal = 40
[method]
order = erk4
steps = 2000
reference = rk4
reference_steps = 200000
[repartition]
kind = spectral-abs
rho = pi/128
)");
  add("zds-convergence", "ZDS error vs steps for plain and repartitioned ERK4", R"(
[experiment]
kind = integrate
name = zds-convergence
[problem]
type = zds
nx = 128
tfinal = 40
[method]
order = erk4
steps = 1000, 2000, 4000, 8000
reference = rk4
reference_steps = 200000
[repartition]
kind = spectral-abs
rho = 0, pi/2048, pi/512, pi/128, pi/32
)");
  const char* nls_fmt = R"(
[experiment]
kind = integrate
name = nls-1024-%IC%
[problem]
type = nls
nx = 1024
ic = %IC%
tfinal = 14
[method]
order = erk4
steps = 2^16
[repartition]
kind = spectral-abs
rho = pi/128
)";
  for (const char* ic : {"smooth", "oscillatory", "full"}) {
    std::string text = nls_fmt;
    for (std::size_t at; (at = text.find("%IC%")) != std::string::npos;)
      text.replace(at, 4, ic);
    p.push_back({std::string("nls-1024-") + ic, "NLS, repartitioned ERK4", text});
  }
  add("kdv-512", "KdV long-time run, plain vs repartitioned ERK4", R"(
[experiment]
kind = integrate
name = kdv-512
[problem]
type = kdv
nx = 512
delta = 0.022
tfinal = 160
[method]
order = erk4
steps = 56000
reference = erk4
reference_steps = 224000
reference_rho = pi/64
track_times = 10, 20, 30, 40, 50, 60, 70, 80, 90, 100, 110, 120, 130, 140, 150, 160
[repartition]
kind = spectral-abs
rho = 0, pi/64
)");
  add("kp", "KP line soliton, full grid", R"(
[experiment]
kind = integrate
name = kp
[problem]
type = kp
nx = 972
ny = 750
tfinal = 4
[method]
order = erk4
steps = 2^18
[repartition]
kind = spectral-abs
rho = pi/128
)");
  add("kp-desk", "KP line soliton, desk grid", R"(
[experiment]
kind = integrate
name = kp-desk
[problem]
type = kp
nx = 64
ny = 32
tfinal = 1
[method]
order = erk4
steps = 2^10
reference = erk4
reference_steps = 2^12
[repartition]
kind = spectral-abs
rho = pi/128
)");
  add("vp", "Vlasov-Poisson bump-on-tail, full grid", R"(
[experiment]
kind = integrate
name = vp
[problem]
type = vp
nx = 1024
ny = 1024
tfinal = 50
[method]
order = erk4
steps = 2^17
[repartition]
kind = spectral-abs
rho = pi/128
)");
  add("vp-desk", "Vlasov-Poisson bump-on-tail, desk grid", R"(
[experiment]
kind = integrate
name = vp-desk
[problem]
type = vp
nx = 32
ny = 64
tfinal = 5
[method]
order = erk4
steps = 2^9
reference = erk4
reference_steps = 2^11
[repartition]
kind = spectral-abs
rho = pi/128
)");
  add("table3-parareal", "NLS Parareal, full scale", R"(
[experiment]
kind = parareal
name = table3-parareal
[problem]
type = nls
nx = 1024
ic = smooth
[parareal]
np = 2048
nf = 32
ng = 1
k = 5
fine = erk4
coarse = erk3
tfinal = 14
[repartition]
kind = spectral-abs
rho = pi/128
)");
  add("table3-parareal-desk", "NLS Parareal, desk scale", R"(
[experiment]
kind = parareal
name = table3-parareal-desk
[problem]
type = nls
nx = 512
ic = smooth
[parareal]
np = 2048
nf = 32
ng = 1
k = 12
fine = erk4
coarse = erk3
tfinal = 14
[repartition]
kind = spectral-abs
rho = 0, pi/128
)");
  add("table3-r1max", "NLS r1max and convergent modes, Ng = 1..3", R"(
[experiment]
kind = convergent-modes
name = table3-r1max
[problem]
type = nls
nx = 1024
ic = smooth
[parareal]
np = 2048
nf = 32
ng = 1, 2, 3
fine = erk4
coarse = erk3
tfinal = 14
[repartition]
kind = spectral-abs
rho = pi/128
[analysis]
c2 = 2
)");
  add("table3-speedup", "Modeled Parareal speedup for the NLS configuration", R"(
[experiment]
kind = speedup-table
name = table3-speedup
[parareal]
np = 2048
nf = 32
ng = 1, 2, 3
fine = erk4
coarse = erk3
tfinal = 14
[analysis]
k_list = 1, 2, 3, 4, 5, 6, 7, 8, 9, 10
)");
  add("table3-convergence", "NLS convergence region, Ng = 1..3", R"(
[experiment]
kind = convergence-region
name = table3-convergence
[parareal]
np = 2048
nf = 32
ng = 1, 2, 3
fine = erk4
coarse = erk3
tfinal = 14
[repartition]
kind = spectral-abs
rho = pi/128
[analysis]
r1_min = 0
r1_max = 0.25
r1_points = 126
r2_min = -0.001
r2_max = 0.001
r2_points = 41
)");
  add("table5-kp", "KP r1max, Ng = 1..3, c2 in {0, 1}", R"(
[experiment]
kind = r1max
name = table5-kp
[parareal]
np = 8192
nf = 32
ng = 1, 2, 3
fine = erk4
coarse = erk3
tfinal = 4
[repartition]
kind = spectral-abs
rho = pi/128
[analysis]
c2 = 0, 1
)");
  add("table5-kp-desk", "KP r1max at desk scale", R"(
[experiment]
kind = r1max
name = table5-kp-desk
[parareal]
np = 256
nf = 32
ng = 1, 2, 3
fine = erk4
coarse = erk3
tfinal = 1/8
[repartition]
kind = spectral-abs
rho = pi/128
[analysis]
c2 = 0, 1
)");
  add("table5-vp", "VP r1max, Ng = 1..3, c2 in {0, 1}", R"(
[experiment]
kind = r1max
name = table5-vp
[parareal]
np = 2048
nf = 64
ng = 1, 2, 3
fine = erk4
coarse = erk3
tfinal = 50
[repartition]
kind = spectral-abs
rho = pi/128
[analysis]
c2 = 0, 1
)");
  add("table5-vp-desk", "VP r1max at desk scale", R"(
[experiment]
kind = r1max
name = table5-vp-desk
[parareal]
np = 64
nf = 64
ng = 1, 2, 3
fine = erk4
coarse = erk3
tfinal = 50/32
[repartition]
kind = spectral-abs
rho = pi/128
[analysis]
c2 = 0, 1
)");
  add("erk4-stability", "Stability region of plain ERK4", R"(
[experiment]
kind = stability-region
name = erk4-stability
[method]
order = erk4
[analysis]
target = method
r1_min = -60
r1_max = 60
r1_points = 121
r2_min = -3
r2_max = 3
r2_points = 61
)");
  return p;
}

}  // namespace

const std::vector<PresetInfo>& presets() {
  static const std::vector<PresetInfo> all = build();
  return all;
}

const PresetInfo& find_preset(const std::string& name) {
  for (const auto& p : presets())
    if (p.name == name) return p;
  throw ConfigError("unknown preset '" + name + "'");
}

std::string describe_preset(const PresetInfo& p) {
  const ExperimentConfig c = ExperimentConfig::parse(p.text, p.name);
  std::ostringstream os;
  os << p.name << ": " << p.summary << " [" << c.str("experiment", "kind");
  auto show = [&](const char* sec, const char* key, const char* label) {
    if (!c.has(sec, key)) return;
    std::string v = c.str(sec, key);
    if (v.rfind("erk", 0) == 0 || v == "rk4")
      for (auto& ch : v) ch = char(std::toupper(static_cast<unsigned char>(ch)));
    os << ", " << label << "=" << v;
  };
  show("problem", "type", "problem");
  show("problem", "nx", "Nx");
  show("problem", "ny", "Ny");
  show("problem", "delta", "delta");
  show("problem", "tfinal", "tfinal");
  show("method", "steps", "steps");
  show("parareal", "np", "Np");
  show("parareal", "nf", "Nf");
  show("parareal", "ng", "Ng");
  show("parareal", "k", "K");
  show("parareal", "fine", "f");
  show("parareal", "coarse", "g");
  show("parareal", "tfinal", "tfinal");
  show("repartition", "kind", "repartition");
  show("repartition", "rho", "rho");
  os << "]";
  return os.str();
}

}  // namespace expara
