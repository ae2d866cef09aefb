#include "expara/experiments.hpp"

#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>

#include "expara/analysis.hpp"
#include "expara/errors.hpp"
#include "expara/format.hpp"
#include "expara/parareal.hpp"
#include "expara/problems.hpp"
#include "expara/repartition.hpp"
#include "json.hpp"

namespace expara {

using json = nlohmann::ordered_json;

ExperimentConfig expand_preset(const ExperimentConfig& cfg) {
  if (!cfg.has("experiment", "preset") || cfg.str("experiment", "preset").empty())
    return cfg;
  const PresetInfo& p = find_preset(cfg.str("experiment", "preset"));
  ExperimentConfig merged = ExperimentConfig::parse(p.text, p.name);
  for (const auto& e : cfg.entries()) merged.set(e.section, e.key, e.value);
  return merged;
}

namespace {

struct Context {
  const ExperimentConfig& cfg;
  const RunOptions& opt;
  std::string provenance;
  std::vector<std::string> written;

  std::string name() const { return cfg.str("experiment", "name"); }

  void write(const std::string& file, const std::string& body) {
    std::filesystem::create_directories(opt.out_dir);
    const std::string path = (std::filesystem::path(opt.out_dir) / file).string();
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write output file '" + path + "'");
    f << body;
    written.push_back(path);
  }
  void write_csv(const std::string& file, const std::string& body) {
    write(file, "# " + provenance + "\n" + body);
  }
  void write_json(const std::string& file, json body) {
    json doc;
    doc["provenance"] = provenance;
    doc["config"] = cfg.serialize();
    for (auto& [k, v] : body.items()) doc[k] = v;
    write(file, doc.dump(2) + "\n");
  }
};

int method_order(const std::string& m) {
  if (m == "erk1") return 1;
  if (m == "erk2") return 2;
  if (m == "erk3") return 3;
  if (m == "erk4") return 4;
  if (m == "rk4") return 0;
  throw ConfigError("unknown method '" + m + "'");
}

ProblemInstance make_instance(const ExperimentConfig& cfg) {
  const std::string type = cfg.str("problem", "type");
  if (type == "zds") return make_zds(cfg.integer("problem", "nx"));
  if (type == "nls")
    return make_nls(cfg.integer("problem", "nx"), parse_nls_initial(cfg.str("problem", "ic")));
  if (type == "kdv") return make_kdv(cfg.integer("problem", "nx"), cfg.real("problem", "delta"));
  if (type == "kp") return make_kp(cfg.integer("problem", "nx"), cfg.integer("problem", "ny"));
  if (type == "vp") return make_vp(cfg.integer("problem", "nx"), cfg.integer("problem", "ny"));
  if (type == "none") throw ConfigError("this experiment needs [problem] type");
  throw ConfigError("unknown problem type '" + type + "'");
}

RepartitionSpec make_rep(const ExperimentConfig& cfg, double rho) {
  RepartitionSpec r;
  r.kind = parse_repartition_kind(cfg.str("repartition", "kind"));
  r.rho = rho;
  if (cfg.has("repartition", "epsilon")) {
    r.use_epsilon = true;
    r.epsilon = cfg.real("repartition", "epsilon");
  }
  r.power = int(cfg.integer("repartition", "power"));
  r.hyper_order = int(cfg.integer("repartition", "hyper_order"));
  r.gamma = cfg.real("repartition", "gamma");
  r.q = int(cfg.integer("repartition", "q"));
  return r;
}

SemilinearProblem prepared(const SemilinearProblem& p, const RepartitionSpec& rep, double h) {
  if (rep.kind == RepartitionKind::hyperviscosity)
    return apply_hyperviscosity(p, rep.hyper_order, rep.gamma, h, rep.q);
  return apply_repartition(p, rep);
}

std::unique_ptr<Stepper> make_stepper(const std::string& method, const SemilinearProblem& p,
                                      double h) {
  const int order = method_order(method);
  if (order == 0) return std::make_unique<Rk4Stepper>(p, h);
  return std::make_unique<ErkStepper>(p, erk_tableau(order), h);
}

PararealConfig make_parareal(const ExperimentConfig& cfg, long ng) {
  PararealConfig p;
  p.Np = int(cfg.integer("parareal", "np"));
  p.Nf = int(cfg.integer("parareal", "nf"));
  p.Ng = int(ng);
  p.K = int(cfg.integer("parareal", "k"));
  p.fine_order = method_order(cfg.str("parareal", "fine"));
  p.coarse_order = method_order(cfg.str("parareal", "coarse"));
  if (p.fine_order == 0 || p.coarse_order == 0)
    throw UnsupportedError("Parareal propagators must be exponential methods");
  p.t0 = cfg.real("parareal", "t0");
  p.tfinal = cfg.real("parareal", "tfinal");
  p.validate();
  return p;
}

rvec rhos(const ExperimentConfig& cfg) {
  if (cfg.str("repartition", "kind") == "none") return {0.0};
  rvec r = cfg.real_list("repartition", "rho");
  if (r.empty()) throw ConfigError("[repartition] rho needs at least one value");
  return r;
}

// Steps through [0, tfinal], recording the state at each requested time.
// On overflow, the remaining records stay empty.
struct Trajectory {
  std::vector<cvec> states;
  std::string failure;
};

Trajectory trajectory(const Stepper& s, const cvec& y0, double tfinal, long Ns,
                      const rvec& times) {
  const double h = tfinal / double(Ns);
  std::vector<long> at;
  for (double t : times) {
    long n = std::lround(t / h);
    if (n < 0 || n > Ns) throw ConfigError("track time outside [0, tfinal]");
    at.push_back(n);
  }
  Trajectory tr;
  tr.states.resize(times.size());
  cvec y = y0;
  for (long n = 0; n <= Ns; ++n) {
    for (std::size_t i = 0; i < at.size(); ++i)
      if (at[i] == n) tr.states[i] = y;
    if (n == Ns) break;
    try {
      y = s.step(double(n) * h, y);
    } catch (const OverflowError& e) {
      tr.failure = std::string(e.what()) + " at step " + std::to_string(n + 1);
      break;
    }
  }
  return tr;
}

void run_integrate(Context& ctx) {
  const auto& cfg = ctx.cfg;
  ProblemInstance inst = make_instance(cfg);
  const double tfinal = cfg.has("problem", "tfinal") ? cfg.real("problem", "tfinal") : inst.tfinal;
  rvec times = cfg.real_list("method", "track_times");
  if (times.empty() || times.back() != tfinal) times.push_back(tfinal);
  const auto steps = cfg.int_list("method", "steps");
  if (steps.empty()) throw ConfigError("[method] steps needs at least one value");

  std::vector<cvec> ref;
  const long ref_steps = cfg.integer("method", "reference_steps");
  if (ref_steps > 0) {
    RepartitionSpec rr = make_rep(cfg, cfg.real("method", "reference_rho"));
    if (rr.kind == RepartitionKind::hyperviscosity) rr.kind = RepartitionKind::none;
    auto p = apply_repartition(inst.problem, rr);
    auto s = make_stepper(cfg.str("method", "reference"), p, tfinal / double(ref_steps));
    Trajectory tr = trajectory(*s, inst.initial, tfinal, ref_steps, times);
    if (!tr.failure.empty()) throw OverflowError("reference solution: " + tr.failure);
    for (auto& st : tr.states) ref.push_back(inst.to_physical(st));
  }

  std::ostringstream csv;
  csv << "method,rho,steps,t,rel_error,status\n";
  json runs = json::array();
  bool first = true;
  const rvec snaps = cfg.real_list("method", "snapshots");
  for (const auto& method : cfg.str_list("method", "order")) {
    for (double rho : rhos(cfg)) {
      for (long Ns : steps) {
        if (Ns < 1) throw ConfigError("steps must be positive");
        const double h = tfinal / double(Ns);
        auto p = prepared(inst.problem, make_rep(cfg, rho), h);
        auto s = make_stepper(method, p, h);
        rvec all = times;
        all.insert(all.end(), snaps.begin(), snaps.end());
        Trajectory tr = trajectory(*s, inst.initial, tfinal, Ns, first ? all : times);
        json errs = json::array();
        for (std::size_t i = 0; i < times.size(); ++i) {
          std::string status = "ok";
          double err = std::numeric_limits<double>::quiet_NaN();
          if (tr.states[i].empty()) {
            status = "overflow";
          } else if (!ref.empty()) {
            err = rel_error(inst.to_physical(tr.states[i]), ref[i]);
          }
          csv << method << ',' << fmt_double(rho) << ',' << Ns << ',' << fmt_double(times[i])
              << ',' << fmt_double(err) << ',' << status << '\n';
          errs.push_back(status == "ok" && !ref.empty() ? json(err) : json(status));
        }
        if (first) {
          for (std::size_t i = 0; i < snaps.size(); ++i) {
            const cvec& st = tr.states[times.size() + i];
            if (st.empty()) continue;
            ctx.write(ctx.name() + "_snapshot_" + std::to_string(i) + ".csv",
                      snapshot_csv(inst, st, snaps[i], ctx.provenance));
          }
          first = false;
        }
        runs.push_back({{"method", method}, {"rho", rho}, {"steps", Ns},
                        {"times", times}, {"rel_error", errs},
                        {"failure", tr.failure}});
      }
    }
  }
  ctx.write_csv(ctx.name() + ".csv", csv.str());
  ctx.write_json(ctx.name() + ".json", {{"problem", inst.name}, {"runs", runs}});
}

void run_parareal(Context& ctx) {
  const auto& cfg = ctx.cfg;
  ProblemInstance inst = make_instance(cfg);
  const rvec rho_list = rhos(cfg);
  json summary = json::array();
  for (long ng : cfg.int_list("parareal", "ng")) {
    PararealConfig pc = make_parareal(cfg, ng);
    for (std::size_t r = 0; r < rho_list.size(); ++r) {
      const auto rep = make_rep(cfg, rho_list[r]);
      json entry = {{"Np", pc.Np}, {"Nf", pc.Nf}, {"Ng", pc.Ng}, {"K", pc.K},
                    {"fine", erk_tableau(pc.fine_order).name},
                    {"coarse", erk_tableau(pc.coarse_order).name},
                    {"rho", rep.kind == RepartitionKind::none ? 0.0 : rho_list[r]},
                    {"h", pc.h()}};
      std::string base = ctx.name() + "_ng" + std::to_string(ng);
      if (rho_list.size() > 1) base += "_rho" + std::to_string(r);
      // Unstable configurations are an expected outcome; record them and go on.
      try {
        auto p = prepared(inst.problem, rep, pc.h());
        PararealRun run = parareal_run(p, pc, inst.initial, ctx.opt.threads, inst.to_physical);
        std::ostringstream csv;
        csv << "k,error,speedup\n";
        for (std::size_t k = 0; k < run.errors_vs_fine.size(); ++k)
          csv << k << ',' << fmt_double(run.errors_vs_fine[k]) << ','
              << fmt_double(run.speedup[k]) << '\n';
        ctx.write_csv(base + ".csv", csv.str());
        entry["alpha"] = run.alpha;
        entry["error"] = run.errors_vs_fine;
        entry["speedup"] = run.speedup;
        entry["failure"] = "";
      } catch (const OverflowError& e) {
        entry["failure"] = e.what();
      }
      summary.push_back(entry);
    }
  }
  ctx.write_json(ctx.name() + ".json", {{"problem", inst.name}, {"runs", summary}});
}

rvec axis(const ExperimentConfig& cfg, const char* which) {
  const std::string w = which;
  return linspace(cfg.real("analysis", w + "_min"), cfg.real("analysis", w + "_max"),
                  std::size_t(cfg.integer("analysis", w + "_points")));
}

void run_stability(Context& ctx) {
  const auto& cfg = ctx.cfg;
  const auto rep = make_rep(cfg, rhos(cfg).front());
  const rvec r1 = axis(cfg, "r1"), r2 = axis(cfg, "r2");
  RegionGrid g;
  const std::string target = cfg.str("analysis", "target");
  if (target == "method") {
    const int order = method_order(cfg.str_list("method", "order").at(0));
    if (order == 0) throw UnsupportedError("stability regions are computed for ERK methods");
    g = stability_region(erk_tableau(order), r1, r2, rep);
  } else if (target == "parareal") {
    PararealConfig pc = make_parareal(cfg, cfg.int_list("parareal", "ng").at(0));
    g = parareal_stability_region(pc, int(cfg.integer("analysis", "iteration")), r1, r2, rep);
  } else {
    throw ConfigError("[analysis] target must be method or parareal");
  }
  ctx.write_csv(ctx.name() + ".csv", g.to_csv());
}

void run_convergence(Context& ctx) {
  const auto& cfg = ctx.cfg;
  const auto rep = make_rep(cfg, rhos(cfg).front());
  const rvec r1 = axis(cfg, "r1"), r2 = axis(cfg, "r2");
  for (long ng : cfg.int_list("parareal", "ng")) {
    RegionGrid g = convergence_region(make_parareal(cfg, ng), r1, r2, rep);
    ctx.write_csv(ctx.name() + "_ng" + std::to_string(ng) + ".csv", g.to_csv());
  }
}

void run_r1max(Context& ctx, bool modes) {
  const auto& cfg = ctx.cfg;
  const auto rep = make_rep(cfg, rhos(cfg).front());
  R1MaxOptions opt;
  opt.r2_samples = int(cfg.integer("analysis", "r2_samples"));
  opt.tolerance = cfg.real("analysis", "tolerance");
  std::unique_ptr<ProblemInstance> inst;
  if (modes || cfg.str("problem", "type") != "none")
    inst = std::make_unique<ProblemInstance>(make_instance(cfg));
  json results = json::array();
  for (double c2 : cfg.real_list("analysis", "c2")) {
    for (long ng : cfg.int_list("parareal", "ng")) {
      PararealConfig pc = make_parareal(cfg, ng);
      json row = {{"c2", c2}, {"Ng", ng}, {"h", pc.h()}};
      if (inst) {
        ConvergentModes m = convergent_modes(*inst, pc, rep, c2, opt);
        row["r1max"] = m.r1max;
        row["converging_modes"] = m.indices.size();
        row["kept_modes"] = m.kept;
        row["all_modes_converge"] = m.indices.size() == m.kept;
        row["max_scaled_L"] = m.max_scaled_L;
        if (m.max_index >= 0) row["mode_range"] = {-m.max_index, m.max_index};
      } else {
        R1MaxResult r = r1_max(pc, c2 * pc.h(), rep, opt);
        row["r1max"] = r.r1max;
        row["found"] = r.found;
        row["unbounded"] = r.unbounded;
      }
      results.push_back(row);
    }
  }
  ctx.write_json(ctx.name() + ".json", {{"results", results}});
}

void run_speedup(Context& ctx) {
  const auto& cfg = ctx.cfg;
  std::ostringstream csv;
  csv << "ng,k,alpha,speedup\n";
  for (long ng : cfg.int_list("parareal", "ng")) {
    PararealConfig pc = make_parareal(cfg, ng);
    CostModel cm = stage_cost_model(pc);
    if (cfg.real("parareal", "cost_coarse") > 0) cm.coarse = cfg.real("parareal", "cost_coarse");
    if (cfg.real("parareal", "cost_fine") > 0) cm.fine = cfg.real("parareal", "cost_fine");
    const double alpha = cost_alpha(pc, cm);
    for (long k : cfg.int_list("analysis", "k_list"))
      csv << ng << ',' << k << ',' << fmt_double(alpha) << ','
          << fmt_double(speedup(pc.Np, int(k), alpha)) << '\n';
  }
  ctx.write_csv(ctx.name() + ".csv", csv.str());
}

}  // namespace

std::vector<std::string> run_experiment(const ExperimentConfig& raw, const RunOptions& opt) {
  const ExperimentConfig cfg = expand_preset(raw);
  Context ctx{cfg, opt, std::string(kToolVersion) + " config=" + cfg.hash(), {}};
  const std::string kind = cfg.str("experiment", "kind");
  if (kind == "integrate") run_integrate(ctx);
  else if (kind == "parareal") run_parareal(ctx);
  else if (kind == "stability-region") run_stability(ctx);
  else if (kind == "convergence-region") run_convergence(ctx);
  else if (kind == "r1max") run_r1max(ctx, false);
  else if (kind == "convergent-modes") run_r1max(ctx, true);
  else if (kind == "speedup-table") run_speedup(ctx);
  else throw ConfigError("unknown experiment kind '" + kind + "'");
  return ctx.written;
}

}  // namespace expara
