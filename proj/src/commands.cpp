#include "ceqaoa/commands.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include <nlohmann/json.hpp>

#include "ceqaoa/feasibility.hpp"
#include "ceqaoa/fejer.hpp"
#include "ceqaoa/instance.hpp"
#include "ceqaoa/io.hpp"
#include "ceqaoa/mixer.hpp"
#include "ceqaoa/oracle.hpp"
#include "ceqaoa/planner.hpp"
#include "ceqaoa/rl_averaging.hpp"

namespace ceqaoa {

using nlohmann::json;

std::string to_string(Command c) {
  switch (c) {
    case Command::Certify: return "certify";
    case Command::Plan: return "plan";
    case Command::Envelope: return "envelope";
    case Command::Feasibility: return "feasibility";
    case Command::Rl: return "rl";
    case Command::Simulate: return "simulate";
    case Command::Curves: return "curves";
  }
  return "certify";
}

Command parse_command(const std::string& text) {
  for (Command c : {Command::Certify, Command::Plan, Command::Envelope, Command::Feasibility,
                    Command::Rl, Command::Simulate, Command::Curves}) {
    if (to_string(c) == text) return c;
  }
  throw PreconditionError("unknown command: " + text);
}

void normalize_angles(RunConfig& config) {
  if (!config.degrees) return;
  constexpr double k = kPi / 180.0;
  auto conv = [](std::optional<double>& v) {
    if (v) *v *= k;
  };
  conv(config.gamma);
  conv(config.delta);
  conv(config.half_width);
  for (auto* list : {&config.gammas, &config.betas, &config.deltas})
    for (double& v : *list) v *= k;
  config.degrees = false;
}

namespace {

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json labels(const StringSpace& space, const std::vector<std::size_t>& idx) {
  json out = json::array();
  for (auto z : idx) out.push_back(space.label(z));
  return out;
}

json header(const RunConfig& c) {
  return json{{"command", to_string(c.command)}, {"seed", c.seed}};
}

ProblemInstance load(const RunConfig& c) {
  require(!c.instance_path.empty(), "an instance file is required");
  LoadOptions opts;
  opts.cap = c.cap;
  return load_instance_file(c.instance_path, opts);
}

double need(const std::optional<double>& v, const char* what) {
  require(v.has_value(), std::string(what) + " is required");
  return *v;
}

Envelope initial_diagonal(const RunConfig& c, const ProblemInstance& inst) {
  if (c.envelope_path.empty()) return uniform_envelope(inst.size());
  return io::load_envelope_file(c.envelope_path, inst.space());
}

Envelope envelope_for(const RunConfig& c, const ProblemInstance& inst) {
  return mixer_envelope(inst, initial_diagonal(c, inst), c.betas, parse_mixer_convention(c.convention));
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

CommandOutput cmd_certify(const RunConfig& c) {
  const ProblemInstance inst = load(c);
  const StringSpace space = inst.space();
  const double gamma = need(c.gamma, "gamma");
  require(c.p >= 0, "p must be >= 0");
  const Envelope env = envelope_for(c, inst);
  const PhaseModel pm = phase_gap(inst, gamma, parse_gap_scope(c.scope));
  const EnvelopeMass mass = envelope_mass(env, pm.optimal);

  json j = header(c);
  j["p"] = c.p;
  j["gamma"] = gamma;
  j["betas"] = c.betas;
  j["convention"] = c.convention;
  j["scope"] = to_string(pm.scope);
  j["epsilon"] = c.epsilon;
  j["eta"] = c.eta;
  j["C_beta"] = mass.value;
  j["delta"] = pm.delta;
  j["theta_star"] = pm.theta_star;
  j["optimal_energy"] = pm.optimal_energy;
  j["omega_star"] = labels(space, pm.optimal);
  j["collisions"] = labels(space, pm.collisions);

  CommandOutput out;
  FilteredLaw law;
  bool have_law = false;
  try {
    law = filtered_distribution(env, pm, c.p);
    have_law = true;
  } catch (const PreconditionError&) {
  }
  j["q0_exact"] = have_law ? json(success_probability(law, pm.optimal)) : json(nullptr);

  std::string reason;
  if (pm.collision()) reason = "phase collision: a non-optimal string shares the optimal phase";
  else if (mass.zero_support) reason = "envelope carries no mass on the optimal set";

  if (!reason.empty()) {
    j["status"] = "uncertifiable";
    j["reason"] = reason;
    j["x"] = 0.0;
    j["q0_bound"] = 0.0;
    j["shots"] = nullptr;
    out.exit_code = kExitUncertifiable;
  } else {
    const Certificate cert = make_certificate(c.p, mass.value, pm.delta, c.epsilon, c.eta);
    const RatioBounds rb = ratio_bounds(cert.x, cert.c_beta);
    const RegimeReport rr = classify_regime(cert.x, c.eta);
    j["status"] = "certified";
    j["x"] = cert.x;
    j["q0_bound"] = cert.q0_bound;
    j["q0_ratio_tight"] = rb.tight;
    j["q0_ratio_simple"] = rb.simple;
    j["denominator"] = have_law ? json(law.denominator) : json(nullptr);
    j["denominator_bound"] = denominator_bound(c.p, mass.value, pm.delta);
    j["shots"] = finite_or_null(cert.shots);
    j["regime"] = to_string(rr.regime);
    j["regime_threshold_q0"] = rr.threshold_q0 ? json(*rr.threshold_q0) : json(nullptr);
    j["depth_for_target"] = depth_for_target(c.epsilon, mass.value, pm.delta);
    const bool holds = have_law && success_probability(law, pm.optimal) >= cert.q0_bound - 1e-12;
    j["bound_holds"] = holds;
    if (!holds) {
      j["status"] = "bound_violated";
      out.exit_code = 1;
    }
  }
  if (!c.law_output_path.empty() && have_law)
    out.side_files[c.law_output_path] = io::filtered_law_to_csv(space, law, pm);
  out.document = dump(j);
  return out;
}

CommandOutput cmd_plan(const RunConfig& c) {
  const double C = need(c.c_beta, "C_beta");
  const double delta = need(c.delta, "delta");
  const Certificate cert = make_certificate(c.p, C, delta, c.epsilon, c.eta);
  const RatioBounds rb = ratio_bounds(cert.x, C);
  const RegimeReport rr = classify_regime(cert.x, c.eta);
  json j = header(c);
  j["certificate"] = io::certificate_to_json(cert);
  j["q0_ratio_tight"] = rb.tight;
  j["q0_ratio_simple"] = rb.simple;
  j["regime_threshold_q0"] = rr.threshold_q0 ? json(*rr.threshold_q0) : json(nullptr);
  j["depth_for_target"] = depth_for_target(c.epsilon, C, delta);
  j["depth_formula"] = depth_formula(c.epsilon, C, delta);
  j["c_min"] = cmin(delta, c.epsilon, c.p);
  if (c.p_prime) {
    const OrderReduction r = order_reduction(cert.x, c.p, *c.p_prime, c.c_prime, c.epsilon);
    j["order_reduction"] = {{"p_prime", *c.p_prime},
                            {"c_prime", c.c_prime},
                            {"x_reduced", r.x_reduced},
                            {"shots", finite_or_null(r.shots)}};
  }
  if (c.r_op) j["gamma_safe"] = gamma_safe(c.p, *c.r_op);
  CommandOutput out;
  out.document = dump(j);
  return out;
}

CommandOutput cmd_envelope(const RunConfig& c) {
  const ProblemInstance inst = load(c);
  const Envelope env = envelope_for(c, inst);
  CommandOutput out;
  if (c.format == "csv") {
    out.document = io::envelope_to_csv(inst.space(), env);
  } else {
    require(c.format == "json", "format must be json or csv");
    json j = header(c);
    j["convention"] = c.convention;
    j["betas"] = c.betas;
    j["probs"] = io::envelope_to_json(env);
    out.document = dump(j);
  }
  return out;
}

CommandOutput cmd_feasibility(const RunConfig& c) {
  const ProblemInstance inst = load(c);
  const LevelStructure ls = level_sets(inst);
  const LevelGraph g = level_graph(ls, inst.n, inst.m);
  const double gamma = c.gamma ? *c.gamma : (ls.t_max > 0 ? kPi / static_cast<double>(ls.t_max) : kPi);
  const FeasibleGap gap = delta_feasible(gamma, ls);
  const Envelope env = envelope_for(c, inst);
  const auto feasible = inst.feasible_set();

  json j = header(c);
  json levels = json::array();
  for (const auto& [t, members] : ls.levels) levels.push_back({{"t", t}, {"count", members.size()}});
  j["levels"] = levels;
  json edges = json::array();
  for (const auto& e : g.edges)
    edges.push_back({{"from", e.from}, {"to", e.to}, {"pairs", e.pairs}, {"coupling", e.coupling}});
  j["graph"] = {{"vertices", g.vertices}, {"edges", edges}};
  j["connected"] = graph_connected(g);
  j["gamma"] = gamma;
  j["delta_F"] = gap.delta;
  j["aliasing"] = gap.aliasing;
  j["collision"] = gap.collision;
  j["all_feasible"] = gap.all_feasible;

  double c_f = 0.0;
  if (!feasible.empty()) c_f = envelope_mass(env, feasible).value;
  j["C_F"] = c_f;
  json bounds = json::object();
  for (int p : c.feasibility_orders) {
    json b;
    if (c_f > 0.0 && !gap.collision && gap.delta > 0.0) {
      const FeasibilityBound fb = feasibility_bound(p, c_f, gap.delta);
      b = {{"x", fb.x}, {"tight", fb.tight}, {"simple", fb.simple}};
    } else {
      b = {{"x", 0.0}, {"tight", 0.0}, {"simple", 0.0}};
    }
    b["exact"] = feasible.empty() ? 0.0 : dephased_feasibility_probability(env, inst, gamma, p);
    bounds["p" + std::to_string(p)] = b;
  }
  j["bounds"] = bounds;

  const AngleSearchResult s =
      feasibility_angle_search(inst, c.p, c.budget, c.seed, parse_mixer_convention(c.convention));
  j["search"] = {{"p", c.p},
                 {"budget", c.budget},
                 {"best_gammas", s.gammas},
                 {"best_betas", s.betas},
                 {"pi_F", s.pi_f},
                 {"baseline", s.baseline},
                 {"evaluations", s.evaluations}};

  if (inst.n == inst.m) {
    try {
      const SectorOperators ops = invariant_sector_operators(inst);
      if (ops.a.rows() <= 64) {
        const LieClosure lc = lie_closure_dim(ops.a, ops.b);
        j["invariant_sector"] = {{"dimension", lc.matrix_size},
                                 {"lie_closure_dim", lc.dimension},
                                 {"full", lc.full},
                                 {"cap_hit", lc.cap_hit}};
      }
    } catch (const PreconditionError&) {
      // penalty not symmetric under relabeling; no sector report
    }
  }
  CommandOutput out;
  out.document = dump(j);
  return out;
}

CommandOutput cmd_rl(const RunConfig& c) {
  const ProblemInstance inst = load(c);
  const double gamma = need(c.gamma, "gamma");
  const double hw = need(c.half_width, "half_width");
  require(hw > 0.0, "half_width must be positive");
  const Envelope env = envelope_for(c, inst);
  const DitherWindow w = uniform_window(hw);
  const RlLaw law =
      rl_filtered_distribution(env, inst, gamma, w, c.p, c.samples, c.seed, parse_rl_averaging(c.averaging));
  const AveragedOffpeak mb = averaged_offpeak_bound(c.p, hw, law.gap);
  const double C = envelope_mass(env, law.optimal).value;

  json j = header(c);
  j["p"] = c.p;
  j["gamma"] = gamma;
  j["half_width"] = hw;
  j["samples"] = law.samples;
  j["averaging"] = c.averaging;
  j["g"] = law.gap;
  j["C_beta"] = C;
  j["Mbar_exact"] = mb.exact_sum;
  j["Mbar_log"] = mb.log_form;
  double bound = 0.0, bound_log = 0.0;
  if (C > 0.0) {
    bound = rl_success_bound(c.p, C, mb.exact_sum).bound;
    bound_log = rl_success_bound(c.p, C, mb.log_form).bound;
  }
  j["bound"] = bound;
  j["bound_log"] = bound_log;
  j["success_mass"] = law.success_mass;
  j["success_std_error"] = law.success_std_error;
  j["within_3se"] = law.success_mass >= bound - 3.0 * law.success_std_error;

  CommandOutput out;
  if (!c.law_output_path.empty()) out.side_files[c.law_output_path] = io::rl_law_to_csv(inst.space(), law);
  out.document = dump(j);
  return out;
}

CommandOutput cmd_simulate(const RunConfig& c) {
  const ProblemInstance inst = load(c);
  const StringSpace space = inst.space();
  const MixerConvention conv = parse_mixer_convention(c.convention);
  const EncodedState state = simulate(inst, c.gammas, c.betas, conv);
  const auto optimal = inst.optimal_set();
  const auto feasible = inst.feasible_set();

  json j = header(c);
  j["gammas"] = c.gammas;
  j["betas"] = c.betas;
  j["convention"] = c.convention;
  j["norm"] = state.norm();
  j["success_probability"] = subset_probability(state, optimal);
  j["feasibility_probability"] = feasible.empty() ? 0.0 : subset_probability(state, feasible);
  if (c.shots > 0) {
    const ShotResult r = sample_shots(state.probabilities(), c.shots, c.seed, optimal);
    json counts = json::array();
    for (std::size_t z = 0; z < r.counts.size(); ++z)
      if (r.counts[z] > 0) counts.push_back({{"string", space.label(z)}, {"count", r.counts[z]}});
    j["shots"] = r.shots;
    j["counts"] = counts;
    j["success_frequency"] = r.frequency;
    j["success_ci95"] = {r.ci_low, r.ci_high};
  }
  CommandOutput out;
  out.document = dump(j);
  return out;
}

CommandOutput cmd_curves(const RunConfig& c) {
  std::vector<double> deltas = c.deltas;
  if (deltas.empty() && c.delta_points > 0)
    for (int k = 1; k <= c.delta_points; ++k) deltas.push_back(kPi * k / c.delta_points);
  require(!deltas.empty(), "delta grid is empty");
  std::vector<int> orders = c.orders.empty() ? std::vector<int>{c.p} : c.orders;
  std::sort(deltas.begin(), deltas.end());
  deltas.erase(std::unique(deltas.begin(), deltas.end()), deltas.end());
  std::sort(orders.begin(), orders.end());
  orders.erase(std::unique(orders.begin(), orders.end()), orders.end());

  std::string csv = "delta,p,epsilon,c_min\n";
  for (int p : orders) {
    const auto curve = cmin_curve(deltas, c.epsilon, p);
    for (std::size_t i = 0; i < deltas.size(); ++i) {
      csv += io::format_double(deltas[i]) + "," + std::to_string(p) + "," + io::format_double(c.epsilon) + "," +
             io::format_double(curve[i]) + "\n";
    }
  }
  CommandOutput out;
  out.document = csv;
  return out;
}

}  // namespace

CommandOutput run_command(const RunConfig& config) {
  RunConfig c = config;
  normalize_angles(c);
  switch (c.command) {
    case Command::Certify: return cmd_certify(c);
    case Command::Plan: return cmd_plan(c);
    case Command::Envelope: return cmd_envelope(c);
    case Command::Feasibility: return cmd_feasibility(c);
    case Command::Rl: return cmd_rl(c);
    case Command::Simulate: return cmd_simulate(c);
    case Command::Curves: return cmd_curves(c);
  }
  throw PreconditionError("unknown command");
}

int run_and_write(const RunConfig& config) {
  try {
    const CommandOutput out = run_command(config);
    for (const auto& [path, content] : out.side_files) io::write_file_atomic(path, content);
    if (config.output_path.empty()) std::cout << out.document;
    else io::write_file_atomic(config.output_path, out.document);
    return out.exit_code;
  } catch (const CapExceededError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapExceeded;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  }
}

}  // namespace ceqaoa
