#include <CLI11.hpp>

#include "ceqaoa/commands.hpp"
#include "ceqaoa/io.hpp"

using ceqaoa::RunConfig;

namespace {

void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("-o,--output", c.output_path, "write the document here instead of stdout");
  sub->add_option("--seed", c.seed, "master seed (recorded in the output)");
  sub->add_flag("--degrees", c.degrees, "read every angle in degrees");
}

void add_instance(CLI::App* sub, RunConfig& c) {
  sub->add_option("-i,--instance", c.instance_path, "instance JSON")->required();
  sub->add_option("--cap", c.cap, "enumeration cap on n^m");
}

void add_schedule(CLI::App* sub, RunConfig& c, std::string& betas) {
  sub->add_option("--betas", betas, "comma-separated mixer angles");
  sub->add_option("--envelope", c.envelope_path, "initial diagonal (JSON array or CSV)");
  sub->add_option("--convention", c.convention, "adjacency | normalized");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified success bounds for block one-hot QAOA"};
  app.require_subcommand(1);
  RunConfig c;
  std::string betas, gammas, deltas, orders, forders;

  auto* certify = app.add_subcommand("certify", "success certificate for a base angle and order");
  add_common(certify, c);
  add_instance(certify, c);
  add_schedule(certify, c, betas);
  certify->add_option("--gamma", c.gamma, "base phase angle")->required();
  certify->add_option("-p,--order", c.p, "filter order");
  certify->add_option("--epsilon", c.epsilon, "target failure probability");
  certify->add_option("--eta", c.eta, "regime band half-width");
  certify->add_option("--scope", c.scope, "phase-gap scope: all | feasible");
  certify->add_option("--law", c.law_output_path, "write the filtered law CSV here");

  auto* plan = app.add_subcommand("plan", "planner quantities from (C_beta, delta)");
  add_common(plan, c);
  plan->add_option("--c-beta", c.c_beta, "envelope mass on the optimal set")->required();
  plan->add_option("--delta", c.delta, "phase gap")->required();
  plan->add_option("-p,--order", c.p, "filter order");
  plan->add_option("--epsilon", c.epsilon, "target failure probability");
  plan->add_option("--eta", c.eta, "regime band half-width");
  plan->add_option("--p-prime", c.p_prime, "reduced order");
  plan->add_option("--c-prime", c.c_prime, "main-lobe retention factor");
  plan->add_option("--r-op", c.r_op, "operator spectral range");

  auto* envelope = app.add_subcommand("envelope", "dephased mixer envelope");
  add_common(envelope, c);
  add_instance(envelope, c);
  add_schedule(envelope, c, betas);
  envelope->add_option("--format", c.format, "json | csv");

  auto* feas = app.add_subcommand("feasibility", "level structure, feasibility bounds and angle search");
  add_common(feas, c);
  add_instance(feas, c);
  add_schedule(feas, c, betas);
  feas->add_option("--gamma", c.gamma, "penalty phase angle (default pi / t_max)");
  feas->add_option("-p,--order", c.p, "search depth");
  feas->add_option("--budget", c.budget, "search evaluations");
  feas->add_option("--bound-orders", forders, "comma-separated orders for the bounds (default 1,2)");

  auto* rl = app.add_subcommand("rl", "dithered-angle averaging");
  add_common(rl, c);
  add_instance(rl, c);
  add_schedule(rl, c, betas);
  rl->add_option("--gamma", c.gamma, "base phase angle")->required();
  rl->add_option("--half-width", c.half_width, "dither half-width")->required();
  rl->add_option("-p,--order", c.p, "filter order");
  rl->add_option("--samples", c.samples, "number of dither draws");
  rl->add_option("--averaging", c.averaging, "per_draw | pooled");
  rl->add_option("--law", c.law_output_path, "write the averaged law CSV here");

  auto* sim = app.add_subcommand("simulate", "coherent statevector run");
  add_common(sim, c);
  add_instance(sim, c);
  sim->add_option("--gammas", gammas, "comma-separated phase angles")->required();
  sim->add_option("--betas", betas, "comma-separated mixer angles")->required();
  sim->add_option("--convention", c.convention, "adjacency | normalized");
  sim->add_option("--shots", c.shots, "number of measurement shots");

  auto* curves = app.add_subcommand("curves", "C_min over a delta grid");
  add_common(curves, c);
  curves->add_option("--deltas", deltas, "comma-separated gaps");
  curves->add_option("--delta-points", c.delta_points, "uniform grid size on (0, pi]");
  curves->add_option("--orders", orders, "comma-separated orders");
  curves->add_option("--epsilon", c.epsilon, "target failure probability");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ceqaoa::kExitPrecondition;
  }

  try {
    c.command = ceqaoa::parse_command(app.get_subcommands().front()->get_name());
    c.betas = ceqaoa::io::parse_real_list(betas);
    c.gammas = ceqaoa::io::parse_real_list(gammas);
    c.deltas = ceqaoa::io::parse_real_list(deltas);
    for (double v : ceqaoa::io::parse_real_list(orders)) c.orders.push_back(static_cast<int>(v));
    if (!forders.empty()) {
      c.feasibility_orders.clear();
      for (double v : ceqaoa::io::parse_real_list(forders)) c.feasibility_orders.push_back(static_cast<int>(v));
    }
  } catch (const ceqaoa::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ceqaoa::kExitPrecondition;
  }
  return ceqaoa::run_and_write(c);
}
