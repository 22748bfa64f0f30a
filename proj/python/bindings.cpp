#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ceqaoa/commands.hpp"
#include "ceqaoa/feasibility.hpp"
#include "ceqaoa/fejer.hpp"
#include "ceqaoa/instance.hpp"
#include "ceqaoa/mixer.hpp"
#include "ceqaoa/oracle.hpp"
#include "ceqaoa/planner.hpp"
#include "ceqaoa/rl_averaging.hpp"

namespace py = pybind11;
using namespace ceqaoa;

namespace {

Envelope as_envelope(const std::vector<double>& probs) {
  Envelope env;
  env.probs = probs;
  env.validate();
  return env;
}

MixerConvention conv(const std::string& s) { return parse_mixer_convention(s); }

RunConfig config_from(const std::string& command, const py::dict& kw) {
  RunConfig c;
  c.command = parse_command(command);
  for (const auto& item : kw) {
    const auto key = py::cast<std::string>(item.first);
    const py::handle v = item.second;
    if (key == "instance_path") c.instance_path = py::str(v);
    else if (key == "output_path") c.output_path = py::str(v);
    else if (key == "envelope_path") c.envelope_path = py::str(v);
    else if (key == "law_output_path") c.law_output_path = py::str(v);
    else if (key == "format") c.format = py::cast<std::string>(v);
    else if (key == "gamma") c.gamma = py::cast<double>(v);
    else if (key == "gammas") c.gammas = py::cast<std::vector<double>>(v);
    else if (key == "betas") c.betas = py::cast<std::vector<double>>(v);
    else if (key == "p") c.p = py::cast<int>(v);
    else if (key == "epsilon") c.epsilon = py::cast<double>(v);
    else if (key == "eta") c.eta = py::cast<double>(v);
    else if (key == "convention") c.convention = py::cast<std::string>(v);
    else if (key == "scope") c.scope = py::cast<std::string>(v);
    else if (key == "c_beta") c.c_beta = py::cast<double>(v);
    else if (key == "delta") c.delta = py::cast<double>(v);
    else if (key == "p_prime") c.p_prime = py::cast<int>(v);
    else if (key == "c_prime") c.c_prime = py::cast<double>(v);
    else if (key == "r_op") c.r_op = py::cast<double>(v);
    else if (key == "deltas") c.deltas = py::cast<std::vector<double>>(v);
    else if (key == "delta_points") c.delta_points = py::cast<int>(v);
    else if (key == "orders") c.orders = py::cast<std::vector<int>>(v);
    else if (key == "budget") c.budget = py::cast<int>(v);
    else if (key == "bound_orders") c.feasibility_orders = py::cast<std::vector<int>>(v);
    else if (key == "half_width") c.half_width = py::cast<double>(v);
    else if (key == "samples") c.samples = py::cast<int>(v);
    else if (key == "averaging") c.averaging = py::cast<std::string>(v);
    else if (key == "shots") c.shots = py::cast<std::uint64_t>(v);
    else if (key == "seed") c.seed = py::cast<std::uint64_t>(v);
    else if (key == "cap") c.cap = py::cast<std::size_t>(v);
    else if (key == "degrees") c.degrees = py::cast<bool>(v);
    else throw PreconditionError("unknown option: " + key);
  }
  return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Success certificates, envelopes and reference simulators for block one-hot QAOA";

  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<CapExceededError>(m, "CapExceededError", PyExc_ValueError);

  py::class_<ProblemInstance>(m, "ProblemInstance")
      .def_static(
          "from_json",
          [](const std::string& text, std::size_t cap_limit) {
            LoadOptions opts;
            opts.cap = cap_limit;
            return load_instance(nlohmann::json::parse(text), opts);
          },
          py::arg("text"), py::arg("cap") = kDefaultEnumerationCap)
      .def("to_json", [](const ProblemInstance& i) { return to_json(i).dump(); })
      .def_readonly("n", &ProblemInstance::n)
      .def_readonly("m", &ProblemInstance::m)
      .def_readonly("energy", &ProblemInstance::energy)
      .def_readonly("penalty", &ProblemInstance::penalty)
      .def_readonly("lattice_scale", &ProblemInstance::lattice_scale)
      .def_property_readonly("size", &ProblemInstance::size)
      .def("feasible_set", &ProblemInstance::feasible_set)
      .def("optimal_set", &ProblemInstance::optimal_set)
      .def("optimal_energy", &ProblemInstance::optimal_energy)
      .def("labels", [](const ProblemInstance& i) {
        const StringSpace s = i.space();
        std::vector<std::string> out;
        for (std::size_t z = 0; z < s.size(); ++z) out.push_back(s.label(z));
        return out;
      });

  py::class_<PhaseModel>(m, "PhaseModel")
      .def_readonly("gamma", &PhaseModel::gamma)
      .def_readonly("theta", &PhaseModel::theta)
      .def_readonly("offset", &PhaseModel::offset)
      .def_readonly("theta_star", &PhaseModel::theta_star)
      .def_readonly("delta", &PhaseModel::delta)
      .def_readonly("optimal", &PhaseModel::optimal)
      .def_readonly("collisions", &PhaseModel::collisions)
      .def_readonly("degenerate", &PhaseModel::degenerate)
      .def_property_readonly("collision", &PhaseModel::collision);

  m.def(
      "phase_gap",
      [](const ProblemInstance& inst, double gamma, const std::string& scope) {
        return phase_gap(inst, gamma, parse_gap_scope(scope));
      },
      py::arg("instance"), py::arg("gamma"), py::arg("scope") = "all");
  m.def("wrapped_phase", &wrapped_phase, py::arg("gamma"), py::arg("energy"), py::arg("optimal_energy"));

  m.def(
      "single_block_kernel",
      [](int n, double beta, const std::string& c) {
        const auto k = single_block_kernel(n, beta, conv(c));
        return std::make_pair(k.diag, k.offdiag);
      },
      py::arg("n"), py::arg("beta"), py::arg("convention") = "adjacency",
      "(diag, offdiag) of the single-block transition kernel");
  m.def(
      "averaged_block_kernel",
      [](int n) {
        const auto k = averaged_block_kernel(n);
        return std::make_pair(k.diag, k.offdiag);
      },
      py::arg("n"));
  m.def(
      "is_primitive",
      [](int n, double beta) {
        const auto r = is_primitive(n, beta);
        return std::make_pair(r.primitive, r.resonance_distance);
      },
      py::arg("n"), py::arg("beta"));
  m.def(
      "mixer_envelope",
      [](const ProblemInstance& inst, const std::vector<double>& v0, const std::vector<double>& betas,
         const std::string& c) { return mixer_envelope(inst, as_envelope(v0), betas, conv(c)).probs; },
      py::arg("instance"), py::arg("v0"), py::arg("betas"), py::arg("convention") = "adjacency");

  m.def("fejer_kernel", &fejer_kernel, py::arg("p"), py::arg("theta"));
  m.def("offpeak_bound", &offpeak_bound, py::arg("p"), py::arg("delta"));
  m.def(
      "filtered_distribution",
      [](const std::vector<double>& env, const PhaseModel& pm, int p) {
        return filtered_distribution(as_envelope(env), pm, p).probs;
      },
      py::arg("envelope"), py::arg("phase_model"), py::arg("p"));
  m.def("success_lower_bound", &success_lower_bound, py::arg("p"), py::arg("c_beta"), py::arg("delta"));

  m.def("ratio_parameter", &ratio_parameter, py::arg("p"), py::arg("delta"), py::arg("c_beta"));
  m.def(
      "ratio_bounds",
      [](double x, double c) {
        const auto r = ratio_bounds(x, c);
        return std::make_pair(r.tight, r.simple);
      },
      py::arg("x"), py::arg("c_beta"));
  m.def("shot_budget", &shot_budget, py::arg("x"), py::arg("epsilon"));
  m.def("depth_for_target", &depth_for_target, py::arg("epsilon"), py::arg("c_beta"), py::arg("delta"));
  m.def("cmin", &cmin, py::arg("delta"), py::arg("epsilon"), py::arg("p"));
  m.def("gamma_safe", &gamma_safe, py::arg("p"), py::arg("r_op"));
  m.def("main_lobe_constant", &main_lobe_constant, py::arg("c"));

  m.def(
      "feasibility_bound",
      [](int p, double c, double d) {
        const auto b = feasibility_bound(p, c, d);
        return std::make_pair(b.tight, b.simple);
      },
      py::arg("p"), py::arg("c_feasible"), py::arg("delta_feasible"));
  m.def(
      "level_counts",
      [](const ProblemInstance& inst) {
        std::map<std::int64_t, std::size_t> out;
        for (const auto& [t, members] : level_sets(inst).levels) out[t] = members.size();
        return out;
      },
      py::arg("instance"));

  m.def(
      "averaged_fejer",
      [](int p, double gamma, double de, double half_width) {
        return averaged_fejer(p, gamma, de, uniform_window(half_width));
      },
      py::arg("p"), py::arg("gamma"), py::arg("delta_e"), py::arg("half_width"));
  m.def(
      "averaged_offpeak_bound",
      [](int p, double half_width, double g) {
        const auto b = averaged_offpeak_bound(p, half_width, g);
        return std::make_pair(b.exact_sum, b.log_form);
      },
      py::arg("p"), py::arg("half_width"), py::arg("gap"));

  m.def(
      "simulate",
      [](const ProblemInstance& inst, const std::vector<double>& gammas, const std::vector<double>& betas,
         const std::string& c) { return simulate(inst, gammas, betas, conv(c)).probabilities(); },
      py::arg("instance"), py::arg("gammas"), py::arg("betas"), py::arg("convention") = "adjacency",
      "measurement distribution of the coherent circuit");
  m.def(
      "dirichlet_filter_oracle",
      [](const std::vector<double>& env, const ProblemInstance& inst, double gamma, int p) {
        return dirichlet_filter_oracle(as_envelope(env), inst, gamma, p);
      },
      py::arg("envelope"), py::arg("instance"), py::arg("gamma"), py::arg("p"));

  m.def(
      "run",
      [](const std::string& command, const py::kwargs& kw) {
        const auto out = run_command(config_from(command, kw));
        return std::make_pair(out.document, out.exit_code);
      },
      py::arg("command"),
      "run one command (certify, plan, envelope, feasibility, rl, simulate, curves); returns (document, exit code)");

  m.def(
      "certify",
      [](const std::string& instance_path, double gamma, int p, const std::vector<double>& betas, double epsilon,
         const std::string& scope) {
        RunConfig c;
        c.command = Command::Certify;
        c.instance_path = instance_path;
        c.gamma = gamma;
        c.p = p;
        c.betas = betas;
        c.epsilon = epsilon;
        c.scope = scope;
        const auto out = run_command(c);
        return std::make_pair(out.document, out.exit_code);
      },
      py::arg("instance_path"), py::arg("gamma"), py::arg("p"), py::arg("betas") = std::vector<double>{},
      py::arg("epsilon") = 0.1, py::arg("scope") = "all", "(certificate JSON text, exit code)");
}
