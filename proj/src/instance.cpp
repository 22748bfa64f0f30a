#include "ceqaoa/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace ceqaoa {

StringSpace::StringSpace(int n, int m, std::size_t cap) : n_(n), m_(m), size_(1) {
  require(n >= 1, "n must be >= 1");
  require(m >= 1, "m must be >= 1");
  stride_.reserve(static_cast<std::size_t>(m));
  for (int b = 0; b < m; ++b) {
    stride_.push_back(size_);
    if (size_ > cap / static_cast<std::size_t>(n)) {
      throw CapExceededError("n^m = " + std::to_string(n) + "^" + std::to_string(m) +
                             " exceeds the enumeration cap " + std::to_string(cap));
    }
    size_ *= static_cast<std::size_t>(n);
  }
}

std::size_t StringSpace::index(const BlockString& z) const {
  require(z.symbols.size() == static_cast<std::size_t>(m_), "block string has wrong length");
  std::size_t idx = 0;
  for (int b = 0; b < m_; ++b) {
    const int s = z.symbols[static_cast<std::size_t>(b)];
    require(s >= 0 && s < n_, "block symbol out of range");
    idx += static_cast<std::size_t>(s) * stride_[static_cast<std::size_t>(b)];
  }
  return idx;
}

BlockString StringSpace::decode(std::size_t index) const {
  BlockString z;
  z.symbols.resize(static_cast<std::size_t>(m_));
  for (int b = 0; b < m_; ++b) z.symbols[static_cast<std::size_t>(b)] = symbol_at(index, b);
  return z;
}

std::string StringSpace::label(std::size_t index) const {
  std::string out;
  for (int b = 0; b < m_; ++b) {
    const int s = symbol_at(index, b);
    if (n_ > 10 && b > 0) out += '.';
    out += std::to_string(s);
  }
  return out;
}

double wrap_angle(double x) {
  double r = std::remainder(x, kTwoPi);  // in [-pi, pi]
  // Snap rounding residue of exact lattice multiples of 2*pi.
  const double tol = 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x));
  if (std::abs(r) <= tol) return 0.0;
  if (r <= -kPi + tol) return kPi;
  if (r > kPi - tol) return kPi;
  return r;
}

double circular_distance(double a, double b) { return std::abs(wrap_angle(a - b)); }

std::int64_t ProblemInstance::max_penalty() const {
  return penalty.empty() ? 0 : *std::max_element(penalty.begin(), penalty.end());
}

std::vector<std::size_t> ProblemInstance::feasible_set() const {
  std::vector<std::size_t> out;
  for (std::size_t z = 0; z < penalty.size(); ++z)
    if (penalty[z] == 0) out.push_back(z);
  return out;
}

std::int64_t ProblemInstance::optimal_energy() const {
  std::optional<std::int64_t> best;
  for (std::size_t z = 0; z < energy.size(); ++z)
    if (penalty[z] == 0 && (!best || energy[z] < *best)) best = energy[z];
  if (!best) throw PreconditionError("instance has no feasible strings");
  return *best;
}

std::vector<std::size_t> ProblemInstance::optimal_set() const {
  const std::int64_t e_star = optimal_energy();
  std::vector<std::size_t> out;
  for (std::size_t z = 0; z < energy.size(); ++z)
    if (penalty[z] == 0 && energy[z] == e_star) out.push_back(z);
  return out;
}

std::vector<double> ProblemInstance::physical_energies() const {
  std::vector<double> out(energy.size());
  for (std::size_t z = 0; z < energy.size(); ++z)
    out[z] = lattice_scale * static_cast<double>(energy[z]);
  return out;
}

std::int64_t penalty_value(int n, const BlockString& z) {
  require(z.symbols.size() == static_cast<std::size_t>(n),
          "column-collision penalty needs m = n blocks");
  std::vector<std::int64_t> counts(static_cast<std::size_t>(n), 0);
  for (int s : z.symbols) {
    require(s >= 0 && s < n, "block symbol out of range");
    ++counts[static_cast<std::size_t>(s)];
  }
  std::int64_t total = 0;
  for (std::int64_t c : counts) total += (c - 1) * (c - 1);
  return total;
}

std::int64_t penalty_value(const ProblemInstance& inst, const BlockString& z) {
  return inst.penalty[inst.space().index(z)];
}

std::vector<std::int64_t> column_collision_table(int n, std::size_t cap) {
  const StringSpace space(n, n, cap);
  std::vector<std::int64_t> table(space.size());
  for (std::size_t z = 0; z < space.size(); ++z) table[z] = penalty_value(n, space.decode(z));
  return table;
}

namespace {

std::int64_t to_lattice(double physical, double scale, std::size_t z) {
  const double e = physical / scale;
  const double r = std::round(e);
  if (std::abs(e - r) > 1e-9 * std::max(1.0, std::abs(e))) {
    std::ostringstream msg;
    msg << "non-integral lattice energy " << e << " at string index " << z;
    throw PreconditionError(msg.str());
  }
  return static_cast<std::int64_t>(r);
}

}  // namespace

ProblemInstance load_instance(const nlohmann::json& doc, const LoadOptions& opts) {
  require(doc.is_object(), "instance document must be a JSON object");
  require(doc.contains("n") && doc.contains("m"), "instance needs n and m");
  ProblemInstance inst;
  inst.n = doc.at("n").get<int>();
  inst.m = doc.at("m").get<int>();
  inst.cap = opts.cap;
  inst.lattice_scale = doc.value("lattice_scale", 1.0);
  require(inst.lattice_scale > 0.0 && std::isfinite(inst.lattice_scale),
          "lattice_scale must be positive");
  const StringSpace space = inst.space();

  std::vector<double> physical;
  if (doc.contains("energy")) {
    physical = doc.at("energy").get<std::vector<double>>();
    require(physical.size() == space.size(),
            "energy array has length " + std::to_string(physical.size()) + ", expected n^m = " +
                std::to_string(space.size()));
  } else if (doc.contains("generator")) {
    const auto& gen = doc.at("generator");
    require(gen.value("type", std::string{}) == "assignment",
            "unknown generator type (expected \"assignment\")");
    const auto cost = gen.at("cost").get<std::vector<std::vector<double>>>();
    require(cost.size() == static_cast<std::size_t>(inst.m), "assignment cost needs m rows");
    for (const auto& row : cost)
      require(row.size() == static_cast<std::size_t>(inst.n), "assignment cost rows need n entries");
    physical.resize(space.size());
    for (std::size_t z = 0; z < space.size(); ++z) {
      double e = 0.0;
      for (int b = 0; b < inst.m; ++b)
        e += cost[static_cast<std::size_t>(b)][static_cast<std::size_t>(space.symbol_at(z, b))];
      physical[z] = e;
    }
  } else {
    throw PreconditionError("instance needs either an energy array or a generator");
  }

  inst.energy.resize(physical.size());
  for (std::size_t z = 0; z < physical.size(); ++z)
    inst.energy[z] = to_lattice(physical[z], inst.lattice_scale, z);

  const nlohmann::json pen = doc.value("penalty", nlohmann::json{});
  if (pen.is_array()) {
    inst.penalty = pen.get<std::vector<std::int64_t>>();
    require(inst.penalty.size() == space.size(), "penalty array must have length n^m");
    for (std::int64_t t : inst.penalty) require(t >= 0, "penalty values must be nonnegative");
  } else if (pen.is_string() && pen.get<std::string>() == "none") {
    inst.penalty.assign(space.size(), 0);
  } else if (pen.is_null() || (pen.is_string() && pen.get<std::string>() == "column_collision")) {
    if (inst.n == inst.m) {
      inst.penalty = column_collision_table(inst.n, opts.cap);
    } else {
      require(pen.is_null(), "column_collision penalty needs m = n");
      inst.penalty.assign(space.size(), 0);
    }
  } else {
    throw PreconditionError("penalty must be an array, \"column_collision\" or \"none\"");
  }
  return inst;
}

ProblemInstance load_instance_file(const std::string& path, const LoadOptions& opts) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open instance file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw PreconditionError("malformed instance JSON in " + path + ": " + e.what());
  }
  return load_instance(doc, opts);
}

nlohmann::json to_json(const ProblemInstance& inst) {
  std::vector<double> physical = inst.physical_energies();
  return {{"n", inst.n},
          {"m", inst.m},
          {"lattice_scale", inst.lattice_scale},
          {"energy", physical},
          {"penalty", inst.penalty}};
}

double wrapped_phase(double gamma, std::int64_t energy, std::int64_t optimal_energy) {
  return wrap_angle(gamma * static_cast<double>(energy - optimal_energy));
}

std::string to_string(GapScope scope) {
  return scope == GapScope::AllStrings ? "all" : "feasible";
}

GapScope parse_gap_scope(const std::string& text) {
  if (text == "all" || text == "all_strings") return GapScope::AllStrings;
  if (text == "feasible" || text == "feasible_only") return GapScope::FeasibleOnly;
  throw PreconditionError("unknown gap scope: " + text);
}

PhaseModel phase_gap(const ProblemInstance& inst, double gamma, GapScope scope) {
  constexpr double kCollisionTol = 1e-12;
  PhaseModel pm;
  pm.gamma = gamma;
  pm.scope = scope;
  pm.optimal_energy = inst.optimal_energy();
  pm.optimal = inst.optimal_set();
  require(!pm.optimal.empty(), "optimal set is empty");
  pm.theta_star = wrap_angle(gamma * static_cast<double>(pm.optimal_energy));

  const std::size_t size = inst.size();
  pm.theta.resize(size);
  pm.offset.resize(size);
  std::vector<char> is_optimal(size, 0);
  for (std::size_t z : pm.optimal) is_optimal[z] = 1;

  bool any_in_scope = false;
  double delta = kPi;
  bool have_nonoptimal = false;
  for (std::size_t z = 0; z < size; ++z) {
    pm.theta[z] = wrap_angle(gamma * static_cast<double>(inst.energy[z]));
    pm.offset[z] = wrapped_phase(gamma, inst.energy[z], pm.optimal_energy);
    const bool in_scope = scope == GapScope::AllStrings || inst.feasible(z);
    if (!in_scope) continue;
    any_in_scope = true;
    if (is_optimal[z]) continue;
    have_nonoptimal = true;
    const double d = std::abs(pm.offset[z]);
    if (d <= kCollisionTol) pm.collisions.push_back(z);
    delta = std::min(delta, d);
  }
  require(any_in_scope, "gap scope contains no strings");
  pm.degenerate = !have_nonoptimal;
  pm.delta = pm.collision() ? 0.0 : delta;
  return pm;
}

}  // namespace ceqaoa
