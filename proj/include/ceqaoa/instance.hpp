#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ceqaoa/common.hpp"

namespace ceqaoa {

/// A block one-hot instance: energies on the integer lattice and an
/// integer penalty, both tabulated over [n]^m in canonical order.
struct ProblemInstance {
  int n = 1;
  int m = 1;
  std::vector<std::int64_t> energy;   // lattice energies E(z)
  std::vector<std::int64_t> penalty;  // t = H_pen(z) >= 0
  double lattice_scale = 1.0;         // physical energy = lattice_scale * E(z)
  std::size_t cap = kDefaultEnumerationCap;

  StringSpace space() const { return StringSpace(n, m, cap); }
  std::size_t size() const { return energy.size(); }

  bool feasible(std::size_t z) const { return penalty[z] == 0; }
  std::int64_t max_penalty() const;

  /// Indices of the feasible set L_0.
  std::vector<std::size_t> feasible_set() const;
  /// E* = min of E over L_0. Throws if L_0 is empty.
  std::int64_t optimal_energy() const;
  /// Omega*: feasible strings attaining E*.
  std::vector<std::size_t> optimal_set() const;

  /// Physical energies lattice_scale * E(z).
  std::vector<double> physical_energies() const;
};

/// Column-collision penalty sum_k (N_k(z) - 1)^2 with N_k the number of
/// blocks holding symbol k. Requires |z| = n (the assignment case m = n).
std::int64_t penalty_value(int n, const BlockString& z);

/// Penalty of string z as stored in the instance table.
std::int64_t penalty_value(const ProblemInstance& inst, const BlockString& z);

/// Builds the full column-collision penalty table for m = n.
std::vector<std::int64_t> column_collision_table(int n, std::size_t cap = kDefaultEnumerationCap);

struct LoadOptions {
  std::size_t cap = kDefaultEnumerationCap;
};

/// Parses an instance document:
///   {n, m, energy: [...] | generator: {type: "assignment", cost: m x n},
///    penalty?: [...] | "column_collision" | "none", lattice_scale?}
/// Dense arrays are in canonical order (block 0 fastest). Energies are
/// physical values; E(z) = energy / lattice_scale must be integral.
ProblemInstance load_instance(const nlohmann::json& doc, const LoadOptions& opts = {});
ProblemInstance load_instance_file(const std::string& path, const LoadOptions& opts = {});

nlohmann::json to_json(const ProblemInstance& inst);

/// gamma * (E - E_star) reduced to (-pi, pi]; lattice multiples of 2*pi map to 0.
double wrapped_phase(double gamma, std::int64_t energy, std::int64_t optimal_energy);

enum class GapScope { AllStrings, FeasibleOnly };

std::string to_string(GapScope scope);
GapScope parse_gap_scope(const std::string& text);

/// Wrapped phases of an instance at base angle gamma together with the
/// phase gap around the optimal phase.
struct PhaseModel {
  double gamma = 0.0;
  std::vector<double> theta;   // gamma * E(z) wrapped to (-pi, pi]
  std::vector<double> offset;  // wrapped_phase(gamma, E(z), E*)
  double theta_star = 0.0;
  std::int64_t optimal_energy = 0;
  double delta = 0.0;
  GapScope scope = GapScope::AllStrings;
  std::vector<std::size_t> optimal;     // Omega*
  std::vector<std::size_t> collisions;  // non-optimal strings sitting on theta*
  bool degenerate = false;              // every in-scope string is optimal

  bool collision() const { return !collisions.empty(); }
};

/// Computes theta, theta* and the gap delta over the given scope.
/// A zero gap is reported through `collisions`, not thrown.
PhaseModel phase_gap(const ProblemInstance& inst, double gamma,
                     GapScope scope = GapScope::AllStrings);

}  // namespace ceqaoa
