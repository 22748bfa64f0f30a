#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "ceqaoa/instance.hpp"
#include "ceqaoa/mixer.hpp"
#include "ceqaoa/planner.hpp"

namespace ceqaoa {

/// Partition of [n]^m into penalty level sets L_t.
struct LevelStructure {
  std::map<std::int64_t, std::vector<std::size_t>> levels;
  std::vector<std::int64_t> active;    // sorted t with |L_t| > 0
  std::int64_t t_max = 0;
  std::vector<std::int64_t> level_of;  // penalty of each string
};

LevelStructure level_sets(const ProblemInstance& inst);

struct LevelEdge {
  std::int64_t from = 0;
  std::int64_t to = 0;
  std::uint64_t pairs = 0;  // single-block relabel pairs between the levels
  double coupling = 0.0;    // <L_to|A|L_from> with unit mixer couplings
};

struct LevelGraph {
  std::vector<std::int64_t> vertices;
  std::vector<LevelEdge> edges;  // from < to
};

/// Edges between levels joined by at least one single-block relabeling.
LevelGraph level_graph(const LevelStructure& ls, int n, int m);

bool graph_connected(const LevelGraph& g);

/// One relabeling step from an over-occupied symbol to an unused one.
/// Ties: smallest over-occupied symbol, then smallest free symbol, then
/// smallest block index. Requires m = n and an infeasible string.
BlockString descent_step(const BlockString& z);

struct FeasibleGap {
  double delta = 0.0;
  std::int64_t t_min = 0;         // smallest nonzero active level (0 if none)
  bool aliasing = false;          // gamma > pi / t_max
  bool collision = false;         // some active t has gamma t on the lattice 2 pi Z
  bool all_feasible = false;      // no nonzero level; delta reported as pi
};

/// delta_F = min over nonzero active t of dist(gamma t, 0).
FeasibleGap delta_feasible(double gamma, const LevelStructure& ls);

struct FeasibilityBound {
  double x = 0.0;
  double tight = 0.0;
  double simple = 0.0;
};

/// x_F = (p+1)^2 sin^2(delta_F/2) C_F with both ratio forms.
FeasibilityBound feasibility_bound(int p, double c_feasible, double delta_feasible);

/// The penalty-only stage: energy := penalty, every string feasible, so
/// Omega* = L_0 and theta* = 0.
ProblemInstance penalty_stage(const ProblemInstance& inst);

/// Mass on L_0 of the Fejer-filtered envelope with penalty phases.
double dephased_feasibility_probability(const Envelope& env, const ProblemInstance& inst,
                                        double gamma, int p);

/// Orbits of S_m x S_n (block permutations x global relabelings) on [n]^m.
struct OrbitBasis {
  std::vector<std::size_t> representatives;  // first member in canonical order
  std::vector<std::size_t> sizes;
  std::vector<std::size_t> orbit_of;         // orbit id of every string

  std::size_t dimension() const { return sizes.size(); }
};

OrbitBasis invariant_sector_basis(int n, int m, std::size_t cap = kDefaultEnumerationCap);

/// Restrictions of H_pen (A) and the normalized mixer A(K_n)/n summed over
/// blocks (B) to the span of normalized orbit sums. Requires the penalty to
/// be constant on orbits.
struct SectorOperators {
  Eigen::MatrixXd a;
  Eigen::MatrixXd b;
};

SectorOperators invariant_sector_operators(const ProblemInstance& inst);

struct LieClosure {
  int dimension = 0;
  int matrix_size = 0;
  bool full = false;     // dimension == d^2, i.e. u(d)
  bool cap_hit = false;
};

/// Dimension of the real Lie algebra generated by {iA, iB}.
LieClosure lie_closure_dim(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

struct AngleSearchResult {
  std::vector<double> gammas;
  std::vector<double> betas;
  double pi_f = 0.0;
  double baseline = 0.0;  // |L_0| / n^m, the zero-angle value
  int evaluations = 0;
};

/// Seeded random search plus coordinate-wise golden-section refinement of
/// the statevector feasibility mass ||Pi_0 psi_p||^2 with H_C = H_pen.
AngleSearchResult feasibility_angle_search(const ProblemInstance& inst, int p, int budget,
                                           std::uint64_t seed,
                                           MixerConvention convention = MixerConvention::Adjacency);

}  // namespace ceqaoa
