#include "ceqaoa/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>

#include "ceqaoa/fejer.hpp"
#include "ceqaoa/oracle.hpp"
#include "ceqaoa/rng.hpp"

namespace ceqaoa {

LevelStructure level_sets(const ProblemInstance& inst) {
  const StringSpace space = inst.space();
  require(inst.penalty.size() == space.size(), "penalty table does not match n^m");
  LevelStructure ls;
  ls.level_of = inst.penalty;
  for (std::size_t z = 0; z < space.size(); ++z) ls.levels[inst.penalty[z]].push_back(z);
  for (const auto& [t, members] : ls.levels) ls.active.push_back(t);
  ls.t_max = ls.active.empty() ? 0 : ls.active.back();
  return ls;
}

LevelGraph level_graph(const LevelStructure& ls, int n, int m) {
  const StringSpace space(n, m, std::numeric_limits<std::size_t>::max());
  require(ls.level_of.size() == space.size(), "level structure does not match n^m");
  std::map<std::pair<std::int64_t, std::int64_t>, std::uint64_t> pairs;
  for (std::size_t x = 0; x < space.size(); ++x) {
    const std::int64_t tx = ls.level_of[x];
    for (int b = 0; b < m; ++b) {
      const int cur = space.symbol_at(x, b);
      for (int s = 0; s < n; ++s) {
        if (s == cur) continue;
        const std::size_t y = x + (static_cast<std::size_t>(s) - static_cast<std::size_t>(cur)) * space.stride(b);
        const std::int64_t ty = ls.level_of[y];
        if (tx < ty) ++pairs[{tx, ty}];  // each cross-level pair counted once, from its lower end
      }
    }
  }
  LevelGraph g;
  g.vertices = ls.active;
  for (const auto& [key, count] : pairs) {
    const double size_from = static_cast<double>(ls.levels.at(key.first).size());
    const double size_to = static_cast<double>(ls.levels.at(key.second).size());
    g.edges.push_back({key.first, key.second, count,
                       static_cast<double>(count) / std::sqrt(size_from * size_to)});
  }
  return g;
}

bool graph_connected(const LevelGraph& g) {
  if (g.vertices.size() <= 1) return true;
  std::map<std::int64_t, std::vector<std::int64_t>> adj;
  for (const auto& e : g.edges) {
    adj[e.from].push_back(e.to);
    adj[e.to].push_back(e.from);
  }
  std::map<std::int64_t, bool> seen;
  std::deque<std::int64_t> queue{g.vertices.front()};
  seen[g.vertices.front()] = true;
  while (!queue.empty()) {
    const std::int64_t v = queue.front();
    queue.pop_front();
    for (std::int64_t w : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        queue.push_back(w);
      }
    }
  }
  return std::all_of(g.vertices.begin(), g.vertices.end(), [&](std::int64_t v) { return seen[v]; });
}

BlockString descent_step(const BlockString& z) {
  const int n = static_cast<int>(z.symbols.size());
  require(penalty_value(n, z) > 0, "descent_step needs an infeasible string");
  std::vector<int> counts(static_cast<std::size_t>(n), 0);
  for (int s : z.symbols) ++counts[static_cast<std::size_t>(s)];
  int over = -1;
  int free = -1;
  for (int k = 0; k < n; ++k) {
    if (over < 0 && counts[static_cast<std::size_t>(k)] >= 2) over = k;
    if (free < 0 && counts[static_cast<std::size_t>(k)] == 0) free = k;
  }
  BlockString out = z;
  const auto it = std::find(out.symbols.begin(), out.symbols.end(), over);
  *it = free;
  return out;
}

FeasibleGap delta_feasible(double gamma, const LevelStructure& ls) {
  require(gamma > 0.0, "gamma must be positive");
  FeasibleGap gap;
  gap.delta = kPi;
  for (std::int64_t t : ls.active) {
    if (t == 0) continue;
    if (gap.t_min == 0) gap.t_min = t;
    const double d = circular_distance(gamma * static_cast<double>(t), 0.0);
    if (d <= 1e-12) gap.collision = true;
    gap.delta = std::min(gap.delta, d);
  }
  gap.all_feasible = gap.t_min == 0;
  gap.aliasing = !gap.all_feasible && gamma > kPi / static_cast<double>(ls.t_max);
  if (gap.collision) gap.delta = 0.0;
  return gap;
}

FeasibilityBound feasibility_bound(int p, double c_feasible, double delta_feasible) {
  require(c_feasible > 0.0 && c_feasible <= 1.0, "C_F must lie in (0, 1]");
  require(delta_feasible > 0.0 && delta_feasible <= kPi, "delta_F must lie in (0, pi]");
  FeasibilityBound out;
  out.x = ratio_parameter(p, delta_feasible, c_feasible);
  const RatioBounds r = ratio_bounds(out.x, c_feasible);
  out.tight = r.tight;
  out.simple = r.simple;
  return out;
}

ProblemInstance penalty_stage(const ProblemInstance& inst) {
  ProblemInstance stage = inst;
  stage.energy = inst.penalty;
  stage.penalty.assign(inst.penalty.size(), 0);
  stage.lattice_scale = 1.0;
  return stage;
}

double dephased_feasibility_probability(const Envelope& env, const ProblemInstance& inst,
                                        double gamma, int p) {
  const ProblemInstance stage = penalty_stage(inst);
  const PhaseModel pm = phase_gap(stage, gamma, GapScope::AllStrings);
  const FilteredLaw law = filtered_distribution(env, pm, p);
  return success_probability(law, inst.feasible_set());
}

OrbitBasis invariant_sector_basis(int n, int m, std::size_t cap) {
  const StringSpace space(n, m, cap);
  OrbitBasis basis;
  basis.orbit_of.resize(space.size());
  std::map<std::vector<int>, std::size_t> ids;
  std::vector<int> counts(static_cast<std::size_t>(n));
  for (std::size_t z = 0; z < space.size(); ++z) {
    std::fill(counts.begin(), counts.end(), 0);
    for (int b = 0; b < m; ++b) ++counts[static_cast<std::size_t>(space.symbol_at(z, b))];
    std::sort(counts.begin(), counts.end(), std::greater<>());
    auto [it, inserted] = ids.try_emplace(counts, basis.sizes.size());
    if (inserted) {
      basis.representatives.push_back(z);
      basis.sizes.push_back(0);
    }
    basis.orbit_of[z] = it->second;
    ++basis.sizes[it->second];
  }
  return basis;
}

SectorOperators invariant_sector_operators(const ProblemInstance& inst) {
  const StringSpace space = inst.space();
  const OrbitBasis orbits = invariant_sector_basis(inst.n, inst.m, inst.cap);
  const auto d = static_cast<Eigen::Index>(orbits.dimension());
  SectorOperators ops{Eigen::MatrixXd::Zero(d, d), Eigen::MatrixXd::Zero(d, d)};

  for (std::size_t o = 0; o < orbits.dimension(); ++o)
    ops.a(static_cast<Eigen::Index>(o), static_cast<Eigen::Index>(o)) =
        static_cast<double>(inst.penalty[orbits.representatives[o]]);
  for (std::size_t z = 0; z < space.size(); ++z)
    require(inst.penalty[z] == inst.penalty[orbits.representatives[orbits.orbit_of[z]]],
            "penalty is not invariant under block permutations and symbol relabelings");

  const double hop = 1.0 / static_cast<double>(inst.n);
  for (std::size_t x = 0; x < space.size(); ++x) {
    for (int b = 0; b < inst.m; ++b) {
      const int cur = space.symbol_at(x, b);
      for (int s = 0; s < inst.n; ++s) {
        if (s == cur) continue;
        const std::size_t y = x + (static_cast<std::size_t>(s) - static_cast<std::size_t>(cur)) * space.stride(b);
        ops.b(static_cast<Eigen::Index>(orbits.orbit_of[x]), static_cast<Eigen::Index>(orbits.orbit_of[y])) += hop;
      }
    }
  }
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      ops.b(i, j) /= std::sqrt(static_cast<double>(orbits.sizes[static_cast<std::size_t>(i)]) *
                               static_cast<double>(orbits.sizes[static_cast<std::size_t>(j)]));
  return ops;
}

namespace {

// Real span of anti-Hermitian matrices under Re tr(X^dagger Y).
class RealSpan {
public:
  explicit RealSpan(Eigen::Index d) : d_(d) {}

  // Adds the component of x orthogonal to the span; true if it was new.
  bool add(const Eigen::MatrixXcd& x) {
    Eigen::VectorXd v = flatten(x);
    const double scale = v.norm();
    if (scale == 0.0) return false;
    v /= scale;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis_) v -= q.dot(v) * q;
    const double residual = v.norm();
    if (residual <= kTol) return false;
    basis_.push_back(v / residual);
    elements_.push_back(unflatten(basis_.back()));
    return true;
  }

  std::size_t size() const { return basis_.size(); }
  const Eigen::MatrixXcd& element(std::size_t i) const { return elements_[i]; }

private:
  static constexpr double kTol = 1e-9;

  Eigen::VectorXd flatten(const Eigen::MatrixXcd& x) const {
    Eigen::VectorXd v(2 * d_ * d_);
    for (Eigen::Index i = 0; i < d_; ++i)
      for (Eigen::Index j = 0; j < d_; ++j) {
        v(2 * (i * d_ + j)) = x(i, j).real();
        v(2 * (i * d_ + j) + 1) = x(i, j).imag();
      }
    return v;
  }

  Eigen::MatrixXcd unflatten(const Eigen::VectorXd& v) const {
    Eigen::MatrixXcd x(d_, d_);
    for (Eigen::Index i = 0; i < d_; ++i)
      for (Eigen::Index j = 0; j < d_; ++j)
        x(i, j) = {v(2 * (i * d_ + j)), v(2 * (i * d_ + j) + 1)};
    return x;
  }

  Eigen::Index d_;
  std::vector<Eigen::VectorXd> basis_;
  std::vector<Eigen::MatrixXcd> elements_;
};

}  // namespace

LieClosure lie_closure_dim(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  require(a.rows() == a.cols() && b.rows() == b.cols() && a.rows() == b.rows(),
          "generators must be square and of equal size");
  const Eigen::Index d = a.rows();
  require(d >= 1 && d <= 64, "Lie closure supports 1 <= d <= 64");
  require((a - a.transpose()).cwiseAbs().maxCoeff() <= 1e-12 &&
              (b - b.transpose()).cwiseAbs().maxCoeff() <= 1e-12,
          "generators must be symmetric");

  const std::complex<double> i1(0.0, 1.0);
  RealSpan span(d);
  span.add(i1 * a.cast<std::complex<double>>());
  span.add(i1 * b.cast<std::complex<double>>());

  LieClosure out;
  out.matrix_size = static_cast<int>(d);
  const std::size_t cap = 10 * static_cast<std::size_t>(d * d);
  std::size_t iterations = 0;
  // Bracket each newly admitted element against everything before it.
  for (std::size_t next = 1; next < span.size(); ++next) {
    if (++iterations > cap) {
      out.cap_hit = true;
      break;
    }
    for (std::size_t j = 0; j < next; ++j) {
      const Eigen::MatrixXcd& x = span.element(next);
      const Eigen::MatrixXcd& y = span.element(j);
      span.add(x * y - y * x);
      if (span.size() == static_cast<std::size_t>(d * d)) break;
    }
    if (span.size() == static_cast<std::size_t>(d * d)) break;
  }
  out.dimension = static_cast<int>(span.size());
  out.full = out.dimension == static_cast<int>(d * d);
  return out;
}

AngleSearchResult feasibility_angle_search(const ProblemInstance& inst, int p, int budget,
                                           std::uint64_t seed, MixerConvention convention) {
  require(p >= 0, "p must be >= 0");
  require(budget >= 1, "budget must be >= 1");
  const std::vector<std::size_t> feasible = inst.feasible_set();
  const EncodedState start = initial_state(inst.n, inst.m, inst.cap);

  AngleSearchResult res;
  res.gammas.assign(static_cast<std::size_t>(p), 0.0);
  res.betas.assign(static_cast<std::size_t>(p), 0.0);

  auto evaluate = [&](const std::vector<double>& g, const std::vector<double>& b) {
    ++res.evaluations;
    return subset_probability(evolve(start, inst.penalty, g, b, convention), feasible);
  };

  res.baseline = evaluate(res.gammas, res.betas);
  res.pi_f = res.baseline;
  const std::int64_t t_max = inst.max_penalty();
  if (p == 0 || t_max == 0) return res;

  const double gamma_hi = kPi / static_cast<double>(t_max);
  auto draw_beta = [&](Rng& rng) {
    for (;;) {
      const double beta = rng.uniform(0.0, kTwoPi);
      if (beta > 0.0 && is_primitive(inst.n, adjacency_angle(beta, inst.n, convention)).resonance_distance > 1e-6)
        return beta;
    }
  };

  // Refinement starts from the best random draw; the zero-angle baseline
  // only competes for the reported optimum.
  std::vector<double> cur_g(static_cast<std::size_t>(p));
  std::vector<double> cur_b(static_cast<std::size_t>(p));
  double cur_f = -1.0;
  const int random_draws = std::max(1, (budget - 1) / 2);
  for (int draw = 0; draw < random_draws && res.evaluations < budget; ++draw) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(draw)));
    std::vector<double> g(static_cast<std::size_t>(p));
    std::vector<double> b(static_cast<std::size_t>(p));
    for (int r = 0; r < p; ++r) {
      g[static_cast<std::size_t>(r)] = gamma_hi * (1.0 - rng.uniform());  // (0, gamma_hi]
      b[static_cast<std::size_t>(r)] = draw_beta(rng);
    }
    const double value = evaluate(g, b);
    if (value > cur_f) {
      cur_f = value;
      cur_g = std::move(g);
      cur_b = std::move(b);
    }
  }

  // Coordinate sweeps of golden-section search with shrinking brackets.
  constexpr double kGolden = 0.6180339887498949;
  constexpr int kSteps = 6;
  double gamma_half = gamma_hi / 4.0;
  double beta_half = kPi / 2.0;
  while (cur_f >= 0.0 && res.evaluations + kSteps + 2 <= budget) {
    for (int coord = 0; coord < 2 * p && res.evaluations + kSteps + 2 <= budget; ++coord) {
      const bool is_gamma = coord < p;
      std::vector<double>& axis = is_gamma ? cur_g : cur_b;
      const std::size_t r = static_cast<std::size_t>(is_gamma ? coord : coord - p);
      const double centre = axis[r];
      const double half = is_gamma ? gamma_half : beta_half;
      double lo = is_gamma ? std::max(centre - half, 1e-9) : centre - half;
      double hi = is_gamma ? std::min(centre + half, gamma_hi) : centre + half;

      auto at = [&](double v) {
        std::vector<double> g = cur_g;
        std::vector<double> b = cur_b;
        (is_gamma ? g : b)[r] = v;
        return evaluate(g, b);
      };
      double x1 = hi - kGolden * (hi - lo);
      double x2 = lo + kGolden * (hi - lo);
      double f1 = at(x1);
      double f2 = at(x2);
      for (int step = 0; step < kSteps; ++step) {
        if (f1 >= f2) {
          hi = x2;
          x2 = x1;
          f2 = f1;
          x1 = hi - kGolden * (hi - lo);
          f1 = at(x1);
        } else {
          lo = x1;
          x1 = x2;
          f1 = f2;
          x2 = lo + kGolden * (hi - lo);
          f2 = at(x2);
        }
      }
      if (std::max(f1, f2) > cur_f) {
        cur_f = std::max(f1, f2);
        axis[r] = f1 >= f2 ? x1 : x2;
      }
    }
    gamma_half /= 2.0;
    beta_half /= 2.0;
  }

  if (cur_f > res.pi_f) {
    res.pi_f = cur_f;
    res.gammas = std::move(cur_g);
    res.betas = std::move(cur_b);
  }
  return res;
}

}  // namespace ceqaoa
