#include "ceqaoa/fejer.hpp"

#include <algorithm>
#include <cmath>

namespace ceqaoa {

namespace {

constexpr double kSeriesSwitch = 1e-6;

void check_order(int p) { require(p >= 0, "filter order p must be >= 0"); }

void check_gap(double delta) {
  require(delta > 0.0 && delta <= kPi, "phase gap delta must lie in (0, pi]");
}

void check_mass(double c) { require(c > 0.0 && c <= 1.0, "C_beta must lie in (0, 1]"); }

}  // namespace

double fejer_coefficient(int p, int k) {
  check_order(p);
  const int a = std::abs(k);
  if (a > p) return 0.0;
  return static_cast<double>(p + 1 - a) / static_cast<double>(p + 1);
}

double fejer_kernel(int p, double theta) {
  check_order(p);
  const double q = static_cast<double>(p + 1);
  const double t = wrap_angle(theta);
  if (t == 0.0) return q;
  const double s = std::sin(t / 2.0);
  if (std::abs(s) < kSeriesSwitch) {
    // 1 + 2 sum_k (1 - k/(p+1)) cos(k t)
    double acc = 0.0;
    for (int k = p; k >= 1; --k) acc += (q - k) / q * std::cos(k * t);
    return 1.0 + 2.0 * acc;
  }
  const double num = std::sin(q * t / 2.0);
  return (num * num) / (s * s) / q;
}

double offpeak_bound(int p, double delta) {
  check_order(p);
  check_gap(delta);
  const double s = std::sin(delta / 2.0);
  return 1.0 / (static_cast<double>(p + 1) * s * s);
}

double offpeak_bound_loose(int p, double delta) {
  check_order(p);
  check_gap(delta);
  return kPi * kPi / (static_cast<double>(p + 1) * delta * delta);
}

double offpeak_numeric_max(int p, double delta, int grid_points) {
  check_order(p);
  check_gap(delta);
  require(grid_points >= 2, "grid needs at least two points");
  double best = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    const double theta = delta + (kPi - delta) * i / (grid_points - 1);
    best = std::max(best, fejer_kernel(p, theta));
  }
  return best;  // F_p is even, so the negative half adds nothing
}

FilteredLaw filtered_distribution(const Envelope& env, const PhaseModel& pm, int p) {
  check_order(p);
  env.validate();
  require(env.size() == pm.offset.size(), "envelope and phase model sizes differ");
  FilteredLaw law;
  law.weights.resize(env.size());
  law.probs.resize(env.size());
  for (std::size_t z = 0; z < env.size(); ++z) {
    law.weights[z] = fejer_kernel(p, pm.offset[z]);
    law.denominator += env.probs[z] * law.weights[z];
  }
  if (!(law.denominator > 0.0))
    throw PreconditionError("filtered law has zero denominator (envelope misses every nonzero Fejer weight)");
  for (std::size_t z = 0; z < env.size(); ++z)
    law.probs[z] = env.probs[z] * law.weights[z] / law.denominator;
  return law;
}

double success_probability(const FilteredLaw& law, std::span<const std::size_t> omega_star) {
  require(!omega_star.empty(), "Omega* must be nonempty");
  double q0 = 0.0;
  for (std::size_t z : omega_star) {
    require(z < law.probs.size(), "Omega* index out of range");
    q0 += law.probs[z];
  }
  return std::min(q0, 1.0);
}

double denominator_bound(int p, double c_beta, double delta) {
  check_mass(c_beta);
  return static_cast<double>(p + 1) * c_beta + offpeak_bound(p, delta) * (1.0 - c_beta);
}

double success_lower_bound(int p, double c_beta, double delta) {
  check_mass(c_beta);
  const double peak = static_cast<double>(p + 1) * c_beta;
  return peak / (peak + offpeak_bound(p, delta) * (1.0 - c_beta));
}

}  // namespace ceqaoa
