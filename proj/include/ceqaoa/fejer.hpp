#pragma once

#include <span>
#include <vector>

#include "ceqaoa/instance.hpp"
#include "ceqaoa/mixer.hpp"

namespace ceqaoa {

/// Fejer kernel F_p(theta) = (1/(p+1)) (sin((p+1)theta/2) / sin(theta/2))^2.
/// Near the zeros of sin(theta/2) the cosine-series form is used, so the
/// peak F_p(0) = p+1 is exact.
double fejer_kernel(int p, double theta);

/// Fourier coefficient a_k of F_p: (p+1-|k|)/(p+1) for |k| <= p, else 0.
double fejer_coefficient(int p, int k);

/// Analytic off-peak bound M_p(delta) <= 1/((p+1) sin^2(delta/2)), delta in (0, pi].
double offpeak_bound(int p, double delta);
/// The looser pi^2/((p+1) delta^2).
double offpeak_bound_loose(int p, double delta);
/// Largest F_p over a uniform grid of |theta| in [delta, pi] (validation only).
double offpeak_numeric_max(int p, double delta, int grid_points = 20001);

/// Filtered reference law z -> W(z) F_p(theta(z) - theta*) / denominator.
struct FilteredLaw {
  std::vector<double> probs;
  std::vector<double> weights;  // F_p(theta(z) - theta*)
  double denominator = 0.0;     // sum_z W(z) F_p(theta(z) - theta*)
};

FilteredLaw filtered_distribution(const Envelope& env, const PhaseModel& pm, int p);

/// Mass of the law on Omega*.
double success_probability(const FilteredLaw& law, std::span<const std::size_t> omega_star);

/// (p+1) C / ((p+1) C + M_p(delta) (1 - C)).
double success_lower_bound(int p, double c_beta, double delta);

/// (p+1) C + M_p(delta) (1 - C); dominates the exact law denominator.
double denominator_bound(int p, double c_beta, double delta);

}  // namespace ceqaoa
