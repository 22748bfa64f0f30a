#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ceqaoa/instance.hpp"
#include "ceqaoa/mixer.hpp"

namespace ceqaoa {

/// Density of the base-angle dither u. Only the uniform window on
/// [-half_width, half_width] ships; other windows go through the
/// callable overload of averaged_fejer.
struct DitherWindow {
  enum class Kind { Uniform };
  Kind kind = Kind::Uniform;
  double half_width = 0.0;

  double density(double u) const;
};

DitherWindow uniform_window(double half_width);

/// Fourier transform w^(xi) = int w(u) e^{i xi u} du = sin(G xi)/(G xi).
double window_fourier(const DitherWindow& w, double xi);

/// Dithered Fejer weight int w(u) F_p((gamma+u) dE) du, evaluated through
/// (1/(p+1)) sum_{r,s} e^{-i(r-s) gamma dE} w^((r-s) dE).
double averaged_fejer(int p, double gamma, double delta_e, const DitherWindow& w);
double averaged_fejer(int p, double gamma, double delta_e,
                      const std::function<double(double)>& window_transform);

struct AveragedOffpeak {
  double exact_sum = 0.0;  // 1 + 2/(G g) sum_k (1 - k/(p+1))/k
  double log_form = 0.0;   // 1 + 2 ln(p+1)/(G g)
};

AveragedOffpeak averaged_offpeak_bound(int p, double half_width, double gap);

struct RlBound {
  double bound = 0.0;  // (p+1)C / ((p+1)C + Mbar (1-C))
  double x_rl = 0.0;   // (p+1)C / Mbar
  double tight = 0.0;  // x / ((1-C) + x)
  double simple = 0.0; // x / (1 + x)
};

RlBound rl_success_bound(int p, double c_beta, double mbar);

/// PerDraw normalizes the law for each u and then averages the laws.
/// Pooled averages the unnormalized weights and normalizes once; it has no
/// bound attached and reports zero standard errors.
enum class RlAveraging { PerDraw, Pooled };

std::string to_string(RlAveraging mode);
RlAveraging parse_rl_averaging(const std::string& text);

struct RlLaw {
  std::vector<double> probs;
  std::vector<double> std_error;  // per string, across u-draws
  double success_mass = 0.0;      // mass on Omega*
  double success_std_error = 0.0;
  double gap = 0.0;               // min |E(y) - E*| over y outside Omega*
  std::vector<std::size_t> optimal;
  int samples = 0;
};

/// Minimum |E(y) - E*| over strings outside Omega*; +inf if there are none.
double energy_gap(std::span<const double> energies, double optimal_energy,
                  std::span<const std::size_t> optimal);

/// Monte Carlo average over u ~ w of the filtered law with weights
/// W(z) F_p((gamma+u)(E(z) - E*)). Draw k uses stream derive_seed(seed, k).
RlLaw rl_filtered_distribution(const Envelope& env, std::span<const double> energies,
                               double optimal_energy, std::span<const std::size_t> optimal,
                               double gamma, const DitherWindow& w, int p, int samples,
                               std::uint64_t seed, RlAveraging mode = RlAveraging::PerDraw);

/// Uses the instance's physical energies and its Omega*.
RlLaw rl_filtered_distribution(const Envelope& env, const ProblemInstance& inst, double gamma,
                               const DitherWindow& w, int p, int samples, std::uint64_t seed,
                               RlAveraging mode = RlAveraging::PerDraw);

}  // namespace ceqaoa
