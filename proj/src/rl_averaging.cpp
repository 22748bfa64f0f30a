#include "ceqaoa/rl_averaging.hpp"

#include <cmath>
#include <complex>
#include <limits>

#include "ceqaoa/fejer.hpp"
#include "ceqaoa/rng.hpp"

namespace ceqaoa {

double DitherWindow::density(double u) const {
  return std::abs(u) <= half_width ? 0.5 / half_width : 0.0;
}

DitherWindow uniform_window(double half_width) {
  require(half_width > 0.0 && std::isfinite(half_width), "window half-width must be positive");
  return {DitherWindow::Kind::Uniform, half_width};
}

double window_fourier(const DitherWindow& w, double xi) {
  const double arg = w.half_width * xi;
  if (std::abs(arg) < 1e-8) return 1.0 - arg * arg / 6.0;
  return std::sin(arg) / arg;
}

double averaged_fejer(int p, double gamma, double delta_e,
                      const std::function<double(double)>& window_transform) {
  require(p >= 0, "filter order p must be >= 0");
  // Pairs (r, s) with r - s = k number p + 1 - |k|.
  std::complex<double> acc = 0.0;
  for (int k = -p; k <= p; ++k) {
    const double multiplicity = static_cast<double>(p + 1 - std::abs(k));
    acc += multiplicity * std::polar(1.0, -k * gamma * delta_e) * window_transform(k * delta_e);
  }
  return acc.real() / static_cast<double>(p + 1);
}

double averaged_fejer(int p, double gamma, double delta_e, const DitherWindow& w) {
  if (delta_e == 0.0) return static_cast<double>(p + 1);
  return averaged_fejer(p, gamma, delta_e, [&w](double xi) { return window_fourier(w, xi); });
}

AveragedOffpeak averaged_offpeak_bound(int p, double half_width, double gap) {
  require(p >= 0, "filter order p must be >= 0");
  require(half_width > 0.0 && gap > 0.0, "half-width and gap must be positive");
  double sum = 0.0;
  for (int k = p; k >= 1; --k) sum += (1.0 - static_cast<double>(k) / (p + 1)) / k;
  const double scale = 2.0 / (half_width * gap);
  return {1.0 + scale * sum, 1.0 + scale * std::log(static_cast<double>(p + 1))};
}

RlBound rl_success_bound(int p, double c_beta, double mbar) {
  require(p >= 0, "filter order p must be >= 0");
  require(c_beta > 0.0 && c_beta <= 1.0, "C_beta must lie in (0, 1]");
  require(mbar >= 0.0, "Mbar must be >= 0");
  RlBound out;
  const double peak = static_cast<double>(p + 1) * c_beta;
  out.bound = peak / (peak + mbar * (1.0 - c_beta));
  if (mbar == 0.0) {
    out.x_rl = std::numeric_limits<double>::infinity();
    out.tight = out.simple = 1.0;
    return out;
  }
  out.x_rl = peak / mbar;
  out.tight = out.x_rl / ((1.0 - c_beta) + out.x_rl);
  out.simple = out.x_rl / (1.0 + out.x_rl);
  return out;
}

std::string to_string(RlAveraging mode) { return mode == RlAveraging::PerDraw ? "per_draw" : "pooled"; }

RlAveraging parse_rl_averaging(const std::string& text) {
  if (text == "per_draw") return RlAveraging::PerDraw;
  if (text == "pooled") return RlAveraging::Pooled;
  throw PreconditionError("unknown averaging mode: " + text);
}

double energy_gap(std::span<const double> energies, double optimal_energy,
                  std::span<const std::size_t> optimal) {
  std::vector<char> is_optimal(energies.size(), 0);
  for (std::size_t z : optimal) is_optimal[z] = 1;
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t z = 0; z < energies.size(); ++z)
    if (!is_optimal[z]) gap = std::min(gap, std::abs(energies[z] - optimal_energy));
  return gap;
}

RlLaw rl_filtered_distribution(const Envelope& env, std::span<const double> energies,
                               double optimal_energy, std::span<const std::size_t> optimal,
                               double gamma, const DitherWindow& w, int p, int samples,
                               std::uint64_t seed, RlAveraging mode) {
  require(p >= 0, "filter order p must be >= 0");
  require(samples >= 1, "need at least one sample");
  require(!optimal.empty(), "Omega* must be nonempty");
  env.validate();
  require(env.size() == energies.size(), "envelope and energy table sizes differ");

  RlLaw law;
  law.optimal.assign(optimal.begin(), optimal.end());
  law.samples = samples;
  law.gap = energy_gap(energies, optimal_energy, optimal);
  require(law.gap > 1e-12, "energy gap is zero");

  const std::size_t size = env.size();
  std::vector<double> sum(size, 0.0), sum_sq(size, 0.0), weights(size);
  double succ_sum = 0.0, succ_sum_sq = 0.0;
  for (int k = 0; k < samples; ++k) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(k)));
    const double u = rng.uniform(-w.half_width, w.half_width);
    double total = 0.0;
    for (std::size_t z = 0; z < size; ++z) {
      weights[z] = env.probs[z] * fejer_kernel(p, (gamma + u) * (energies[z] - optimal_energy));
      total += weights[z];
    }
    if (mode == RlAveraging::Pooled) {
      for (std::size_t z = 0; z < size; ++z) sum[z] += weights[z];
      continue;
    }
    require(total > 0.0, "filtered law has zero denominator for a dither draw");
    double succ = 0.0;
    for (std::size_t z = 0; z < size; ++z) {
      const double q = weights[z] / total;
      sum[z] += q;
      sum_sq[z] += q * q;
    }
    for (std::size_t z : optimal) succ += weights[z] / total;
    succ_sum += succ;
    succ_sum_sq += succ * succ;
  }

  const double n = static_cast<double>(samples);
  law.probs.resize(size);
  law.std_error.assign(size, 0.0);
  if (mode == RlAveraging::Pooled) {
    double total = 0.0;
    for (double s : sum) total += s;
    require(total > 0.0, "pooled law has zero mass");
    for (std::size_t z = 0; z < size; ++z) law.probs[z] = sum[z] / total;
    for (std::size_t z : optimal) law.success_mass += law.probs[z];
    return law;
  }
  auto std_err = [n](double s, double s2) {
    if (n < 2.0) return 0.0;
    const double var = std::max(0.0, (s2 - s * s / n) / (n - 1.0));
    return std::sqrt(var / n);
  };
  for (std::size_t z = 0; z < size; ++z) {
    law.probs[z] = sum[z] / n;
    law.std_error[z] = std_err(sum[z], sum_sq[z]);
  }
  law.success_mass = succ_sum / n;
  law.success_std_error = std_err(succ_sum, succ_sum_sq);
  return law;
}

RlLaw rl_filtered_distribution(const Envelope& env, const ProblemInstance& inst, double gamma,
                               const DitherWindow& w, int p, int samples, std::uint64_t seed,
                               RlAveraging mode) {
  const std::vector<double> energies = inst.physical_energies();
  const double e_star = inst.lattice_scale * static_cast<double>(inst.optimal_energy());
  const std::vector<std::size_t> optimal = inst.optimal_set();
  return rl_filtered_distribution(env, energies, e_star, optimal, gamma, w, p, samples, seed, mode);
}

}  // namespace ceqaoa
