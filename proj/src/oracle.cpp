#include "ceqaoa/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

#include "ceqaoa/rng.hpp"

namespace ceqaoa {

using namespace std::complex_literals;

double EncodedState::norm() const {
  double acc = 0.0;
  for (const Amplitude& a : amplitudes) acc += std::norm(a);
  return std::sqrt(acc);
}

std::vector<double> EncodedState::probabilities() const {
  std::vector<double> out(amplitudes.size());
  std::transform(amplitudes.begin(), amplitudes.end(), out.begin(),
                 [](const Amplitude& a) { return std::norm(a); });
  return out;
}

EncodedState initial_state(int n, int m, std::size_t cap) {
  const StringSpace space(n, m, cap);
  const double amp = std::pow(static_cast<double>(n), -0.5 * m);
  return {n, m, std::vector<Amplitude>(space.size(), Amplitude(amp, 0.0))};
}

EncodedState apply_phases(EncodedState state, std::span<const std::int64_t> diag, double gamma) {
  require(diag.size() == state.amplitudes.size(), "diagonal length does not match the state");
  if (gamma == 0.0) return state;
  for (std::size_t z = 0; z < diag.size(); ++z)
    state.amplitudes[z] *= std::polar(1.0, -gamma * static_cast<double>(diag[z]));
  return state;
}

EncodedState apply_cost(EncodedState state, const ProblemInstance& inst, double gamma) {
  return apply_phases(std::move(state), inst.energy, gamma);
}

EncodedState apply_mixer(EncodedState state, double beta, MixerConvention convention) {
  const int n = state.n;
  const double angle = adjacency_angle(beta, n, convention);
  if (angle == 0.0) return state;
  const double nn = static_cast<double>(n);
  const Amplitude global = std::polar(1.0, angle);
  const Amplitude rank_one = (std::polar(1.0, -angle * nn) - 1.0) / nn;

  const StringSpace space(n, state.m, std::numeric_limits<std::size_t>::max());
  require(space.size() == state.amplitudes.size(), "state length does not match n^m");
  auto& a = state.amplitudes;
  const std::size_t sn = static_cast<std::size_t>(n);
  for (int b = 0; b < state.m; ++b) {
    const std::size_t stride = space.stride(b);
    const std::size_t span = stride * sn;
    for (std::size_t base = 0; base < a.size(); base += span) {
      for (std::size_t lo = 0; lo < stride; ++lo) {
        Amplitude fiber = 0.0;
        for (std::size_t k = 0; k < sn; ++k) fiber += a[base + lo + k * stride];
        const Amplitude shift = rank_one * fiber;
        for (std::size_t k = 0; k < sn; ++k) {
          Amplitude& x = a[base + lo + k * stride];
          x = global * (x + shift);
        }
      }
    }
  }
  return state;
}

EncodedState evolve(EncodedState state, std::span<const std::int64_t> diag,
                    std::span<const double> gammas, std::span<const double> betas,
                    MixerConvention convention) {
  require(gammas.size() == betas.size(), "gamma and beta schedules differ in length");
  for (std::size_t r = 0; r < gammas.size(); ++r) {
    state = apply_phases(std::move(state), diag, gammas[r]);
    state = apply_mixer(std::move(state), betas[r], convention);
  }
  return state;
}

EncodedState simulate(const ProblemInstance& inst, std::span<const double> gammas,
                      std::span<const double> betas, MixerConvention convention) {
  require(gammas.size() == betas.size(), "gamma and beta schedules differ in length");
  return evolve(initial_state(inst.n, inst.m, inst.cap), inst.energy, gammas, betas, convention);
}

double subset_probability(const EncodedState& state, std::span<const std::size_t> subset) {
  double acc = 0.0;
  for (std::size_t z : subset) {
    require(z < state.amplitudes.size(), "subset index out of range");
    acc += std::norm(state.amplitudes[z]);
  }
  return acc;
}

std::vector<Amplitude> block_unitary_dense(int n, double beta, MixerConvention convention) {
  require(n >= 1, "n must be >= 1");
  const double angle = adjacency_angle(beta, n, convention);
  Eigen::MatrixXcd gen = Eigen::MatrixXcd::Constant(n, n, Amplitude(0.0, -angle));
  gen.diagonal().setZero();  // -i angle A(K_n)

  const double norm1 = gen.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
  const Eigen::MatrixXcd x = gen / std::ldexp(1.0, squarings);

  Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(n, n);
  for (int k = 1; k <= 30; ++k) {
    term = term * x / static_cast<double>(k);
    result += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;

  std::vector<Amplitude> out(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(j * n + k)] = result(j, k);
  return out;
}

std::vector<double> block_kernel_dense(int n, double beta, MixerConvention convention) {
  const auto u = block_unitary_dense(n, beta, convention);
  std::vector<double> out(u.size());
  std::transform(u.begin(), u.end(), out.begin(), [](const Amplitude& a) { return std::norm(a); });
  return out;
}

std::vector<double> apply_dense_block_kernel(std::span<const double> kernel, int n, int m,
                                             std::span<const double> v) {
  const std::size_t sn = static_cast<std::size_t>(n);
  require(kernel.size() == sn * sn, "kernel must be n x n");
  const StringSpace space(n, m, std::numeric_limits<std::size_t>::max());
  require(v.size() == space.size(), "vector length does not match n^m");
  std::vector<double> cur(v.begin(), v.end());
  std::vector<double> next(cur.size());
  std::vector<double> fiber(sn);
  for (int b = 0; b < m; ++b) {
    const std::size_t stride = space.stride(b);
    const std::size_t span = stride * sn;
    for (std::size_t base = 0; base < cur.size(); base += span) {
      for (std::size_t lo = 0; lo < stride; ++lo) {
        for (std::size_t k = 0; k < sn; ++k) fiber[k] = cur[base + lo + k * stride];
        for (std::size_t j = 0; j < sn; ++j) {
          double acc = 0.0;
          for (std::size_t k = 0; k < sn; ++k) acc += kernel[j * sn + k] * fiber[k];
          next[base + lo + j * stride] = acc;
        }
      }
    }
    cur.swap(next);
  }
  return cur;
}

Envelope dephased_reference(const ProblemInstance& inst, std::span<const double> gammas,
                            std::span<const double> betas, MixerConvention convention,
                            const std::optional<Envelope>& v0) {
  require(gammas.size() == betas.size(), "gamma and beta schedules differ in length");
  Envelope env;
  if (v0) {
    v0->validate();
    require(v0->size() == inst.size(), "initial envelope length does not match the instance");
    env = *v0;
  } else {
    env.probs = initial_state(inst.n, inst.m, inst.cap).probabilities();
    env.provenance = EnvelopeSource::UniformInitial;
  }
  for (std::size_t r = 0; r < betas.size(); ++r) {
    // The cost unitary is diagonal: <y|U_C rho U_C^dagger|y> = rho_yy, so the
    // diagonal passes through unchanged and only the mixer acts.
    const auto kernel = block_kernel_dense(inst.n, betas[r], convention);
    env.probs = apply_dense_block_kernel(kernel, inst.n, inst.m, env.probs);
  }
  return env;
}

std::vector<double> dirichlet_filter_oracle(const Envelope& env, const ProblemInstance& inst,
                                            double gamma, int p) {
  require(p >= 0, "filter order p must be >= 0");
  require(env.size() == inst.size(), "envelope length does not match the instance");
  const double theta_star = gamma * static_cast<double>(inst.optimal_energy());
  const double scale = 1.0 / std::sqrt(static_cast<double>(p + 1));
  std::vector<double> weights(env.size());
  double total = 0.0;
  for (std::size_t z = 0; z < env.size(); ++z) {
    Amplitude eig = 0.0;
    for (int r = 0; r <= p; ++r) {
      eig += std::polar(1.0, r * theta_star) *
             std::polar(1.0, -static_cast<double>(r) * gamma * static_cast<double>(inst.energy[z]));
    }
    eig *= scale;
    weights[z] = env.probs[z] * std::norm(eig);
    total += weights[z];
  }
  if (!(total > 0.0)) throw PreconditionError("filtered operator has zero trace");
  for (double& w : weights) w /= total;
  return weights;
}

ShotResult sample_shots(std::span<const double> dist, std::uint64_t shots, std::uint64_t seed,
                        std::span<const std::size_t> subset) {
  require(shots >= 1, "need at least one shot");
  require(!dist.empty(), "distribution is empty");
  std::vector<double> cdf(dist.size());
  double acc = 0.0;
  for (std::size_t z = 0; z < dist.size(); ++z) {
    require(dist[z] >= 0.0 && std::isfinite(dist[z]), "distribution has a negative entry");
    acc += dist[z];
    cdf[z] = acc;
  }
  require(acc > 0.0, "distribution has zero mass");

  ShotResult res;
  res.counts.assign(dist.size(), 0);
  res.shots = shots;
  Rng rng(seed);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = rng.uniform() * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    std::size_t z = static_cast<std::size_t>(std::distance(cdf.begin(), it));
    if (z >= dist.size()) z = dist.size() - 1;
    ++res.counts[z];
  }
  for (std::size_t z : subset) {
    require(z < dist.size(), "subset index out of range");
    res.hits += res.counts[z];
  }
  const double nshots = static_cast<double>(shots);
  res.frequency = static_cast<double>(res.hits) / nshots;
  constexpr double zq = 1.959963984540054;
  const double f = res.frequency;
  const double denom = 1.0 + zq * zq / nshots;
  const double centre = (f + zq * zq / (2.0 * nshots)) / denom;
  const double half = zq / denom * std::sqrt(f * (1.0 - f) / nshots + zq * zq / (4.0 * nshots * nshots));
  res.ci_low = std::max(0.0, centre - half);
  res.ci_high = std::min(1.0, centre + half);
  return res;
}

}  // namespace ceqaoa
