#pragma once

// Brute-force ground truth on the encoded space [n]^m: statevector
// simulation, the dephased reference model via dense per-block kernels,
// the operator-level Dirichlet filter and seeded shot sampling.

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ceqaoa/instance.hpp"
#include "ceqaoa/mixer.hpp"

namespace ceqaoa {

using Amplitude = std::complex<double>;

struct EncodedState {
  int n = 1;
  int m = 1;
  std::vector<Amplitude> amplitudes;

  double norm() const;
  std::vector<double> probabilities() const;
};

/// Product of W_n states: every amplitude n^(-m/2).
EncodedState initial_state(int n, int m, std::size_t cap = kDefaultEnumerationCap);

/// Multiplies amplitude(z) by exp(-i gamma diag(z)).
EncodedState apply_phases(EncodedState state, std::span<const std::int64_t> diag, double gamma);
EncodedState apply_cost(EncodedState state, const ProblemInstance& inst, double gamma);

/// Blockwise exp(-i beta A(K_n)) through its rank-one form
/// e^{i beta}(I + (e^{-i beta n} - 1)/n J).
EncodedState apply_mixer(EncodedState state, double beta,
                         MixerConvention convention = MixerConvention::Adjacency);

/// Alternates cost then mixer for each layer, starting from `state`.
EncodedState evolve(EncodedState state, std::span<const std::int64_t> diag,
                    std::span<const double> gammas, std::span<const double> betas,
                    MixerConvention convention = MixerConvention::Adjacency);

/// |psi_p> from the W-state product with H_C = E.
EncodedState simulate(const ProblemInstance& inst, std::span<const double> gammas,
                      std::span<const double> betas,
                      MixerConvention convention = MixerConvention::Adjacency);

double subset_probability(const EncodedState& state, std::span<const std::size_t> subset);

/// exp(-i beta A(K_n)) on one block by scaling and squaring of a Taylor
/// series; row-major n x n. Independent of the rank-one closed form.
std::vector<Amplitude> block_unitary_dense(int n, double beta,
                                           MixerConvention convention = MixerConvention::Adjacency);

/// Entrywise |U|^2 of block_unitary_dense; row-major, K[j*n + k] = |<j|U|k>|^2.
std::vector<double> block_kernel_dense(int n, double beta,
                                       MixerConvention convention = MixerConvention::Adjacency);

/// Applies a dense single-block kernel along every block axis.
std::vector<double> apply_dense_block_kernel(std::span<const double> kernel, int n, int m,
                                             std::span<const double> v);

/// Dephased diagonal evolution: each layer keeps the diagonal through the
/// cost step and then applies |U_M|^2. Starts from |s0> unless v0 is given.
Envelope dephased_reference(const ProblemInstance& inst, std::span<const double> gammas,
                            std::span<const double> betas,
                            MixerConvention convention = MixerConvention::Adjacency,
                            const std::optional<Envelope>& v0 = std::nullopt);

/// Diagonal of D_p rho_env D_p^dagger normalized, with
/// D_p = (1/sqrt(p+1)) sum_r e^{i r theta*} e^{-i r gamma H_C}, theta* = gamma E*.
std::vector<double> dirichlet_filter_oracle(const Envelope& env, const ProblemInstance& inst,
                                            double gamma, int p);

struct ShotResult {
  std::vector<std::uint64_t> counts;
  std::uint64_t shots = 0;
  std::uint64_t hits = 0;  // shots landing in the subset
  double frequency = 0.0;
  double ci_low = 0.0;     // 95% Wilson score interval
  double ci_high = 0.0;
};

/// Multinomial draw of S shots by inverse-CDF sampling; deterministic under seed.
ShotResult sample_shots(std::span<const double> dist, std::uint64_t shots, std::uint64_t seed,
                        std::span<const std::size_t> subset = {});

}  // namespace ceqaoa
