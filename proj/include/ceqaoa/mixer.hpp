#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ceqaoa/common.hpp"
#include "ceqaoa/instance.hpp"

namespace ceqaoa {

/// Which generator a mixer angle refers to. Adjacency: exp(-i beta A(K_n)).
/// Normalized: exp(-i beta A(K_n)/n), i.e. the adjacency form at beta/n.
enum class MixerConvention { Adjacency, Normalized };

std::string to_string(MixerConvention c);
MixerConvention parse_mixer_convention(const std::string& text);

/// The angle fed to the adjacency-form kernel for a given convention.
double adjacency_angle(double beta, int n, MixerConvention convention);

/// Single-block unistochastic kernel |<j|exp(-i beta A(K_n))|k>|^2.
/// Fully described by its diagonal and off-diagonal entries.
struct TransitionKernel {
  int n = 1;
  double diag = 1.0;
  double offdiag = 0.0;
  std::optional<double> beta;  // empty for the angle-averaged kernel

  double entry(int i, int j) const { return i == j ? diag : offdiag; }
  std::vector<double> dense() const;  // row-major n x n
};

TransitionKernel single_block_kernel(int n, double beta,
                                     MixerConvention convention = MixerConvention::Adjacency);

/// The beta-average of single_block_kernel over [0, 2*pi).
TransitionKernel averaged_block_kernel(int n);

struct Primitivity {
  bool primitive = false;
  double resonance_distance = 0.0;  // distance from beta to (2*pi/n) Z
};

inline constexpr double kResonanceTolerance = 1e-12;

/// The single-block kernel is strictly positive iff beta is off the
/// resonance lattice (2*pi/n) Z.
Primitivity is_primitive(int n, double beta);

enum class EnvelopeSource { UniformInitial, ExternalDiagonal };

/// A probability distribution over [n]^m in canonical order.
struct Envelope {
  std::vector<double> probs;
  EnvelopeSource provenance = EnvelopeSource::ExternalDiagonal;

  std::size_t size() const { return probs.size(); }
  /// Throws PreconditionError unless entries are >= 0 and sum to 1 (1e-9).
  void validate() const;
};

Envelope uniform_envelope(std::size_t size);
Envelope point_mass(std::size_t size, std::size_t at);

/// Applies the tensor-product kernel K^{(x)m} blockwise without forming
/// the n^m x n^m matrix.
Envelope apply_block_kernel(const TransitionKernel& kernel, const Envelope& env, int m);

/// W_p = M_{beta_p} ... M_{beta_1} v0.
Envelope mixer_envelope(const ProblemInstance& inst, const Envelope& v0,
                        std::span<const double> betas,
                        MixerConvention convention = MixerConvention::Adjacency);

struct EnvelopeMass {
  double value = 0.0;
  bool zero_support = false;  // the subset carries no envelope mass
};

/// Total envelope weight on a (nonempty) set of string indices.
EnvelopeMass envelope_mass(const Envelope& env, std::span<const std::size_t> subset);

/// Modulus of the second eigenvalue: |diag - offdiag|.
double second_eigenvalue(const TransitionKernel& kernel);

}  // namespace ceqaoa
