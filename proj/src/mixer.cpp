#include "ceqaoa/mixer.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace ceqaoa {

std::string to_string(MixerConvention c) {
  return c == MixerConvention::Adjacency ? "adjacency" : "normalized";
}

MixerConvention parse_mixer_convention(const std::string& text) {
  if (text == "adjacency") return MixerConvention::Adjacency;
  if (text == "normalized") return MixerConvention::Normalized;
  throw PreconditionError("unknown mixer convention: " + text);
}

double adjacency_angle(double beta, int n, MixerConvention convention) {
  return convention == MixerConvention::Adjacency ? beta : beta / static_cast<double>(n);
}

std::vector<double> TransitionKernel::dense() const {
  std::vector<double> out(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), offdiag);
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i) * static_cast<std::size_t>(n + 1)] = diag;
  return out;
}

Primitivity is_primitive(int n, double beta) {
  require(n >= 2, "primitivity needs n >= 2");
  const double period = kTwoPi / static_cast<double>(n);
  const double dist = std::abs(beta - period * std::round(beta / period));
  return {dist > kResonanceTolerance, dist};
}

TransitionKernel single_block_kernel(int n, double beta, MixerConvention convention) {
  require(n >= 1, "n must be >= 1");
  TransitionKernel k;
  k.n = n;
  k.beta = beta;
  if (n == 1) return k;
  const double angle = adjacency_angle(beta, n, convention);
  if (!is_primitive(n, angle).primitive) return k;  // resonance: exactly the identity
  const double nn = static_cast<double>(n);
  const double s = std::sin(nn * angle / 2.0);
  k.offdiag = 4.0 / (nn * nn) * s * s;
  k.diag = 1.0 - (nn - 1.0) * k.offdiag;
  return k;
}

TransitionKernel averaged_block_kernel(int n) {
  require(n >= 2, "averaged kernel needs n >= 2");
  const double nn = static_cast<double>(n);
  TransitionKernel k;
  k.n = n;
  k.offdiag = 2.0 / (nn * nn);
  k.diag = 1.0 - 2.0 / nn + 2.0 / (nn * nn);
  return k;
}

void Envelope::validate() const {
  require(!probs.empty(), "envelope is empty");
  double total = 0.0;
  for (double p : probs) {
    require(std::isfinite(p) && p >= 0.0, "envelope has a negative or non-finite entry");
    total += p;
  }
  require(std::abs(total - 1.0) <= 1e-9, "envelope does not sum to 1");
}

Envelope uniform_envelope(std::size_t size) {
  require(size > 0, "envelope size must be positive");
  return {std::vector<double>(size, 1.0 / static_cast<double>(size)), EnvelopeSource::UniformInitial};
}

Envelope point_mass(std::size_t size, std::size_t at) {
  require(at < size, "point mass index out of range");
  Envelope env{std::vector<double>(size, 0.0), EnvelopeSource::ExternalDiagonal};
  env.probs[at] = 1.0;
  return env;
}

Envelope apply_block_kernel(const TransitionKernel& kernel, const Envelope& env, int m) {
  const StringSpace space(kernel.n, m, std::numeric_limits<std::size_t>::max());
  require(env.size() == space.size(), "envelope length does not match n^m");
  Envelope out = env;
  if (kernel.offdiag == 0.0 && kernel.diag == 1.0) return out;

  // Along each block axis the kernel is (diag - offdiag) I + offdiag J,
  // so the new value is a scaled copy plus offdiag times the fiber sum.
  const std::size_t n = static_cast<std::size_t>(kernel.n);
  const double shrink = kernel.diag - kernel.offdiag;
  std::vector<double> next(out.size());
  for (int b = 0; b < m; ++b) {
    const std::size_t stride = space.stride(b);
    const std::size_t span = stride * n;
    for (std::size_t base = 0; base < out.size(); base += span) {
      for (std::size_t lo = 0; lo < stride; ++lo) {
        double fiber = 0.0;
        for (std::size_t k = 0; k < n; ++k) fiber += out.probs[base + lo + k * stride];
        for (std::size_t k = 0; k < n; ++k) {
          const std::size_t z = base + lo + k * stride;
          next[z] = shrink * out.probs[z] + kernel.offdiag * fiber;
        }
      }
    }
    out.probs.swap(next);
  }
  return out;
}

Envelope mixer_envelope(const ProblemInstance& inst, const Envelope& v0,
                        std::span<const double> betas, MixerConvention convention) {
  v0.validate();
  require(v0.size() == inst.size(), "initial envelope length does not match the instance");
  Envelope env = v0;
  for (double beta : betas) env = apply_block_kernel(single_block_kernel(inst.n, beta, convention), env, inst.m);
  return env;
}

EnvelopeMass envelope_mass(const Envelope& env, std::span<const std::size_t> subset) {
  require(!subset.empty(), "envelope_mass needs a nonempty subset");
  EnvelopeMass mass;
  for (std::size_t z : subset) {
    require(z < env.size(), "subset index out of range");
    mass.value += env.probs[z];
  }
  mass.zero_support = mass.value == 0.0;
  return mass;
}

double second_eigenvalue(const TransitionKernel& kernel) {
  require(kernel.n >= 2, "second eigenvalue needs n >= 2");
  return std::abs(kernel.diag - kernel.offdiag);
}

}  // namespace ceqaoa
