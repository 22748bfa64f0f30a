#include "ceqaoa/planner.hpp"

#include <cmath>
#include <limits>

#include "ceqaoa/fejer.hpp"

namespace ceqaoa {

std::string to_string(Regime r) {
  switch (r) {
    case Regime::R1: return "R1";
    case Regime::R2: return "R2";
    case Regime::R3: return "R3";
  }
  return "?";
}

double ratio_parameter(int p, double delta, double c_beta) {
  require(p >= 0, "p must be >= 0");
  require(c_beta >= 0.0 && c_beta <= 1.0, "C_beta must lie in [0, 1]");
  const double s = std::sin(delta / 2.0);
  const double q = static_cast<double>(p + 1);
  return q * q * s * s * c_beta;
}

RatioBounds ratio_bounds(double x, double c_beta) {
  require(x >= 0.0, "x must be >= 0");
  require(c_beta >= 0.0 && c_beta <= 1.0, "C_beta must lie in [0, 1]");
  RatioBounds out;
  if (x == 0.0) return out;
  out.tight = x / ((1.0 - c_beta) + x);
  out.simple = x / (1.0 + x);
  return out;
}

double shot_budget(double x, double epsilon) {
  require(epsilon > 0.0 && epsilon < 1.0, "epsilon must lie in (0, 1)");
  require(x >= 0.0, "x must be >= 0");
  if (x == 0.0) return std::numeric_limits<double>::infinity();
  return (1.0 + 1.0 / x) * std::log(1.0 / epsilon);
}

RegimeReport classify_regime(double x, double eta) {
  require(eta > 0.0 && eta < 1.0, "eta must lie in (0, 1)");
  if (x < 1.0 - eta) return {Regime::R1, std::nullopt};
  if (x > 1.0 + eta) return {Regime::R3, std::nullopt};
  return {Regime::R2, (1.0 - eta) / (2.0 - eta)};
}

namespace {

void check_depth_inputs(double epsilon, double c_beta, double delta) {
  require(epsilon > 0.0 && epsilon < 1.0, "epsilon must lie in (0, 1)");
  require(c_beta > 0.0 && c_beta <= 1.0, "C_beta must lie in (0, 1]");
  require(delta > 0.0 && delta <= kPi, "delta must lie in (0, pi]");
}

}  // namespace

int depth_formula(double epsilon, double c_beta, double delta) {
  check_depth_inputs(epsilon, c_beta, delta);
  const double radicand = (1.0 - epsilon) / epsilon * (1.0 - c_beta) / c_beta;
  const double root = std::sqrt(radicand) / std::sin(delta / 2.0);
  return std::max(0, static_cast<int>(std::ceil(root)) - 1);
}

int depth_for_target(double epsilon, double c_beta, double delta) {
  int p = depth_formula(epsilon, c_beta, delta);
  // Rounding can put the ceiling one step off at exact integers; settle on
  // the smallest order whose evaluated bound meets the target.
  const double target = 1.0 - epsilon;
  while (success_lower_bound(p, c_beta, delta) < target) ++p;
  while (p > 0 && success_lower_bound(p - 1, c_beta, delta) >= target) --p;
  return p;
}

double cmin(double delta, double epsilon, int p) {
  require(delta > 0.0 && delta <= kPi, "delta must lie in (0, pi]");
  require(epsilon > 0.0 && epsilon < 1.0, "epsilon must lie in (0, 1)");
  require(p >= 0, "p must be >= 0");
  const double s = std::sin(delta / 2.0);
  const double q = static_cast<double>(p + 1);
  return 1.0 / (1.0 + epsilon / (1.0 - epsilon) * q * q * s * s);
}

std::vector<double> cmin_curve(const std::vector<double>& deltas, double epsilon, int p) {
  require(!deltas.empty(), "delta grid is empty");
  std::vector<double> out;
  out.reserve(deltas.size());
  for (double d : deltas) out.push_back(cmin(d, epsilon, p));
  return out;
}

double gamma_safe(int p, double r_op) {
  require(p >= 0, "p must be >= 0");
  require(r_op > 0.0, "R_op must be positive");
  return kPi / (static_cast<double>(std::max(p, 1)) * r_op);
}

double main_lobe_constant(double c) {
  require(c > 0.0 && c < kPi, "c must lie in (0, pi)");
  const double h = c / 2.0;
  const double r = std::sin(h) / h;
  return r * r;
}

OrderReduction order_reduction(double x0, int p, int p_prime, double c_prime, double epsilon) {
  require(x0 > 0.0, "x0 must be positive");
  require(p_prime >= 1 && p_prime <= p, "need 1 <= p' <= p");
  require(c_prime > 0.0 && c_prime <= 1.0, "c' must lie in (0, 1]");
  const double ratio = static_cast<double>(p_prime + 1) / static_cast<double>(p + 1);
  OrderReduction out;
  out.x_reduced = c_prime * x0 * ratio * ratio;
  out.shots = shot_budget(out.x_reduced, epsilon);
  out.epsilon = epsilon;
  return out;
}

double lipschitz_envelope_bound(int p_prime, double h_m_norm) {
  require(p_prime >= 0, "p' must be >= 0");
  require(h_m_norm >= 0.0, "||H_M|| must be >= 0");
  return 2.0 * static_cast<double>(p_prime) * h_m_norm;
}

Certificate make_certificate(int p, double c_beta, double delta, double epsilon, double eta) {
  Certificate cert;
  cert.p = p;
  cert.c_beta = c_beta;
  cert.delta = delta;
  cert.epsilon = epsilon;
  cert.x = ratio_parameter(p, delta, c_beta);
  cert.q0_bound = (c_beta > 0.0 && delta > 0.0) ? success_lower_bound(p, c_beta, delta) : 0.0;
  cert.shots = shot_budget(cert.x, epsilon);
  cert.regime = classify_regime(cert.x, eta).regime;
  return cert;
}

}  // namespace ceqaoa
