#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ceqaoa/common.hpp"

namespace ceqaoa {

enum class Regime { R1, R2, R3 };

std::string to_string(Regime r);

/// Depth/shot certificate for one (p, C_beta, delta, epsilon).
struct Certificate {
  int p = 0;
  double c_beta = 0.0;
  double delta = 0.0;
  double x = 0.0;
  double q0_bound = 0.0;
  double shots = 0.0;  // +inf when x = 0
  Regime regime = Regime::R1;
  double epsilon = 0.0;
};

/// x = (p+1)^2 sin^2(delta/2) C_beta.
double ratio_parameter(int p, double delta, double c_beta);

struct RatioBounds {
  double tight = 0.0;   // x / ((1 - C) + x)
  double simple = 0.0;  // x / (1 + x)
};

RatioBounds ratio_bounds(double x, double c_beta);

/// (1 + 1/x) ln(1/epsilon); +inf for x = 0.
double shot_budget(double x, double epsilon);

struct RegimeReport {
  Regime regime = Regime::R1;
  std::optional<double> threshold_q0;  // (1-eta)/(2-eta), set in R2
};

RegimeReport classify_regime(double x, double eta = 0.5);

/// Smallest filter order whose success bound reaches 1 - epsilon, seeded
/// from ceil(sqrt((1-eps)/eps * (1-C)/C) csc(delta/2)) - 1 and clamped at 0.
int depth_for_target(double epsilon, double c_beta, double delta);

/// The closed-form order before floating-point adjustment.
int depth_formula(double epsilon, double c_beta, double delta);

/// C_min(delta) = 1 / (1 + eps/(1-eps) (p+1)^2 sin^2(delta/2)).
double cmin(double delta, double epsilon, int p);
std::vector<double> cmin_curve(const std::vector<double>& deltas, double epsilon, int p);

/// pi / (p R_op); p = 0 is treated as a single application (pi / R_op).
double gamma_safe(int p, double r_op);

/// kappa_c = (sin(c/2) / (c/2))^2 for c in (0, pi).
double main_lobe_constant(double c);

struct OrderReduction {
  double x_reduced = 0.0;
  double shots = 0.0;
  double epsilon = 0.0;
};

/// Conservative ratio and shot budget after dropping from order p to p'.
OrderReduction order_reduction(double x0, int p, int p_prime, double c_prime, double epsilon);

/// 2 p' ||H_M||.
double lipschitz_envelope_bound(int p_prime, double h_m_norm);

Certificate make_certificate(int p, double c_beta, double delta, double epsilon, double eta = 0.5);

}  // namespace ceqaoa
