#include <doctest.h>

#include <cmath>
#include <random>

#include "ceqaoa/mixer.hpp"
#include "support/oracles.hpp"

using namespace ceqaoa;

TEST_CASE("single block kernel examples") {
  auto k = single_block_kernel(2, kPi / 2);
  CHECK(k.diag == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(k.offdiag == doctest::Approx(1.0));

  auto id = single_block_kernel(5, 0.0);
  CHECK(id.diag == 1.0);
  CHECK(id.offdiag == 0.0);

  auto q = single_block_kernel(4, kPi / 4);
  CHECK(q.diag == doctest::Approx(0.25));
  CHECK(q.offdiag == doctest::Approx(0.25));
}

TEST_CASE("single block kernel is doubly stochastic and matches the exponential") {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 6; ++n) {
    for (double beta : ref::random_angles(rng, 5, -7.0, 7.0)) {
      auto k = single_block_kernel(n, beta);
      CHECK(k.diag + (n - 1) * k.offdiag == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(k.diag >= 0.0);
      CHECK(k.offdiag >= 0.0);
      const Eigen::MatrixXd m = ref::kernel_by_eig(n, beta);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) CHECK(std::abs(m(i, j) - k.entry(i, j)) < 1e-10);
    }
  }
}

TEST_CASE("normalized convention rescales the angle") {
  auto a = single_block_kernel(3, 0.9, MixerConvention::Normalized);
  auto b = single_block_kernel(3, 0.3, MixerConvention::Adjacency);
  CHECK(a.diag == doctest::Approx(b.diag));
  CHECK(parse_mixer_convention("normalized") == MixerConvention::Normalized);
}

TEST_CASE("averaged kernel") {
  auto a2 = averaged_block_kernel(2);
  CHECK(a2.diag == doctest::Approx(0.5));
  CHECK(a2.offdiag == doctest::Approx(0.5));
  auto a4 = averaged_block_kernel(4);
  CHECK(a4.diag == doctest::Approx(5.0 / 8));
  CHECK(a4.offdiag == doctest::Approx(1.0 / 8));
  CHECK_THROWS_AS(averaged_block_kernel(1), PreconditionError);
  CHECK(ref::averaged_kernel_entry(3, 0, 1) == doctest::Approx(2.0 / 9).epsilon(1e-8));
}

TEST_CASE("primitivity") {
  CHECK_FALSE(is_primitive(3, 2 * kPi / 3).primitive);
  CHECK(is_primitive(3, 0.1).primitive);
  CHECK_FALSE(is_primitive(2, kPi).primitive);
  CHECK(is_primitive(3, 0.1).resonance_distance == doctest::Approx(0.1));
  CHECK_THROWS_AS(is_primitive(1, 0.3), PreconditionError);
}

TEST_CASE("apply block kernel") {
  const int n = 3, m = 2;
  auto k = single_block_kernel(n, 0.8);
  auto u = apply_block_kernel(k, uniform_envelope(9), m);
  for (double v : u.probs) CHECK(v == doctest::Approx(1.0 / 9));

  auto same = apply_block_kernel(single_block_kernel(n, 0.0), point_mass(9, 4), m);
  CHECK(same.probs == point_mass(9, 4).probs);

  // one layer from a point mass gives a row of the product kernel
  StringSpace s(n, m);
  auto row = apply_block_kernel(k, point_mass(9, 5), m);
  for (std::size_t z = 0; z < 9; ++z) {
    const double expect = k.entry(s.symbol_at(z, 0), s.symbol_at(5, 0)) * k.entry(s.symbol_at(z, 1), s.symbol_at(5, 1));
    CHECK(row.probs[z] == doctest::Approx(expect).epsilon(1e-14));
  }
  CHECK_THROWS_AS(apply_block_kernel(k, uniform_envelope(8), m), PreconditionError);
}

TEST_CASE("mixer envelope") {
  ProblemInstance inst;
  inst.n = 3;
  inst.m = 2;
  inst.energy.assign(9, 0);
  inst.penalty.assign(9, 0);
  std::vector<double> betas{0.3, 1.1};
  auto u = mixer_envelope(inst, uniform_envelope(9), betas);
  for (double v : u.probs) CHECK(v == doctest::Approx(1.0 / 9));
  auto same = mixer_envelope(inst, point_mass(9, 2), std::vector<double>{});
  CHECK(same.probs == point_mass(9, 2).probs);
  std::vector<double> resonant{2 * kPi / 3, 4 * kPi / 3};
  auto res = mixer_envelope(inst, point_mass(9, 7), resonant);
  CHECK(res.probs[7] == doctest::Approx(1.0));
}

TEST_CASE("geometric mixing toward uniform on one block") {
  const int n = 4;
  auto k = single_block_kernel(n, 0.5);
  const double lam = second_eigenvalue(k);
  Envelope v = point_mass(n, 0);
  double dev0 = 0.0;
  for (double x : v.probs) dev0 = std::max(dev0, std::abs(x - 1.0 / n));
  for (int t = 1; t <= 12; ++t) {
    v = apply_block_kernel(k, v, 1);
    double dev = 0.0;
    for (double x : v.probs) dev = std::max(dev, std::abs(x - 1.0 / n));
    CHECK(dev <= std::pow(lam, t) * dev0 + 1e-15);
  }
}

TEST_CASE("envelope mass and second eigenvalue") {
  auto u = uniform_envelope(4);
  std::vector<std::size_t> one{2}, all{0, 1, 2, 3}, miss{1};
  CHECK(envelope_mass(u, one).value == doctest::Approx(0.25));
  CHECK(envelope_mass(u, all).value == doctest::Approx(1.0));
  auto pmass = envelope_mass(point_mass(4, 0), miss);
  CHECK(pmass.value == 0.0);
  CHECK(pmass.zero_support);
  CHECK_THROWS_AS(envelope_mass(u, std::vector<std::size_t>{}), PreconditionError);

  CHECK(second_eigenvalue(single_block_kernel(3, 0.0)) == 1.0);
  CHECK(second_eigenvalue(single_block_kernel(4, kPi / 4)) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(second_eigenvalue(averaged_block_kernel(2)) == 0.0);
}

TEST_CASE("envelope validation") {
  Envelope bad;
  bad.probs = {0.5, 0.6};
  CHECK_THROWS_AS(bad.validate(), PreconditionError);
  bad.probs = {1.2, -0.2};
  CHECK_THROWS_AS(bad.validate(), PreconditionError);
}
