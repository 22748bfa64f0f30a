#include <doctest.h>

#include <cmath>

#include "ceqaoa/instance.hpp"

using namespace ceqaoa;

TEST_CASE("string space indexing, block 0 fastest") {
  StringSpace s(3, 2);
  CHECK(s.size() == 9);
  CHECK(s.index({{1, 0}}) == 1);
  CHECK(s.index({{0, 1}}) == 3);
  CHECK(s.decode(5) == BlockString{{2, 1}});
  CHECK(s.label(5) == "21");
  for (std::size_t z = 0; z < s.size(); ++z) CHECK(s.index(s.decode(z)) == z);

  StringSpace wide(12, 2);
  CHECK(wide.label(wide.index({{11, 3}})) == "11.3");
}

TEST_CASE("enumeration cap") {
  CHECK_THROWS_AS(StringSpace(4, 7, 4096), CapExceededError);
  CHECK_NOTHROW(StringSpace(4, 6, 4096));
}

TEST_CASE("load dense and generator instances") {
  auto a = load_instance(nlohmann::json::parse(R"({"n":2,"m":1,"energy":[0,1]})"));
  CHECK(a.energy == std::vector<std::int64_t>{0, 1});

  auto b = load_instance(nlohmann::json::parse(
      R"({"n":2,"m":2,"generator":{"type":"assignment","cost":[[0,1],[1,0]]}})"));
  // E(z) = cost[0][z0] + cost[1][z1], index = z0 + 2 z1
  CHECK(b.energy == std::vector<std::int64_t>{1, 2, 0, 1});
  // column-collision penalty by default when m = n
  CHECK(b.penalty == std::vector<std::int64_t>{2, 0, 0, 2});

  CHECK_THROWS_AS(load_instance(nlohmann::json::parse(R"({"n":2,"m":1,"energy":[0,0.5],"lattice_scale":1})")),
                  PreconditionError);
  CHECK_THROWS_AS(load_instance(nlohmann::json::parse(R"({"n":2,"m":2,"energy":[0,1,2]})")),
                  PreconditionError);
  LoadOptions small;
  small.cap = 8;
  CHECK_THROWS_AS(load_instance(nlohmann::json::parse(R"({"n":3,"m":2,"energy":[0,1,2,3,4,5,6,7,8]})"), small),
                  CapExceededError);
}

TEST_CASE("lattice scale divides physical energies") {
  auto inst = load_instance(nlohmann::json::parse(R"({"n":2,"m":1,"energy":[0,0.5],"lattice_scale":0.25})"));
  CHECK(inst.energy == std::vector<std::int64_t>{0, 2});
  CHECK(inst.physical_energies()[1] == doctest::Approx(0.5));
}

TEST_CASE("instance JSON round trip") {
  auto inst = load_instance(nlohmann::json::parse(R"({"n":3,"m":2,"energy":[5,1,2,3,4,0,6,7,8],"penalty":"none"})"));
  auto again = load_instance(to_json(inst));
  CHECK(again.energy == inst.energy);
  CHECK(again.penalty == inst.penalty);
}

TEST_CASE("column-collision penalty values") {
  CHECK(penalty_value(3, {{0, 1, 2}}) == 0);
  CHECK(penalty_value(3, {{0, 0, 1}}) == 2);
  CHECK(penalty_value(2, {{0, 0}}) == 2);
  // zero exactly on permutations
  for (int n = 1; n <= 4; ++n) {
    StringSpace s(n, n);
    for (std::size_t z = 0; z < s.size(); ++z) {
      auto bs = s.decode(z);
      std::vector<int> seen(n, 0);
      bool perm = true;
      for (int v : bs.symbols) perm = perm && (seen[v]++ == 0);
      CHECK((penalty_value(n, bs) == 0) == perm);
    }
  }
}

TEST_CASE("wrapped phase") {
  CHECK(wrapped_phase(kPi / 4, 2, 0) == doctest::Approx(kPi / 2));
  CHECK(wrapped_phase(0.7, 5, 5) == 0.0);
  CHECK(wrapped_phase(kPi / 4, 8, 0) == 0.0);
  CHECK(wrapped_phase(kPi / 4, 4, 0) == doctest::Approx(kPi));
  for (int e = -40; e <= 40; ++e) {
    const double t = wrapped_phase(0.37, e, 0);
    CHECK(t > -kPi);
    CHECK(t <= kPi);
  }
}

namespace {
ProblemInstance flat(std::vector<std::int64_t> e) {
  ProblemInstance inst;
  inst.n = static_cast<int>(e.size());
  inst.m = 1;
  inst.energy = std::move(e);
  inst.penalty.assign(inst.energy.size(), 0);
  return inst;
}
}  // namespace

TEST_CASE("phase gap") {
  auto pm = phase_gap(flat({0, 1, 3}), kPi / 2);
  CHECK(pm.delta == doctest::Approx(kPi / 2));
  CHECK(pm.theta[2] == doctest::Approx(-kPi / 2));  // 3 pi / 2 wrapped
  CHECK_FALSE(pm.collision());

  auto col = phase_gap(flat({0, 3}), 2 * kPi / 3);
  CHECK(col.delta == 0.0);
  CHECK(col.collision());
  CHECK(col.collisions == std::vector<std::size_t>{1});

  auto deg = phase_gap(flat({2, 2}), 0.4);
  CHECK(deg.degenerate);
  CHECK(deg.delta == doctest::Approx(kPi));
}

TEST_CASE("gap scope") {
  ProblemInstance inst = flat({0, 1, 5});
  inst.penalty = {0, 2, 0};  // the E = 1 string is infeasible
  auto all = phase_gap(inst, 0.5, GapScope::AllStrings);
  auto feas = phase_gap(inst, 0.5, GapScope::FeasibleOnly);
  CHECK(all.delta == doctest::Approx(0.5));
  CHECK(feas.delta == doctest::Approx(2.5));
  CHECK(parse_gap_scope("feasible") == GapScope::FeasibleOnly);
  CHECK_THROWS_AS(parse_gap_scope("some"), PreconditionError);
}
