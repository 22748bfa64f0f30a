#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "ceqaoa/commands.hpp"
#include "ceqaoa/io.hpp"

using namespace ceqaoa;

namespace {

std::string write_instance(const std::string& name, const std::string& body) {
  const auto dir = std::filesystem::temp_directory_path() / "ceqaoa_cmd_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / name).string();
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST_CASE("certify the two-string toy") {
  RunConfig c;
  c.command = Command::Certify;
  c.instance_path = write_instance("toy.json", R"({"n":2,"m":1,"energy":[0,1],"penalty":"none"})");
  c.gamma = kPi;
  c.p = 1;
  auto out = run_command(c);
  CHECK(out.exit_code == kExitOk);
  auto j = nlohmann::json::parse(out.document);
  CHECK(j["status"] == "certified");
  CHECK(j["q0_exact"].get<double>() == doctest::Approx(1.0));
  CHECK(j["q0_bound"].get<double>() == doctest::Approx(0.8));
  CHECK(j["seed"] == 0);
}

TEST_CASE("certify all-optimal and colliding instances") {
  RunConfig c;
  c.command = Command::Certify;
  c.instance_path = write_instance("flat.json", R"({"n":3,"m":1,"energy":[4,4,4],"penalty":"none"})");
  c.gamma = 0.7;
  c.p = 2;
  auto j = nlohmann::json::parse(run_command(c).document);
  CHECK(j["q0_exact"].get<double>() == doctest::Approx(1.0));
  CHECK(j["q0_bound"].get<double>() == doctest::Approx(1.0));

  c.instance_path = write_instance("col.json", R"({"n":2,"m":1,"energy":[0,3],"penalty":"none"})");
  c.gamma = 2 * kPi / 3;
  auto out = run_command(c);
  CHECK(out.exit_code == kExitUncertifiable);
  CHECK(nlohmann::json::parse(out.document)["status"] == "uncertifiable");
}

TEST_CASE("degrees flag converts at parse time") {
  RunConfig c;
  c.command = Command::Certify;
  c.instance_path = write_instance("toy.json", R"({"n":2,"m":1,"energy":[0,1],"penalty":"none"})");
  c.gamma = 180.0;
  c.degrees = true;
  auto j = nlohmann::json::parse(run_command(c).document);
  CHECK(j["gamma"].get<double>() == doctest::Approx(kPi));
}

TEST_CASE("curves rows are sorted and monotone") {
  RunConfig c;
  c.command = Command::Curves;
  c.deltas = {kPi, 0.5, 1.5};
  c.orders = {3, 2};
  c.epsilon = 0.1;
  auto table = io::parse_csv(run_command(c).document);
  CHECK(table.header == std::vector<std::string>{"delta", "p", "epsilon", "c_min"});
  REQUIRE(table.rows.size() == 6);
  CHECK(table.rows[0][1] == "2");
  CHECK(std::stod(table.rows[2][0]) == doctest::Approx(kPi));
  CHECK(std::stod(table.rows[2][3]) == doctest::Approx(0.5));
  for (std::size_t i = 1; i < 3; ++i) CHECK(std::stod(table.rows[i][3]) < std::stod(table.rows[i - 1][3]));

  RunConfig empty;
  empty.command = Command::Curves;
  CHECK_THROWS_AS(run_command(empty), PreconditionError);
}

TEST_CASE("exit codes") {
  RunConfig c;
  c.command = Command::Plan;
  c.c_beta = 0.5;
  c.delta = 5.0;
  CHECK(run_and_write(c) == kExitPrecondition);

  RunConfig big;
  big.command = Command::Envelope;
  big.instance_path = write_instance("big.json", R"({"n":3,"m":3,"generator":{"type":"assignment","cost":[[1,2,3],[4,5,6],[7,8,9]]}})");
  big.cap = 8;
  CHECK(run_and_write(big) == kExitCapExceeded);

  CHECK_THROWS_AS(parse_command("draw"), PreconditionError);
}

TEST_CASE("envelope output re-parses") {
  RunConfig c;
  c.command = Command::Envelope;
  c.instance_path = write_instance("e.json", R"({"n":2,"m":2,"energy":[0,1,2,3],"penalty":"none"})");
  c.betas = {0.4};
  c.format = "csv";
  auto env = io::parse_envelope(run_command(c).document, StringSpace(2, 2));
  CHECK(env.probs[0] == doctest::Approx(0.25));
  c.format = "json";
  auto j = nlohmann::json::parse(run_command(c).document);
  CHECK(io::parse_envelope(j.dump(), StringSpace(2, 2)).probs == env.probs);
}
