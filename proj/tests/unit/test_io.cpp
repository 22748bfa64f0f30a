#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "ceqaoa/io.hpp"

using namespace ceqaoa;

TEST_CASE("double formatting round trips") {
  for (double x : {0.1, 1.0 / 3, 1e-300, 123456789.125, -2.5}) CHECK(std::stod(io::format_double(x)) == x);
  CHECK(io::format_double(1.0) == "1");
}

TEST_CASE("labels") {
  StringSpace s(3, 3);
  for (std::size_t z = 0; z < s.size(); ++z) CHECK(io::parse_label(s, s.label(z)) == z);
  StringSpace w(11, 2);
  for (std::size_t z = 0; z < w.size(); z += 7) CHECK(io::parse_label(w, w.label(z)) == z);
}

TEST_CASE("envelope JSON and CSV round trip") {
  StringSpace s(2, 2);
  Envelope env;
  env.probs = {0.1, 0.2, 0.3, 0.4};
  auto j = io::parse_envelope(io::envelope_to_json(env).dump(), s);
  CHECK(j.probs == env.probs);
  const std::string csv = io::envelope_to_csv(s, env);
  CHECK(csv.rfind("string,probability\n", 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);
  auto c = io::parse_envelope(csv, s);
  CHECK(c.probs == env.probs);
  auto obj = io::parse_envelope(R"({"probs":[0.25,0.25,0.25,0.25]})", s);
  CHECK(obj.probs[3] == 0.25);
  CHECK_THROWS_AS(io::parse_envelope("[0.5, 0.5]", s), PreconditionError);
  CHECK_THROWS_AS(io::parse_envelope("[0.5, 0.5, 0.5, 0.5]", s), PreconditionError);
  CHECK_THROWS_AS(io::parse_envelope("[0.5, ", s), PreconditionError);
}

TEST_CASE("real lists") {
  CHECK(io::parse_real_list("0.1, 2,3e-1") == std::vector<double>{0.1, 2.0, 0.3});
  CHECK(io::parse_real_list("").empty());
  CHECK_THROWS_AS(io::parse_real_list("1,x"), PreconditionError);
}

TEST_CASE("atomic write") {
  const auto dir = std::filesystem::temp_directory_path() / "ceqaoa_io_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "out.txt").string();
  io::write_file_atomic(path, "first\n");
  io::write_file_atomic(path, "second\n");
  CHECK(io::read_file(path) == "second\n");
  CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
  std::filesystem::remove_all(dir);
  CHECK_THROWS_AS(io::read_file((dir / "missing").string()), PreconditionError);
}
