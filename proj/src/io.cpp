#include "ceqaoa/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>

namespace ceqaoa::io {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::size_t parse_label(const StringSpace& space, const std::string& label) {
  BlockString z;
  if (space.symbols() > 10) {
    std::stringstream ss(label);
    std::string part;
    while (std::getline(ss, part, '.')) z.symbols.push_back(std::stoi(part));
  } else {
    for (char c : label) {
      require(c >= '0' && c <= '9', "malformed string label: " + label);
      z.symbols.push_back(c - '0');
    }
  }
  return space.index(z);
}

nlohmann::json envelope_to_json(const Envelope& env) { return env.probs; }

std::string envelope_to_csv(const StringSpace& space, const Envelope& env) {
  std::string out = "string,probability\n";
  for (std::size_t z = 0; z < env.size(); ++z)
    out += space.label(z) + "," + format_double(env.probs[z]) + "\n";
  return out;
}

namespace {

double parse_double(const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    require(used == text.size(), "malformed number: " + text);
    return v;
  } catch (const std::logic_error&) {
    throw PreconditionError("malformed number: " + text);
  }
}

}  // namespace

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::stringstream lines(text);
  std::string line;
  bool first = true;
  while (std::getline(lines, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (first) {
      table.header = std::move(cells);
      first = false;
    } else {
      table.rows.push_back(std::move(cells));
    }
  }
  return table;
}

Envelope parse_envelope(const std::string& text, const StringSpace& space) {
  Envelope env;
  env.provenance = EnvelopeSource::ExternalDiagonal;
  const auto first = text.find_first_not_of(" \t\r\n");
  require(first != std::string::npos, "envelope document is empty");
  if (text[first] == '[' || text[first] == '{') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw PreconditionError(std::string("malformed envelope JSON: ") + e.what());
    }
    env.probs = (doc.is_object() ? doc.at("probs") : doc).get<std::vector<double>>();
  } else {
    const CsvTable table = parse_csv(text);
    require(table.header.size() >= 2 && table.header[0] == "string" && table.header[1] == "probability",
            "envelope CSV needs a string,probability header");
    env.probs.assign(space.size(), 0.0);
    for (const auto& row : table.rows) {
      require(row.size() >= 2, "short envelope CSV row");
      env.probs[parse_label(space, row[0])] = parse_double(row[1]);
    }
  }
  require(env.size() == space.size(), "envelope length does not match n^m");
  env.validate();
  return env;
}

Envelope load_envelope_file(const std::string& path, const StringSpace& space) {
  return parse_envelope(read_file(path), space);
}

std::string filtered_law_to_csv(const StringSpace& space, const FilteredLaw& law, const PhaseModel& pm) {
  std::string out = "string,phase,fejer_weight,probability\n";
  for (std::size_t z = 0; z < law.probs.size(); ++z) {
    out += space.label(z) + "," + format_double(pm.theta[z]) + "," + format_double(law.weights[z]) + "," +
           format_double(law.probs[z]) + "\n";
  }
  return out;
}

std::string rl_law_to_csv(const StringSpace& space, const RlLaw& law) {
  std::string out = "string,probability,std_error\n";
  for (std::size_t z = 0; z < law.probs.size(); ++z)
    out += space.label(z) + "," + format_double(law.probs[z]) + "," + format_double(law.std_error[z]) + "\n";
  return out;
}

nlohmann::json certificate_to_json(const Certificate& cert) {
  nlohmann::json j = {{"p", cert.p},
                      {"C_beta", cert.c_beta},
                      {"delta", cert.delta},
                      {"x", cert.x},
                      {"q0_bound", cert.q0_bound},
                      {"regime", to_string(cert.regime)},
                      {"epsilon", cert.epsilon}};
  j["shots"] = std::isfinite(cert.shots) ? nlohmann::json(cert.shots) : nlohmann::json(nullptr);
  return j;
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(' ');
    const auto e = item.find_last_not_of(' ');
    if (b == std::string::npos) continue;
    out.push_back(parse_double(item.substr(b, e - b + 1)));
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write file: " + tmp.string());
    out << content;
    if (!out.flush()) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw std::runtime_error("cannot move " + tmp.string() + " into place: " + ec.message());
}

}  // namespace ceqaoa::io
