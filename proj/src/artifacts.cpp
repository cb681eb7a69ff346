#include "boundary/artifacts.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "boundary/errors.hpp"

namespace boundary {

void write_candidates_jsonl(std::ostream& out, const TestSet& set) {
  for (const auto& c : set) {
    nlohmann::ordered_json j;
    j["string"] = c.text;
    j["valid"] = c.valid;
    j["origin"] = c.provenance.origin;
    const auto& p = c.provenance;
    if (p.seed) j["seed"] = *p.seed;
    if (p.index) j["index"] = *p.index;
    if (p.seed_index) j["seed_index"] = *p.seed_index;
    if (p.step_index) j["step_index"] = *p.step_index;
    if (p.operator_name) j["operator"] = *p.operator_name;
    out << j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
  }
}

TestSet read_candidates_jsonl(std::istream& in, Role role) {
  TestSet set(role);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      Candidate c;
      c.text = j.at("string").get<std::string>();
      c.valid = j.at("valid").get<bool>();
      c.provenance.origin = j.at("origin").get<std::string>();
      if (j.contains("seed")) c.provenance.seed = j["seed"].get<std::uint64_t>();
      if (j.contains("index")) c.provenance.index = j["index"].get<std::size_t>();
      if (j.contains("seed_index")) c.provenance.seed_index = j["seed_index"].get<std::size_t>();
      if (j.contains("step_index")) c.provenance.step_index = j["step_index"].get<std::size_t>();
      if (j.contains("operator")) c.provenance.operator_name = j["operator"].get<std::string>();
      set.insert(std::move(c));
    } catch (const nlohmann::json::exception& e) {
      throw Error("candidate file line " + std::to_string(number) + ": " + e.what());
    }
  }
  return set;
}

void write_trace_jsonl(std::ostream& out, const std::vector<BoundaryPair>& pairs) {
  for (const auto& pair : pairs) {
    for (std::size_t step = 0; step < pair.trace.size(); ++step) {
      const auto& entry = pair.trace[step];
      nlohmann::ordered_json j;
      j["string"] = entry.text;
      j["valid"] = entry.valid;
      j["origin"] = "step2";
      j["seed_index"] = pair.seed_index;
      j["step_index"] = step;
      j["operator"] = entry.operator_name;
      j["parent"] = entry.parent ? nlohmann::ordered_json(*entry.parent) : nlohmann::ordered_json();
      out << j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
    }
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << contents;
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

TestSet read_candidates_file(const std::filesystem::path& path, Role role) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path.string() + "'");
  return read_candidates_jsonl(in, role);
}

}  // namespace boundary
