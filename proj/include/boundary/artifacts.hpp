#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "boundary/switchsearch.hpp"
#include "boundary/test_set.hpp"

namespace boundary {

/// One JSON object per line:
///   {"string", "valid", "origin", then whichever of "seed", "index",
///    "seed_index", "step_index", "operator" the provenance carries}
void write_candidates_jsonl(std::ostream& out, const TestSet& set);
TestSet read_candidates_jsonl(std::istream& in, Role role);

/// Every trace entry of every pair, seed entries included (step_index 0,
/// operator ""). "parent" is the step_index the entry was mutated from.
void write_trace_jsonl(std::ostream& out, const std::vector<BoundaryPair>& pairs);

void write_text_file(const std::filesystem::path& path, const std::string& contents);
TestSet read_candidates_file(const std::filesystem::path& path, Role role);

}  // namespace boundary
