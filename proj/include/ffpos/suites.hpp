#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ffpos/serialize.hpp"

namespace ffpos {

/// One comparison inside a verification suite.
struct CheckRow {
  std::string name;
  json expected;
  json observed;
  bool pass = false;
};

struct SuiteReport {
  std::string suite;
  json params = json::object();
  std::vector<CheckRow> checks;
  std::uint64_t elapsed_ms = 0;  // excluded from the canonical payload

  bool pass() const;
  json to_json() const;
};

struct SuiteOptions {
  /// Field override for parameterized suites (srg, weil, lucas, keylemma,
  /// hoffman, cholesky); theorem suites run their pinned field lists.
  std::optional<std::pair<std::uint32_t, std::uint32_t>> field;
  std::string golden_dir;  // where recorded evidence files live
  std::uint32_t jobs = 1;
};

struct SuiteDescriptor {
  std::string id;
  std::string summary;
  int criterion = 0;  // matching acceptance row, 0 for supplementary suites
};

/// Stable suite ids, one per acceptance row plus a few finer-grained extras.
const std::vector<SuiteDescriptor>& suite_registry();

/// Run one suite. Throws BadInput for unknown ids.
SuiteReport run_suite(const std::string& id, const SuiteOptions& options = {});

}  // namespace ffpos
