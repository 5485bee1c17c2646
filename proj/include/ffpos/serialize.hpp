#pragma once

#include <string>

#include "json.hpp"

#include "ffpos/gf.hpp"
#include "ffpos/matpos.hpp"
#include "ffpos/paley.hpp"
#include "ffpos/preserver.hpp"

namespace ffpos {

using json = nlohmann::json;

json field_to_json(const FieldSpec& f);

json matrix_to_json(const SymMatrix& A);
SymMatrix matrix_from_json(const FieldSpec& f, const json& j);

json form_to_json(const Form& form);

/// Canonical classification payload. Timing is deliberately excluded so that
/// repeated runs serialize byte-identically; callers report it separately.
json classification_to_json(const ClassificationResult& r);

json srg_to_json(const SrgParams& s);

/// Sorted-key, 2-space-indented dump with a trailing newline.
std::string canonical_dump(const json& j);

/// Write via a temporary file in the same directory, then rename.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace ffpos
