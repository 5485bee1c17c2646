#include "ffpos/serialize.hpp"

#include <cstdio>
#include <fstream>

namespace ffpos {

json field_to_json(const FieldSpec& f) {
  return json{{"p", f.p()},
              {"k", f.k()},
              {"q", f.q()},
              {"modulus", f.modulus()},
              {"generator", f.generator()}};
}

json matrix_to_json(const SymMatrix& A) {
  return json{{"n", A.n()}, {"entries", A.full()}};
}

SymMatrix matrix_from_json(const FieldSpec& f, const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("entries"))
    throw Error(Errc::BadInput, "matrix JSON needs {n, entries}");
  std::uint32_t n = j.at("n").get<std::uint32_t>();
  std::vector<Elem> entries = j.at("entries").get<std::vector<Elem>>();
  return SymMatrix::from_full(f, n, entries);
}

json form_to_json(const Form& form) {
  const char* kind = form.kind == FormKind::AutomorphismMultiple ? "automorphism_multiple"
                     : form.kind == FormKind::BijectiveMonomial  ? "bijective_monomial"
                                                                 : "other";
  json j{{"kind", kind}};
  if (form.kind != FormKind::Other) {
    j["c"] = form.c;
    j["exponent"] = form.exponent;
    j["c_sign"] = sign_int(form.c_sign);
  }
  return j;
}

json classification_to_json(const ClassificationResult& r) {
  json preservers = json::array();
  for (const auto& e : r.preservers)
    preservers.push_back(json{{"table", e.table.values}, {"form", form_to_json(e.form)}});
  return json{{"p", r.p},
              {"k", r.k},
              {"q", r.q},
              {"n", r.n},
              {"mode", mode_name(r.mode)},
              {"exhaustive", r.exhaustive},
              {"restriction", r.restriction},
              {"count", r.preservers.size()},
              {"preservers", preservers},
              {"pruning_profile", r.pruning_profile}};
}

json srg_to_json(const SrgParams& s) {
  return json{{"v", s.v}, {"k", s.k}, {"lambda", s.lambda}, {"mu", s.mu}};
}

std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

void write_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::BadInput, "cannot open " + tmp + " for writing");
    out << content;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw Error(Errc::BadInput, "cannot rename " + tmp + " to " + path);
}

}  // namespace ffpos
