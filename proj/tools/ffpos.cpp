// ffpos: positive definite matrices over finite fields, entrywise preserver
// classification, and the verification suites behind them.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "ffpos/numtheory.hpp"
#include "ffpos/suites.hpp"

using namespace ffpos;

namespace {

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Errc::NotStronglyRegular:
    case Errc::RouteDisagreement:
    case Errc::VerificationFailed:
      return 1;  // a check failed or found a counterexample
    default:
      return 2;  // usage, size or input problem
  }
}

void emit(const std::string& payload, const std::string& out_path) {
  if (out_path.empty())
    std::cout << payload;
  else
    write_atomic(out_path, payload);
}

std::uint64_t size_limit_from_env(std::uint64_t fallback) {
  if (const char* env = std::getenv("FFPOS_SIZE_LIMIT")) {
    char* end = nullptr;
    std::uint64_t v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return fallback;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    out += c;
  }
  out += "\"";
  return out;
}

std::string csv_cell(const json& j) {
  return csv_quote(j.is_string() ? j.get<std::string>() : j.dump());
}

// flattened projections of the canonical JSON payloads
std::string classification_to_csv(const ClassificationResult& r) {
  std::string out = "table,kind,c,exponent,c_sign\n";
  for (const auto& e : r.preservers) {
    std::string table;
    for (std::size_t i = 0; i < e.table.values.size(); ++i) {
      if (i) table += ' ';
      table += std::to_string(e.table.values[i]);
    }
    json form = form_to_json(e.form);
    out += csv_quote(table) + "," + csv_cell(form["kind"]) + "," +
           (form.contains("c") ? form["c"].dump() : "") + "," +
           (form.contains("exponent") ? form["exponent"].dump() : "") + "," +
           (form.contains("c_sign") ? form["c_sign"].dump() : "") + "\n";
  }
  return out;
}

std::string report_to_csv(const SuiteReport& rep) {
  std::string out = "name,expected,observed,pass\n";
  for (const auto& c : rep.checks)
    out += csv_cell(json(c.name)) + "," + csv_cell(c.expected) + "," + csv_cell(c.observed) +
           "," + (c.pass ? "true" : "false") + "\n";
  return out;
}

struct FieldArgs {
  std::uint32_t p = 0, k = 1;
  std::uint32_t q = 0;  // alternative spelling

  FieldSpec make() const {
    if (q != 0) {
      auto [fp, fk] = factor_prime_power(q);
      return field_new(fp, fk);
    }
    if (p == 0) throw Error(Errc::BadInput, "specify --p/--k or --q");
    return field_new(p, k);
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"positivity preservers over finite fields"};
  app.require_subcommand(1);

  // field info
  auto* field_cmd = app.add_subcommand("field", "field inspection");
  field_cmd->require_subcommand(1);
  auto* info = field_cmd->add_subcommand("info", "construct a field and print it");
  FieldArgs info_args;
  std::string info_out;
  info->add_option("--p", info_args.p, "characteristic");
  info->add_option("--k", info_args.k, "extension degree");
  info->add_option("--q", info_args.q, "field order (alternative to --p/--k)");
  info->add_option("--out", info_out, "write JSON here instead of stdout");

  // matrix pd-check
  auto* matrix_cmd = app.add_subcommand("matrix", "matrix predicates");
  matrix_cmd->require_subcommand(1);
  auto* pd = matrix_cmd->add_subcommand("pd-check", "positive definiteness report");
  FieldArgs pd_args;
  std::string pd_matrix, pd_out;
  pd->add_option("--p", pd_args.p, "characteristic");
  pd->add_option("--k", pd_args.k, "extension degree");
  pd->add_option("--q", pd_args.q, "field order");
  pd->add_option("--matrix", pd_matrix, "matrix JSON {n, entries}")->required();
  pd->add_option("--out", pd_out, "write JSON here instead of stdout");

  // paley
  auto* paley_cmd = app.add_subcommand("paley", "Paley graph exports");
  FieldArgs paley_args;
  std::string paley_emit = "json", paley_out;
  bool paley_cliques = false;
  paley_cmd->add_option("--p", paley_args.p, "characteristic");
  paley_cmd->add_option("--k", paley_args.k, "extension degree");
  paley_cmd->add_option("--q", paley_args.q, "field order");
  paley_cmd->add_option("--emit", paley_emit, "json or dot")
      ->check(CLI::IsMember({"json", "dot"}));
  paley_cmd->add_flag("--cliques", paley_cliques, "include maximum cliques (square q <= 49)");
  paley_cmd->add_option("--out", paley_out, "write output here instead of stdout");

  // classify
  auto* classify_cmd = app.add_subcommand("classify", "enumerate preservers for (q, n)");
  FieldArgs cls_args;
  std::uint32_t cls_n = 2, cls_jobs = 1;
  std::string cls_mode = "preserver", cls_out;
  bool cls_no_prune = false;
  classify_cmd->add_option("--p", cls_args.p, "characteristic");
  classify_cmd->add_option("--k", cls_args.k, "extension degree");
  classify_cmd->add_option("--q", cls_args.q, "field order");
  classify_cmd->add_option("--n", cls_n, "matrix dimension (2 or 3)");
  classify_cmd->add_option("--mode", cls_mode, "preserver or sign")
      ->check(CLI::IsMember({"preserver", "sign"}));
  classify_cmd->add_flag("--no-prune", cls_no_prune, "exhaustive scan instead of the pruned DFS");
  classify_cmd->add_option("--jobs", cls_jobs, "worker threads for the search");
  std::string cls_emit = "json";
  classify_cmd->add_option("--emit", cls_emit, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  classify_cmd->add_option("--out", cls_out, "write JSON here instead of stdout");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  std::string suite_id, verify_out, golden_dir;
  FieldArgs verify_args;
  std::uint32_t verify_jobs = 1;
  bool list_suites = false;
  verify_cmd->add_option("--suite", suite_id, "suite id (see --list)");
  verify_cmd->add_flag("--list", list_suites, "list available suites");
  verify_cmd->add_option("--p", verify_args.p, "field override for parameterized suites");
  verify_cmd->add_option("--k", verify_args.k, "extension degree for the override");
  verify_cmd->add_option("--q", verify_args.q, "field order for the override");
  verify_cmd->add_option("--jobs", verify_jobs, "worker threads for classification suites");
  verify_cmd->add_option("--golden-dir", golden_dir, "directory with recorded evidence files");
  std::string verify_emit = "json";
  verify_cmd->add_option("--emit", verify_emit, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  verify_cmd->add_option("--out", verify_out, "write the report here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (info->parsed()) {
      auto f = info_args.make();
      emit(canonical_dump(field_to_json(f)), info_out);
      return 0;
    }

    if (pd->parsed()) {
      auto f = pd_args.make();
      auto A = matrix_from_json(f, json::parse(pd_matrix));
      auto minors = leading_minors(A);
      json signs = json::array();
      for (Elem m : minors) signs.push_back(sign_int(f.eta(m)));
      json payload{{"q", f.q()},
                   {"n", A.n()},
                   {"minors", minors},
                   {"minor_signs", signs},
                   {"positive_definite", is_positive_definite(A)}};
      auto L = cholesky(A);
      if (L) {
        json rows = json::array();
        for (std::uint32_t i = 0; i < A.n(); ++i) {
          json row = json::array();
          for (std::uint32_t j = 0; j < A.n(); ++j) row.push_back(L->at(i, j));
          rows.push_back(row);
        }
        payload["cholesky"] = rows;
      } else {
        payload["cholesky"] = nullptr;
      }
      emit(canonical_dump(payload), pd_out);
      return 0;
    }

    if (paley_cmd->parsed()) {
      auto f = paley_args.make();
      auto g = paley_graph(f);
      if (paley_emit == "dot") {
        emit(to_dot(g), paley_out);
        return 0;
      }
      json payload{{"q", f.q()}, {"directed", g.directed()}};
      if (!g.directed()) payload["srg"] = srg_to_json(srg_params(g));
      if (paley_cliques) {
        json cliques = json::array();
        for (const auto& c : max_cliques(g)) cliques.push_back(c);
        payload["max_cliques"] = cliques;
      }
      emit(canonical_dump(payload), paley_out);
      return 0;
    }

    if (classify_cmd->parsed()) {
      auto f = cls_args.make();
      ClassifyOptions options;
      options.prune = !cls_no_prune;
      options.jobs = cls_jobs;
      options.size_limit = size_limit_from_env(options.size_limit);
      auto r = classify(f, cls_n,
                        cls_mode == "sign" ? ClassifyMode::SignPreserver
                                           : ClassifyMode::Preserver,
                        options);
      emit(cls_emit == "csv" ? classification_to_csv(r)
                             : canonical_dump(classification_to_json(r)),
           cls_out);
      std::cerr << "elapsed_ms=" << r.elapsed_ms << "\n";
      return r.exhaustive ? 0 : 1;
    }

    if (verify_cmd->parsed()) {
      if (list_suites) {
        json rows = json::array();
        for (const auto& d : suite_registry())
          rows.push_back(json{{"id", d.id}, {"summary", d.summary}, {"criterion", d.criterion}});
        emit(canonical_dump(rows), verify_out);
        return 0;
      }
      if (suite_id.empty()) throw Error(Errc::BadInput, "missing --suite (or use --list)");
      SuiteOptions options;
      options.jobs = verify_jobs;
      options.golden_dir = golden_dir;
      if (verify_args.p != 0 || verify_args.q != 0) {
        auto f = verify_args.make();
        options.field = {{f.p(), f.k()}};
      }
      auto rep = run_suite(suite_id, options);
      emit(verify_emit == "csv" ? report_to_csv(rep) : canonical_dump(rep.to_json()),
           verify_out);
      std::cerr << "elapsed_ms=" << rep.elapsed_ms << "\n";
      return rep.pass() ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error [" << errc_name(e.code()) << "]: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const json::exception& e) {
    std::cerr << "error [BadInput]: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
