#pragma once
// Run configuration, structured results, and deterministic serialization for
// the command-line tool. A Report is assembled once per run and rendered to
// JSON (top-level keys config / results / provenance, stable key order), CSV
// (the signature table), or plain text. Serialization contains nothing
// time- or machine-dependent: identical configurations render to identical
// bytes.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hodgesig/rootsys.hpp"
#include "hodgesig/signatures.hpp"

namespace hodgesig {

inline constexpr const char* kToolVersion = "1.0.0";
/// PBW straightening order used by every module the tool builds.
inline constexpr const char* kPbwOrdering = "height-then-lex positive roots";
/// How the sign character is extended from the root lattice to all weights.
inline constexpr const char* kPsiExtension =
    "lexicographically minimal fundamental-weight turns";

enum class Command {
  verma_check,
  jantzen,
  sl2_check,
  hodge_lin,
  signature_table,
};

enum class OutputFormat { json, csv, text };

const char* command_name(Command c);
const char* format_name(OutputFormat f);

/// Everything a run depends on. Fields beyond `command` and `output` are
/// consulted only by the commands they configure; the echo in the report
/// prints exactly the consulted ones.
struct RunConfig {
  Command command = Command::verma_check;
  OutputFormat output = OutputFormat::json;

  std::string type;              // root system name, e.g. "A1"
  std::optional<Weight> lambda;  // fundamental-weight coordinates
  int max_degree = 6;
  std::optional<Weight> direction;  // deformation direction; default rho
  bool allow_nondominant = false;

  std::string model;  // sl2-check / signature-table source model
  int mu0 = 2;        // lowest K-weight for the rank-one models
  int dim = 3;        // size of the finite-dimensional model

  std::uint64_t seed = 1;  // randomized property suites
  int count = 20;          // instances per randomized suite
};

/// One row of the signature table: the pairing restricted to a graded piece
/// of one weight space, against the sign the alternation rule predicts.
struct SignatureRow {
  int degree = 0;
  std::string weight;
  SignatureTriple sig;
  std::string predicted_sign;  // "+1" or "-1"
  bool pass = true;
};

/// One named verdict (a theorem identity, a property-suite outcome, ...).
struct ResultItem {
  std::string name;
  bool pass = true;
  std::string detail;  // witness or counts; empty when nothing to add
};

struct Report {
  RunConfig config;
  std::vector<SignatureRow> table;
  std::vector<ResultItem> items;
  /// Extra provenance pairs recorded by the run (e.g. which root-of-unity
  /// extension the sign dictionary used), appended after the fixed keys.
  std::vector<std::pair<std::string, std::string>> provenance_extra;

  bool all_pass() const;
};

/// Render the report in the requested format. CSV carries only the signature
/// table and throws std::invalid_argument for commands that have none.
std::string emit_report(const Report& r, OutputFormat format);

}  // namespace hodgesig
