#include "hodgesig/report.hpp"

#include <json.hpp>

#include <sstream>
#include <stdexcept>

namespace hodgesig {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string verdict_word(bool pass) { return pass ? "pass" : "fail"; }

std::string weight_or_empty(const std::optional<Weight>& w) {
  return w ? weight_to_string(*w) : std::string();
}

/// The config keys a command actually consults, in echo order.
ordered_json config_echo(const RunConfig& c) {
  ordered_json j;
  j["command"] = command_name(c.command);
  switch (c.command) {
    case Command::verma_check:
      j["type"] = c.type;
      j["lambda"] = weight_or_empty(c.lambda);
      j["max_degree"] = c.max_degree;
      j["allow_nondominant"] = c.allow_nondominant;
      break;
    case Command::jantzen:
      j["type"] = c.type;
      j["lambda"] = weight_or_empty(c.lambda);
      j["max_degree"] = c.max_degree;
      j["direction"] = weight_or_empty(c.direction);
      break;
    case Command::sl2_check:
      j["model"] = c.model;
      if (c.model == "finite-dim")
        j["dim"] = c.dim;
      else if (c.model != "principal-series")
        j["mu0"] = c.mu0;
      j["max_degree"] = c.max_degree;
      break;
    case Command::signature_table:
      j["model"] = c.model;
      if (c.model == "verma") {
        j["type"] = c.type;
        j["lambda"] = weight_or_empty(c.lambda);
        j["allow_nondominant"] = c.allow_nondominant;
      } else {
        j["mu0"] = c.mu0;
      }
      j["max_degree"] = c.max_degree;
      break;
    case Command::hodge_lin:
      j["seed"] = c.seed;
      j["count"] = c.count;
      break;
  }
  j["output"] = format_name(c.output);
  return j;
}

ordered_json provenance_block(const Report& r) {
  ordered_json j;
  j["tool_version"] = kToolVersion;
  j["pbw_ordering"] = kPbwOrdering;
  j["psi_extension"] = kPsiExtension;
  for (const auto& [key, value] : r.provenance_extra) j[key] = value;
  return j;
}

std::string emit_json(const Report& r) {
  ordered_json j;
  j["config"] = config_echo(r.config);
  ordered_json results = ordered_json::array();
  for (const SignatureRow& row : r.table) {
    ordered_json e;
    e["degree"] = row.degree;
    e["weight"] = row.weight;
    e["n_plus"] = row.sig.n_plus;
    e["n_minus"] = row.sig.n_minus;
    e["n_zero"] = row.sig.n_zero;
    e["predicted_sign"] = row.predicted_sign;
    e["verdict"] = verdict_word(row.pass);
    results.push_back(std::move(e));
  }
  for (const ResultItem& item : r.items) {
    ordered_json e;
    e["check"] = item.name;
    e["verdict"] = verdict_word(item.pass);
    if (!item.detail.empty()) e["detail"] = item.detail;
    results.push_back(std::move(e));
  }
  j["results"] = std::move(results);
  j["provenance"] = provenance_block(r);
  return j.dump(2) + "\n";
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

std::string emit_csv(const Report& r) {
  if (r.config.command != Command::verma_check &&
      r.config.command != Command::signature_table)
    throw std::invalid_argument(
        std::string("csv output carries the signature table, which the ") +
        command_name(r.config.command) +
        " command does not produce; use json or text");
  std::string out = "degree,weight,n_plus,n_minus,n_zero,predicted_sign,verdict\n";
  for (const SignatureRow& row : r.table) {
    out += std::to_string(row.degree) + "," + csv_cell(row.weight) + "," +
           std::to_string(row.sig.n_plus) + "," +
           std::to_string(row.sig.n_minus) + "," +
           std::to_string(row.sig.n_zero) + "," + row.predicted_sign + "," +
           verdict_word(row.pass) + "\n";
  }
  return out;
}

std::string emit_text(const Report& r) {
  std::ostringstream out;
  const ordered_json echo = config_echo(r.config);
  for (const auto& [key, value] : echo.items()) {
    out << key << ": ";
    if (value.is_string())
      out << value.get<std::string>();
    else
      out << value.dump();
    out << "\n";
  }
  if (!r.table.empty()) {
    out << "degree  weight  n+  n-  n0  predicted  verdict\n";
    for (const SignatureRow& row : r.table)
      out << row.degree << "  " << row.weight << "  " << row.sig.n_plus
          << "  " << row.sig.n_minus << "  " << row.sig.n_zero << "  "
          << row.predicted_sign << "  " << verdict_word(row.pass) << "\n";
  }
  for (const ResultItem& item : r.items) {
    out << "[" << verdict_word(item.pass) << "] " << item.name;
    if (!item.detail.empty()) out << " (" << item.detail << ")";
    out << "\n";
  }
  out << "overall: " << verdict_word(r.all_pass()) << "\n";
  return out.str();
}

}  // namespace

const char* command_name(Command c) {
  switch (c) {
    case Command::verma_check: return "verma-check";
    case Command::jantzen: return "jantzen";
    case Command::sl2_check: return "sl2-check";
    case Command::hodge_lin: return "hodge-lin";
    case Command::signature_table: return "signature-table";
  }
  throw std::invalid_argument("unknown command");
}

const char* format_name(OutputFormat f) {
  switch (f) {
    case OutputFormat::json: return "json";
    case OutputFormat::csv: return "csv";
    case OutputFormat::text: return "text";
  }
  throw std::invalid_argument("unknown output format");
}

bool Report::all_pass() const {
  for (const SignatureRow& row : table)
    if (!row.pass) return false;
  for (const ResultItem& item : items)
    if (!item.pass) return false;
  return true;
}

std::string emit_report(const Report& r, OutputFormat format) {
  switch (format) {
    case OutputFormat::json: return emit_json(r);
    case OutputFormat::csv: return emit_csv(r);
    case OutputFormat::text: return emit_text(r);
  }
  throw std::invalid_argument("unsupported output format");
}

}  // namespace hodgesig
