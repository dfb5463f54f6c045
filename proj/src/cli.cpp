#include "hodgesig/cli.hpp"

#include <CLI11.hpp>

#include <cctype>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hodgesig/chevalley.hpp"
#include "hodgesig/filtrations.hpp"
#include "hodgesig/hermforms.hpp"
#include "hodgesig/hodgelin.hpp"
#include "hodgesig/report.hpp"
#include "hodgesig/rootsys.hpp"
#include "hodgesig/signatures.hpp"
#include "hodgesig/verma.hpp"

namespace hodgesig {

namespace {

std::string coords_label(const std::vector<int>& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

std::string rats_csv(const std::vector<Rat>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += rat_to_string(v[i]);
  }
  return s;
}

Weight parse_weight_arg(const std::string& text, const RootSystem& rs,
                        const std::string& flag) {
  Weight w = weight_from_string(text);  // malformed entries throw here
  if (w.rank() != rs.rank())
    throw std::invalid_argument(flag + " has " + std::to_string(w.rank()) +
                                " entries but " + rs.name() + " has rank " +
                                std::to_string(rs.rank()));
  return w;
}

/// Rows for every graded piece between the lowest step and lowest + n.
/// alternating: predict (-1)^(p-c); otherwise predict +1 everywhere.
void fill_table(Report& rep, const FilteredModule<Rat>& f, int n,
                bool alternating) {
  const int c = f.offset;
  for (int p = c; p <= c + n; ++p) {
    const int expected = alternating && (p - c) % 2 != 0 ? -1 : 1;
    for (const GradedBlockSignature& b : graded_signature_blocks(f, p)) {
      SignatureRow row;
      row.degree = p;
      row.weight = f.view.block_names[b.block];
      row.sig = b.sig;
      row.predicted_sign = expected > 0 ? "+1" : "-1";
      row.pass = b.sig.n_zero == 0 &&
                 (expected > 0 ? b.sig.n_minus == 0 : b.sig.n_plus == 0);
      rep.table.push_back(std::move(row));
    }
  }
}

/// Shared head of the Verma commands: root system, parameter gates, module.
struct VermaSetup {
  RootSystem rs;
  Weight lambda;
};

VermaSetup verma_setup(const RunConfig& cfg, bool require_dominant) {
  RootSystem rs = RootSystem::from_name(cfg.type);
  Weight lambda = parse_weight_arg(weight_to_string(*cfg.lambda), rs, "--lambda");
  if (require_dominant && !rs.is_dominant(lambda) && !cfg.allow_nondominant)
    throw std::domain_error(
        "lambda = " + weight_to_string(lambda) + " is not dominant for " +
        rs.name() +
        "; the sign prediction applies to dominant parameters (pass "
        "--allow-nondominant to run it as a negative control)");
  return {std::move(rs), std::move(lambda)};
}

Report run_verma_check(RunConfig cfg) {
  VermaSetup setup = verma_setup(cfg, /*require_dominant=*/true);
  ChevalleyBasis cb(setup.rs);
  VermaModule<Rat> m(cb, setup.lambda, cfg.max_degree);
  FilteredModule<Rat> f =
      hodge_filtration(m, setup.rs.num_positive_roots());

  Report rep;
  rep.config = std::move(cfg);
  fill_table(rep, f, rep.config.max_degree, /*alternating=*/true);

  SignatureReport<Rat> sig = check_sign_alternation(
      f, rep.config.max_degree, rep.config.allow_nondominant);
  ResultItem alternation{"sign_alternation", sig.all_pass(), ""};
  if (!sig.violations.empty())
    alternation.detail = "first violation at degree " +
                         std::to_string(sig.violations[0].p) + ", weight " +
                         sig.violations[0].weight;
  rep.items.push_back(std::move(alternation));
  rep.items.push_back({"good_filtration", good_filtration_check(f), ""});
  return rep;
}

Report run_jantzen(RunConfig cfg) {
  VermaSetup setup = verma_setup(cfg, /*require_dominant=*/false);
  Weight direction =
      cfg.direction
          ? parse_weight_arg(weight_to_string(*cfg.direction), setup.rs,
                             "--direction")
          : setup.rs.rho();
  cfg.direction = direction;  // echo the resolved default

  ChevalleyBasis cb(setup.rs);
  VermaModule<Rat> m(cb, setup.lambda, cfg.max_degree);
  FilteredModule<Rat> jf = jantzen_filtration(m, direction);

  Report rep;
  rep.config = std::move(cfg);
  for (const JantzenBlock& b : jf.jantzen) {
    int level_sum = 0;
    std::string dims;
    for (const Matrix<Rat>& level : b.levels) {
      level_sum += level.rows;
      dims += (dims.empty() ? "" : "+") + std::to_string(level.rows);
    }
    if (b.levels.empty()) dims = "0";
    rep.items.push_back(
        {"weight " + coords_label(b.nu), level_sum == b.det_order,
         "determinant t-order " + std::to_string(b.det_order) +
             ", level dimensions " + dims});
  }
  return rep;
}

SL2HCModule build_sl2_model(const RunConfig& cfg) {
  if (cfg.model == "discrete-series")
    return discrete_series(cfg.mu0, cfg.max_degree);
  if (cfg.model == "lowest-weight")
    return lowest_weight_model(cfg.mu0, cfg.max_degree);
  if (cfg.model == "principal-series")
    return spherical_principal_series(cfg.max_degree);
  if (cfg.model == "finite-dim") return finite_dim_model(cfg.dim);
  throw std::invalid_argument("unknown rank-one model: " + cfg.model);
}

void add_psi_provenance(Report& rep, const SL2HCModule& m) {
  RootSystem a1('A', 1);
  RealFormSpec spec(a1, std::vector<bool>{!m.compact_form});
  rep.provenance_extra.emplace_back("psi_extension_turns",
                                    rats_csv(spec.extension_turns()));
}

Report run_sl2_check(RunConfig cfg) {
  SL2HCModule m = build_sl2_model(cfg);

  Report rep;
  rep.config = std::move(cfg);

  FormRelationResult fr = check_gr_ur_relation(m);
  rep.items.push_back({"gr_ur_sign_dictionary", fr.ok,
                       fr.ok ? ""
                             : "first failing K-weight " +
                                   std::to_string(fr.witness_weight)});

  TVpmReport tv = check_t_and_vpm(m);
  auto tv_item = [&](const char* name, bool pass) {
    rep.items.push_back({name, pass, pass ? "" : tv.witness});
  };
  tv_item("t_squared_one", tv.t_squared_one);
  tv_item("theta_equivariance", tv.theta_equivariant);
  tv_item("vpm_no_common_ktype", tv.vpm_no_common_ktype);
  tv_item("p_swaps_vpm", tv.p_swaps_vpm);
  tv_item("ktype_sorted_by_psi", tv.ktype_sorted_by_psi);

  rep.items.push_back(
      {"good_hodge_filtration", good_filtration_check(hodge_filtration(m)), ""});
  add_psi_provenance(rep, m);
  return rep;
}

Report run_hodge_lin(RunConfig cfg) {
  struct Suite {
    const char* name;
    bool pass = true;
    std::uint64_t first_failure = 0;
    void record(bool ok, std::uint64_t seed) {
      if (!ok && pass) {
        pass = false;
        first_failure = seed;
      }
    }
  };
  Suite polarization{"polarization_axioms"};
  Suite roundtrip{"conjugate_filtration_roundtrip"};
  Suite valid{"split_mixed_validation"};
  Suite strict{"graded_morphism_strictness"};

  for (int i = 0; i < cfg.count; ++i) {
    const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(i);

    PolarizedInstance inst = seeded_polarized_structure(seed);
    polarization.record(is_polarization(inst.structure, inst.pairing), seed);
    auto [f, fbar] = filtrations_from_hodge(inst.structure);
    Filtration reconstructed = conjugate_filtration_from_polarization(
        f, inst.pairing, inst.structure.weight);
    roundtrip.record(filtration_equal(reconstructed, fbar), seed);

    SplitInstance split = seeded_split_mhs(seed);
    valid.record(validate_mhs(split.mhs), seed);
    bool all_strict =
        check_strictness(split.graded_endomorphism, split.mhs, split.mhs)
            .all_strict();
    for (const SplitSummand& summand : split.summands)
      all_strict = all_strict &&
                   check_strictness(summand.projection, split.mhs, summand.mhs)
                       .all_strict() &&
                   check_strictness(summand.inclusion, summand.mhs, split.mhs)
                       .all_strict();
    strict.record(all_strict, seed);
  }

  Report rep;
  rep.config = cfg;
  for (const Suite& s : {polarization, roundtrip, valid, strict}) {
    std::string detail = std::to_string(cfg.count) + " seeded instances";
    if (!s.pass) detail += ", first failure at seed " + std::to_string(s.first_failure);
    rep.items.push_back({s.name, s.pass, detail});
  }
  return rep;
}

Report run_signature_table(RunConfig cfg) {
  Report rep;
  if (cfg.model == "verma") {
    if (cfg.type.empty() || !cfg.lambda)
      throw std::invalid_argument(
          "signature-table with the verma model requires --type and --lambda");
    VermaSetup setup = verma_setup(cfg, /*require_dominant=*/true);
    ChevalleyBasis cb(setup.rs);
    VermaModule<Rat> m(cb, setup.lambda, cfg.max_degree);
    FilteredModule<Rat> f =
        hodge_filtration(m, setup.rs.num_positive_roots());
    rep.config = std::move(cfg);
    fill_table(rep, f, rep.config.max_degree, /*alternating=*/true);
  } else {
    // the invariant form of the real group, the one unitarity speaks about,
    // tabulated per K-type; for a discrete series it is definite
    SL2HCModule m = discrete_series(cfg.mu0, cfg.max_degree);
    FilteredModule<Rat> f =
        degree_filtration(make_view(m, /*use_gr_form=*/true), m.hodge_offset);
    rep.config = std::move(cfg);
    fill_table(rep, f, rep.config.max_degree, /*alternating=*/false);
    add_psi_provenance(rep, m);
  }
  return rep;
}

Report run_command(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::verma_check: return run_verma_check(cfg);
    case Command::jantzen: return run_jantzen(cfg);
    case Command::sl2_check: return run_sl2_check(cfg);
    case Command::hodge_lin: return run_hodge_lin(cfg);
    case Command::signature_table: return run_signature_table(cfg);
  }
  throw std::invalid_argument("unknown command");
}

bool command_emits_table(Command c) {
  return c == Command::verma_check || c == Command::signature_table;
}

/// Join "--lambda -1,1" into "--lambda=-1,1" so negative leading entries are
/// never mistaken for option names.
std::vector<std::string> glue_weight_values(std::vector<std::string> args) {
  std::vector<std::string> out;
  for (size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    const bool weight_flag = a == "--lambda" || a == "--direction";
    if (weight_flag && i + 1 < args.size() && args[i + 1].size() > 1 &&
        args[i + 1][0] == '-' &&
        (std::isdigit(static_cast<unsigned char>(args[i + 1][1])) != 0)) {
      out.push_back(a + "=" + args[i + 1]);
      ++i;
    } else {
      out.push_back(a);
    }
  }
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"exact signature, filtration, and invariant-form checks for "
               "lowest-weight modules"};
  app.name("hodgesig");
  app.require_subcommand(1);

  RunConfig cfg;
  std::string lambda_str, direction_str;
  std::string output_str = "json";
  std::string sl2_model = "discrete-series";
  std::string table_model = "verma";
  const auto output_check =
      CLI::IsMember({"json", "csv", "text"}, CLI::ignore_case);

  CLI::App* verma = app.add_subcommand(
      "verma-check",
      "check the predicted alternating signs on the degree filtration of a "
      "truncated lowest-weight module");
  verma->add_option("--type", cfg.type, "root system, e.g. A1, A2, B2")
      ->required();
  verma->add_option("--lambda", lambda_str,
                    "parameter in fundamental-weight coordinates, e.g. 1/2 or "
                    "1,3/2")
      ->required();
  verma->add_option("--max-degree", cfg.max_degree, "truncation degree")
      ->check(CLI::NonNegativeNumber);
  verma->add_flag("--allow-nondominant", cfg.allow_nondominant,
                  "run a non-dominant parameter as a negative control");
  verma->add_option("--output", output_str, "json, csv, or text")
      ->check(output_check);

  CLI::App* jantzen = app.add_subcommand(
      "jantzen",
      "deformation filtration of a truncated lowest-weight module: "
      "per-weight determinant orders and level dimensions");
  jantzen->add_option("--type", cfg.type, "root system, e.g. A1")->required();
  jantzen->add_option("--lambda", lambda_str, "parameter, e.g. 1 or 0,1")
      ->required();
  jantzen->add_option("--max-degree", cfg.max_degree, "truncation degree")
      ->check(CLI::NonNegativeNumber);
  jantzen->add_option("--direction", direction_str,
                      "deformation direction (default: half sum of positive "
                      "roots)");
  jantzen->add_option("--output", output_str, "json or text")
      ->check(output_check);

  CLI::App* sl2 = app.add_subcommand(
      "sl2-check",
      "rank-one model checks: the sign dictionary between the two invariant "
      "forms and the intertwining-operator identities");
  sl2->add_option("--model", sl2_model,
                  "discrete-series, lowest-weight, principal-series, or "
                  "finite-dim")
      ->check(CLI::IsMember({"discrete-series", "lowest-weight",
                             "principal-series", "finite-dim"}));
  sl2->add_option("--mu0", cfg.mu0, "lowest K-weight (discrete-series, "
                  "lowest-weight)");
  sl2->add_option("--dim", cfg.dim, "dimension of the finite-dim model")
      ->check(CLI::PositiveNumber);
  sl2->add_option("--max-degree", cfg.max_degree,
                  "number of raising steps in the window")
      ->check(CLI::NonNegativeNumber);
  sl2->add_option("--output", output_str, "json or text")->check(output_check);

  CLI::App* hodge = app.add_subcommand(
      "hodge-lin",
      "seeded property suites for polarized and mixed filtration linear "
      "algebra");
  hodge->add_option("--seed", cfg.seed, "seed of the first instance");
  hodge->add_option("--count", cfg.count, "instances per suite")
      ->check(CLI::PositiveNumber);
  hodge->add_option("--output", output_str, "json or text")
      ->check(output_check);

  CLI::App* table = app.add_subcommand(
      "signature-table",
      "tabulate graded signatures of the invariant form, one row per degree "
      "and weight");
  table->add_option("--model", table_model, "verma or discrete-series")
      ->check(CLI::IsMember({"verma", "discrete-series"}));
  table->add_option("--type", cfg.type, "root system (verma model)");
  table->add_option("--lambda", lambda_str, "parameter (verma model)");
  table->add_option("--mu0", cfg.mu0, "lowest K-weight (discrete-series "
                    "model)");
  table->add_option("--max-degree", cfg.max_degree, "truncation degree")
      ->check(CLI::NonNegativeNumber);
  table->add_flag("--allow-nondominant", cfg.allow_nondominant,
                  "run a non-dominant parameter as a negative control");
  table->add_option("--output", output_str, "json, csv, or text")
      ->check(output_check);

  std::vector<std::string> glued = glue_weight_values(args);
  std::vector<const char*> argv;
  argv.push_back("hodgesig");
  for (const std::string& s : glued) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  if (verma->parsed()) cfg.command = Command::verma_check;
  if (jantzen->parsed()) cfg.command = Command::jantzen;
  if (sl2->parsed()) {
    cfg.command = Command::sl2_check;
    cfg.model = sl2_model;
  }
  if (hodge->parsed()) cfg.command = Command::hodge_lin;
  if (table->parsed()) {
    cfg.command = Command::signature_table;
    cfg.model = table_model;
  }

  try {
    if (output_str == "json") cfg.output = OutputFormat::json;
    else if (output_str == "csv") cfg.output = OutputFormat::csv;
    else cfg.output = OutputFormat::text;
    if (cfg.output == OutputFormat::csv && !command_emits_table(cfg.command))
      throw std::invalid_argument(
          std::string("csv output carries the signature table, which the ") +
          command_name(cfg.command) + " command does not produce; use json "
          "or text");
    if (!lambda_str.empty()) cfg.lambda = weight_from_string(lambda_str);
    if (!direction_str.empty()) cfg.direction = weight_from_string(direction_str);

    Report rep = run_command(cfg);
    out << emit_report(rep, cfg.output);
    return rep.all_pass() ? 0 : 1;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace hodgesig
