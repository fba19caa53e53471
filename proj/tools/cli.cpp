#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chowzero/cache.hpp"
#include "chowzero/engine.hpp"
#include "chowzero/json_io.hpp"
#include "chowzero/normalize.hpp"
#include "chowzero/relations.hpp"
#include "chowzero/series.hpp"
#include "chowzero/strata.hpp"

namespace chowzero::cli {
namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// "A..B" or a single value "A".
std::vector<int> parse_range(const std::string& text, const char* what) {
  auto fail = [&] { throw UsageError(std::string("bad ") + what + " range '" + text + "'"); };
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      fail();
    }
    if (used != s.size() || v < 0) fail();
    return v;
  };
  const auto dots = text.find("..");
  const int lo = number(dots == std::string::npos ? text : text.substr(0, dots));
  const int hi = dots == std::string::npos ? lo : number(text.substr(dots + 2));
  if (hi < lo) fail();
  std::vector<int> out;
  for (int v = lo; v <= hi; ++v) out.push_back(v);
  return out;
}

LocusPredicate parse_locus(const std::string& name) {
  try {
    return LocusPredicate::parse(name);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct Globals {
  std::string cache_dir;
  int jobs = 1;
  double max_seconds = 0;
  std::size_t max_generators = 0;
  bool exact_only = false;
};

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Chow groups of moduli of genus-0 prestable curves"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals globals;
  if (const char* env = std::getenv("CHOW_CACHE_DIR")) globals.cache_dir = env;
  app.add_option("--cache", globals.cache_dir, "Result cache directory (default: $CHOW_CACHE_DIR)");
  app.add_option("--jobs", globals.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--max-seconds", globals.max_seconds, "Per-cell time budget (0 = none)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--max-generators", globals.max_generators,
                 "Skip cells with more generators (0 = none)");
  app.add_flag("--exact-only", globals.exact_only, "Only report exactly eliminated ranks");

  int n = 0;
  int d = 0;
  std::string locus_name = "all";
  std::string format;

  auto* rank_cmd = app.add_subcommand("rank", "Dimension of one Chow group");
  rank_cmd->add_option("--n", n, "Number of markings")->required()->check(CLI::NonNegativeNumber);
  rank_cmd->add_option("--d", d, "Degree")->required()->check(CLI::NonNegativeNumber);
  rank_cmd->add_option("--locus", locus_name, "Locus name");
  rank_cmd->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  std::string n_range;
  std::string d_range;
  auto* table_cmd = app.add_subcommand("table", "Grid of dimensions (rows d, columns n)");
  table_cmd->add_option("--n", n_range, "Range A..B")->required();
  table_cmd->add_option("--d", d_range, "Range A..B")->required();
  table_cmd->add_option("--locus", locus_name, "Locus name");
  table_cmd->add_option("--format", format, "tsv or json")->check(CLI::IsMember({"tsv", "json"}));

  int dmax = 0;
  std::string compare;
  auto* hilbert_cmd = app.add_subcommand("hilbert", "Hilbert series coefficients of a locus");
  hilbert_cmd->add_option("--n", n, "Number of markings")->required()->check(CLI::NonNegativeNumber);
  hilbert_cmd->add_option("--locus", locus_name, "Locus name")->required();
  hilbert_cmd->add_option("--dmax", dmax, "Largest degree")->required()->check(CLI::NonNegativeNumber);
  hilbert_cmd->add_option("--compare", compare, "Rational function in t to compare against");
  hilbert_cmd->add_option("--format", format, "tsv or json")->check(CLI::IsMember({"tsv", "json"}));

  auto* basis_cmd = app.add_subcommand("basis", "List normal-form generators as JSON lines");
  basis_cmd->add_option("--n", n, "Number of markings")->required()->check(CLI::NonNegativeNumber);
  basis_cmd->add_option("--d", d, "Degree")->required()->check(CLI::NonNegativeNumber);
  basis_cmd->add_option("--locus", locus_name, "Locus name");

  std::string dump_path;
  auto* relations_cmd = app.add_subcommand("relations", "WDVV relations as JSON lines");
  relations_cmd->add_option("--n", n, "Number of markings")->required()->check(CLI::NonNegativeNumber);
  relations_cmd->add_option("--d", d, "Degree")->required()->check(CLI::PositiveNumber);
  relations_cmd->add_option("--locus", locus_name, "Locus name");
  relations_cmd->add_option("--dump", dump_path,
                            "Write the projected matrix as triplets to PATH and keys to PATH.keys");

  std::string input_path;
  auto* normalize_cmd = app.add_subcommand("normalize", "Express a decorated stratum in normal form");
  normalize_cmd->add_option("--input", input_path, "Stratum or monomial JSON file")->required();

  int max_edges = 0;
  auto* verify_cmd = app.add_subcommand("verify-locus", "Check closure of a locus under contraction");
  verify_cmd->add_option("--locus", locus_name, "Locus name")->required();
  verify_cmd->add_option("--n", n, "Number of markings")->required()->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--max-edges", max_edges, "Largest edge count checked")
      ->required()
      ->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  std::unique_ptr<ResultCache> cache;
  RunOptions run;
  run.jobs = globals.jobs;
  run.exact_only = globals.exact_only;
  run.limits.max_seconds = globals.max_seconds;
  run.limits.max_generators = globals.max_generators;
  if (!globals.cache_dir.empty()) {
    cache = std::make_unique<ResultCache>(
        globals.cache_dir, [&err](const std::string& msg) { err << "warning: " << msg << '\n'; });
    run.cache = cache.get();
  }

  try {
    if (*rank_cmd) {
      auto table = rank_table({n}, {d}, parse_locus(locus_name), run);
      const auto& cell = table.cells.front();
      if (!cell) {
        err << "budget exhausted for n=" << n << " d=" << d << '\n';
        return kBudgetExhausted;
      }
      if (format == "json") {
        out << result_to_json(*cell) << '\n';
      } else {
        out << cell->dimension << '\n';
      }
      return kOk;
    }
    if (*table_cmd) {
      auto table = rank_table(parse_range(n_range, "n"), parse_range(d_range, "d"),
                              parse_locus(locus_name), run);
      out << (format == "json" ? to_json(table) : to_tsv(table));
      if (table.budget_exhausted()) {
        err << "budget exhausted; skipped cells are left blank\n";
        return kBudgetExhausted;
      }
      return kOk;
    }
    if (*hilbert_cmd) {
      std::optional<std::vector<Rational>> expected;
      if (!compare.empty()) {
        try {
          expected = expand_rational(parse_rational_function(compare), dmax);
        } catch (const std::exception& e) {
          throw UsageError("cannot use --compare: " + std::string(e.what()));
        }
      }
      auto table = hilbert_coeffs(n, parse_locus(locus_name), dmax, run);
      if (format == "json") {
        out << to_json(table);
      } else {
        out << to_tsv(table);
      }
      int code = table.budget_exhausted() ? kBudgetExhausted : kOk;
      if (expected) {
        std::optional<int> first_bad;
        for (int k = 0; k <= dmax; ++k) {
          const auto& cell = table.coefficients[k];
          if (cell && Rational(static_cast<unsigned long>(cell->dimension)) != (*expected)[k]) {
            first_bad = k;
            break;
          }
        }
        if (first_bad) {
          const int k = *first_bad;
          err << "compare: mismatch at d=" << k << ": expected "
              << to_fraction_string((*expected)[k]) << ", computed "
              << table.coefficients[k]->dimension << '\n';
          if (code == kOk) code = kCompareMismatch;
        } else {
          err << "compare: match" << (table.budget_exhausted() ? " on computed degrees" : "")
              << '\n';
        }
      }
      if (table.budget_exhausted()) err << "budget exhausted; skipped degrees are left blank\n";
      return code;
    }
    if (*basis_cmd) {
      for (const auto& s : enumerate_basis(n, d, parse_locus(locus_name))) {
        out << stratum_to_json(s) << '\n';
      }
      return kOk;
    }
    if (*relations_cmd) {
      const auto locus = parse_locus(locus_name);
      if (!dump_path.empty()) {
        auto system = relation_system({n, d, locus}, run.limits);
        std::ofstream matrix(dump_path);
        std::ofstream keys(dump_path + ".keys");
        if (!matrix || !keys) throw UsageError("cannot write '" + dump_path + "'");
        write_triplets(matrix, system.matrix);
        write_column_keys(keys, system.matrix);
        out << system.matrix.rows() << '\t' << system.matrix.cols() << '\t' << system.matrix.nnz()
            << '\n';
        return kOk;
      }
      for (const auto& rel : wdvv_relations(n, d, locus)) out << relation_to_json(rel) << '\n';
      return kOk;
    }
    if (*normalize_cmd) {
      auto terms = monomials_from_json(read_file(input_path));
      const int target = terms.front().degree();
      out << strata_vector_to_json(normalize(terms, terms.front().graph.n(), target)) << '\n';
      return kOk;
    }
    if (*verify_cmd) {
      out << (verify_locus(parse_locus(locus_name), n, max_edges) ? "true" : "false") << '\n';
      return kOk;
    }
  } catch (const BudgetExceeded& e) {
    err << "budget exhausted: " << e.what() << '\n';
    return kBudgetExhausted;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return kUsageError;
}

}  // namespace chowzero::cli
