#pragma once

// Command dispatch behind the `ordinal` tool. Parsing of argv lives in the
// tool itself; everything here is testable in-process.
//
// Exit statuses:
//   0  success
//   1  evaluation error (unsupported bound or exponent, invalid index, ...)
//   2  parse error (expression or relation file syntax, malformed term)
//   3  relation not well-founded
//   4  instance too large
//   5  property violation
//   6  file not found or unreadable

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ordinal/bounds.hpp"
#include "ordinal/embedding.hpp"
#include "ordinal/error.hpp"
#include "ordinal/harness.hpp"
#include "ordinal/order.hpp"
#include "ordinal/report.hpp"
#include "ordinal/term.hpp"
#include "ordinal/text.hpp"

namespace ordinal {

enum class Verb { normalize, compare, fbound, fundseq, embed, check };

namespace exit_code {
constexpr int ok = 0;
constexpr int evaluation = 1;
constexpr int parse = 2;
constexpr int not_well_founded = 3;
constexpr int too_large = 4;
constexpr int violation = 5;
constexpr int io = 6;
}  // namespace exit_code

struct Command {
  Verb verb = Verb::normalize;
  std::size_t levels = 1;
  LinearOrder order = LinearOrder::omega();
  /// Verb arguments: expressions, indices, or a relation file path.
  std::vector<std::string> args;
  std::uint64_t seed = 1;
  std::size_t samples = 1000;
  std::size_t max_nodes = kDefaultMaxNodes;

  StructureDescriptor structure() const { return {levels, order}; }
};

inline int exit_status(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::syntax:
    case ErrorKind::malformed_term:
      return exit_code::parse;
    case ErrorKind::not_well_founded:
      return exit_code::not_well_founded;
    case ErrorKind::instance_too_large:
      return exit_code::too_large;
    case ErrorKind::io:
      return exit_code::io;
    default:
      return exit_code::evaluation;
  }
}

/// "omega" or a natural number.
inline LinearOrder parse_order(const std::string& text) {
  if (text == "omega") return LinearOrder::omega();
  try {
    std::size_t used = 0;
    unsigned long long size = std::stoull(text, &used);
    if (used == text.size() && text.front() != '-') return LinearOrder::finite(size);
  } catch (const std::logic_error&) {
  }
  throw Error(ErrorKind::syntax, "order must be a natural number or 'omega', got '" + text + "'");
}

namespace detail {

inline std::size_t parse_index(const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    unsigned long long v = std::stoull(text, &used);
    if (used == text.size() && text.front() != '-') return static_cast<std::size_t>(v);
  } catch (const std::logic_error&) {
  }
  throw Error(ErrorKind::syntax, std::string(what) + " must be a natural number, got '" + text + "'");
}

inline void require_args(const Command& cmd, std::size_t count, const char* usage) {
  if (cmd.args.size() != count) throw Error(ErrorKind::syntax, std::string("usage: ") + usage);
}

inline FiniteRelation load_relation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open '" + path + "'");
  return read_relation(in);
}

inline int run_check(const Command& cmd, std::ostream& out) {
  const StructureDescriptor sd = cmd.structure();
  std::vector<Report> suites;
  suites.push_back(check_indiscernibility(sd, cmd.samples, cmd.seed));
  suites.push_back(check_dilation(sd, cmd.samples, cmd.seed + 1));
  suites.push_back(check_structure_axioms(sd, cmd.samples, cmd.seed + 2));
  if (sd.levels > 0) {
    suites.push_back(check_bound_properties(BoundContext(sd), std::max<std::size_t>(1, cmd.samples / 10),
                                            cmd.seed + 3));
  }
  suites.push_back(check_random_embeddings(std::max<std::size_t>(1, cmd.samples / 10), cmd.seed + 4,
                                           std::min<std::size_t>(8, cmd.max_nodes)));
  std::size_t total = 0;
  for (const auto& report : suites) {
    write_report(out, report);
    total += report.violations.size();
  }
  out << "violations: " << total << '\n';
  return total == 0 ? exit_code::ok : exit_code::violation;
}

}  // namespace detail

/// Executes one command, writing its report to `out` and diagnostics to `err`.
inline int run(const Command& cmd, std::ostream& out, std::ostream& err) {
  try {
    const StructureDescriptor sd = cmd.structure();
    switch (cmd.verb) {
      case Verb::normalize: {
        detail::require_args(cmd, 1, "normalize <expr>");
        out << render(parse_expr(cmd.args[0], sd)) << '\n';
        return exit_code::ok;
      }
      case Verb::compare: {
        detail::require_args(cmd, 2, "compare <expr> <expr>");
        const Term a = parse_expr(cmd.args[0], sd), b = parse_expr(cmd.args[1], sd);
        out << to_string(compare(a, b, sd)) << '\n';
        return exit_code::ok;
      }
      case Verb::fbound: {
        detail::require_args(cmd, 2, "fbound <beta> <alpha>");
        const BoundContext ctx(sd);
        const Term beta = parse_expr(cmd.args[0], sd), alpha = parse_expr(cmd.args[1], sd);
        out << render(f_bound(beta, alpha, ctx)) << '\n';
        return exit_code::ok;
      }
      case Verb::fundseq: {
        detail::require_args(cmd, 2, "fundseq <index> <n>");
        const BoundContext ctx(sd);
        const std::size_t c = detail::parse_index(cmd.args[0], "index");
        const std::size_t n = detail::parse_index(cmd.args[1], "n");
        for (std::size_t i = 0; i <= n; ++i) out << i << ' ' << render(fund_seq_gprime(c, i, ctx)) << '\n';
        return exit_code::ok;
      }
      case Verb::embed: {
        detail::require_args(cmd, 1, "embed <relation-file>");
        const FiniteRelation rel = detail::load_relation(cmd.args[0]);
        const EmbeddingReport report = verify_embedding(rel, takeuti_embed(rel, cmd.max_nodes));
        write_embedding(out, report);
        return report.violations() == 0 ? exit_code::ok : exit_code::violation;
      }
      case Verb::check: {
        detail::require_args(cmd, 0, "check");
        return detail::run_check(cmd, out);
      }
    }
    return exit_code::evaluation;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_status(e.kind());
  }
}

}  // namespace ordinal
