#include <iostream>
#include <string>
#include <vector>

#ifdef ORDINAL_SYSTEM_CLI11
#include <CLI/CLI.hpp>
#else
#include "CLI11.hpp"
#endif
#include "ordinal/cli.hpp"

namespace {

struct Options {
  std::size_t levels = 1;
  std::string order = "omega";
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  std::size_t max_nodes = ordinal::kDefaultMaxNodes;
};

void add_structure_flags(CLI::App& cmd, Options& opts) {
  cmd.add_option("--levels", opts.levels, "derivative level K above w^x");
  cmd.add_option("--order", opts.order, "input order X: a size n or 'omega'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ordinal term structures: normal forms, comparison, bounds, and embeddings"};
  app.require_subcommand(1);
  Options opts;
  std::vector<std::string> args;

  auto* normalize = app.add_subcommand("normalize", "print the normal form of an expression");
  normalize->add_option("expr", args)->required()->expected(1);
  add_structure_flags(*normalize, opts);

  auto* compare = app.add_subcommand("compare", "compare two expressions");
  compare->add_option("exprs", args)->required()->expected(2);
  add_structure_flags(*compare, opts);

  auto* fbound = app.add_subcommand("fbound", "evaluate the bound function F(beta, alpha)");
  fbound->add_option("args", args, "<beta> <alpha>")->required()->expected(2);
  add_structure_flags(*fbound, opts);

  auto* fundseq = app.add_subcommand("fundseq", "fundamental sequence of g'(index) up to n");
  fundseq->add_option("args", args, "<index> <n>")->required()->expected(2);
  add_structure_flags(*fundseq, opts);

  auto* embed = app.add_subcommand("embed", "extract and verify an embedding for a relation file");
  embed->add_option("file", args)->required()->expected(1);
  embed->add_option("--max-nodes", opts.max_nodes, "largest accepted relation");

  auto* check = app.add_subcommand("check", "run the property suites");
  add_structure_flags(*check, opts);
  check->add_option("--samples", opts.samples, "samples per suite");
  check->add_option("--seed", opts.seed, "random seed");
  check->add_option("--max-nodes", opts.max_nodes, "largest random relation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int status = app.exit(e);
    return status == 0 ? 0 : ordinal::exit_code::parse;
  }

  ordinal::Command cmd;
  if (*normalize) cmd.verb = ordinal::Verb::normalize;
  if (*compare) cmd.verb = ordinal::Verb::compare;
  if (*fbound) cmd.verb = ordinal::Verb::fbound;
  if (*fundseq) cmd.verb = ordinal::Verb::fundseq;
  if (*embed) cmd.verb = ordinal::Verb::embed;
  if (*check) cmd.verb = ordinal::Verb::check;
  cmd.args = args;
  cmd.levels = opts.levels;
  cmd.samples = opts.samples;
  cmd.seed = opts.seed;
  cmd.max_nodes = opts.max_nodes;
  try {
    cmd.order = ordinal::parse_order(opts.order);
  } catch (const ordinal::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return ordinal::exit_code::parse;
  }
  return ordinal::run(cmd, std::cout, std::cerr);
}
