// spectral-pair: command-line front end.
//
//   spectral-pair spectral     [-i pair.json]     [-o spectral.json]
//   spectral-pair reconstruct  [-i spectral.json] [-o pair.json]
//   spectral-pair act          (--word S,I,T | --matrix a,b,c,d) [--side spectral|matrix] [-i] [-o]
//   spectral-pair verify       [--seeds N] [--first-seed K] [--tolerance X]
//   spectral-pair random-pair  --seed K [-o pair.json]
//   spectral-pair decompose    --matrix a,b,c,d
//
// Exit codes: 0 ok, 1 I/O, 2 schema/usage, 3 general position,
// 4 determinant not +-1, 5 verification failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using spair::cli::kIoError;

struct Streams {
  std::unique_ptr<std::ifstream> in_file;
  std::unique_ptr<std::ofstream> out_file;
  std::istream* in = &std::cin;
  std::ostream* out = &std::cout;
};

// Opens -i / -o ("-" means stdin / stdout). Returns false after reporting.
bool open_streams(const std::string& input, const std::string& output, Streams& s, bool needs_input) {
  if (needs_input && input != "-") {
    s.in_file = std::make_unique<std::ifstream>(input);
    if (!*s.in_file) {
      spair::cli::write_error(std::cerr, "io", "cannot open input file " + input, kIoError);
      return false;
    }
    s.in = s.in_file.get();
  }
  if (output != "-") {
    s.out_file = std::make_unique<std::ofstream>(output);
    if (!*s.out_file) {
      spair::cli::write_error(std::cerr, "io", "cannot open output file " + output, kIoError);
      return false;
    }
    s.out = s.out_file.get();
  }
  return true;
}

double default_tolerance() {
  if (const char* env = std::getenv("SPECTRAL_PAIR_TOLERANCE")) {
    try {
      return std::stod(env);
    } catch (const std::exception&) {
      std::cerr << "ignoring unparsable SPECTRAL_PAIR_TOLERANCE=" << env << '\n';
    }
  }
  return spair::kDefaultVerificationTolerance;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral data of pairs of 3x3 matrices and the GL(2,Z) action"};
  app.require_subcommand(1);

  std::string input = "-", output = "-";
  auto add_io = [&](CLI::App* sub, bool with_input) {
    if (with_input) sub->add_option("-i,--input", input, "input document ('-' for stdin)");
    sub->add_option("-o,--output", output, "output document ('-' for stdout)");
  };

  auto* spectral = app.add_subcommand("spectral", "pair document -> spectral document");
  add_io(spectral, true);

  auto* reconstruct = app.add_subcommand("reconstruct", "spectral document -> normalized pair document");
  add_io(reconstruct, true);

  spair::cli::ActOptions act_opt;
  std::string word, matrix;
  auto* act = app.add_subcommand("act", "apply a GL(2,Z) element");
  add_io(act, true);
  auto* word_opt = act->add_option("--word", word, "comma-separated letters S (swap), I (invert), T (shear)");
  auto* matrix_opt = act->add_option("--matrix", matrix, "a,b,c,d for [[a,b],[c,d]]");
  word_opt->excludes(matrix_opt);
  act->add_option("--side", act_opt.side, "spectral | matrix")->check(CLI::IsMember({"spectral", "matrix"}));

  spair::cli::VerifyOptions verify_opt;
  verify_opt.tolerance = default_tolerance();
  auto* verify = app.add_subcommand("verify", "batch property verification over seeded random pairs");
  verify->add_option("--seeds", verify_opt.seeds, "number of seeds")->check(CLI::PositiveNumber);
  verify->add_option("--first-seed", verify_opt.first_seed, "first seed");
  verify->add_option("--tolerance", verify_opt.tolerance, "pass threshold for every residual");
  add_io(verify, false);

  std::uint64_t seed = 0;
  auto* random = app.add_subcommand("random-pair", "deterministic general-position pair");
  random->add_option("--seed", seed, "seed")->required();
  add_io(random, false);

  auto* decompose = app.add_subcommand("decompose", "GL(2,Z) matrix -> generator word");
  decompose->add_option("--matrix", matrix, "a,b,c,d for [[a,b],[c,d]]")->required();
  add_io(decompose, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : spair::cli::kSchemaError;
  }

  Streams s;
  const bool needs_input = spectral->parsed() || reconstruct->parsed() || act->parsed();
  if (!open_streams(input, output, s, needs_input)) return kIoError;

  if (spectral->parsed()) return spair::cli::cmd_spectral(*s.in, *s.out, std::cerr);
  if (reconstruct->parsed()) return spair::cli::cmd_reconstruct(*s.in, *s.out, std::cerr);
  if (act->parsed()) {
    if (*word_opt) act_opt.word = word;
    if (*matrix_opt) act_opt.matrix = matrix;
    return spair::cli::cmd_act(*s.in, *s.out, std::cerr, act_opt);
  }
  if (verify->parsed()) return spair::cli::cmd_verify(verify_opt, *s.out, std::cerr);
  if (random->parsed()) return spair::cli::cmd_random_pair(seed, *s.out, std::cerr);
  if (decompose->parsed()) return spair::cli::cmd_decompose(matrix, *s.out, std::cerr);
  return spair::cli::kSchemaError;
}
