#include "crystorb/io/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

struct Flags {
  std::string input;
  std::string format = "text";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> bound;
  std::optional<unsigned> precision;
};

const char* summary(const std::string& cmd) {
  if (cmd == "verify") return "check that the generators form a crystallographic group";
  if (cmd == "realize") return "averaged affine realization and translation conjugacy";
  if (cmd == "even") return "isotypic decomposition and the evenness test";
  if (cmd == "jstruct") return "construct a G-invariant complex structure";
  if (cmd == "action") return "fixed loci, pseudoreflections and branch data";
  if (cmd == "teich") return "Hodge types and Teichmueller component dimensions";
  return "Platonic triple check and coset enumeration";
}

}  // namespace

int main(int argc, char** argv) {
  using namespace crystorb::io;
  CLI::App app{"crystorb: crystallographic groups acting on complex tori"};
  app.require_subcommand(1);
  Flags flags;
  std::string chosen;
  for (const auto& name : command_names()) {
    auto* sub = app.add_subcommand(name, summary(name));
    sub->add_option("--input", flags.input, "input document (JSON)")->required();
    sub->add_option("--format", flags.format, "report format")
        ->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--seed", flags.seed, "seed for randomized constructions (default 0)");
    sub->add_option("--bound", flags.bound, "group order or coset bound")
        ->check(CLI::PositiveNumber);
    sub->add_option("--precision", flags.precision, "working precision in bits")
        ->check(CLI::IsMember({128, 256}));
    sub->callback([&chosen, name] { chosen = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_validation;
  }

  JobSpec job;
  job.command = chosen;
  job.format = flags.format == "json" ? Format::json : Format::text;
  job.seed = flags.seed;
  job.bound = flags.bound;
  job.precision = flags.precision;
  try {
    job.input = load_input(flags.input);
  } catch (const std::exception& e) {
    const auto [kind, code] = classify_error(e);
    std::cerr << "crystorb " << chosen << ": " << flags.input << ": " << kind << ": " << e.what()
              << "\n";
    return code;
  }
  return run_command(job, std::cout, std::cerr);
}
