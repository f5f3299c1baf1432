#include <array>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "searchlab/reporting.hpp"
#include "searchlab/subspace.hpp"
#include "searchlab/version.hpp"

namespace {

using namespace searchlab;
using namespace searchlab::reporting;

// Per-subcommand option bag; strings are converted to enums after parsing so
// CLI11 can report membership errors itself.
struct Options {
  RunConfig config;
  std::string algorithm = "fg";
  std::string algorithm_b;
  std::string format = "csv";
  std::string pairing = "auto";
};

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("-N,--size", opt.config.n, "search space size")
      ->capture_default_str()
      ->check(CLI::Range(std::int64_t{2}, std::int64_t{100000000000}));
  cmd->add_option("-w,--marked", opt.config.marked, "marked item (1-based)")
      ->capture_default_str();
  cmd->add_option("--eps", opt.config.eps, "schedule accuracy parameter")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--gamma", opt.config.gamma,
                  "walk jump rate (default: the critical rate 1/N)");
  cmd->add_option("-m,--samples", opt.config.samples,
                  "number of output rows (0 = command default)")
      ->capture_default_str();
  cmd->add_option("-f,--format", opt.format, "output format")
      ->capture_default_str()
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("-o,--output", opt.config.output, "output path ('-' = stdout)")
      ->capture_default_str();
  cmd->add_flag("--reproducible", opt.config.reproducible,
                "omit timestamps so identical runs emit identical bytes");
}

void add_algorithm(CLI::App* cmd, Options& opt, std::vector<std::string> allowed,
                   const std::string& fallback) {
  opt.algorithm = fallback;
  cmd->add_option("-a,--algorithm", opt.algorithm, "evolution family")
      ->capture_default_str()
      ->check(CLI::IsMember(std::move(allowed)));
}

RunConfig finalize(const Options& opt, Command command) {
  RunConfig c = opt.config;
  c.command = command;
  c.algorithm = algorithm_from_string(opt.algorithm);
  if (!opt.algorithm_b.empty()) c.algorithm_b = algorithm_from_string(opt.algorithm_b);
  c.format = (opt.format == "json") ? Format::json : Format::csv;
  if (opt.pairing == "uniform") {
    c.pairing = Pairing::uniform;
  } else if (opt.pairing == "schedule") {
    c.pairing = Pairing::schedule;
  } else if (opt.pairing == "iterate") {
    c.pairing = Pairing::iterate;
  } else {
    c.pairing = Pairing::automatic;
  }
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"searchlab: closed-form search evolutions and their cross-checks"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  const std::vector<std::string> all_algorithms{"grover",    "fg",     "rc",
                                                "rc-ground", "fenner", "walk-follower"};

  constexpr std::size_t kNumCommands = 8;
  std::array<Options, kNumCommands> opts;
  Command command = Command::trajectory;
  std::size_t selected = 0;

  const auto sub = [&](Command id, const char* name, const char* help) {
    CLI::App* cmd = app.add_subcommand(name, help);
    Options& opt = opts[static_cast<std::size_t>(id)];
    add_common(cmd, opt);
    cmd->callback([&, id] {
      command = id;
      selected = static_cast<std::size_t>(id);
    });
    return cmd;
  };

  CLI::App* trajectory =
      sub(Command::trajectory, "trajectory", "time-ordered states of one evolution");
  add_algorithm(trajectory, opts[0], all_algorithms, "fg");

  CLI::App* gap = sub(Command::gap, "gap", "spectral gap across the interpolation");
  add_algorithm(gap, opts[1], {"rc", "walk-follower"}, "rc");

  CLI::App* schedule = sub(Command::schedule, "schedule", "time reparametrization s(t)");
  add_algorithm(schedule, opts[2], {"rc", "walk-follower"}, "rc");

  sub(Command::equivalence, "equivalence",
      "chiral walk against the scheduled ground state, unnormalized");

  sub(Command::synth, "synth", "three-term interpolation synthesized from the walk path");

  CLI::App* fullspace =
      sub(Command::fullspace, "fullspace", "matrix-free operators reduced to the 2D block");
  add_algorithm(fullspace, opts[5], {"fg", "fenner", "rc"}, "rc");

  CLI::App* norms = sub(Command::norms, "norms", "operator norm against size, log-log");
  add_algorithm(norms, opts[6], {"walk-follower", "rc", "fenner", "fg"}, "walk-follower");
  norms->add_option("--sizes", opts[6].config.sizes, "sizes to probe")->delimiter(',');
  norms->add_option("--s", opts[6].config.s, "interpolation point")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));

  CLI::App* compare = sub(Command::compare, "compare", "two evolutions side by side");
  add_algorithm(compare, opts[7], all_algorithms, "fg");
  compare->add_option("-b,--against", opts[7].algorithm_b, "second evolution family")
      ->required()
      ->check(CLI::IsMember(all_algorithms));
  compare->add_option("--pairing", opts[7].pairing, "how samples of the two runs line up")
      ->capture_default_str()
      ->check(CLI::IsMember({"auto", "uniform", "schedule", "iterate"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    return run(finalize(opts[selected], command));
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const NormDriftError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const NonConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
