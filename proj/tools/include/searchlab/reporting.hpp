#pragma once

// File-emitting layer behind the command-line tool.  Every command builds a
// Table (columns, numeric rows, summary footers, metadata) which the CSV and
// JSON writers serialize with shortest round-trip number formatting, so a
// parsed file reproduces the computed doubles bit for bit.  Outputs are
// deterministic; the only wall-clock field is the JSON "generated" stamp,
// suppressed under reproducible mode.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace searchlab::reporting {

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

enum class Command { trajectory, gap, schedule, equivalence, synth, fullspace, norms, compare };
enum class Algorithm { grover, fg, rc, rc_ground, fenner, walk_follower };
enum class Format { csv, json };
enum class Pairing { automatic, uniform, schedule, iterate };

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;
inline constexpr int kExitIo = 3;

struct RunConfig {
  Command command = Command::trajectory;
  std::int64_t n = 64;
  std::int64_t marked = 1;
  double eps = 1.0;
  std::optional<double> gamma;              // defaults to the critical 1/N
  Algorithm algorithm = Algorithm::fg;
  std::optional<Algorithm> algorithm_b;     // compare only
  std::int64_t samples = 0;                 // 0 = per-command default
  double s = 0.5;                           // norms / fullspace elevation
  std::vector<std::int64_t> sizes;          // norms; default {1e2, 1e3, 1e4, 1e5}
  Pairing pairing = Pairing::automatic;     // compare only
  Format format = Format::csv;
  std::string output = "-";                 // "-" writes to stdout
  bool reproducible = false;
};

struct Table {
  std::string kind;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, double>> summary;        // numeric footers
  std::vector<std::pair<std::string, std::string>> metadata;  // JSON metadata block
};

// Shortest decimal string that parses back to exactly v.
std::string format_double(double v);

const char* to_string(Command c);
const char* to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& name);  // UsageError on junk

// Computes the table for a validated config.  Throws UsageError for
// inconsistent configs, and lets numerical errors from the core propagate.
Table build_table(const RunConfig& config);

void write_csv(const Table& table, std::ostream& out);
void write_json(const Table& table, std::ostream& out, bool reproducible);

// build_table + serialization to config.output.  Returns kExitOk or throws
// (UsageError / IoError / core numerical errors); main maps throws to codes.
int run(const RunConfig& config);

}  // namespace searchlab::reporting
