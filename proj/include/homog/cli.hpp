#pragma once

// Experiment runner behind the `homog` executable: configuration, sweeps,
// and CSV / JSON emission.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "homog/recurrence.hpp"
#include "homog/tolerances.hpp"

namespace homog::cli {

enum class Command { surface, exact, compare, entropy, resources, lifetime, classify, selftest };
enum class EngineChoice { approx, exact, both };
enum class Format { csv, json };

std::string_view command_name(Command c);

/// Inclusive integer range written "a..b" (or a single "a").
struct IntRange {
  int lo = 1;
  int hi = 1;
  bool operator==(const IntRange&) const = default;
};
IntRange parse_range(std::string_view text);
std::string format_range(const IntRange& r);

struct RunConfig {
  Command command = Command::surface;
  std::vector<TaskDirection> directions{TaskDirection::pure_to_mixed, TaskDirection::mixed_to_pure};
  std::vector<double> etas;
  std::optional<IntRange> N;
  std::optional<IntRange> n;
  std::optional<int> k;             ///< diagonal length (compare: 3, classify: 60 when unset)
  std::optional<double> epsilon_star;
  std::optional<int> n_cap;         ///< lifetime search limit
  EngineChoice engine = EngineChoice::approx;
  std::string output;               ///< empty: stdout
  Format format = Format::csv;
  Caps caps;
  int jobs = 1;

  /// Throws ArgumentError for malformed values or missing required ones and
  /// ResourceError when a request exceeds the caps.
  void validate() const;
  /// Stable text form of everything that affects the rows (not output or jobs).
  std::string canonical() const;
  /// FNV-1a 64 over canonical().
  std::uint64_t hash() const;
};

using Cell = std::variant<std::monostate, long long, double, std::string>;

/// Sort key matching the row order (direction, eta, N, n); `engine` breaks ties.
struct RowKey {
  int direction = 0;
  double eta = 0.0;
  int N = 0;
  int n = 0;
  int engine = 0;
  auto operator<=>(const RowKey&) const = default;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::pair<RowKey, std::vector<Cell>>> rows;
};

/// Runs the sweep described by `config` (not selftest) and returns the sorted
/// table. `jobs` worker threads; the result does not depend on it.
Table evaluate(const RunConfig& config);

/// Metadata lines: version, command, canonical config, hash, tolerances, kernel.
std::vector<std::pair<std::string, std::string>> metadata(const RunConfig& config);

void write_csv(const Table& table, const RunConfig& config, std::ostream& out);
/// Array of row objects keyed by column; missing cells are null and
/// non-finite reals are the strings "inf" / "-inf" / "nan".
void write_json(const Table& table, std::ostream& out);
void write_json_metadata(const RunConfig& config, std::ostream& out);

/// Real formatting used in CSV cells: %.17g.
std::string format_real(double x);

/// Executes a validated config, writing to config.output or `out`. Returns
/// the process exit code; errors propagate as exceptions.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full command line entry point; maps errors to exit codes 2 / 3 / 4.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace homog::cli
