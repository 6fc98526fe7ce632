#pragma once

// Scenario files and the runner behind the command-line tool.
//
// Grammar (one statement per line, '#' starts a comment):
//
//   ball = "lp:4"
//   measure = arclen
//   seed = 7
//   track = [(0.3, 0.2), (1, 1)]
//   curves { fixed = "unitcircle", wheel = "homothet:fixed;1,0;0.5" }
//   motion {
//     fixed = fixed
//     moving = wheel
//     steps = 256
//   }
//
// Blocks: curves, motion, verify, tolerance, numerics, output. Entries in a
// block are separated by newlines or commas. Values are quoted strings, bare
// words, numbers, booleans or point lists.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mkin/vec2.hpp"

namespace mkin {

struct Scenario {
  std::string ball = "euclidean";
  std::string measure;  ///< empty: arclen when a check needs one
  std::uint64_t seed = 1;
  std::vector<std::pair<std::string, std::string>> curves;  ///< name, spec; in order
  std::vector<Vec2> track;

  struct Motion {
    bool present = false;
    std::string fixed, moving;  ///< curve names or inline specs
    int steps = 256;
    double s_max = 0.0;  ///< 0: the motion default

    bool operator==(const Motion&) const = default;
  } motion;

  struct Verify {
    bool statement1 = false, es1 = false, es2 = false, combined = false;
    bool brass = false, group_laws = false, inflection = false;
    int cusps = -1;  ///< expected cusp count of the first tracked point, -1 off

    bool operator==(const Verify&) const = default;
  } verify;

  struct Tolerance {
    double statement1 = 1e-4, es1 = 2e-2, es2 = 2e-2, combined = 5e-2;
    double inflection = 1e-8, laws = 1e-8;

    bool operator==(const Tolerance&) const = default;
  } tolerance;

  struct Numerics {
    double h = 1e-3;            ///< limit stencil step
    double trace_h = 1e-4;      ///< roulette difference step
    int fan = 64;               ///< inflection fan size
    double fan_radius = 0.5;    ///< combined-form fan radius about K
    int samples = 4096;         ///< ball samples

    bool operator==(const Numerics&) const = default;
  } numerics;

  struct Output {
    std::string roulette_csv, inflection_csv, svg, report, report_csv;

    bool operator==(const Output&) const = default;
  } output;

  bool operator==(const Scenario&) const = default;
};

/// Throws ParseError (codes ParseError, UnknownKey, UnresolvedName) with the
/// 1-based line and column of the offending token.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::string& path);
/// Canonical text; parse_scenario(print_scenario(s)) == s.
std::string print_scenario(const Scenario& s);

/// Built-in n-cusped hypocycloid on the given ball.
Scenario hypocycloid_scenario(int n, const std::string& ball = "euclidean");

struct ReportRow {
  std::string quantity;
  double lhs = 0.0, rhs = 0.0, residual = 0.0, h = 0.0, observed_order = 0.0;
};

struct CheckResult {
  CheckResult() = default;
  explicit CheckResult(std::string n) : name(std::move(n)) {}

  std::string name;
  bool pass = false;
  std::string error;  ///< module error that aborted the check
  double residual = 0.0;  ///< worst row
  double tolerance = 0.0;
  std::vector<double> orders;  ///< h-sweep orders
  std::vector<ReportRow> rows;
};

struct RunReport {
  std::vector<CheckResult> checks;
  std::vector<std::string> written;  ///< output files
  std::string notes;                 ///< K, L and similar facts
  int exit_status = 0;               ///< 0 iff every enabled check passes
};

enum class RunMode { roll, inflection, verify };

struct RunOptions {
  RunMode mode = RunMode::verify;
  std::string only;     ///< es1|es2|combined|statement1|laws|brass|inflection|cusps
  int threads = 0;      ///< 0: MKIN_THREADS or hardware concurrency
  std::string out_dir;  ///< prefix for relative output paths
};

RunReport run(const Scenario& s, const RunOptions& opt = {});

std::string report_text(const RunReport& r);
/// Columns quantity,lhs,rhs,residual,h,observed_order.
std::string report_csv(const RunReport& r);

}  // namespace mkin
