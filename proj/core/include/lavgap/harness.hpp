#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lavgap/energy.hpp"
#include "lavgap/hypotheses.hpp"
#include "lavgap/problems.hpp"
#include "lavgap/reparam.hpp"

namespace lavgap {

// Process exit codes shared by the library entry points and the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFalsified = 2; // a hypothesis the claim needs failed
inline constexpr int kExitNumeric = 3;   // quadrature / inversion breakdown
inline constexpr int kExitConfig = 4;    // malformed or inconsistent config

struct RunConfig {
    std::string problem;                  // registered example name
    std::map<std::string, double> params; // forwarded to the registry
    Anchor anchor = Anchor::initial;
    NuSchedule schedule;
    PlanTuning tuning;
    double p = 1.0;         // exponent for the derivative-distance column
    double quad_tol = 1e-10;
    int quad_max_depth = 200;
    std::uint64_t seed = 0; // probe seed for the hypothesis checkers
    std::string report_path;
    std::optional<std::string> samples_path;
};

// Parse a JSON run description. Unknown keys anywhere are rejected; missing
// optional fields pick up the defaults above. Throws config_error.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

// Canonical one-line JSON form: fixed key order, defaults made explicit,
// 17 significant digits. parse(emit(c)) reproduces c exactly.
std::string emit_config(const RunConfig& config);

struct CheckOutcome {
    HypothesisReport report;
    bool required = false; // the active claim needs this hypothesis
};

struct HarnessResult {
    RunConfig config; // normalized (defaults filled in)
    std::vector<CheckOutcome> checks;
    ConvergenceReport study;
    bool ran_study = false;
    int exit_code = kExitOk;
};

// Names of the hypotheses the anchoring mode's conclusion relies on.
std::vector<HypothesisName> required_hypotheses(Anchor anchor, const Lagrangian& lag);

// All hypothesis checkers, in a fixed order, each marked required or
// informational for the configured anchor.
std::vector<CheckOutcome> run_checks(const ProblemSpec& spec, const RunConfig& config);

// The convergence study alone (no hypothesis checks).
ConvergenceReport run_study(const ProblemSpec& spec, const RunConfig& config);

// Checks, then the study (still run when a required check fails, so the
// numbers witness the failure). No I/O.
HarnessResult evaluate(const RunConfig& config);

// Render result and write it to report_path (and samples_path when set).
// format: "csv" or "jsonl"; empty picks by report_path extension
// (".jsonl" -> jsonl, anything else -> csv).
void write_reports(const HarnessResult& result, const std::string& format = "");

// evaluate + write_reports.
HarnessResult run(const RunConfig& config);

// Report renderers, exposed so tests can pin the byte-level format.
std::string render_report_csv(const HarnessResult& result);
std::string render_report_jsonl(const HarnessResult& result);
std::string render_samples_csv(const HarnessResult& result, int grid = 512);

// 17-significant-digit formatting used by every emitter ("inf", "-inf",
// "nan" for non-finite values); byte-stable across runs.
std::string format_value(double x);

} // namespace lavgap
