// Command-line front end: run a configured study, run the hypothesis
// checkers alone, or list the registered example problems.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "lavgap/errors.hpp"
#include "lavgap/harness.hpp"

namespace {

void print_checks(const std::vector<lavgap::CheckOutcome>& checks) {
    for (const lavgap::CheckOutcome& outcome : checks) {
        std::printf("%-22s %-12s %s\n", lavgap::to_string(outcome.report.name).c_str(),
                    lavgap::to_string(outcome.report.verdict).c_str(),
                    outcome.required ? "required" : "info");
        if (!outcome.report.detail.empty())
            std::printf("%-22s   %s\n", "", outcome.report.detail.c_str());
    }
}

bool any_required_falsified(const std::vector<lavgap::CheckOutcome>& checks) {
    for (const lavgap::CheckOutcome& outcome : checks)
        if (outcome.required && outcome.report.verdict == lavgap::Verdict::falsified) return true;
    return false;
}

int run_command(const std::string& config_path, const std::string& out_path,
                const std::string& format) {
    lavgap::RunConfig config = lavgap::load_config(config_path);
    if (!out_path.empty()) config.report_path = out_path;

    lavgap::HarnessResult result = lavgap::evaluate(config);
    lavgap::write_reports(result, format);

    print_checks(result.checks);
    std::printf("base_energy %s\n", lavgap::format_value(result.study.base_energy).c_str());
    for (const lavgap::StudyRow& row : result.study.rows)
        std::printf("nu %-12s F %-22s gap %-22s %s\n", lavgap::format_value(row.nu).c_str(),
                    row.feasible ? lavgap::format_value(row.energy).c_str() : "-",
                    row.feasible ? lavgap::format_value(row.gap).c_str() : "-",
                    row.status.c_str());
    std::printf("report written to %s\n", config.report_path.c_str());
    if (config.samples_path)
        std::printf("samples written to %s\n", config.samples_path->c_str());
    return result.exit_code;
}

int check_command(const std::string& config_path) {
    lavgap::RunConfig config = lavgap::load_config(config_path);
    lavgap::ProblemSpec spec = lavgap::get_example(config.problem, config.params);
    std::vector<lavgap::CheckOutcome> checks = lavgap::run_checks(spec, config);
    print_checks(checks);
    return any_required_falsified(checks) ? lavgap::kExitFalsified : lavgap::kExitOk;
}

int list_command() {
    for (const auto& [name, summary] : lavgap::list_examples())
        std::printf("%-10s %s\n", name.c_str(), summary.c_str());
    return lavgap::kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lipschitz reparametrization laboratory"};
    app.require_subcommand(1);

    std::string run_config, run_out, run_format, check_config;

    CLI::App* run_cmd =
        app.add_subcommand("run", "hypothesis checks + convergence study, written to a report");
    run_cmd->add_option("--config", run_config, "JSON run description")->required();
    run_cmd->add_option("--out", run_out, "override outputs.report_path");
    run_cmd->add_option("--format", run_format, "report format")
        ->check(CLI::IsMember({"csv", "jsonl"}));

    CLI::App* check_cmd = app.add_subcommand("check", "hypothesis checkers only");
    check_cmd->add_option("--config", check_config, "JSON run description")->required();

    CLI::App* list_cmd = app.add_subcommand("list-examples", "registered example problems");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : lavgap::kExitConfig; // 0: --help / --version
    }

    try {
        if (run_cmd->parsed()) return run_command(run_config, run_out, run_format);
        if (check_cmd->parsed()) return check_command(check_config);
        if (list_cmd->parsed()) return list_command();
    } catch (const lavgap::config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return lavgap::kExitConfig;
    } catch (const lavgap::numeric_error& e) {
        std::fprintf(stderr, "numeric error: %s\n", e.what());
        return lavgap::kExitNumeric;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return lavgap::kExitOk;
}
