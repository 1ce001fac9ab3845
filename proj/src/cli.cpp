#include "copri/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "copri/parser.hpp"
#include "copri/report.hpp"
#include "copri/wellformedness.hpp"

namespace copri::cli {

using analysis::Report;
using analysis::RunConfig;

Report analyze_file(const std::string& path, const RunConfig& config) {
    Report report;
    report.source = path;

    std::ifstream in(path, std::ios::binary);
    if (!in) {
        report.diagnostics.push_back(Diagnostic{SourceSpan{path, 0, 0, 1}, Severity::Error,
                                                "FileNotFound", "cannot open file"});
        return report;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();

    cml::ParseResult parsed = cml::parse_model(buffer.str(), path);
    report.diagnostics = parsed.diagnostics;
    if (!parsed.ok()) return report;

    report.model_name = parsed.graph->name();
    std::vector<Diagnostic> wf = copri::wf::check_all(*parsed.graph);
    report.diagnostics.insert(report.diagnostics.end(), wf.begin(), wf.end());
    sort_diagnostics(report.diagnostics);
    if (has_errors(report.diagnostics)) return report;

    report.findings = analysis::run_all(*parsed.graph, config).findings;
    return report;
}

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Privacy requirements model analyzer"};
    app.name("copri");
    app.set_version_flag("--version", "copri 0.1.0");
    app.require_subcommand(1);

    CLI::App* check = app.add_subcommand(
        "check", "Parse models, verify wellformedness, and run the competency checks");

    std::vector<std::string> files;
    std::string format = "text";
    std::string checks_text;
    std::string severity_text;
    std::string probability_text;
    std::string fail_on = "violation";
    bool parts_inherit = false;
    bool list_checks = false;

    check->add_option("files", files, "Model files to analyze");
    check->add_option("--format", format, "Report format (text|json)")
        ->check(CLI::IsMember({"text", "json"}));
    check->add_option("--checks", checks_text,
                      "Checks to run: ids and ranges, e.g. CQ1,CQ16-CQ26 (default: all)");
    check->add_option("--severity", severity_text, "Impact severity filter for CQ8")
        ->check(CLI::IsMember({"L", "M", "H"}));
    check->add_option("--probability", probability_text, "Probability filter for CQ13")
        ->check(CLI::IsMember({"L", "M", "H"}));
    check->add_option("--fail-on", fail_on, "What sets exit code 1 (violation|warning|never)")
        ->check(CLI::IsMember({"violation", "warning", "never"}));
    check->add_flag("--parts-inherit-permissions", parts_inherit,
                    "A permission over a whole also covers its parts");
    check->add_flag("--list-checks", list_checks, "List the available checks and exit");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    if (list_checks) {
        for (analysis::CheckId id : analysis::all_checks()) {
            out << analysis::to_string(id) << "\t" << analysis::describe_check(id) << "\n";
        }
        return 0;
    }
    if (files.empty()) {
        err << "copri: error: no input files\n";
        return 2;
    }

    RunConfig config;
    config.options.parts_inherit_permissions = parts_inherit;
    if (!checks_text.empty()) {
        std::string error;
        std::optional<std::vector<analysis::CheckId>> selected =
            analysis::parse_check_set(checks_text, error);
        if (!selected) {
            err << "copri: error: " << error << "\n";
            return 2;
        }
        config.checks = std::move(*selected);
    }
    if (!severity_text.empty()) config.severity = risk_from_letter(severity_text[0]);
    if (!probability_text.empty()) config.probability = risk_from_letter(probability_text[0]);

    std::vector<Report> reports;
    reports.reserve(files.size());
    int exit_code = 0;
    for (const std::string& path : files) {
        Report report = analyze_file(path, config);
        int code = 0;
        if (report.error_count() > 0) {
            code = 2;
        } else if (fail_on == "violation") {
            code = report.violation_count() > 0 ? 1 : 0;
        } else if (fail_on == "warning") {
            code = report.violation_count() > 0 || report.warning_count() > 0 ? 1 : 0;
        }
        exit_code = std::max(exit_code, code);
        for (const Diagnostic& d : report.diagnostics) err << format_diagnostic(d) << "\n";
        reports.push_back(std::move(report));
    }

    out << (format == "json" ? report::render_json(reports) : report::render_text(reports));
    return exit_code;
}

}  // namespace copri::cli
