#include "copri/report.hpp"

#include <sstream>
#include <stdexcept>

namespace copri::report {

using analysis::Finding;
using nlohmann::json;

namespace {

json diagnostic_to_json(const Diagnostic& d) {
    return json{
        {"code", d.code},
        {"column", d.span.column},
        {"file", d.span.file},
        {"length", d.span.length},
        {"line", d.span.line},
        {"message", d.message},
        {"severity", to_string(d.severity)},
    };
}

Diagnostic diagnostic_from_json(const json& j) {
    Diagnostic d;
    d.span.file = j.at("file").get<std::string>();
    d.span.line = j.at("line").get<int>();
    d.span.column = j.at("column").get<int>();
    d.span.length = j.at("length").get<int>();
    d.code = j.at("code").get<std::string>();
    d.message = j.at("message").get<std::string>();
    std::string severity = j.at("severity").get<std::string>();
    if (severity == "error") {
        d.severity = Severity::Error;
    } else if (severity == "warning") {
        d.severity = Severity::Warning;
    } else {
        throw std::runtime_error("unknown severity '" + severity + "'");
    }
    return d;
}

json finding_to_json(const Finding& f) {
    return json{
        {"check", analysis::to_string(f.check)},
        {"elements", f.elements},
        {"kind", analysis::to_string(f.kind)},
        {"message", f.message},
    };
}

Finding finding_from_json(const json& j) {
    Finding f;
    std::string check = j.at("check").get<std::string>();
    std::optional<analysis::CheckId> id = analysis::parse_check_id(check);
    if (!id) throw std::runtime_error("unknown check id '" + check + "'");
    f.check = *id;
    std::string kind = j.at("kind").get<std::string>();
    std::optional<analysis::FindingKind> k = analysis::parse_finding_kind(kind);
    if (!k) throw std::runtime_error("unknown finding kind '" + kind + "'");
    f.kind = *k;
    f.elements = j.at("elements").get<std::vector<std::string>>();
    f.message = j.at("message").get<std::string>();
    return f;
}

}  // namespace

json to_json(const Report& report) {
    json j;
    j["schema"] = "copri-report/1";
    j["model"] = report.model_name;
    if (!report.source.empty()) j["source"] = report.source;
    j["counts"] = json{
        {"errors", report.error_count()},
        {"query_rows", report.query_row_count()},
        {"violations", report.violation_count()},
        {"warnings", report.warning_count()},
    };
    if (!report.diagnostics.empty()) {
        json diags = json::array();
        for (const Diagnostic& d : report.diagnostics) diags.push_back(diagnostic_to_json(d));
        j["diagnostics"] = std::move(diags);
    }
    json findings = json::array();
    for (const Finding& f : report.findings) findings.push_back(finding_to_json(f));
    j["findings"] = std::move(findings);
    return j;
}

Report report_from_json(const json& j) {
    try {
        if (!j.is_object()) throw std::runtime_error("report must be a JSON object");
        if (j.at("schema").get<std::string>() != "copri-report/1") {
            throw std::runtime_error("unsupported report schema");
        }
        Report report;
        report.model_name = j.at("model").get<std::string>();
        if (j.contains("source")) report.source = j.at("source").get<std::string>();
        if (j.contains("diagnostics")) {
            for (const json& d : j.at("diagnostics")) {
                report.diagnostics.push_back(diagnostic_from_json(d));
            }
        }
        for (const json& f : j.at("findings")) report.findings.push_back(finding_from_json(f));
        return report;
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("malformed report: ") + e.what());
    }
}

std::string render_json(const Report& report) {
    return to_json(report).dump(2) + "\n";
}

std::string render_json(const std::vector<Report>& reports) {
    if (reports.size() == 1) return render_json(reports.front());
    json arr = json::array();
    for (const Report& r : reports) arr.push_back(to_json(r));
    return arr.dump(2) + "\n";
}

std::string render_text(const Report& report) {
    std::ostringstream os;
    for (const Finding& f : report.findings) {
        os << analysis::to_string(f.check) << ' ' << analysis::to_string(f.kind) << ": "
           << f.message << " [";
        for (size_t i = 0; i < f.elements.size(); ++i) {
            if (i) os << ", ";
            os << f.elements[i];
        }
        os << "]\n";
    }
    for (const Diagnostic& d : report.diagnostics) {
        if (d.severity == Severity::Warning) os << format_diagnostic(d) << '\n';
    }
    os << report.violation_count() << " violations, " << report.query_row_count()
       << " query rows\n";
    return os.str();
}

std::string render_text(const std::vector<Report>& reports) {
    if (reports.size() == 1) return render_text(reports.front());
    std::ostringstream os;
    bool first = true;
    for (const Report& r : reports) {
        if (!first) os << '\n';
        first = false;
        os << "# " << (r.source.empty() ? r.model_name : r.source) << '\n';
        os << render_text(r);
    }
    return os.str();
}

}  // namespace copri::report
