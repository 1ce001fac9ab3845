#ifndef COPRI_REPORT_HPP
#define COPRI_REPORT_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "copri/analysis.hpp"

// Deterministic report rendering. JSON output is canonical: object keys are
// sorted, findings keep report order, and identical reports serialize to
// identical bytes. The text form mirrors the same finding list.
namespace copri::report {

using analysis::Report;

// `{"schema":"copri-report/1",...}`; "source" and "diagnostics" are present
// only when non-empty so in-memory reports stay minimal.
nlohmann::json to_json(const Report& report);

// Inverse of to_json. Throws std::runtime_error on anything that does not
// describe a report (unknown check id, bad kind, wrong shape).
Report report_from_json(const nlohmann::json& j);

// Pretty-printed (2-space) document followed by a newline. A single report
// renders as one object, several reports as an array.
std::string render_json(const Report& report);
std::string render_json(const std::vector<Report>& reports);

// One line per finding: `CQ1 DesignSmell: <message> [<elements>]`, then any
// warning diagnostics, then a `<n> violations, <m> query rows` footer.
std::string render_text(const Report& report);
std::string render_text(const std::vector<Report>& reports);

}  // namespace copri::report

#endif
