#include "copri/diagnostics.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace copri {

const char* to_string(Severity s) {
    return s == Severity::Error ? "error" : "warning";
}

bool diagnostic_less(const Diagnostic& a, const Diagnostic& b) {
    return std::tie(a.span.file, a.span.line, a.span.column, a.code, a.message) <
           std::tie(b.span.file, b.span.line, b.span.column, b.code, b.message);
}

void sort_diagnostics(std::vector<Diagnostic>& diags) {
    std::stable_sort(diags.begin(), diags.end(), diagnostic_less);
}

bool has_errors(const std::vector<Diagnostic>& diags) {
    return std::any_of(diags.begin(), diags.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

std::string format_diagnostic(const Diagnostic& d) {
    std::ostringstream out;
    if (!d.span.synthetic()) {
        if (!d.span.file.empty()) out << d.span.file << ":";
        out << d.span.line << ":" << d.span.column << ": ";
    } else if (!d.span.file.empty()) {
        out << d.span.file << ": ";
    }
    out << to_string(d.severity) << " " << d.code << ": " << d.message;
    return out.str();
}

}  // namespace copri
