#ifndef COPRI_DIAGNOSTICS_HPP
#define COPRI_DIAGNOSTICS_HPP

#include <string>
#include <vector>

namespace copri {

// Position of a token or statement in a source file. line/column are 1-based;
// line == 0 marks a synthetic span (graphs assembled through the builder API
// rather than parsed from text).
struct SourceSpan {
    std::string file;
    int line = 0;
    int column = 0;
    int length = 1;

    bool synthetic() const { return line == 0; }
};

enum class Severity { Error, Warning };

// One parse or wellformedness problem. `code` is a stable identifier that is
// part of the CLI contract (e.g. "UnresolvedReference", "WF-CYCLE").
struct Diagnostic {
    SourceSpan span;
    Severity severity = Severity::Error;
    std::string code;
    std::string message;
};

inline bool operator==(const SourceSpan& a, const SourceSpan& b) {
    return a.file == b.file && a.line == b.line && a.column == b.column && a.length == b.length;
}

inline bool operator==(const Diagnostic& a, const Diagnostic& b) {
    return a.span == b.span && a.severity == b.severity && a.code == b.code && a.message == b.message;
}

const char* to_string(Severity s);

// (file, line, column, code, message) ordering; keeps merged diagnostic sets
// deterministic no matter which check produced them first.
bool diagnostic_less(const Diagnostic& a, const Diagnostic& b);
void sort_diagnostics(std::vector<Diagnostic>& diags);
bool has_errors(const std::vector<Diagnostic>& diags);

// "file:line:col: severity CODE: message" (file/position omitted when synthetic).
std::string format_diagnostic(const Diagnostic& d);

}  // namespace copri

#endif
