#pragma once

#include <string>
#include <vector>

namespace detkit {

enum class Severity { Error, Warning, Note };

struct Diagnostic {
    Severity severity = Severity::Error;
    int line = 0; // 1-based; 0 when the diagnostic has no source location
    int col = 0;
    std::string message;
};

using DiagnosticList = std::vector<Diagnostic>;

inline Diagnostic make_error(std::string msg, int line = 0, int col = 0) {
    return {Severity::Error, line, col, std::move(msg)};
}

inline Diagnostic make_warning(std::string msg, int line = 0, int col = 0) {
    return {Severity::Warning, line, col, std::move(msg)};
}

inline bool has_errors(const DiagnosticList& diags) {
    for (const auto& d : diags)
        if (d.severity == Severity::Error) return true;
    return false;
}

// Renders as "LEVEL line:col message", one diagnostic per line.
std::string format_diagnostic(const Diagnostic& d);
std::string format_diagnostics(const DiagnosticList& diags);

} // namespace detkit
