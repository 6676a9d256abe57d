#include "detkit/diagnostics.hpp"

namespace detkit {

static const char* severity_name(Severity s) {
    switch (s) {
        case Severity::Error: return "error";
        case Severity::Warning: return "warning";
        default: return "note";
    }
}

std::string format_diagnostic(const Diagnostic& d) {
    return std::string(severity_name(d.severity)) + " " + std::to_string(d.line) + ":" +
           std::to_string(d.col) + " " + d.message;
}

std::string format_diagnostics(const DiagnosticList& diags) {
    std::string out;
    for (const auto& d : diags) {
        out += format_diagnostic(d);
        out += '\n';
    }
    return out;
}

} // namespace detkit
