#include "telic/report.hpp"

#include <cstdio>

#include "json.hpp"

namespace telic {

namespace {

nlohmann::ordered_json span_json(const Span& s) {
    return {{"line", s.line}, {"col", s.col}, {"end_line", s.end_line}, {"end_col", s.end_col}};
}

std::string plain_line(const DeclReport& d) {
    std::string line = d.span.to_string() + ": " + d.kind;
    if (!d.name.empty()) line += " " + d.name;
    if (d.passed) {
        line += ": ok";
        if (!d.normal_form.empty()) line += "\n    = " + d.normal_form;
        return line;
    }
    line += ": FAIL [" + std::string(to_string(d.error_class.value_or(ErrorClass::ParseError))) + "]";
    if (d.error_span && d.error_span->to_string() != d.span.to_string()) line += " at " + d.error_span->to_string();
    line += "\n    " + d.message;
    return line;
}

}  // namespace

std::string decl_record(const std::string& file, const DeclReport& d) {
    nlohmann::ordered_json j;
    j["file"] = file;
    j["span"] = span_json(d.span);
    j["kind"] = d.kind;
    j["name"] = d.name;
    j["status"] = d.passed ? "pass" : "fail";
    if (d.error_class) j["error_class"] = std::string(to_string(*d.error_class));
    if (!d.message.empty()) j["message"] = d.message;
    if (d.error_span) j["error_span"] = span_json(*d.error_span);
    if (!d.normal_form.empty()) j["normal_form"] = d.normal_form;
    return j.dump();
}

void write_report(std::ostream& out, const FileReport& report, OutputFormat format) {
    if (format == OutputFormat::Structured) {
        for (const auto& d : report.decls) out << decl_record(report.file, d) << '\n';
        nlohmann::ordered_json s;
        s["file"] = report.file;
        s["summary"] = {{"passes", report.passes()}, {"failures", report.failures()}, {"halted", report.halted}};
        out << s.dump() << '\n';
        return;
    }
    for (const auto& d : report.decls) out << plain_line(d) << '\n';
    char ms[32];
    std::snprintf(ms, sizeof ms, "%.1f", report.duration_ms);
    out << report.file << ": " << report.passes() << " passed, " << report.failures() << " failed";
    if (report.halted) out << " (halted)";
    out << " in " << ms << " ms\n";
}

void write_prelude_check(std::ostream& out, const PreludeCheck& check, OutputFormat format) {
    std::size_t failed = 0;
    for (const auto& e : check.entries) failed += e.passed ? 0 : 1;
    if (format == OutputFormat::Structured) {
        for (const auto& e : check.entries) {
            nlohmann::ordered_json j;
            j["prelude"] = e.name;
            j["check"] = e.what;
            j["status"] = e.passed ? "pass" : "fail";
            if (!e.message.empty()) j["message"] = e.message;
            out << j.dump() << '\n';
        }
        nlohmann::ordered_json s;
        s["prelude_summary"] = {{"constants", check.constants},
                                {"rules", check.rules},
                                {"checks", check.entries.size()},
                                {"failures", failed}};
        out << s.dump() << '\n';
        return;
    }
    for (const auto& e : check.entries)
        if (!e.passed) out << "prelude " << e.what << " " << e.name << ": FAIL\n    " << e.message << '\n';
    out << "prelude: " << check.constants << " constants, " << check.rules << " rules, "
        << check.entries.size() - failed << "/" << check.entries.size() << " checks passed\n";
}

}  // namespace telic
