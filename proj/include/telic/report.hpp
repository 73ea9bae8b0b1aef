#pragma once

#include <ostream>
#include <string>

#include "telic/prelude.hpp"
#include "telic/session.hpp"

namespace telic {

enum class OutputFormat { Plain, Structured };

/// One line per declaration, then a summary line. Structured output is one
/// JSON object per line and omits timings so that reruns are byte-identical.
void write_report(std::ostream& out, const FileReport& report, OutputFormat format);

/// One JSON object (no trailing newline) for a declaration.
std::string decl_record(const std::string& file, const DeclReport& d);

void write_prelude_check(std::ostream& out, const PreludeCheck& check, OutputFormat format);

}  // namespace telic
