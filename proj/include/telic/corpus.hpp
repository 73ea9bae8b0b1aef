#pragma once

#include <filesystem>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "telic/error.hpp"
#include "telic/report.hpp"

namespace telic {

/// One worked example shipped as a `.tel` file with a golden report.
struct CorpusCase {
    std::string id;
    std::string file;    // relative to the corpus directory
    std::string anchor;  // which worked example it reproduces
    std::size_t expected_passes = 0;
    std::vector<ErrorClass> expected_fail_classes;  // classes named by its `fail` declarations, in order
};

struct CaseResult {
    CorpusCase entry;
    FileReport report;
    bool passed = false;
    std::vector<std::string> problems;  // why it did not pass
    std::set<std::string> mentioned;    // prelude constants named in the source
};

struct CorpusResult {
    std::vector<CaseResult> cases;
    std::map<std::string, std::vector<std::string>> coverage;  // prelude constant -> case ids
    std::vector<std::string> uncovered;
    bool passed() const;
};

/// Parse `cases.json` in `dir`. Throws IoError on a missing or malformed manifest.
std::vector<CorpusCase> load_manifest(const std::filesystem::path& dir);

/// Run every case in a fresh session with the prelude loaded. With
/// `regenerate`, golden files are rewritten instead of compared.
CorpusResult run_corpus(const std::filesystem::path& dir, bool regenerate = false);

/// Golden file of a case: its structured report.
std::filesystem::path golden_path(const std::filesystem::path& dir, const CorpusCase& c);

void write_corpus_result(std::ostream& out, const CorpusResult& result, OutputFormat format);

}  // namespace telic
