#include "telic/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "telic/prelude.hpp"
#include "telic/syntax.hpp"

namespace telic {

namespace {

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::set<std::string> prelude_names() {
    Session s;
    load_prelude(s);
    const auto& names = s.environment().signature.names();
    return {names.begin(), names.end()};
}

std::set<std::string> mentioned_constants(const std::string& source, const std::set<std::string>& known) {
    std::set<std::string> out;
    for (const auto& tok : tokenize(source).tokens) {
        std::string name;
        if (tok.kind == Tok::Ident)
            name = resolve_alias(tok.text);
        else if (tok.kind == Tok::Oplus)
            name = "⊕";
        else if (tok.kind == Tok::Plus)
            name = "plus";
        if (known.count(name)) out.insert(name);
    }
    return out;
}

std::vector<ErrorClass> fail_classes(const std::string& source) {
    std::vector<ErrorClass> out;
    for (const auto& d : parse_file(source).decls)
        if (d.kind == Decl::Kind::Fail) out.push_back(d.expected_error);
    return out;
}

std::string structured(const FileReport& r) {
    std::ostringstream ss;
    write_report(ss, r, OutputFormat::Structured);
    return ss.str();
}

}  // namespace

bool CorpusResult::passed() const {
    return uncovered.empty() && std::all_of(cases.begin(), cases.end(), [](const auto& c) { return c.passed; });
}

std::vector<CorpusCase> load_manifest(const std::filesystem::path& dir) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(slurp(dir / "cases.json"));
    } catch (const nlohmann::json::exception& e) {
        throw IoError("malformed " + (dir / "cases.json").string() + ": " + e.what());
    }
    std::vector<CorpusCase> cases;
    try {
        for (const auto& item : j.at("cases")) {
            CorpusCase c;
            c.id = item.at("id").get<std::string>();
            c.file = item.at("file").get<std::string>();
            c.anchor = item.at("anchor").get<std::string>();
            c.expected_passes = item.at("expected_passes").get<std::size_t>();
            for (const auto& cls : item.value("expected_fail_classes", nlohmann::json::array())) {
                auto parsed = error_class_from_string(cls.get<std::string>());
                if (!parsed) throw IoError("unknown error class " + cls.get<std::string>() + " in case " + c.id);
                c.expected_fail_classes.push_back(*parsed);
            }
            cases.push_back(std::move(c));
        }
    } catch (const nlohmann::json::exception& e) {
        throw IoError("malformed " + (dir / "cases.json").string() + ": " + e.what());
    }
    return cases;
}

std::filesystem::path golden_path(const std::filesystem::path& dir, const CorpusCase& c) {
    return dir / "golden" / (c.id + ".jsonl");
}

CorpusResult run_corpus(const std::filesystem::path& dir, bool regenerate) {
    CorpusResult result;
    std::set<std::string> known = prelude_names();
    for (const auto& name : known) result.coverage[name];

    for (const auto& entry : load_manifest(dir)) {
        CaseResult cr;
        cr.entry = entry;
        std::string source;
        try {
            source = slurp(dir / entry.file);
        } catch (const IoError& e) {
            cr.problems.push_back(e.what());
            result.cases.push_back(std::move(cr));
            continue;
        }
        Session session;
        load_prelude(session);
        cr.report = session.run_source(source, entry.file, dir);
        cr.mentioned = mentioned_constants(source, known);
        for (const auto& name : cr.mentioned) result.coverage[name].push_back(entry.id);

        if (cr.report.failures() > 0) {
            for (const auto& d : cr.report.decls)
                if (!d.passed) cr.problems.push_back(d.span.to_string() + ": " + d.message);
        }
        if (cr.report.passes() != entry.expected_passes)
            cr.problems.push_back("expected " + std::to_string(entry.expected_passes) + " passing declarations, got " +
                                  std::to_string(cr.report.passes()));
        if (fail_classes(source) != entry.expected_fail_classes)
            cr.problems.push_back("fail declarations do not name the expected error classes");

        std::string actual = structured(cr.report);
        auto golden = golden_path(dir, entry);
        if (regenerate) {
            std::filesystem::create_directories(golden.parent_path());
            std::ofstream(golden, std::ios::binary) << actual;
        } else {
            std::string expected;
            try {
                expected = slurp(golden);
            } catch (const IoError&) {
                cr.problems.push_back("missing golden " + golden.filename().string());
            }
            if (!expected.empty() && expected != actual) {
                std::istringstream a(actual), e(expected);
                std::string la, le;
                int line = 1;
                while (true) {
                    bool ga = static_cast<bool>(std::getline(a, la));
                    bool ge = static_cast<bool>(std::getline(e, le));
                    if (!ga && !ge) break;
                    if (!ga || !ge || la != le) {
                        cr.problems.push_back("golden differs at line " + std::to_string(line) + "\n      expected: " +
                                              (ge ? le : "<eof>") + "\n      actual:   " + (ga ? la : "<eof>"));
                        break;
                    }
                    ++line;
                }
            }
        }
        cr.passed = cr.problems.empty();
        result.cases.push_back(std::move(cr));
    }
    for (const auto& [name, cases] : result.coverage)
        if (cases.empty()) result.uncovered.push_back(name);
    return result;
}

void write_corpus_result(std::ostream& out, const CorpusResult& result, OutputFormat format) {
    std::size_t passed = static_cast<std::size_t>(
        std::count_if(result.cases.begin(), result.cases.end(), [](const auto& c) { return c.passed; }));
    if (format == OutputFormat::Structured) {
        for (const auto& c : result.cases) {
            nlohmann::ordered_json j;
            j["case"] = c.entry.id;
            j["anchor"] = c.entry.anchor;
            j["status"] = c.passed ? "pass" : "fail";
            j["passes"] = c.report.passes();
            j["failures"] = c.report.failures();
            if (!c.problems.empty()) j["problems"] = c.problems;
            out << j.dump() << '\n';
        }
        nlohmann::ordered_json cov;
        cov["coverage"] = result.coverage;
        out << cov.dump() << '\n';
        nlohmann::ordered_json s;
        s["corpus_summary"] = {{"cases", result.cases.size()}, {"passed", passed}, {"uncovered", result.uncovered}};
        out << s.dump() << '\n';
        return;
    }
    for (const auto& c : result.cases) {
        out << (c.passed ? "  ok   " : "  FAIL ") << c.entry.id << "  (" << c.entry.anchor << ")\n";
        for (const auto& p : c.problems) out << "      " << p << '\n';
    }
    if (!result.uncovered.empty()) {
        out << "prelude constants not exercised by any case:";
        for (const auto& n : result.uncovered) out << ' ' << n;
        out << '\n';
    }
    out << "corpus: " << passed << "/" << result.cases.size() << " cases passed, "
        << result.coverage.size() - result.uncovered.size() << "/" << result.coverage.size()
        << " prelude constants exercised\n";
}

}  // namespace telic
