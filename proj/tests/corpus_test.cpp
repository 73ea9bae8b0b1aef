#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "telic/corpus.hpp"

namespace {

namespace fs = std::filesystem;
using telic::ErrorClass;

const fs::path kCorpus = TELIC_CORPUS_DIR;

const telic::CorpusResult& corpus() {
    static const telic::CorpusResult r = telic::run_corpus(kCorpus);
    return r;
}

const telic::CaseResult& case_named(const std::string& id) {
    for (const auto& c : corpus().cases)
        if (c.entry.id == id) return c;
    throw std::out_of_range(id);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Declarations counted from the text alone: one per unindented keyword line,
// one per name in a multi-name postulate.
std::size_t count_declarations(const std::string& source) {
    static const std::regex keyword(R"(^(postulate|primitive|def|rewrite|check|entail|norm|import|fail)\b(.*))");
    std::size_t n = 0;
    std::istringstream in(source);
    for (std::string line; std::getline(in, line);) {
        std::smatch m;
        if (!std::regex_search(line, m, keyword)) continue;
        if (m[1] == "postulate" || m[1] == "primitive") {
            std::string names = m[2].str().substr(0, m[2].str().find(':'));
            std::istringstream ws(names);
            for (std::string w; ws >> w;) ++n;
        } else {
            ++n;
        }
    }
    return n;
}

TEST(Corpus, ManifestListsNineteenCases) {
    auto cases = telic::load_manifest(kCorpus);
    ASSERT_EQ(cases.size(), 19u);
    EXPECT_EQ(cases.front().id, "human_john");
    EXPECT_EQ(cases.back().id, "negative");
    for (const auto& c : cases) {
        EXPECT_TRUE(fs::exists(kCorpus / c.file)) << c.file;
        EXPECT_TRUE(fs::exists(telic::golden_path(kCorpus, c))) << c.id;
        EXPECT_FALSE(c.anchor.empty()) << c.id;
    }
}

TEST(Corpus, EveryCasePasses) {
    for (const auto& c : corpus().cases) {
        std::string why;
        for (const auto& p : c.problems) why += p + "\n";
        EXPECT_TRUE(c.passed) << c.entry.id << ":\n" << why;
    }
    EXPECT_TRUE(corpus().passed());
}

TEST(Corpus, EveryPreludeConstantIsExercised) {
    EXPECT_TRUE(corpus().uncovered.empty());
    EXPECT_EQ(corpus().coverage.size(), 80u);
}

TEST(Corpus, ExpectedPassesMatchAnIndependentCount) {
    for (const auto& c : corpus().cases)
        EXPECT_EQ(c.entry.expected_passes, count_declarations(slurp(kCorpus / c.entry.file))) << c.entry.id;
}

TEST(Corpus, FailClassesMatchTheSource) {
    static const std::regex fail_line(R"(^fail\s+(\w+))");
    for (const auto& c : corpus().cases) {
        std::vector<ErrorClass> in_source;
        std::istringstream in(slurp(kCorpus / c.entry.file));
        for (std::string line; std::getline(in, line);) {
            std::smatch m;
            if (std::regex_search(line, m, fail_line)) in_source.push_back(*telic::error_class_from_string(m[1].str()));
        }
        EXPECT_EQ(in_source, c.entry.expected_fail_classes) << c.entry.id;
    }
}

TEST(Corpus, PoppingTheWrongBalloonsIsATypeMismatch) {
    const auto& c = case_named("pop_balloons");
    ASSERT_EQ(c.entry.expected_fail_classes.size(), 2u);
    for (auto cls : c.entry.expected_fail_classes) EXPECT_EQ(cls, ErrorClass::TypeMismatch);
}

TEST(Corpus, CulminationNormalForm) {
    const auto& c = case_named("pop_culminating");
    auto norm = std::find_if(c.report.decls.begin(), c.report.decls.end(),
                             [](const auto& d) { return d.kind == "norm"; });
    ASSERT_NE(norm, c.report.decls.end());
    EXPECT_EQ(norm->normal_form, "El_Evt evt1 -> Prf (El_State (popped threeBalloons_Und))");
}

class CorpusCopy : public ::testing::Test {
protected:
    void SetUp() override {
        dir = fs::temp_directory_path() / "telic_corpus_copy";
        fs::remove_all(dir);
        fs::copy(kCorpus, dir, fs::copy_options::recursive);
    }
    void TearDown() override { fs::remove_all(dir); }
    fs::path dir;
};

TEST_F(CorpusCopy, TamperedGoldenIsDetectedAndRegenerated) {
    fs::path golden = dir / "golden" / "several.jsonl";
    std::string original = slurp(golden);
    std::string tampered = std::regex_replace(original, std::regex("AmountOf"), "AmountIn");
    ASSERT_NE(tampered, original);
    std::ofstream(golden) << tampered;

    auto broken = telic::run_corpus(dir);
    EXPECT_FALSE(broken.passed());
    for (const auto& c : broken.cases) EXPECT_EQ(c.passed, c.entry.id != "several") << c.entry.id;

    telic::run_corpus(dir, true);
    EXPECT_EQ(slurp(golden), original);
    EXPECT_TRUE(telic::run_corpus(dir).passed());
}

TEST_F(CorpusCopy, WrongExpectedPassesFails) {
    std::string manifest = slurp(dir / "cases.json");
    std::ofstream(dir / "cases.json") << std::regex_replace(manifest, std::regex("\"expected_passes\": 7,"),
                                                            "\"expected_passes\": 8,", std::regex_constants::format_first_only);
    auto r = telic::run_corpus(dir);
    EXPECT_FALSE(r.passed());
    EXPECT_FALSE(r.cases.front().passed);
}

TEST_F(CorpusCopy, MalformedManifestIsAnIoError) {
    std::ofstream(dir / "cases.json") << "{ not json";
    EXPECT_THROW(telic::load_manifest(dir), telic::IoError);
}

}  // namespace
