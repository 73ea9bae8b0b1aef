// telic: batch checker for .tel lexicon files.
//
//   telic check [--fuel N] [--format plain|structured] [--no-prelude] FILE...
//   telic norm [--fuel N] -e EXPR [FILE...]
//   telic selftest [--format plain|structured] [--corpus DIR] [--regenerate]
//
// Exit status: 0 all declarations pass, 1 some check failed, 2 usage or I/O error.

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "telic/corpus.hpp"
#include "telic/prelude.hpp"
#include "telic/report.hpp"
#include "telic/session.hpp"

#ifndef TELIC_CORPUS_DIR
#define TELIC_CORPUS_DIR "corpus"
#endif

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct Options {
    std::uint64_t fuel = telic::kDefaultFuel;
    telic::OutputFormat format = telic::OutputFormat::Plain;
    bool no_prelude = false;
    std::vector<std::string> files;
    std::string expr;
    std::string corpus = TELIC_CORPUS_DIR;
    bool regenerate = false;
};

// Loads the prelude and the given files into `session`; returns false if
// anything failed.
bool load_inputs(telic::Session& session, const Options& opt, bool echo) {
    bool ok = true;
    if (!opt.no_prelude) {
        try {
            telic::load_prelude(session);
        } catch (const telic::TelicError& e) {
            std::cerr << "telic: " << e.what() << '\n';
            return false;
        }
    }
    for (const auto& f : opt.files) {
        telic::FileReport r = session.run_file(f);
        if (echo || r.failures() > 0) telic::write_report(echo ? std::cout : std::cerr, r, opt.format);
        ok = ok && r.failures() == 0;
    }
    return ok;
}

int run_check(const Options& opt) {
    telic::Session session({opt.fuel});
    return load_inputs(session, opt, true) ? kOk : kCheckFailed;
}

int run_norm(const Options& opt) {
    telic::Session session({opt.fuel});
    if (!load_inputs(session, opt, false)) return kCheckFailed;
    try {
        std::cout << session.normalize_text(opt.expr) << '\n';
    } catch (const telic::TelicError& e) {
        std::cerr << "telic: " << telic::to_string(e.error_class()) << ": " << e.what() << '\n';
        return kCheckFailed;
    }
    return kOk;
}

int run_selftest(const Options& opt) {
    telic::PreludeCheck check = telic::prelude_self_check();
    telic::write_prelude_check(std::cout, check, opt.format);
    telic::CorpusResult corpus = telic::run_corpus(opt.corpus, opt.regenerate);
    telic::write_corpus_result(std::cout, corpus, opt.format);
    return check.passed() && corpus.passed() ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Type checker for telicity lexicons"};
    app.require_subcommand(1);
    Options opt;
    const std::map<std::string, telic::OutputFormat> formats{{"plain", telic::OutputFormat::Plain},
                                                             {"structured", telic::OutputFormat::Structured}};

    auto* check = app.add_subcommand("check", "Check lexicon files in order, sharing one signature");
    check->add_option("--fuel", opt.fuel, "Reduction steps allowed per declaration")->check(CLI::PositiveNumber);
    check->add_option("--format", opt.format, "Report format")->transform(CLI::CheckedTransformer(formats));
    check->add_flag("--no-prelude", opt.no_prelude, "Do not load the framework prelude");
    check->add_option("files", opt.files, "Input files")->required()->check(CLI::ExistingFile);

    auto* norm = app.add_subcommand("norm", "Print the normal form of an expression");
    norm->add_option("--fuel", opt.fuel, "Reduction steps allowed")->check(CLI::PositiveNumber);
    norm->add_option("-e,--expr", opt.expr, "Expression to normalize")->required();
    norm->add_flag("--no-prelude", opt.no_prelude, "Do not load the framework prelude");
    norm->add_option("files", opt.files, "Lexicon files to load first")->check(CLI::ExistingFile);

    auto* selftest = app.add_subcommand("selftest", "Check the prelude and run the example corpus");
    selftest->add_option("--format", opt.format, "Report format")->transform(CLI::CheckedTransformer(formats));
    selftest->add_option("--corpus", opt.corpus, "Corpus directory");
    selftest->add_flag("--regenerate", opt.regenerate, "Rewrite golden reports instead of comparing");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (check->parsed()) return run_check(opt);
        if (norm->parsed()) return run_norm(opt);
        return run_selftest(opt);
    } catch (const telic::IoError& e) {
        std::cerr << "telic: " << e.what() << '\n';
        return kUsage;
    }
}
