#include "telic/prelude.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "telic/declare.hpp"
#include "telic/pretty.hpp"
#include "telic/typecheck.hpp"

namespace telic {

// Defined in the generated prelude_data.cpp.
extern const char* const kEmbeddedPrelude;

std::string_view embedded_prelude() { return kEmbeddedPrelude; }

std::string prelude_source() {
    const char* path = std::getenv("TELIC_PRELUDE");
    if (!path || !*path) return std::string(embedded_prelude());
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(std::string("cannot read prelude override ") + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

FileReport load_prelude(Session& session) { return load_prelude(session, prelude_source()); }

FileReport load_prelude(Session& session, std::string_view source) {
    // A small --fuel is meant for the user's declarations; the prelude always
    // gets at least the default budget.
    const std::uint64_t fuel = session.options().fuel;
    session.set_fuel(std::max(fuel, kDefaultFuel));
    FileReport report = session.run_source(source, std::string(kPreludeLabel));
    session.set_fuel(fuel);
    auto bad = std::find_if(report.decls.begin(), report.decls.end(), [](const auto& d) { return !d.passed; });
    if (bad != report.decls.end()) {
        std::string who = bad->name.empty() ? bad->kind : bad->kind + " " + bad->name;
        throw TelicError(bad->error_class.value_or(ErrorClass::ParseError),
                         "prelude entry `" + who + "` at " + bad->span.to_string() + ": " + bad->message,
                         bad->error_span);
    }
    return report;
}

bool PreludeCheck::passed() const {
    return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.passed; });
}

namespace {

// Re-infer a signature entry's type in isolation and re-check its body.
void retype(const Environment& env, const SignatureEntry& entry) {
    MetaStore metas;
    TypeChecker tc(env, metas);
    tc.check_type(Context{}, entry.type);
    if (entry.body) tc.check(Context{}, *entry.body, entry.type);
    tc.finish();
}

// Instantiate the rule's telescope with fresh postulates, fire the rule on the
// resulting closed lhs, and compare types of both sides.
void fire_on_instance(const Environment& base, const RewriteRule& rule, std::size_t index) {
    Environment env = base;
    std::vector<Term> subst_env;  // Var(j) -> subst_env[j]
    const auto& entries = rule.pattern_telescope.entries();
    for (std::size_t i = 0; i < entries.size(); ++i) {
        std::string name = "probe" + std::to_string(index) + "_" + entries[i].name;
        MetaStore metas;
        declare_constant(env, metas, name, instantiate(entries[i].type, subst_env), {}, EntryKind::Postulate);
        subst_env.insert(subst_env.begin(), Term::constant(name));
    }
    Term lhs = instantiate(rule.lhs(), subst_env);
    Term rhs = instantiate(rule.rhs, subst_env);

    Reducer reducer(env);
    auto fired = reducer.fire_rules(*lhs.as<node::Const>());
    if (!fired) throw TelicError(ErrorClass::InvalidPattern, "rule does not fire on " + pretty(lhs, &env.signature));
    if (!alpha_eq(*fired, rhs))
        throw TelicError(ErrorClass::TypeMismatch, "rule fired to `" + pretty(*fired, &env.signature) +
                                                       "` instead of `" + pretty(rhs, &env.signature) + "`");
    MetaStore metas;
    TypeChecker tc(env, metas);
    Term before = tc.infer(Context{}, lhs);
    Term after = tc.infer(Context{}, *fired);
    if (!tc.convertible(Context{}, before, after))
        throw TelicError(ErrorClass::RewriteTypeMismatch, "rewriting changed the type from `" +
                                                              tc.show(Context{}, before) + "` to `" +
                                                              tc.show(Context{}, after) + "`");
}

// ⊕ of two one-element amounts must land at index 2.
void probe_oplus(Session& session) {
    FileReport r = session.run_source(
        "postulate probe_np : NP U\n"
        "postulate probe_p probe_q : El_NP (AmountOf probe_np quantity nu 1)\n",
        "<probe>");
    if (r.failures() > 0) throw TelicError(*r.decls.back().error_class, r.decls.back().message);
    MetaStore metas;
    Term sum = session.elaborate(parse_expr("probe_p ⊕ probe_q"), metas);
    TypeChecker tc(session.environment(), metas);
    Term type = tc.normalize(tc.infer(Context{}, sum));
    tc.finish();
    MetaStore expected_metas;
    Term expected = session.elaborate(parse_expr("El_NP {B} (AmountOf probe_np quantity nu 2)"), expected_metas);
    if (!alpha_eq(type, expected))
        throw TelicError(ErrorClass::TypeMismatch,
                         "⊕ at 1 and 1 has type `" + pretty(type, &session.environment().signature) + "`");
}

template <class F>
void record(PreludeCheck& out, std::string name, std::string what, F&& f) {
    PreludeCheckEntry e{std::move(name), std::move(what), false, {}};
    try {
        f();
        e.passed = true;
    } catch (const std::exception& ex) {
        e.message = ex.what();
    }
    out.entries.push_back(std::move(e));
}

}  // namespace

PreludeCheck prelude_self_check() {
    std::string source;
    try {
        source = prelude_source();
    } catch (const IoError& e) {
        PreludeCheck out;
        out.entries.push_back({"TELIC_PRELUDE", "declare", false, e.what()});
        return out;
    }
    return prelude_self_check(source);
}

PreludeCheck prelude_self_check(std::string_view source) {
    PreludeCheck out;
    Session session;
    FileReport report = session.run_source(source, std::string(kPreludeLabel));
    for (const auto& d : report.decls) {
        std::string name = d.name.empty() ? d.kind + " " + d.span.to_string() : d.name;
        out.entries.push_back({name, "declare", d.passed, d.passed ? "" : d.message});
    }
    const Environment& env = session.environment();
    out.constants = env.signature.size();
    out.rules = env.rules.size();
    for (const auto& name : env.signature.names())
        record(out, name, "retype", [&] { retype(env, *env.signature.find(name)); });
    for (std::size_t i = 0; i < env.rules.all().size(); ++i) {
        const RewriteRule& rule = env.rules.all()[i];
        record(out, rule.head + " " + rule.label, "rewrite", [&] { fire_on_instance(env, rule, i); });
    }
    record(out, "⊕", "probe", [&] { probe_oplus(session); });
    return out;
}

}  // namespace telic
