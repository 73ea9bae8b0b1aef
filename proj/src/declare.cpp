#include "telic/declare.hpp"

#include <set>

#include "telic/error.hpp"
#include "telic/pretty.hpp"
#include "telic/typecheck.hpp"

namespace telic {

namespace {

void require_fresh(const Environment& env, const std::string& name) {
    if (env.signature.contains(name)) throw TelicError(ErrorClass::DuplicateName, "duplicate name '" + name + "'");
}

// Walks the explicit positions of a pattern, validating its shape and
// collecting its variables.
void scan_pattern(const Signature& sig, const Term& p, std::size_t telescope_size, std::vector<std::uint32_t>& vars) {
    if (const auto* v = p.as<node::Var>()) {
        if (v->index >= telescope_size)
            throw TelicError(ErrorClass::InvalidPattern, "pattern refers to a variable outside its telescope");
        vars.push_back(v->index);
        return;
    }
    if (const auto* c = p.as<node::Const>()) {
        const SignatureEntry* entry = sig.find(c->name);
        if (!entry) throw TelicError(ErrorClass::UnknownConstant, "unknown constant `" + c->name + "`");
        if (entry->kind == EntryKind::Definition && !c->args.empty())
            throw TelicError(ErrorClass::InvalidPattern,
                             "pattern uses definition `" + c->name + "`; only constructors and postulates match");
        for (std::size_t i = 0; i < c->args.size(); ++i)
            if (!entry->is_implicit(i)) scan_pattern(sig, c->args[i], telescope_size, vars);
        return;
    }
    if (const auto* pr = p.as<node::Pair>()) {
        scan_pattern(sig, pr->first, telescope_size, vars);
        scan_pattern(sig, pr->second, telescope_size, vars);
        return;
    }
    if (p.is<node::NatLit>() || p.is<node::Universe>()) return;
    throw TelicError(ErrorClass::InvalidPattern,
                     "`" + pretty(p, &sig) + "` is not a pattern (expected a variable, constant, pair, or literal)");
}

Context check_telescope(TypeChecker& tc, const Context& telescope) {
    Context ctx;
    for (const auto& e : telescope.entries()) {
        tc.check_type(ctx, e.type);
        ctx.push(e.name, e.type);
    }
    return ctx;
}

}  // namespace

void declare_constant(Environment& env, MetaStore& metas, const std::string& name, const Term& type,
                      std::vector<bool> implicit_mask, EntryKind kind, std::uint64_t fuel) {
    require_fresh(env, name);
    TypeChecker tc(env, metas, fuel);
    tc.check_type(Context{}, type);
    tc.finish();
    env.signature.add(SignatureEntry{name, kind, tc.zonk(type), std::nullopt, std::move(implicit_mask)});
}

void declare_definition(Environment& env, MetaStore& metas, const std::string& name, const Term& type,
                        const Term& body, std::vector<bool> implicit_mask, std::uint64_t fuel) {
    require_fresh(env, name);
    TypeChecker tc(env, metas, fuel);
    tc.check_type(Context{}, type);
    tc.check(Context{}, body, type);
    tc.finish();
    env.signature.add(
        SignatureEntry{name, EntryKind::Definition, tc.zonk(type), tc.zonk(body), std::move(implicit_mask)});
}

void declare_rewrite(Environment& env, MetaStore& metas, const Context& telescope, const Term& lhs_in,
                     const Term& rhs, const std::string& label, std::uint64_t fuel) {
    TypeChecker tc(env, metas, fuel);
    Context ctx = check_telescope(tc, telescope);

    Term lhs = canonicalize(lhs_in);
    const auto* head = lhs.as<node::Const>();
    if (!head) throw TelicError(ErrorClass::InvalidPattern, "rewrite left-hand side must be an applied constant");
    const SignatureEntry* entry = env.signature.find(head->name);
    if (!entry) throw TelicError(ErrorClass::UnknownConstant, "unknown constant `" + head->name + "`");
    if (entry->kind == EntryKind::Definition)
        throw TelicError(ErrorClass::RewriteHeadIsDefinition,
                         "rewrite head `" + head->name + "` is a definition; only postulates and primitives may be rewritten");

    std::vector<std::uint32_t> vars;
    for (std::size_t i = 0; i < head->args.size(); ++i)
        if (!entry->is_implicit(i)) scan_pattern(env.signature, head->args[i], ctx.size(), vars);
    std::set<std::uint32_t> seen;
    for (auto v : vars)
        if (!seen.insert(v).second)
            throw TelicError(ErrorClass::NonlinearPattern,
                             "pattern variable `" + ctx.name_of(v) + "` occurs more than once on the left-hand side");

    Term lhs_type = tc.infer(ctx, lhs);
    try {
        tc.check(ctx, rhs, lhs_type);
    } catch (const TelicError& e) {
        if (e.error_class() != ErrorClass::TypeMismatch) throw;
        throw TelicError(ErrorClass::RewriteTypeMismatch,
                         "right-hand side does not preserve the type `" + tc.show(ctx, lhs_type) + "`: " + e.what());
    }
    tc.finish();

    Term final_lhs = tc.zonk(lhs);
    for (std::uint32_t i = 0; i < ctx.size(); ++i)
        if (!occurs_free(final_lhs, i))
            throw TelicError(ErrorClass::InvalidPattern,
                             "pattern variable `" + ctx.name_of(i) + "` does not occur on the left-hand side");

    Context zonked;
    for (const auto& e : ctx.entries()) zonked.push(e.name, tc.zonk(e.type));
    RewriteRule rule;
    rule.head = head->name;
    rule.lhs_args = final_lhs.as<node::Const>()->args;
    rule.rhs = tc.zonk(rhs);
    rule.pattern_telescope = std::move(zonked);
    rule.label = label;
    env.rules.add(std::move(rule));
}

}  // namespace telic
