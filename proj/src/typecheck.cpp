#include "telic/typecheck.hpp"

#include <algorithm>

#include "telic/error.hpp"
#include "telic/pretty.hpp"

namespace telic {

namespace {

// Head and arguments of an App chain.
Term unwind(const Term& t, std::vector<Term>& args) {
    Term head = t;
    while (const auto* a = head.as<node::App>()) {
        args.push_back(a->arg);
        head = a->fn;
    }
    std::reverse(args.begin(), args.end());
    return head;
}

}  // namespace

TypeChecker::TypeChecker(const Environment& env, MetaStore& metas, std::uint64_t fuel)
    : env_(env), metas_(metas), reducer_(env, &metas, fuel) {}

std::string TypeChecker::show(const Context& ctx, const Term& t) {
    return pretty(normalize(t), &env_.signature, ctx);
}

void TypeChecker::mismatch(const Context& ctx, const Term& t, const Term& actual, const Term& expected) {
    throw TelicError(ErrorClass::TypeMismatch, "`" + pretty(zonk(t), &env_.signature, ctx) + "` has type `" +
                                                   show(ctx, actual) + "` but `" + show(ctx, expected) +
                                                   "` was expected");
}

Term TypeChecker::infer(const Context& ctx, const Term& t) {
    if (const auto* v = t.as<node::Var>()) {
        if (v->index >= ctx.size())
            throw TelicError(ErrorClass::UnboundVariable, "variable #" + std::to_string(v->index) + " is not bound");
        return ctx.type_of(v->index);
    }
    if (const auto* c = t.as<node::Const>()) return infer_const(ctx, *c);
    if (const auto* u = t.as<node::Universe>()) {
        if (u->level == 0) return Term::universe(1);
        throw TelicError(ErrorClass::UniverseMismatch, "Type1 is not an element of any universe");
    }
    if (const auto* p = t.as<node::Pi>()) {
        int l1 = check_type(ctx, p->domain);
        int l2 = check_type(ctx.extended(p->hint, p->domain), p->codomain);
        return Term::universe(std::max(l1, l2));
    }
    if (const auto* s = t.as<node::Sigma>()) {
        int l1 = check_type(ctx, s->first);
        int l2 = check_type(ctx.extended(s->hint, s->first), s->second);
        return Term::universe(std::max(l1, l2));
    }
    if (t.is<node::Lambda>())
        throw TelicError(ErrorClass::CannotInfer,
                         "cannot infer the type of `" + pretty(zonk(t), &env_.signature, ctx) +
                             "`; add a type annotation");
    if (const auto* a = t.as<node::App>()) {
        // Redexes appear once a lambda argument is substituted into a
        // dependent type; the argument's type annotates the binder.
        if (const auto* lam = a->fn.as<node::Lambda>()) {
            Term arg_type = infer(ctx, a->arg);
            return subst(infer(ctx.extended(lam->hint, arg_type), lam->body), a->arg);
        }
        return apply_type(ctx, infer(ctx, a->fn), a->arg, t);
    }
    if (const auto* p = t.as<node::Pair>()) {
        Term first = infer(ctx, p->first);
        Term second = infer(ctx, p->second);
        return Term::sigma("_", first, shift(second, 1));
    }
    if (const auto* f = t.as<node::Fst>()) {
        Term pt = whnf(infer(ctx, f->pair));
        if (const auto* s = pt.as<node::Sigma>()) return s->first;
        throw TelicError(ErrorClass::NotAPair, "`" + pretty(zonk(f->pair), &env_.signature, ctx) +
                                                   "` is projected but has type `" + show(ctx, pt) + "`");
    }
    if (const auto* sn = t.as<node::Snd>()) {
        Term pt = whnf(infer(ctx, sn->pair));
        if (const auto* s = pt.as<node::Sigma>()) return subst(s->second, Term::fst(sn->pair));
        throw TelicError(ErrorClass::NotAPair, "`" + pretty(zonk(sn->pair), &env_.signature, ctx) +
                                                   "` is projected but has type `" + show(ctx, pt) + "`");
    }
    if (t.is<node::NatLit>()) {
        if (!env_.signature.contains("Nat")) throw TelicError(ErrorClass::UnknownConstant, "Nat is not declared");
        return Term::constant("Nat");
    }
    const auto& m = *t.as<node::Meta>();
    if (auto v = metas_.value_of(m)) return infer(ctx, *v);
    if (auto ty = metas_.type_of(m)) return *ty;
    const auto& info = metas_.info(m.id);
    throw TelicError(ErrorClass::CannotInfer, "cannot infer the type of ?" + std::to_string(m.id) + " (" +
                                                  info.origin + ")",
                     info.span);
}

Term TypeChecker::infer_const(const Context& ctx, const node::Const& c) {
    const SignatureEntry* entry = env_.signature.find(c.name);
    if (!entry) throw TelicError(ErrorClass::UnknownConstant, "unknown constant `" + c.name + "`");
    Term type = entry->type;
    std::vector<Term> prefix;
    for (const auto& arg : c.args) {
        prefix.push_back(arg);
        type = apply_type(ctx, type, arg, Term::constant(c.name, prefix));
    }
    return type;
}

Term TypeChecker::apply_type(const Context& ctx, Term fn_type, const Term& arg, const Term& whole) {
    Term w = whnf(fn_type);
    if (const auto* p = w.as<node::Pi>()) {
        check(ctx, arg, p->domain);
        return subst(p->codomain, arg);
    }
    throw TelicError(ErrorClass::NotAFunction, "`" + pretty(zonk(whole), &env_.signature, ctx) +
                                                   "` applies a term of non-function type `" + show(ctx, w) + "`");
}

void TypeChecker::check(const Context& ctx, const Term& t, const Term& expected) {
    if (const auto* lam = t.as<node::Lambda>()) {
        Term w = whnf(expected);
        if (const auto* p = w.as<node::Pi>()) {
            check(ctx.extended(lam->hint, p->domain), lam->body, p->codomain);
            return;
        }
        std::vector<Term> args;
        if (unwind(w, args).is<node::Meta>())
            throw TelicError(ErrorClass::CannotInfer, "cannot infer the domain of `" +
                                                          pretty(zonk(t), &env_.signature, ctx) + "`");
        throw TelicError(ErrorClass::TypeMismatch, "`" + pretty(zonk(t), &env_.signature, ctx) +
                                                       "` is a function but `" + show(ctx, expected) +
                                                       "` was expected");
    }
    if (const auto* pr = t.as<node::Pair>()) {
        Term w = whnf(expected);
        if (const auto* s = w.as<node::Sigma>()) {
            check(ctx, pr->first, s->first);
            check(ctx, pr->second, subst(s->second, pr->first));
            return;
        }
        std::vector<Term> args;
        if (!unwind(w, args).is<node::Meta>())
            throw TelicError(ErrorClass::TypeMismatch, "`" + pretty(zonk(t), &env_.signature, ctx) +
                                                           "` is a pair but `" + show(ctx, expected) +
                                                           "` was expected");
    }
    if (const auto* m = t.as<node::Meta>()) {
        if (auto v = metas_.value_of(*m)) {
            check(ctx, *v, expected);
            return;
        }
        if (auto ty = metas_.type_of(*m)) {
            if (!conv(*ty, expected)) mismatch(ctx, t, *ty, expected);
            return;
        }
        auto& info = metas_.info(m->id);
        if (auto inverted = invert(m->spine, zonk(expected), m->id)) info.type = *inverted;
        bool identity = m->spine.size() == ctx.size();
        for (std::size_t i = 0; identity && i < m->spine.size(); ++i) {
            const auto* v = m->spine[i].as<node::Var>();
            identity = v && v->index == ctx.size() - 1 - i;
        }
        if (identity) info.context = ctx;
        return;
    }
    if (const auto* a = t.as<node::App>()) {
        // A redex with an unannotated lambda is checked like a let: the
        // argument must infer, then the contractum checks.
        if (const auto* lam = a->fn.as<node::Lambda>()) {
            infer(ctx, a->arg);
            check(ctx, subst(lam->body, a->arg), expected);
            return;
        }
    }
    // Projections of a literal pair check the projected component; an
    // inferred pair type would be non-dependent and too weak.
    if (const auto* f = t.as<node::Fst>()) {
        if (const auto* pr = f->pair.as<node::Pair>()) {
            infer(ctx, pr->second);
            check(ctx, pr->first, expected);
            return;
        }
    }
    if (const auto* s = t.as<node::Snd>()) {
        if (const auto* pr = s->pair.as<node::Pair>()) {
            infer(ctx, pr->first);
            check(ctx, pr->second, expected);
            return;
        }
    }
    Term actual = infer(ctx, t);
    if (!conv(actual, expected)) mismatch(ctx, t, actual, expected);
}

int TypeChecker::check_type(const Context& ctx, const Term& t) {
    if (const auto* m = t.as<node::Meta>(); m && !metas_.is_solved(m->id) && !metas_.type_of(*m)) {
        check(ctx, t, Term::universe(0));
        return 0;
    }
    Term ty = whnf(infer(ctx, t));
    if (const auto* u = ty.as<node::Universe>()) return u->level;
    std::vector<Term> args;
    if (unwind(ty, args).is<node::Meta>() && conv(ty, Term::universe(0))) return 0;
    throw TelicError(ErrorClass::NotAType, "`" + pretty(zonk(t), &env_.signature, ctx) +
                                               "` is not a type; it has type `" + show(ctx, ty) + "`");
}

bool TypeChecker::convertible(const Context&, const Term& a, const Term& b, const std::optional<Term>&) {
    return conv(a, b);
}

bool TypeChecker::conv(const Term& a, const Term& b) {
    if (alpha_eq(a, b)) return true;
    std::vector<Term> scratch;
    auto flex = [&](const Term& t) {
        scratch.clear();
        const auto* m = unwind(t, scratch).as<node::Meta>();
        return m && !metas_.is_solved(m->id);
    };
    if (flex(a) && try_solve(a, b)) return true;
    if (flex(b) && try_solve(b, a)) return true;
    Term wa = whnf(a);
    Term wb = whnf(b);
    if (alpha_eq(wa, wb)) return true;
    if (flex(wa)) return try_solve(wa, wb) || (flex(wb) && try_solve(wb, wa));
    if (flex(wb)) return try_solve(wb, wa);
    return conv_whnf(wa, wb);
}

bool TypeChecker::conv_spines(const std::vector<Term>& a, const std::vector<Term>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!conv(a[i], b[i])) return false;
    return true;
}

bool TypeChecker::conv_whnf(const Term& a, const Term& b) {
    // η for Π: compare under a fresh variable.
    const auto* la = a.as<node::Lambda>();
    const auto* lb = b.as<node::Lambda>();
    if (la && lb) return conv(la->body, lb->body);
    if (la) return conv(la->body, apply_spine(shift(b, 1), {Term::var(0)}));
    if (lb) return conv(apply_spine(shift(a, 1), {Term::var(0)}), lb->body);

    // η for Σ: compare projections.
    const auto* pa = a.as<node::Pair>();
    const auto* pb = b.as<node::Pair>();
    if (pa && pb) return conv(pa->first, pb->first) && conv(pa->second, pb->second);
    if (pa) return conv(pa->first, Term::fst(b)) && conv(pa->second, Term::snd(b));
    if (pb) return conv(Term::fst(a), pb->first) && conv(Term::snd(a), pb->second);

    if (a.node().value.index() != b.node().value.index()) return false;
    if (const auto* x = a.as<node::Var>()) return x->index == b.as<node::Var>()->index;
    if (const auto* x = a.as<node::Const>()) {
        const auto* y = b.as<node::Const>();
        return x->name == y->name && conv_spines(x->args, y->args);
    }
    if (const auto* x = a.as<node::Universe>()) return x->level == b.as<node::Universe>()->level;
    if (const auto* x = a.as<node::Pi>()) {
        const auto* y = b.as<node::Pi>();
        return conv(x->domain, y->domain) && conv(x->codomain, y->codomain);
    }
    if (const auto* x = a.as<node::Sigma>()) {
        const auto* y = b.as<node::Sigma>();
        return conv(x->first, y->first) && conv(x->second, y->second);
    }
    if (const auto* x = a.as<node::App>()) {
        const auto* y = b.as<node::App>();
        return conv(x->fn, y->fn) && conv(x->arg, y->arg);
    }
    if (const auto* x = a.as<node::Fst>()) return conv(x->pair, b.as<node::Fst>()->pair);
    if (const auto* x = a.as<node::Snd>()) return conv(x->pair, b.as<node::Snd>()->pair);
    if (const auto* x = a.as<node::NatLit>()) return x->value == b.as<node::NatLit>()->value;
    if (const auto* x = a.as<node::Meta>()) {
        const auto* y = b.as<node::Meta>();
        return x->id == y->id && conv_spines(x->spine, y->spine);
    }
    return false;
}

std::optional<Term> TypeChecker::invert(const std::vector<Term>& spine, const Term& rhs, std::uint32_t meta_id) {
    if (mentions_meta(rhs, meta_id)) return std::nullopt;
    const auto k = static_cast<std::uint32_t>(spine.size());
    return rename_free(rhs, [&](std::uint32_t v) -> std::optional<std::uint32_t> {
        for (std::uint32_t p = 0; p < k; ++p) {
            const auto* sv = spine[p].as<node::Var>();
            if (sv && sv->index == v) return k - 1 - p;
        }
        return std::nullopt;
    });
}

bool TypeChecker::try_solve(const Term& flex, const Term& other) {
    std::vector<Term> args;
    Term head = unwind(flex, args);
    const auto& m = *head.as<node::Meta>();
    std::vector<Term> spine = m.spine;
    spine.insert(spine.end(), args.begin(), args.end());
    // Pattern condition: the spine is a list of distinct variables.
    for (auto& s : spine) {
        if (!s.is<node::Var>()) s = whnf(s);
        const auto* v = s.as<node::Var>();
        if (!v) return false;
    }
    for (std::size_t i = 0; i < spine.size(); ++i)
        for (std::size_t j = i + 1; j < spine.size(); ++j)
            if (spine[i].as<node::Var>()->index == spine[j].as<node::Var>()->index) return false;

    Term rhs = zonk(other);
    auto solution = invert(spine, rhs, m.id);
    if (!solution) {
        rhs = zonk(reducer_.normalize(rhs));
        solution = invert(spine, rhs, m.id);
        if (!solution) return false;
    }
    Term value = *solution;
    for (std::size_t i = 0; i < args.size(); ++i) value = Term::lambda("x", value);
    metas_.info(m.id).solution = value;
    return true;
}

void TypeChecker::finish() {
    auto open = metas_.unsolved();
    if (!open.empty()) {
        std::string msg = "unsolved metavariable";
        if (open.size() > 1) msg += "s";
        std::optional<Span> span;
        for (std::size_t i = 0; i < open.size(); ++i) {
            const auto& info = metas_.info(open[i]);
            msg += (i ? ", ?" : " ?") + std::to_string(open[i]) + " (" + info.origin + ")";
            if (!span) span = info.span;
        }
        throw TelicError(ErrorClass::UnsolvedMeta, msg, span);
    }
    for (std::uint32_t id = 0; id < metas_.size(); ++id) {
        const auto& info = metas_.info(id);
        if (!info.type || !info.context) continue;
        Context ctx = *info.context;
        Term value = zonk(*info.solution);
        Term type = zonk(*info.type);
        check(ctx, value, type);
    }
}

}  // namespace telic
