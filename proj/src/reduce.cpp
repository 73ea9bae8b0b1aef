#include "telic/reduce.hpp"

#include "telic/error.hpp"

namespace telic {

Reducer::Reducer(const Environment& env, const MetaStore* metas, std::uint64_t fuel)
    : env_(env), metas_(metas), fuel_(fuel) {}

void Reducer::tick() {
    if (fuel_ == 0)
        throw TelicError(ErrorClass::FuelExhausted,
                         "reduction fuel exhausted after " + std::to_string(steps_) + " steps");
    --fuel_;
    ++steps_;
}

Term Reducer::whnf(const Term& t) { return whnf_impl(t, true); }

Term Reducer::whnf_impl(Term t, bool unfold_nullary) {
    for (;;) {
        if (const auto* m = t.as<node::Meta>()) {
            if (!metas_) return t;
            auto v = metas_->value_of(*m);
            if (!v) return t;
            tick();
            t = *v;
        } else if (const auto* a = t.as<node::App>()) {
            Term fn = whnf_impl(a->fn, unfold_nullary);
            if (const auto* lam = fn.as<node::Lambda>()) {
                tick();
                t = subst(lam->body, a->arg);
            } else if (fn.is<node::Const>()) {
                t = apply_spine(fn, {a->arg});
            } else {
                return fn.same_object(a->fn) ? t : Term::app(fn, a->arg);
            }
        } else if (const auto* f = t.as<node::Fst>()) {
            Term p = whnf_impl(f->pair, true);
            const auto* pr = p.as<node::Pair>();
            if (!pr) return unfold_nullary ? Term::fst(p) : t;
            tick();
            t = pr->first;
        } else if (const auto* s = t.as<node::Snd>()) {
            Term p = whnf_impl(s->pair, true);
            const auto* pr = p.as<node::Pair>();
            if (!pr) return unfold_nullary ? Term::snd(p) : t;
            tick();
            t = pr->second;
        } else if (const auto* c = t.as<node::Const>()) {
            auto next = step_const(*c, unfold_nullary);
            if (!next) return t;
            t = std::move(*next);
        } else {
            return t;
        }
    }
}

std::optional<Term> Reducer::step_const(const node::Const& c, bool unfold_nullary) {
    const SignatureEntry* entry = env_.signature.find(c.name);
    if (!entry) return std::nullopt;
    if (entry->kind == EntryKind::Definition) {
        if (c.args.empty() && !unfold_nullary) return std::nullopt;
        tick();
        return apply_spine(*entry->body, c.args);
    }
    if (entry->kind == EntryKind::Primitive) {
        if (auto r = primitive_step(c)) {
            tick();
            return r;
        }
    }
    return fire_rules(c);
}

std::optional<Term> Reducer::primitive_step(const node::Const& c) {
    if (c.name == "zero" && c.args.empty()) return Term::nat(0);
    if (c.name == "suc" && c.args.size() == 1) {
        Term a = whnf(c.args[0]);
        if (const auto* lit = a.as<node::NatLit>()) return Term::nat(lit->value + 1);
        return std::nullopt;
    }
    if (c.name == "plus" && c.args.size() == 2) {
        Term m = whnf(c.args[0]);
        Term n = whnf(c.args[1]);
        const auto* ml = m.as<node::NatLit>();
        const auto* nl = n.as<node::NatLit>();
        if (ml && nl) return Term::nat(ml->value + nl->value);
        if (ml && ml->value == 0) return c.args[1];
        if (nl && nl->value == 0) return c.args[0];
    }
    return std::nullopt;
}

std::optional<Term> Reducer::fire_rules(const node::Const& c) {
    for (const RewriteRule* rule : env_.rules.for_head(c.name)) {
        auto env = match(*rule, c);
        if (!env) continue;
        tick();
        Term rhs = instantiate(rule->rhs, *env);
        std::vector<Term> extra(c.args.begin() + static_cast<std::ptrdiff_t>(rule->lhs_args.size()), c.args.end());
        return apply_spine(rhs, extra);
    }
    return std::nullopt;
}

std::optional<std::vector<Term>> Reducer::match(const RewriteRule& rule, const node::Const& c) {
    if (rule.lhs_args.size() > c.args.size()) return std::nullopt;
    const SignatureEntry* head = env_.signature.find(rule.head);
    std::vector<std::optional<Term>> env(rule.pattern_telescope.size());
    std::vector<Pending> deferred;
    for (std::size_t i = 0; i < rule.lhs_args.size(); ++i) {
        if (head && head->is_implicit(i)) {
            deferred.push_back({rule.lhs_args[i], c.args[i]});
        } else if (!match_into(rule.lhs_args[i], c.args[i], env, &deferred)) {
            return std::nullopt;
        }
    }
    // Implicit positions are inaccessible: they only supply bindings for
    // variables no explicit position determined.
    for (const auto& d : deferred) {
        auto attempt = env;
        if (match_into(d.pattern, d.term, attempt, nullptr)) env = std::move(attempt);
    }
    std::vector<Term> out;
    out.reserve(env.size());
    for (auto& v : env) {
        if (!v) return std::nullopt;
        out.push_back(std::move(*v));
    }
    return out;
}

bool Reducer::match_into(const Term& pattern, const Term& term, std::vector<std::optional<Term>>& env,
                         std::vector<Pending>* deferred) {
    if (const auto* v = pattern.as<node::Var>()) {
        if (v->index >= env.size()) return false;
        if (!env[v->index]) env[v->index] = term;
        return true;
    }
    if (const auto* pc = pattern.as<node::Const>()) {
        Term t = term;
        auto same_head = [&](const Term& x) {
            const auto* tc = x.as<node::Const>();
            return tc && tc->name == pc->name && tc->args.size() == pc->args.size();
        };
        if (!same_head(t)) {
            t = whnf(t);
            if (!same_head(t)) return false;
        }
        const auto* tc = t.as<node::Const>();
        const SignatureEntry* entry = env_.signature.find(pc->name);
        for (std::size_t i = 0; i < pc->args.size(); ++i) {
            if (deferred && entry && entry->is_implicit(i)) {
                deferred->push_back({pc->args[i], tc->args[i]});
            } else if (!match_into(pc->args[i], tc->args[i], env, deferred)) {
                return false;
            }
        }
        return true;
    }
    if (const auto* pp = pattern.as<node::Pair>()) {
        Term t = term.is<node::Pair>() ? term : whnf(term);
        const auto* tp = t.as<node::Pair>();
        return tp && match_into(pp->first, tp->first, env, deferred) &&
               match_into(pp->second, tp->second, env, deferred);
    }
    if (const auto* pl = pattern.as<node::NatLit>()) {
        const auto* tl = whnf(term).as<node::NatLit>();
        return tl && tl->value == pl->value;
    }
    if (const auto* pu = pattern.as<node::Universe>()) {
        const auto* tu = whnf(term).as<node::Universe>();
        return tu && tu->level == pu->level;
    }
    return false;
}

Term Reducer::normalize(const Term& t) {
    Term w = whnf_impl(t, false);
    return std::visit(
        [&](const auto& n) -> Term {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, node::Const>) {
                if (n.args.empty()) return w;
                std::vector<Term> args;
                args.reserve(n.args.size());
                for (const auto& a : n.args) args.push_back(normalize(a));
                return Term::constant(n.name, std::move(args));
            } else if constexpr (std::is_same_v<N, node::Meta>) {
                std::vector<Term> spine;
                spine.reserve(n.spine.size());
                for (const auto& a : n.spine) spine.push_back(normalize(a));
                return Term::meta(n.id, std::move(spine));
            } else if constexpr (std::is_same_v<N, node::Pi>) {
                return Term::pi(n.hint, normalize(n.domain), normalize(n.codomain));
            } else if constexpr (std::is_same_v<N, node::Lambda>) {
                return Term::lambda(n.hint, normalize(n.body));
            } else if constexpr (std::is_same_v<N, node::App>) {
                return apply_spine(normalize(n.fn), {normalize(n.arg)});
            } else if constexpr (std::is_same_v<N, node::Sigma>) {
                return Term::sigma(n.hint, normalize(n.first), normalize(n.second));
            } else if constexpr (std::is_same_v<N, node::Pair>) {
                return Term::pair(normalize(n.first), normalize(n.second));
            } else if constexpr (std::is_same_v<N, node::Fst>) {
                return Term::fst(normalize(n.pair));
            } else if constexpr (std::is_same_v<N, node::Snd>) {
                return Term::snd(normalize(n.pair));
            } else {
                return w;
            }
        },
        w.node().value);
}

}  // namespace telic
