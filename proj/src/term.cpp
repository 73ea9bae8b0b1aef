#include "telic/term.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <stdexcept>

namespace telic {

namespace {

Term make(TermNode n) { return Term::from_node(std::make_shared<const TermNode>(std::move(n))); }

// Rebuild `t`, replacing each free variable (index >= depth) by on_var(index, depth).
template <class F>
Term map_vars(const Term& t, std::uint32_t depth, const F& on_var) {
    return std::visit(
        [&](const auto& n) -> Term {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, node::Var>) {
                if (n.index < depth) return t;
                return on_var(n.index, depth);
            } else if constexpr (std::is_same_v<N, node::Const>) {
                if (n.args.empty()) return t;
                std::vector<Term> args;
                args.reserve(n.args.size());
                for (const auto& a : n.args) args.push_back(map_vars(a, depth, on_var));
                return Term::constant(n.name, std::move(args));
            } else if constexpr (std::is_same_v<N, node::Universe> || std::is_same_v<N, node::NatLit>) {
                return t;
            } else if constexpr (std::is_same_v<N, node::Pi>) {
                return Term::pi(n.hint, map_vars(n.domain, depth, on_var),
                                map_vars(n.codomain, depth + 1, on_var));
            } else if constexpr (std::is_same_v<N, node::Lambda>) {
                return Term::lambda(n.hint, map_vars(n.body, depth + 1, on_var));
            } else if constexpr (std::is_same_v<N, node::App>) {
                return Term::app(map_vars(n.fn, depth, on_var), map_vars(n.arg, depth, on_var));
            } else if constexpr (std::is_same_v<N, node::Sigma>) {
                return Term::sigma(n.hint, map_vars(n.first, depth, on_var),
                                   map_vars(n.second, depth + 1, on_var));
            } else if constexpr (std::is_same_v<N, node::Pair>) {
                return Term::pair(map_vars(n.first, depth, on_var), map_vars(n.second, depth, on_var));
            } else if constexpr (std::is_same_v<N, node::Fst>) {
                return Term::fst(map_vars(n.pair, depth, on_var));
            } else if constexpr (std::is_same_v<N, node::Snd>) {
                return Term::snd(map_vars(n.pair, depth, on_var));
            } else {
                static_assert(std::is_same_v<N, node::Meta>);
                std::vector<Term> spine;
                spine.reserve(n.spine.size());
                for (const auto& a : n.spine) spine.push_back(map_vars(a, depth, on_var));
                return Term::meta(n.id, std::move(spine));
            }
        },
        t.node().value);
}

template <class F>
bool any_subterm(const Term& t, std::uint32_t depth, const F& pred) {
    if (pred(t, depth)) return true;
    return std::visit(
        [&](const auto& n) -> bool {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, node::Const>) {
                return std::any_of(n.args.begin(), n.args.end(),
                                   [&](const Term& a) { return any_subterm(a, depth, pred); });
            } else if constexpr (std::is_same_v<N, node::Meta>) {
                return std::any_of(n.spine.begin(), n.spine.end(),
                                   [&](const Term& a) { return any_subterm(a, depth, pred); });
            } else if constexpr (std::is_same_v<N, node::Pi>) {
                return any_subterm(n.domain, depth, pred) || any_subterm(n.codomain, depth + 1, pred);
            } else if constexpr (std::is_same_v<N, node::Lambda>) {
                return any_subterm(n.body, depth + 1, pred);
            } else if constexpr (std::is_same_v<N, node::App>) {
                return any_subterm(n.fn, depth, pred) || any_subterm(n.arg, depth, pred);
            } else if constexpr (std::is_same_v<N, node::Sigma>) {
                return any_subterm(n.first, depth, pred) || any_subterm(n.second, depth + 1, pred);
            } else if constexpr (std::is_same_v<N, node::Pair>) {
                return any_subterm(n.first, depth, pred) || any_subterm(n.second, depth, pred);
            } else if constexpr (std::is_same_v<N, node::Fst>) {
                return any_subterm(n.pair, depth, pred);
            } else if constexpr (std::is_same_v<N, node::Snd>) {
                return any_subterm(n.pair, depth, pred);
            } else {
                return false;
            }
        },
        t.node().value);
}

}  // namespace

Term Term::from_node(std::shared_ptr<const TermNode> node) { return Term(std::move(node)); }

Term Term::var(std::uint32_t index) { return make({node::Var{index}}); }
Term Term::constant(std::string name, std::vector<Term> args) {
    return make({node::Const{std::move(name), std::move(args)}});
}
Term Term::universe(int level) { return make({node::Universe{level}}); }
Term Term::pi(std::string hint, Term domain, Term codomain) {
    return make({node::Pi{std::move(hint), std::move(domain), std::move(codomain)}});
}
Term Term::lambda(std::string hint, Term body) { return make({node::Lambda{std::move(hint), std::move(body)}}); }
Term Term::app(Term fn, Term arg) { return make({node::App{std::move(fn), std::move(arg)}}); }
Term Term::sigma(std::string hint, Term first, Term second) {
    return make({node::Sigma{std::move(hint), std::move(first), std::move(second)}});
}
Term Term::pair(Term first, Term second) { return make({node::Pair{std::move(first), std::move(second)}}); }
Term Term::fst(Term pair) { return make({node::Fst{std::move(pair)}}); }
Term Term::snd(Term pair) { return make({node::Snd{std::move(pair)}}); }
Term Term::nat(std::uint64_t value) { return make({node::NatLit{value}}); }
Term Term::meta(std::uint32_t id, std::vector<Term> spine) { return make({node::Meta{id, std::move(spine)}}); }

Term Term::arrow(Term domain, Term codomain) { return pi("_", std::move(domain), shift(codomain, 1, 0)); }

Term shift(const Term& t, std::int64_t by, std::uint32_t cutoff) {
    if (by == 0) return t;
    return map_vars(t, cutoff, [by](std::uint32_t index, std::uint32_t) {
        std::int64_t shifted = static_cast<std::int64_t>(index) + by;
        if (shifted < 0) {
            // A negative index means a scoping bug in the caller.
            std::abort();
        }
        return Term::var(static_cast<std::uint32_t>(shifted));
    });
}

Term subst(const Term& t, const Term& replacement, std::uint32_t index) {
    return map_vars(t, 0, [&](std::uint32_t i, std::uint32_t depth) {
        std::uint32_t free_index = i - depth;
        if (free_index == index) return shift(replacement, depth, 0);
        if (free_index > index) return Term::var(i - 1);
        return Term::var(i);
    });
}

Term instantiate(const Term& t, const std::vector<Term>& env) {
    if (env.empty()) return t;
    const auto n = static_cast<std::uint32_t>(env.size());
    return map_vars(t, 0, [&](std::uint32_t i, std::uint32_t depth) {
        std::uint32_t free_index = i - depth;
        if (free_index < n) return shift(env[free_index], depth, 0);
        return Term::var(i - n);
    });
}

bool alpha_eq(const Term& a, const Term& b) {
    if (a.same_object(b)) return true;
    if (a.node().value.index() != b.node().value.index()) return false;
    return std::visit(
        [&](const auto& x) -> bool {
            using N = std::decay_t<decltype(x)>;
            const auto& y = *b.as<N>();
            if constexpr (std::is_same_v<N, node::Var>) {
                return x.index == y.index;
            } else if constexpr (std::is_same_v<N, node::Const>) {
                if (x.name != y.name || x.args.size() != y.args.size()) return false;
                for (std::size_t i = 0; i < x.args.size(); ++i)
                    if (!alpha_eq(x.args[i], y.args[i])) return false;
                return true;
            } else if constexpr (std::is_same_v<N, node::Universe>) {
                return x.level == y.level;
            } else if constexpr (std::is_same_v<N, node::Pi>) {
                return alpha_eq(x.domain, y.domain) && alpha_eq(x.codomain, y.codomain);
            } else if constexpr (std::is_same_v<N, node::Lambda>) {
                return alpha_eq(x.body, y.body);
            } else if constexpr (std::is_same_v<N, node::App>) {
                return alpha_eq(x.fn, y.fn) && alpha_eq(x.arg, y.arg);
            } else if constexpr (std::is_same_v<N, node::Sigma>) {
                return alpha_eq(x.first, y.first) && alpha_eq(x.second, y.second);
            } else if constexpr (std::is_same_v<N, node::Pair>) {
                return alpha_eq(x.first, y.first) && alpha_eq(x.second, y.second);
            } else if constexpr (std::is_same_v<N, node::Fst>) {
                return alpha_eq(x.pair, y.pair);
            } else if constexpr (std::is_same_v<N, node::Snd>) {
                return alpha_eq(x.pair, y.pair);
            } else if constexpr (std::is_same_v<N, node::NatLit>) {
                return x.value == y.value;
            } else {
                if (x.id != y.id || x.spine.size() != y.spine.size()) return false;
                for (std::size_t i = 0; i < x.spine.size(); ++i)
                    if (!alpha_eq(x.spine[i], y.spine[i])) return false;
                return true;
            }
        },
        a.node().value);
}

std::optional<Term> rename_free(const Term& t,
                                const std::function<std::optional<std::uint32_t>(std::uint32_t)>& f) {
    bool ok = true;
    Term out = map_vars(t, 0, [&](std::uint32_t i, std::uint32_t depth) {
        auto renamed = f(i - depth);
        if (!renamed) {
            ok = false;
            return Term::var(i);
        }
        return Term::var(*renamed + depth);
    });
    if (!ok) return std::nullopt;
    return out;
}

bool occurs_free(const Term& t, std::uint32_t index) {
    return any_subterm(t, 0, [index](const Term& s, std::uint32_t depth) {
        const auto* v = s.as<node::Var>();
        return v && v->index >= depth && v->index - depth == index;
    });
}

std::uint32_t free_var_bound(const Term& t) {
    std::uint32_t bound = 0;
    any_subterm(t, 0, [&bound](const Term& s, std::uint32_t depth) {
        if (const auto* v = s.as<node::Var>(); v && v->index >= depth)
            bound = std::max(bound, v->index - depth + 1);
        return false;
    });
    return bound;
}

bool mentions_meta(const Term& t, std::uint32_t id) {
    return any_subterm(t, 0, [id](const Term& s, std::uint32_t) {
        const auto* m = s.as<node::Meta>();
        return m && m->id == id;
    });
}

Term apply_spine(const Term& fn, const std::vector<Term>& args) {
    if (args.empty()) return fn;
    if (const auto* c = fn.as<node::Const>()) {
        std::vector<Term> spine = c->args;
        spine.insert(spine.end(), args.begin(), args.end());
        return Term::constant(c->name, std::move(spine));
    }
    Term result = fn;
    for (const auto& a : args) result = Term::app(result, a);
    return result;
}

Term canonicalize(const Term& t) {
    return std::visit(
        [&](const auto& n) -> Term {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, node::App>) {
                Term fn = canonicalize(n.fn);
                Term arg = canonicalize(n.arg);
                return apply_spine(fn, {arg});
            } else if constexpr (std::is_same_v<N, node::Const>) {
                std::vector<Term> args;
                for (const auto& a : n.args) args.push_back(canonicalize(a));
                return Term::constant(n.name, std::move(args));
            } else if constexpr (std::is_same_v<N, node::Meta>) {
                std::vector<Term> spine;
                for (const auto& a : n.spine) spine.push_back(canonicalize(a));
                return Term::meta(n.id, std::move(spine));
            } else if constexpr (std::is_same_v<N, node::Pi>) {
                return Term::pi(n.hint, canonicalize(n.domain), canonicalize(n.codomain));
            } else if constexpr (std::is_same_v<N, node::Lambda>) {
                return Term::lambda(n.hint, canonicalize(n.body));
            } else if constexpr (std::is_same_v<N, node::Sigma>) {
                return Term::sigma(n.hint, canonicalize(n.first), canonicalize(n.second));
            } else if constexpr (std::is_same_v<N, node::Pair>) {
                return Term::pair(canonicalize(n.first), canonicalize(n.second));
            } else if constexpr (std::is_same_v<N, node::Fst>) {
                return Term::fst(canonicalize(n.pair));
            } else if constexpr (std::is_same_v<N, node::Snd>) {
                return Term::snd(canonicalize(n.pair));
            } else {
                return t;
            }
        },
        t.node().value);
}

}  // namespace telic
