#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace telic {

struct TermNode;

/// Immutable, shared term of the core calculus. Binders use de Bruijn
/// indices; the name hints stored on binders are only used for printing.
class Term {
public:
    Term() = default;

    static Term var(std::uint32_t index);
    static Term constant(std::string name, std::vector<Term> args = {});
    static Term universe(int level);
    static Term pi(std::string hint, Term domain, Term codomain);
    static Term lambda(std::string hint, Term body);
    static Term app(Term fn, Term arg);
    static Term sigma(std::string hint, Term first, Term second);
    static Term pair(Term first, Term second);
    static Term fst(Term pair);
    static Term snd(Term pair);
    static Term nat(std::uint64_t value);
    static Term meta(std::uint32_t id, std::vector<Term> spine);

    /// Non-dependent arrow; the codomain is written in the outer scope and
    /// shifted under the binder here.
    static Term arrow(Term domain, Term codomain);

    const TermNode& node() const { return *node_; }
    explicit operator bool() const { return node_ != nullptr; }

    template <class T>
    const T* as() const;

    template <class T>
    bool is() const { return as<T>() != nullptr; }

    bool same_object(const Term& other) const { return node_ == other.node_; }

    static Term from_node(std::shared_ptr<const TermNode> node);

private:
    explicit Term(std::shared_ptr<const TermNode> node) : node_(std::move(node)) {}
    std::shared_ptr<const TermNode> node_;
};

namespace node {

struct Var {
    std::uint32_t index;
};

/// A global constant carrying its (possibly partial) argument spine.
struct Const {
    std::string name;
    std::vector<Term> args;
};

struct Universe {
    int level;
};

struct Pi {
    std::string hint;
    Term domain;
    Term codomain;  // binds one variable
};

struct Lambda {
    std::string hint;
    Term body;  // binds one variable
};

struct App {
    Term fn;
    Term arg;
};

struct Sigma {
    std::string hint;
    Term first;
    Term second;  // binds one variable
};

struct Pair {
    Term first;
    Term second;
};

struct Fst {
    Term pair;
};

struct Snd {
    Term pair;
};

struct NatLit {
    std::uint64_t value;
};

/// Metavariable applied to the variables of the context it was created in.
struct Meta {
    std::uint32_t id;
    std::vector<Term> spine;
};

}  // namespace node

struct TermNode {
    std::variant<node::Var, node::Const, node::Universe, node::Pi, node::Lambda, node::App,
                 node::Sigma, node::Pair, node::Fst, node::Snd, node::NatLit, node::Meta>
        value;
};

template <class T>
const T* Term::as() const {
    return node_ ? std::get_if<T>(&node_->value) : nullptr;
}

/// Displace free variables with index >= cutoff by `by`.
Term shift(const Term& t, std::int64_t by, std::uint32_t cutoff = 0);

/// Capture-avoiding substitution of `replacement` for Var(index); free
/// variables above `index` are decremented.
Term subst(const Term& t, const Term& replacement, std::uint32_t index = 0);

/// Simultaneous substitution: free Var(j) becomes env[j] for j < env.size();
/// free variables >= env.size() are lowered by env.size().
Term instantiate(const Term& t, const std::vector<Term>& env);

/// Structural equality modulo name hints.
bool alpha_eq(const Term& a, const Term& b);

/// Rename free variables: Var(i) at binder depth d becomes Var(f(i-d)+d).
/// Returns nullopt if f rejects any free variable.
std::optional<Term> rename_free(const Term& t, const std::function<std::optional<std::uint32_t>(std::uint32_t)>& f);

/// True if Var(index) occurs free in t.
bool occurs_free(const Term& t, std::uint32_t index);

/// Smallest n such that all free variables of t are < n.
std::uint32_t free_var_bound(const Term& t);

/// True if meta `id` occurs anywhere in t.
bool mentions_meta(const Term& t, std::uint32_t id);

/// Rebuild App chains whose head is a constant into constant spines.
Term canonicalize(const Term& t);

/// Apply a function term to arguments, forming a spine when the head is a
/// constant and App nodes otherwise.
Term apply_spine(const Term& fn, const std::vector<Term>& args);

}  // namespace telic
