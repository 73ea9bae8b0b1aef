#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "telic/meta.hpp"
#include "telic/signature.hpp"
#include "telic/term.hpp"

namespace telic {

inline constexpr std::uint64_t kDefaultFuel = 100000;

/// Weak-head and full normalization over a signature and its rewrite rules.
/// Every reduction step consumes one unit of fuel; running out raises
/// TelicError(FuelExhausted).
class Reducer {
public:
    Reducer(const Environment& env, const MetaStore* metas = nullptr, std::uint64_t fuel = kDefaultFuel);

    /// Weak-head normal form, unfolding every definition in head position.
    Term whnf(const Term& t);

    /// Deep normal form for display and goldens. Unapplied nullary
    /// definitions stay folded unless unfolding them exposes a redex.
    Term normalize(const Term& t);

    /// Try every rule for the head of `c`, earliest declared first.
    std::optional<Term> fire_rules(const node::Const& c);

    /// First-order match of a rule's lhs against `c`'s spine. Returns the
    /// instantiation environment (env[j] is the value of Var(j) in the rule's
    /// telescope) on success.
    std::optional<std::vector<Term>> match(const RewriteRule& rule, const node::Const& c);

    std::uint64_t fuel_left() const { return fuel_; }
    std::uint64_t steps() const { return steps_; }

private:
    struct Pending {
        Term pattern;
        Term term;
    };

    Term whnf_impl(Term t, bool unfold_nullary);
    std::optional<Term> step_const(const node::Const& c, bool unfold_nullary);
    std::optional<Term> primitive_step(const node::Const& c);
    bool match_into(const Term& pattern, const Term& term, std::vector<std::optional<Term>>& env,
                    std::vector<Pending>* deferred);
    void tick();

    const Environment& env_;
    const MetaStore* metas_;
    std::uint64_t fuel_;
    std::uint64_t steps_ = 0;
};

}  // namespace telic
