#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "telic/context.hpp"
#include "telic/meta.hpp"
#include "telic/reduce.hpp"
#include "telic/signature.hpp"
#include "telic/term.hpp"

namespace telic {

/// Bidirectional checker for core terms against a fixed environment. One
/// instance serves one declaration: it owns the fuel budget and shares the
/// declaration's metavariables with the elaborator.
class TypeChecker {
public:
    TypeChecker(const Environment& env, MetaStore& metas, std::uint64_t fuel = kDefaultFuel);

    Term infer(const Context& ctx, const Term& t);
    void check(const Context& ctx, const Term& t, const Term& expected);

    /// Checks that t is a type; returns its universe level.
    int check_type(const Context& ctx, const Term& t);

    /// Definitional equality, solving metavariables in pattern position.
    /// `at_type` is accepted for interface symmetry; η is shape-directed.
    bool convertible(const Context& ctx, const Term& a, const Term& b,
                     const std::optional<Term>& at_type = std::nullopt);

    Term whnf(const Term& t) { return reducer_.whnf(t); }
    Term normalize(const Term& t) { return reducer_.normalize(metas_.zonk(t)); }
    Term zonk(const Term& t) const { return metas_.zonk(t); }

    /// End-of-declaration obligations: every meta solved, and each solution
    /// well-typed at its recorded type.
    void finish();

    std::string show(const Context& ctx, const Term& t);

    const Environment& environment() const { return env_; }
    MetaStore& metas() { return metas_; }
    Reducer& reducer() { return reducer_; }

private:
    bool conv(const Term& a, const Term& b);
    bool conv_whnf(const Term& a, const Term& b);
    bool conv_spines(const std::vector<Term>& a, const std::vector<Term>& b);
    bool try_solve(const Term& flex, const Term& other);
    std::optional<Term> invert(const std::vector<Term>& spine, const Term& rhs, std::uint32_t meta_id);
    Term infer_const(const Context& ctx, const node::Const& c);
    Term apply_type(const Context& ctx, Term fn_type, const Term& arg, const Term& whole);
    [[noreturn]] void mismatch(const Context& ctx, const Term& t, const Term& actual, const Term& expected);

    const Environment& env_;
    MetaStore& metas_;
    Reducer reducer_;
};

}  // namespace telic
