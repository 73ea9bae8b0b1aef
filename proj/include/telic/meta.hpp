#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "telic/context.hpp"
#include "telic/error.hpp"
#include "telic/term.hpp"

namespace telic {

/// Metavariables of one declaration. A meta is created in a scope of k
/// variables and always occurs applied to a spine of k terms; its type and
/// solution live in that scope. The scope's types become known when the
/// checker first meets the meta at its identity spine.
class MetaStore {
public:
    struct Info {
        std::uint32_t scope_size = 0;
        std::optional<Context> context;
        std::optional<Term> type;
        std::optional<Term> solution;
        std::string origin;  // e.g. "implicit argument 1 of El_NP"
        std::optional<Span> span;
    };

    /// Fresh meta over `scope_size` variables; returns `?id` applied to the
    /// identity spine of that scope.
    Term fresh(std::uint32_t scope_size, std::string origin, std::optional<Span> span = std::nullopt);

    const Info& info(std::uint32_t id) const { return metas_.at(id); }
    Info& info(std::uint32_t id) { return metas_.at(id); }
    std::size_t size() const { return metas_.size(); }

    bool is_solved(std::uint32_t id) const { return metas_.at(id).solution.has_value(); }

    /// Value of the solved meta `m` at its spine.
    std::optional<Term> value_of(const node::Meta& m) const;
    /// Recorded type of `m` at its spine, if known.
    std::optional<Term> type_of(const node::Meta& m) const;

    std::vector<std::uint32_t> unsolved() const;

    /// Replace every solved meta in t by its value, recursively.
    Term zonk(const Term& t) const;

private:
    std::vector<Info> metas_;
};

/// Environment mapping the meta's home context onto the spine: home entry i
/// (Var(k-1-i) at home) becomes spine[i].
std::vector<Term> spine_env(const std::vector<Term>& spine);

}  // namespace telic
