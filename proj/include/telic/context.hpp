#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "telic/term.hpp"

namespace telic {

/// Ordered list of typed binders. Entry i's type lives in the prefix of
/// entries [0, i).
class Context {
public:
    struct Entry {
        std::string name;
        Term type;
    };

    Context() = default;
    explicit Context(std::vector<Entry> entries) : entries_(std::move(entries)) {}

    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    /// Type of Var(index), weakened into the full context.
    Term type_of(std::uint32_t index) const {
        const auto& e = entries_[entries_.size() - 1 - index];
        return shift(e.type, static_cast<std::int64_t>(index) + 1);
    }

    const std::string& name_of(std::uint32_t index) const { return entries_[entries_.size() - 1 - index].name; }

    Context extended(std::string name, Term type) const {
        Context c = *this;
        c.entries_.push_back({std::move(name), std::move(type)});
        return c;
    }

    void push(std::string name, Term type) { entries_.push_back({std::move(name), std::move(type)}); }
    void pop() { entries_.pop_back(); }

    const std::vector<Entry>& entries() const { return entries_; }

    /// Identity spine: Var(n-1), ..., Var(0); entry i maps to Var(n-1-i).
    std::vector<Term> identity_spine() const {
        std::vector<Term> spine;
        spine.reserve(entries_.size());
        for (std::size_t i = 0; i < entries_.size(); ++i)
            spine.push_back(Term::var(static_cast<std::uint32_t>(entries_.size() - 1 - i)));
        return spine;
    }

private:
    std::vector<Entry> entries_;
};

}  // namespace telic
