#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "telic/context.hpp"
#include "telic/term.hpp"

namespace telic {

enum class EntryKind { Postulate, Definition, Primitive };

std::string_view to_string(EntryKind kind);

/// A globally named constant. `type` is closed; `body` is present iff the
/// entry is a definition. `implicit_mask[i]` marks the i-th Π argument as
/// one the elaborator fills in with a metavariable.
struct SignatureEntry {
    std::string name;
    EntryKind kind = EntryKind::Postulate;
    Term type;
    std::optional<Term> body;
    std::vector<bool> implicit_mask;

    bool is_implicit(std::size_t arg) const { return arg < implicit_mask.size() && implicit_mask[arg]; }
};

class Signature {
public:
    /// Throws TelicError(DuplicateName) if the name is taken.
    void add(SignatureEntry entry);
    bool erase(const std::string& name);

    const SignatureEntry* find(const std::string& name) const;
    bool contains(const std::string& name) const { return find(name) != nullptr; }

    /// Names in declaration order.
    const std::vector<std::string>& names() const { return order_; }
    std::size_t size() const { return order_.size(); }

private:
    std::map<std::string, SignatureEntry, std::less<>> entries_;
    std::vector<std::string> order_;
};

/// Directed equation `head lhs_args ↦ rhs`. Patterns and rhs live in the
/// context `pattern_telescope`; pattern variable i (telescope entry i) is
/// Var(n-1-i) at binder depth 0.
struct RewriteRule {
    std::string head;
    std::vector<Term> lhs_args;
    Term rhs;
    Context pattern_telescope;
    std::string label;

    Term lhs() const { return Term::constant(head, lhs_args); }
};

/// Declared rewrite rules in declaration order, indexed by head constant.
class RuleSet {
public:
    void add(RewriteRule rule);
    const std::vector<RewriteRule>& all() const { return rules_; }
    std::vector<const RewriteRule*> for_head(const std::string& head) const;
    std::size_t size() const { return rules_.size(); }

private:
    std::vector<RewriteRule> rules_;
    std::map<std::string, std::vector<std::size_t>, std::less<>> by_head_;
};

/// Signature together with its rewrite rules.
struct Environment {
    Signature signature;
    RuleSet rules;
};

}  // namespace telic
