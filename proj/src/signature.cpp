#include "telic/signature.hpp"

#include <algorithm>

#include "telic/error.hpp"

namespace telic {

std::string_view to_string(EntryKind kind) {
    switch (kind) {
        case EntryKind::Postulate: return "postulate";
        case EntryKind::Definition: return "definition";
        case EntryKind::Primitive: return "primitive";
    }
    return "?";
}

void Signature::add(SignatureEntry entry) {
    if (entries_.count(entry.name)) throw TelicError(ErrorClass::DuplicateName, "duplicate name '" + entry.name + "'");
    order_.push_back(entry.name);
    std::string key = entry.name;
    entries_.emplace(std::move(key), std::move(entry));
}

bool Signature::erase(const std::string& name) {
    if (!entries_.erase(name)) return false;
    order_.erase(std::remove(order_.begin(), order_.end(), name), order_.end());
    return true;
}

const SignatureEntry* Signature::find(const std::string& name) const {
    auto it = entries_.find(name);
    return it == entries_.end() ? nullptr : &it->second;
}

void RuleSet::add(RewriteRule rule) {
    by_head_[rule.head].push_back(rules_.size());
    rules_.push_back(std::move(rule));
}

std::vector<const RewriteRule*> RuleSet::for_head(const std::string& head) const {
    std::vector<const RewriteRule*> out;
    auto it = by_head_.find(head);
    if (it == by_head_.end()) return out;
    out.reserve(it->second.size());
    for (auto i : it->second) out.push_back(&rules_[i]);
    return out;
}

}  // namespace telic
