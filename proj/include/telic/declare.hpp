#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "telic/context.hpp"
#include "telic/meta.hpp"
#include "telic/reduce.hpp"
#include "telic/signature.hpp"
#include "telic/term.hpp"

namespace telic {

/// Type-check and add a postulate or primitive. `metas` holds the
/// metavariables the elaborator created for this declaration.
void declare_constant(Environment& env, MetaStore& metas, const std::string& name, const Term& type,
                      std::vector<bool> implicit_mask, EntryKind kind, std::uint64_t fuel = kDefaultFuel);

void declare_definition(Environment& env, MetaStore& metas, const std::string& name, const Term& type,
                        const Term& body, std::vector<bool> implicit_mask, std::uint64_t fuel = kDefaultFuel);

/// Validate and append a rewrite rule `lhs ↦ rhs` over `telescope`: the head
/// must be a postulate or primitive, explicit pattern positions must be
/// linear first-order patterns, every telescope variable must occur in the
/// lhs, and the rhs must check against the lhs's type.
void declare_rewrite(Environment& env, MetaStore& metas, const Context& telescope, const Term& lhs, const Term& rhs,
                     const std::string& label, std::uint64_t fuel = kDefaultFuel);

}  // namespace telic
