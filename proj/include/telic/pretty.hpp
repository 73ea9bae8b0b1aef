#pragma once

#include <string>
#include <vector>

#include "telic/context.hpp"
#include "telic/signature.hpp"
#include "telic/term.hpp"

namespace telic {

struct PrettyOptions {
    bool show_implicits = false;  // print masked arguments as `{a}`
};

/// Render a term in surface syntax. `scope` names the free variables, outermost
/// first. Implicit arguments of constants are hidden using `sig`'s masks.
/// Bound names avoid capturing scope names and signature constants.
std::string pretty(const Term& t, const Signature* sig = nullptr, const std::vector<std::string>& scope = {},
                   PrettyOptions options = {});

std::string pretty(const Term& t, const Signature* sig, const Context& ctx, PrettyOptions options = {});

}  // namespace telic
