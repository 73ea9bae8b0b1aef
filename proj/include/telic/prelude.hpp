#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "telic/session.hpp"

namespace telic {

/// Text of the prelude compiled into the binary.
std::string_view embedded_prelude();

/// Prelude text in effect: the file named by TELIC_PRELUDE if set, else the
/// embedded copy. Throws IoError if the override cannot be read.
std::string prelude_source();

/// Label used for prelude spans in diagnostics.
inline constexpr std::string_view kPreludeLabel = "<prelude>";

/// Process the prelude into `session`. Any failing entry is fatal: throws the
/// first entry's error with the entry named in the message.
FileReport load_prelude(Session& session);
FileReport load_prelude(Session& session, std::string_view source);

struct PreludeCheckEntry {
    std::string name;  // constant name, or the rule label for rewrites
    std::string what;  // "declare", "retype", "rewrite", "probe"
    bool passed = false;
    std::string message;
};

struct PreludeCheck {
    std::vector<PreludeCheckEntry> entries;
    std::size_t constants = 0;
    std::size_t rules = 0;
    bool passed() const;
};

/// Loads the prelude into a fresh session, re-checks every entry's type (and
/// body), fires each rewrite on a synthetic closed instance and checks that
/// the result keeps the type, and probes ⊕ at m = n = 1. Never throws for a
/// failing entry; failures are recorded.
PreludeCheck prelude_self_check();
PreludeCheck prelude_self_check(std::string_view source);

}  // namespace telic
