#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "telic/prelude.hpp"
#include "telic/pretty.hpp"
#include "telic/session.hpp"
#include "telic/typecheck.hpp"

namespace telic::testing {

/// The prelude plus a lexicon, with helpers that elaborate surface text.
class Lexicon {
public:
    explicit Lexicon(std::string_view source = "", bool prelude = true) {
        if (prelude) load_prelude(session_);
        FileReport r = session_.run_source(source, "<lexicon>");
        for (const auto& d : r.decls)
            if (!d.passed) throw std::logic_error("lexicon: " + d.span.to_string() + ": " + d.message);
    }

    Session& session() { return session_; }
    const Environment& env() const { return session_.environment(); }

    /// Elaborate a closed expression; solves its metas by inference.
    struct Inferred {
        Term term;
        Term type;
    };
    Inferred infer(std::string_view expr) {
        MetaStore metas;
        Term t = session_.elaborate(parse_expr(expr), metas);
        TypeChecker tc(env(), metas);
        Term ty = tc.infer(Context{}, t);
        tc.finish();
        return {tc.zonk(t), tc.zonk(ty)};
    }

    /// Closed core term of a type expression, checked to be a type.
    Term type(std::string_view expr) {
        MetaStore metas;
        Term t = session_.elaborate(parse_expr(expr), metas);
        TypeChecker tc(env(), metas);
        tc.check_type(Context{}, t);
        tc.finish();
        return tc.zonk(t);
    }

    std::string nf(std::string_view expr) { return session_.normalize_text(expr); }
    std::string show(const Term& t) { return pretty(t, &env().signature); }

    /// Run declarations on a copy, so the lexicon itself is unchanged.
    FileReport run(std::string_view decls) const {
        Session copy = session_;
        return copy.run_source(decls, "<probe>");
    }

    /// Error class of the first failing declaration, if any.
    std::optional<ErrorClass> error_of(std::string_view decls) const {
        for (const auto& d : run(decls).decls)
            if (!d.passed) return d.error_class;
        return std::nullopt;
    }

    /// Message of the first failing declaration.
    std::string message_of(std::string_view decls) const {
        for (const auto& d : run(decls).decls)
            if (!d.passed) return d.message;
        return "";
    }

    bool passes(std::string_view decls) const {
        FileReport r = run(decls);
        return r.failures() == 0 && !r.decls.empty();
    }

private:
    Session session_;
};

}  // namespace telic::testing
