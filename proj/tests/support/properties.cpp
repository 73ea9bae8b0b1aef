#include "properties.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "term_gen.hpp"
#include "telic/pretty.hpp"
#include "telic/syntax.hpp"
#include "telic/typecheck.hpp"

namespace telic::testing {

namespace {

constexpr int kDepth = 3;

class Recorder {
public:
    explicit Recorder(std::string name) { result_.name = std::move(name); }

    // Runs one sample; a thrown error counts as a failure.
    void sample(const std::function<bool(std::string&)>& body) {
        ++result_.samples;
        std::string why;
        bool ok = false;
        try {
            ok = body(why);
        } catch (const std::exception& e) {
            why += std::string(why.empty() ? "" : ": ") + "raised " + e.what();
        }
        if (!ok && result_.failures++ == 0) result_.first_failure = why;
    }

    PropertyResult result() const { return result_; }

private:
    PropertyResult result_;
};

std::string show(const Environment& env, const Context& ctx, const Term& t) {
    return pretty(t, &env.signature, ctx, PrettyOptions{true});
}

// A term convertible with t by one β or projection step, whatever t is.
Term expand(const Term& t, TermGen& gen) {
    Term junk = Term::nat(gen.rng()() % 7);
    switch (gen.rng()() % 3) {
        case 0: return Term::app(Term::lambda("_", shift(t, 1)), junk);
        case 1: return Term::fst(Term::pair(t, junk));
        default: return Term::snd(Term::pair(junk, t));
    }
}

bool conv(const Environment& env, const Context& ctx, const Term& a, const Term& b) {
    MetaStore metas;
    TypeChecker tc(env, metas);
    return tc.convertible(ctx, a, b);
}

// Why t is not in normal form, or empty: no β-redex, no projection of a
// pair, no firing rewrite, and numerals only as literals.
std::string normal_form_violation(const Environment& env, const Term& t) {
    if (const auto* a = t.as<node::App>()) {
        if (a->fn.is<node::Lambda>()) return "β-redex";
        std::string w = normal_form_violation(env, a->fn);
        return w.empty() ? normal_form_violation(env, a->arg) : w;
    }
    if (const auto* f = t.as<node::Fst>())
        return f->pair.is<node::Pair>() ? "fst of a pair" : normal_form_violation(env, f->pair);
    if (const auto* s = t.as<node::Snd>())
        return s->pair.is<node::Pair>() ? "snd of a pair" : normal_form_violation(env, s->pair);
    if (const auto* c = t.as<node::Const>()) {
        if (c->name == "zero" || ((c->name == "suc" || c->name == "plus") &&
                                  std::all_of(c->args.begin(), c->args.end(),
                                              [](const Term& x) { return x.is<node::NatLit>(); }) &&
                                  c->args.size() == (c->name == "suc" ? 1u : 2u)))
            return "numeral not folded to a literal";
        Reducer red(env);
        if (red.fire_rules(*c)) return "rewrite redex at " + c->name;
        for (const auto& x : c->args)
            if (auto w = normal_form_violation(env, x); !w.empty()) return w;
        return "";
    }
    if (const auto* p = t.as<node::Pi>()) {
        std::string w = normal_form_violation(env, p->domain);
        return w.empty() ? normal_form_violation(env, p->codomain) : w;
    }
    if (const auto* s = t.as<node::Sigma>()) {
        std::string w = normal_form_violation(env, s->first);
        return w.empty() ? normal_form_violation(env, s->second) : w;
    }
    if (const auto* p = t.as<node::Pair>()) {
        std::string w = normal_form_violation(env, p->first);
        return w.empty() ? normal_form_violation(env, p->second) : w;
    }
    if (const auto* l = t.as<node::Lambda>()) return normal_form_violation(env, l->body);
    return "";
}

}  // namespace

std::vector<std::string> kernel_property_names() {
    return {"generated terms are well typed", "normalize is idempotent", "shift then subst cancels",
            "convertible is reflexive", "convertible is symmetric", "convertible is transitive",
            "subject reduction of whnf", "eta for pi", "eta for sigma", "oplus index arithmetic"};
}

PropertyResult run_kernel_property(std::size_t which, std::uint64_t seed, std::size_t samples) {
    const Environment& env = property_session().environment();
    const Context base = property_context();
    // Each property draws from its own stream so results do not depend on
    // which other properties ran.
    TermGen gen(env, seed + which);
    switch (which) {
    case 0: {
        Recorder r("generated terms are well typed");
        for (std::size_t i = 0; i < samples; ++i) {
            Sample s = gen.sample(base, kDepth);
            r.sample([&](std::string& why) {
                why = show(env, s.ctx, s.term) + " : " + show(env, s.ctx, s.type);
                MetaStore metas;
                TypeChecker tc(env, metas);
                tc.check_type(s.ctx, s.type);
                tc.check(s.ctx, s.term, s.type);
                return true;
            });
        }
        return r.result();
    }
    case 1: {
        Recorder r("normalize is idempotent");
        for (std::size_t i = 0; i < samples; ++i) {
            Sample s = gen.sample(base, kDepth);
            r.sample([&](std::string& why) {
                Reducer red(env);
                Term once = red.normalize(s.term);
                Term twice = red.normalize(once);
                why = show(env, s.ctx, once) + " renormalizes to " + show(env, s.ctx, twice);
                if (!alpha_eq(once, twice)) return false;
                why = normal_form_violation(env, once);
                if (!why.empty()) why += " in " + show(env, s.ctx, once);
                return why.empty();
            });
        }
        return r.result();
    }
    case 2: {
        Recorder r("shift then subst cancels");
        for (std::size_t i = 0; i < samples; ++i) {
            Sample s = gen.sample(base, kDepth);
            Sample u = gen.sample(base, 1);
            auto cutoff = static_cast<std::uint32_t>(gen.rng()() % 4);
            r.sample([&](std::string& why) {
                why = show(env, s.ctx, s.term);
                return alpha_eq(subst(shift(s.term, 1, 0), u.term, 0), s.term) &&
                       alpha_eq(shift(s.term, 0, cutoff), s.term);
            });
        }
        return r.result();
    }
    case 3: {
        Recorder r("convertible is reflexive");
        for (std::size_t i = 0; i < samples; ++i) {
            Sample s = gen.sample(base, kDepth);
            r.sample([&](std::string& why) {
                why = show(env, s.ctx, s.term);
                // A structurally fresh copy so the alpha_eq shortcut does not decide it.
                return conv(env, s.ctx, s.term, expand(s.term, gen)) && conv(env, s.ctx, s.term, s.term);
            });
        }
        return r.result();
    }
    case 4: {
        Recorder r("convertible is symmetric");
        for (std::size_t i = 0; i < samples; ++i) {
            Sample s = gen.sample(base, kDepth);
            Term other = i % 2 == 0 ? gen.sample_at(base, s.type, kDepth).term : Reducer(env).normalize(s.term);
            r.sample([&](std::string& why) {
                why = show(env, s.ctx, s.term) + " vs " + show(env, s.ctx, other);
                return conv(env, s.ctx, s.term, other) == conv(env, s.ctx, other, s.term);
            });
        }
        return r.result();
    }
    case 5: {
        Recorder r("convertible is transitive");
        for (std::size_t i = 0; i < samples; ++i) {
            Sample s = gen.sample(base, kDepth);
            Term a = s.term, b, c;
            if (i % 2 == 0) {
                // Premises hold by construction.
                b = Reducer(env).normalize(a);
                c = expand(b, gen);
            } else {
                b = gen.sample_at(base, s.type, kDepth).term;
                c = gen.sample_at(base, s.type, kDepth).term;
            }
            r.sample([&](std::string& why) {
                why = show(env, s.ctx, a) + " / " + show(env, s.ctx, b) + " / " + show(env, s.ctx, c);
                bool ab = conv(env, s.ctx, a, b), bc = conv(env, s.ctx, b, c);
                if (i % 2 == 0 && !(ab && bc)) return false;
                return !(ab && bc) || conv(env, s.ctx, a, c);
            });
        }
        return r.result();
    }
    case 6: {
        Recorder r("subject reduction of whnf");
        for (std::size_t i = 0; i < samples; ++i) {
            Sample s = gen.sample(base, kDepth);
            r.sample([&](std::string& why) {
                MetaStore metas;
                TypeChecker tc(env, metas);
                Term w = tc.whnf(s.term);
                why = show(env, s.ctx, s.term) + " ~> " + show(env, s.ctx, w);
                tc.check(s.ctx, w, s.type);
                // Where both sides infer, the inferred types agree.
                std::optional<Term> before, after;
                try {
                    before = tc.infer(s.ctx, s.term);
                    after = tc.infer(s.ctx, w);
                } catch (const TelicError& e) {
                    if (e.error_class() != ErrorClass::CannotInfer) throw;
                }
                return !before || !after || tc.convertible(s.ctx, *before, *after);
            });
        }
        return r.result();
    }
    case 7: {
        Recorder r("eta for pi");
        for (std::size_t i = 0; i < samples; ++i) {
            Sample s = gen.sample_at(base, gen.pi_type(base, 2), kDepth);
            r.sample([&](std::string& why) {
                Term eta = Term::lambda("x", apply_spine(shift(s.term, 1), {Term::var(0)}));
                why = show(env, s.ctx, s.term);
                return conv(env, s.ctx, s.term, eta) && conv(env, s.ctx, eta, s.term);
            });
        }
        return r.result();
    }
    case 8: {
        Recorder r("eta for sigma");
        for (std::size_t i = 0; i < samples; ++i) {
            Sample s = gen.sample_at(base, gen.sigma_type(base, 2), kDepth);
            r.sample([&](std::string& why) {
                Term eta = Term::pair(Term::fst(s.term), Term::snd(s.term));
                why = show(env, s.ctx, s.term);
                return conv(env, s.ctx, s.term, eta) && conv(env, s.ctx, eta, s.term);
            });
        }
        return r.result();
    }
    case 9: {
        // Exhaustive over m, n <= 20; the index must come out as the literal m + n.
        Recorder r("oplus index arithmetic");
        const Session& session = property_session();
        ExprPtr sum = parse_expr("x ⊕ y");
        auto amount_type = [](std::uint64_t k) {
            return Term::constant("El_NP", {Term::constant("B"),
                                            Term::constant("AmountOf", {Term::constant("human"),
                                                                        Term::constant("quantity"),
                                                                        Term::constant("nu"), Term::nat(k)})});
        };
        for (std::uint64_t m = 0; m <= 20; ++m) {
            for (std::uint64_t n = 0; n <= 20; ++n) {
                r.sample([&](std::string& why) {
                    why = "m = " + std::to_string(m) + ", n = " + std::to_string(n);
                    Context ctx;
                    ctx.push("x", amount_type(m));
                    ctx.push("y", shift(amount_type(n), 1));
                    Term expected = amount_type(m + n);

                    MetaStore metas;
                    TypeChecker tc(env, metas);
                    Term elaborated = session.elaborate(sum, metas, {"x", "y"});
                    Term ty = tc.infer(ctx, elaborated);
                    tc.finish();
                    Term nf = tc.normalize(ty);

                    Reducer red(env);
                    Term index = red.normalize(Term::constant("plus", {Term::nat(m), Term::nat(n)}));
                    const auto* lit = index.as<node::NatLit>();
                    return alpha_eq(nf, expected) && lit && lit->value == m + n;
                });
            }
        }
        return r.result();
    }
    default:
        throw std::out_of_range("no kernel property " + std::to_string(which));
    }
}

std::vector<PropertyResult> run_kernel_properties(std::uint64_t seed, std::size_t samples) {
    std::vector<PropertyResult> out;
    for (std::size_t i = 0; i < kernel_property_names().size(); ++i) out.push_back(run_kernel_property(i, seed, samples));
    return out;
}

}  // namespace telic::testing
