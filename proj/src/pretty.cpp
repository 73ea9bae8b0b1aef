#include "telic/pretty.hpp"

#include <sstream>

namespace telic {

namespace {

enum Prec { kTop = 0, kInfix = 1, kApp = 2, kAtom = 3 };

class Printer {
public:
    Printer(const Signature* sig, std::vector<std::string> scope, PrettyOptions options)
        : sig_(sig), scope_(std::move(scope)), options_(options) {}

    std::string print(const Term& t, int prec) {
        std::string out;
        bool needs_parens = false;
        std::visit([&](const auto& n) { out = render(n, t, prec, needs_parens); }, t.node().value);
        return needs_parens ? "(" + out + ")" : out;
    }

private:
    std::string fresh(const std::string& hint) {
        std::string base = hint.empty() || hint == "_" ? "x" : hint;
        auto taken = [&](const std::string& s) {
            for (const auto& n : scope_)
                if (n == s) return true;
            return sig_ && sig_->contains(s);
        };
        if (!taken(base)) return base;
        for (int i = 1;; ++i) {
            std::string candidate = base + std::to_string(i);
            if (!taken(candidate)) return candidate;
        }
    }

    std::string under(const std::string& name, const Term& body, int prec) {
        scope_.push_back(name);
        std::string s = print(body, prec);
        scope_.pop_back();
        return s;
    }

    std::string render(const node::Var& n, const Term&, int, bool&) {
        if (n.index < scope_.size()) return scope_[scope_.size() - 1 - n.index];
        return "#" + std::to_string(n.index - scope_.size());
    }

    std::string render(const node::Const& n, const Term&, int prec, bool& parens) {
        const SignatureEntry* entry = sig_ ? sig_->find(n.name) : nullptr;
        std::vector<std::string> shown;
        for (std::size_t i = 0; i < n.args.size(); ++i) {
            bool implicit = entry && entry->is_implicit(i);
            if (implicit && !options_.show_implicits) continue;
            if (implicit)
                shown.push_back("{" + print(n.args[i], kTop) + "}");
            else
                shown.push_back(print(n.args[i], kAtom));
        }
        if (n.name == "⊕" && !options_.show_implicits && shown.size() == 2) {
            std::size_t first = 0;
            while (entry && entry->is_implicit(first)) ++first;
            std::size_t second = first + 1;
            while (entry && entry->is_implicit(second)) ++second;
            parens = prec > kInfix;
            return print(n.args[first], kInfix) + " ⊕ " + print(n.args[second], kApp);
        }
        if (shown.empty()) return n.name;
        parens = prec > kApp;
        std::string out = n.name;
        for (const auto& s : shown) out += " " + s;
        return out;
    }

    std::string render(const node::Universe& n, const Term&, int, bool&) { return n.level == 0 ? "Type" : "Type1"; }

    std::string render(const node::Pi& n, const Term&, int prec, bool& parens) {
        parens = prec > kTop;
        if (!occurs_free(n.codomain, 0)) {
            std::string dom = print(n.domain, kInfix);
            return dom + " -> " + under("_", n.codomain, kTop);
        }
        std::string name = fresh(n.hint);
        std::string dom = print(n.domain, kTop);
        return "(" + name + " : " + dom + ") -> " + under(name, n.codomain, kTop);
    }

    std::string render(const node::Sigma& n, const Term&, int prec, bool& parens) {
        parens = prec > kTop;
        std::string name = fresh(n.hint);
        std::string first = print(n.first, kTop);
        return "Σ (" + name + " : " + first + "). " + under(name, n.second, kTop);
    }

    std::string render(const node::Lambda&, const Term& t, int prec, bool& parens) {
        parens = prec > kTop;
        std::vector<std::string> names;
        Term body = t;
        while (const auto* lam = body.as<node::Lambda>()) {
            std::string name = occurs_free(lam->body, 0) ? fresh(lam->hint) : "_";
            names.push_back(name);
            scope_.push_back(name);
            body = lam->body;
        }
        std::string out = "λ";
        for (std::size_t i = 0; i < names.size(); ++i) out += (i ? " " : "") + names[i];
        out += ". " + print(body, kTop);
        scope_.resize(scope_.size() - names.size());
        return out;
    }

    std::string render(const node::App& n, const Term&, int prec, bool& parens) {
        parens = prec > kApp;
        return print(n.fn, kApp) + " " + print(n.arg, kAtom);
    }

    std::string render(const node::Pair& n, const Term&, int, bool&) {
        std::string out = "(" + print(n.first, kTop);
        Term rest = n.second;
        while (const auto* p = rest.as<node::Pair>()) {
            out += ", " + print(p->first, kTop);
            rest = p->second;
        }
        return out + ", " + print(rest, kTop) + ")";
    }

    std::string render(const node::Fst& n, const Term&, int prec, bool& parens) {
        parens = prec > kApp;
        return "fst " + print(n.pair, kAtom);
    }

    std::string render(const node::Snd& n, const Term&, int prec, bool& parens) {
        parens = prec > kApp;
        return "snd " + print(n.pair, kAtom);
    }

    std::string render(const node::NatLit& n, const Term&, int, bool&) { return std::to_string(n.value); }

    std::string render(const node::Meta& n, const Term&, int, bool&) { return "?" + std::to_string(n.id); }

    const Signature* sig_;
    std::vector<std::string> scope_;
    PrettyOptions options_;
};

}  // namespace

std::string pretty(const Term& t, const Signature* sig, const std::vector<std::string>& scope, PrettyOptions options) {
    Printer p(sig, scope, options);
    return p.print(t, kTop);
}

std::string pretty(const Term& t, const Signature* sig, const Context& ctx, PrettyOptions options) {
    std::vector<std::string> names;
    names.reserve(ctx.size());
    for (const auto& e : ctx.entries()) names.push_back(e.name);
    return pretty(t, sig, names, options);
}

}  // namespace telic
