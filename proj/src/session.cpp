#include "telic/session.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <fstream>
#include <sstream>
#include <utility>

#include "telic/declare.hpp"
#include "telic/pretty.hpp"
#include "telic/typecheck.hpp"

namespace telic {

namespace {

constexpr std::array<std::pair<std::string_view, std::string_view>, 9> kAliases{{
    {"SigmaNP", "Σ^NP"},
    {"Sigma^NP", "Σ^NP"},
    {"SigmaEvt", "Σ^Evt"},
    {"Sigma^Evt", "Σ^Evt"},
    {"oplus", "⊕"},
    {"oplusPreservesIA", "⊕PreservesIA"},
    {"SigmaIsCount", "ΣIsCount"},
    {"act_star", "act_⋆"},
    {"und_star", "und_⋆"},
}};

bool within(const Span& outer, const Span& inner) { return outer.contains(inner); }

class Elaborator {
public:
    Elaborator(const Signature& sig, MetaStore& metas) : sig_(sig), metas_(metas) {}

    Term elab(const ExprPtr& e, std::vector<std::string>& scope) {
        switch (e->kind) {
            case Expr::Kind::Ident:
            case Expr::Kind::App: {
                std::vector<std::pair<ExprPtr, bool>> args;
                ExprPtr head = e;
                while (head->kind == Expr::Kind::App) {
                    args.emplace_back(head->children[1], head->implicit);
                    head = head->children[0];
                }
                std::reverse(args.begin(), args.end());
                return elab_app(head, args, scope);
            }
            case Expr::Kind::Nat: return Term::nat(e->value);
            case Expr::Kind::Hole: return metas_.fresh(static_cast<std::uint32_t>(scope.size()), "hole `_`", e->span);
            case Expr::Kind::Universe: return Term::universe(static_cast<int>(e->value));
            case Expr::Kind::Lambda: {
                scope.push_back(e->name);
                Term body = elab(e->children[0], scope);
                scope.pop_back();
                return Term::lambda(e->name, body);
            }
            case Expr::Kind::Pi:
            case Expr::Kind::Sigma: {
                Term dom = elab(e->children[0], scope);
                scope.push_back(e->name);
                Term cod = elab(e->children[1], scope);
                scope.pop_back();
                return e->kind == Expr::Kind::Pi ? Term::pi(e->name, dom, cod) : Term::sigma(e->name, dom, cod);
            }
            case Expr::Kind::Pair: return Term::pair(elab(e->children[0], scope), elab(e->children[1], scope));
            case Expr::Kind::Fst:
            case Expr::Kind::Snd: {
                bool first = e->kind == Expr::Kind::Fst;
                if (e->children.empty()) {
                    Term v = Term::var(0);
                    return Term::lambda("p", first ? Term::fst(v) : Term::snd(v));
                }
                Term p = elab(e->children[0], scope);
                return first ? Term::fst(p) : Term::snd(p);
            }
        }
        return Term{};
    }

private:
    static std::optional<Term> local(const std::string& name, const std::vector<std::string>& scope) {
        for (std::size_t i = scope.size(); i-- > 0;)
            if (scope[i] == name) return Term::var(static_cast<std::uint32_t>(scope.size() - 1 - i));
        return std::nullopt;
    }

    static std::string binder_hint(const SignatureEntry& entry, std::size_t position) {
        Term t = entry.type;
        for (std::size_t i = 0; i < position; ++i) {
            const auto* p = t.as<node::Pi>();
            if (!p) return "#" + std::to_string(position);
            t = p->codomain;
        }
        const auto* p = t.as<node::Pi>();
        return p ? p->hint : "#" + std::to_string(position);
    }

    Term implicit_meta(const SignatureEntry& entry, std::size_t position, const Span& span, std::size_t scope_size) {
        return metas_.fresh(static_cast<std::uint32_t>(scope_size),
                            "implicit argument `" + binder_hint(entry, position) + "` of `" + entry.name + "`", span);
    }

    Term elab_app(const ExprPtr& head, const std::vector<std::pair<ExprPtr, bool>>& args,
                  std::vector<std::string>& scope) {
        const SignatureEntry* entry = nullptr;
        if (head->kind == Expr::Kind::Ident && !local(head->name, scope)) {
            entry = sig_.find(head->name);
            if (!entry) entry = sig_.find(resolve_alias(head->name));
            if (!entry) throw TelicError(ErrorClass::UnknownConstant, "unknown name `" + head->name + "`", head->span);
        }
        if (!entry) {
            Term fn = head->kind == Expr::Kind::Ident ? *local(head->name, scope) : elab(head, scope);
            for (const auto& [arg, implicit] : args) {
                if (implicit)
                    throw TelicError(ErrorClass::NotAFunction,
                                     "implicit argument given to a function without implicit parameters", arg->span);
                fn = apply_spine(fn, {elab(arg, scope)});
            }
            return fn;
        }

        std::vector<Term> spine;
        std::size_t pos = 0;
        Span span = head->span;
        for (const auto& [arg, implicit] : args) {
            if (implicit) {
                if (!entry->is_implicit(pos))
                    throw TelicError(ErrorClass::NotAFunction,
                                     "`" + entry->name + "` has no implicit parameter at this position", arg->span);
            } else {
                while (entry->is_implicit(pos)) spine.push_back(implicit_meta(*entry, pos++, span, scope.size()));
            }
            spine.push_back(elab(arg, scope));
            ++pos;
            span = Span{span.file, span.line, span.col, arg->span.end_line, arg->span.end_col};
        }
        while (entry->is_implicit(pos)) spine.push_back(implicit_meta(*entry, pos++, span, scope.size()));
        return Term::constant(entry->name, std::move(spine));
    }

    const Signature& sig_;
    MetaStore& metas_;
};

// Wrap `body` in binders built from declaration parameters.
ExprPtr wrap(Expr::Kind kind, const std::vector<Binder>& params, ExprPtr body) {
    for (auto it = params.rbegin(); it != params.rend(); ++it) {
        auto e = std::make_shared<Expr>();
        e->kind = kind;
        e->span = body->span;
        e->name = it->name;
        e->implicit = it->implicit;
        if (kind == Expr::Kind::Lambda)
            e->children = {body};
        else
            e->children = {it->type, body};
        body = std::move(e);
    }
    return body;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

std::string resolve_alias(const std::string& name) {
    for (const auto& [alias, target] : kAliases)
        if (name == alias) return std::string(target);
    return name;
}

std::size_t FileReport::passes() const {
    return static_cast<std::size_t>(std::count_if(decls.begin(), decls.end(), [](const auto& d) { return d.passed; }));
}

std::size_t FileReport::failures() const { return decls.size() - passes(); }

Session::Session(SessionOptions options) : options_(options) {}

std::vector<bool> Session::implicit_mask(const std::vector<Binder>& params, const ExprPtr& type) {
    std::vector<bool> mask;
    for (const auto& p : params) mask.push_back(p.implicit);
    for (ExprPtr t = type; t && t->kind == Expr::Kind::Pi; t = t->children[1]) mask.push_back(t->implicit);
    while (!mask.empty() && !mask.back()) mask.pop_back();
    return mask;
}

Term Session::elaborate(const ExprPtr& expr, MetaStore& metas, const std::vector<std::string>& scope) const {
    Elaborator el(env_.signature, metas);
    std::vector<std::string> s = scope;
    return el.elab(expr, s);
}

FileReport Session::run_file(const std::filesystem::path& path) {
    std::string source = read_file(path);
    std::filesystem::path base = path.parent_path();
    if (base.empty()) base = ".";
    import_stack_.push_back(std::filesystem::weakly_canonical(path));
    imported_.insert(import_stack_.back());
    FileReport r = run_source(source, path.string(), base);
    import_stack_.pop_back();
    return r;
}

FileReport Session::run_source(std::string_view source, const std::string& file_label,
                               const std::filesystem::path& base_dir) {
    auto started = std::chrono::steady_clock::now();
    FileReport report;
    report.file = file_label;
    ParseResult parsed = parse_file(source, file_label);
    if (!parsed.errors.empty()) {
        for (const auto& e : parsed.errors) {
            DeclReport d;
            d.span = *e.span();
            d.kind = "parse";
            d.error_class = e.error_class();
            d.message = e.what();
            d.error_span = e.span();
            report.decls.push_back(std::move(d));
        }
    } else {
        for (const auto& decl : parsed.decls) {
            DeclReport d;
            d.span = decl.span;
            d.kind = std::string(to_string(decl.kind));
            d.name = decl.name;
            try {
                process(decl, base_dir, d);
                d.passed = true;
            } catch (const TelicError& e) {
                d.passed = false;
                d.error_class = e.error_class();
                d.message = e.what();
                d.error_span = e.span() && within(decl.span, *e.span()) ? *e.span() : decl.span;
            }
            bool halts = !d.passed && (decl.kind == Decl::Kind::Postulate || decl.kind == Decl::Kind::Primitive ||
                                       decl.kind == Decl::Kind::Def || decl.kind == Decl::Kind::Import);
            report.decls.push_back(std::move(d));
            if (halts) {
                report.halted = true;
                break;
            }
        }
    }
    report.duration_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    return report;
}

void Session::process(const Decl& d, const std::filesystem::path& base_dir, DeclReport& report) {
    const std::uint64_t fuel = options_.fuel;
    MetaStore metas;
    switch (d.kind) {
        case Decl::Kind::Postulate:
        case Decl::Kind::Primitive: {
            Term type = elaborate(wrap(Expr::Kind::Pi, d.params, d.type), metas);
            declare_constant(env_, metas, d.name, type, implicit_mask(d.params, d.type),
                             d.kind == Decl::Kind::Postulate ? EntryKind::Postulate : EntryKind::Primitive, fuel);
            return;
        }
        case Decl::Kind::Def:
        case Decl::Kind::Entail: {
            Term body = elaborate(wrap(Expr::Kind::Lambda, d.params, d.body), metas);
            if (d.type) {
                Term type = elaborate(wrap(Expr::Kind::Pi, d.params, d.type), metas);
                declare_definition(env_, metas, d.name, type, body, implicit_mask(d.params, d.type), fuel);
                return;
            }
            if (!d.params.empty())
                throw TelicError(ErrorClass::CannotInfer, "a definition with parameters needs a type", d.span);
            if (env_.signature.contains(d.name))
                throw TelicError(ErrorClass::DuplicateName, "duplicate name '" + d.name + "'");
            TypeChecker tc(env_, metas, fuel);
            Term type = tc.zonk(tc.infer(Context{}, body));
            declare_definition(env_, metas, d.name, type, body, {}, fuel);
            return;
        }
        case Decl::Kind::Rewrite: {
            Context telescope;
            std::vector<std::string> scope;
            for (const auto& b : d.params) {
                telescope.push(b.name, elaborate(b.type, metas, scope));
                scope.push_back(b.name);
            }
            Term lhs = elaborate(d.body, metas, scope);
            Term rhs = elaborate(d.rhs, metas, scope);
            declare_rewrite(env_, metas, telescope, lhs, rhs, d.span.to_string(), fuel);
            return;
        }
        case Decl::Kind::Check: {
            Term type = elaborate(d.type, metas);
            Term term = elaborate(d.body, metas);
            TypeChecker tc(env_, metas, fuel);
            tc.check_type(Context{}, type);
            tc.check(Context{}, term, type);
            tc.finish();
            return;
        }
        case Decl::Kind::Norm: {
            Term term = elaborate(d.body, metas);
            TypeChecker tc(env_, metas, fuel);
            tc.infer(Context{}, term);
            tc.finish();
            Term nf = tc.normalize(term);
            report.normal_form = pretty(nf, &env_.signature);
            if (!d.rhs) return;
            MetaStore expected_metas;
            Term expected = elaborate(d.rhs, expected_metas);
            TypeChecker etc(env_, expected_metas, fuel);
            etc.infer(Context{}, expected);
            etc.finish();
            // Written text is compared as is; only inferred implicit arguments
            // are brought to normal form, since the user never wrote them.
            for (std::uint32_t id = 0; id < expected_metas.size(); ++id) {
                auto& info = expected_metas.info(id);
                if (info.solution) info.solution = etc.normalize(*info.solution);
            }
            expected = etc.zonk(expected);
            if (!alpha_eq(nf, expected))
                throw TelicError(ErrorClass::TypeMismatch, "normal form `" + report.normal_form +
                                                               "` differs from expected `" +
                                                               pretty(expected, &env_.signature) + "`");
            return;
        }
        case Decl::Kind::Fail: {
            Environment snapshot = env_;
            DeclReport inner;
            std::optional<TelicError> caught;
            try {
                process(*d.inner, base_dir, inner);
            } catch (const TelicError& e) {
                caught = e;
            }
            env_ = std::move(snapshot);
            if (!caught)
                throw TelicError(d.expected_error, "expected " + std::string(to_string(d.expected_error)) +
                                                       " but the declaration was accepted");
            if (caught->error_class() != d.expected_error)
                throw TelicError(caught->error_class(), "expected " + std::string(to_string(d.expected_error)) +
                                                            " but got " +
                                                            std::string(to_string(caught->error_class())) + ": " +
                                                            caught->what(),
                                 caught->span());
            report.message = caught->what();
            return;
        }
        case Decl::Kind::Import: import_file(d, base_dir); return;
    }
}

void Session::import_file(const Decl& d, const std::filesystem::path& base_dir) {
    std::filesystem::path path = base_dir / d.path;
    std::filesystem::path canonical = std::filesystem::weakly_canonical(path);
    if (std::find(import_stack_.begin(), import_stack_.end(), canonical) != import_stack_.end())
        throw TelicError(ErrorClass::ImportError, "import cycle through " + d.path, d.span);
    if (imported_.count(canonical)) return;
    FileReport r;
    try {
        r = run_file(path);
    } catch (const IoError& e) {
        throw TelicError(ErrorClass::ImportError, e.what(), d.span);
    }
    if (r.failures() > 0) {
        const auto& first = *std::find_if(r.decls.begin(), r.decls.end(), [](const auto& x) { return !x.passed; });
        throw TelicError(ErrorClass::ImportError,
                         "imported file " + d.path + " has " + std::to_string(r.failures()) +
                             " failing declaration(s); first at " + first.span.to_string() + ": " + first.message,
                         d.span);
    }
}

Term Session::normalize_expr(const ExprPtr& expr) {
    MetaStore metas;
    Term term = elaborate(expr, metas);
    TypeChecker tc(env_, metas, options_.fuel);
    tc.infer(Context{}, term);
    tc.finish();
    return tc.normalize(term);
}

std::string Session::normalize_text(std::string_view text) {
    return pretty(normalize_expr(parse_expr(text)), &env_.signature);
}

}  // namespace telic
