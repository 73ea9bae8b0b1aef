#include <algorithm>
#include <utility>

#include "telic/syntax.hpp"

namespace telic {

namespace {

Span join(const Span& a, const Span& b) { return Span{a.file, a.line, a.col, b.end_line, b.end_col}; }

ExprPtr node(Expr::Kind kind, Span span, std::vector<ExprPtr> children = {}, std::string name = {}) {
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->span = std::move(span);
    e->children = std::move(children);
    e->name = std::move(name);
    return e;
}

ExprPtr ident(std::string name, Span span) { return node(Expr::Kind::Ident, std::move(span), {}, std::move(name)); }

ExprPtr app(ExprPtr fn, ExprPtr arg, bool implicit = false) {
    Span s = join(fn->span, arg->span);
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::App;
    e->span = s;
    e->implicit = implicit;
    e->children = {std::move(fn), std::move(arg)};
    return e;
}

ExprPtr binder_node(Expr::Kind kind, const Binder& b, ExprPtr body, const Span& start) {
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->span = join(start, body->span);
    e->name = b.name;
    e->implicit = b.implicit;
    e->children = {b.type, std::move(body)};
    return e;
}

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    ParseResult file() {
        ParseResult out;
        while (!at(Tok::End)) {
            std::size_t start = pos_;
            try {
                if (!is_declaration_keyword(peek().kind)) fail_expected("a declaration keyword");
                auto decls = declaration();
                for (auto& d : decls) out.decls.push_back(std::move(d));
            } catch (const TelicError& e) {
                out.errors.push_back(e);
                if (pos_ == start) ++pos_;
                while (!at(Tok::End) && !is_declaration_keyword(peek().kind)) ++pos_;
            }
        }
        return out;
    }

    ExprPtr single_expr() {
        ExprPtr e = expr();
        if (!at(Tok::End)) fail_expected("end of expression");
        return e;
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
        return toks_[i];
    }
    bool at(Tok k) const { return peek().kind == k; }
    const Token& previous() const { return toks_[pos_ == 0 ? 0 : pos_ - 1]; }

    const Token& advance() {
        const Token& t = toks_[pos_];
        if (pos_ + 1 < toks_.size()) ++pos_;
        return t;
    }

    bool accept(Tok k) {
        if (!at(k)) return false;
        advance();
        return true;
    }

    [[noreturn]] void fail_expected(const std::string& what) const {
        const Token& t = peek();
        std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
        Span at = t.span;
        // Input that stops short is reported where the line ends, not at the next declaration.
        if (pos_ > 0 && (t.kind == Tok::End || t.span.line > previous().span.end_line)) {
            const Span& p = previous().span;
            at = Span{p.file, p.end_line, p.end_col, p.end_line, p.end_col};
        }
        throw TelicError(ErrorClass::ParseError, "expected " + what + ", found " + found, at);
    }

    const Token& expect(Tok k) {
        if (!at(k)) fail_expected(std::string(to_string(k)));
        return advance();
    }

    std::string binder_name() {
        if (at(Tok::Underscore)) {
            advance();
            return "_";
        }
        if (!at(Tok::Ident)) fail_expected("a binder name");
        return advance().text;
    }

    // ---- declarations ------------------------------------------------------

    std::vector<Decl> declaration() {
        const Token& kw = advance();
        Decl d;
        d.span = kw.span;
        switch (kw.kind) {
            case Tok::KwPostulate:
            case Tok::KwPrimitive: {
                d.kind = kw.kind == Tok::KwPostulate ? Decl::Kind::Postulate : Decl::Kind::Primitive;
                std::vector<std::string> names;
                names.push_back(expect(Tok::Ident).text);
                while (at(Tok::Ident)) names.push_back(advance().text);
                d.params = binder_groups(false);
                expect(Tok::Colon);
                d.type = expr();
                d.span = join(kw.span, previous().span);
                std::vector<Decl> out;
                for (auto& n : names) {
                    Decl copy = d;
                    copy.name = n;
                    out.push_back(std::move(copy));
                }
                return out;
            }
            case Tok::KwDef:
            case Tok::KwEntail:
                d.kind = kw.kind == Tok::KwDef ? Decl::Kind::Def : Decl::Kind::Entail;
                d.name = expect(Tok::Ident).text;
                d.params = binder_groups(false);
                if (d.kind == Decl::Kind::Entail || at(Tok::Colon)) {
                    expect(Tok::Colon);
                    d.type = expr();
                }
                expect(Tok::Equals);
                d.body = expr();
                break;
            case Tok::KwRewrite:
                d.kind = Decl::Kind::Rewrite;
                d.params = binder_groups(false);
                expect(Tok::Colon);
                d.body = expr();
                expect(Tok::Equals);
                d.rhs = expr();
                break;
            case Tok::KwCheck:
                d.kind = Decl::Kind::Check;
                d.body = expr();
                expect(Tok::Colon);
                d.type = expr();
                break;
            case Tok::KwNorm:
                d.kind = Decl::Kind::Norm;
                d.body = expr();
                if (accept(Tok::Equals)) d.rhs = expr();
                break;
            case Tok::KwImport:
                d.kind = Decl::Kind::Import;
                d.path = expect(Tok::String).text;
                break;
            case Tok::KwFail: {
                d.kind = Decl::Kind::Fail;
                const Token& cls = peek();
                if (!at(Tok::Ident)) fail_expected("an error class name");
                auto parsed = error_class_from_string(cls.text);
                if (!parsed)
                    throw TelicError(ErrorClass::ParseError, "unknown error class '" + cls.text + "'", cls.span);
                advance();
                d.expected_error = *parsed;
                if (!is_declaration_keyword(peek().kind) || at(Tok::KwFail) || at(Tok::KwImport))
                    fail_expected("a declaration to run");
                auto inner = declaration();
                if (inner.size() != 1)
                    throw TelicError(ErrorClass::ParseError, "a failing declaration must introduce one name",
                                     inner.front().span);
                d.inner = std::make_shared<const Decl>(std::move(inner.front()));
                break;
            }
            default: fail_expected("a declaration keyword");
        }
        d.span = join(kw.span, previous().span);
        return {std::move(d)};
    }

    bool binder_group_ahead() const {
        if (peek().kind == Tok::LBrace) return true;
        if (peek().kind != Tok::LParen) return false;
        std::size_t i = 1;
        while (peek(i).kind == Tok::Ident || peek(i).kind == Tok::Underscore) ++i;
        return i > 1 && peek(i).kind == Tok::Colon;
    }

    // Zero or more `(x y : A)` / `{x : A}` groups, flattened.
    std::vector<Binder> binder_groups(bool require_one) {
        std::vector<Binder> out;
        while (binder_group_ahead()) {
            const Token& open = advance();
            bool implicit = open.kind == Tok::LBrace;
            std::vector<std::pair<std::string, Span>> names;
            do {
                Span s = peek().span;
                names.emplace_back(binder_name(), s);
            } while (at(Tok::Ident) || at(Tok::Underscore));
            expect(Tok::Colon);
            ExprPtr type = expr();
            expect(implicit ? Tok::RBrace : Tok::RParen);
            for (auto& [n, s] : names) out.push_back(Binder{n, type, implicit, join(open.span, previous().span)});
        }
        if (require_one && out.empty()) fail_expected("a binder group");
        return out;
    }

    // ---- expressions -------------------------------------------------------

    ExprPtr expr() {
        ExprPtr e;
        if (at(Tok::Lambda)) {
            e = lambda();
        } else if (at(Tok::KwSigma)) {
            e = sigma();
        } else {
            e = pi_expr();
        }
        if (at(Tok::FatArrow)) {
            advance();
            ExprPtr rhs = expr();
            e = binder_node(Expr::Kind::Pi, Binder{"_", e, false, e->span}, rhs, e->span);
        }
        return e;
    }

    ExprPtr lambda() {
        Span start = advance().span;
        std::vector<std::string> names;
        do {
            names.push_back(binder_name());
        } while (at(Tok::Ident) || at(Tok::Underscore));
        expect(Tok::Dot);
        ExprPtr body = expr();
        for (auto it = names.rbegin(); it != names.rend(); ++it)
            body = node(Expr::Kind::Lambda, join(start, body->span), {body}, *it);
        return body;
    }

    ExprPtr sigma() {
        Span start = advance().span;
        if (!binder_group_ahead() || at(Tok::LBrace)) fail_expected("'(' binder ':' type ')'");
        std::vector<Binder> binders = binder_groups(true);
        expect(Tok::Dot);
        ExprPtr body = expr();
        for (auto it = binders.rbegin(); it != binders.rend(); ++it)
            body = binder_node(Expr::Kind::Sigma, *it, body, start);
        return body;
    }

    ExprPtr pi_expr() {
        Span start = peek().span;
        if (binder_group_ahead()) {
            std::vector<Binder> binders = binder_groups(true);
            expect(Tok::Arrow);
            ExprPtr body = expr();
            for (auto it = binders.rbegin(); it != binders.rend(); ++it)
                body = binder_node(Expr::Kind::Pi, *it, body, start);
            return body;
        }
        ExprPtr lhs = infix();
        if (accept(Tok::Arrow)) {
            ExprPtr rhs = expr();
            return binder_node(Expr::Kind::Pi, Binder{"_", lhs, false, lhs->span}, rhs, lhs->span);
        }
        return lhs;
    }

    ExprPtr infix() {
        ExprPtr lhs = application();
        while (at(Tok::Oplus) || at(Tok::Plus)) {
            const Token& op = advance();
            ExprPtr rhs = application();
            ExprPtr fn = ident(op.kind == Tok::Oplus ? "⊕" : "plus", op.span);
            lhs = app(app(fn, lhs), rhs);
        }
        return lhs;
    }

    bool atom_ahead() const {
        switch (peek().kind) {
            case Tok::Ident:
            case Tok::Nat:
            case Tok::Underscore:
            case Tok::KwType:
            case Tok::KwType1:
            case Tok::LParen:
            case Tok::KwFst:
            case Tok::KwSnd:
            case Tok::KwPair: return true;
            default: return false;
        }
    }

    ExprPtr application() {
        ExprPtr head = atom();
        for (;;) {
            if (atom_ahead()) {
                head = app(head, atom());
            } else if (at(Tok::LBrace)) {
                Span open = advance().span;
                ExprPtr arg = expr();
                Span close = expect(Tok::RBrace).span;
                auto e = std::make_shared<Expr>(*arg);
                e->span = join(open, close);
                ExprPtr wrapped = std::move(e);
                head = app(head, wrapped, true);
            } else if (at(Tok::Lambda) || at(Tok::KwSigma)) {
                // A trailing binder form extends to the right as the last argument.
                return app(head, at(Tok::Lambda) ? lambda() : sigma());
            } else {
                return head;
            }
        }
    }

    ExprPtr atom() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Ident: advance(); return ident(t.text, t.span);
            case Tok::Nat: {
                advance();
                auto e = std::make_shared<Expr>();
                e->kind = Expr::Kind::Nat;
                e->span = t.span;
                e->value = std::stoull(t.text);
                return e;
            }
            case Tok::Underscore: advance(); return node(Expr::Kind::Hole, t.span);
            case Tok::KwType:
            case Tok::KwType1: {
                advance();
                auto e = std::make_shared<Expr>();
                e->kind = Expr::Kind::Universe;
                e->span = t.span;
                e->value = t.kind == Tok::KwType ? 0 : 1;
                return e;
            }
            case Tok::KwFst:
            case Tok::KwSnd: {
                advance();
                auto kind = t.kind == Tok::KwFst ? Expr::Kind::Fst : Expr::Kind::Snd;
                if (!atom_ahead()) return node(kind, t.span);
                ExprPtr arg = atom();
                return node(kind, join(t.span, arg->span), {arg});
            }
            case Tok::KwPair: {
                advance();
                ExprPtr a = atom();
                ExprPtr b = atom();
                return node(Expr::Kind::Pair, join(t.span, b->span), {a, b});
            }
            case Tok::LParen: {
                advance();
                std::vector<ExprPtr> items{expr()};
                while (accept(Tok::Comma)) items.push_back(expr());
                Span close = expect(Tok::RParen).span;
                if (items.size() == 1) return items.front();
                ExprPtr acc = items.back();
                for (std::size_t i = items.size() - 1; i-- > 0;)
                    acc = node(Expr::Kind::Pair, join(items[i]->span, acc->span), {items[i], acc});
                auto e = std::make_shared<Expr>(*acc);
                e->span = join(t.span, close);
                return e;
            }
            default: fail_expected("an expression");
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace

std::string_view to_string(Decl::Kind kind) {
    switch (kind) {
        case Decl::Kind::Postulate: return "postulate";
        case Decl::Kind::Primitive: return "primitive";
        case Decl::Kind::Def: return "def";
        case Decl::Kind::Rewrite: return "rewrite";
        case Decl::Kind::Check: return "check";
        case Decl::Kind::Fail: return "fail";
        case Decl::Kind::Entail: return "entail";
        case Decl::Kind::Norm: return "norm";
        case Decl::Kind::Import: return "import";
    }
    return "?";
}

ParseResult parse_file(std::string_view source, const std::string& file) {
    LexResult lexed = tokenize(source, file);
    ParseResult out = Parser(std::move(lexed.tokens)).file();
    out.errors.insert(out.errors.begin(), lexed.errors.begin(), lexed.errors.end());
    std::stable_sort(out.errors.begin(), out.errors.end(), [](const TelicError& a, const TelicError& b) {
        const Span& x = *a.span();
        const Span& y = *b.span();
        return std::pair(x.line, x.col) < std::pair(y.line, y.col);
    });
    return out;
}

ExprPtr parse_expr(std::string_view source, const std::string& file) {
    LexResult lexed = tokenize(source, file);
    if (!lexed.errors.empty()) throw lexed.errors.front();
    return Parser(std::move(lexed.tokens)).single_expr();
}

}  // namespace telic
