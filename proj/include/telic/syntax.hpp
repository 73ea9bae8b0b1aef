#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "telic/error.hpp"

namespace telic {

enum class Tok {
    Ident,
    Nat,
    String,
    KwPostulate,
    KwPrimitive,
    KwDef,
    KwRewrite,
    KwCheck,
    KwFail,
    KwEntail,
    KwNorm,
    KwImport,
    KwType,
    KwType1,
    KwSigma,
    KwFst,
    KwSnd,
    KwPair,
    Lambda,
    Arrow,
    FatArrow,
    Colon,
    Equals,
    Comma,
    Dot,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Underscore,
    Plus,
    Oplus,
    End,
};

std::string_view to_string(Tok kind);

/// Starts a declaration; the parser resynchronizes on these after an error.
bool is_declaration_keyword(Tok kind);

struct Token {
    Tok kind;
    std::string text;
    Span span;
};

struct LexResult {
    std::vector<Token> tokens;  // always terminated by Tok::End
    std::vector<TelicError> errors;
};

/// Split UTF-8 source into tokens. `--` starts a comment running to the end
/// of the line. Illegal characters are reported and skipped.
LexResult tokenize(std::string_view source, const std::string& file = "<input>");

// ---------------------------------------------------------------------------
// Surface syntax tree

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Ident, Nat, Hole, Universe, Lambda, Pi, Sigma, App, Pair, Fst, Snd };

    Kind kind;
    Span span;
    std::string name;       // Ident; binder name for Lambda/Pi/Sigma
    std::uint64_t value = 0;  // Nat literal or universe level
    bool implicit = false;  // Pi binder `{x : A}` or App argument `{e}`
    std::vector<ExprPtr> children;
    // Lambda: {body}. Pi/Sigma: {domain, codomain}. App: {fn, arg}.
    // Pair: {first, second}. Fst/Snd: {} when unapplied, else {pair}.
};

struct Binder {
    std::string name;
    ExprPtr type;
    bool implicit = false;
    Span span;
};

struct Decl {
    enum class Kind { Postulate, Primitive, Def, Rewrite, Check, Fail, Entail, Norm, Import };

    Kind kind;
    Span span;
    std::string name;            // Postulate/Primitive/Def/Entail
    std::vector<Binder> params;  // parameters, or the pattern telescope of a Rewrite
    ExprPtr type;                // declared type; for Check the goal type; may be null for Def
    ExprPtr body;                // Def/Entail body, Check/Norm expression, Rewrite lhs
    ExprPtr rhs;                 // Rewrite rhs; Norm expected form (optional)
    std::string path;            // Import
    ErrorClass expected_error = ErrorClass::TypeMismatch;  // Fail
    std::shared_ptr<const Decl> inner;                     // Fail
};

std::string_view to_string(Decl::Kind kind);

struct ParseResult {
    std::vector<Decl> decls;
    std::vector<TelicError> errors;
};

/// Parse a whole file. Errors resynchronize at the next declaration keyword,
/// so one call may report several.
ParseResult parse_file(std::string_view source, const std::string& file = "<input>");

/// Parse a single expression (used by `telic norm -e`).
ExprPtr parse_expr(std::string_view source, const std::string& file = "<expr>");

}  // namespace telic
