#include <array>
#include <utility>

#include "telic/syntax.hpp"

namespace telic {

namespace {

constexpr char32_t kLambda = U'λ';
constexpr char32_t kRightArrow = U'→';
constexpr char32_t kDoubleArrow = U'⇒';
constexpr char32_t kSigma = U'Σ';
constexpr char32_t kOplus = U'⊕';

constexpr std::array<std::pair<std::string_view, Tok>, 15> kKeywords{{
    {"postulate", Tok::KwPostulate},
    {"primitive", Tok::KwPrimitive},
    {"def", Tok::KwDef},
    {"rewrite", Tok::KwRewrite},
    {"check", Tok::KwCheck},
    {"fail", Tok::KwFail},
    {"entail", Tok::KwEntail},
    {"norm", Tok::KwNorm},
    {"import", Tok::KwImport},
    {"Type", Tok::KwType},
    {"Type1", Tok::KwType1},
    {"Sigma", Tok::KwSigma},
    {"fst", Tok::KwFst},
    {"snd", Tok::KwSnd},
    {"pair", Tok::KwPair},
}};

bool is_ident_char(char32_t c) {
    if (c < 0x80) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
               c == '\'' || c == '^';
    }
    return c != kLambda && c != kRightArrow && c != kDoubleArrow;
}

bool is_ident_start(char32_t c) {
    if (c < 0x80) return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
    return is_ident_char(c) && c != kSigma && c != kOplus;
}

class Lexer {
public:
    Lexer(std::string_view src, const std::string& file) : src_(src), file_(file) {}

    LexResult run() {
        LexResult out;
        for (;;) {
            skip_space();
            if (pos_ >= src_.size()) break;
            start_ = pos_;
            start_line_ = line_;
            start_col_ = col_;
            auto [c, len] = peek_cp(pos_);
            if (len == 0) {
                advance();
                out.errors.emplace_back(ErrorClass::IllegalCharacter, "invalid UTF-8 byte", span());
                continue;
            }
            if (auto tok = lex_one(c, out.errors)) out.tokens.push_back(std::move(*tok));
        }
        Span end{file_, line_, col_, line_, col_};
        out.tokens.push_back(Token{Tok::End, "", end});
        return out;
    }

private:
    // Decodes the code point at byte offset i; len 0 marks malformed input.
    std::pair<char32_t, std::size_t> peek_cp(std::size_t i) const {
        if (i >= src_.size()) return {0, 0};
        auto b0 = static_cast<unsigned char>(src_[i]);
        if (b0 < 0x80) return {b0, 1};
        std::size_t len = b0 >= 0xF0 ? 4 : b0 >= 0xE0 ? 3 : b0 >= 0xC0 ? 2 : 0;
        if (len == 0 || i + len > src_.size()) return {0, 0};
        char32_t cp = b0 & (0x7F >> len);
        for (std::size_t k = 1; k < len; ++k) {
            auto b = static_cast<unsigned char>(src_[i + k]);
            if ((b & 0xC0) != 0x80) return {0, 0};
            cp = (cp << 6) | (b & 0x3F);
        }
        return {cp, len};
    }

    char32_t cp_at(std::size_t i) const { return peek_cp(i).first; }

    void advance() {
        auto [c, len] = peek_cp(pos_);
        if (len == 0) len = 1;
        pos_ += len;
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
    }

    void skip_space() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '-') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else {
                break;
            }
        }
    }

    Span span() const { return Span{file_, start_line_, start_col_, line_, col_}; }

    Token make(Tok kind) const { return Token{kind, std::string(src_.substr(start_, pos_ - start_)), span()}; }

    std::optional<Token> lex_one(char32_t c, std::vector<TelicError>& errors) {
        std::size_t next = pos_ + peek_cp(pos_).second;
        bool ident_follows = is_ident_char(cp_at(next));

        if (is_ident_start(c) || ((c == kSigma || c == kOplus || c == '_') && ident_follows)) {
            while (pos_ < src_.size() && peek_cp(pos_).second != 0 && is_ident_char(cp_at(pos_))) advance();
            Token t = make(Tok::Ident);
            for (const auto& [word, kind] : kKeywords)
                if (t.text == word) t.kind = kind;
            return t;
        }
        if (c >= '0' && c <= '9') {
            std::uint64_t value = 0;
            bool overflow = false;
            while (pos_ < src_.size() && src_[pos_] >= '0' && src_[pos_] <= '9') {
                auto digit = static_cast<std::uint64_t>(src_[pos_] - '0');
                if (value > (UINT64_MAX - digit) / 10) overflow = true;
                value = value * 10 + digit;
                advance();
            }
            if (overflow) {
                errors.emplace_back(ErrorClass::IllegalCharacter, "numeric literal out of range", span());
                return std::nullopt;
            }
            return make(Tok::Nat);
        }
        advance();
        switch (c) {
            case kSigma: return make(Tok::KwSigma);
            case kOplus: return make(Tok::Oplus);
            case kLambda:
            case '\\': return make(Tok::Lambda);
            case kRightArrow: return make(Tok::Arrow);
            case kDoubleArrow: return make(Tok::FatArrow);
            case '_': return make(Tok::Underscore);
            case ':': return make(Tok::Colon);
            case ',': return make(Tok::Comma);
            case '.': return make(Tok::Dot);
            case ')': return make(Tok::RParen);
            case '{': return make(Tok::LBrace);
            case '}': return make(Tok::RBrace);
            case '+': return make(Tok::Plus);
            case '(':
                if (pos_ + 1 < src_.size() && src_[pos_] == '+' && src_[pos_ + 1] == ')') {
                    advance();
                    advance();
                    return Token{Tok::Ident, "⊕", span()};
                }
                return make(Tok::LParen);
            case '-':
                if (pos_ < src_.size() && src_[pos_] == '>') {
                    advance();
                    return make(Tok::Arrow);
                }
                break;
            case '=':
                if (pos_ < src_.size() && src_[pos_] == '>') {
                    advance();
                    return make(Tok::FatArrow);
                }
                return make(Tok::Equals);
            case '"': {
                while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') advance();
                if (pos_ >= src_.size() || src_[pos_] != '"') {
                    errors.emplace_back(ErrorClass::IllegalCharacter, "unterminated string literal", span());
                    return std::nullopt;
                }
                advance();
                Token t = make(Tok::String);
                t.text = t.text.substr(1, t.text.size() - 2);
                return t;
            }
            default: break;
        }
        errors.emplace_back(ErrorClass::IllegalCharacter,
                            "illegal character '" + std::string(src_.substr(start_, pos_ - start_)) + "'", span());
        return std::nullopt;
    }

    std::string_view src_;
    std::string file_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    std::size_t start_ = 0;
    int start_line_ = 1;
    int start_col_ = 1;
};

}  // namespace

std::string_view to_string(Tok kind) {
    switch (kind) {
        case Tok::Ident: return "identifier";
        case Tok::Nat: return "number";
        case Tok::String: return "string";
        case Tok::KwPostulate: return "'postulate'";
        case Tok::KwPrimitive: return "'primitive'";
        case Tok::KwDef: return "'def'";
        case Tok::KwRewrite: return "'rewrite'";
        case Tok::KwCheck: return "'check'";
        case Tok::KwFail: return "'fail'";
        case Tok::KwEntail: return "'entail'";
        case Tok::KwNorm: return "'norm'";
        case Tok::KwImport: return "'import'";
        case Tok::KwType: return "'Type'";
        case Tok::KwType1: return "'Type1'";
        case Tok::KwSigma: return "'Σ'";
        case Tok::KwFst: return "'fst'";
        case Tok::KwSnd: return "'snd'";
        case Tok::KwPair: return "'pair'";
        case Tok::Lambda: return "'λ'";
        case Tok::Arrow: return "'->'";
        case Tok::FatArrow: return "'=>'";
        case Tok::Colon: return "':'";
        case Tok::Equals: return "'='";
        case Tok::Comma: return "','";
        case Tok::Dot: return "'.'";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::LBrace: return "'{'";
        case Tok::RBrace: return "'}'";
        case Tok::Underscore: return "'_'";
        case Tok::Plus: return "'+'";
        case Tok::Oplus: return "'⊕'";
        case Tok::End: return "end of input";
    }
    return "?";
}

bool is_declaration_keyword(Tok kind) {
    switch (kind) {
        case Tok::KwPostulate:
        case Tok::KwPrimitive:
        case Tok::KwDef:
        case Tok::KwRewrite:
        case Tok::KwCheck:
        case Tok::KwFail:
        case Tok::KwEntail:
        case Tok::KwNorm:
        case Tok::KwImport: return true;
        default: return false;
    }
}

LexResult tokenize(std::string_view source, const std::string& file) { return Lexer(source, file).run(); }

}  // namespace telic
