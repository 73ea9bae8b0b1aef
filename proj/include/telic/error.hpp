#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace telic {

/// Source location range; lines and columns are 1-based, columns count
/// code points.
struct Span {
    std::string file;
    int line = 0;
    int col = 0;
    int end_line = 0;
    int end_col = 0;

    bool contains(const Span& inner) const;
    std::string to_string() const;
};

/// Closed set of failure kinds. Negative tests in `.tel` files name these.
enum class ErrorClass {
    IllegalCharacter,
    ParseError,
    UnboundVariable,
    UnknownConstant,
    NotAFunction,
    NotAPair,
    NotAType,
    UniverseMismatch,
    TypeMismatch,
    CannotInfer,
    UnsolvedMeta,
    DuplicateName,
    RewriteHeadIsDefinition,
    NonlinearPattern,
    InvalidPattern,
    RewriteTypeMismatch,
    FuelExhausted,
    ImportError,
};

std::string_view to_string(ErrorClass c);
std::optional<ErrorClass> error_class_from_string(std::string_view name);

class TelicError : public std::runtime_error {
public:
    TelicError(ErrorClass cls, std::string message, std::optional<Span> span = std::nullopt)
        : std::runtime_error(std::move(message)), cls_(cls), span_(std::move(span)) {}

    ErrorClass error_class() const { return cls_; }
    const std::optional<Span>& span() const { return span_; }

private:
    ErrorClass cls_;
    std::optional<Span> span_;
};

}  // namespace telic
