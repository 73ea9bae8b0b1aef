#include "telic/error.hpp"

#include <array>
#include <utility>

namespace telic {

namespace {

constexpr std::array<std::pair<ErrorClass, std::string_view>, 18> kNames{{
    {ErrorClass::IllegalCharacter, "IllegalCharacter"},
    {ErrorClass::ParseError, "ParseError"},
    {ErrorClass::UnboundVariable, "UnboundVariable"},
    {ErrorClass::UnknownConstant, "UnknownConstant"},
    {ErrorClass::NotAFunction, "NotAFunction"},
    {ErrorClass::NotAPair, "NotAPair"},
    {ErrorClass::NotAType, "NotAType"},
    {ErrorClass::UniverseMismatch, "UniverseMismatch"},
    {ErrorClass::TypeMismatch, "TypeMismatch"},
    {ErrorClass::CannotInfer, "CannotInfer"},
    {ErrorClass::UnsolvedMeta, "UnsolvedMeta"},
    {ErrorClass::DuplicateName, "DuplicateName"},
    {ErrorClass::RewriteHeadIsDefinition, "RewriteHeadIsDefinition"},
    {ErrorClass::NonlinearPattern, "NonlinearPattern"},
    {ErrorClass::InvalidPattern, "InvalidPattern"},
    {ErrorClass::RewriteTypeMismatch, "RewriteTypeMismatch"},
    {ErrorClass::FuelExhausted, "FuelExhausted"},
    {ErrorClass::ImportError, "ImportError"},
}};

}  // namespace

std::string_view to_string(ErrorClass c) {
    for (const auto& [cls, name] : kNames)
        if (cls == c) return name;
    return "Unknown";
}

std::optional<ErrorClass> error_class_from_string(std::string_view name) {
    for (const auto& [cls, n] : kNames)
        if (n == name) return cls;
    return std::nullopt;
}

bool Span::contains(const Span& inner) const {
    auto before = [](int l1, int c1, int l2, int c2) { return l1 < l2 || (l1 == l2 && c1 <= c2); };
    return file == inner.file && before(line, col, inner.line, inner.col) &&
           before(inner.end_line, inner.end_col, end_line, end_col);
}

std::string Span::to_string() const {
    return file + ":" + std::to_string(line) + ":" + std::to_string(col);
}

}  // namespace telic
