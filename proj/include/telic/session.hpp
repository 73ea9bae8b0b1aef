#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "telic/error.hpp"
#include "telic/meta.hpp"
#include "telic/reduce.hpp"
#include "telic/signature.hpp"
#include "telic/syntax.hpp"

namespace telic {

/// Outcome of one declaration.
struct DeclReport {
    Span span;
    std::string kind;
    std::string name;
    bool passed = false;
    std::optional<ErrorClass> error_class;
    std::string message;
    std::optional<Span> error_span;
    std::string normal_form;
};

struct FileReport {
    std::string file;
    std::vector<DeclReport> decls;
    bool halted = false;  // a failed postulate/def stopped processing
    double duration_ms = 0;

    std::size_t passes() const;
    std::size_t failures() const;
};

/// A file could not be read.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SessionOptions {
    std::uint64_t fuel = kDefaultFuel;
};

/// Elaborates surface declarations against one growing environment.
/// Files processed by the same session share their signature.
class Session {
public:
    explicit Session(SessionOptions options = {});

    Environment& environment() { return env_; }
    const Environment& environment() const { return env_; }
    const SessionOptions& options() const { return options_; }
    void set_fuel(std::uint64_t fuel) { options_.fuel = fuel; }

    /// Parse and process `source`. Relative imports resolve against `base_dir`.
    FileReport run_source(std::string_view source, const std::string& file_label,
                          const std::filesystem::path& base_dir = ".");

    /// Read and process a file; throws IoError if it cannot be read.
    FileReport run_file(const std::filesystem::path& path);

    /// Elaborate a closed expression and return its display normal form.
    Term normalize_expr(const ExprPtr& expr);
    std::string normalize_text(std::string_view text);

    /// Elaborate a closed expression into a core term with fresh metas.
    Term elaborate(const ExprPtr& expr, MetaStore& metas, const std::vector<std::string>& scope = {}) const;

    /// Implicit-argument mask of a (parameters, type) declaration header.
    static std::vector<bool> implicit_mask(const std::vector<Binder>& params, const ExprPtr& type);

private:
    void process(const Decl& d, const std::filesystem::path& base_dir, DeclReport& report);
    void import_file(const Decl& d, const std::filesystem::path& base_dir);

    Environment env_;
    SessionOptions options_;
    std::set<std::filesystem::path> imported_;
    std::vector<std::filesystem::path> import_stack_;
};

/// Aliases accepted in place of Unicode constant names (`SigmaNP` for `Σ^NP`).
std::string resolve_alias(const std::string& name);

}  // namespace telic
