#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sketchlab {

enum class ErrorKind {
  cyclic_presentation,
  inconsistent_tables,
  relation_type_mismatch,
  size_budget_exceeded,
  domain_mismatch,
  frame_mismatch,
  not_a_cone,
  non_enumerable_domain,
  non_enumerable_source,
  not_idempotent,
  not_equivalence,
  not_lex,
  iso_failure,
  parse_error,
  resolution_error,
  invalid_argument,
};

std::string_view error_kind_name(ErrorKind kind);

/// The single exception type thrown by the library; `kind()` names the
/// failure class so callers (and the CLI) can map it without string matching.
class SketchError : public std::runtime_error {
 public:
  SketchError(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw SketchError(kind, message);
}

/// Caps on enumerated structures. Exceeding any cap raises
/// size_budget_exceeded instead of exhausting memory.
struct SizeBudget {
  std::size_t max_elements = 1'000'000;
  std::size_t max_results = 1'000'000;
  std::size_t max_arrows = 200'000;
};

}  // namespace sketchlab
