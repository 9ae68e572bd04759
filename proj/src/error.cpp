#include "sketchlab/error.hpp"

namespace sketchlab {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::cyclic_presentation: return "CyclicPresentation";
    case ErrorKind::inconsistent_tables: return "InconsistentTables";
    case ErrorKind::relation_type_mismatch: return "RelationTypeMismatch";
    case ErrorKind::size_budget_exceeded: return "SizeBudgetExceeded";
    case ErrorKind::domain_mismatch: return "DomainMismatch";
    case ErrorKind::frame_mismatch: return "FrameMismatch";
    case ErrorKind::not_a_cone: return "NotACone";
    case ErrorKind::non_enumerable_domain: return "NonEnumerableDomain";
    case ErrorKind::non_enumerable_source: return "NonEnumerableSource";
    case ErrorKind::not_idempotent: return "NotIdempotent";
    case ErrorKind::not_equivalence: return "NotEquivalence";
    case ErrorKind::not_lex: return "NotLex";
    case ErrorKind::iso_failure: return "IsoFailure";
    case ErrorKind::parse_error: return "ParseError";
    case ErrorKind::resolution_error: return "ResolutionError";
    case ErrorKind::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace sketchlab
