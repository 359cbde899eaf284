#ifndef QBFI_ERROR_HPP
#define QBFI_ERROR_HPP

#include <stdexcept>
#include <string>

namespace qbfi {

enum class Errc {
    Syntax,
    TautologicalClause,
    UnboundVariable,
    BadArity,
    ForwardReference,
    AnnotationInCdclTrace,
    StarInExpansionLiteral,
    AssignToStar,
    NoPartition,
    NotVerified,
    PNotPositive,
    MixedPivot,
    BNotMarked,
    InternalInvariant,
    TooManyPVars,
    CapExceeded,
    PartialAssignment,
    BadN,
};

const char* label(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& detail)
        : std::runtime_error(std::string(label(code)) + (detail.empty() ? "" : ": " + detail)),
          code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

}  // namespace qbfi

#endif  // QBFI_ERROR_HPP
