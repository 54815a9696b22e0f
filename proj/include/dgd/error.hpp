#pragma once

#include <stdexcept>
#include <string>

namespace dgd {

// All library errors carry a short machine-readable kind tag plus a
// human-readable message.  CLI maps kinds onto diagnosis JSON.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

#define DGD_ERROR_KIND(Name)                                        \
    class Name : public Error {                                     \
    public:                                                         \
        explicit Name(const std::string& msg) : Error(#Name, msg) {} \
    }

DGD_ERROR_KIND(ConductorMismatch);
DGD_ERROR_KIND(DivisionByZero);
DGD_ERROR_KIND(ParseError);
DGD_ERROR_KIND(TableInvalid);
DGD_ERROR_KIND(SizeLimit);
DGD_ERROR_KIND(NotAbelian);
DGD_ERROR_KIND(ShapeMismatch);
DGD_ERROR_KIND(NotACocycle);
DGD_ERROR_KIND(NotInvertible);
DGD_ERROR_KIND(NotHopfMorphism);
DGD_ERROR_KIND(ConditionViolated);
DGD_ERROR_KIND(NotBijective);
DGD_ERROR_KIND(GroupMismatch);
DGD_ERROR_KIND(DatumInvalid);
DGD_ERROR_KIND(NotPurelyNonabelian);
DGD_ERROR_KIND(NotAnAutomorphism);
DGD_ERROR_KIND(NoBlockView);
DGD_ERROR_KIND(CaseThreeReached);
DGD_ERROR_KIND(NotLazy);
DGD_ERROR_KIND(NonUnitValue);
DGD_ERROR_KIND(PreconditionFailed);
DGD_ERROR_KIND(SolveFailed);
DGD_ERROR_KIND(NotNormalized);
DGD_ERROR_KIND(Degenerate);
DGD_ERROR_KIND(InternalError);

#undef DGD_ERROR_KIND

}  // namespace dgd
