#pragma once

#include <stdexcept>
#include <string>

namespace halfflat {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define HALFFLAT_ERROR(Name)                      \
    class Name : public Error {                   \
    public:                                       \
        explicit Name(const std::string& what)    \
            : Error(std::string(#Name ": ") + what) {} \
    }

HALFFLAT_ERROR(ParseError);
HALFFLAT_ERROR(InvalidSurface);
HALFFLAT_ERROR(AmbiguousStart);
HALFFLAT_ERROR(IncoherentWord);
HALFFLAT_ERROR(ContractibleCurve);
HALFFLAT_ERROR(NotSimple);
HALFFLAT_ERROR(DisjointCurves);
HALFFLAT_ERROR(DegenerateConfiguration);
HALFFLAT_ERROR(CapTooLarge);
HALFFLAT_ERROR(NotPeriodic);
HALFFLAT_ERROR(MarkingMismatch);
HALFFLAT_ERROR(EmptyCandidates);
HALFFLAT_ERROR(UnknownCorpusEntry);
HALFFLAT_ERROR(ConstraintFailure);
HALFFLAT_ERROR(InternalError);

#undef HALFFLAT_ERROR

}  // namespace halfflat
