#pragma once

#include <stdexcept>
#include <string>

namespace aqecc {

// Base for every domain error raised by the library. The CLI maps these to
// exit status 1; anything else escaping is a bug.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define AQECC_DEFINE_ERROR(Name)            \
    class Name : public Error {             \
    public:                                 \
        using Error::Error;                 \
    }

AQECC_DEFINE_ERROR(ParityError);
AQECC_DEFINE_ERROR(RangeError);
AQECC_DEFINE_ERROR(ShapeError);
AQECC_DEFINE_ERROR(CapacityError);
AQECC_DEFINE_ERROR(BudgetError);
AQECC_DEFINE_ERROR(OrthogonalityError);
AQECC_DEFINE_ERROR(ConvergenceError);
AQECC_DEFINE_ERROR(EmptyWindowError);
AQECC_DEFINE_ERROR(InsufficientDataError);
AQECC_DEFINE_ERROR(PopulationError);
AQECC_DEFINE_ERROR(DataError);
AQECC_DEFINE_ERROR(DomainError);
AQECC_DEFINE_ERROR(FormatError);

#undef AQECC_DEFINE_ERROR

} // namespace aqecc
