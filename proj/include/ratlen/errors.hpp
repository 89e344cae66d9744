#pragma once

#include <stdexcept>
#include <string>

namespace ratlen {

/// Base class for every failure this library reports deliberately.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define RATLEN_DEFINE_ERROR(Name)                   \
    class Name : public Error {                     \
    public:                                         \
        using Error::Error;                         \
    }

// Evaluation
RATLEN_DEFINE_ERROR(PoleProximity);
RATLEN_DEFINE_ERROR(MalformedFunction);
RATLEN_DEFINE_ERROR(IndexOutOfRange);
RATLEN_DEFINE_ERROR(DegenerateDenominator);

// Quadrature
RATLEN_DEFINE_ERROR(NoConvergence);
RATLEN_DEFINE_ERROR(SingularityOnContour);
RATLEN_DEFINE_ERROR(PoleInDisk);

// Integral geometry
RATLEN_DEFINE_ERROR(InsufficientCoverage);

// Construction
RATLEN_DEFINE_ERROR(CriterionInapplicable);
RATLEN_DEFINE_ERROR(BudgetUnderflow);
RATLEN_DEFINE_ERROR(TooFewCoefficients);
RATLEN_DEFINE_ERROR(SubcriticalDegree);
RATLEN_DEFINE_ERROR(ContourEvaluationFailure);
RATLEN_DEFINE_ERROR(QuadratureUnderResolved);

// Univalence certification
RATLEN_DEFINE_ERROR(ValueOnBoundary);
RATLEN_DEFINE_ERROR(NonIntegerWinding);
RATLEN_DEFINE_ERROR(DegenerateImage);

// Experiment harness
RATLEN_DEFINE_ERROR(EmptyFamily);
RATLEN_DEFINE_ERROR(GeneratorFailure);
RATLEN_DEFINE_ERROR(InsufficientData);

// Descriptor and file handling
RATLEN_DEFINE_ERROR(IoFailure);

#undef RATLEN_DEFINE_ERROR

} // namespace ratlen
