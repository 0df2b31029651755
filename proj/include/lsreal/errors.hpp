#pragma once

#include <stdexcept>
#include <string>

namespace lsreal {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define LSREAL_DEFINE_ERROR(Name)       \
  class Name : public Error {           \
   public:                              \
    using Error::Error;                 \
  }

// Shape or value problems in caller-provided data.
LSREAL_DEFINE_ERROR(DimensionError);
LSREAL_DEFINE_ERROR(NonFiniteInput);

// Simulation and kernel evaluation.
LSREAL_DEFINE_ERROR(UnknownTag);
LSREAL_DEFINE_ERROR(DurationMismatch);
LSREAL_DEFINE_ERROR(EmptyWord);
LSREAL_DEFINE_ERROR(OrderTooHigh);

// Series and representations.
LSREAL_DEFINE_ERROR(UnknownIndex);
LSREAL_DEFINE_ERROR(ShiftTooLong);
LSREAL_DEFINE_ERROR(BadIndexSet);
LSREAL_DEFINE_ERROR(BadOutDim);

// Hankel blocks and realization algorithms.
LSREAL_DEFINE_ERROR(InsufficientOrder);
LSREAL_DEFINE_ERROR(SvdFailure);
LSREAL_DEFINE_ERROR(RankConditionFailed);
LSREAL_DEFINE_ERROR(ShiftInconsistent);
LSREAL_DEFINE_ERROR(NoUniqueSolution);

// Comparisons between systems or families.
LSREAL_DEFINE_ERROR(DimensionMismatch);
LSREAL_DEFINE_ERROR(IncompatibleFamilies);

// File formats.
LSREAL_DEFINE_ERROR(ParseError);

#undef LSREAL_DEFINE_ERROR

}  // namespace lsreal
