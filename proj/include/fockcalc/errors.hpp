#pragma once

#include <stdexcept>
#include <string>

namespace fockcalc {

// Base class for every error raised by the library. Callers that only care
// about "something was rejected" can catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define FOCKCALC_DEFINE_ERROR(Name)        \
  class Name : public Error {              \
   public:                                 \
    using Error::Error;                    \
  };

FOCKCALC_DEFINE_ERROR(NegativeIndexError)
FOCKCALC_DEFINE_ERROR(OverflowError)
FOCKCALC_DEFINE_ERROR(CapExceededError)
FOCKCALC_DEFINE_ERROR(DivergentSeriesError)
FOCKCALC_DEFINE_ERROR(DuplicateKeyError)
FOCKCALC_DEFINE_ERROR(EmptySupportError)
FOCKCALC_DEFINE_ERROR(ExponentTooSmallError)
FOCKCALC_DEFINE_ERROR(PredictabilityViolatedError)
FOCKCALC_DEFINE_ERROR(HorizonTooLargeError)
FOCKCALC_DEFINE_ERROR(SupportExceedsHorizonError)
FOCKCALC_DEFINE_ERROR(RequiresExhaustiveError)
FOCKCALC_DEFINE_ERROR(SchemaError)
FOCKCALC_DEFINE_ERROR(BadTagError)

#undef FOCKCALC_DEFINE_ERROR

}  // namespace fockcalc
