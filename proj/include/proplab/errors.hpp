#pragma once

#include <stdexcept>
#include <string>

namespace proplab {

/// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define PROPLAB_DEFINE_ERROR(Name)                                       \
  struct Name : Error {                                                  \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

PROPLAB_DEFINE_ERROR(CapExceeded);
PROPLAB_DEFINE_ERROR(OracleInconsistent);
PROPLAB_DEFINE_ERROR(NotNormal);
PROPLAB_DEFINE_ERROR(NotAbelian);
PROPLAB_DEFINE_ERROR(NotAHomomorphism);
PROPLAB_DEFINE_ERROR(BadPrime);
PROPLAB_DEFINE_ERROR(MixedParameters);
PROPLAB_DEFINE_ERROR(LimitExceeded);
PROPLAB_DEFINE_ERROR(RelatorViolation);
PROPLAB_DEFINE_ERROR(SyntaxError);
PROPLAB_DEFINE_ERROR(UndeclaredGenerator);
PROPLAB_DEFINE_ERROR(NotStable);
PROPLAB_DEFINE_ERROR(NotWellDefined);
PROPLAB_DEFINE_ERROR(NotIso);
PROPLAB_DEFINE_ERROR(UsageError);

#undef PROPLAB_DEFINE_ERROR

}  // namespace proplab
