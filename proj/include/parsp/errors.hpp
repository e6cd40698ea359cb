#pragma once

#include <stdexcept>
#include <string>

namespace parsp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define PARSP_DEFINE_ERROR(Name)            \
  class Name : public Error {               \
   public:                                  \
    using Error::Error;                     \
  };

PARSP_DEFINE_ERROR(InvalidWeight)
PARSP_DEFINE_ERROR(InvalidAtom)
PARSP_DEFINE_ERROR(InvalidParameter)
PARSP_DEFINE_ERROR(InvalidContraction)
PARSP_DEFINE_ERROR(MissingDistance)
PARSP_DEFINE_ERROR(UnknownVertex)
PARSP_DEFINE_ERROR(EmptyReduce)
PARSP_DEFINE_ERROR(DepthExceeded)
PARSP_DEFINE_ERROR(GenerationError)
PARSP_DEFINE_ERROR(InputError)
PARSP_DEFINE_ERROR(InvariantBreach)

#undef PARSP_DEFINE_ERROR

// Always-on internal consistency check; these are cheap and guard contracts
// that the algorithms rely on at runtime.
inline void check(bool cond, const char* what) {
  if (!cond) throw InvariantBreach(what);
}

}  // namespace parsp
