#pragma once

#include <stdexcept>
#include <string>

namespace waringlab {

/// Coarse failure classes; the CLI maps each onto an exit code.
enum class ErrorClass {
  invalid_input,  // malformed or out-of-contract arguments
  degenerate,     // input is not general enough for the algorithm
  convergence,    // numerical search exhausted its budget
};

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, const std::string& what)
      : std::runtime_error(what), cls_(cls) {}
  ErrorClass error_class() const noexcept { return cls_; }

 private:
  ErrorClass cls_;
};

#define WARINGLAB_DEFINE_ERROR(Name, Base, Class)                    \
  class Name : public Base {                                         \
   public:                                                           \
    explicit Name(const std::string& what) : Base(Class, what) {}   \
                                                                     \
   protected:                                                        \
    Name(ErrorClass cls, const std::string& what) : Base(cls, what) {} \
  };

WARINGLAB_DEFINE_ERROR(InvalidArgument, Error, ErrorClass::invalid_input)
WARINGLAB_DEFINE_ERROR(Overflow, InvalidArgument, ErrorClass::invalid_input)
WARINGLAB_DEFINE_ERROR(EmptyFiber, InvalidArgument, ErrorClass::invalid_input)

WARINGLAB_DEFINE_ERROR(DegenerateInput, Error, ErrorClass::degenerate)
WARINGLAB_DEFINE_ERROR(NonGenericCubic, DegenerateInput, ErrorClass::degenerate)
WARINGLAB_DEFINE_ERROR(NoPentahedron, DegenerateInput, ErrorClass::degenerate)
WARINGLAB_DEFINE_ERROR(UniquenessViolated, DegenerateInput, ErrorClass::degenerate)
WARINGLAB_DEFINE_ERROR(NotReal, DegenerateInput, ErrorClass::degenerate)
// A zero-dimensional solve that found the wrong number of solutions.
WARINGLAB_DEFINE_ERROR(CountMismatch, DegenerateInput, ErrorClass::degenerate)
// Converged starts landed on non-isolated (rank-deficient) solutions.
WARINGLAB_DEFINE_ERROR(NotZeroDimensional, CountMismatch, ErrorClass::degenerate)

WARINGLAB_DEFINE_ERROR(NoConvergence, Error, ErrorClass::convergence)
WARINGLAB_DEFINE_ERROR(SamplingFailure, Error, ErrorClass::convergence)

#undef WARINGLAB_DEFINE_ERROR

}  // namespace waringlab
