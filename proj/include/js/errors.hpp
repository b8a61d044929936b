#pragma once
#include <stdexcept>
#include <string>

namespace js {

/// Base of every library error. The exit code is what the CLI returns.
class Error : public std::runtime_error {
 public:
  Error(const std::string& what, int code) : std::runtime_error(what), code_(code) {}
  int exit_code() const { return code_; }

 private:
  int code_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what, 2) {}
};

class ConvergenceError : public Error {
 public:
  explicit ConvergenceError(const std::string& what) : Error(what, 3) {}
};

#define JS_DOMAIN_ERROR(Name)                                          \
  class Name : public DomainError {                                    \
   public:                                                             \
    explicit Name(const std::string& w) : DomainError(#Name ": " + w) {} \
  };

#define JS_CONV_ERROR(Name)                                                 \
  class Name : public ConvergenceError {                                    \
   public:                                                                  \
    explicit Name(const std::string& w) : ConvergenceError(#Name ": " + w) {} \
  };

JS_DOMAIN_ERROR(BranchPointError)
JS_DOMAIN_ERROR(AmbiguousRegime)
JS_DOMAIN_ERROR(OverflowGuard)
JS_DOMAIN_ERROR(BreakdownError)
JS_DOMAIN_ERROR(PositivityError)
JS_DOMAIN_ERROR(MarginError)
JS_DOMAIN_ERROR(ZeroCrossing)
JS_DOMAIN_ERROR(PoleError)
JS_DOMAIN_ERROR(GridTooCoarse)
JS_DOMAIN_ERROR(NotShortRange)
JS_DOMAIN_ERROR(MomentConditionFail)
JS_DOMAIN_ERROR(SzegoDivergence)
JS_DOMAIN_ERROR(EigenvalueHit)
JS_CONV_ERROR(NoConvergence)
JS_CONV_ERROR(TailTooLarge)

#undef JS_DOMAIN_ERROR
#undef JS_CONV_ERROR

}  // namespace js
