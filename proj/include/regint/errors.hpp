#pragma once

#include <stdexcept>
#include <string>

namespace regint {

// Every failure mode the library reports. Callers catch by the specific type
// or by std::runtime_error.
#define REGINT_ERROR(Name, Base)                                   \
  struct Name : Base {                                             \
    explicit Name(const std::string& what) : Base(#Name ": " + what) {} \
  }

REGINT_ERROR(PoleError, std::domain_error);
REGINT_ERROR(DomainError, std::domain_error);
REGINT_ERROR(ConvergenceError, std::runtime_error);
REGINT_ERROR(ContourError, std::runtime_error);
REGINT_ERROR(CenterMismatch, std::invalid_argument);
REGINT_ERROR(DivisionByZeroSeries, std::domain_error);
REGINT_ERROR(OrderRangeError, std::out_of_range);
REGINT_ERROR(ResidualPoleError, std::runtime_error);
REGINT_ERROR(UnsupportedOrder, std::invalid_argument);
REGINT_ERROR(StripViolation, std::domain_error);
REGINT_ERROR(IntegrabilityError, std::domain_error);
REGINT_ERROR(NonRegularizable, std::domain_error);
REGINT_ERROR(ZeroFunction, std::invalid_argument);
REGINT_ERROR(SingularMatrix, std::domain_error);
REGINT_ERROR(UnsupportedField, std::invalid_argument);
REGINT_ERROR(NonConvergent, std::domain_error);
REGINT_ERROR(AbscissaViolation, std::domain_error);
REGINT_ERROR(BudgetExceeded, std::invalid_argument);

#undef REGINT_ERROR

}  // namespace regint
