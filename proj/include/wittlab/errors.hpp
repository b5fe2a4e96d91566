#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace wittlab {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DomainError : public Error { using Error::Error; };
class DivisionByZero : public Error { using Error::Error; };
class ModulusMismatch : public Error { using Error::Error; };
class PrecisionWindowInvalid : public Error { using Error::Error; };
class PrecisionExhausted : public Error { using Error::Error; };
class NotInvertible : public Error { using Error::Error; };
class InvalidBreak : public Error { using Error::Error; };
class InvalidF : public Error { using Error::Error; };
class NotTraceZero : public Error { using Error::Error; };
class NotDivisible : public Error { using Error::Error; };
class BudgetExceeded : public Error { using Error::Error; };
class CacheMiss : public Error { using Error::Error; };
class CacheCorrupt : public Error { using Error::Error; };
class NotStabilized : public Error { using Error::Error; };
class SamplingInconclusive : public Error { using Error::Error; };
class ConfigError : public Error { using Error::Error; };
class IoError : public Error { using Error::Error; };

// Signals an arithmetic identity the library relies on failed to hold;
// always indicates a bug (or deliberately injected corruption in tests).
class ContractViolation : public Error { using Error::Error; };

// Raised by solve_trace when the right-hand side is certifiably below the
// trace image of O_L. Carries the certified valuation when known.
class TraceUnsolvable : public Error {
public:
    TraceUnsolvable(const std::string& what, std::optional<long long> vK)
        : Error(what), certified_valuation(vK) {}
    std::optional<long long> certified_valuation;
};

}  // namespace wittlab
