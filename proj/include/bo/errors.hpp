#ifndef BO_ERRORS_HPP
#define BO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bo {

/// Base class for all numerical/domain failures raised by this library.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DomainError : Error { using Error::Error; };

// spectral / Birkhoff pipeline
struct PhaseDegenerate : Error { using Error::Error; };
struct GapViolation : Error { using Error::Error; };
struct NearPole : Error { using Error::Error; };
struct NonPositiveKappa : Error { using Error::Error; };

// finite-gap inverse
struct ZeroDenominator : Error { using Error::Error; };
struct MissingGap : Error { using Error::Error; };
struct RootInsideDisc : Error { using Error::Error; };

// time stepping
struct BlowupDetected : Error { using Error::Error; };
struct StepTooLarge : Error { using Error::Error; };
struct GridMismatch : Error { using Error::Error; };

// quadrature / root finding
struct QuadratureNotConverged : Error { using Error::Error; };
struct NoBracket : Error { using Error::Error; };
struct TruncationInsufficient : Error { using Error::Error; };
struct IntervalTooShort : Error { using Error::Error; };

}  // namespace bo

#endif
