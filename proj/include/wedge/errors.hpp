#pragma once
#include <stdexcept>
#include <string>

namespace wedge {

// All domain errors derive from Error so callers can catch the family at once.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// smatrix
struct PoleProximity : Error { using Error::Error; };
struct NotAPole : Error { using Error::Error; };
struct ContourInconsistent : Error { using Error::Error; };
struct InvalidParameter : Error { using Error::Error; };
struct EvenFactorCount : Error { using Error::Error; };
struct OrbitOverflow : Error { using Error::Error; };

// wedgefn
struct QuadratureBudgetExceeded : Error { using Error::Error; };

// fock
struct UncancelledPole : Error { using Error::Error; };
struct TooManyParticles : Error { using Error::Error; };
struct MismatchedParticleNumber : Error { using Error::Error; };

// fields
struct DomainViolation : Error { using Error::Error; };
struct WedgeMismatch : Error { using Error::Error; };

// cli
struct ConfigError : Error { using Error::Error; };

} // namespace wedge
