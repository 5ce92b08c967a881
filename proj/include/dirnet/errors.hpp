// errors.hpp: exception types raised by the solver, protocol and CLI layers

#pragma once

#include <stdexcept>
#include <string>

namespace dirnet {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// model
struct InvalidGeometry : Error { using Error::Error; };
struct InvalidConfig : Error { using Error::Error; };
struct SingularSelfEnergy : Error { using Error::Error; };

// scattering
struct NumericallySingular : Error {
    NumericallySingular(const std::string& what, double rcond)
        : Error(what), rcond_estimate(rcond) {}
    double rcond_estimate;
};
struct FluxViolation : Error { using Error::Error; };
struct OracleDiverged : Error { using Error::Error; };

// dir
struct SingularResponse : Error { using Error::Error; };
struct InfinitePurcell : Error { using Error::Error; };

// entangle
struct MatchingUndefined : Error { using Error::Error; };
struct InvalidEfficiency : Error { using Error::Error; };
struct NoDetectionProbability : Error { using Error::Error; };
struct InvalidState : Error { using Error::Error; };

// validity
struct InvalidPulse : Error { using Error::Error; };
struct InvalidMaterial : Error { using Error::Error; };

// cli
struct UsageError : Error { using Error::Error; };

}  // namespace dirnet
