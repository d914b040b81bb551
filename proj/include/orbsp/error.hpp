#pragma once

#include <stdexcept>
#include <string>

namespace orbsp {

enum class Errc {
    Malformed,
    Excluded,
    BadIncidence,
    BadCounts,
    Disconnected,
    BadOrbifold,
    BadTopology,
    NotAnArc,
    NotTwoAcyclic,
    NotACocycle,
    NotAFlipPair,
    LiftMismatch,
    BadPrime,
    CutoffRequired,
    NotCertified,
    ShortCycleThroughK,
    NonInvertiblePairing,
    Unsupported,
};

inline const char* errc_name(Errc c) {
    switch (c) {
    case Errc::Malformed: return "Malformed";
    case Errc::Excluded: return "Excluded";
    case Errc::BadIncidence: return "BadIncidence";
    case Errc::BadCounts: return "BadCounts";
    case Errc::Disconnected: return "Disconnected";
    case Errc::BadOrbifold: return "BadOrbifold";
    case Errc::BadTopology: return "BadTopology";
    case Errc::NotAnArc: return "NotAnArc";
    case Errc::NotTwoAcyclic: return "NotTwoAcyclic";
    case Errc::NotACocycle: return "NotACocycle";
    case Errc::NotAFlipPair: return "NotAFlipPair";
    case Errc::LiftMismatch: return "LiftMismatch";
    case Errc::BadPrime: return "BadPrime";
    case Errc::CutoffRequired: return "CutoffRequired";
    case Errc::NotCertified: return "NotCertified";
    case Errc::ShortCycleThroughK: return "ShortCycleThroughK";
    case Errc::NonInvertiblePairing: return "NonInvertiblePairing";
    case Errc::Unsupported: return "Unsupported";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc c, const std::string& what)
        : std::runtime_error(std::string(errc_name(c)) + ": " + what), code_(c) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

} // namespace orbsp
