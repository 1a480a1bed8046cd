#include "darkwell/errors.hpp"

namespace darkwell {

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::bad_argument: return "BadArgument";
        case Errc::not_normalized: return "NotNormalized";
        case Errc::zero_coupling: return "ZeroCoupling";
        case Errc::step_too_large: return "StepTooLarge";
        case Errc::norm_blowup: return "NormBlowup";
        case Errc::not_settled: return "NotSettled";
        case Errc::gamma_zero: return "GammaZero";
        case Errc::not_confined: return "NotConfined";
        case Errc::degenerate_doublet: return "DegenerateDoublet";
        case Errc::grid_mismatch: return "GridMismatch";
        case Errc::bad_potential: return "BadPotential";
    }
    return "UnknownError";
}

SimError::SimError(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

void fail(Errc code, const std::string& what) { throw SimError(code, what); }

}  // namespace darkwell
