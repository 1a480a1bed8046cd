// errors.hpp - named failure codes shared across the library
#pragma once

#include <stdexcept>
#include <string>

namespace darkwell {

enum class Errc {
    bad_argument,
    not_normalized,
    zero_coupling,
    step_too_large,
    norm_blowup,
    not_settled,
    gamma_zero,
    not_confined,
    degenerate_doublet,
    grid_mismatch,
    bad_potential,
};

const char* errc_name(Errc code);

class SimError : public std::runtime_error {
public:
    SimError(Errc code, const std::string& what);
    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

}  // namespace darkwell
