// config.hpp - flat sectioned key-value configs for the command-line front
// end, plus the validated per-command setups built from them.
//
// File format: "[section]" headers, "key = value" lines, full-line '#'
// comments, blank lines ignored.  Keys are addressed as "section.key";
// overrides without a dot land in the command's main section.
#pragma once

#include <complex>
#include <optional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "darkwell/analysis.hpp"
#include "darkwell/qsys.hpp"
#include "darkwell/wells.hpp"

namespace darkwell::cli {

// Configuration problems exit with status 2; the message is one line.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Config {
public:
    static Config from_file(const std::string& path, const std::string& default_section);

    void set(const std::string& key, const std::string& value);
    void apply_override(const std::string& key_value, const std::string& default_section);
    // fills in only the keys that are still missing
    void merge_defaults(const std::vector<std::pair<std::string, std::string>>& defaults);

    bool has(const std::string& key) const;
    std::string require_string(const std::string& key) const;
    double require_double(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    long get_long(const std::string& key, long fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

private:
    std::map<std::string, std::string> values_;
};

// Initial-state selector; the coefficients matter only for kind == bare.
struct InitSelector {
    InitKind kind = InitKind::left;
    cplx c1{}, c2{}, c3{};
};

Amplitudes resolve_init(const InitSelector& sel, const SystemParams& p);
// Lower-doublet view of the same selector (c3 must vanish); used for the
// analytic columns.  Returns nullopt when no two-level reduction exists.
std::optional<TwoLevelInit> resolve_two_level(const InitSelector& sel,
                                              const SystemParams& p);

struct RunSetup {
    std::string scenario;
    SystemParams params;
    InitSelector init;
    double t_end = 0.0;
    double dt = 0.0;           // 0 = automatic
    long sample_every = 0;     // 0 = automatic
    double eps = 1e-8;
    double t_max = 0.0;        // 0 = automatic
    std::string out;
};

struct SweepAxis {
    std::string param;  // omega1 | omega2 | gamma
    double start = 0.0;
    double stop = 0.0;
    long count = 0;

    double value_at(long i) const {
        if (count == 1) return start;
        return start + (stop - start) * static_cast<double>(i) /
                           static_cast<double>(count - 1);
    }
};

struct SweepSetup {
    SystemParams base;
    InitSelector init;
    std::vector<SweepAxis> axes;  // one or two
    double eps = 1e-10;
    double t_max = 0.0;  // 0 = per-point default
    double dt = 0.0;
    std::string out;
};

struct WellSetup {
    Potential potential;
    int n_points = 2000;
    int n_states = 2;
};

struct WellsSetup {
    WellSetup ground;
    std::optional<WellSetup> excited;
    double mu_E = 1.0;
    int excited_index = 0;
    bool write_eigenfunctions = false;
    std::string out;
};

RunSetup load_run_setup(Config& cfg);
SweepSetup load_sweep_setup(Config& cfg);
WellsSetup load_wells_setup(Config& cfg);

}  // namespace darkwell::cli
