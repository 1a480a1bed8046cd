#include "cli/scenarios.hpp"

namespace darkwell::cli {

// Rabi couplings are quoted in units of a reference doublet splitting
// delta = 1, so "10 tunneling periods" is t = 20 pi.
const std::vector<Scenario>& builtin_scenarios() {
    static const std::vector<Scenario> scenarios = {
        {"free-tunneling",
         "field off: wavepacket oscillates between the wells, P_L = cos^2(t/2)",
         {{"run.omega1", "0"},
          {"run.omega2", "0"},
          {"run.delta1", "0"},
          {"run.delta2", "1"},
          {"run.gamma", "0"},
          {"run.init", "left"},
          {"run.t_end", "12.566370614359172"}}},
        {"kilin-suppression",
         "omega2 = -omega1, right init is the dark state: P_R pinned at 1 for 10 "
         "tunneling periods",
         {{"run.omega1", "-5"},
          {"run.omega2", "5"},
          {"run.delta1", "0"},
          {"run.delta2", "0"},
          {"run.gamma", "0"},
          {"run.init", "right"},
          {"run.t_end", "62.831853071795865"}}},
        {"kilin-exchange",
         "omega2 = -omega1, left init is purely bright: P_L and P3 swap at frequency "
         "2 Omega, P_R stays 0",
         {{"run.omega1", "-5"},
          {"run.omega2", "5"},
          {"run.delta1", "0"},
          {"run.delta2", "0"},
          {"run.gamma", "0"},
          {"run.init", "left"},
          {"run.t_end", "62.831853071795865"}}},
        {"decay-right-trapping",
         "decaying upper state, right init: the dark state keeps P_R = 1 while "
         "anything bright leaves the system",
         {{"run.omega1", "-1"},
          {"run.omega2", "1"},
          {"run.delta1", "0"},
          {"run.delta2", "0"},
          {"run.gamma", "0.70710678118654752"},
          {"run.init", "right"},
          {"run.t_end", "50"}}},
        {"dark-localization",
         "unequal couplings, dark init: split localization P_L = 0.9, P_R = 0.1, "
         "constant in time and immune to decay",
         {{"run.omega1", "1"},
          {"run.omega2", "2"},
          {"run.delta1", "0"},
          {"run.delta2", "0"},
          {"run.gamma", "0.5"},
          {"run.init", "dark"},
          {"run.t_end", "50"}}},
        {"left-decay-asymptotics",
         "unequal couplings, left init under decay: damped tunneling settles at "
         "P_L = 0.81, P_R = 0.09",
         {{"run.omega1", "1"},
          {"run.omega2", "2"},
          {"run.delta1", "0"},
          {"run.delta2", "0"},
          {"run.gamma", "1"},
          {"run.init", "left"},
          {"run.t_end", "120"}}},
    };
    return scenarios;
}

const Scenario* find_scenario(const std::string& name) {
    for (const Scenario& s : builtin_scenarios()) {
        if (s.name == name) return &s;
    }
    return nullptr;
}

}  // namespace darkwell::cli
