// scenarios.hpp - built-in simulation presets; each is just a bundle of
// config defaults merged under keys the user has not set.
#pragma once

#include <string>
#include <utility>
#include <vector>

namespace darkwell::cli {

struct Scenario {
    std::string name;
    std::string description;
    std::vector<std::pair<std::string, std::string>> defaults;
};

const std::vector<Scenario>& builtin_scenarios();
const Scenario* find_scenario(const std::string& name);

}  // namespace darkwell::cli
