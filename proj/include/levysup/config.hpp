#pragma once

#include "levysup/levy_model.hpp"
#include "levysup/pricing.hpp"
#include "levysup/quadrature.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace levysup {

// Flat INI-like key=value configuration with dotted section prefixes
// (model.*, market.*, option.*, study.*, output.*). '#' starts a comment.
// Unknown or duplicate keys are rejected.
struct RunConfig {
    LevyModel model;
    MarketSpec market;
    OptionSpec option;
    bool has_option = false;
    std::vector<long> n_list;
    long paths = 100000;
    std::uint64_t seed = 1;
    std::string engine = "spitzer"; // or "mc"
    double t = 1.0;                 // gap-study horizon
    QuadSpec quad;
    std::string out_path;
};

RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

} // namespace levysup
