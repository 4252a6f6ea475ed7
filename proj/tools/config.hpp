#pragma once

#include "mdiqkd/types.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace cli {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RangeSpec {
    double from = 0, to = 0, step = 1;

    std::vector<double> values() const;
};

enum class ScenarioType {
    point,
    sweep,
    fixed_mismatch,
    single_arm,
    network,
    compare
};

enum class ArmStrategy { free_params, symmetric_direct, symmetric_add_fibre };

struct CompareCase {
    std::string label;
    mdiqkd::Variant variant;
    bool symmetric;
};

struct Config {
    mdiqkd::DeviceParams dev;
    mdiqkd::Variant variant = mdiqkd::Variant::seven_intensity;
    bool symmetric = false;
    bool finite = false;
    double N = 0.0;
    int starts = 0; // 0 = per-variant default

    ScenarioType scenario = ScenarioType::point;
    double L_A = 0, L_B = 0;     // point / compare
    RangeSpec range_A, range_B;  // sweep / fixed_mismatch / single_arm
    double mismatch_x = 1.0;     // fixed_mismatch
    ArmStrategy strategy = ArmStrategy::free_params;
    double target_rate = 0.0; // single_arm; 0 = no max-distance search
    std::string node_file;
    std::vector<CompareCase> cases;
};

// throws ConfigError on anything unexpected, naming the offending field
Config parse_config_text(const std::string& text);
Config parse_config(const std::string& path);

} // namespace cli
