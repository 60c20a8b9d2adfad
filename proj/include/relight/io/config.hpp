#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "relight/flow/flow.hpp"
#include "relight/fusion/fusion.hpp"
#include "relight/metrics/ssim.hpp"
#include "relight/metrics/stability.hpp"
#include "relight/temporal/smoother.hpp"

namespace relight {

/// Every tunable of the pipeline. Sigma values of the lightness prior and
/// the illumination low-pass are given at `reference_height` and scaled to
/// the actual frame height by the pipeline.
struct RunConfig {
    FlowParams flow;
    SmootherConfig smoother;
    BilateralParams bilateral;
    GuidanceSchedule guidance;
    LabFuseConfig fusion;
    StabilityParams stability;
    SsimParams ssim;

    bool downsample = false;   // resize the relit input to working_height first
    int working_height = 480;
    int reference_height = 480;
    double fps = 24.0;

    std::filesystem::path input;
    std::filesystem::path relit;
    std::filesystem::path output;

    void validate() const;
};

/// Keys accepted by load_config / apply_setting, in dotted form.
const std::vector<std::string>& config_keys();

/// Nested objects are flattened to dotted keys ("bilateral": {"radius": 6}
/// is the same as "bilateral.radius": 6). Absent keys keep their defaults.
/// Throws ValidationError naming the offending key.
RunConfig parse_config(const nlohmann::json& doc, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path);

/// Applies one `key=value` override; the value is parsed as JSON when
/// possible and taken as a string otherwise. Does not re-validate.
void apply_setting(RunConfig& cfg, const std::string& assignment);
void apply_setting(RunConfig& cfg, const std::string& key, const nlohmann::json& value);

nlohmann::json to_json(const RunConfig& cfg);

}  // namespace relight
