#include "relight/io/config.hpp"

#include <fstream>
#include <functional>
#include <map>

#include "relight/core/errors.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace relight {

namespace {

using Setter = std::function<void(RunConfig&, const json&)>;

[[noreturn]] void type_error(const std::string& key, const char* expected) {
    throw ValidationError("config key \"" + key + "\": expected " + expected);
}

double as_number(const std::string& key, const json& v) {
    if (!v.is_number()) type_error(key, "a number");
    return v.get<double>();
}

int as_int(const std::string& key, const json& v) {
    if (v.is_number_integer()) return v.get<int>();
    if (v.is_number_float()) {
        const double d = v.get<double>();
        if (d == static_cast<double>(static_cast<int>(d))) return static_cast<int>(d);
    }
    type_error(key, "an integer");
}

bool as_bool(const std::string& key, const json& v) {
    if (!v.is_boolean()) type_error(key, "true or false");
    return v.get<bool>();
}

std::string as_string(const std::string& key, const json& v) {
    if (!v.is_string()) type_error(key, "a string");
    return v.get<std::string>();
}

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = [] {
        std::map<std::string, Setter> t;
        auto num = [&t](const std::string& key, auto member) {
            t[key] = [key, member](RunConfig& c, const json& v) { member(c) = as_number(key, v); };
        };
        auto integer = [&t](const std::string& key, auto member) {
            t[key] = [key, member](RunConfig& c, const json& v) { member(c) = as_int(key, v); };
        };
        auto boolean = [&t](const std::string& key, auto member) {
            t[key] = [key, member](RunConfig& c, const json& v) { member(c) = as_bool(key, v); };
        };
        auto path = [&t](const std::string& key, auto member) {
            t[key] = [key, member](RunConfig& c, const json& v) { member(c) = fs::path(as_string(key, v)); };
        };

        // Temporal smoother
        num("alpha_base", [](RunConfig& c) -> double& { return c.smoother.alpha_base; });
        boolean("adaptive", [](RunConfig& c) -> bool& { return c.smoother.adaptive; });
        num("motion_scale", [](RunConfig& c) -> double& { return c.smoother.motion_scale; });
        num("alpha_floor", [](RunConfig& c) -> double& { return c.smoother.alpha_floor; });
        integer("window_size", [](RunConfig& c) -> int& { return c.smoother.window_size; });
        num("window_decay", [](RunConfig& c) -> double& { return c.smoother.window_decay; });
        num("bilateral.sigma_spatial", [](RunConfig& c) -> double& { return c.bilateral.sigma_spatial; });
        num("bilateral.sigma_range", [](RunConfig& c) -> double& { return c.bilateral.sigma_range; });
        integer("bilateral.radius", [](RunConfig& c) -> int& { return c.bilateral.radius; });

        // Optical flow
        integer("flow.pyramid_levels", [](RunConfig& c) -> int& { return c.flow.pyramid_levels; });
        num("flow.pyramid_scale", [](RunConfig& c) -> double& { return c.flow.pyramid_scale; });
        integer("flow.window_size", [](RunConfig& c) -> int& { return c.flow.window_size; });
        integer("flow.iterations", [](RunConfig& c) -> int& { return c.flow.iterations; });
        integer("flow.poly_n", [](RunConfig& c) -> int& { return c.flow.poly_n; });
        num("flow.poly_sigma", [](RunConfig& c) -> double& { return c.flow.poly_sigma; });

        // Guidance and fusion
        num("gamma", [](RunConfig& c) -> double& { return c.guidance.gamma; });
        num("sigma_prior", [](RunConfig& c) -> double& { return c.guidance.sigma_prior; });
        integer("steps", [](RunConfig& c) -> int& { return c.guidance.total_steps; });
        t["guidance_mode"] = [](RunConfig& c, const json& v) {
            const std::string s = as_string("guidance_mode", v);
            if (s == "convex") c.guidance.mode = GuidanceMode::convex;
            else if (s == "literal") c.guidance.mode = GuidanceMode::literal;
            else throw ValidationError("config key \"guidance_mode\": expected convex or literal");
        };
        num("beta", [](RunConfig& c) -> double& { return c.fusion.beta; });
        num("sigma_illum", [](RunConfig& c) -> double& { return c.fusion.sigma_illum; });
        t["fuse_mode"] = [](RunConfig& c, const json& v) {
            const std::string s = as_string("fuse_mode", v);
            if (s == "mean_compensated") c.fusion.mode = LabFuseMode::mean_compensated;
            else if (s == "literal") c.fusion.mode = LabFuseMode::literal;
            else throw ValidationError("config key \"fuse_mode\": expected mean_compensated or literal");
        };

        // Metrics
        num("tau", [](RunConfig& c) -> double& { return c.stability.tau; });
        num("k_I", [](RunConfig& c) -> double& { return c.stability.k_I; });
        num("k_C", [](RunConfig& c) -> double& { return c.stability.k_C; });
        num("k_dI", [](RunConfig& c) -> double& { return c.stability.k_dI; });
        integer("ssim.window", [](RunConfig& c) -> int& { return c.ssim.window; });
        num("ssim.window_sigma", [](RunConfig& c) -> double& { return c.ssim.window_sigma; });
        num("ssim.c1", [](RunConfig& c) -> double& { return c.ssim.c1; });
        num("ssim.c2", [](RunConfig& c) -> double& { return c.ssim.c2; });
        num("ssim.c3", [](RunConfig& c) -> double& { return c.ssim.c3; });

        // Run
        boolean("downsample", [](RunConfig& c) -> bool& { return c.downsample; });
        integer("working_height", [](RunConfig& c) -> int& { return c.working_height; });
        integer("reference_height", [](RunConfig& c) -> int& { return c.reference_height; });
        num("fps", [](RunConfig& c) -> double& { return c.fps; });
        path("input", [](RunConfig& c) -> fs::path& { return c.input; });
        path("relit", [](RunConfig& c) -> fs::path& { return c.relit; });
        path("output", [](RunConfig& c) -> fs::path& { return c.output; });
        return t;
    }();
    return table;
}

void flatten(const json& node, const std::string& prefix, std::map<std::string, json>& out) {
    for (const auto& [key, value] : node.items()) {
        const std::string full = prefix.empty() ? key : prefix + "." + key;
        if (value.is_object()) {
            flatten(value, full, out);
        } else {
            out[full] = value;
        }
    }
}

}  // namespace

void RunConfig::validate() const {
    flow.validate();
    smoother.validate();
    bilateral.validate();
    guidance.validate();
    require(guidance.gamma >= 0.0, "gamma must be >= 0");
    fusion.validate();
    stability.validate();
    ssim.validate();
    require(working_height >= 1, "working_height must be >= 1");
    require(reference_height >= 1, "reference_height must be >= 1");
    require(fps > 0.0, "fps must be > 0");
}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& [name, _] : setters()) k.push_back(name);
        return k;
    }();
    return keys;
}

void apply_setting(RunConfig& cfg, const std::string& key, const json& value) {
    const auto& table = setters();
    const auto it = table.find(key);
    if (it == table.end()) throw ValidationError("unknown config key \"" + key + "\"");
    it->second(cfg, value);
}

void apply_setting(RunConfig& cfg, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw ValidationError("setting \"" + assignment + "\" is not of the form key=value");
    }
    const std::string key = assignment.substr(0, eq);
    const std::string text = assignment.substr(eq + 1);
    json value = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (value.is_discarded()) value = text;
    apply_setting(cfg, key, value);
}

RunConfig parse_config(const json& doc, RunConfig base) {
    if (!doc.is_object()) throw ValidationError("config must be a JSON object");
    std::map<std::string, json> flat;
    flatten(doc, "", flat);
    // std::map iteration is sorted, so key order in the document is irrelevant.
    for (const auto& [key, value] : flat) apply_setting(base, key, value);
    base.validate();
    return base;
}

RunConfig load_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw ValidationError(path.string() + ": malformed config: " + e.what());
    }
    return parse_config(doc);
}

json to_json(const RunConfig& c) {
    return {
        {"alpha_base", c.smoother.alpha_base},
        {"adaptive", c.smoother.adaptive},
        {"motion_scale", c.smoother.motion_scale},
        {"alpha_floor", c.smoother.alpha_floor},
        {"window_size", c.smoother.window_size},
        {"window_decay", c.smoother.window_decay},
        {"bilateral", {{"sigma_spatial", c.bilateral.sigma_spatial},
                       {"sigma_range", c.bilateral.sigma_range},
                       {"radius", c.bilateral.radius}}},
        {"flow", {{"pyramid_levels", c.flow.pyramid_levels},
                  {"pyramid_scale", c.flow.pyramid_scale},
                  {"window_size", c.flow.window_size},
                  {"iterations", c.flow.iterations},
                  {"poly_n", c.flow.poly_n},
                  {"poly_sigma", c.flow.poly_sigma}}},
        {"gamma", c.guidance.gamma},
        {"sigma_prior", c.guidance.sigma_prior},
        {"steps", c.guidance.total_steps},
        {"guidance_mode", c.guidance.mode == GuidanceMode::convex ? "convex" : "literal"},
        {"beta", c.fusion.beta},
        {"sigma_illum", c.fusion.sigma_illum},
        {"fuse_mode", c.fusion.mode == LabFuseMode::mean_compensated ? "mean_compensated" : "literal"},
        {"tau", c.stability.tau},
        {"k_I", c.stability.k_I},
        {"k_C", c.stability.k_C},
        {"k_dI", c.stability.k_dI},
        {"ssim", {{"window", c.ssim.window},
                  {"window_sigma", c.ssim.window_sigma},
                  {"c1", c.ssim.c1},
                  {"c2", c.ssim.c2},
                  {"c3", c.ssim.c3}}},
        {"downsample", c.downsample},
        {"working_height", c.working_height},
        {"reference_height", c.reference_height},
        {"fps", c.fps},
    };
}

}  // namespace relight
