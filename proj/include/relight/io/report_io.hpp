#pragma once

#include <filesystem>

#include <json.hpp>

#include "relight/metrics/report.hpp"

namespace relight {

nlohmann::json to_json(const StabilityReport& r);

/// Flat keys s_I, s_C, s_dI, s_LS, u_norm_*, tau, k_*, plus ssim and
/// high_freq_ratio when a reference was given, and a "reference" object with
/// the reference video's stability scores.
nlohmann::json to_json(const EvalReport& report);

void write_json(const nlohmann::json& doc, const std::filesystem::path& path);

/// CSV with header `frame,I_t,C_t,dI_t`; dI_t of frame i is I_i - I_{i-1}
/// (empty for frame 0).
void write_signals_csv(const StabilityReport& r, const std::filesystem::path& path);
std::string signals_csv(const StabilityReport& r);

}  // namespace relight
