#include "relight/io/report_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "relight/core/errors.hpp"

using nlohmann::json;

namespace relight {

json to_json(const StabilityReport& r) {
    return {
        {"s_I", r.s_I},           {"s_C", r.s_C},           {"s_dI", r.s_dI},
        {"s_LS", r.s_LS},         {"u_norm_I", r.u_norm_I}, {"u_norm_C", r.u_norm_C},
        {"u_norm_dI", r.u_norm_dI},
    };
}

json to_json(const EvalReport& report) {
    json doc = to_json(report.candidate);
    doc["tau"] = report.params.tau;
    doc["k_I"] = report.params.k_I;
    doc["k_C"] = report.params.k_C;
    doc["k_dI"] = report.params.k_dI;
    doc["frames"] = report.candidate.intensity.values.size();
    if (report.ssim) doc["ssim"] = *report.ssim;
    if (report.high_freq_ratio) doc["high_freq_ratio"] = *report.high_freq_ratio;
    if (report.reference) doc["reference"] = to_json(*report.reference);
    return doc;
}

void write_json(const json& doc, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << doc.dump(2) << '\n';
    if (!out) throw IoError("failed writing " + path.string());
}

std::string signals_csv(const StabilityReport& r) {
    std::ostringstream out;
    out << std::setprecision(12);
    out << "frame,I_t,C_t,dI_t\n";
    for (std::size_t i = 0; i < r.intensity.values.size(); ++i) {
        out << i << ',' << r.intensity.values[i] << ',' << r.count.values[i] << ',';
        if (i > 0) out << r.derivative.values[i - 1];
        out << '\n';
    }
    return out.str();
}

void write_signals_csv(const StabilityReport& r, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << signals_csv(r);
    if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace relight
