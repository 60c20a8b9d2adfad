#include "relight/app/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "relight/app/pipeline.hpp"
#include "relight/app/synth.hpp"
#include "relight/core/errors.hpp"
#include "relight/core/parallel.hpp"
#include "relight/core/spectrum.hpp"
#include "relight/io/config.hpp"
#include "relight/io/png_io.hpp"
#include "relight/io/report_io.hpp"
#include "relight/io/sequence.hpp"
#include "relight/metrics/stats.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace relight {

namespace {

struct Options {
    std::string config;
    std::vector<std::string> sets;
    int threads = 0;
    std::optional<double> tau;
    std::optional<double> beta;
    std::optional<double> alpha;
    std::string json_path;
    std::string csv_path;

    std::string input;
    std::string relit;
    std::string output;
    std::string reference;
    std::vector<std::string> inputs;
    std::vector<double> taus;
    int bins = 32;
    double cutoff = 0.25;
    bool per_frame = false;
    SynthParams synth;
};

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--config", o.config, "JSON config file");
    cmd->add_option("--set", o.sets, "Override a config key (key=value); repeatable");
    cmd->add_option("--threads", o.threads, "Worker thread cap (0 = auto)");
    cmd->add_option("--tau", o.tau, "Brightness threshold (0..255)");
    cmd->add_option("--beta", o.beta, "LAB fusion strength");
    cmd->add_option("--alpha", o.alpha, "Base temporal blend weight");
    cmd->add_option("--json", o.json_path, "Write the JSON report here");
    cmd->add_option("--csv", o.csv_path, "Write the CSV export here");
}

RunConfig build_config(const Options& o) {
    RunConfig cfg = o.config.empty() ? RunConfig{} : load_config(o.config);
    for (const std::string& s : o.sets) apply_setting(cfg, s);
    if (o.tau) cfg.stability.tau = *o.tau;
    if (o.beta) cfg.fusion.beta = *o.beta;
    if (o.alpha) cfg.smoother.alpha_base = *o.alpha;
    cfg.validate();
    return cfg;
}

// Frames as they will read back from 8-bit PNG.
std::vector<Frame> quantize(std::span<const Frame> frames) {
    std::vector<Frame> out;
    out.reserve(frames.size());
    for (const Frame& f : frames) out.push_back(Frame::from_8bit(f.width, f.height, f.to_8bit()));
    return out;
}

void write_text(const std::string& text, const fs::path& path) {
    std::ofstream f(path);
    if (!f) throw IoError("cannot open " + path.string() + " for writing");
    f << text;
    if (!f) throw IoError("failed writing " + path.string());
}

std::vector<Frame> load_frames(const std::string& path, const char* what) {
    if (path.empty()) throw UsageError(std::string(what) + " sequence is required");
    return load_sequence(path).frames;
}

int cmd_smooth(const Options& o, const RunConfig& cfg, std::ostream& out) {
    const LoadedSequence in = load_sequence(o.input);
    const std::vector<Frame> smoothed = quantize(run_smooth(in.frames, cfg));
    save_sequence(smoothed, o.output, in.manifest.fps);

    if (in.frames.size() < 3) {
        out << "S_LS: needs at least 3 frames\n";
        return 0;
    }
    const StabilityReport before = light_stability_score(to_grayscale(in.frames), cfg.stability);
    const StabilityReport after = light_stability_score(to_grayscale(smoothed), cfg.stability);
    out << std::setprecision(6) << std::fixed << "S_LS before: " << before.s_LS << '\n'
        << "S_LS after:  " << after.s_LS << '\n';
    if (!o.json_path.empty()) write_json({{"before", to_json(before)}, {"after", to_json(after)}}, o.json_path);
    if (!o.csv_path.empty()) write_signals_csv(after, o.csv_path);
    return 0;
}

int cmd_fuse(const Options& o, const RunConfig& cfg, std::ostream& out) {
    const LoadedSequence original = load_sequence(o.input);
    const std::vector<Frame> relit = load_frames(o.relit, "relit");
    const std::vector<Frame> fused = quantize(run_fuse(original.frames, relit, cfg));
    save_sequence(fused, o.output, original.manifest.fps);

    const Frame& first = original.frames.front();
    const double s_out = ssim_video(fused, original.frames, cfg.ssim);
    const double s_relit = ssim_video(resize_all(relit, first.width, first.height), original.frames, cfg.ssim);
    out << std::setprecision(6) << std::fixed << "SSIM(output, original): " << s_out << '\n'
        << "SSIM(relit, original):  " << s_relit << '\n';
    if (!o.json_path.empty()) write_json({{"ssim", s_out}, {"ssim_relit", s_relit}}, o.json_path);
    return 0;
}

int cmd_pipeline(const Options& o, const RunConfig& cfg, std::ostream& out) {
    const LoadedSequence original = load_sequence(o.input);
    const std::vector<Frame> relit = load_frames(o.relit, "relit");
    PipelineResult result = run_pipeline(original.frames, relit, cfg);
    result.output = quantize(result.output);
    save_sequence(result.output, o.output, original.manifest.fps);

    const json doc = to_json(result);
    write_json(doc, o.json_path.empty() ? fs::path(o.output) / "report.json" : fs::path(o.json_path));
    if (!o.csv_path.empty()) write_signals_csv(result.report.candidate, o.csv_path);
    out << doc.dump(2) << '\n';
    return 0;
}

int cmd_eval(const Options& o, const RunConfig& cfg, std::ostream& out) {
    const std::vector<Frame> candidate = load_frames(o.input, "input");
    std::vector<Frame> reference;
    if (!o.reference.empty()) reference = load_sequence(o.reference).frames;
    const EvalReport report = evaluate(candidate, reference, cfg.stability, cfg.ssim);
    const json doc = to_json(report);
    if (!o.json_path.empty()) write_json(doc, o.json_path);
    if (!o.csv_path.empty()) write_signals_csv(report.candidate, o.csv_path);
    out << doc.dump(2) << '\n';
    return 0;
}

int cmd_sweep_tau(const Options& o, const RunConfig& cfg, std::ostream& out) {
    if (o.inputs.empty()) throw UsageError("sweep-tau needs at least one --input");
    const std::vector<double> taus = o.taus.empty() ? kDefaultTauSweep : o.taus;

    // scores[v][t]
    std::vector<std::vector<double>> scores;
    for (const std::string& path : o.inputs) {
        const auto gray = to_grayscale(load_sequence(path).frames);
        std::vector<double> row;
        for (const TauScore& ts : tau_sensitivity(gray, taus, cfg.stability)) row.push_back(ts.s_LS);
        scores.push_back(std::move(row));
    }

    std::vector<std::vector<int>> ranks(o.inputs.size());
    for (std::size_t t = 0; t < taus.size(); ++t) {
        std::vector<double> column;
        for (const auto& row : scores) column.push_back(row[t]);
        const std::vector<int> r = rank_descending(column);
        for (std::size_t v = 0; v < r.size(); ++v) ranks[v].push_back(r[v]);
    }
    bool consistent = true;
    for (const auto& r : ranks) {
        for (int x : r) consistent = consistent && x == r.front();
    }

    std::ostringstream csv;
    csv << std::setprecision(12) << "video,tau,s_LS,rank\n";
    for (std::size_t v = 0; v < o.inputs.size(); ++v) {
        for (std::size_t t = 0; t < taus.size(); ++t) {
            csv << o.inputs[v] << ',' << taus[t] << ',' << scores[v][t] << ',' << ranks[v][t] << '\n';
        }
    }
    out << csv.str();
    if (!o.csv_path.empty()) write_text(csv.str(), o.csv_path);
    if (!o.json_path.empty()) {
        write_json({{"taus", taus}, {"videos", o.inputs}, {"s_LS", scores}, {"ranks", ranks},
                    {"ranking_consistent", consistent}},
                   o.json_path);
    }
    return 0;
}

int cmd_spectrum(const Options& o, const RunConfig&, std::ostream& out) {
    const auto gray = to_grayscale(load_frames(o.input, "input"));
    std::vector<Spectrum> spectra;
    for (const GrayFrame& g : gray) spectra.push_back(magnitude_spectrum(g));
    const Spectrum mean = mean_spectrum(spectra);

    if (!o.output.empty()) {
        if (o.per_frame) {
            fs::create_directories(o.output);
            for (std::size_t i = 0; i < spectra.size(); ++i) {
                char name[32];
                std::snprintf(name, sizeof name, "spectrum_%04zu.pgm", i);
                const Plane& lm = spectra[i].log_magnitude;
                write_pgm(lm, fs::path(o.output) / name, 0.0f, lm.max_value());
            }
        } else {
            write_pgm(mean.log_magnitude, o.output, 0.0f, mean.log_magnitude.max_value());
        }
    }

    json doc = {{"frames", gray.size()}, {"width", mean.width}, {"height", mean.height}, {"cutoff", o.cutoff}};
    if (!o.reference.empty()) {
        const auto ref = to_grayscale(load_sequence(o.reference).frames);
        std::vector<Spectrum> ref_spectra;
        for (const GrayFrame& g : ref) ref_spectra.push_back(magnitude_spectrum(g));
        doc["high_freq_ratio"] = high_freq_energy_ratio(mean, mean_spectrum(ref_spectra), o.cutoff);
    }
    if (!o.json_path.empty()) write_json(doc, o.json_path);
    out << doc.dump(2) << '\n';
    return 0;
}

int cmd_hist(const Options& o, const RunConfig&, std::ostream& out) {
    const auto gray = to_grayscale(load_frames(o.input, "input"));
    const std::vector<std::uint64_t> counts = brightness_histogram(gray, o.bins);
    const int width = 256 / o.bins;
    std::ostringstream csv;
    csv << "bin,lo,hi,count\n";
    for (std::size_t b = 0; b < counts.size(); ++b) {
        const int lo = static_cast<int>(b) * width;
        csv << b << ',' << lo << ',' << lo + width - 1 << ',' << counts[b] << '\n';
    }
    out << csv.str();
    if (!o.csv_path.empty()) write_text(csv.str(), o.csv_path);
    return 0;
}

int cmd_synth(const Options& o, const RunConfig& cfg, std::ostream& out) {
    const SynthResult r = synthesize(o.synth);
    if (o.output.empty()) throw UsageError("synth needs --output");
    save_sequence(r.frames, o.output, cfg.fps);
    if (!r.truth.is_null()) write_json(r.truth, fs::path(o.output) / "truth.json");
    out << "wrote " << r.frames.size() << " frames to " << o.output << '\n';
    return 0;
}

int report(const Error& e, std::ostream& err) {
    err << "error[" << e.exit_code() << "]: " << e.what() << '\n';
    return e.exit_code();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Post-processing and evaluation of relit videos", "relight"};
    app.require_subcommand(1);

    auto* smooth = app.add_subcommand("smooth", "Motion-adaptive temporal smoothing of a frame sequence");
    smooth->add_option("-i,--input", o.input, "Input sequence")->required();
    smooth->add_option("-o,--output", o.output, "Output directory")->required();

    auto* fuse = app.add_subcommand("fuse", "Transfer relit illumination onto the original frames");
    fuse->add_option("-i,--input", o.input, "Original sequence")->required();
    fuse->add_option("-r,--relit", o.relit, "Relit sequence")->required();
    fuse->add_option("-o,--output", o.output, "Output directory")->required();

    auto* pipeline = app.add_subcommand("pipeline", "Smooth the relit video, fuse it and evaluate");
    pipeline->add_option("-i,--input", o.input, "Original sequence")->required();
    pipeline->add_option("-r,--relit", o.relit, "Relit sequence")->required();
    pipeline->add_option("-o,--output", o.output, "Output directory")->required();

    auto* eval = app.add_subcommand("eval", "Light stability, SSIM and spectrum report");
    eval->add_option("-i,--input", o.input, "Candidate sequence")->required();
    eval->add_option("--reference", o.reference, "Reference sequence");

    auto* sweep = app.add_subcommand("sweep-tau", "S_LS across brightness thresholds");
    sweep->add_option("-i,--input", o.inputs, "Sequences to compare; repeatable")->required();
    sweep->add_option("--taus", o.taus, "Thresholds, comma or space separated (default 105,115,125,135,145)")->delimiter(',');

    auto* spectrum = app.add_subcommand("spectrum", "Log-magnitude spectrum as PGM");
    spectrum->add_option("-i,--input", o.input, "Sequence")->required();
    spectrum->add_option("-o,--output", o.output, "PGM path, or a directory with --per-frame");
    spectrum->add_option("--reference", o.reference, "Reference for the high-frequency energy ratio");
    spectrum->add_option("--cutoff", o.cutoff, "Low-frequency disc radius as a fraction of Nyquist")
        ->check(CLI::Range(0.0, 1.0));
    spectrum->add_flag("--per-frame", o.per_frame, "One PGM per frame");

    auto* hist = app.add_subcommand("hist", "Brightness histogram CSV");
    hist->add_option("-i,--input", o.input, "Sequence")->required();
    hist->add_option("--bins", o.bins, "Bin count (divides 256)");

    auto* synth = app.add_subcommand("synth", "Generate a synthetic test sequence");
    synth->add_option("kind", o.synth.kind, "constant | flicker | moving-square | textured-translation | jitter")
        ->required();
    synth->add_option("-o,--output", o.output, "Output directory")->required();
    synth->add_option("--width", o.synth.width);
    synth->add_option("--height", o.synth.height);
    synth->add_option("--frames", o.synth.frames);
    synth->add_option("--seed", o.synth.seed);
    synth->add_option("--level", o.synth.level, "constant: gray level 0..255");
    synth->add_option("--amplitude", o.synth.amplitude, "flicker/jitter: peak-to-peak swing 0..255");
    synth->add_option("--period", o.synth.period, "flicker: frames per toggle");
    synth->add_option("--speed", o.synth.speed, "moving-square: px per frame");
    synth->add_option("--size", o.synth.size, "moving-square: side in px");
    synth->add_option("--dx", o.synth.dx, "textured-translation: px per frame");
    synth->add_option("--dy", o.synth.dy, "textured-translation: px per frame");
    synth->add_option("--noise", o.synth.noise, "jitter: per-pixel noise std 0..255");

    for (CLI::App* cmd : {smooth, fuse, pipeline, eval, sweep, spectrum, hist, synth}) add_common(cmd, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error[" << static_cast<int>(ErrorKind::usage) << "]: " << e.what() << '\n';
        return static_cast<int>(ErrorKind::usage);
    }

    try {
        const RunConfig cfg = build_config(o);
        require(o.threads >= 0, "--threads must be >= 0");
        set_thread_limit(o.threads);

        if (*smooth) return cmd_smooth(o, cfg, out);
        if (*fuse) return cmd_fuse(o, cfg, out);
        if (*pipeline) return cmd_pipeline(o, cfg, out);
        if (*eval) return cmd_eval(o, cfg, out);
        if (*sweep) return cmd_sweep_tau(o, cfg, out);
        if (*spectrum) return cmd_spectrum(o, cfg, out);
        if (*hist) return cmd_hist(o, cfg, out);
        if (*synth) return cmd_synth(o, cfg, out);
        throw UsageError("no command given");
    } catch (const Error& e) {
        return report(e, err);
    } catch (const fs::filesystem_error& e) {
        return report(IoError(e.what()), err);
    } catch (const nlohmann::json::exception& e) {
        return report(ValidationError(e.what()), err);
    } catch (const std::exception& e) {
        return report(ValidationError(e.what()), err);
    }
}

}  // namespace relight
