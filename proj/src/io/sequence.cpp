#include "relight/io/sequence.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "relight/core/errors.hpp"
#include "relight/io/png_io.hpp"

namespace fs = std::filesystem;

namespace relight {

namespace {

bool has_png_extension(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext == ".png";
}

VideoManifest read_manifest(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(path.string() + ": malformed manifest: " + e.what());
    }
    if (!doc.is_object() || !doc.contains("frames") || !doc["frames"].is_array()) {
        throw IoError(path.string() + ": manifest needs a \"frames\" array");
    }
    VideoManifest m;
    const fs::path base = path.parent_path();
    for (const auto& entry : doc["frames"]) {
        if (!entry.is_string()) throw IoError(path.string() + ": frame entries must be strings");
        const fs::path p(entry.get<std::string>());
        m.frame_paths.push_back(p.is_absolute() ? p : base / p);
    }
    if (doc.contains("fps") && doc["fps"].is_number()) m.fps = doc["fps"].get<double>();
    return m;
}

}  // namespace

std::string frame_file_name(std::size_t index) {
    char name[32];
    std::snprintf(name, sizeof name, "f%04zu.png", index);
    return name;
}

LoadedSequence load_sequence(const fs::path& dir_or_manifest) {
    std::error_code ec;
    if (!fs::exists(dir_or_manifest, ec)) throw IoError(dir_or_manifest.string() + ": no such file or directory");

    LoadedSequence seq;
    if (fs::is_directory(dir_or_manifest, ec)) {
        for (const auto& entry : fs::directory_iterator(dir_or_manifest)) {
            if (entry.is_regular_file() && has_png_extension(entry.path())) {
                seq.manifest.frame_paths.push_back(entry.path());
            }
        }
        std::sort(seq.manifest.frame_paths.begin(), seq.manifest.frame_paths.end(),
                  [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });
        const fs::path manifest = dir_or_manifest / "manifest.json";
        if (fs::exists(manifest, ec)) {
            try {
                seq.manifest.fps = read_manifest(manifest).fps;
            } catch (const IoError&) {
                // A broken sidecar does not hide the frames themselves.
            }
        }
    } else {
        seq.manifest = read_manifest(dir_or_manifest);
    }
    if (seq.manifest.frame_paths.empty()) throw IoError(dir_or_manifest.string() + ": no PNG frames found");

    seq.frames.reserve(seq.manifest.frame_paths.size());
    for (const fs::path& p : seq.manifest.frame_paths) {
        Frame f = read_png(p);
        if (!seq.frames.empty() && !same_dims(seq.frames.front(), f)) {
            throw ValidationError(p.string() + ": frame size " + std::to_string(f.width) + "x" +
                                  std::to_string(f.height) + " differs from the first frame");
        }
        seq.frames.push_back(std::move(f));
    }
    seq.manifest.width = seq.frames.front().width;
    seq.manifest.height = seq.frames.front().height;
    return seq;
}

VideoManifest save_sequence(std::span<const Frame> frames, const fs::path& dir, double fps) {
    if (frames.empty()) throw ValidationError("save_sequence: no frames to write");
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw IoError("cannot create directory " + dir.string());

    VideoManifest m;
    m.fps = fps;
    m.width = frames.front().width;
    m.height = frames.front().height;
    nlohmann::json names = nlohmann::json::array();
    for (std::size_t i = 0; i < frames.size(); ++i) {
        const std::string name = frame_file_name(i);
        write_png(frames[i], dir / name);
        m.frame_paths.push_back(dir / name);
        names.push_back(name);
    }
    const nlohmann::json doc = {{"frames", names}, {"fps", fps}, {"width", m.width}, {"height", m.height}};
    std::ofstream out(dir / "manifest.json");
    if (!out) throw IoError("cannot write " + (dir / "manifest.json").string());
    out << doc.dump(2) << '\n';
    return m;
}

}  // namespace relight
