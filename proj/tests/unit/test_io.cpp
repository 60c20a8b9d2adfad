#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "relight/core/errors.hpp"
#include "relight/io/config.hpp"
#include "relight/io/png_io.hpp"
#include "relight/io/report_io.hpp"
#include "relight/io/sequence.hpp"

namespace fs = std::filesystem;
using namespace relight;
using nlohmann::json;

namespace {

class TempDir {
public:
    TempDir() {
        path_ = fs::temp_directory_path() / ("relight_io_" + std::to_string(counter_++) + "_" +
                                             ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    const fs::path& path() const { return path_; }

private:
    static inline int counter_ = 0;
    fs::path path_;
};

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream f(p);
    f << text;
}

}  // namespace

TEST(Png, RoundTripWithinQuantization) {
    TempDir dir;
    const Frame f = oracle::random_frame(13, 9, 1);
    write_png(f, dir.path() / "a.png");
    const Frame g = read_png(dir.path() / "a.png");
    ASSERT_EQ(g.width, 13);
    ASSERT_EQ(g.height, 9);
    for (std::size_t i = 0; i < f.data.size(); ++i) EXPECT_LE(std::abs(f.data[i] - g.data[i]), 1.0 / 255.0);
}

TEST(Png, MissingAndCorruptFiles) {
    TempDir dir;
    EXPECT_THROW(read_png(dir.path() / "none.png"), IoError);
    write_file(dir.path() / "bad.png", "definitely not a png");
    EXPECT_THROW(read_png(dir.path() / "bad.png"), IoError);
    EXPECT_THROW(write_png(Frame(2, 2), dir.path() / "no" / "such" / "dir.png"), IoError);
}

TEST(Pgm, HeaderAndScaling) {
    TempDir dir;
    Plane p(3, 2);
    p.data = {0.0f, 0.5f, 1.0f, 2.0f, -1.0f, 0.25f};
    write_pgm(p, dir.path() / "p.pgm", 0.0f, 1.0f);
    std::ifstream in(dir.path() / "p.pgm", std::ios::binary);
    std::string magic;
    int w, h, maxv;
    in >> magic >> w >> h >> maxv;
    in.get();
    std::vector<unsigned char> px(6);
    in.read(reinterpret_cast<char*>(px.data()), 6);
    EXPECT_EQ(magic, "P5");
    EXPECT_EQ(w, 3);
    EXPECT_EQ(h, 2);
    EXPECT_EQ(maxv, 255);
    EXPECT_EQ(px[0], 0);
    EXPECT_EQ(px[2], 255);
    EXPECT_EQ(px[3], 255);
    EXPECT_EQ(px[4], 0);
}

TEST(Sequence, DirectoryOrderAndRoundTrip) {
    TempDir dir;
    std::vector<Frame> frames;
    for (int i = 0; i < 3; ++i) frames.push_back(oracle::random_frame(10, 6, 10 + i));
    // Written out of order with f000-style names to check lexicographic loading.
    write_png(frames[2], dir.path() / "f002.png");
    write_png(frames[0], dir.path() / "f000.png");
    write_png(frames[1], dir.path() / "f001.png");
    const LoadedSequence seq = load_sequence(dir.path());
    ASSERT_EQ(seq.frames.size(), 3u);
    EXPECT_EQ(seq.manifest.frame_paths[0].filename(), "f000.png");
    EXPECT_EQ(seq.manifest.frame_paths[2].filename(), "f002.png");
    for (int i = 0; i < 3; ++i)
        for (std::size_t k = 0; k < frames[i].data.size(); ++k)
            EXPECT_LE(std::abs(seq.frames[i].data[k] - frames[i].data[k]), 1.0 / 255.0);
}

TEST(Sequence, SaveWritesNumberedFilesAndManifest) {
    TempDir dir;
    const std::vector<Frame> frames(81, Frame(4, 3, 0.5f));
    const VideoManifest m = save_sequence(frames, dir.path() / "out", 24.0);
    EXPECT_TRUE(fs::exists(dir.path() / "out" / "f0000.png"));
    EXPECT_TRUE(fs::exists(dir.path() / "out" / "f0080.png"));
    EXPECT_EQ(m.frame_paths.size(), 81u);

    std::ifstream in(dir.path() / "out" / "manifest.json");
    const json doc = json::parse(in);
    EXPECT_EQ(doc.at("frames").size(), 81u);
    EXPECT_EQ(doc.at("fps").get<double>(), 24.0);
    EXPECT_EQ(doc.at("width").get<int>(), 4);
    EXPECT_EQ(doc.at("height").get<int>(), 3);

    const LoadedSequence back = load_sequence(dir.path() / "out" / "manifest.json");
    EXPECT_EQ(back.frames.size(), 81u);
    EXPECT_EQ(back.manifest.width, 4);
    EXPECT_EQ(back.manifest.fps, 24.0);
    EXPECT_EQ(load_sequence(dir.path() / "out").frames.size(), 81u);
}

TEST(Sequence, Errors) {
    TempDir dir;
    EXPECT_THROW(save_sequence(std::vector<Frame>{}, dir.path() / "x"), Error);
    EXPECT_THROW(load_sequence(dir.path() / "missing"), IoError);
    fs::create_directories(dir.path() / "empty");
    EXPECT_THROW(load_sequence(dir.path() / "empty"), IoError);

    fs::create_directories(dir.path() / "mixed");
    write_png(Frame(4, 4), dir.path() / "mixed" / "a.png");
    write_png(Frame(5, 4), dir.path() / "mixed" / "b.png");
    EXPECT_THROW(load_sequence(dir.path() / "mixed"), ValidationError);

    write_file(dir.path() / "blocker", "file");
    EXPECT_THROW(save_sequence(std::vector<Frame>{Frame(2, 2)}, dir.path() / "blocker" / "sub"), IoError);
}

TEST(Config, EmptyObjectGivesDefaults) {
    const RunConfig c = parse_config(json::object());
    EXPECT_DOUBLE_EQ(c.guidance.gamma, 0.3);
    EXPECT_DOUBLE_EQ(c.stability.tau, 125.0);
    EXPECT_DOUBLE_EQ(c.stability.k_I, 20.0);
    EXPECT_DOUBLE_EQ(c.stability.k_C, 20.0);
    EXPECT_DOUBLE_EQ(c.stability.k_dI, 5.0);
    EXPECT_DOUBLE_EQ(c.smoother.alpha_base, 0.9);
    EXPECT_TRUE(c.smoother.adaptive);
    EXPECT_DOUBLE_EQ(c.fusion.beta, 0.3);
    EXPECT_EQ(c.guidance.total_steps, 25);
    EXPECT_EQ(c.flow.pyramid_levels, 3);
    EXPECT_EQ(c.bilateral.radius, 6);
    EXPECT_EQ(c.ssim.window, 11);
}

TEST(Config, PartialOverrideAndNesting) {
    const RunConfig c = parse_config(json::parse(R"({"beta": 0.5})"));
    EXPECT_DOUBLE_EQ(c.fusion.beta, 0.5);
    EXPECT_DOUBLE_EQ(c.stability.tau, 125.0);

    const RunConfig n = parse_config(json::parse(R"({"bilateral": {"radius": 9}, "flow.iterations": 5,
                                                     "fuse_mode": "literal", "guidance_mode": "literal"})"));
    EXPECT_EQ(n.bilateral.radius, 9);
    EXPECT_EQ(n.flow.iterations, 5);
    EXPECT_EQ(n.fusion.mode, LabFuseMode::literal);
    EXPECT_EQ(n.guidance.mode, GuidanceMode::literal);
}

TEST(Config, ErrorsNameTheKey) {
    auto message = [](const std::string& text) -> std::string {
        try {
            parse_config(json::parse(text));
        } catch (const ValidationError& e) {
            return e.what();
        }
        return "";
    };
    EXPECT_NE(message(R"({"beta": 1.5})").find("beta"), std::string::npos);
    EXPECT_NE(message(R"({"nonsense": 1})").find("nonsense"), std::string::npos);
    EXPECT_NE(message(R"({"tau": "high"})").find("tau"), std::string::npos);
    EXPECT_NE(message(R"({"flow": {"window_size": 2.5}})").find("flow.window_size"), std::string::npos);
    EXPECT_NE(message(R"({"alpha_floor": 0.95})").find("alpha_floor"), std::string::npos);
    EXPECT_NE(message(R"([1, 2])"), "");
}

TEST(Config, OrderIndependentAndDeterministic) {
    const RunConfig a = parse_config(json::parse(R"({"alpha_base": 0.5, "alpha_floor": 0.4, "tau": 100})"));
    const RunConfig b = parse_config(json::parse(R"({"tau": 100, "alpha_floor": 0.4, "alpha_base": 0.5})"));
    EXPECT_EQ(to_json(a), to_json(b));
    EXPECT_EQ(to_json(parse_config(to_json(a))), to_json(a));
}

TEST(Config, LoadFileErrors) {
    TempDir dir;
    EXPECT_THROW(load_config(dir.path() / "none.json"), IoError);
    write_file(dir.path() / "bad.json", "{ not json");
    EXPECT_THROW(load_config(dir.path() / "bad.json"), ValidationError);
    write_file(dir.path() / "ok.json", R"({"tau": 110})");
    EXPECT_DOUBLE_EQ(load_config(dir.path() / "ok.json").stability.tau, 110.0);
}

TEST(Config, ApplySetting) {
    RunConfig c;
    apply_setting(c, "beta=0.7");
    apply_setting(c, "adaptive=false");
    apply_setting(c, "fuse_mode=literal");
    apply_setting(c, "flow.poly_n=7");
    EXPECT_DOUBLE_EQ(c.fusion.beta, 0.7);
    EXPECT_FALSE(c.smoother.adaptive);
    EXPECT_EQ(c.fusion.mode, LabFuseMode::literal);
    EXPECT_EQ(c.flow.poly_n, 7);
    EXPECT_THROW(apply_setting(c, "beta"), ValidationError);
    EXPECT_THROW(apply_setting(c, "what=1"), ValidationError);
    EXPECT_FALSE(config_keys().empty());
}

TEST(ReportIo, JsonKeysAndCsv) {
    std::vector<GrayFrame> frames;
    for (int t = 0; t < 4; ++t) frames.emplace_back(4, 4, static_cast<float>((t % 2 ? 180.0 : 130.0) / 255.0));
    const StabilityReport r = light_stability_score(frames);
    EvalReport e;
    e.candidate = r;
    e.ssim = 0.9;
    const json doc = to_json(e);
    for (const char* key : {"s_I", "s_C", "s_dI", "s_LS", "ssim", "u_norm_I", "u_norm_C", "u_norm_dI", "tau", "k_I",
                            "k_C", "k_dI"})
        EXPECT_TRUE(doc.contains(key)) << key;

    const std::string csv = signals_csv(r);
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    EXPECT_EQ(line, "frame,I_t,C_t,dI_t");
    std::getline(lines, line);
    EXPECT_EQ(line.back(), ',');
    int rows = 1;
    while (std::getline(lines, line)) ++rows;
    EXPECT_EQ(rows, 4);
}
