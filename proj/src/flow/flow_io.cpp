#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "relight/core/errors.hpp"
#include "relight/flow/flow.hpp"

namespace relight {

namespace {

constexpr std::array<char, 4> kMagic{'H', 'L', 'F', 'L'};

static_assert(std::endian::native == std::endian::little, "flow dump assumes a little-endian host");

void write_u32(std::ofstream& out, std::uint32_t v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint32_t read_u32(std::ifstream& in) {
    std::uint32_t v = 0;
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}

}  // namespace

void save_flow(const FlowField& flow, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(kMagic.data(), kMagic.size());
    write_u32(out, static_cast<std::uint32_t>(flow.width));
    write_u32(out, static_cast<std::uint32_t>(flow.height));
    out.write(reinterpret_cast<const char*>(flow.u.data.data()),
              static_cast<std::streamsize>(flow.u.size() * sizeof(float)));
    out.write(reinterpret_cast<const char*>(flow.v.data.data()),
              static_cast<std::streamsize>(flow.v.size() * sizeof(float)));
    if (!out) throw IoError("failed writing " + path.string());
}

FlowField load_flow(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::array<char, 4> magic{};
    in.read(magic.data(), magic.size());
    if (!in || magic != kMagic) throw IoError(path.string() + ": not a flow dump");
    const auto w = read_u32(in);
    const auto h = read_u32(in);
    if (!in || w == 0 || h == 0 || w > (1u << 16) || h > (1u << 16)) {
        throw IoError(path.string() + ": bad flow header");
    }
    FlowField flow(static_cast<int>(w), static_cast<int>(h));
    in.read(reinterpret_cast<char*>(flow.u.data.data()), static_cast<std::streamsize>(flow.u.size() * sizeof(float)));
    in.read(reinterpret_cast<char*>(flow.v.data.data()), static_cast<std::streamsize>(flow.v.size() * sizeof(float)));
    if (!in) throw IoError(path.string() + ": truncated flow data");
    return flow;
}

}  // namespace relight
