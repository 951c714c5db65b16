#include "offaxis/output.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>

#include "offaxis/config.hpp"
#include "offaxis/errors.hpp"

namespace offaxis::cli {

namespace {

void append_number(std::string& out, double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, res.ptr);
}

}  // namespace

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("sha256 digest failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int k = 0; k < len; ++k) {
        out.push_back(hex[digest[k] >> 4]);
        out.push_back(hex[digest[k] & 0xf]);
    }
    return out;
}

std::string complex_field_csv(const ComplexField& field) {
    const GridSpec& g = field.grid();
    std::string out = "x,y,re,im\n";
    out.reserve(out.size() + g.size() * 48);
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const complex v = field(i, j);
            append_number(out, g.x(i));
            out.push_back(',');
            append_number(out, g.y(j));
            out.push_back(',');
            append_number(out, v.real());
            out.push_back(',');
            append_number(out, v.imag());
            out.push_back('\n');
        }
    }
    return out;
}

std::string real_field_csv(const RealField& field) {
    const GridSpec& g = field.grid();
    std::string out = "x,y,value\n";
    out.reserve(out.size() + g.size() * 36);
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            append_number(out, g.x(i));
            out.push_back(',');
            append_number(out, g.y(j));
            out.push_back(',');
            append_number(out, field(i, j));
            out.push_back('\n');
        }
    }
    return out;
}

std::string pgm(const GridSpec& grid, const std::vector<unsigned char>& pixels) {
    std::string out = "P5\n" + std::to_string(grid.nx) + " " + std::to_string(grid.ny) + "\n255\n";
    out.reserve(out.size() + pixels.size());
    for (int row = 0; row < grid.ny; ++row) {
        const int j = grid.ny - 1 - row;
        for (int i = 0; i < grid.nx; ++i) {
            out.push_back(static_cast<char>(pixels[grid.flat(i, j)]));
        }
    }
    return out;
}

std::string intensity_pgm(const RealField& intensity) {
    double peak = 0.0;
    for (const double v : intensity.values()) {
        peak = std::max(peak, v);
    }
    std::vector<unsigned char> px(intensity.size(), 0);
    if (peak > 0.0) {
        for (std::size_t k = 0; k < px.size(); ++k) {
            px[k] = static_cast<unsigned char>(std::lround(255.0 * std::clamp(intensity[k] / peak, 0.0, 1.0)));
        }
    }
    return pgm(intensity.grid(), px);
}

std::string phase_pgm(const RealField& phase) {
    std::vector<unsigned char> px(phase.size(), 0);
    for (std::size_t k = 0; k < px.size(); ++k) {
        const double t = (phase[k] + std::numbers::pi) / (2.0 * std::numbers::pi);
        px[k] = static_cast<unsigned char>(std::lround(255.0 * std::clamp(t, 0.0, 1.0)));
    }
    return pgm(phase.grid(), px);
}

std::string cores_csv(const std::vector<vortex::VortexCore>& cores) {
    std::string out = "x,y,charge,r,theta\n";
    for (const auto& c : cores) {
        append_number(out, c.x);
        out.push_back(',');
        append_number(out, c.y);
        out += "," + std::to_string(c.charge) + ",";
        append_number(out, c.radius());
        out.push_back(',');
        append_number(out, c.angle());
        out.push_back('\n');
    }
    return out;
}

OutputDir::OutputDir(std::filesystem::path root) : root_(std::move(root)) {
    std::error_code ec;
    std::filesystem::create_directories(root_, ec);
    if (ec) {
        throw IoError("cannot create output directory " + root_.string() + ": " + ec.message());
    }
}

void OutputDir::write(const std::string& relative, std::string_view contents) {
    const auto path = root_ / relative;
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) {
        throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.close();
    if (!out) {
        throw IoError("failed to write " + path.string());
    }
    files_.push_back({relative, sha256_hex(contents), contents.size()});
}

void RunManifest::set(std::string key, std::string value) {
    for (auto& [k, v] : entries) {
        if (k == key) {
            v = std::move(value);
            return;
        }
    }
    entries.emplace_back(std::move(key), std::move(value));
}

std::string RunManifest::render() const {
    std::string out;
    for (const auto& [k, v] : entries) {
        out += k + " = " + v + "\n";
    }
    out += "file_count = " + std::to_string(files.size()) + "\n";
    for (std::size_t n = 0; n < files.size(); ++n) {
        const std::string prefix = "file." + std::to_string(n) + ".";
        out += prefix + "path = " + files[n].path + "\n";
        out += prefix + "sha256 = " + files[n].sha256 + "\n";
        out += prefix + "bytes = " + std::to_string(files[n].bytes) + "\n";
    }
    return out;
}

}  // namespace offaxis::cli
