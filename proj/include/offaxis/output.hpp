#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "offaxis/fieldgrid.hpp"
#include "offaxis/vortex.hpp"

namespace offaxis::cli {

std::string sha256_hex(std::string_view bytes);

/// CSV with header x,y,re,im.
std::string complex_field_csv(const ComplexField& field);
/// CSV with header x,y,value.
std::string real_field_csv(const RealField& field);
/// Binary P5 graymap, maxval 255, row 0 at the top (largest y).
std::string pgm(const GridSpec& grid, const std::vector<unsigned char>& pixels);
/// Intensity scaled by its maximum (all-zero field maps to 0).
std::string intensity_pgm(const RealField& intensity);
/// Phase mapped linearly from (-pi, pi] onto 0..255.
std::string phase_pgm(const RealField& phase);
/// Header x,y,charge,r,theta.
std::string cores_csv(const std::vector<vortex::VortexCore>& cores);

struct EmittedFile {
    std::string path;  ///< relative to the output root
    std::string sha256;
    std::size_t bytes = 0;
};

/// Writes files below a root directory and records their checksums.
class OutputDir {
public:
    explicit OutputDir(std::filesystem::path root);

    const std::filesystem::path& root() const { return root_; }
    /// Throws IoError on failure.
    void write(const std::string& relative, std::string_view contents);
    const std::vector<EmittedFile>& files() const { return files_; }

private:
    std::filesystem::path root_;
    std::vector<EmittedFile> files_;
};

/// Flat `key = value` record of a run.
struct RunManifest {
    std::vector<std::pair<std::string, std::string>> entries;
    std::vector<EmittedFile> files;

    void set(std::string key, std::string value);
    std::string render() const;
};

}  // namespace offaxis::cli
