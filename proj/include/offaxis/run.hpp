#pragma once

#include <string>
#include <vector>

#include "offaxis/config.hpp"
#include "offaxis/output.hpp"

namespace offaxis::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitTolerance = 2;
inline constexpr int kExitIo = 3;

inline constexpr const char* kManifestName = "manifest.txt";

struct RunResult {
    int exit_code = kExitOk;
    RunManifest manifest;
    std::vector<std::string> log;  ///< human-readable summary lines
};

/// Executes the configured experiment into config.output_dir and writes manifest.txt there.
/// The directory may be new, empty, or hold a previous run (its listed files are replaced);
/// any other content raises IoError. Physics validation failures raise ValidationError.
RunResult run(const RunConfig& config);

/// run() with the experiment forced to sweep; the config must carry sweep settings.
RunResult sweep(const RunConfig& config);

/// Grid-hash helper exposed for manifests and tests.
std::string grid_hash(const GridSpec& grid);

}  // namespace offaxis::cli
