#include "offaxis/run.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "offaxis/doublet.hpp"
#include "offaxis/errors.hpp"
#include "offaxis/oracle.hpp"
#include "offaxis/singlet.hpp"
#include "offaxis/vortex.hpp"

namespace offaxis::cli {

namespace {

/// Scheme-independent view of the closed-form physics for one configuration.
struct Physics {
    const RunConfig& cfg;

    bool singlet() const { return cfg.scheme == Scheme::Singlet; }
    double z() const { return singlet() ? cfg.singlet.z : cfg.doublet.z; }

    ModeBasis basis() const {
        return singlet() ? singlet::mode_basis(cfg.singlet, cfg.grid) : doublet::mode_basis(cfg.doublet, cfg.grid);
    }
    ComplexField kappa_field() const {
        return singlet() ? singlet::kappa_field(cfg.singlet, cfg.grid) : doublet::kappa_field(cfg.doublet, cfg.grid);
    }
    complex kappa(double r) const {
        return singlet() ? singlet::kappa(cfg.singlet, r) : doublet::kappa(cfg.doublet, r);
    }
    double slowdown(double r) const {
        return singlet() ? singlet::group_slowdown(cfg.singlet, r) : doublet::group_slowdown(cfg.doublet, r);
    }
    double peak_radius() const {
        const double r_max = cfg.grid.half_extent;
        return singlet() ? singlet::peak_radius(cfg.singlet, r_max) : doublet::peak_radius(cfg.doublet, r_max);
    }
    ProbePair exchange() const {
        return singlet() ? singlet::vortex_exchange(cfg.singlet, cfg.grid, cfg.amplitude)
                         : doublet::vortex_exchange(cfg.doublet, cfg.grid, cfg.amplitude);
    }
    ProbePair inputs() const {
        const complex p2 = cfg.probes == ProbeInput::Uniform ? cfg.amplitude : complex{};
        return {uniform_field(cfg.grid, cfg.amplitude), uniform_field(cfg.grid, p2)};
    }
    double min_separation() const {
        return cfg.min_separation_cells * std::max(cfg.grid.dx(), cfg.grid.dy());
    }
};

struct Context {
    OutputDir& out;
    RunManifest& manifest;
    std::vector<std::string>& log;
    std::string prefix;  ///< relative directory for files, "" or "sweep_000/"
    std::string key;     ///< manifest key prefix, "result." or "sweep.000."

    void write(const std::string& name, std::string_view contents) const { out.write(prefix + name, contents); }
    void result(const std::string& name, const std::string& value) const { manifest.set(key + name, value); }
};

void emit_maps(const Context& ctx, const std::string& name, const ComplexField& field) {
    const RealField inten = intensity(field);
    const PhaseMap ph = phase_map(field);
    ctx.write(name + "_intensity.csv", real_field_csv(inten));
    ctx.write(name + "_phase.csv", real_field_csv(ph.phase));
    ctx.write(name + "_intensity.pgm", intensity_pgm(inten));
    ctx.write(name + "_phase.pgm", phase_pgm(ph.phase));
    ctx.result(name + "_zero_phase_samples", std::to_string(ph.zero_samples.size()));
}

struct PropagateSummary {
    std::vector<vortex::VortexCore> cores;
    vortex::RingStats ring;
};

PropagateSummary run_propagate(const Context& ctx, const Physics& phys) {
    const ModeBasis basis = phys.basis();
    const ProbePair in = phys.inputs();
    const ModePair modes0 = superpose(basis, in.p1, in.p2);
    const ModePair modes = apply_propagator(modes0, phys.kappa_field(), phys.z());
    const ProbePair probes = reconstruct(basis, modes);

    emit_maps(ctx, "psi", modes.psi);
    ctx.write("p1_field.csv", complex_field_csv(probes.p1));
    ctx.write("p2_field.csv", complex_field_csv(probes.p2));

    PropagateSummary s;
    s.cores = vortex::detect_cores(modes.psi, phys.min_separation());
    s.ring = vortex::ring_statistics(s.cores);
    ctx.write("psi_cores.csv", cores_csv(s.cores));
    ctx.result("psi_core_count", std::to_string(s.ring.count));
    ctx.result("psi_mean_radius", format_double(s.ring.mean_radius));
    return s;
}

void run_exchange(const Context& ctx, const Physics& phys) {
    const ProbePair probes = phys.exchange();
    ctx.write("p1_field.csv", complex_field_csv(probes.p1));
    ctx.write("p2_field.csv", complex_field_csv(probes.p2));
    emit_maps(ctx, "p2", probes.p2);
    const auto cores = vortex::detect_cores(probes.p2, phys.min_separation());
    ctx.write("p2_cores.csv", cores_csv(cores));
    const auto winding = vortex::loop_winding(probes.p2, 0.75 * phys.cfg.grid.half_extent);
    ctx.result("p2_winding", winding ? std::to_string(*winding) : "indeterminate");
    ctx.log.push_back("exchange: generated P2 winding = " + (winding ? std::to_string(*winding) : "indeterminate"));
}

void run_detect(const Context& ctx, const Physics& phys) {
    const ModeBasis basis = phys.basis();
    const ProbePair in = phys.inputs();
    const ModePair modes0 = superpose(basis, in.p1, in.p2);
    const ModePair modes = apply_propagator(modes0, phys.kappa_field(), phys.z());
    emit_maps(ctx, "psi", modes.psi);

    const auto cores0 = vortex::detect_cores(modes0.psi, phys.min_separation());
    const auto cores = vortex::detect_cores(modes.psi, phys.min_separation());
    ctx.write("cores_z0.csv", cores_csv(cores0));
    ctx.write("cores_z.csv", cores_csv(cores));
    const auto ring0 = vortex::ring_statistics(cores0);
    const auto ring = vortex::ring_statistics(cores);
    std::string table = "quantity,z0,z\n";
    const auto row = [&](const std::string& name, double a, double b) {
        table += name + "," + format_double(a) + "," + format_double(b) + "\n";
    };
    row("count", ring0.count, ring.count);
    row("mean_radius", ring0.mean_radius, ring.mean_radius);
    row("radius_spread", ring0.radius_spread, ring.radius_spread);
    row("spacing_uniformity", ring0.spacing_uniformity, ring.spacing_uniformity);
    ctx.write("ring.csv", table);
    ctx.result("core_count_z0", std::to_string(ring0.count));
    ctx.result("core_count_z", std::to_string(ring.count));
    ctx.result("mean_radius_z", format_double(ring.mean_radius));
    ctx.log.push_back("detect: " + std::to_string(ring.count) + " cores, mean radius " +
                      format_double(ring.mean_radius));

    const SingletParams& sp = phys.cfg.singlet;
    if (phys.singlet() && sp.beam1.winding != 0 && sp.beam2.winding == 0 && sp.beam1.strength > 0.0 &&
        sp.beam2.strength > 0.0) {
        std::string pred = "convention,radius,detected_mean_radius,deviation\n";
        for (const auto conv : {vortex::RadiusConvention::ProfileBalance, vortex::RadiusConvention::NormalizedLaguerre}) {
            const auto p = vortex::predict_peripheral(sp, conv);
            const std::string name = conv == vortex::RadiusConvention::ProfileBalance ? "profile-balance" : "normalized-laguerre";
            const double dev = p.radius - ring.mean_radius;
            pred += name + "," + format_double(p.radius) + "," + format_double(ring.mean_radius) + "," +
                    format_double(dev) + "\n";
            ctx.result("predicted_radius." + name, format_double(p.radius));
        }
        ctx.write("prediction.csv", pred);
    }
}

int run_oracle(const Context& ctx, const Physics& phys) {
    const RunConfig& cfg = phys.cfg;
    const ModeBasis basis = phys.basis();
    const ProbePair in = phys.inputs();
    const ModePair modes0 = superpose(basis, in.p1, in.p2);
    const ProbePair closed = reconstruct(basis, apply_propagator(modes0, phys.kappa_field(), phys.z()));

    oracle::IntegratorConfig icfg;
    icfg.steps = cfg.oracle.steps;
    icfg.target_z = phys.z();
    icfg.check_convergence = cfg.oracle.check_convergence;
    const auto integrated = phys.singlet() ? oracle::integrate_singlet(in.p1, in.p2, cfg.singlet, icfg)
                                           : oracle::integrate_doublet(in.p1, in.p2, cfg.doublet, icfg);

    const double dev1 = oracle::max_relative_deviation(integrated.probes.p1, closed.p1);
    const double dev2 = oracle::max_relative_deviation(integrated.probes.p2, closed.p2);
    const double dev = std::max(dev1, dev2);
    const ModePair modes_out = superpose(basis, integrated.probes.p1, integrated.probes.p2);
    const double xi_dev = oracle::max_relative_deviation(modes_out.xi, modes0.xi);

    std::string report = "metric,value\n";
    const auto row = [&](const std::string& name, const std::string& v) {
        report += name + "," + v + "\n";
        ctx.result(name, v);
    };
    row("max_relative_deviation_p1", format_double(dev1));
    row("max_relative_deviation_p2", format_double(dev2));
    row("max_relative_deviation", format_double(dev));
    row("xi_conservation_deviation", format_double(xi_dev));
    row("tolerance", format_double(cfg.oracle.tolerance));
    row("steps", std::to_string(cfg.oracle.steps));
    if (integrated.step_halving_change) {
        row("step_halving_change", format_double(*integrated.step_halving_change));
        if (integrated.under_resolved) {
            ctx.log.push_back("warning: step halving changes the oracle output by " +
                              format_double(*integrated.step_halving_change) + "; increase --steps");
        }
    }

    if (cfg.oracle.exact) {
        const GridSpec coarse = oracle::coarsen(cfg.grid, cfg.oracle.decimation);
        RunConfig coarse_cfg = cfg;
        coarse_cfg.grid = coarse;
        const Physics cp{coarse_cfg};
        const ModeBasis cb = cp.basis();
        const ProbePair cin = cp.inputs();
        const ProbePair cclosed =
            reconstruct(cb, apply_propagator(superpose(cb, cin.p1, cin.p2), cp.kappa_field(), cp.z()));
        oracle::IntegratorConfig ecfg = icfg;
        ecfg.check_convergence = false;
        const auto exact =
            oracle::integrate_exact_singlet(cin.p1, cin.p2, cfg.singlet, ecfg, cfg.oracle.probe_coupling);
        row("exact_grid", std::to_string(coarse.nx) + "x" + std::to_string(coarse.ny));
        row("exact_max_relative_deviation_p1", format_double(oracle::max_relative_deviation(exact.probes.p1, cclosed.p1)));
        row("exact_max_relative_deviation_p2", format_double(oracle::max_relative_deviation(exact.probes.p2, cclosed.p2)));
    }
    ctx.write("oracle_report.csv", report);

    const bool ok = dev < cfg.oracle.tolerance;
    ctx.log.push_back("oracle-compare: max relative deviation " + format_double(dev) + (ok ? " < " : " >= ") +
                      format_double(cfg.oracle.tolerance));
    return ok ? kExitOk : kExitTolerance;
}

void run_dispersion(const Context& ctx, const Physics& phys) {
    const RunConfig& cfg = phys.cfg;
    const double r = cfg.dispersion.radius ? *cfg.dispersion.radius : phys.peak_radius();
    std::string table = "delta_2f,re_kappa,im_kappa,slowdown\n";
    const int n = cfg.dispersion.count;
    const double lo = cfg.dispersion.delta_2f_min;
    const double span = cfg.dispersion.delta_2f_max - lo;
    for (int k = 0; k < n; ++k) {
        RunConfig point = cfg;
        const double d2 = lo + span * k / (n - 1);
        (point.scheme == Scheme::Singlet ? point.singlet.delta_2f : point.doublet.delta_2f) = d2;
        const Physics p{point};
        const complex kap = p.kappa(r);
        table += format_double(d2) + "," + format_double(kap.real()) + "," + format_double(kap.imag()) + "," +
                 format_double(p.slowdown(r)) + "\n";
    }
    ctx.write("dispersion.csv", table);
    ctx.result("dispersion_radius", format_double(r));
}

void run_sweep(const Context& ctx, const RunConfig& cfg) {
    std::string table = "value,vortex_count,mean_radius,slowdown\n";
    for (std::size_t k = 0; k < cfg.sweep->values.size(); ++k) {
        const double value = cfg.sweep->values[k];
        RunConfig sub = apply_sweep_value(cfg, cfg.sweep->axis, value);
        sub.validate();
        char tag[16];
        std::snprintf(tag, sizeof(tag), "%03zu", k);
        const Context sub_ctx{ctx.out, ctx.manifest, ctx.log, ctx.prefix + "sweep_" + tag + "/",
                              "sweep." + std::string(tag) + "."};
        sub_ctx.result("value", format_double(value));
        const Physics phys{sub};
        const PropagateSummary s = run_propagate(sub_ctx, phys);
        const double slow = phys.slowdown(phys.peak_radius());
        table += format_double(value) + "," + std::to_string(s.ring.count) + "," + format_double(s.ring.mean_radius) +
                 "," + format_double(slow) + "\n";
    }
    ctx.write("sweep.csv", table);
}

/// Files recorded by a previous manifest in dir (relative paths).
std::set<std::string> previous_outputs(const std::filesystem::path& dir) {
    std::set<std::string> files;
    std::ifstream in(dir / kManifestName);
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find(" = ");
        if (eq == std::string::npos) continue;
        const std::string key = line.substr(0, eq);
        if (key.starts_with("file.") && key.ends_with(".path")) {
            files.insert(line.substr(eq + 3));
        }
    }
    return files;
}

void prepare_output_dir(const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (!fs::exists(dir, ec)) {
        return;
    }
    if (!fs::is_directory(dir, ec)) {
        throw IoError("output path " + dir.string() + " exists and is not a directory");
    }
    const auto owned = previous_outputs(dir);
    std::vector<fs::path> stale;
    for (auto it = fs::recursive_directory_iterator(dir, ec); it != fs::recursive_directory_iterator(); ++it) {
        if (!it->is_regular_file()) continue;
        const std::string rel = fs::relative(it->path(), dir).generic_string();
        if (rel != kManifestName && owned.count(rel) == 0) {
            throw IoError("output directory " + dir.string() + " contains '" + rel +
                          "', which no previous run recorded; use an empty directory");
        }
        stale.push_back(it->path());
    }
    for (const auto& p : stale) {
        fs::remove(p, ec);
    }
}

}  // namespace

std::string grid_hash(const GridSpec& grid) {
    return sha256_hex("nx=" + std::to_string(grid.nx) + ";ny=" + std::to_string(grid.ny) +
                      ";half_extent=" + format_double(grid.half_extent));
}

RunResult run(const RunConfig& input) {
    const auto start = std::chrono::steady_clock::now();
    RunConfig cfg = input;
    cfg.validate();

    const std::filesystem::path root(cfg.output_dir);
    prepare_output_dir(root);
    OutputDir out(root);

    RunResult result;
    result.manifest.set("tool", "offaxis");
    result.manifest.set("tool_version", OFFAXIS_VERSION);
    result.manifest.set("experiment", to_string(cfg.experiment));
    result.manifest.set("grid_hash", grid_hash(cfg.grid));
    for (const auto& [k, v] : flatten_config(cfg)) {
        result.manifest.set("config." + k, v);
    }
    for (std::size_t n = 0; n < cfg.warnings.size(); ++n) {
        result.manifest.set("warning." + std::to_string(n), cfg.warnings[n]);
        result.log.push_back("warning: " + cfg.warnings[n]);
    }

    const Context ctx{out, result.manifest, result.log, "", "result."};
    const Physics phys{cfg};
    switch (cfg.experiment) {
        case Experiment::Propagate: {
            const auto s = run_propagate(ctx, phys);
            result.log.push_back("propagate: " + std::to_string(s.ring.count) + " cores in psi(z)");
            break;
        }
        case Experiment::Exchange: run_exchange(ctx, phys); break;
        case Experiment::OracleCompare: result.exit_code = run_oracle(ctx, phys); break;
        case Experiment::Detect: run_detect(ctx, phys); break;
        case Experiment::Dispersion: run_dispersion(ctx, phys); break;
        case Experiment::Sweep: run_sweep(ctx, cfg); break;
    }

    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.manifest.set("status", result.exit_code == kExitOk ? "ok" : "tolerance-breach");
    result.manifest.set("exit_code", std::to_string(result.exit_code));
    result.manifest.set("duration_seconds", format_double(seconds));
    result.manifest.files = out.files();

    std::ofstream mf(root / kManifestName, std::ios::binary | std::ios::trunc);
    mf << result.manifest.render();
    mf.close();
    if (!mf) {
        throw IoError("failed to write manifest in " + root.string());
    }
    return result;
}

RunResult sweep(const RunConfig& config) {
    RunConfig cfg = config;
    cfg.experiment = Experiment::Sweep;
    return run(cfg);
}

}  // namespace offaxis::cli
