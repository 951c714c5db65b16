#include "offaxis/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "offaxis/errors.hpp"

namespace offaxis::cli {

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& schema() {
    static const std::map<std::string, std::set<std::string>> keys{
        {"run", {"scheme", "experiment", "output_dir", "quiet"}},
        {"grid", {"nx", "ny", "half_extent"}},
        {"singlet",
         {"strength_1", "winding_1", "strength_2", "winding_2", "waist", "delta_1f", "delta_2f", "z",
          "gain_scale"}},
        {"doublet",
         {"strength_11", "winding_11", "strength_12", "winding_12", "strength_21", "winding_21", "strength_22",
          "winding_22", "waist", "delta_1f", "delta_2f", "delta", "z", "gain_scale"}},
        {"probes", {"input", "amplitude_re", "amplitude_im"}},
        {"oracle", {"steps", "tolerance", "check_convergence", "exact", "probe_coupling", "decimation"}},
        {"detect", {"min_separation_cells"}},
        {"dispersion", {"delta_2f_min", "delta_2f_max", "count", "radius"}},
        {"sweep", {"axis", "values"}},
    };
    return keys;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void bad_value(const std::string& key, const std::string& expected, const std::string& got) {
    throw ValidationError(key + ": expected " + expected + ", got '" + got + "'");
}

double to_double(const std::string& key, const std::string& text) {
    const std::string s = trim(text);
    double v = 0.0;
    const char* first = s.data();
    if (!s.empty() && s.front() == '+') {
        ++first;
    }
    const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
        bad_value(key, "a finite number", s);
    }
    return v;
}

int to_int(const std::string& key, const std::string& text) {
    const std::string s = trim(text);
    int v = 0;
    const char* first = s.data();
    if (!s.empty() && s.front() == '+') {
        ++first;
    }
    const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        bad_value(key, "an integer", s);
    }
    return v;
}

bool to_bool(const std::string& key, const std::string& text) {
    const std::string s = trim(text);
    if (s == "true" || s == "yes" || s == "on" || s == "1") {
        return true;
    }
    if (s == "false" || s == "no" || s == "off" || s == "0") {
        return false;
    }
    bad_value(key, "true or false", s);
}

std::vector<double> to_list(const std::string& key, const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!trim(item).empty()) {
            out.push_back(to_double(key, item));
        }
    }
    return out;
}

Scheme scheme_from(const std::string& key, const std::string& s) {
    if (s == "singlet") return Scheme::Singlet;
    if (s == "doublet") return Scheme::Doublet;
    bad_value(key, "singlet or doublet", s);
}

ProbeInput probes_from(const std::string& key, const std::string& s) {
    if (s == "uniform") return ProbeInput::Uniform;
    if (s == "exchange") return ProbeInput::Exchange;
    bad_value(key, "uniform or exchange", s);
}

SweepAxis axis_from(const std::string& key, const std::string& s) {
    if (s == "l1") return SweepAxis::L1;
    if (s == "strength_ratio") return SweepAxis::StrengthRatio;
    if (s == "delta_2f") return SweepAxis::Delta2f;
    if (s == "delta") return SweepAxis::Delta;
    if (s == "z") return SweepAxis::Z;
    bad_value(key, "one of l1, strength_ratio, delta_2f, delta, z", s);
}

void apply_key(RunConfig& c, const std::string& section, const std::string& name, const std::string& raw) {
    const std::string key = "[" + section + "] " + name;
    const std::string v = trim(raw);
    if (section == "run") {
        if (name == "scheme") c.scheme = scheme_from(key, v);
        else if (name == "experiment") {
            const auto e = experiment_from_string(v);
            if (!e) bad_value(key, "one of propagate, exchange, oracle-compare, detect, dispersion, sweep", v);
            c.experiment = *e;
        } else if (name == "output_dir") c.output_dir = v;
        else if (name == "quiet") c.quiet = to_bool(key, v);
    } else if (section == "grid") {
        if (name == "nx") c.grid.nx = to_int(key, v);
        else if (name == "ny") c.grid.ny = to_int(key, v);
        else if (name == "half_extent") c.grid.half_extent = to_double(key, v);
    } else if (section == "singlet") {
        SingletParams& p = c.singlet;
        if (name == "strength_1") p.beam1.strength = to_double(key, v);
        else if (name == "winding_1") p.beam1.winding = to_int(key, v);
        else if (name == "strength_2") p.beam2.strength = to_double(key, v);
        else if (name == "winding_2") p.beam2.winding = to_int(key, v);
        else if (name == "waist") p.beam1.waist = p.beam2.waist = to_double(key, v);
        else if (name == "delta_1f") p.delta_1f = to_double(key, v);
        else if (name == "delta_2f") p.delta_2f = to_double(key, v);
        else if (name == "z") p.z = to_double(key, v);
        else if (name == "gain_scale") p.gain_scale = to_double(key, v);
    } else if (section == "doublet") {
        DoubletParams& p = c.doublet;
        static const std::map<std::string, int> index{{"11", 0}, {"12", 1}, {"21", 2}, {"22", 3}};
        if (name.starts_with("strength_")) p.beams[index.at(name.substr(9))].strength = to_double(key, v);
        else if (name.starts_with("winding_")) p.beams[index.at(name.substr(8))].winding = to_int(key, v);
        else if (name == "waist") {
            const double w = to_double(key, v);
            for (auto& b : p.beams) b.waist = w;
        } else if (name == "delta_1f") p.delta_1f = to_double(key, v);
        else if (name == "delta_2f") p.delta_2f = to_double(key, v);
        else if (name == "delta") p.delta = to_double(key, v);
        else if (name == "z") p.z = to_double(key, v);
        else if (name == "gain_scale") p.gain_scale = to_double(key, v);
    } else if (section == "probes") {
        if (name == "input") c.probes = probes_from(key, v);
        else if (name == "amplitude_re") c.amplitude.real(to_double(key, v));
        else if (name == "amplitude_im") c.amplitude.imag(to_double(key, v));
    } else if (section == "oracle") {
        if (name == "steps") c.oracle.steps = to_int(key, v);
        else if (name == "tolerance") c.oracle.tolerance = to_double(key, v);
        else if (name == "check_convergence") c.oracle.check_convergence = to_bool(key, v);
        else if (name == "exact") c.oracle.exact = to_bool(key, v);
        else if (name == "probe_coupling") c.oracle.probe_coupling = to_double(key, v);
        else if (name == "decimation") c.oracle.decimation = to_int(key, v);
    } else if (section == "detect") {
        if (name == "min_separation_cells") c.min_separation_cells = to_int(key, v);
    } else if (section == "dispersion") {
        if (name == "delta_2f_min") c.dispersion.delta_2f_min = to_double(key, v);
        else if (name == "delta_2f_max") c.dispersion.delta_2f_max = to_double(key, v);
        else if (name == "count") c.dispersion.count = to_int(key, v);
        else if (name == "radius") {
            if (v == "peak") c.dispersion.radius.reset();
            else c.dispersion.radius = to_double(key, v);
        }
    } else if (section == "sweep") {
        if (!c.sweep) c.sweep = SweepSettings{};
        if (name == "axis") c.sweep->axis = axis_from(key, v);
        else if (name == "values") c.sweep->values = to_list(key, v);
    }
}

void validate_scheme(RunConfig& c, std::vector<std::string>& warnings) {
    if (c.scheme == Scheme::Singlet) {
        for (auto& w : c.singlet.validate()) warnings.push_back(std::move(w));
    } else {
        for (auto& w : c.doublet.validate(c.grid)) warnings.push_back(std::move(w));
    }
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string to_string(Scheme s) {
    return s == Scheme::Singlet ? "singlet" : "doublet";
}

std::string to_string(Experiment e) {
    switch (e) {
        case Experiment::Propagate: return "propagate";
        case Experiment::Exchange: return "exchange";
        case Experiment::OracleCompare: return "oracle-compare";
        case Experiment::Detect: return "detect";
        case Experiment::Dispersion: return "dispersion";
        case Experiment::Sweep: return "sweep";
    }
    return "propagate";
}

std::string to_string(ProbeInput p) {
    return p == ProbeInput::Uniform ? "uniform" : "exchange";
}

std::string to_string(SweepAxis a) {
    switch (a) {
        case SweepAxis::L1: return "l1";
        case SweepAxis::StrengthRatio: return "strength_ratio";
        case SweepAxis::Delta2f: return "delta_2f";
        case SweepAxis::Delta: return "delta";
        case SweepAxis::Z: return "z";
    }
    return "l1";
}

std::optional<Experiment> experiment_from_string(std::string_view name) {
    for (const Experiment e : {Experiment::Propagate, Experiment::Exchange, Experiment::OracleCompare,
                               Experiment::Detect, Experiment::Dispersion, Experiment::Sweep}) {
        if (to_string(e) == name) {
            return e;
        }
    }
    return std::nullopt;
}

RunConfig apply_sweep_value(const RunConfig& base, SweepAxis axis, double value) {
    RunConfig c = base;
    c.experiment = Experiment::Propagate;
    c.sweep.reset();
    const bool singlet = c.scheme == Scheme::Singlet;
    switch (axis) {
        case SweepAxis::L1: {
            const int l = static_cast<int>(std::lround(value));
            if (singlet) {
                c.singlet.beam1.winding = l;
            } else {
                c.doublet.beams[0].winding = l;
                c.doublet.beams[1].winding = l;
            }
            break;
        }
        case SweepAxis::StrengthRatio:
            if (singlet) {
                c.singlet.beam1.strength = value * c.singlet.beam2.strength;
            } else {
                c.doublet.beams[0].strength = value * c.doublet.beams[2].strength;
                c.doublet.beams[1].strength = value * c.doublet.beams[3].strength;
            }
            break;
        case SweepAxis::Delta2f:
            (singlet ? c.singlet.delta_2f : c.doublet.delta_2f) = value;
            break;
        case SweepAxis::Delta:
            c.doublet.delta = value;
            break;
        case SweepAxis::Z:
            (singlet ? c.singlet.z : c.doublet.z) = value;
            break;
    }
    return c;
}

void RunConfig::validate() {
    std::vector<std::string> found;
    grid.validate();
    if (output_dir.empty()) {
        throw ValidationError("[run] output_dir: must not be empty");
    }
    validate_scheme(*this, found);
    if (oracle.steps < 1) throw ValidationError("[oracle] steps: must be >= 1");
    if (!(oracle.tolerance > 0.0)) throw ValidationError("[oracle] tolerance: must be > 0");
    if (!(oracle.probe_coupling > 0.0)) throw ValidationError("[oracle] probe_coupling: must be > 0");
    if (oracle.decimation < 1) throw ValidationError("[oracle] decimation: must be >= 1");
    if (oracle.exact && scheme == Scheme::Doublet) {
        throw ValidationError("[oracle] exact: the stationary-atom integrator exists only for the singlet scheme");
    }
    if (min_separation_cells < 1) throw ValidationError("[detect] min_separation_cells: must be >= 1");
    if (dispersion.count < 2) throw ValidationError("[dispersion] count: must be >= 2");
    if (!(dispersion.delta_2f_min < dispersion.delta_2f_max)) {
        throw ValidationError("[dispersion] delta_2f_min: must be < delta_2f_max");
    }
    if (dispersion.radius && *dispersion.radius < 0.0) {
        throw ValidationError("[dispersion] radius: must be >= 0 or 'peak'");
    }
    if (experiment == Experiment::Sweep) {
        if (!sweep) {
            throw ValidationError("[sweep]: experiment 'sweep' needs a [sweep] section with axis and values");
        }
        if (sweep->values.empty()) {
            throw ValidationError("[sweep] values: must list at least one value");
        }
        if (sweep->axis == SweepAxis::Delta && scheme != Scheme::Doublet) {
            throw ValidationError("[sweep] axis: 'delta' applies only to the doublet scheme");
        }
        for (const double v : sweep->values) {
            if (sweep->axis == SweepAxis::L1 && v != std::round(v)) {
                throw ValidationError("[sweep] values: l1 values must be integers, got " + format_double(v));
            }
            RunConfig sub = apply_sweep_value(*this, sweep->axis, v);
            std::vector<std::string> ignored;
            try {
                validate_scheme(sub, ignored);
            } catch (const ValidationError& e) {
                throw ValidationError("[sweep] values: value " + format_double(v) + " is invalid: " + e.what());
            }
        }
    }
    warnings = std::move(found);
}

RunConfig parse_config(std::string_view text) {
    pt::ptree tree;
    std::istringstream in{std::string(text)};
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ValidationError("config syntax error at line " + std::to_string(e.line()) + ": " + e.message());
    }
    RunConfig c;
    for (const auto& [section, body] : tree) {
        if (body.empty()) {
            if (!body.data().empty() || schema().count(section) == 0) {
                throw ValidationError("key '" + section + "' appears outside any [section]");
            }
            if (section == "sweep" && !c.sweep) {
                c.sweep = SweepSettings{};
            }
            continue;
        }
        const auto it = schema().find(section);
        if (it == schema().end()) {
            throw ValidationError("unknown section [" + section + "]");
        }
        for (const auto& [name, value] : body) {
            if (!value.empty()) {
                throw ValidationError("[" + section + "] " + name + ": nested keys are not supported");
            }
            if (it->second.count(name) == 0) {
                throw ValidationError("[" + section + "] " + name + ": unknown key");
            }
            apply_key(c, section, name, value.data());
        }
    }
    c.validate();
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read config file " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::vector<std::pair<std::string, std::string>> flatten_config(const RunConfig& c) {
    std::vector<std::pair<std::string, std::string>> kv;
    const auto add = [&](std::string k, std::string v) { kv.emplace_back(std::move(k), std::move(v)); };
    const auto num = [](double v) { return format_double(v); };
    add("run.scheme", to_string(c.scheme));
    add("run.experiment", to_string(c.experiment));
    add("run.output_dir", c.output_dir);
    add("run.quiet", c.quiet ? "true" : "false");
    add("grid.nx", std::to_string(c.grid.nx));
    add("grid.ny", std::to_string(c.grid.ny));
    add("grid.half_extent", num(c.grid.half_extent));
    const SingletParams& s = c.singlet;
    add("singlet.strength_1", num(s.beam1.strength));
    add("singlet.winding_1", std::to_string(s.beam1.winding));
    add("singlet.strength_2", num(s.beam2.strength));
    add("singlet.winding_2", std::to_string(s.beam2.winding));
    add("singlet.waist", num(s.beam1.waist));
    add("singlet.delta_1f", num(s.delta_1f));
    add("singlet.delta_2f", num(s.delta_2f));
    add("singlet.z", num(s.z));
    add("singlet.gain_scale", num(s.gain_scale));
    const DoubletParams& d = c.doublet;
    const char* suffix[] = {"11", "12", "21", "22"};
    for (int k = 0; k < 4; ++k) {
        add(std::string("doublet.strength_") + suffix[k], num(d.beams[k].strength));
        add(std::string("doublet.winding_") + suffix[k], std::to_string(d.beams[k].winding));
    }
    add("doublet.waist", num(d.beams[0].waist));
    add("doublet.delta_1f", num(d.delta_1f));
    add("doublet.delta_2f", num(d.delta_2f));
    add("doublet.delta", num(d.delta));
    add("doublet.z", num(d.z));
    add("doublet.gain_scale", num(d.gain_scale));
    add("probes.input", to_string(c.probes));
    add("probes.amplitude_re", num(c.amplitude.real()));
    add("probes.amplitude_im", num(c.amplitude.imag()));
    add("oracle.steps", std::to_string(c.oracle.steps));
    add("oracle.tolerance", num(c.oracle.tolerance));
    add("oracle.check_convergence", c.oracle.check_convergence ? "true" : "false");
    add("oracle.exact", c.oracle.exact ? "true" : "false");
    add("oracle.probe_coupling", num(c.oracle.probe_coupling));
    add("oracle.decimation", std::to_string(c.oracle.decimation));
    add("detect.min_separation_cells", std::to_string(c.min_separation_cells));
    add("dispersion.delta_2f_min", num(c.dispersion.delta_2f_min));
    add("dispersion.delta_2f_max", num(c.dispersion.delta_2f_max));
    add("dispersion.count", std::to_string(c.dispersion.count));
    add("dispersion.radius", c.dispersion.radius ? num(*c.dispersion.radius) : "peak");
    if (c.sweep) {
        add("sweep.axis", to_string(c.sweep->axis));
        std::string values;
        for (std::size_t k = 0; k < c.sweep->values.size(); ++k) {
            values += (k ? ", " : "") + num(c.sweep->values[k]);
        }
        add("sweep.values", values);
    }
    return kv;
}

std::string serialize_config(const RunConfig& config) {
    std::ostringstream out;
    std::string current;
    for (const auto& [key, value] : flatten_config(config)) {
        const auto dot = key.find('.');
        const std::string section = key.substr(0, dot);
        if (section != current) {
            out << (current.empty() ? "" : "\n") << "[" << section << "]\n";
            current = section;
        }
        out << key.substr(dot + 1) << " = " << value << "\n";
    }
    return out.str();
}

}  // namespace offaxis::cli
