#include "config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace oscbath::config {

namespace {

std::string trim(const std::string& s)
{
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_number(const std::string& key, const std::string& val, int line)
{
    try {
        size_t pos = 0;
        const double x = std::stod(val, &pos);
        if (pos != val.size()) throw std::invalid_argument("trailing junk");
        return x;
    } catch (...) {
        throw Error(Status::type_mismatch, "line " + std::to_string(line) + ": key '" + key +
                                               "' expects a number, got '" + val + "'");
    }
}

std::vector<double> parse_list(const std::string& key, const std::string& val, int line)
{
    std::vector<double> out;
    std::stringstream ss(val);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty())
            throw Error(Status::type_mismatch,
                        "line " + std::to_string(line) + ": empty element in list for '" + key + "'");
        out.push_back(parse_number(key, item, line));
    }
    if (out.empty())
        throw Error(Status::type_mismatch,
                    "line " + std::to_string(line) + ": key '" + key + "' expects a list");
    return out;
}

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string fmt_list(const std::vector<double>& v)
{
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += fmt(v[i]);
    }
    return out;
}

const std::vector<std::string> kModelAxes = {"omega", "eps", "cutoff", "lambda_th", "mu"};

} // namespace

bool RunConfig::operator==(const RunConfig& o) const
{
    return model.omega == o.model.omega && model.eps == o.model.eps &&
           model.cutoff == o.model.cutoff && model.lambda_th == o.model.lambda_th &&
           model.mu == o.model.mu && has_lattice == o.has_lattice &&
           lattice.n_sites == o.lattice.n_sites && lattice.dx == o.lattice.dx &&
           lattice.smear_sigma == o.lattice.smear_sigma && lattice.dt == o.lattice.dt &&
           lattice.t_final == o.lattice.t_final && lattice.window_lo == o.lattice.window_lo &&
           lattice.window_hi == o.lattice.window_hi &&
           lattice.profile_xs == o.lattice.profile_xs && sweep_axis == o.sweep_axis &&
           sweep_values == o.sweep_values && output_format == o.output_format &&
           output_path == o.output_path && quad_tol == o.quad_tol && fit_rms_max == o.fit_rms_max;
}

RunConfig parse_config(const std::string& text)
{
    // raw model fields first; validation happens once at the end
    double omega = 1.0, eps = 1.0, cutoff = 1e3, lambda_th = 0.7, mu = 0.01;
    RunConfig cfg;

    std::map<std::string, int> seen; // key -> line
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        const auto hash = s.find('#');
        if (hash != std::string::npos) s = s.substr(0, hash);
        s = trim(s);
        if (s.empty()) continue;

        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw Error(Status::parse_error,
                        "line " + std::to_string(line) + ": expected key=value, got '" + s + "'");
        const std::string key = trim(s.substr(0, eq));
        const std::string val = trim(s.substr(eq + 1));
        if (key.empty())
            throw Error(Status::parse_error, "line " + std::to_string(line) + ": empty key");
        if (seen.count(key))
            throw Error(Status::parse_error, "line " + std::to_string(line) + ": duplicate key '" +
                                                 key + "' (first on line " +
                                                 std::to_string(seen[key]) + ")");
        seen[key] = line;

        if (key == "model.omega") omega = parse_number(key, val, line);
        else if (key == "model.eps") eps = parse_number(key, val, line);
        else if (key == "model.cutoff") cutoff = parse_number(key, val, line);
        else if (key == "model.lambda_th") lambda_th = parse_number(key, val, line);
        else if (key == "model.mu") mu = parse_number(key, val, line);
        else if (key == "lattice.n_sites") {
            cfg.lattice.n_sites = int(parse_number(key, val, line));
            cfg.has_lattice = true;
        } else if (key == "lattice.dx") {
            cfg.lattice.dx = parse_number(key, val, line);
            cfg.has_lattice = true;
        } else if (key == "lattice.smear_sigma") {
            cfg.lattice.smear_sigma = parse_number(key, val, line);
            cfg.has_lattice = true;
        } else if (key == "lattice.dt") {
            cfg.lattice.dt = parse_number(key, val, line);
            cfg.has_lattice = true;
        } else if (key == "lattice.t_final") {
            cfg.lattice.t_final = parse_number(key, val, line);
            cfg.has_lattice = true;
        } else if (key == "lattice.window_lo") {
            cfg.lattice.window_lo = parse_number(key, val, line);
            cfg.has_lattice = true;
        } else if (key == "lattice.window_hi") {
            cfg.lattice.window_hi = parse_number(key, val, line);
            cfg.has_lattice = true;
        } else if (key == "lattice.profile_xs") {
            cfg.lattice.profile_xs = parse_list(key, val, line);
            cfg.has_lattice = true;
        } else if (key == "sweep.axis") {
            bool known = false;
            for (const auto& a : kModelAxes) known = known || a == val;
            if (!known)
                throw Error(Status::config_invalid,
                            "line " + std::to_string(line) + ": sweep.axis '" + val +
                                "' does not name a model parameter (omega, eps, cutoff, "
                                "lambda_th, mu)");
            cfg.sweep_axis = val;
        } else if (key == "sweep.values") {
            cfg.sweep_values = parse_list(key, val, line);
        } else if (key == "output.format") {
            if (val != "csv" && val != "json")
                throw Error(Status::type_mismatch, "line " + std::to_string(line) +
                                                       ": output.format must be csv or json");
            cfg.output_format = val;
        } else if (key == "output.path") {
            cfg.output_path = val;
        } else if (key == "tolerances.quad_tol") {
            cfg.quad_tol = parse_number(key, val, line);
            if (!(cfg.quad_tol > 0.0))
                throw Error(Status::config_invalid,
                            "line " + std::to_string(line) + ": tolerances.quad_tol must be > 0");
        } else if (key == "tolerances.fit_rms_max") {
            cfg.fit_rms_max = parse_number(key, val, line);
        } else {
            throw Error(Status::unknown_key,
                        "line " + std::to_string(line) + ": unknown key '" + key + "'");
        }
    }

    if (!cfg.sweep_axis.empty() && cfg.sweep_values.empty())
        throw Error(Status::config_invalid, "sweep.axis given without sweep.values");
    if (cfg.sweep_axis.empty() && !cfg.sweep_values.empty())
        throw Error(Status::config_invalid, "sweep.values given without sweep.axis");

    try {
        cfg.model = validate(omega, eps, cutoff, lambda_th, mu);
    } catch (const Error& e) {
        // name the offending config keys in the diagnostic
        std::string msg = e.what();
        for (const auto& field : kModelAxes) {
            std::string from = " " + field;
            std::string to = " model." + field;
            size_t pos = 0;
            while ((pos = msg.find(from, pos)) != std::string::npos) {
                if (msg.compare(pos, to.size(), to) != 0) msg.replace(pos, from.size(), to);
                pos += to.size();
            }
        }
        throw Error(e.code(), msg);
    }
    return cfg;
}

RunConfig parse_config_file(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw Error(Status::io_error, "cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

std::string serialize(const RunConfig& cfg)
{
    std::string out;
    out += "model.omega=" + fmt(cfg.model.omega) + "\n";
    out += "model.eps=" + fmt(cfg.model.eps) + "\n";
    out += "model.cutoff=" + fmt(cfg.model.cutoff) + "\n";
    out += "model.lambda_th=" + fmt(cfg.model.lambda_th) + "\n";
    out += "model.mu=" + fmt(cfg.model.mu) + "\n";
    if (cfg.has_lattice) {
        out += "lattice.n_sites=" + std::to_string(cfg.lattice.n_sites) + "\n";
        out += "lattice.dx=" + fmt(cfg.lattice.dx) + "\n";
        out += "lattice.smear_sigma=" + fmt(cfg.lattice.smear_sigma) + "\n";
        out += "lattice.dt=" + fmt(cfg.lattice.dt) + "\n";
        out += "lattice.t_final=" + fmt(cfg.lattice.t_final) + "\n";
        out += "lattice.window_lo=" + fmt(cfg.lattice.window_lo) + "\n";
        out += "lattice.window_hi=" + fmt(cfg.lattice.window_hi) + "\n";
        out += "lattice.profile_xs=" + fmt_list(cfg.lattice.profile_xs) + "\n";
    }
    if (!cfg.sweep_axis.empty()) {
        out += "sweep.axis=" + cfg.sweep_axis + "\n";
        out += "sweep.values=" + fmt_list(cfg.sweep_values) + "\n";
    }
    out += "output.format=" + cfg.output_format + "\n";
    if (!cfg.output_path.empty()) out += "output.path=" + cfg.output_path + "\n";
    out += "tolerances.quad_tol=" + fmt(cfg.quad_tol) + "\n";
    out += "tolerances.fit_rms_max=" + fmt(cfg.fit_rms_max) + "\n";
    return out;
}

} // namespace oscbath::config
