#include "sorptran/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "sorptran/analytic.hpp"

namespace sorptran {

namespace {

struct Entry {
    std::string section;
    std::string key;
    std::string value;
    int line;
};

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<Entry> parse_ini(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file: " + path);
    }
    std::vector<Entry> entries;
    std::string section;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']') {
                throw ConfigError(path + ":" + std::to_string(lineno) + ": unterminated section");
            }
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        const size_t eq = t.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
        }
        Entry e;
        e.section = section;
        e.key = trim(t.substr(0, eq));
        e.value = trim(t.substr(eq + 1));
        e.line = lineno;
        if (e.key.empty()) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key");
        }
        entries.push_back(std::move(e));
    }
    return entries;
}

[[noreturn]] void fail(const std::string& path, const Entry& e, const std::string& msg) {
    throw ConfigError(path + ":" + std::to_string(e.line) + ": " + e.key + ": " + msg);
}

double parse_double(const std::string& path, const Entry& e, const std::string& token) {
    try {
        size_t used = 0;
        const double v = std::stod(token, &used);
        if (used != token.size()) fail(path, e, "trailing characters in number '" + token + "'");
        return v;
    } catch (const std::logic_error&) {
        fail(path, e, "expected a number, got '" + token + "'");
    }
}

int parse_int(const std::string& path, const Entry& e, const std::string& token) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        fail(path, e, "expected an integer, got '" + token + "'");
    }
    return v;
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

// Resolves a spacing against a span: count = span / spacing must be a whole
// number of cells (or steps) to within a relative 1e-6.
int cells_from_spacing(const std::string& path, const Entry& e, double span, double spacing) {
    if (!(spacing > 0.0)) fail(path, e, "spacing must be positive");
    const double count = span / spacing;
    const double rounded = std::round(count);
    if (rounded < 1.0 || std::fabs(count - rounded) > 1e-6 * std::max(1.0, rounded)) {
        fail(path, e, "does not divide the extent evenly");
    }
    return static_cast<int>(rounded);
}

void append(std::string& out, const char* key, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += key;
    out += " = ";
    out += buf;
    out += "\n";
}

void append(std::string& out, const char* key, int v) {
    out += key;
    out += " = ";
    out += std::to_string(v);
    out += "\n";
}

void append(std::string& out, const char* key, const std::string& v) {
    out += key;
    out += " = ";
    out += v;
    out += "\n";
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

RunConfig load_config(const std::string& path) {
    const std::vector<Entry> entries = parse_ini(path);
    RunConfig cfg;

    double dx = 0.0, dt = 0.0;
    bool saw_dx = false, saw_dt = false, saw_nodes = false, saw_steps = false;

    for (const Entry& e : entries) {
        const std::string id = e.section + "." + e.key;
        if (id == "problem.isotherm") {
            if (e.value == "freundlich-transport") {
                cfg.isotherm = IsothermKind::FreundlichTransport;
            } else if (e.value == "pme-scalar") {
                cfg.isotherm = IsothermKind::PmeScalar;
            } else {
                fail(path, e, "unknown isotherm kind '" + e.value + "'");
            }
        } else if (id == "problem.p") {
            cfg.exponent = parse_double(path, e, e.value);
        } else if (id == "problem.components") {
            cfg.components = parse_int(path, e, e.value);
        } else if (id == "problem.xmin") {
            cfg.xmin = parse_double(path, e, e.value);
        } else if (id == "problem.xmax") {
            cfg.xmax = parse_double(path, e, e.value);
        } else if (id == "problem.final_time") {
            cfg.final_time = parse_double(path, e, e.value);
        } else if (id == "problem.dx") {
            dx = parse_double(path, e, e.value);
            saw_dx = true;
        } else if (id == "problem.dt") {
            dt = parse_double(path, e, e.value);
            saw_dt = true;
        } else if (id == "problem.interior_nodes") {
            cfg.interior_nodes = parse_int(path, e, e.value);
            saw_nodes = true;
        } else if (id == "problem.steps") {
            cfg.steps = parse_int(path, e, e.value);
            saw_steps = true;
        } else if (id == "problem.initial") {
            if (e.value == "zero") cfg.initial = InitialKind::Zero;
            else if (e.value == "bump") cfg.initial = InitialKind::Bump;
            else if (e.value == "zkb") cfg.initial = InitialKind::Zkb;
            else if (e.value == "file") cfg.initial = InitialKind::File;
            else fail(path, e, "unknown initial condition '" + e.value + "'");
        } else if (id == "problem.bump") {
            const auto tokens = split_ws(e.value);
            if (tokens.size() != 4) fail(path, e, "expected: component center halfwidth height");
            BumpSpec bump;
            bump.component = parse_int(path, e, tokens[0]);
            bump.center = parse_double(path, e, tokens[1]);
            bump.halfwidth = parse_double(path, e, tokens[2]);
            bump.height = parse_double(path, e, tokens[3]);
            cfg.bumps.push_back(bump);
        } else if (id == "problem.zkb_mass") {
            cfg.zkb_mass = parse_double(path, e, e.value);
        } else if (id == "problem.zkb_t0") {
            cfg.zkb_t0 = parse_double(path, e, e.value);
        } else if (id == "problem.zkb_x0") {
            cfg.zkb_x0 = parse_double(path, e, e.value);
        } else if (id == "problem.initial_file") {
            cfg.initial_file = e.value;
        } else if (id == "problem.source") {
            if (e.value == "zero") cfg.source = SourceKind::Zero;
            else if (e.value == "constant") cfg.source = SourceKind::Constant;
            else fail(path, e, "unknown source kind '" + e.value + "'");
        } else if (id == "problem.source_values") {
            cfg.source_values.clear();
            for (const auto& tok : split_ws(e.value)) {
                cfg.source_values.push_back(parse_double(path, e, tok));
            }
        } else if (id == "solver.grad_tol") {
            cfg.solver.grad_tol = parse_double(path, e, e.value);
        } else if (id == "solver.max_iters") {
            cfg.solver.max_iters = parse_int(path, e, e.value);
        } else if (id == "solver.ls_shrink") {
            cfg.solver.ls_shrink = parse_double(path, e, e.value);
        } else if (id == "solver.ls_decrease") {
            cfg.solver.ls_decrease = parse_double(path, e, e.value);
        } else if (id == "output.directory") {
            cfg.out_dir = e.value;
        } else if (id == "output.snapshot_stride") {
            cfg.snapshot_stride = parse_int(path, e, e.value);
        } else if (id == "output.support_eps") {
            cfg.support_eps = parse_double(path, e, e.value);
        } else if (id == "converge.m_exponents") {
            cfg.m_exponents.clear();
            for (const auto& tok : split_ws(e.value)) {
                cfg.m_exponents.push_back(parse_double(path, e, tok));
            }
        } else if (id == "converge.dx_sweep") {
            cfg.dx_sweep.clear();
            for (const auto& tok : split_ws(e.value)) {
                cfg.dx_sweep.push_back(parse_double(path, e, tok));
            }
        } else if (id == "converge.dt_factor") {
            cfg.dt_factor = parse_double(path, e, e.value);
        } else {
            fail(path, e, "unknown option");
        }
    }

    // Cross-field validation. Grid and time may also be given as spacings.
    if (!(cfg.xmin < cfg.xmax)) throw ConfigError(path + ": xmin must be below xmax");
    if (!(cfg.final_time > 0.0)) throw ConfigError(path + ": final_time must be positive");
    if (!(cfg.exponent > 0.0 && cfg.exponent < 1.0)) {
        throw ConfigError(path + ": exponent p must lie in (0, 1)");
    }
    if (cfg.components < 1) throw ConfigError(path + ": need at least one component");
    if (cfg.isotherm == IsothermKind::PmeScalar && cfg.components != 1) {
        throw ConfigError(path + ": the pme-scalar isotherm is single-component");
    }

    const double span = cfg.xmax - cfg.xmin;
    if (saw_dx) {
        const Entry probe{"problem", "dx", "", 0};
        const int cells = cells_from_spacing(path, probe, span, dx);
        if (saw_nodes && cfg.interior_nodes != cells - 1) {
            throw ConfigError(path + ": dx and interior_nodes disagree");
        }
        cfg.interior_nodes = cells - 1;
    }
    if (saw_dt) {
        const Entry probe{"problem", "dt", "", 0};
        const int steps = cells_from_spacing(path, probe, cfg.final_time, dt);
        if (saw_steps && cfg.steps != steps) {
            throw ConfigError(path + ": dt and steps disagree");
        }
        cfg.steps = steps;
    }
    if ((saw_nodes || saw_dx) && cfg.interior_nodes < 1) {
        throw ConfigError(path + ": need at least one interior node");
    }
    if ((saw_steps || saw_dt) && cfg.steps < 1) {
        throw ConfigError(path + ": need at least one time step");
    }

    if (cfg.initial == InitialKind::Bump) {
        if (cfg.bumps.empty()) throw ConfigError(path + ": bump initial data needs bump entries");
        for (const BumpSpec& bump : cfg.bumps) {
            if (bump.component < 1 || bump.component > cfg.components) {
                throw ConfigError(path + ": bump component out of range");
            }
            if (!(bump.halfwidth > 0.0)) throw ConfigError(path + ": bump halfwidth must be positive");
            if (!(bump.center - bump.halfwidth > cfg.xmin &&
                  bump.center + bump.halfwidth < cfg.xmax)) {
                throw ConfigError(path + ": bump support must lie strictly inside the domain");
            }
        }
    }
    if (cfg.initial == InitialKind::Zkb) {
        if (cfg.components != 1) {
            throw ConfigError(path + ": the exact profile initial data is single-component");
        }
        if (!(cfg.zkb_t0 > 0.0)) {
            throw ConfigError(path + ": zkb_t0 must be positive (the profile is singular at t = -t0)");
        }
        if (!(cfg.zkb_mass > 0.0)) throw ConfigError(path + ": zkb_mass must be positive");
    }
    if (cfg.initial == InitialKind::File && cfg.initial_file.empty()) {
        throw ConfigError(path + ": initial_file missing");
    }
    if (cfg.source == SourceKind::Constant &&
        cfg.source_values.size() != static_cast<size_t>(cfg.components)) {
        throw ConfigError(path + ": source_values must list one value per component");
    }
    if (cfg.snapshot_stride < 1) throw ConfigError(path + ": snapshot_stride must be positive");
    if (!(cfg.support_eps > 0.0)) throw ConfigError(path + ": support_eps must be positive");
    for (double m : cfg.m_exponents) {
        if (!(m > 1.0)) throw ConfigError(path + ": converge exponents must exceed 1");
    }
    for (double d : cfg.dx_sweep) {
        if (!(d > 0.0)) throw ConfigError(path + ": dx sweep values must be positive");
    }
    if (!(cfg.dt_factor > 0.0)) throw ConfigError(path + ": dt_factor must be positive");

    return cfg;
}

std::string render_effective_config(const RunConfig& cfg) {
    std::string out;
    out += "[problem]\n";
    append(out, "isotherm",
           std::string(cfg.isotherm == IsothermKind::FreundlichTransport ? "freundlich-transport"
                                                                         : "pme-scalar"));
    append(out, "p", cfg.exponent);
    append(out, "components", cfg.components);
    append(out, "xmin", cfg.xmin);
    append(out, "xmax", cfg.xmax);
    append(out, "final_time", cfg.final_time);
    if (cfg.interior_nodes > 0) append(out, "interior_nodes", cfg.interior_nodes);
    if (cfg.steps > 0) append(out, "steps", cfg.steps);
    switch (cfg.initial) {
        case InitialKind::Zero: append(out, "initial", std::string("zero")); break;
        case InitialKind::Bump:
            append(out, "initial", std::string("bump"));
            for (const BumpSpec& b : cfg.bumps) {
                append(out, "bump",
                       std::to_string(b.component) + " " + format_double(b.center) + " " +
                           format_double(b.halfwidth) + " " + format_double(b.height));
            }
            break;
        case InitialKind::Zkb:
            append(out, "initial", std::string("zkb"));
            append(out, "zkb_mass", cfg.zkb_mass);
            append(out, "zkb_t0", cfg.zkb_t0);
            append(out, "zkb_x0", cfg.zkb_x0);
            break;
        case InitialKind::File:
            append(out, "initial", std::string("file"));
            append(out, "initial_file", cfg.initial_file);
            break;
    }
    if (cfg.source == SourceKind::Constant) {
        append(out, "source", std::string("constant"));
        std::string values;
        for (size_t i = 0; i < cfg.source_values.size(); ++i) {
            if (i) values += " ";
            values += format_double(cfg.source_values[i]);
        }
        append(out, "source_values", values);
    } else {
        append(out, "source", std::string("zero"));
    }

    out += "\n[solver]\n";
    append(out, "grad_tol", cfg.solver.grad_tol);
    append(out, "max_iters", cfg.solver.max_iters);
    append(out, "ls_shrink", cfg.solver.ls_shrink);
    append(out, "ls_decrease", cfg.solver.ls_decrease);

    out += "\n[output]\n";
    append(out, "directory", cfg.out_dir);
    append(out, "snapshot_stride", cfg.snapshot_stride);
    append(out, "support_eps", cfg.support_eps);

    if (!cfg.m_exponents.empty() || !cfg.dx_sweep.empty()) {
        out += "\n[converge]\n";
        std::string ms, dxs;
        for (size_t i = 0; i < cfg.m_exponents.size(); ++i) {
            if (i) ms += " ";
            ms += format_double(cfg.m_exponents[i]);
        }
        for (size_t i = 0; i < cfg.dx_sweep.size(); ++i) {
            if (i) dxs += " ";
            dxs += format_double(cfg.dx_sweep[i]);
        }
        append(out, "m_exponents", ms);
        append(out, "dx_sweep", dxs);
        append(out, "dt_factor", cfg.dt_factor);
    }
    return out;
}

namespace {

std::vector<double> load_nodal_file(const std::string& path, const Grid1D& grid, int components) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open initial data file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError(path + ": empty initial data file");
    // Header: x,u_1,...,u_m
    std::vector<double> values(static_cast<size_t>(grid.total_nodes()) * components);
    int row = 0;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (row >= grid.total_nodes()) throw ConfigError(path + ": more rows than grid nodes");
        std::istringstream ls(t);
        std::string cell;
        std::vector<double> cols;
        while (std::getline(ls, cell, ',')) {
            try {
                cols.push_back(std::stod(trim(cell)));
            } catch (const std::logic_error&) {
                throw ConfigError(path + ":" + std::to_string(lineno) + ": bad number '" + cell + "'");
            }
        }
        if (cols.size() != static_cast<size_t>(components) + 1) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected x plus " +
                              std::to_string(components) + " values");
        }
        const double node = grid.node(row);
        if (std::fabs(cols[0] - node) > 1e-9 * std::max(1.0, std::fabs(node))) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": x does not match grid node");
        }
        for (int k = 0; k < components; ++k) {
            values[static_cast<size_t>(row) * components + k] = cols[static_cast<size_t>(k) + 1];
        }
        ++row;
    }
    if (row != grid.total_nodes()) {
        throw ConfigError(path + ": expected " + std::to_string(grid.total_nodes()) + " rows, got " +
                          std::to_string(row));
    }
    return values;
}

}  // namespace

ProblemSpec build_problem(const RunConfig& cfg) {
    if (cfg.interior_nodes < 1) throw ConfigError("grid unspecified: set dx or interior_nodes");
    if (cfg.steps < 1) throw ConfigError("time partition unspecified: set dt or steps");

    ProblemSpec spec{
        Isotherm(cfg.isotherm, cfg.exponent, cfg.components),
        Grid1D(cfg.xmin, cfg.xmax, cfg.interior_nodes),
        TimePartition(cfg.final_time, cfg.steps),
        {},
        {},
        1,
        cfg.support_eps,
    };

    const int m = cfg.components;
    switch (cfg.initial) {
        case InitialKind::Zero:
            spec.initial_condition = [m](double, std::span<double> out) {
                for (int k = 0; k < m; ++k) out[k] = 0.0;
            };
            break;
        case InitialKind::Bump: {
            auto bumps = cfg.bumps;
            spec.initial_condition = [m, bumps](double x, std::span<double> out) {
                for (int k = 0; k < m; ++k) out[k] = 0.0;
                for (const BumpSpec& b : bumps) {
                    const double s = (x - b.center) / b.halfwidth;
                    if (std::fabs(s) < 1.0) {
                        const double c = std::cos(0.5 * std::numbers::pi * s);
                        out[b.component - 1] += b.height * c * c;
                    }
                }
            };
            break;
        }
        case InitialKind::Zkb: {
            const ZkbProfile profile(cfg.zkb_mass, cfg.zkb_t0, cfg.zkb_x0, 1.0 / cfg.exponent, 1);
            const double radius = profile.support_radius(cfg.final_time);
            const double room = std::min(cfg.zkb_x0 - cfg.xmin, cfg.xmax - cfg.zkb_x0);
            if (!(radius < room)) {
                throw ConfigError("profile support leaves the domain before the final time "
                                  "(radius " + format_double(radius) + " vs room " +
                                  format_double(room) + ")");
            }
            spec.initial_condition = [profile](double x, std::span<double> out) {
                out[0] = profile.u(0.0, x);
            };
            break;
        }
        case InitialKind::File: {
            auto values = load_nodal_file(cfg.initial_file, spec.grid, m);
            const Grid1D grid = spec.grid;
            spec.initial_condition = [values = std::move(values), grid, m](double x,
                                                                           std::span<double> out) {
                const int i = static_cast<int>(std::round((x - grid.left()) / grid.dx()));
                for (int k = 0; k < m; ++k) out[k] = values[static_cast<size_t>(i) * m + k];
            };
            break;
        }
    }

    if (cfg.source == SourceKind::Constant) {
        auto values = cfg.source_values;
        spec.source = [values](double, double, std::span<double> out) {
            for (size_t k = 0; k < values.size(); ++k) out[k] = values[k];
        };
    }
    return spec;
}

}  // namespace sorptran
