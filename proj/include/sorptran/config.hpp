#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "sorptran/minimizer.hpp"
#include "sorptran/stepper.hpp"

namespace sorptran {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One compactly supported cosine-squared hump added to a component of the
/// initial condition: height * cos^2(pi/2 * (x - center)/halfwidth) inside
/// |x - center| < halfwidth, zero outside.
struct BumpSpec {
    int component = 1;  // 1-based in config files
    double center = 0.0;
    double halfwidth = 0.0;
    double height = 0.0;
};

enum class InitialKind { Zero, Bump, Zkb, File };
enum class SourceKind { Zero, Constant };

/// A fully resolved run configuration: the flat INI-style config file with
/// every default filled in. render_effective_config() of a parsed config
/// re-parses to the identical configuration.
struct RunConfig {
    // [problem]
    IsothermKind isotherm = IsothermKind::FreundlichTransport;
    double exponent = 0.5;
    int components = 1;
    double xmin = 0.0;
    double xmax = 1.0;
    double final_time = 1.0;
    int interior_nodes = 0;
    int steps = 0;
    InitialKind initial = InitialKind::Zero;
    std::vector<BumpSpec> bumps;
    double zkb_mass = 0.0;
    double zkb_t0 = 0.0;
    double zkb_x0 = 0.0;
    std::string initial_file;
    SourceKind source = SourceKind::Zero;
    std::vector<double> source_values;

    // [solver]
    SolverConfig solver;

    // [output]
    std::string out_dir = "out";
    int snapshot_stride = 10;
    double support_eps = kDefaultSupportEps;

    // [converge]
    std::vector<double> m_exponents;
    std::vector<double> dx_sweep;
    double dt_factor = 2.0;
};

/// Parses and validates a run/converge config file. Throws ConfigError with
/// a file:line message on malformed input or inconsistent values.
RunConfig load_config(const std::string& path);

/// All resolved values in parseable form.
std::string render_effective_config(const RunConfig& cfg);

/// Builds the solver problem from a validated run config. For ZKB initial
/// data this enforces the support-containment rule: the profile must stay
/// inside the domain through the final time.
ProblemSpec build_problem(const RunConfig& cfg);

}  // namespace sorptran
