#include "sorptran/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <vector>

#include "sorptran/analytic.hpp"
#include "sorptran/config.hpp"
#include "sorptran/diagnostics.hpp"
#include "sorptran/stepper.hpp"

namespace sorptran {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

bool write_text(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) return false;
    out << content;
    out.flush();
    return static_cast<bool>(out);
}

std::string snapshots_csv(const Trajectory& traj, int stride) {
    const Grid1D& grid = traj.grid();
    const int m = traj.components();
    std::string out = "t,x";
    for (int k = 1; k <= m; ++k) out += ",u_" + std::to_string(k);
    out += "\n";
    for (int n = 0; n <= traj.time().steps(); ++n) {
        if (n % stride != 0 && n != traj.time().steps()) continue;
        const StateField& field = traj.level(n);
        const std::string t = fmt(traj.time().time(n));
        for (int i = 0; i < grid.total_nodes(); ++i) {
            out += t;
            out += ',';
            out += fmt(grid.node(i));
            for (int k = 0; k < m; ++k) {
                out += ',';
                out += fmt(field.value(i, k));
            }
            out += '\n';
        }
    }
    return out;
}

std::string diagnostics_csv(const Trajectory& traj) {
    const int m = traj.components();
    std::string out = "step,t,energy,dirichlet_cum,min_value";
    for (int k = 1; k <= m; ++k) {
        const std::string s = std::to_string(k);
        out += ",mass_" + s + ",support_left_" + s + ",support_right_" + s + ",gaps_" + s;
    }
    out += "\n";
    for (const StepDiagnostics& d : traj.diagnostics()) {
        out += std::to_string(d.step);
        out += ',';
        out += fmt(traj.time().time(d.step));
        out += ',';
        out += fmt(d.energy);
        out += ',';
        out += fmt(d.dirichlet_cumulative);
        out += ',';
        out += fmt(d.min_value);
        for (int k = 0; k < m; ++k) {
            const SupportInterval& s = d.support[k];
            out += ',';
            out += fmt(d.mass[k]);
            out += ',';
            out += s.empty ? "nan" : fmt(s.left);
            out += ',';
            out += s.empty ? "nan" : fmt(s.right);
            out += ',';
            out += std::to_string(s.gaps.size());
        }
        out += '\n';
    }
    return out;
}

std::string run_report(const Trajectory& traj) {
    std::string out;
    out += "steps: " + std::to_string(traj.time().steps()) + "\n";
    int total_iters = 0;
    int max_iters = 0;
    bool fallback = false;
    for (const SolveReport& r : traj.reports()) {
        total_iters += r.iterations;
        max_iters = std::max(max_iters, r.iterations);
        fallback = fallback || r.fallback_used;
    }
    out += "newton iterations: total " + std::to_string(total_iters) + ", max per step " +
           std::to_string(max_iters) + (fallback ? " (gradient fallback used)" : "") + "\n";

    double min_value = 0.0;
    for (const StepDiagnostics& d : traj.diagnostics()) {
        min_value = std::min(min_value, d.min_value);
    }
    out += "positivity: minimum nodal value " + fmt(min_value) + "\n";

    if (traj.source_free()) {
        const EnergyAudit audit = audit_energy_estimate(traj);
        out += std::string("energy estimate: ") + (audit.holds ? "holds" : "VIOLATED") +
               " (max energy " + fmt(audit.max_energy) + ", dirichlet total " +
               fmt(audit.dirichlet_total) + ", initial " + fmt(audit.initial_energy) +
               ", margin " + fmt(audit.margin) + ")\n";
    } else {
        out += "energy estimate: skipped (source term present)\n";
    }
    return out;
}

int prepare_out_dir(const std::filesystem::path& dir, bool quiet) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        if (!quiet) std::cerr << "error: cannot create output directory " << dir << "\n";
        return kExitInvalidInput;
    }
    return kExitOk;
}

}  // namespace

int cmd_run(const std::string& config_path, const CommandOptions& opts) {
    RunConfig cfg;
    std::optional<ProblemSpec> spec;
    try {
        cfg = load_config(config_path);
        if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
        spec.emplace(build_problem(cfg));
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    }

    const std::filesystem::path dir(cfg.out_dir);
    if (int rc = prepare_out_dir(dir, opts.quiet); rc != kExitOk) return rc;
    if (!write_text(dir / "effective-config.ini", render_effective_config(cfg))) {
        std::cerr << "error: cannot write to " << dir << "\n";
        return kExitInvalidInput;
    }

    std::optional<Trajectory> traj;
    try {
        traj.emplace(run(*spec, cfg.solver));
    } catch (const NonConvergenceError& e) {
        std::cerr << "error: solver failed at step " << e.step_index() << ": " << e.what() << "\n";
        return kExitSolverFailure;
    } catch (const NonFiniteEnergyError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolverFailure;
    }

    const bool ok = write_text(dir / "snapshots.csv", snapshots_csv(*traj, cfg.snapshot_stride)) &&
                    write_text(dir / "diagnostics.csv", diagnostics_csv(*traj)) &&
                    write_text(dir / "report.txt", run_report(*traj));
    if (!ok) {
        std::cerr << "error: cannot write outputs to " << dir << "\n";
        return kExitInvalidInput;
    }
    if (!opts.quiet) {
        std::cout << "wrote snapshots.csv, diagnostics.csv, report.txt to " << dir.string() << "\n";
    }
    return kExitOk;
}

int cmd_converge(const std::string& config_path, const CommandOptions& opts) {
    RunConfig cfg;
    try {
        cfg = load_config(config_path);
        if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    }
    if (cfg.m_exponents.empty()) {
        std::cerr << "error: converge needs m_exponents in the [converge] section\n";
        return kExitInvalidInput;
    }
    if (cfg.dx_sweep.size() < 2) {
        std::cerr << "error: converge needs at least two dx values to fit a rate\n";
        return kExitInvalidInput;
    }
    if (!(cfg.zkb_mass > 0.0) || !(cfg.zkb_t0 > 0.0)) {
        std::cerr << "error: converge needs zkb_mass and zkb_t0 in the [problem] section\n";
        return kExitInvalidInput;
    }

    const std::filesystem::path dir(cfg.out_dir);
    if (int rc = prepare_out_dir(dir, opts.quiet); rc != kExitOk) return rc;
    if (!write_text(dir / "effective-config.ini", render_effective_config(cfg))) {
        std::cerr << "error: cannot write to " << dir << "\n";
        return kExitInvalidInput;
    }

    const double span = cfg.xmax - cfg.xmin;
    std::string errors_csv = "m,dx,dt,e2\n";
    std::string rates_csv = "m,rate,prefactor\n";
    std::string report;

    for (double m_exp : cfg.m_exponents) {
        std::vector<std::pair<double, double>> points;
        std::ostringstream table;
        table << "m = " << m_exp << "\n";
        table << "    dx            e2            order\n";
        double prev_dx = 0.0, prev_err = 0.0;

        for (double dx : cfg.dx_sweep) {
            RunConfig sub = cfg;
            sub.isotherm = IsothermKind::PmeScalar;
            sub.exponent = 1.0 / m_exp;
            sub.components = 1;
            sub.initial = InitialKind::Zkb;
            sub.source = SourceKind::Zero;

            const double cells = std::round(span / dx);
            if (cells < 2.0 || std::fabs(span / dx - cells) > 1e-6 * cells) {
                std::cerr << "error: dx " << dx << " does not divide the domain evenly\n";
                return kExitInvalidInput;
            }
            sub.interior_nodes = static_cast<int>(cells) - 1;
            sub.steps = std::max(1, static_cast<int>(std::round(cfg.final_time / (cfg.dt_factor * dx))));

            std::optional<Trajectory> traj;
            try {
                ProblemSpec spec = build_problem(sub);
                traj.emplace(run(spec, sub.solver));
            } catch (const ConfigError& e) {
                std::cerr << "error: " << e.what() << "\n";
                return kExitInvalidInput;
            } catch (const NonConvergenceError& e) {
                std::cerr << "error: solver failed (m " << m_exp << ", dx " << dx << ", step "
                          << e.step_index() << "): " << e.what() << "\n";
                return kExitSolverFailure;
            } catch (const NonFiniteEnergyError& e) {
                std::cerr << "error: " << e.what() << "\n";
                return kExitSolverFailure;
            }
            ZkbProfile profile(sub.zkb_mass, sub.zkb_t0, sub.zkb_x0, m_exp, 1);
            const double err = l2_qt_error(*traj, [&profile](double t, double x, std::span<double> out) {
                out[0] = profile.u(t, x);
            });
            points.emplace_back(dx, err);
            errors_csv += fmt(m_exp) + "," + fmt(dx) + "," + fmt(traj->time().dt()) + "," + fmt(err) + "\n";

            table << "    " << fmt(dx) << "  " << fmt(err) << "  ";
            if (prev_dx > 0.0) {
                table << std::log(prev_err / err) / std::log(prev_dx / dx);
            } else {
                table << "-";
            }
            table << "\n";
            prev_dx = dx;
            prev_err = err;

            const EnergyAudit audit = audit_energy_estimate(*traj);
            report += "m " + fmt(m_exp) + " dx " + fmt(dx) + ": energy estimate " +
                      (audit.holds ? "holds" : "VIOLATED") + ", margin " + fmt(audit.margin) + "\n";
        }

        const RateFit fit = fit_rate(points);
        rates_csv += fmt(m_exp) + "," + fmt(fit.rate) + "," + fmt(fit.prefactor) + "\n";
        table << "  fitted rate " << fit.rate << ", prefactor " << fit.prefactor << "\n";
        if (!opts.quiet) std::cout << table.str();
    }

    const bool ok = write_text(dir / "errors.csv", errors_csv) &&
                    write_text(dir / "rates.csv", rates_csv) &&
                    write_text(dir / "report.txt", report);
    if (!ok) {
        std::cerr << "error: cannot write outputs to " << dir << "\n";
        return kExitInvalidInput;
    }
    return kExitOk;
}

namespace {

struct CheckList {
    bool quiet = false;
    bool all_ok = true;
    std::string log;

    void record(const std::string& name, bool ok, const std::string& detail) {
        const std::string line = std::string(ok ? "[ok]   " : "[FAIL] ") + name +
                                 (detail.empty() ? "" : " (" + detail + ")");
        log += line + "\n";
        if (!quiet) std::cout << line << "\n";
        all_ok = all_ok && ok;
    }
};

}  // namespace

int cmd_validate(const CommandOptions& opts, bool perturb_gradient_for_test) {
    CheckList checks;
    checks.quiet = opts.quiet;
    std::mt19937_64 rng(20240811u);

    const Isotherm transport(IsothermKind::FreundlichTransport, 1.0 / 3.0, 2);
    const Isotherm pme(IsothermKind::PmeScalar, 0.5, 1);

    // Gradient of the potential vs finite differences.
    for (const Isotherm* iso : {&transport, &pme}) {
        const int m = iso->components();
        std::uniform_real_distribution<double> logr(std::log(0.01), std::log(10.0));
        std::normal_distribution<double> gauss;
        double worst = 0.0;
        bool first = true;
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<double> u(m), bu(m);
            double norm = 0.0;
            for (int k = 0; k < m; ++k) {
                u[k] = gauss(rng);
                norm += u[k] * u[k];
            }
            norm = std::sqrt(norm);
            const double radius = std::exp(logr(rng));
            for (int k = 0; k < m; ++k) u[k] *= radius / norm;

            iso->b(u, bu);
            if (perturb_gradient_for_test && first) {
                bu[0] += 1e-3;
                first = false;
            }
            for (int k = 0; k < m; ++k) {
                const double h = 1e-6 * std::max(1.0, radius);
                std::vector<double> up(u), dn(u);
                up[k] += h;
                dn[k] -= h;
                const double fd = (iso->potential(up) - iso->potential(dn)) / (2.0 * h);
                const double denom = std::max(std::fabs(bu[k]), 1e-3 * radius);
                worst = std::max(worst, std::fabs(fd - bu[k]) / denom);
            }
        }
        checks.record(std::string("b = grad(phi) by finite differences, ") + std::string(iso->name()),
                      worst <= 1e-6, "max rel err " + fmt(worst));
    }

    // Conjugate density identity B = u.b - phi.
    {
        std::uniform_real_distribution<double> coord(-5.0, 5.0);
        double worst = 0.0;
        for (int trial = 0; trial < 500; ++trial) {
            std::vector<double> u(2), bu(2);
            for (auto& v : u) v = coord(rng);
            transport.b(u, bu);
            const double direct = u[0] * bu[0] + u[1] * bu[1] - transport.potential(u);
            const double closed = transport.conjugate_density(u);
            worst = std::max(worst, std::fabs(direct - closed) / std::max(1e-30, std::fabs(closed)));
        }
        checks.record("conjugate density identity", worst <= 1e-12, "max rel err " + fmt(worst));
    }

    // Monotonicity of b.
    {
        std::uniform_real_distribution<double> coord(-5.0, 5.0);
        double worst = 0.0;
        for (int trial = 0; trial < 1000; ++trial) {
            std::vector<double> z(2), w(2), bz(2), bw(2);
            for (auto& v : z) v = coord(rng);
            for (auto& v : w) v = coord(rng);
            transport.b(z, bz);
            transport.b(w, bw);
            double dot = 0.0;
            for (int k = 0; k < 2; ++k) dot += (bz[k] - bw[k]) * (z[k] - w[k]);
            worst = std::min(worst, dot);
        }
        checks.record("monotonicity of b", worst >= 0.0, "min pairing " + fmt(worst));
    }

    // Conjugate bound |b(z)| <= delta B(z) + max_{|w| <= 1/delta} |b(w)|.
    {
        std::uniform_real_distribution<double> coord(-20.0, 20.0);
        bool ok = true;
        double tightest = 1e300;
        for (double delta : {0.5, 1.0, 2.0}) {
            double cap = 0.0;
            for (int i = 0; i <= 4000; ++i) {
                const double r = (1.0 / delta) * i / 4000.0;
                std::vector<double> w{r, 0.0}, bw(2);
                transport.b(w, bw);
                cap = std::max(cap, std::hypot(bw[0], bw[1]));
            }
            for (int trial = 0; trial < 500; ++trial) {
                std::vector<double> z(2), bz(2);
                for (auto& v : z) v = coord(rng);
                transport.b(z, bz);
                const double lhs = std::hypot(bz[0], bz[1]);
                const double rhs = delta * transport.conjugate_density(z) + cap;
                ok = ok && lhs <= rhs * (1.0 + 1e-12);
                tightest = std::min(tightest, rhs - lhs);
            }
        }
        checks.record("conjugate bound on |b|", ok, "smallest slack " + fmt(tightest));
    }

    // Mass conservation of the exact profile under a fine quadrature.
    {
        const ZkbProfile profile(0.2, 1.0, 0.0, 2.0, 1);
        const Grid1D fine(-2.0, 2.0, 39999);
        std::vector<double> nodal(fine.total_nodes());
        double mass0 = 0.0;
        double drift = 0.0;
        for (double t : {0.0, 0.1, 0.25, 0.5}) {
            for (int i = 0; i < fine.total_nodes(); ++i) nodal[i] = profile.z(t, fine.node(i));
            const double mass = trapezoid_integral(fine, nodal);
            if (t == 0.0) {
                mass0 = mass;
            } else {
                drift = std::max(drift, std::fabs(mass - mass0) / mass0);
            }
        }
        checks.record("profile mass conservation", drift <= 1e-6, "max rel drift " + fmt(drift));
    }

    if (!opts.out_dir.empty()) {
        const std::filesystem::path dir(opts.out_dir);
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec || !write_text(dir / "validate-report.txt", checks.log)) {
            std::cerr << "error: cannot write validation report to " << opts.out_dir << "\n";
            return kExitInvalidInput;
        }
    }
    return checks.all_ok ? kExitOk : kExitCheckFailure;
}

}  // namespace sorptran
