#include "peterlin/runner.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "peterlin/conformation.hpp"
#include "peterlin/fokker_planck.hpp"
#include "peterlin/moments.hpp"
#include "peterlin/ns_solver.hpp"
#include "peterlin/parallel.hpp"
#include "peterlin/snapshot.hpp"

namespace peterlin {

namespace {

namespace fs = std::filesystem;

class DiagnosticsWriter {
public:
    explicit DiagnosticsWriter(const std::string& path) : path_(path), os_(path, std::ios::trunc) {
        if (!os_) throw IoError("cannot open for writing: " + path);
        os_ << diagnostics_csv_header() << '\n';
    }
    void write(const DiagnosticsRow& row) {
        os_ << to_csv(row) << '\n';
        if (!os_) throw IoError("write failed: " + path_);
    }
    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::ofstream os_;
};

std::string step_name(const std::string& stem, long step, const std::string& ext) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "_%06ld", step);
    return stem + buf + ext;
}

VectorField initial_velocity(const RunConfig& cfg, const TorusGrid2D& grid) {
    VectorField u(grid);
    if (cfg.init_u == InitVelocity::taylor_green) {
        for (int iy = 0; iy < grid.ny; ++iy)
            for (int ix = 0; ix < grid.nx; ++ix) {
                const double x = grid.x(ix), y = grid.y(iy);
                u.x.at(ix, iy) = std::sin(x) * std::cos(y);
                u.y.at(ix, iy) = -std::cos(x) * std::sin(y);
            }
    }
    return u;
}

TensorField uniform_tensor(const TorusGrid2D& grid, const SymMat2& m) {
    TensorField t(grid);
    t.xx.fill(m.xx);
    t.xy.fill(m.xy);
    t.yy.fill(m.yy);
    return t;
}

void write_field_snapshot(const std::string& path, const VectorField& u, const ScalarField& p,
                          const TensorField& c) {
    FieldSnapshot snap;
    add_field(snap, "u_x", u.x);
    add_field(snap, "u_y", u.y);
    add_field(snap, "p", p);
    add_field(snap, "C_11", c.xx);
    add_field(snap, "C_12", c.xy);
    add_field(snap, "C_22", c.yy);
    write_pkf(path, snap);
}

DiagnosticsRow macro_row(long step, double time, const VectorField& u, const TensorField& c) {
    DiagnosticsRow row;
    row.step = step;
    row.time = time;
    row.kinetic_energy = kinetic_energy(u);
    row.trC_mean = field_mean(trace_field(c));
    return row;
}

DiagnosticsRow kinetic_row(long step, double time, const VectorField& u,
                           const HermiteField& psi, const HermiteBasis& basis,
                           const TensorField& c_kin) {
    DiagnosticsRow row;
    row.step = step;
    row.time = time;
    row.kinetic_energy = kinetic_energy(u);
    row.trC_mean = field_mean(trace_field(c_kin));
    row.mass_min = field_min(psi.mass());
    row.mass_max = field_max(psi.mass());
    row.entropy = field_mean(relative_entropy(psi, basis));
    row.fisher = field_mean(fisher_information(psi, basis));
    row.moment4_max = field_max(radial_moment(psi, 4, basis));
    const NodalStats stats = reconstruction_stats(psi, basis);
    row.min_psi_node = field_min(stats.min_psi);
    row.negativity_mass = field_max(stats.negativity_mass);
    return row;
}

// ||A - B|| / ||B|| in the cell-averaged Frobenius norm (off-diagonal
// counted twice).
double relative_tensor_error(const TensorField& a, const TensorField& b) {
    double num = 0.0, den = 0.0;
    for (long i = 0; i < a.xx.size(); ++i) {
        const double dxx = a.xx[i] - b.xx[i];
        const double dxy = a.xy[i] - b.xy[i];
        const double dyy = a.yy[i] - b.yy[i];
        num += dxx * dxx + 2.0 * dxy * dxy + dyy * dyy;
        den += b.xx[i] * b.xx[i] + 2.0 * b.xy[i] * b.xy[i] + b.yy[i] * b.yy[i];
    }
    return den == 0.0 ? std::sqrt(num) : std::sqrt(num / den);
}

FPConfig make_fp_config(const RunConfig& cfg, GammaSource source) {
    FPConfig fp;
    fp.dt = cfg.dt;
    fp.cutoff_L = cfg.cutoff_L;
    fp.gamma_source = source;
    fp.params = cfg.params;
    fp.gamma2 = cfg.gamma2;
    fp.validate();
    return fp;
}

HermiteField initial_psi(const RunConfig& cfg, const TorusGrid2D& grid,
                         const HermiteBasis& basis) {
    const std::vector<double> coeffs = gaussian_psi_hat(cfg.init_c0, basis);
    HermiteField psi(grid, basis);
    psi.fill_uniform(coeffs);
    return psi;
}

}  // namespace

RunSummary run_mp(const RunConfig& cfg) {
    set_threads(cfg.threads);
    const TorusGrid2D grid{cfg.nx, cfg.ny};
    SpectralWorkspace ws(grid);
    fs::create_directories(cfg.output_dir);

    NSState ns(grid);
    ns.u = initial_velocity(cfg, grid);
    MPState mp(grid);
    mp.c = uniform_tensor(grid, cfg.init_c0);
    const NSConfig ns_cfg{cfg.nu, cfg.dt};

    DiagnosticsWriter diag(cfg.output_dir + "/diagnostics.csv");
    RunSummary summary;
    summary.diagnostics_path = diag.path();
    summary.first = macro_row(0, 0.0, ns.u, mp.c);
    diag.write(summary.first);
    summary.last = summary.first;

    const long n_steps = cfg.n_steps();
    bool warned_positivity = false;
    for (long step = 1; step <= n_steps; ++step) {
        try {
            TensorField stress = kramers_stress(mp.c, cfg.gamma3, cfg.n_density);
            ns_step(ns, stress, ns_cfg, ws);
            mp_step(mp, ns.u, cfg.gamma1, cfg.gamma2, cfg.params, cfg.dt, ws);
        } catch (const BlowupError& e) {
            throw e.with_step(step);
        }
        if (mp.positivity_lost && !warned_positivity) {
            std::fprintf(stderr, "warning: tr C <= 0 at step %ld (min eigenvalue %.3e)\n",
                         step, mp.min_eigenvalue);
            warned_positivity = true;
        }
        if (step % cfg.output_every == 0 || step == n_steps) {
            summary.last = macro_row(step, step * cfg.dt, ns.u, mp.c);
            diag.write(summary.last);
        }
        if (cfg.snapshot_every > 0 && step % cfg.snapshot_every == 0 && step != n_steps)
            write_field_snapshot(cfg.output_dir + step_name("/fields", step, ".pkf"), ns.u,
                                 ns.p, mp.c);
    }
    write_field_snapshot(cfg.output_dir + step_name("/fields", n_steps, ".pkf"), ns.u, ns.p,
                         mp.c);
    summary.steps = n_steps;
    return summary;
}

RunSummary run_fp_given(const RunConfig& cfg) {
    set_threads(cfg.threads);
    const TorusGrid2D grid{cfg.nx, cfg.ny};
    SpectralWorkspace ws(grid);
    fs::create_directories(cfg.output_dir);

    const FieldSnapshot u_snap = read_pkf(cfg.u_star_path);
    const FieldSnapshot c_snap = read_pkf(cfg.c_star_path);
    if (u_snap.nx != grid.nx || u_snap.ny != grid.ny || c_snap.nx != grid.nx ||
        c_snap.ny != grid.ny)
        throw ShapeError("fp_given: field files do not match the configured grid");
    VectorField u_star(grid);
    u_star.x = extract_field(u_snap, "u_x");
    u_star.y = extract_field(u_snap, "u_y");
    TensorField c_star(grid);
    c_star.xx = extract_field(c_snap, "C_11");
    c_star.xy = extract_field(c_snap, "C_12");
    c_star.yy = extract_field(c_snap, "C_22");
    const ScalarField trc_star = trace_field(c_star);

    const HermiteBasis basis(cfg.maxwellian.a, cfg.n_hermite);
    HermiteField psi = initial_psi(cfg, grid, basis);
    const FPConfig fp_cfg = make_fp_config(cfg, GammaSource::given_field);

    DiagnosticsWriter diag(cfg.output_dir + "/diagnostics.csv");
    RunSummary summary;
    summary.diagnostics_path = diag.path();
    summary.first =
        kinetic_row(0, 0.0, u_star, psi, basis, conformation_from_psi(psi, basis));
    diag.write(summary.first);
    summary.last = summary.first;

    const long n_steps = cfg.n_steps();
    for (long step = 1; step <= n_steps; ++step) {
        try {
            fp_step(psi, u_star, &trc_star, fp_cfg, basis, ws);
        } catch (const BlowupError& e) {
            throw e.with_step(step);
        }
        if (step % cfg.output_every == 0 || step == n_steps) {
            summary.last = kinetic_row(step, step * cfg.dt, u_star, psi, basis,
                                       conformation_from_psi(psi, basis));
            diag.write(summary.last);
        }
        if (cfg.snapshot_every > 0 && step % cfg.snapshot_every == 0 && step != n_steps)
            write_pkh(cfg.output_dir + step_name("/kinetic", step, ".pkh"), psi, basis);
    }
    write_pkh(cfg.output_dir + step_name("/kinetic", n_steps, ".pkh"), psi, basis);
    ScalarField p(grid);
    write_field_snapshot(cfg.output_dir + step_name("/fields", n_steps, ".pkf"), u_star, p,
                         conformation_from_psi(psi, basis));
    summary.steps = n_steps;
    return summary;
}

RunSummary run_kp(const RunConfig& cfg) {
    set_threads(cfg.threads);
    const TorusGrid2D grid{cfg.nx, cfg.ny};
    SpectralWorkspace ws(grid);
    fs::create_directories(cfg.output_dir);

    NSState ns(grid);
    ns.u = initial_velocity(cfg, grid);
    const HermiteBasis basis(cfg.maxwellian.a, cfg.n_hermite);
    HermiteField psi = initial_psi(cfg, grid, basis);
    const NSConfig ns_cfg{cfg.nu, cfg.dt};
    const FPConfig fp_cfg = make_fp_config(cfg, GammaSource::self_consistent);

    DiagnosticsWriter diag(cfg.output_dir + "/diagnostics.csv");
    RunSummary summary;
    summary.diagnostics_path = diag.path();
    TensorField c_kin = conformation_from_psi(psi, basis);
    summary.first = kinetic_row(0, 0.0, ns.u, psi, basis, c_kin);
    diag.write(summary.first);
    summary.last = summary.first;

    const long n_steps = cfg.n_steps();
    for (long step = 1; step <= n_steps; ++step) {
        try {
            // stress from the current kinetic moments, then the fluid step,
            // then the kinetic step driven by the new velocity
            c_kin = conformation_from_psi(psi, basis);
            TensorField stress = kramers_stress(c_kin, cfg.gamma3, cfg.n_density);
            ns_step(ns, stress, ns_cfg, ws);
            fp_step(psi, ns.u, nullptr, fp_cfg, basis, ws);
        } catch (const BlowupError& e) {
            throw e.with_step(step);
        }
        if (step % cfg.output_every == 0 || step == n_steps) {
            summary.last = kinetic_row(step, step * cfg.dt, ns.u, psi, basis,
                                       conformation_from_psi(psi, basis));
            diag.write(summary.last);
        }
        if (cfg.snapshot_every > 0 && step % cfg.snapshot_every == 0 && step != n_steps) {
            write_pkh(cfg.output_dir + step_name("/kinetic", step, ".pkh"), psi, basis);
            write_field_snapshot(cfg.output_dir + step_name("/fields", step, ".pkf"), ns.u,
                                 ns.p, conformation_from_psi(psi, basis));
        }
    }
    write_pkh(cfg.output_dir + step_name("/kinetic", n_steps, ".pkh"), psi, basis);
    write_field_snapshot(cfg.output_dir + step_name("/fields", n_steps, ".pkf"), ns.u, ns.p,
                         conformation_from_psi(psi, basis));
    summary.steps = n_steps;
    return summary;
}

ClosureReport compare_closure(const RunConfig& cfg) {
    set_threads(cfg.threads);
    const TorusGrid2D grid{cfg.nx, cfg.ny};
    SpectralWorkspace ws(grid);
    fs::create_directories(cfg.output_dir);
    fs::create_directories(cfg.output_dir + "/mp");
    fs::create_directories(cfg.output_dir + "/kp");

    const HermiteBasis basis(cfg.maxwellian.a, cfg.n_hermite);
    HermiteField psi = initial_psi(cfg, grid, basis);

    // identical initial data: C_0 := C(M psi-hat_0)
    NSState ns_mp(grid), ns_kp(grid);
    ns_mp.u = initial_velocity(cfg, grid);
    ns_kp.u = ns_mp.u;
    MPState mp(grid);
    mp.c = conformation_from_psi(psi, basis);

    const NSConfig ns_cfg{cfg.nu, cfg.dt};
    const GammaSource kinetic_source = cfg.compare_self_consistent
                                           ? GammaSource::self_consistent
                                           : GammaSource::given_field;
    const FPConfig fp_cfg = make_fp_config(cfg, kinetic_source);

    DiagnosticsWriter diag_mp(cfg.output_dir + "/mp/diagnostics.csv");
    DiagnosticsWriter diag_kp(cfg.output_dir + "/kp/diagnostics.csv");
    std::ofstream series(cfg.output_dir + "/closure_series.csv", std::ios::trunc);
    if (!series) throw IoError("cannot open closure series for writing");
    series << "step,time,rel_C_error\n";

    ClosureResidualAccumulator res_mp(cfg.gamma1, cfg.gamma2, cfg.params, cfg.dt);
    ClosureResidualAccumulator res_kp(cfg.gamma1, cfg.gamma2, cfg.params, cfg.dt);

    TensorField c_kin = conformation_from_psi(psi, basis);
    diag_mp.write(macro_row(0, 0.0, ns_mp.u, mp.c));
    DiagnosticsRow row0 = kinetic_row(0, 0.0, ns_kp.u, psi, basis, c_kin);
    row0.closure_err = relative_tensor_error(c_kin, mp.c);
    diag_kp.write(row0);
    series << "0," << format_double(0.0) << ',' << format_double(*row0.closure_err) << '\n';

    ClosureReport report;
    report.max_rel_C_error = *row0.closure_err;

    const long n_steps = cfg.n_steps();
    for (long step = 1; step <= n_steps; ++step) {
        try {
            res_mp.push(mp.c, ns_mp.u, ws);
            res_kp.push(c_kin, ns_kp.u, ws);
            const ScalarField trc_macro = trace_field(mp.c);

            TensorField stress_mp = kramers_stress(mp.c, cfg.gamma3, cfg.n_density);
            ns_step(ns_mp, stress_mp, ns_cfg, ws);
            mp_step(mp, ns_mp.u, cfg.gamma1, cfg.gamma2, cfg.params, cfg.dt, ws);

            TensorField stress_kp = kramers_stress(c_kin, cfg.gamma3, cfg.n_density);
            ns_step(ns_kp, stress_kp, ns_cfg, ws);
            fp_step(psi, ns_kp.u,
                    kinetic_source == GammaSource::given_field ? &trc_macro : nullptr, fp_cfg,
                    basis, ws);
            c_kin = conformation_from_psi(psi, basis);
        } catch (const BlowupError& e) {
            throw e.with_step(step);
        }

        const double rel = relative_tensor_error(c_kin, mp.c);
        if (rel > report.max_rel_C_error) report.max_rel_C_error = rel;
        report.final_rel_C_error = rel;

        if (step % cfg.output_every == 0 || step == n_steps) {
            const double time = step * cfg.dt;
            diag_mp.write(macro_row(step, time, ns_mp.u, mp.c));
            DiagnosticsRow row = kinetic_row(step, time, ns_kp.u, psi, basis, c_kin);
            row.closure_err = rel;
            diag_kp.write(row);
            series << step << ',' << format_double(time) << ',' << format_double(rel) << '\n';
        }
    }
    res_mp.push(mp.c, ns_mp.u, ws);
    res_kp.push(c_kin, ns_kp.u, ws);
    report.residual_macro = res_mp.value();
    report.residual_kinetic = res_kp.value();

    write_field_snapshot(cfg.output_dir + step_name("/mp/fields", n_steps, ".pkf"), ns_mp.u,
                         ns_mp.p, mp.c);
    write_field_snapshot(cfg.output_dir + step_name("/kp/fields", n_steps, ".pkf"), ns_kp.u,
                         ns_kp.p, c_kin);
    write_pkh(cfg.output_dir + step_name("/kp/kinetic", n_steps, ".pkh"), psi, basis);

    report.error_series_path = cfg.output_dir + "/closure_series.csv";
    report.report_path = cfg.output_dir + "/report.txt";
    std::ofstream rep(report.report_path, std::ios::trunc);
    if (!rep) throw IoError("cannot open report for writing");
    rep << "max_rel_c_error = " << format_double(report.max_rel_C_error) << '\n'
        << "final_rel_c_error = " << format_double(report.final_rel_C_error) << '\n'
        << "residual_kinetic = " << format_double(report.residual_kinetic) << '\n'
        << "residual_macro = " << format_double(report.residual_macro) << '\n'
        << "error_series = closure_series.csv\n";
    return report;
}

}  // namespace peterlin
