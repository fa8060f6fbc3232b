// qwalls command line: every experiment as a reproducible subcommand.
// Arrays go to CSV, scalars and metadata to JSON; a run manifest is written
// next to every file output so results can be reproduced bit-for-bit.
// Exit codes: 0 success, 2 bad arguments, 3 numeric non-convergence,
// 4 I/O failure.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "qwalls/carpet.hpp"
#include "qwalls/expr.hpp"
#include "qwalls/io.hpp"
#include "qwalls/movingwalls.hpp"
#include "qwalls/spectral.hpp"
#include "qwalls/trotter.hpp"
#include "qwalls/version.hpp"

using nlohmann::json;
using namespace qwalls;

namespace {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json make_manifest(const std::string& subcommand, const std::vector<std::string>& argv,
                   const PhysicalConfig& cfg, const json& params,
                   const std::vector<std::string>& outputs) {
    json m;
    m["tool"] = "qwalls";
    m["version"] = kVersion;
    m["subcommand"] = subcommand;
    m["argv"] = argv;
    m["units"] = {{"hbar", cfg.hbar}, {"mass", cfg.mass}, {"l0", cfg.l0}};
    m["params"] = params;
    m["outputs"] = outputs;
    return m;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << content;
    if (!out) throw IoError("write failed: " + path);
}

// data to --out (with a manifest sidecar) or to stdout
void emit(const std::string& out_path, const std::string& data, const json& manifest) {
    if (out_path.empty()) {
        std::cout << data;
        return;
    }
    write_file(out_path, data);
    write_file(out_path + ".manifest.json", manifest.dump(2) + "\n");
}

std::string csv_pair_table(const char* header, const std::vector<std::pair<double, double>>& rows) {
    std::ostringstream os;
    os << header << '\n';
    for (const auto& [a, b] : rows) os << fmt_double(a) << ',' << fmt_double(b) << '\n';
    return os.str();
}

PhysicalConfig config_from(double hbar, double mass, double l0) {
    PhysicalConfig cfg{hbar, mass, l0};
    cfg.validate();
    return cfg;
}

int dispatch(std::vector<std::string> args);

int run_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read manifest: " + path);
    json m;
    in >> m;
    std::vector<std::string> argv = m.at("argv").get<std::vector<std::string>>();
    return dispatch(std::move(argv));
}

int dispatch(std::vector<std::string> args) {
    CLI::App app{"quantum box dynamics under U(2) boundary conditions"};
    app.require_subcommand(1);
    app.footer("Units default to hbar = 1, mass = 1/2 (so hbar^2/2m = 1 and box levels are\n"
               "E_n = n^2 pi^2 / l^2), reference length l0 = 1. Override with --hbar/--mass/--l0.");

    const std::string units_note =
        "Units: hbar = 1, mass = 1/2 by default (hbar^2/2m = 1, box levels E_n = n^2 pi^2/l^2),\n"
        "reference length l0 = 1; override with the global --hbar/--mass/--l0 options.\n"
        "QWALLS_THREADS caps internal parallelism; outputs are identical for any value.";
    app.set_version_flag("--version", std::string(kVersion));

    double hbar = 1.0, mass = 0.5, l0 = 1.0;
    app.add_option("--hbar", hbar, "Planck constant (units)")->capture_default_str();
    app.add_option("--mass", mass, "particle mass (units; default makes hbar^2/2m = 1)")
        ->capture_default_str();
    app.add_option("--l0", l0, "reference length in the boundary trace scaling")
        ->capture_default_str();

    // ---- spectrum
    auto* sp = app.add_subcommand("spectrum", "eigenvalues and modes under a boundary condition");
    std::string sp_bc = "dirichlet", sp_out;
    double sp_a = 0.0, sp_l = 1.0, sp_emax = 100.0;
    sp->add_option("--bc", sp_bc, "boundary condition: dirichlet|neumann|robin:A|pseudo_periodic:A|local:A1,A2|JSON|file")
        ->capture_default_str();
    sp->add_option("--a", sp_a, "left endpoint")->capture_default_str();
    sp->add_option("--l", sp_l, "box width")->capture_default_str();
    sp->add_option("--emax", sp_emax, "energy cutoff")->capture_default_str();
    sp->add_option("--out", sp_out, "CSV output path (stdout when omitted)");

    // ---- carpet
    auto* cp = app.add_subcommand("carpet", "theta-series intensity profile at rescaled time tau");
    double cp_tau = 0.5, cp_l = 1.0;
    int cp_nmax = 2048, cp_points = (1 << 14) + 1, cp_smin = 4, cp_smax = 10;
    bool cp_dim = true;
    std::string cp_out;
    cp->add_option("--tau", cp_tau, "rescaled time")->required();
    cp->add_option("--nmax", cp_nmax, "series truncation")->capture_default_str();
    cp->add_option("--points", cp_points, "sample count (use 2^k + 1 for box counting)")
        ->capture_default_str();
    cp->add_option("--l", cp_l, "box width")->capture_default_str();
    cp->add_flag("--dimension,!--no-dimension", cp_dim,
                 "estimate the box-counting dimension of the profile (default on)");
    cp->add_option("--scale-min", cp_smin, "finest dyadic scale exponent")->capture_default_str();
    cp->add_option("--scale-max", cp_smax, "coarsest dyadic scale exponent")->capture_default_str();
    cp->add_option("--out", cp_out, "CSV output path (stdout when omitted)");

    // ---- evolve
    auto* ev = app.add_subcommand("evolve", "moving-wall propagation from a JSON trajectory spec");
    std::string ev_traj, ev_out;
    ev->add_option("--traj", ev_traj, "trajectory JSON file: {l0, M, dt, t_end, l: expr, d: expr}")
        ->required();
    ev->add_option("--out", ev_out, "CSV output path (stdout when omitted)");

    // ---- trotter
    auto* tr = app.add_subcommand("trotter", "alternating-evolution convergence against the composed limit");
    std::string tr_u, tr_v, tr_nlist = "8,32,128,256", tr_out;
    double tr_t = 0.1, tr_a = 0.0, tr_l = 1.0;
    int tr_modes = 64;
    tr->add_option("--bc-u", tr_u, "first boundary condition")->required();
    tr->add_option("--bc-v", tr_v, "second boundary condition")->required();
    tr->add_option("--t", tr_t, "half total time (the run evolves for 2t)")->capture_default_str();
    tr->add_option("--n-list", tr_nlist, "comma-separated switching counts")->capture_default_str();
    tr->add_option("--modes", tr_modes, "spectral truncation per boundary condition")
        ->capture_default_str();
    tr->add_option("--a", tr_a, "left endpoint")->capture_default_str();
    tr->add_option("--l", tr_l, "box width")->capture_default_str();
    tr->add_option("--out", tr_out, "CSV output path; JSON summary goes to stdout");

    // ---- compose
    auto* co = app.add_subcommand("compose", "star-compose two boundary conditions");
    std::string co_u, co_v, co_out;
    co->add_option("--u", co_u, "first boundary condition")->required();
    co->add_option("--v", co_v, "second boundary condition")->required();
    co->add_option("--out", co_out, "JSON output path (stdout when omitted)");

    // ---- airy
    auto* ai = app.add_subcommand("airy", "levels of the uniformly accelerating box");
    int ai_levels = 4;
    std::string ai_out;
    ai->add_option("--levels", ai_levels, "number of levels")->capture_default_str();
    ai->add_option("--out", ai_out, "CSV output path (stdout when omitted)");

    // ---- reflect
    auto* rf = app.add_subcommand("reflect", "Robin wall reflection phase beta(k)");
    double rf_alpha = 0.0, rf_kmin = 0.1, rf_kmax = 10.0;
    int rf_n = 1;
    std::string rf_out;
    rf->add_option("--alpha", rf_alpha, "Robin angle in (-pi, pi]")->required();
    rf->add_option("--kmin", rf_kmin, "first wavenumber")->capture_default_str();
    rf->add_option("--kmax", rf_kmax, "last wavenumber")->capture_default_str();
    rf->add_option("--n", rf_n, "number of k samples")->capture_default_str();
    rf->add_option("--out", rf_out, "CSV output path (stdout when omitted)");

    // ---- rerun
    auto* rr = app.add_subcommand("rerun", "re-execute the argv stored in a run manifest");
    std::string rr_manifest;
    rr->add_option("manifest", rr_manifest, "manifest JSON path")->required();

    for (CLI::App* sub : {sp, cp, ev, tr, co, ai, rf}) sub->footer(units_note);

    // CLI11 takes the arguments reversed and without the program name
    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();
    try {
        app.parse(std::move(rev));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const PhysicalConfig cfg = config_from(hbar, mass, l0);

    if (rr->parsed()) return run_manifest(rr_manifest);

    if (sp->parsed()) {
        const BoundaryUnitary u = parse_boundary(sp_bc);
        const Interval iv{sp_a, sp_a + sp_l};
        const auto modes = solve_spectrum(u, iv, cfg, sp_emax);
        std::ostringstream os;
        write_spectrum_csv(os, modes);
        emit(sp_out, os.str(),
             make_manifest("spectrum", args, cfg,
                           {{"bc", sp_bc}, {"a", sp_a}, {"l", sp_l}, {"emax", sp_emax}}, {sp_out}));
        return 0;
    }

    if (cp->parsed()) {
        const CarpetSeries series = CarpetSeries::make(cp_nmax, cp_l);
        const GridState prof = profile(series, cp_tau, cp_points);
        std::ostringstream os;
        os << "xi,re_theta,im_theta,intensity\n";
        for (int j = 0; j < prof.n(); ++j) {
            const double xi = prof.x_at(j);
            const cplx th = theta(series, xi, cp_tau);
            os << fmt_double(xi) << ',' << fmt_double(th.real()) << ',' << fmt_double(th.imag())
               << ',' << fmt_double(prof.samples[j].real()) << '\n';
        }
        json sidecar{{"tau", cp_tau},
                     {"n_max", cp_nmax},
                     {"l", cp_l},
                     {"tail_bound", series.tail_bound()},
                     {"revival_fidelity", revival_fidelity(series, cp_tau)}};
        if (cp_dim) {
            const BoxCountResult bc = box_counting_dimension(prof, cp_smin, cp_smax);
            sidecar["dimension_estimate"] = bc.dimension;
            sidecar["dimension_flat_profile"] = bc.flat;
        }
        const json manifest = make_manifest("carpet", args, cfg, sidecar, {cp_out});
        if (cp_out.empty()) {
            std::cout << os.str();
            std::cout << sidecar.dump(2) << '\n';
        } else {
            write_file(cp_out, os.str());
            write_file(cp_out + ".sidecar.json", sidecar.dump(2) + "\n");
            write_file(cp_out + ".manifest.json", manifest.dump(2) + "\n");
        }
        return 0;
    }

    if (ev->parsed()) {
        std::ifstream in(ev_traj);
        if (!in) throw IoError("cannot read trajectory spec: " + ev_traj);
        json spec;
        in >> spec;
        const double traj_l0 = spec.value("l0", cfg.l0);
        const int n_modes = spec.value("M", 64);
        const double dt = spec.at("dt").get<double>();
        const double t_end = spec.at("t_end").get<double>();
        const int every = spec.value("output_every", 10);
        const int init_mode = spec.value("initial_mode", 1);
        const Expr lx = Expr::parse(spec.at("l").get<std::string>());
        const Expr dx = Expr::parse(spec.value("d", std::string("0")));

        PhysicalConfig run_cfg = cfg;
        run_cfg.l0 = traj_l0;
        const GalerkinOperators ops = build_galerkin(run_cfg, n_modes);
        WallTrajectory traj;
        traj.l = [lx](double t) { return lx.eval(t); };
        traj.d = [dx](double t) { return dx.eval(t); };

        SpectralState st;
        st.basis_tag = "dirichlet_sine";
        st.coeffs.assign(n_modes, 0.0);
        if (init_mode < 1 || init_mode > n_modes)
            throw std::invalid_argument("evolve: initial_mode out of range");
        st.coeffs[init_mode - 1] = 1.0;

        std::ostringstream os;
        os << "t,norm,energy,lhs_rate,rhs_rate\n";
        auto emit_row = [&](double t) {
            const auto [lhs_rate, rhs_rate] = energy_rate_check(ops, traj, st, t);
            os << fmt_double(t) << ',' << fmt_double(st.norm()) << ','
               << fmt_double(kinetic_energy(ops, st, traj.width(t))) << ',' << fmt_double(lhs_rate)
               << ',' << fmt_double(rhs_rate) << '\n';
        };
        double t = 0.0;
        emit_row(t);
        int step = 0;
        while (t < t_end - 0.5 * dt) {
            st = step_crank_nicolson(ops, traj, st, t, dt);
            t += dt;
            if (++step % every == 0 || t >= t_end - 0.5 * dt) emit_row(t);
        }
        emit(ev_out, os.str(),
             make_manifest("evolve", args, run_cfg, spec, {ev_out}));
        return 0;
    }

    if (tr->parsed()) {
        const BoundaryUnitary u = parse_boundary(tr_u);
        const BoundaryUnitary v = parse_boundary(tr_v);
        const Interval iv{tr_a, tr_a + tr_l};
        std::vector<int> n_list;
        std::stringstream ss(tr_nlist);
        std::string tok;
        while (std::getline(ss, tok, ',')) n_list.push_back(std::stoi(tok));
        const auto coeffs = smooth_bump_coeffs(iv, tr_modes);
        const ConvergenceReport rep =
            convergence_report(u, v, iv, cfg, tr_t, n_list, coeffs, tr_modes);
        std::ostringstream os;
        os << "N,error,norm_deficit\n";
        for (const auto& r : rep.rows)
            os << r.n_pairs << ',' << fmt_double(r.error) << ',' << fmt_double(r.norm_deficit)
               << '\n';
        json summary{{"composed_w", json::parse(boundary_to_json(rep.composed))},
                     {"fitted_order", rep.fitted_order},
                     {"t", tr_t},
                     {"modes", tr_modes}};
        const json manifest = make_manifest("trotter", args, cfg,
                                            {{"bc_u", tr_u},
                                             {"bc_v", tr_v},
                                             {"t", tr_t},
                                             {"n_list", tr_nlist},
                                             {"modes", tr_modes},
                                             {"a", tr_a},
                                             {"l", tr_l}},
                                            {tr_out});
        if (tr_out.empty()) {
            std::cout << os.str();
        } else {
            write_file(tr_out, os.str());
            write_file(tr_out + ".manifest.json", manifest.dump(2) + "\n");
        }
        std::cout << summary.dump(2) << '\n';
        return 0;
    }

    if (co->parsed()) {
        const BoundaryUnitary u = parse_boundary(co_u);
        const BoundaryUnitary v = parse_boundary(co_v);
        const BoundaryUnitary w = star(u, v, cfg.l0);
        auto descriptor_json = [&](const BoundaryUnitary& b) {
            const FormDescriptor d = form_descriptor(b, cfg.l0);
            json jd{{"constraint_dim", d.constraint_dim}};
            if (d.constraint_dim == 0) {
                jd["generator_re"] = {d.gen2.a.real(), d.gen2.b.real(), d.gen2.c.real(), d.gen2.d.real()};
                jd["generator_im"] = {d.gen2.a.imag(), d.gen2.b.imag(), d.gen2.c.imag(), d.gen2.d.imag()};
            } else if (d.constraint_dim == 1) {
                jd["generator_scalar_im"] = d.gen1.imag();
            }
            return jd;
        };
        json out{{"w", json::parse(boundary_to_json(w))},
                 {"u_form", descriptor_json(u)},
                 {"v_form", descriptor_json(v)},
                 {"w_form", descriptor_json(w)},
                 {"manifest", make_manifest("compose", args, cfg, {{"u", co_u}, {"v", co_v}}, {co_out})}};
        out["constraint_dims"] = {out["u_form"]["constraint_dim"], out["v_form"]["constraint_dim"],
                                  out["w_form"]["constraint_dim"]};
        const std::string text = out.dump(2) + "\n";
        if (co_out.empty()) std::cout << text;
        else write_file(co_out, text);
        return 0;
    }

    if (ai->parsed()) {
        const auto eps = solve_airy_levels(ai_levels);
        std::vector<std::pair<double, double>> rows;
        for (size_t i = 0; i < eps.size(); ++i) rows.emplace_back(double(i + 1), eps[i]);
        emit(ai_out, csv_pair_table("n,epsilon", rows),
             make_manifest("airy", args, cfg, {{"levels", ai_levels}}, {ai_out}));
        return 0;
    }

    if (rf->parsed()) {
        std::vector<std::pair<double, double>> rows;
        const int n = std::max(1, rf_n);
        for (int i = 0; i < n; ++i) {
            const double k = (n == 1) ? rf_kmin : rf_kmin + (rf_kmax - rf_kmin) * i / (n - 1);
            rows.emplace_back(k, reflection_phase(rf_alpha, k, cfg.l0));
        }
        emit(rf_out, csv_pair_table("k,beta", rows),
             make_manifest("reflect", args, cfg,
                           {{"alpha", rf_alpha}, {"kmin", rf_kmin}, {"kmax", rf_kmax}, {"n", rf_n}},
                           {rf_out}));
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    try {
        return dispatch(std::move(args));
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "argument error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "argument error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return 3;
    }
}
