#include "qwalls/trotter.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qwalls {

WaveFun reference_basis_fun(const Interval& iv, int n) { return sine_basis_fun(iv, n); }

PropagatorBundle build_bundle(const BoundaryUnitary& u, const Interval& iv,
                              const PhysicalConfig& cfg, int n_modes,
                              const SpectrumOptions& opts) {
    if (n_modes < 1) throw std::invalid_argument("build_bundle: n_modes >= 1");
    const double l = iv.width();
    const double kin = cfg.kinetic_scale();
    // grow e_max until enough modes are captured (count never shrinks in e_max)
    double e_max = kin * std::pow((n_modes + 2) * std::numbers::pi / l, 2.0);
    std::vector<EigenMode> modes;
    for (int attempt = 0; attempt < 6; ++attempt) {
        modes = solve_spectrum(u, iv, cfg, e_max, opts);
        if (int(modes.size()) >= n_modes) break;
        e_max *= 4.0;
    }
    if (int(modes.size()) < n_modes)
        throw std::runtime_error("build_bundle: spectrum solver returned too few modes");
    modes.resize(n_modes);

    PropagatorBundle b;
    b.bc = u;
    b.modes = std::move(modes);
    b.overlaps = CMatrix(n_modes, n_modes);
    for (int m = 0; m < n_modes; ++m)
        for (int n = 1; n <= n_modes; ++n)
            b.overlaps(m, n - 1) = wave_overlap(b.modes[m].fun, reference_basis_fun(iv, n));
    return b;
}

EvolveResult apply_evolution(const PropagatorBundle& b, std::span<const cplx> ref_coeffs,
                             double tau, const PhysicalConfig& cfg) {
    if (tau < 0.0) throw std::invalid_argument("apply_evolution: tau must be non-negative");
    if (int(ref_coeffs.size()) != b.size())
        throw std::invalid_argument("apply_evolution: coefficient size mismatch");
    const double in2 = norm2(ref_coeffs) * norm2(ref_coeffs);
    std::vector<cplx> eig = b.overlaps.matvec(ref_coeffs);
    const double cap2 = norm2(eig) * norm2(eig);
    for (int m = 0; m < b.size(); ++m)
        eig[m] *= std::polar(1.0, -b.modes[m].energy * tau / cfg.hbar);
    EvolveResult out;
    out.coeffs = b.overlaps.adjoint_matvec(eig);
    out.norm_deficit = std::max(0.0, in2 - cap2);
    return out;
}

CMatrix cross_overlaps(const PropagatorBundle& bu, const PropagatorBundle& bv) {
    CMatrix g(bu.size(), bv.size());
    for (int m = 0; m < bu.size(); ++m)
        for (int n = 0; n < bv.size(); ++n)
            g(m, n) = wave_overlap(bu.modes[m].fun, bv.modes[n].fun);
    return g;
}

EvolveResult alternating_run(const PropagatorBundle& bu, const PropagatorBundle& bv,
                             double t_total, int n_pairs, std::span<const cplx> ref_coeffs,
                             const PhysicalConfig& cfg) {
    if (n_pairs < 1) throw std::invalid_argument("alternating_run: N >= 1");
    if (int(ref_coeffs.size()) != bu.size() || bu.size() != bv.size())
        throw std::invalid_argument("alternating_run: size mismatch");
    const double tau = t_total / n_pairs;
    const CMatrix g = cross_overlaps(bu, bv);

    auto phase_apply = [&](const PropagatorBundle& b, std::vector<cplx>& c) {
        for (int m = 0; m < b.size(); ++m)
            c[m] *= std::polar(1.0, -b.modes[m].energy * tau / cfg.hbar);
    };
    auto drop = [](double before2, const std::vector<cplx>& c) {
        const double after = norm2(c);
        return std::max(0.0, before2 - after * after);
    };

    double deficit = 0.0;
    // initial state lies exactly in the reference span, so this projection's
    // loss is a genuine truncation deficit of the V eigenbasis
    std::vector<cplx> c = bv.overlaps.matvec(ref_coeffs);
    {
        const double in = norm2(ref_coeffs);
        deficit += std::max(0.0, in * in - norm2(c) * norm2(c));
    }
    for (int i = 0; i < n_pairs; ++i) {
        phase_apply(bv, c);
        double before2 = norm2(c) * norm2(c);
        c = g.matvec(c);  // V coords -> U coords
        deficit += drop(before2, c);
        phase_apply(bu, c);
        if (i + 1 < n_pairs) {
            before2 = norm2(c) * norm2(c);
            c = g.adjoint_matvec(c);  // back to V coords
            deficit += drop(before2, c);
        }
    }
    EvolveResult out;
    {
        const double before2 = norm2(c) * norm2(c);
        out.coeffs = bu.overlaps.adjoint_matvec(c);  // back to the reference basis
        deficit += drop(before2, out.coeffs);
    }
    out.norm_deficit = deficit;
    return out;
}

ConvergenceReport convergence_report(const BoundaryUnitary& u, const BoundaryUnitary& v,
                                     const Interval& iv, const PhysicalConfig& cfg,
                                     double t_total, const std::vector<int>& n_list,
                                     std::span<const cplx> ref_coeffs, int n_modes,
                                     const SpectrumOptions& opts) {
    for (size_t i = 1; i < n_list.size(); ++i)
        if (n_list[i] <= n_list[i - 1])
            throw std::invalid_argument("convergence_report: n_list must be increasing");

    ConvergenceReport rep;
    rep.composed = star(u, v, cfg.l0);
    const PropagatorBundle bu = build_bundle(u, iv, cfg, n_modes, opts);
    const PropagatorBundle bv = build_bundle(v, iv, cfg, n_modes, opts);
    const PropagatorBundle bw = build_bundle(rep.composed, iv, cfg, n_modes, opts);
    // reference: e^{-i 2 t T_W} applied spectrally
    const EvolveResult ref = apply_evolution(bw, ref_coeffs, 2.0 * t_total, cfg);

    for (int n : n_list) {
        const EvolveResult run = alternating_run(bu, bv, t_total, n, ref_coeffs, cfg);
        ConvergenceRow row;
        row.n_pairs = n;
        row.norm_deficit = run.norm_deficit;
        double e2 = 0.0;
        for (size_t j = 0; j < run.coeffs.size(); ++j) e2 += std::norm(run.coeffs[j] - ref.coeffs[j]);
        row.error = std::sqrt(e2);
        rep.rows.push_back(row);
    }

    // fitted order: least-squares slope of log error vs log N
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (const auto& r : rep.rows) {
        if (r.error <= 0.0) continue;
        const double x = std::log(double(r.n_pairs)), y = std::log(r.error);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++m;
    }
    rep.fitted_order = (m >= 2) ? -(m * sxy - sx * sy) / (m * sxx - sx * sx) : 0.0;
    return rep;
}

std::vector<cplx> smooth_bump_coeffs(const Interval& iv, int n_modes) {
    // sine coefficients of (x-a)^3 (b-x)^3 by composite Simpson quadrature,
    // then normalized in the captured subspace
    const int ng = 1 << 13;
    const double h = iv.width() / ng;
    std::vector<cplx> c(n_modes, 0.0);
    for (int n = 1; n <= n_modes; ++n) {
        const double k = n * std::numbers::pi / iv.width();
        const double amp = std::sqrt(2.0 / iv.width());
        auto f = [&](double x) {
            const double w = (x - iv.a) * (x - iv.a) * (x - iv.a) * (iv.b - x) * (iv.b - x) * (iv.b - x);
            return amp * std::sin(k * (x - iv.a)) * w;
        };
        double s = f(iv.a) + f(iv.b);
        for (int j = 1; j < ng; ++j) s += f(iv.a + j * h) * ((j % 2) ? 4.0 : 2.0);
        c[n - 1] = s * h / 3.0;
    }
    const double nn = norm2(c);
    for (cplx& z : c) z /= nn;
    return c;
}

}  // namespace qwalls
