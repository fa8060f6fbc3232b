#include "qwalls/movingwalls.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qwalls {

namespace {
constexpr double kPi = std::numbers::pi;
}

double WallTrajectory::width(double t) const {
    if (!l) throw std::invalid_argument("WallTrajectory: l(t) not set");
    const double w = l(t);
    if (!(w >= l_min)) {
        std::ostringstream os;
        os << "WallTrajectory: l(" << t << ") = " << w << " below the floor " << l_min;
        throw std::domain_error(os.str());
    }
    return w;
}

double WallTrajectory::center(double t) const {
    if (!d) return 0.0;
    return d(t);
}

double WallTrajectory::width_rate(double t) const {
    if (ldot) return ldot(t);
    return (width(t + fd_step) - width(t - fd_step)) / (2.0 * fd_step);
}

double WallTrajectory::center_rate(double t) const {
    if (ddot) return ddot(t);
    if (!d) return 0.0;
    return (d(t + fd_step) - d(t - fd_step)) / (2.0 * fd_step);
}

GalerkinOperators build_galerkin(const PhysicalConfig& cfg, int n_modes) {
    cfg.validate();
    if (n_modes < 2) throw std::invalid_argument("build_galerkin: need at least 2 modes");
    GalerkinOperators ops;
    ops.n_modes = n_modes;
    ops.config = cfg;
    ops.kin_diag.resize(n_modes);
    for (int n = 1; n <= n_modes; ++n) {
        const double k = n * kPi / cfg.l0;
        ops.kin_diag[n - 1] = cfg.hbar * cfg.hbar * k * k / (2.0 * cfg.mass);
    }
    ops.mom = CMatrix(n_modes, n_modes);
    ops.virial = CMatrix(n_modes, n_modes);
    for (int m = 1; m <= n_modes; ++m)
        for (int n = 1; n <= n_modes; ++n) {
            if (m == n) continue;
            const double denom = double(m) * double(m) - double(n) * double(n);
            if ((m + n) % 2 == 1) {
                // <m|p|n> = -i hbar 4 m n / (l0 (m^2 - n^2))
                ops.mom(m - 1, n - 1) = cplx(0.0, -cfg.hbar * 4.0 * m * n / (cfg.l0 * denom));
            } else {
                // <m|x o p|n> = 2 i hbar m n / (m^2 - n^2)
                ops.virial(m - 1, n - 1) = cplx(0.0, 2.0 * cfg.hbar * m * n / denom);
            }
        }
    return ops;
}

CMatrix assemble_hmid(const GalerkinOperators& ops, double l, double ldot, double ddot) {
    const int m = ops.n_modes;
    const double l0 = ops.config.l0;
    const double kin_pref = (l0 / l) * (l0 / l);
    CMatrix h(m, m);
    for (int i = 0; i < m; ++i) h(i, i) = kin_pref * ops.kin_diag[i];
    h.axpy(-ldot / l, ops.virial);
    h.axpy(-l0 * ddot / l, ops.mom);
    return h;
}

SpectralState step_crank_nicolson(const GalerkinOperators& ops, const WallTrajectory& traj,
                                  const SpectralState& state, double t, double dt) {
    if (dt == 0.0) return state;
    const int m = ops.n_modes;
    if (int(state.coeffs.size()) != m)
        throw std::invalid_argument("step_crank_nicolson: coefficient count != n_modes");
    const double tm = t + 0.5 * dt;
    const CMatrix h = assemble_hmid(ops, traj.width(tm), traj.width_rate(tm), traj.center_rate(tm));
    const cplx lam = I1 * dt / (2.0 * ops.config.hbar);

    // rhs = (I - lam H) c ; solve (I + lam H) c_new = rhs
    std::vector<cplx> rhs = h.matvec(state.coeffs);
    for (int i = 0; i < m; ++i) rhs[i] = state.coeffs[i] - lam * rhs[i];
    CMatrix a = h;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) a(i, j) = (i == j ? 1.0 : 0.0) + lam * a(i, j);
    double rcond = 0.0;
    try {
        rcond = lu_solve(std::move(a), rhs);
    } catch (const std::runtime_error& e) {
        std::ostringstream os;
        os << "step_crank_nicolson: linear solve failed at t = " << t << " (" << e.what() << ")";
        throw std::runtime_error(os.str());
    }
    if (rcond < 1e-14) {
        std::ostringstream os;
        os << "step_crank_nicolson: near-singular Cayley system at t = " << t
           << " (pivot ratio " << rcond << ")";
        throw std::runtime_error(os.str());
    }
    SpectralState out;
    out.basis_tag = state.basis_tag;
    out.coeffs = std::move(rhs);
    return out;
}

double kinetic_energy(const GalerkinOperators& ops, const SpectralState& state, double l) {
    const double pref = (ops.config.l0 / l) * (ops.config.l0 / l);
    double e = 0.0;
    for (int i = 0; i < ops.n_modes; ++i) e += ops.kin_diag[i] * std::norm(state.coeffs[i]);
    return pref * e;
}

std::pair<cplx, cplx> wall_derivatives(const GalerkinOperators& ops, const SpectralState& state) {
    const double l0 = ops.config.l0;
    const double amp = std::sqrt(2.0 / l0) * kPi / l0;
    cplx dm = 0.0, dp = 0.0;
    for (int n = 1; n <= ops.n_modes; ++n) {
        const cplx c = state.coeffs[n - 1];
        const double base = amp * n;
        dm += c * base;                               // e_n'(-l0/2) = sqrt(2/l0) n pi / l0
        dp += c * base * ((n % 2 == 0) ? 1.0 : -1.0); // e_n'(+l0/2) carries (-1)^n
    }
    return {dm, dp};
}

std::pair<double, double> energy_rate_check(const GalerkinOperators& ops,
                                            const WallTrajectory& traj,
                                            const SpectralState& state, double t,
                                            double fd_delta) {
    auto propagated_energy = [&](double dt) {
        const SpectralState s = step_crank_nicolson(ops, traj, state, t, dt);
        return kinetic_energy(ops, s, traj.width(t + dt));
    };
    const double d1 = (propagated_energy(fd_delta) - propagated_energy(-fd_delta)) / (2.0 * fd_delta);
    const double d2 = (propagated_energy(0.5 * fd_delta) - propagated_energy(-0.5 * fd_delta)) / fd_delta;
    const double lhs = (4.0 * d2 - d1) / 3.0;

    const double l = traj.width(t);
    const double ld = traj.width_rate(t);
    const double dd = traj.center_rate(t);
    const double l0 = ops.config.l0;
    const auto [dm, dp] = wall_derivatives(ops, state);
    const double pref = -ops.config.kinetic_scale() * (l0 / l) * (l0 / l) * (l0 / l);
    const double rhs = pref * ((0.5 * ld + dd) * std::norm(dp) - (-0.5 * ld + dd) * std::norm(dm));
    return {lhs, rhs};
}

GridState frame_map_apply(const FrameMap& map, const GridState& state) {
    state.validate();
    const double l0 = map.config.l0;
    if (!(map.l > 0.0)) throw std::invalid_argument("frame_map_apply: l must be positive");
    const Interval moving{map.d - 0.5 * map.l, map.d + 0.5 * map.l};
    const Interval reference{-0.5 * l0, 0.5 * l0};
    const Interval& src = map.forward ? moving : reference;
    const Interval& dst = map.forward ? reference : moving;
    if (!state.interval.same_as(src, 1e-9))
        throw std::invalid_argument("frame_map_apply: state is not supported on the source interval");

    const int n = state.n();
    const double hs = state.step();
    auto interp = [&](double x) -> cplx {
        double u = (x - src.a) / hs;
        int i = int(std::floor(u));
        i = std::clamp(i, 0, n - 2);
        const double f = std::clamp(u - i, 0.0, 1.0);
        return state.samples[i] * (1.0 - f) + state.samples[i + 1] * f;
    };

    const double scale = map.forward ? std::sqrt(map.l / l0) : std::sqrt(l0 / map.l);
    GridState out;
    out.interval = dst;
    out.samples.resize(n);
    const double hd = dst.width() / (n - 1);
    for (int j = 0; j < n; ++j) {
        const double xi = (j == n - 1) ? dst.b : dst.a + hd * j;
        const double x = map.forward ? (map.l / l0) * xi + map.d : (l0 / map.l) * (xi - map.d);
        out.samples[j] = scale * interp(x);
    }
    return out;
}

GridState gauge_transform(const GridState& state, double t, double g, const PhysicalConfig& cfg,
                          bool forward) {
    state.validate();
    GridState out = state;
    const double sign = forward ? 1.0 : -1.0;
    const double cubic = cfg.mass * g * g * t * t * t / 6.0;
    for (int j = 0; j < out.n(); ++j) {
        const double xi = out.x_at(j);
        const double phase = sign / cfg.hbar * (cfg.mass * g * xi * t - cubic);
        out.samples[j] *= std::polar(1.0, phase);
    }
    return out;
}

}  // namespace qwalls
