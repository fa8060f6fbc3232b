#include "qwalls/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "qwalls/airy.hpp"
#include "qwalls/io.hpp"

namespace qwalls {

namespace {
constexpr double kPi = std::numbers::pi;

double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    const size_t m = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + m, v.end());
    return v[m];
}

struct GoldenResult {
    double x, fx;
};

// golden-section minimization of f on [lo, hi] to absolute x-tolerance
template <class F>
GoldenResult golden_min(F&& f, double lo, double hi, double xtol) {
    const double inv_phi = 0.6180339887498949;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    while (hi - lo > xtol) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    const double xm = 0.5 * (lo + hi);
    return {xm, f(xm)};
}

// Muller iteration on a complex-valued function of a real variable; the
// quadratic fit lands on simple and double real roots alike. Returns the
// refined abscissa; iterates are clamped into [lo, hi].
template <class F>
double muller_polish(F&& f, double x0, double lo, double hi) {
    double h = std::max(1e-7 * (std::abs(x0) + 1.0), 0.25e-9);
    double xa = std::max(lo, x0 - h), xb = x0, xc = std::min(hi, x0 + h);
    cplx fa = f(xa), fb = f(xb), fc = f(xc);
    double x_best = xb;
    double f_best = std::abs(fb);
    for (int it = 0; it < 60; ++it) {
        if (xc == xb) break;
        const cplx d1 = (fc - fb) / (xc - xb);
        const cplx d2 = (xb - xa) != 0.0 ? (fb - fa) / (xb - xa) : d1;
        const cplx a2 = (xc - xa) != 0.0 ? (d1 - d2) / (xc - xa) : cplx(0.0);
        const cplx b1 = d1 + (xc - xb) * a2;
        const cplx disc = std::sqrt(b1 * b1 - 4.0 * fc * a2);
        const cplx den1 = b1 + disc, den2 = b1 - disc;
        const cplx den = std::abs(den1) > std::abs(den2) ? den1 : den2;
        if (std::abs(den) == 0.0) break;
        double x_new = xc - std::real(2.0 * fc / den);
        if (!std::isfinite(x_new)) break;
        x_new = std::clamp(x_new, lo, hi);
        const cplx f_new = f(x_new);
        xa = xb; fa = fb;
        xb = xc; fb = fc;
        xc = x_new; fc = f_new;
        if (std::abs(f_new) < f_best) {
            f_best = std::abs(f_new);
            x_best = x_new;
        }
        if (std::abs(x_new - xb) < 1e-14 * (1.0 + std::abs(x_new))) break;
    }
    return x_best;
}

}  // namespace

const char* branch_name(Branch b) {
    switch (b) {
        case Branch::oscillatory: return "oscillatory";
        case Branch::linear: return "linear";
        case Branch::evanescent: return "evanescent";
    }
    return "?";
}

std::pair<WaveFun, WaveFun> branch_basis(const Interval& iv, Branch branch, double k) {
    WaveFun b1, b2;
    b1.iv = iv;
    b2.iv = iv;
    switch (branch) {
        case Branch::oscillatory:
            b1.terms = {{1.0, 0, cplx(0.0, k), iv.a}};
            b2.terms = {{1.0, 0, cplx(0.0, -k), iv.a}};
            break;
        case Branch::linear:
            b1.terms = {{1.0, 0, 0.0, iv.a}};
            b2.terms = {{1.0, 1, 0.0, iv.a}, {-iv.mid(), 0, 0.0, iv.a}};
            break;
        case Branch::evanescent:
            b1.terms = {{1.0, 0, cplx(k, 0.0), iv.b}};
            b2.terms = {{1.0, 0, cplx(-k, 0.0), iv.a}};
            break;
    }
    return {b1, b2};
}

namespace {

Vec2 bc_apply(const BoundaryUnitary& u, const Interval& iv, const PhysicalConfig& cfg,
              const WaveFun& f) {
    const WaveFun df = f.derivative();
    const BoundaryTrace t = BoundaryTrace::from_raw(f.eval(iv.a), f.eval(iv.b),
                                                    df.eval(iv.a), df.eval(iv.b), cfg.l0);
    const Mat2 ip = Mat2::identity() + u.u;
    const Mat2 im = Mat2::identity() - u.u;
    return (ip * t.dpsi) * I1 - im * t.psi;
}

}  // namespace

Mat2 bc_system_matrix(const BoundaryUnitary& u, const Interval& iv, const PhysicalConfig& cfg,
                      Branch branch, double k) {
    if (branch != Branch::linear && !(k > 0.0))
        throw std::invalid_argument("bc_system_matrix: k must be positive on this branch");
    const auto [b1, b2] = branch_basis(iv, branch, k);
    const Vec2 c1 = bc_apply(u, iv, cfg, b1);
    const Vec2 c2 = bc_apply(u, iv, cfg, b2);
    return {c1.x, c2.x, c1.y, c2.y};
}

cplx dispersion_determinant(const BoundaryUnitary& u, const Interval& iv,
                            const PhysicalConfig& cfg, Branch branch, double k) {
    return bc_system_matrix(u, iv, cfg, branch, k).det();
}

namespace {

double energy_of(Branch branch, double k, double kinetic_scale) {
    switch (branch) {
        case Branch::oscillatory: return kinetic_scale * k * k;
        case Branch::linear: return 0.0;
        case Branch::evanescent: return -kinetic_scale * k * k;
    }
    return 0.0;
}

// locate minima of |det| on a grid and refine them; returns accepted roots.
// A grid dip that already sits below the acceptance level but cannot be held
// there by the refinement is a genuine non-convergence and throws.
std::vector<double> find_roots(const BoundaryUnitary& u, const Interval& iv,
                               const PhysicalConfig& cfg, Branch branch,
                               const std::vector<double>& grid, const SpectrumOptions& opts) {
    auto det = [&](double k) { return dispersion_determinant(u, iv, cfg, branch, k); };
    const int n = int(grid.size());
    std::vector<double> mag(n);
    for (int i = 0; i < n; ++i) mag[i] = std::abs(det(grid[i]));
    const double scale = std::max(median(mag), 1e-280);
    const double accept = opts.det_zero_rel * scale;
    // refinements pinned to the scan edge belong to the k -> 0 degeneracy
    const double k_reject = grid.front() + 0.05 * (grid[1] - grid[0]);

    struct Bracket {
        double lo, hi, grid_min;
    };
    std::vector<Bracket> brackets;
    for (int i = 0; i < n; ++i) {
        const bool left_ok = (i == 0) ? mag[i] < mag[i + 1] : mag[i] <= mag[i - 1];
        const bool right_ok = (i == n - 1) ? mag[i] < mag[i - 1] : mag[i] <= mag[i + 1];
        if (left_ok && right_ok && (i == 0 || i == n - 1 || mag[i] < scale))
            brackets.push_back({grid[std::max(0, i - 1)], grid[std::min(n - 1, i + 1)], mag[i]});
    }

    std::vector<double> roots;
    auto push_root = [&](double r) {
        if (r <= k_reject) return false;
        for (double r0 : roots)
            if (std::abs(r - r0) < 1e-9 * (1.0 + std::abs(r))) return false;
        if (std::abs(det(r)) > accept) return false;
        roots.push_back(r);
        return true;
    };

    for (const Bracket& b : brackets) {
        auto fmag2 = [&](double k) { return std::norm(det(k)); };
        const GoldenResult g = golden_min(fmag2, b.lo, b.hi, 1e-6 * (1.0 + std::abs(b.hi)));
        double r = muller_polish(det, g.x, b.lo, b.hi);
        if (std::abs(det(r)) > std::min(std::sqrt(g.fx), accept)) {
            // fall back to a deep golden search when Muller stalls
            const GoldenResult g2 = golden_min(fmag2, std::max(b.lo, g.x - 1e-5),
                                               std::min(b.hi, g.x + 1e-5),
                                               1e-13 * (1.0 + std::abs(b.hi)));
            if (g2.fx < std::norm(det(r))) r = g2.x;
        }
        const bool accepted = push_root(r);
        if (!accepted && b.grid_min <= accept && r > k_reject && std::abs(det(r)) > b.grid_min) {
            std::ostringstream os;
            os << "find_roots: refinement did not converge on the bracket [" << b.lo << ", "
               << b.hi << "] (" << branch_name(branch) << " branch, grid |det| " << b.grid_min
               << ", refined |det| " << std::abs(det(r)) << ")";
            throw std::runtime_error(os.str());
        }
        // deflated search catches a near-degenerate twin inside the bracket
        auto deflated = [&](double k) {
            const double d = k - r;
            return det(k) / (std::abs(d) > 1e-300 ? d : 1e-300);
        };
        const double r2 = muller_polish(deflated, r + 1e-7 * (1.0 + std::abs(r)), b.lo, b.hi);
        if (std::abs(r2 - r) > 1e-10 * (1.0 + std::abs(r))) push_root(r2);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace

DispersionScan scan_dispersion(const BoundaryUnitary& u, const Interval& iv,
                               const PhysicalConfig& cfg, double k_min, double k_max,
                               double step) {
    DispersionScan s;
    for (double k = k_min; k <= k_max; k += step) {
        s.k_grid.push_back(k);
        s.det_values.push_back(dispersion_determinant(u, iv, cfg, Branch::oscillatory, k));
    }
    if (s.k_grid.size() >= 2)
        s.roots = find_roots(u, iv, cfg, Branch::oscillatory, s.k_grid, SpectrumOptions{});
    return s;
}

cplx mode_overlap(const WaveFun& f, const EigenMode& mode) { return wave_overlap(f, mode.fun); }

std::vector<EigenMode> solve_spectrum(const BoundaryUnitary& u, const Interval& iv,
                                      const PhysicalConfig& cfg, double e_max,
                                      const SpectrumOptions& opts) {
    iv.validate();
    cfg.validate();
    if (!(e_max > 0.0)) throw std::invalid_argument("solve_spectrum: e_max must be positive");
    const double l = iv.width();
    const double kin = cfg.kinetic_scale();

    std::vector<EigenMode> modes;

    auto add_modes_at = [&](Branch branch, double k) {
        const Mat2 m = bc_system_matrix(u, iv, cfg, branch, k);
        const Svd2 sv = svd2(m);
        std::vector<Vec2> null_vecs{sv.v_min};
        if (sv.s_max <= opts.second_sv_rel * std::max(1.0, m.max_abs()))
            null_vecs.push_back(sv.v_second);
        const auto [b1, b2] = branch_basis(iv, branch, k);
        for (const Vec2& v : null_vecs) {
            WaveFun f;
            f.iv = iv;
            f.terms = b1.scaled(v.x).terms;
            for (const WaveTerm& t : b2.scaled(v.y).terms) f.terms.push_back(t);
            // orthogonalize against previously accepted modes (degenerate pairs)
            cplx cc1 = v.x, cc2 = v.y;
            for (const EigenMode& m0 : modes) {
                if (m0.branch != branch) continue;
                if (std::abs(m0.energy - energy_of(branch, k, kin)) > 1e-6 * (1.0 + std::abs(m0.energy)))
                    continue;
                const cplx ov = wave_overlap(m0.fun, f);
                if (std::abs(ov) == 0.0) continue;
                f.terms.clear();
                cc1 -= ov * m0.c1;
                cc2 -= ov * m0.c2;
                f.terms = b1.scaled(cc1).terms;
                for (const WaveTerm& t : b2.scaled(cc2).terms) f.terms.push_back(t);
            }
            const double nrm = wave_norm(f);
            if (nrm < 1e-6) continue;  // degenerate direction already captured
            f = f.scaled(1.0 / nrm);
            cc1 /= nrm;
            cc2 /= nrm;
            // the boundary condition is the acceptance filter for the root
            const WaveFun df = f.derivative();
            const BoundaryTrace tr = BoundaryTrace::from_raw(f.eval(iv.a), f.eval(iv.b),
                                                             df.eval(iv.a), df.eval(iv.b), cfg.l0);
            if (!satisfies_bc(u, tr, opts.bc_check_tol)) continue;
            // reject duplicates of already accepted modes
            bool dup = false;
            for (const EigenMode& m0 : modes)
                if (std::abs(wave_overlap(m0.fun, f)) > 0.999) { dup = true; break; }
            if (dup) continue;
            EigenMode em;
            em.branch = branch;
            em.k_or_kappa = (branch == Branch::linear) ? 0.0 : k;
            em.energy = energy_of(branch, k, kin);
            em.c1 = cc1;
            em.c2 = cc2;
            em.fun = f;
            em.norm = wave_norm(f);
            modes.push_back(std::move(em));
        }
    };

    // ---- evanescent branch: at most two isolated dips
    {
        double cayley_scale = 0.0;
        const Eig2 eg = eig_normal(u.u);
        for (const cplx& ev : eg.values) {
            if (std::abs(ev + 1.0) > 1e-9) {
                const cplx a = (1.0 - ev) / (1.0 + ev);
                cayley_scale = std::max(cayley_scale, std::abs(a));
            }
        }
        const double kap_max = std::max(opts.kappa_max_floor / l, 4.0 * cayley_scale / cfg.l0);
        const int npts = 1200;
        std::vector<double> grid(npts);
        const double kap_lo = opts.k_floor_rel / l;
        for (int i = 0; i < npts; ++i)
            grid[i] = kap_lo + (kap_max - kap_lo) * double(i) / (npts - 1);
        for (double r : find_roots(u, iv, cfg, Branch::evanescent, grid, opts))
            add_modes_at(Branch::evanescent, r);
    }

    // ---- zero-energy branch: affine ansatz, explicit singular-value test
    {
        const Mat2 m = bc_system_matrix(u, iv, cfg, Branch::linear, 0.0);
        const Svd2 sv = svd2(m);
        const double scale = std::max(1.0, m.max_abs());
        if (sv.s_min <= 1e-9 * scale) add_modes_at(Branch::linear, 0.0);
    }

    // ---- oscillatory branch
    {
        const double k_max = std::sqrt(e_max / kin);
        const double step = opts.grid_step_factor * kPi / l;
        std::vector<double> grid;
        const double k_lo = opts.k_floor_rel / l;
        // log-spaced prefix resolves slow dips near k = 0
        for (double k = k_lo; k < step; k *= 10.0) grid.push_back(k);
        for (double k = step; k <= k_max + 0.5 * step; k += step) grid.push_back(std::min(k, k_max));
        if (grid.size() >= 2)
            for (double r : find_roots(u, iv, cfg, Branch::oscillatory, grid, opts))
                if (energy_of(Branch::oscillatory, r, kin) <= e_max)
                    add_modes_at(Branch::oscillatory, r);
    }

    std::sort(modes.begin(), modes.end(),
              [](const EigenMode& x, const EigenMode& y) { return x.energy < y.energy; });
    if (int(modes.size()) > opts.max_modes) modes.resize(opts.max_modes);
    return modes;
}

void write_spectrum_csv(std::ostream& os, const std::vector<EigenMode>& modes) {
    os << "index,branch,k_or_kappa,energy,re_c1,im_c1,re_c2,im_c2\n";
    int i = 0;
    for (const EigenMode& m : modes) {
        os << i++ << ',' << branch_name(m.branch) << ',' << fmt_double(m.k_or_kappa) << ','
           << fmt_double(m.energy) << ',' << fmt_double(m.c1.real()) << ',' << fmt_double(m.c1.imag())
           << ',' << fmt_double(m.c2.real()) << ',' << fmt_double(m.c2.imag()) << '\n';
    }
}

double airy_quantization(double eps) {
    return airy_ai(-0.5 - eps) * airy_bi(0.5 - eps) - airy_ai(0.5 - eps) * airy_bi(-0.5 - eps);
}

std::vector<double> solve_airy_levels(int n_levels) {
    if (n_levels < 1) throw std::invalid_argument("solve_airy_levels: n_levels >= 1");
    std::vector<double> roots;
    const double eps_cap = 12.0 * double(n_levels + 2) * double(n_levels + 2);
    double prev = 0.0, fprev = airy_quantization(prev);
    const double step = 0.25;
    for (double eps = step; eps <= eps_cap && int(roots.size()) < n_levels; eps += step) {
        const double f = airy_quantization(eps);
        if (fprev == 0.0) roots.push_back(prev);
        else if (f * fprev < 0.0) {
            double lo = prev, hi = eps, flo = fprev;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = airy_quantization(mid);
                if (fm == 0.0) { lo = hi = mid; break; }
                if (fm * flo < 0.0) hi = mid;
                else { lo = mid; flo = fm; }
                if (hi - lo < 1e-12 * (1.0 + hi)) break;
            }
            roots.push_back(0.5 * (lo + hi));
        }
        prev = eps;
        fprev = f;
    }
    if (int(roots.size()) < n_levels) {
        std::ostringstream os;
        os << "solve_airy_levels: found only " << roots.size() << " roots scanning eps in [0, "
           << eps_cap << "]";
        throw std::runtime_error(os.str());
    }
    return roots;
}

}  // namespace qwalls
