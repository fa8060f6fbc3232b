// Shared physical configuration, interval geometry, grid/state containers and
// trapezoid quadrature. Default units: hbar = 1, m = 1/2, so hbar^2/2m = 1 and
// the box levels read E_n = n^2 pi^2 / l^2. All types are immutable values.
#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "qwalls/linalg.hpp"

namespace qwalls {

struct PhysicalConfig {
    double hbar = 1.0;
    double mass = 0.5;
    double l0 = 1.0;  // reference length entering the boundary trace scaling

    void validate() const;
    // hbar^2 / (2 m)
    double kinetic_scale() const { return hbar * hbar / (2.0 * mass); }
};

struct Interval {
    double a = 0.0;
    double b = 1.0;

    double width() const { return b - a; }
    double mid() const { return 0.5 * (a + b); }
    bool same_as(const Interval& o, double tol = 1e-12) const;
    void validate() const;  // throws unless b > a and both finite
};

// complex amplitudes on a uniform grid over [a,b], endpoints included
struct GridState {
    Interval interval;
    std::vector<cplx> samples;

    int n() const { return int(samples.size()); }
    double step() const { return interval.width() / (n() - 1); }
    double x_at(int i) const { return interval.a + step() * i; }
    void validate() const;  // n >= 3, finite samples
};

// coefficients in some orthonormal eigenbasis, identified by a tag
struct SpectralState {
    std::string basis_tag;
    std::vector<cplx> coeffs;

    double norm() const { return norm2(coeffs); }
};

// uniform sample of a rule on [a,b]; throws on non-finite samples
GridState sample_function(const Interval& iv, int n, const std::function<cplx(double)>& rule);

// <f|g>, conjugate-linear in the first slot, by the trapezoid rule;
// throws std::invalid_argument when grids do not match
cplx trapezoid_inner_product(const GridState& f, const GridState& g);

double trapezoid_norm(const GridState& f);

}  // namespace qwalls
