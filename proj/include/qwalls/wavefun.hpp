// Exact integrals for functions assembled from terms  coeff * x^p * e^{nu (x - ref)}
// with p in {0,1}. Plane waves, evanescent pairs, affine functions and the
// Dirichlet sine basis all live in this algebra, so mode overlaps and norms
// come out in closed form. Reference points keep evanescent terms bounded on
// the interval (|e^{nu(x-ref)}| <= 1 when ref sits at the growing end).
#pragma once

#include <vector>

#include "qwalls/model.hpp"

namespace qwalls {

struct WaveTerm {
    cplx coeff;
    int p = 0;      // polynomial power of x (0 or 1)
    cplx nu = 0.0;  // exponent rate
    double ref = 0.0;
};

struct WaveFun {
    Interval iv;
    std::vector<WaveTerm> terms;

    cplx eval(double x) const;
    WaveFun derivative() const;
    WaveFun scaled(cplx s) const;
    GridState to_grid(int n) const;
};

// int_a^b conj(f) g dx in closed form; f and g must share the interval
cplx wave_overlap(const WaveFun& f, const WaveFun& g);

double wave_norm(const WaveFun& f);

// int_a^b x^q e^{nu x + beta} dx for q <= 4, evaluated stably (series for
// small |nu (b-a)|); exposed for tests
cplx integrate_poly_exp(int q, cplx nu, cplx beta, double a, double b);

// normalized Dirichlet sine mode sqrt(2/l) sin(n pi (x-a)/l) as a WaveFun
WaveFun sine_basis_fun(const Interval& iv, int n);

}  // namespace qwalls
