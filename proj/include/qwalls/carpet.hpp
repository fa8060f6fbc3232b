// Exact free evolution of the flat box state as a truncated theta series
//   theta(xi,tau) = sum_n d_n exp(i 2 pi xi (n+1/2) - i pi tau (n+1/2)^2),
//   d_n = (-1)^n / (pi sqrt(l) (n+1/2)),   xi in [-1/2,1/2].
// Quadratic phases are reduced mod 2 in double-double arithmetic so the
// tau -> tau+1 quasi-periodicity holds to the last bit per term. Includes
// revival fidelity, intensity profiles, a rational-time plateau statistic and
// a box-counting dimension estimator for the profile graph.
#pragma once

#include <utility>
#include <vector>

#include "qwalls/model.hpp"

namespace qwalls {

struct CarpetSeries {
    int n_max = 2048;  // terms n = -n_max .. n_max-1
    double l = 1.0;    // box width

    static CarpetSeries make(int n_max, double l = 1.0);

    double coeff(int n) const;       // d_n
    double tail_bound() const;       // rigorous bound on sum_{|n|>=n_max} |d_n|^2
    double coeff_norm2() const;      // sum over stored n of d_n^2
};

// c_n = (sqrt(2)/(n pi)) (1-(-1)^n): expansion of the flat state over the
// Dirichlet sine basis
double expansion_coefficient_c(int n);

cplx theta(const CarpetSeries& s, double xi, double tau);

// |<theta(.,0)|theta(.,tau)>| / ||theta(.,0)||^2 in coefficient space
double revival_fidelity(const CarpetSeries& s, double tau);

// |theta|^2 sampled on n_points uniform xi in [-1/2,1/2] (endpoints included);
// evaluation is chunked across threads (QWALLS_THREADS caps the pool) with a
// fixed chunk layout, so results do not depend on the thread count
GridState profile(const CarpetSeries& s, double tau, int n_points);

struct BoxCountResult {
    double dimension = 1.0;
    bool flat = false;
    // (log 1/eps, log N(eps)) pairs used in the fit
    std::vector<std::pair<double, double>> points;
};

// least-squares slope of log N(eps) vs log(1/eps) for the graph of the
// profile rescaled to the unit square; scales are eps = 2^-s for s in
// [min_scale, max_scale]. Requires sample count - 1 divisible by 2^max_scale
// and a span of at least 4 octaves.
BoxCountResult box_counting_dimension(const GridState& prof, int min_scale, int max_scale);

struct PlateauStats {
    double within = 0.0;   // mean within-window variance
    double between = 0.0;  // variance of window means
    double ratio = 0.0;    // between / within
};

// windowed variance statistic at rational time tau = p/q with 4q windows of
// width 1/(4q) anchored at xi = -1/2
PlateauStats plateau_stats(const CarpetSeries& s, int p, int q, int n_points);

}  // namespace qwalls
