#include "qwalls/carpet.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace qwalls {

namespace {
constexpr double kPi = std::numbers::pi;

// tau * m reduced mod 2 with a double-double product, m an exact integer.
// Exactness matters: tau -> tau+1 shifts the product by the even integer m,
// which this reduction removes without rounding, making the quasi-periodicity
// of each term hold bit-for-bit.
double reduce_mod2(double tau, double m) {
    const double hi = tau * m;
    const double lo = std::fma(tau, m, -hi);
    double r = std::fmod(hi, 2.0) + lo;
    while (r < 0.0) r += 2.0;
    while (r >= 2.0) r -= 2.0;
    return r;
}

// e^{-i pi tau (n+1/2)^2} with the global e^{-i pi tau/4} factored out:
// (n+1/2)^2 = n(n+1) + 1/4 and n(n+1) is even
cplx quad_phase(double tau, int n) {
    const double m = double(n) * double(n + 1);
    return std::polar(1.0, -kPi * reduce_mod2(tau, m));
}

int thread_budget() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("QWALLS_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && (unsigned long)cap < hw) hw = unsigned(cap);
    }
    return int(hw);
}

}  // namespace

CarpetSeries CarpetSeries::make(int n_max, double l) {
    if (n_max < 1) throw std::invalid_argument("CarpetSeries: n_max >= 1");
    if (!(l > 0.0)) throw std::invalid_argument("CarpetSeries: l > 0");
    return {n_max, l};
}

double CarpetSeries::coeff(int n) const {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    return sign / (kPi * std::sqrt(l) * (double(n) + 0.5));
}

double CarpetSeries::tail_bound() const {
    // sum_{n >= N} (n+1/2)^-2  <=  (N+1/2)^-2 + (N+1/2)^-1 ; both tails equal
    const double s = double(n_max) + 0.5;
    return 2.0 / (kPi * kPi * l) * (1.0 / (s * s) + 1.0 / s);
}

double CarpetSeries::coeff_norm2() const {
    double s = 0.0;
    for (int n = n_max - 1; n >= 0; --n) {
        const double d = coeff(n);
        const double dm = coeff(-n - 1);
        s += d * d + dm * dm;
    }
    return s;
}

double expansion_coefficient_c(int n) {
    if (n < 1) throw std::invalid_argument("expansion_coefficient_c: n >= 1");
    if (n % 2 == 0) return 0.0;
    return 2.0 * std::sqrt(2.0) / (double(n) * kPi);
}

cplx theta(const CarpetSeries& s, double xi, double tau) {
    if (xi < -0.5 || xi > 0.5) throw std::domain_error("theta: xi outside [-1/2, 1/2]");
    // global factor e^{-i pi tau / 4} * e^{i pi xi}
    const cplx global = std::polar(1.0, -kPi * tau / 4.0) * std::polar(1.0, kPi * xi);
    cplx sum = 0.0, comp = 0.0;  // Kahan accumulation
    for (int n = -s.n_max; n < s.n_max; ++n) {
        const cplx term = s.coeff(n) * quad_phase(tau, n) * std::polar(1.0, 2.0 * kPi * xi * n);
        const cplx y = term - comp;
        const cplx t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return global * sum;
}

double revival_fidelity(const CarpetSeries& s, double tau) {
    cplx acc = 0.0;
    double norm2 = 0.0;
    for (int n = -s.n_max; n < s.n_max; ++n) {
        const double d2 = s.coeff(n) * s.coeff(n);
        acc += d2 * quad_phase(tau, n);
        norm2 += d2;
    }
    // the factored-out e^{-i pi tau/4} has unit modulus
    return std::abs(acc) / norm2;
}

GridState profile(const CarpetSeries& s, double tau, int n_points) {
    if (n_points < 16) throw std::invalid_argument("profile: n_points >= 16");
    const int nterms = 2 * s.n_max;
    // tau-dependent factors are xi-independent; build them once
    std::vector<cplx> coef(nterms);
    for (int n = -s.n_max; n < s.n_max; ++n)
        coef[n + s.n_max] = s.coeff(n) * quad_phase(tau, n);

    GridState prof;
    prof.interval = {-0.5, 0.5};
    prof.samples.resize(n_points);
    const double h = 1.0 / (n_points - 1);

    auto eval_range = [&](int begin, int end) {
        for (int j = begin; j < end; ++j) {
            const double xi = (j == n_points - 1) ? 0.5 : -0.5 + h * j;
            // w_n = e^{i 2 pi xi n} by recurrence over n
            const cplx stepf = std::polar(1.0, 2.0 * kPi * xi);
            cplx w = std::polar(1.0, 2.0 * kPi * xi * double(-s.n_max));
            cplx sum = 0.0, comp = 0.0;
            for (int idx = 0; idx < nterms; ++idx) {
                const cplx term = coef[idx] * w;
                const cplx y = term - comp;
                const cplx t = sum + y;
                comp = (t - sum) - y;
                sum = t;
                w *= stepf;
            }
            prof.samples[j] = std::norm(sum);  // |theta|^2; global phases drop out
        }
    };

    const int nthreads = std::min(thread_budget(), std::max(1, n_points / 1024));
    if (nthreads <= 1) {
        eval_range(0, n_points);
    } else {
        std::vector<std::thread> pool;
        const int chunk = (n_points + nthreads - 1) / nthreads;
        for (int t = 0; t < nthreads; ++t) {
            const int b = t * chunk, e = std::min(n_points, b + chunk);
            if (b < e) pool.emplace_back(eval_range, b, e);
        }
        for (auto& th : pool) th.join();
    }
    return prof;
}

BoxCountResult box_counting_dimension(const GridState& prof, int min_scale, int max_scale) {
    const int n = prof.n();
    if (max_scale - min_scale < 4)
        throw std::invalid_argument("box_counting_dimension: need at least 4 octaves");
    const long cells = 1L << max_scale;
    if ((n - 1) % cells != 0 || (n - 1) < cells)
        throw std::invalid_argument("box_counting_dimension: sample count - 1 must be divisible by 2^max_scale");

    double lo = prof.samples[0].real(), hi = lo;
    for (const cplx& z : prof.samples) {
        lo = std::min(lo, z.real());
        hi = std::max(hi, z.real());
    }
    BoxCountResult out;
    if (hi - lo <= 1e-12 * std::max(1.0, std::abs(hi))) {
        out.flat = true;
        out.dimension = 1.0;
        return out;
    }
    const double span = hi - lo;

    for (int sscale = min_scale; sscale <= max_scale; ++sscale) {
        const long nbox = 1L << sscale;
        const double eps = 1.0 / double(nbox);
        const long per = (n - 1) / nbox;
        long count = 0;
        for (long b = 0; b < nbox; ++b) {
            // shared endpoints keep the polyline graph connected across columns
            double ymin = 1e300, ymax = -1e300;
            for (long j = b * per; j <= (b + 1) * per; ++j) {
                const double y = (prof.samples[j].real() - lo) / span;
                ymin = std::min(ymin, y);
                ymax = std::max(ymax, y);
            }
            long c0 = long(std::floor(ymin / eps));
            long c1 = long(std::floor(ymax / eps));
            c0 = std::clamp(c0, 0L, nbox - 1);
            c1 = std::clamp(c1, 0L, nbox - 1);
            count += c1 - c0 + 1;
        }
        out.points.emplace_back(std::log(1.0 / eps), std::log(double(count)));
    }

    // least-squares slope
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = double(out.points.size());
    for (auto [x, y] : out.points) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    out.dimension = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    return out;
}

PlateauStats plateau_stats(const CarpetSeries& s, int p, int q, int n_points) {
    if (q < 1) throw std::invalid_argument("plateau_stats: q >= 1");
    const int nw = 4 * q;
    if ((n_points - 1) % nw != 0)
        throw std::invalid_argument("plateau_stats: n_points - 1 must be divisible by 4q");
    const GridState prof = profile(s, double(p) / double(q), n_points);
    const int per = (n_points - 1) / nw;  // half-open windows over the first n-1 samples

    PlateauStats st;
    std::vector<double> means(nw);
    double within = 0.0;
    for (int w = 0; w < nw; ++w) {
        double m1 = 0.0, m2 = 0.0;
        for (int j = w * per; j < (w + 1) * per; ++j) {
            const double y = prof.samples[j].real();
            m1 += y;
            m2 += y * y;
        }
        m1 /= per;
        m2 /= per;
        means[w] = m1;
        within += std::max(0.0, m2 - m1 * m1);
    }
    st.within = within / nw;
    double g1 = 0.0, g2 = 0.0;
    for (double m : means) {
        g1 += m;
        g2 += m * m;
    }
    g1 /= nw;
    g2 /= nw;
    st.between = std::max(0.0, g2 - g1 * g1);
    st.ratio = st.between / std::max(st.within, 1e-300);
    return st;
}

}  // namespace qwalls
