#include "qwalls/wavefun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qwalls {

cplx WaveFun::eval(double x) const {
    cplx s = 0.0;
    for (const WaveTerm& t : terms) {
        cplx v = t.coeff * std::exp(t.nu * (x - t.ref));
        if (t.p == 1) v *= x;
        s += v;
    }
    return s;
}

WaveFun WaveFun::derivative() const {
    WaveFun d;
    d.iv = iv;
    for (const WaveTerm& t : terms) {
        if (t.p == 1) d.terms.push_back({t.coeff, 0, t.nu, t.ref});
        if (t.nu != 0.0) d.terms.push_back({t.coeff * t.nu, t.p, t.nu, t.ref});
    }
    return d;
}

WaveFun WaveFun::scaled(cplx s) const {
    WaveFun out = *this;
    for (WaveTerm& t : out.terms) t.coeff *= s;
    return out;
}

GridState WaveFun::to_grid(int n) const {
    return sample_function(iv, n, [this](double x) { return eval(x); });
}

namespace {

// sum_{i<=q} C(q,i) a^{q-i} L^{i+j+1} / (i+j+1)
double poly_moment(int q, int j, double a, double len) {
    double binom = 1.0;
    double s = 0.0;
    for (int i = 0; i <= q; ++i) {
        double apow = 1.0;
        for (int r = 0; r < q - i; ++r) apow *= a;
        double lpow = 1.0;
        for (int r = 0; r < i + j + 1; ++r) lpow *= len;
        s += binom * apow * lpow / double(i + j + 1);
        binom = binom * double(q - i) / double(i + 1);
    }
    return s;
}

}  // namespace

cplx integrate_poly_exp(int q, cplx nu, cplx beta, double a, double b) {
    if (q < 0 || q > 4) throw std::invalid_argument("integrate_poly_exp: q out of range");
    const double len = b - a;
    if (std::abs(nu) * std::abs(len) < 0.5) {
        // e^{beta + nu a} sum_j nu^j/j! int_0^L (a+t)^q t^j dt
        const cplx front = std::exp(beta + nu * a);
        cplx s = 0.0;
        cplx nupow = 1.0;
        double fact = 1.0;
        for (int j = 0; j <= 26; ++j) {
            const cplx term = nupow / fact * poly_moment(q, j, a, len);
            s += term;
            if (j > 2 && std::abs(term) < 1e-18 * (1.0 + std::abs(s))) break;
            nupow *= nu;
            fact *= double(j + 1);
        }
        return front * s;
    }
    // antiderivative e^{nu x + beta} A_q(x), A_q = x^q/nu - (q/nu) A_{q-1}
    auto aq = [&](double x) {
        cplx acc = 1.0 / nu;
        for (int i = 1; i <= q; ++i) {
            double xpow = 1.0;
            for (int r = 0; r < i; ++r) xpow *= x;
            acc = xpow / nu - (double(i) / nu) * acc;
        }
        return acc;
    };
    return std::exp(nu * b + beta) * aq(b) - std::exp(nu * a + beta) * aq(a);
}

cplx wave_overlap(const WaveFun& f, const WaveFun& g) {
    if (!f.iv.same_as(g.iv)) throw std::invalid_argument("wave_overlap: intervals differ");
    const double a = f.iv.a, b = f.iv.b;
    cplx s = 0.0;
    for (const WaveTerm& tf : f.terms)
        for (const WaveTerm& tg : g.terms) {
            const cplx coeff = std::conj(tf.coeff) * tg.coeff;
            const cplx nu = std::conj(tf.nu) + tg.nu;
            const cplx beta = -std::conj(tf.nu) * tf.ref - tg.nu * tg.ref;
            s += coeff * integrate_poly_exp(tf.p + tg.p, nu, beta, a, b);
        }
    return s;
}

double wave_norm(const WaveFun& f) { return std::sqrt(std::real(wave_overlap(f, f))); }

WaveFun sine_basis_fun(const Interval& iv, int n) {
    if (n < 1) throw std::invalid_argument("sine_basis_fun: n >= 1");
    const double l = iv.width();
    const double k = n * std::numbers::pi / l;
    // sqrt(2/l) sin(k (x-a)) = sqrt(2/l) (e^{ik(x-a)} - e^{-ik(x-a)}) / (2i)
    const cplx amp = std::sqrt(2.0 / l) / (2.0 * I1);
    WaveFun w;
    w.iv = iv;
    w.terms = {{amp, 0, cplx(0.0, k), iv.a}, {-amp, 0, cplx(0.0, -k), iv.a}};
    return w;
}

}  // namespace qwalls
