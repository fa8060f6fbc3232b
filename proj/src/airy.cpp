#include "qwalls/airy.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qwalls {

namespace {

constexpr double kC1 = 0.35502805388781723926;  // Ai(0) = 3^{-2/3}/Gamma(2/3)
constexpr double kC2 = 0.25881940379280679841;  // -Ai'(0) = 3^{-1/3}/Gamma(1/3)
constexpr double kSeriesCut = 8.0;

// f = sum 3^k (1/3)_k z^{3k}/(3k)!,  g = sum 3^k (2/3)_k z^{3k+1}/(3k+1)!
void airy_fg(double z, double& f, double& g) {
    const double z3 = z * z * z;
    double tf = 1.0, tg = z;
    f = tf;
    g = tg;
    for (int k = 0; k < 96; ++k) {
        tf *= z3 / ((3 * k + 2) * (3 * k + 3));
        tg *= z3 / ((3 * k + 3) * (3 * k + 4));
        f += tf;
        g += tg;
        if (std::abs(tf) < 1e-20 * std::abs(f) && std::abs(tg) < 1e-20 * (std::abs(g) + 1e-300)) break;
    }
}

// u_k coefficients of the large-argument expansions
double u_coeff(int k, double prev) {
    return prev * double(6 * k - 5) * double(6 * k - 3) * double(6 * k - 1) /
           (216.0 * double(k) * double(2 * k - 1));
}

// oscillatory regime z <= -cut, zeta = (2/3)|z|^{3/2}:
//   P = 1 - u_2/zeta^2 + u_4/zeta^4 - ...,  Q = u_1/zeta - u_3/zeta^3 + ...
void airy_pq(double zeta, double& p, double& q) {
    p = 1.0;
    q = 0.0;
    double u_prev = 1.0, zpow = 1.0, best = 1e300;
    for (int k = 1; k <= 40; ++k) {
        u_prev = u_coeff(k, u_prev);
        zpow *= zeta;
        const double term = u_prev / zpow;
        if (std::abs(term) > best) break;  // asymptotic tail started growing
        best = std::abs(term);
        const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
        if (k % 2 == 1) q += sign * term;
        else p += sign * term;
    }
}

// monotone regime z >= cut: S_minus for Ai, S_plus for Bi
void airy_s(double zeta, double& s_minus, double& s_plus) {
    s_minus = 1.0;
    s_plus = 1.0;
    double u_prev = 1.0, zpow = 1.0, best = 1e300;
    for (int k = 1; k <= 40; ++k) {
        u_prev = u_coeff(k, u_prev);
        zpow *= zeta;
        const double term = u_prev / zpow;
        if (std::abs(term) > best) break;
        best = std::abs(term);
        s_minus += (k % 2 ? -term : term);
        s_plus += term;
    }
}

}  // namespace

double airy_ai(double z) {
    if (!std::isfinite(z)) throw std::domain_error("airy_ai: non-finite argument");
    if (std::abs(z) <= kSeriesCut) {
        double f, g;
        airy_fg(z, f, g);
        return kC1 * f - kC2 * g;
    }
    const double x = std::abs(z);
    const double zeta = (2.0 / 3.0) * x * std::sqrt(x);
    const double front = 1.0 / (std::sqrt(std::numbers::pi) * std::pow(x, 0.25));
    if (z < 0.0) {
        double p, q;
        airy_pq(zeta, p, q);
        return front * (std::sin(zeta + std::numbers::pi / 4) * p - std::cos(zeta + std::numbers::pi / 4) * q);
    }
    double sm, sp;
    airy_s(zeta, sm, sp);
    return 0.5 * front * std::exp(-zeta) * sm;
}

double airy_bi(double z) {
    if (!std::isfinite(z)) throw std::domain_error("airy_bi: non-finite argument");
    if (std::abs(z) <= kSeriesCut) {
        double f, g;
        airy_fg(z, f, g);
        return std::sqrt(3.0) * (kC1 * f + kC2 * g);
    }
    const double x = std::abs(z);
    const double zeta = (2.0 / 3.0) * x * std::sqrt(x);
    const double front = 1.0 / (std::sqrt(std::numbers::pi) * std::pow(x, 0.25));
    if (z < 0.0) {
        double p, q;
        airy_pq(zeta, p, q);
        return front * (std::cos(zeta + std::numbers::pi / 4) * p + std::sin(zeta + std::numbers::pi / 4) * q);
    }
    double sm, sp;
    airy_s(zeta, sm, sp);
    return front * std::exp(zeta) * sp;
}

}  // namespace qwalls
