#include "qwalls/model.hpp"

#include <cmath>
#include <stdexcept>

namespace qwalls {

void PhysicalConfig::validate() const {
    if (!(hbar > 0.0) || !std::isfinite(hbar)) throw std::invalid_argument("PhysicalConfig: hbar must be positive and finite");
    if (!(mass > 0.0) || !std::isfinite(mass)) throw std::invalid_argument("PhysicalConfig: mass must be positive and finite");
    if (!(l0 > 0.0) || !std::isfinite(l0)) throw std::invalid_argument("PhysicalConfig: l0 must be positive and finite");
}

bool Interval::same_as(const Interval& o, double tol) const {
    return std::abs(a - o.a) <= tol * (1.0 + std::abs(a)) && std::abs(b - o.b) <= tol * (1.0 + std::abs(b));
}

void Interval::validate() const {
    if (!std::isfinite(a) || !std::isfinite(b) || !(b > a))
        throw std::invalid_argument("Interval: requires finite endpoints with b > a");
}

void GridState::validate() const {
    interval.validate();
    if (n() < 3) throw std::invalid_argument("GridState: need at least 3 samples");
    for (const cplx& z : samples)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::domain_error("GridState: non-finite sample");
}

GridState sample_function(const Interval& iv, int n, const std::function<cplx(double)>& rule) {
    iv.validate();
    if (n < 3) throw std::invalid_argument("sample_function: need n >= 3");
    GridState st;
    st.interval = iv;
    st.samples.resize(n);
    const double h = iv.width() / (n - 1);
    for (int i = 0; i < n; ++i) {
        // hit the right endpoint exactly
        const double x = (i == n - 1) ? iv.b : iv.a + h * i;
        const cplx v = rule(x);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::domain_error("sample_function: rule produced a non-finite value");
        st.samples[i] = v;
    }
    return st;
}

cplx trapezoid_inner_product(const GridState& f, const GridState& g) {
    if (f.n() != g.n() || !f.interval.same_as(g.interval))
        throw std::invalid_argument("trapezoid_inner_product: mismatched grids");
    const int n = f.n();
    cplx s = 0.5 * (std::conj(f.samples[0]) * g.samples[0] + std::conj(f.samples[n - 1]) * g.samples[n - 1]);
    for (int i = 1; i < n - 1; ++i) s += std::conj(f.samples[i]) * g.samples[i];
    return s * f.step();
}

double trapezoid_norm(const GridState& f) {
    return std::sqrt(std::real(trapezoid_inner_product(f, f)));
}

}  // namespace qwalls
