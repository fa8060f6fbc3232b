#include "qwalls/forms.hpp"

#include <cmath>
#include <stdexcept>

namespace qwalls {

namespace {

// (I-U)(I+U)^{-1}, symmetrized to exact anti-Hermiticity
Mat2 cayley_generator(const Mat2& u) {
    const Mat2 a = (Mat2::identity() - u) * (Mat2::identity() + u).inverse();
    const Mat2 ah = a.adjoint();
    return (a - ah) * 0.5;
}

}  // namespace

FormDescriptor form_descriptor(const BoundaryUnitary& u, double l0, double tol) {
    if (!(l0 > 0.0)) throw std::invalid_argument("form_descriptor: l0 must be positive");
    FormDescriptor d;
    d.l0 = l0;
    const MinusOneStructure s = classify_minus_one(u, tol);
    d.constraint_dim = s.count;
    switch (s.count) {
        case 0:
            d.gen2 = cayley_generator(u.u);
            break;
        case 1: {
            d.constraints = {*s.xi};
            d.xi_perp = *s.xi_perp;
            const cplx u2 = *s.u2;
            d.gen1 = (1.0 - u2) / (1.0 + u2);
            // anti-Hermitian scalar = purely imaginary
            d.gen1 = cplx(0.0, d.gen1.imag());
            break;
        }
        case 2:
            d.constraints = {{1.0, 0.0}, {0.0, 1.0}};
            break;
    }
    return d;
}

double gamma_value(const FormDescriptor& d, const Vec2& psi, double tol) {
    for (const Vec2& c : d.constraints)
        if (std::abs(dot(c, psi)) > tol * (1.0 + psi.norm()))
            throw std::domain_error("gamma_value: Psi violates a boundary constraint of the form domain");
    switch (d.constraint_dim) {
        case 0: return std::real(I1 / d.l0 * dot(psi, d.gen2 * psi));
        case 1: {
            const cplx amp = dot(d.xi_perp, psi);
            return std::real(I1 / d.l0 * d.gen1 * std::norm(amp));
        }
        default: return 0.0;
    }
}

BoundaryUnitary star(const BoundaryUnitary& u, const BoundaryUnitary& v, double l0, double tol) {
    const FormDescriptor du = form_descriptor(u, l0, tol);
    const FormDescriptor dv = form_descriptor(v, l0, tol);

    if (du.constraint_dim == 2 || dv.constraint_dim == 2) return make_dirichlet();

    // span of the combined constraint sets
    std::vector<Vec2> constraints;
    for (const auto* d : {&du, &dv})
        for (const Vec2& c : d->constraints) {
            Vec2 r = c;
            for (const Vec2& q : constraints) r = r - q * dot(q, r);
            if (r.norm() > 1e-6) constraints.push_back(normalized(r));
        }

    if (constraints.size() >= 2) return make_dirichlet();

    if (constraints.size() == 1) {
        const Vec2 s = constraints[0];
        const Vec2 sp = perp(s);
        auto compressed = [&](const FormDescriptor& d) -> cplx {
            if (d.constraint_dim == 1) return d.gen1;  // phase of xi_perp drops out
            return dot(sp, d.gen2 * sp);
        };
        const cplx m_raw = 0.5 * (compressed(du) + compressed(dv));
        const cplx m = cplx(0.0, m_raw.imag());
        const cplx w2 = (1.0 - m) / (1.0 + m);
        const Mat2 w = Mat2::outer(s, s, -1.0) + Mat2::outer(sp, sp, w2);
        BoundaryUnitary out = BoundaryUnitary::from_matrix(w, 1e-8);
        return out;
    }

    // no constraints: Cayley-mean of the full generators
    Mat2 m = (du.gen2 + dv.gen2) * 0.5;
    m = (m - m.adjoint()) * 0.5;
    const Mat2 w = (Mat2::identity() - m) * (Mat2::identity() + m).inverse();
    return BoundaryUnitary::from_matrix(w, 1e-8);
}

}  // namespace qwalls
