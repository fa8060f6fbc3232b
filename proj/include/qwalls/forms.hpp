// Kinetic-energy quadratic forms t_U and the composition law W = U * V that
// emerges from rapidly alternating boundary conditions. A boundary unitary
// with no -1 eigenvalue contributes the Cayley generator A = (I-U)(I+U)^{-1}
// (anti-Hermitian) through Gamma_U(Psi) = (i/l0) <Psi|A Psi>; each -1
// eigenvector contributes the constraint <xi|Psi> = 0. Composition averages
// generators on the unconstrained subspace and absorbs every constraint,
// which makes Dirichlet (-I) an attractor.
#pragma once

#include "qwalls/boundary.hpp"

namespace qwalls {

struct FormDescriptor {
    int constraint_dim = 0;            // 0, 1 or 2
    std::vector<Vec2> constraints;     // orthonormal; <xi|Psi> = 0 for each
    Mat2 gen2;                         // full generator (constraint_dim == 0)
    cplx gen1 = 0.0;                   // scalar generator on xi_perp (constraint_dim == 1)
    Vec2 xi_perp;                      // basis of the free direction (constraint_dim == 1)
    double l0 = 1.0;
};

FormDescriptor form_descriptor(const BoundaryUnitary& u, double l0, double tol = 1e-9);

// Gamma_U(Psi); throws std::domain_error if Psi violates a constraint beyond
// tol * (1 + |Psi|)
double gamma_value(const FormDescriptor& d, const Vec2& psi, double tol = 1e-8);

// the composed boundary condition of the alternating-evolution limit
BoundaryUnitary star(const BoundaryUnitary& u, const BoundaryUnitary& v, double l0,
                     double tol = 1e-9);

}  // namespace qwalls
