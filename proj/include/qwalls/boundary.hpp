// U(2)-parametrized self-adjoint boundary conditions for the kinetic operator
// on an interval: i(I+U) Psi' = (I-U) Psi with the signed, l0-scaled trace
// vectors Psi = (psi(a), psi(b)), Psi' = l0 (-psi'(a), psi'(b)).
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qwalls/linalg.hpp"
#include "qwalls/model.hpp"

namespace qwalls {

struct BoundaryUnitary {
    Mat2 u;
    double tol_unitary = 1e-10;
    // set when the unitary came from a named family ("dirichlet", "neumann",
    // "robin", "pseudo_periodic", "local"); empty for custom matrices
    std::string family;
    std::vector<double> params;

    // throws unless u is unitary within tol
    static BoundaryUnitary from_matrix(const Mat2& u, double tol = 1e-10);
    double unitarity_defect() const;  // max |(U^dagger U - I)_ij|
};

BoundaryUnitary make_dirichlet();
BoundaryUnitary make_neumann();
// e^{-i alpha} I; Dirichlet/Neumann in the limits alpha -> pi / 0
BoundaryUnitary make_robin(double alpha);
// off-diagonal (e^{-i alpha}, e^{i alpha}): psi and psi' pick up e^{i alpha}
// across the junction
BoundaryUnitary make_pseudo_periodic(double alpha);
// diag(e^{-i alpha1}, e^{-i alpha2}): independent Robin angles per wall
BoundaryUnitary make_local(double alpha1, double alpha2);

// endpoint data of a wave function, stored in the signed/scaled convention
struct BoundaryTrace {
    Vec2 psi;   // (psi(a), psi(b))
    Vec2 dpsi;  // l0 * (-psi'(a), psi'(b))

    // raw endpoint values and derivatives, converted on entry
    static BoundaryTrace from_raw(cplx psi_a, cplx psi_b, cplx dpsi_a, cplx dpsi_b, double l0);
};

// Lambda(psi, phi), the sesquilinear surface term from double integration by
// parts, on raw endpoint data (conjugation on the psi slot)
cplx boundary_form(cplx psi_a, cplx psi_b, cplx dpsi_a, cplx dpsi_b,
                   cplx phi_a, cplx phi_b, cplx dphi_a, cplx dphi_b);

// || i(I+U) Psi' - (I-U) Psi || <= tol (1 + |Psi| + |Psi'|)
bool satisfies_bc(const BoundaryUnitary& u, const BoundaryTrace& t, double tol = 1e-10);
double bc_residual(const BoundaryUnitary& u, const BoundaryTrace& t);

// -1 eigenspace structure; the hard tolerance cutoff is deliberate: the form
// domain cases are genuinely discontinuous in U
struct MinusOneStructure {
    int count = 0;                 // 0, 1 or 2 eigenvalues at -1
    std::optional<Vec2> xi;        // unit -1 eigenvector (count == 1)
    std::optional<Vec2> xi_perp;   // unit vector orthogonal to xi (count == 1)
    std::optional<cplx> u2;        // the other eigenvalue (count == 1)
};

MinusOneStructure classify_minus_one(const BoundaryUnitary& u, double tol = 1e-9);

// wall reflection phase for the Robin angle: tan(beta/2) = tan(alpha/2)/(k l0);
// alpha = pi maps to beta = pi without division
double reflection_phase(double alpha, double k, double l0);

// JSON round trip: 8 reals (row-major re/im) plus the semantic tag
std::string boundary_to_json(const BoundaryUnitary& u);
BoundaryUnitary boundary_from_json(const std::string& text);
// accepts "dirichlet", "neumann", "robin:<alpha>", "pseudo_periodic:<alpha>",
// "local:<a1>,<a2>", or inline/loaded JSON
BoundaryUnitary parse_boundary(const std::string& spec);

}  // namespace qwalls
