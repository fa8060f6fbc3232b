// Moving-wall dynamics mapped to the fixed reference box I = [-l0/2, l0/2]
// with Dirichlet walls. The transformed Schroedinger operator is
//   H_mid = (l0/l)^2 p^2/2m - (ldot/l) x o p - (l0 ddot/l) p,
// assembled in the Dirichlet sine Galerkin basis where all matrix elements
// are closed-form. Time stepping is midpoint Crank-Nicolson (a Cayley step,
// unitary up to solver roundoff). Also the frame map U(l,d), the gauge
// transformation of the uniformly accelerating box, and the energy-rate
// diagnostic comparing d<H(l)>/dt against the wall-flux formula.
#pragma once

#include <functional>

#include "qwalls/linalg.hpp"
#include "qwalls/model.hpp"

namespace qwalls {

struct WallTrajectory {
    std::function<double(double)> l;  // width
    std::function<double(double)> d;  // center
    // optional analytic derivatives; central differences with step fd_step otherwise
    std::function<double(double)> ldot;
    std::function<double(double)> ddot;
    double fd_step = 1e-6;
    double l_min = 1e-9;

    double width(double t) const;       // validates l(t) >= l_min
    double center(double t) const;
    double width_rate(double t) const;
    double center_rate(double t) const;
};

struct GalerkinOperators {
    int n_modes = 0;
    PhysicalConfig config;
    std::vector<double> kin_diag;  // hbar^2 (n pi / l0)^2 / 2m
    CMatrix mom;                   // p, Hermitian, nonzero for m+n odd
    CMatrix virial;                // x o p, Hermitian, nonzero for m+n even
};

GalerkinOperators build_galerkin(const PhysicalConfig& cfg, int n_modes);

// H_mid for given instantaneous geometry
CMatrix assemble_hmid(const GalerkinOperators& ops, double l, double ldot, double ddot);

// one midpoint Crank-Nicolson step over [t, t+dt] (dt may be negative);
// throws std::runtime_error with a condition estimate if the solve fails
SpectralState step_crank_nicolson(const GalerkinOperators& ops, const WallTrajectory& traj,
                                  const SpectralState& state, double t, double dt);

// <H(l)> = (l0/l)^2 <c|kin|c>
double kinetic_energy(const GalerkinOperators& ops, const SpectralState& state, double l);

// phi'(-l0/2), phi'(+l0/2) synthesized from the sine coefficients
std::pair<cplx, cplx> wall_derivatives(const GalerkinOperators& ops, const SpectralState& state);

// lhs: d<H(l)>/dt by Richardson-extrapolated symmetric differences of the
// propagated expectation; rhs: the boundary-flux expression
//   -(hbar^2/2m)(l0/l)^3 [ (ldot xi / l0 + ddot) |phi'(xi)|^2 ]_{-l0/2}^{l0/2}
std::pair<double, double> energy_rate_check(const GalerkinOperators& ops,
                                            const WallTrajectory& traj,
                                            const SpectralState& state, double t,
                                            double fd_delta = 1e-4);

// resampling isometry between the moving box I_{l,d} and the reference box:
// forward: (U(l,d) psi)(xi) = sqrt(l/l0) psi((l/l0) xi + d)
struct FrameMap {
    double l = 1.0;
    double d = 0.0;
    bool forward = true;
    PhysicalConfig config;
};

GridState frame_map_apply(const FrameMap& map, const GridState& state);

// pointwise phase exp(+-(i/hbar)(m g xi t - m g^2 t^3/6)) on the reference box
GridState gauge_transform(const GridState& state, double t, double g, const PhysicalConfig& cfg,
                          bool forward);

}  // namespace qwalls
