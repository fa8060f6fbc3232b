// Free eigenproblem -(hbar^2/2m) u'' = E u on [a,b] under a BoundaryUnitary:
// oscillatory (E>0), linear (E=0) and evanescent (E<0) branches, with roots
// of the 2x2 dispersion determinant located by a |det| scan plus refinement.
// Also the linear-potential (Airy) levels of the accelerating box.
#pragma once

#include <iosfwd>
#include <vector>

#include "qwalls/boundary.hpp"
#include "qwalls/wavefun.hpp"

namespace qwalls {

enum class Branch { oscillatory, linear, evanescent };

const char* branch_name(Branch b);

// one normalized solution of the eigenproblem. Basis pairs per branch:
//   oscillatory: b1 = e^{ik(x-a)},   b2 = e^{-ik(x-a)}
//   linear:      b1 = 1,             b2 = x - mid
//   evanescent:  b1 = e^{kappa(x-b)}, b2 = e^{-kappa(x-a)}
// fun = c1 b1 + c2 b2 carries the normalization; norm is its L2 norm (== 1).
struct EigenMode {
    Branch branch = Branch::oscillatory;
    double k_or_kappa = 0.0;  // k (E>0), kappa (E<0), unused for E=0
    double energy = 0.0;
    cplx c1{}, c2{};
    double norm = 1.0;
    WaveFun fun;
};

struct DispersionScan {
    std::vector<double> k_grid;
    std::vector<cplx> det_values;
    std::vector<double> roots;
};

struct SpectrumOptions {
    double grid_step_factor = 0.25;  // scan step = factor * pi / l
    double det_zero_rel = 1e-8;      // root acceptance: |det| <= rel * median|det|
    double second_sv_rel = 1e-6;     // degenerate root: second singular value cutoff
    double bc_check_tol = 1e-8;      // every returned mode must satisfy the BC
    double kappa_max_floor = 50.0;   // evanescent scan reaches at least floor/l
    // oscillatory/evanescent scans start at k = k_floor_rel/l; the k -> 0
    // corner degenerates into the affine ansatz and is handled there
    double k_floor_rel = 2e-4;
    int max_modes = 8192;
};

// the two basis solutions of the branch, before applying boundary conditions
std::pair<WaveFun, WaveFun> branch_basis(const Interval& iv, Branch branch, double k);

// 2x2 homogeneous system in (c1,c2): columns are i(I+U)Psi' - (I-U)Psi applied
// to the branch basis; singular exactly at eigen-wavenumbers
Mat2 bc_system_matrix(const BoundaryUnitary& u, const Interval& iv, const PhysicalConfig& cfg,
                      Branch branch, double k);

cplx dispersion_determinant(const BoundaryUnitary& u, const Interval& iv, const PhysicalConfig& cfg,
                            Branch branch, double k);

// all eigenvalues with E <= e_max, sorted by energy, normalized, BC-verified
std::vector<EigenMode> solve_spectrum(const BoundaryUnitary& u, const Interval& iv,
                                      const PhysicalConfig& cfg, double e_max,
                                      const SpectrumOptions& opts = {});

// oscillatory-branch scan with refined roots, for diagnostics and tests;
// every returned root r satisfies |det(r)| below the acceptance tolerance
DispersionScan scan_dispersion(const BoundaryUnitary& u, const Interval& iv,
                               const PhysicalConfig& cfg, double k_min, double k_max,
                               double step);

// <f | mode> for anything in the closed-form algebra
cplx mode_overlap(const WaveFun& f, const EigenMode& mode);

// CSV export: index,branch,k_or_kappa,energy,re_c1,im_c1,re_c2,im_c2
void write_spectrum_csv(std::ostream& os, const std::vector<EigenMode>& modes);

// Ai(-1/2-eps) Bi(1/2-eps) - Ai(1/2-eps) Bi(-1/2-eps); zero at permitted
// dimensionless energies eps = E/(m g l) of the box in a linear potential.
// Convention: the gravitational length (hbar^2 / 2 m^2 g)^{1/3} equals the
// box width, so weak-field levels sit near n^2 pi^2 (eps_1 = pi^2 - 0.0011,
// the shift being the second-order mixing of the box states).
double airy_quantization(double eps);

// first n roots of the quantization condition, increasing
std::vector<double> solve_airy_levels(int n_levels);

}  // namespace qwalls
