#include "qwalls/boundary.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qwalls {

namespace {
constexpr double kPi = std::numbers::pi;

void check_angle(double alpha, const char* who) {
    if (!std::isfinite(alpha) || alpha <= -kPi || alpha > kPi) {
        std::ostringstream os;
        os << who << ": angle must lie in (-pi, pi], got " << alpha;
        throw std::domain_error(os.str());
    }
}

cplx phase(double t) { return std::polar(1.0, t); }
}  // namespace

double BoundaryUnitary::unitarity_defect() const {
    const Mat2 r = u.adjoint() * u - Mat2::identity();
    return r.max_abs();
}

BoundaryUnitary BoundaryUnitary::from_matrix(const Mat2& m, double tol) {
    BoundaryUnitary out;
    out.u = m;
    out.tol_unitary = tol;
    if (out.unitarity_defect() > tol)
        throw std::invalid_argument("BoundaryUnitary: matrix is not unitary within tolerance");
    return out;
}

BoundaryUnitary make_dirichlet() {
    BoundaryUnitary u;
    u.u = Mat2::diag(-1.0, -1.0);
    u.family = "dirichlet";
    return u;
}

BoundaryUnitary make_neumann() {
    BoundaryUnitary u;
    u.u = Mat2::identity();
    u.family = "neumann";
    return u;
}

BoundaryUnitary make_robin(double alpha) {
    check_angle(alpha, "make_robin");
    BoundaryUnitary u;
    // alpha = pi is exactly Dirichlet; avoid sin(pi) residue
    const cplx e = (alpha == kPi) ? cplx(-1.0, 0.0) : phase(-alpha);
    u.u = Mat2::diag(e, e);
    u.family = "robin";
    u.params = {alpha};
    return u;
}

BoundaryUnitary make_pseudo_periodic(double alpha) {
    check_angle(alpha, "make_pseudo_periodic");
    BoundaryUnitary u;
    const cplx e = (alpha == kPi) ? cplx(-1.0, 0.0) : phase(alpha);
    u.u = Mat2{0.0, std::conj(e), e, 0.0};
    u.family = "pseudo_periodic";
    u.params = {alpha};
    return u;
}

BoundaryUnitary make_local(double alpha1, double alpha2) {
    check_angle(alpha1, "make_local");
    check_angle(alpha2, "make_local");
    BoundaryUnitary u;
    const cplx e1 = (alpha1 == kPi) ? cplx(-1.0, 0.0) : phase(-alpha1);
    const cplx e2 = (alpha2 == kPi) ? cplx(-1.0, 0.0) : phase(-alpha2);
    u.u = Mat2::diag(e1, e2);
    u.family = "local";
    u.params = {alpha1, alpha2};
    return u;
}

BoundaryTrace BoundaryTrace::from_raw(cplx psi_a, cplx psi_b, cplx dpsi_a, cplx dpsi_b, double l0) {
    if (!(l0 > 0.0)) throw std::invalid_argument("BoundaryTrace: l0 must be positive");
    BoundaryTrace t;
    t.psi = {psi_a, psi_b};
    t.dpsi = {-l0 * dpsi_a, l0 * dpsi_b};
    return t;
}

cplx boundary_form(cplx psi_a, cplx psi_b, cplx dpsi_a, cplx dpsi_b,
                   cplx phi_a, cplx phi_b, cplx dphi_a, cplx dphi_b) {
    return std::conj(dpsi_b) * phi_b - std::conj(dpsi_a) * phi_a -
           std::conj(psi_b) * dphi_b + std::conj(psi_a) * dphi_a;
}

double bc_residual(const BoundaryUnitary& u, const BoundaryTrace& t) {
    const Mat2 ip = Mat2::identity() + u.u;
    const Mat2 im = Mat2::identity() - u.u;
    const Vec2 r = (ip * t.dpsi) * I1 - im * t.psi;
    return r.norm();
}

bool satisfies_bc(const BoundaryUnitary& u, const BoundaryTrace& t, double tol) {
    return bc_residual(u, t) <= tol * (1.0 + t.psi.norm() + t.dpsi.norm());
}

MinusOneStructure classify_minus_one(const BoundaryUnitary& u, double tol) {
    const Eig2 e = eig_normal(u.u);
    const bool m0 = std::abs(e.values[0] + 1.0) <= tol;
    const bool m1 = std::abs(e.values[1] + 1.0) <= tol;
    MinusOneStructure out;
    out.count = int(m0) + int(m1);
    if (out.count == 1) {
        const int i = m0 ? 0 : 1;
        out.xi = e.vectors[i];
        out.xi_perp = perp(e.vectors[i]);
        out.u2 = e.values[1 - i];
    }
    return out;
}

double reflection_phase(double alpha, double k, double l0) {
    check_angle(alpha, "reflection_phase");
    if (!(k > 0.0)) throw std::domain_error("reflection_phase: k must be positive");
    if (!(l0 > 0.0)) throw std::domain_error("reflection_phase: l0 must be positive");
    if (alpha == kPi) return kPi;  // Dirichlet: beta = pi for every k
    return 2.0 * std::atan(std::tan(0.5 * alpha) / (k * l0));
}

std::string boundary_to_json(const BoundaryUnitary& u) {
    nlohmann::json j;
    j["u_re"] = {u.u.a.real(), u.u.b.real(), u.u.c.real(), u.u.d.real()};
    j["u_im"] = {u.u.a.imag(), u.u.b.imag(), u.u.c.imag(), u.u.d.imag()};
    if (!u.family.empty()) {
        j["family"] = u.family;
        if (!u.params.empty()) j["params"] = u.params;
    }
    return j.dump();
}

BoundaryUnitary boundary_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    if (j.contains("u_re") && j.contains("u_im")) {
        const auto re = j.at("u_re").get<std::vector<double>>();
        const auto im = j.at("u_im").get<std::vector<double>>();
        if (re.size() != 4 || im.size() != 4)
            throw std::invalid_argument("boundary_from_json: u_re/u_im must have 4 entries");
        Mat2 m{{re[0], im[0]}, {re[1], im[1]}, {re[2], im[2]}, {re[3], im[3]}};
        BoundaryUnitary out = BoundaryUnitary::from_matrix(m);
        if (j.contains("family")) out.family = j.at("family").get<std::string>();
        if (j.contains("params")) out.params = j.at("params").get<std::vector<double>>();
        return out;
    }
    if (j.contains("family")) {
        const auto fam = j.at("family").get<std::string>();
        std::vector<double> p;
        if (j.contains("params")) p = j.at("params").get<std::vector<double>>();
        if (fam == "dirichlet") return make_dirichlet();
        if (fam == "neumann") return make_neumann();
        if (fam == "robin" && p.size() == 1) return make_robin(p[0]);
        if (fam == "pseudo_periodic" && p.size() == 1) return make_pseudo_periodic(p[0]);
        if (fam == "local" && p.size() == 2) return make_local(p[0], p[1]);
        throw std::invalid_argument("boundary_from_json: unknown family or wrong params: " + fam);
    }
    throw std::invalid_argument("boundary_from_json: need u_re/u_im or family");
}

BoundaryUnitary parse_boundary(const std::string& spec) {
    if (spec.empty()) throw std::invalid_argument("parse_boundary: empty spec");
    if (spec.front() == '{') return boundary_from_json(spec);
    if (spec == "dirichlet") return make_dirichlet();
    if (spec == "neumann") return make_neumann();
    if (spec == "periodic") return make_pseudo_periodic(0.0);
    const auto colon = spec.find(':');
    if (colon != std::string::npos) {
        const std::string head = spec.substr(0, colon);
        const std::string tail = spec.substr(colon + 1);
        const auto parse_angles = [&]() {
            std::vector<double> v;
            std::stringstream ss(tail);
            std::string tok;
            while (std::getline(ss, tok, ',')) v.push_back(std::stod(tok));
            return v;
        };
        const auto v = parse_angles();
        if (head == "robin" && v.size() == 1) return make_robin(v[0]);
        if (head == "pseudo_periodic" && v.size() == 1) return make_pseudo_periodic(v[0]);
        if (head == "local" && v.size() == 2) return make_local(v[0], v[1]);
        throw std::invalid_argument("parse_boundary: bad spec '" + spec + "'");
    }
    // otherwise treat as a path to a JSON file
    std::ifstream in(spec);
    if (!in) throw std::invalid_argument("parse_boundary: not a named family and no such file: " + spec);
    std::stringstream ss;
    ss << in.rdbuf();
    return boundary_from_json(ss.str());
}

}  // namespace qwalls
