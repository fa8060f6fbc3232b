#include "doctest.h"

#include <cmath>
#include <vector>

#include "qwalls/airy.hpp"
#include "qwalls/spectral.hpp"

using namespace qwalls;

namespace {

// independent oracle: integrate y'' = z y with classical RK4 from z = 0,
// starting from the exact series anchors Ai(0), Ai'(0) (resp. Bi)
struct OdeTrack {
    double y, dy;
};

OdeTrack airy_ode(double target, double y0, double dy0) {
    OdeTrack s{y0, dy0};
    const double h_mag = 5e-5;
    double z = 0.0;
    const double dir = target >= 0.0 ? 1.0 : -1.0;
    const double h = dir * h_mag;
    auto rhs = [](double zz, const OdeTrack& st) { return OdeTrack{st.dy, zz * st.y}; };
    while (dir * (target - z) > 1e-12) {
        const double step = std::min(h_mag, dir * (target - z)) * dir;
        const OdeTrack k1 = rhs(z, s);
        const OdeTrack k2 = rhs(z + step / 2, {s.y + step / 2 * k1.y, s.dy + step / 2 * k1.dy});
        const OdeTrack k3 = rhs(z + step / 2, {s.y + step / 2 * k2.y, s.dy + step / 2 * k2.dy});
        const OdeTrack k4 = rhs(z + step, {s.y + step * k3.y, s.dy + step * k3.dy});
        s.y += step / 6 * (k1.y + 2 * k2.y + 2 * k3.y + k4.y);
        s.dy += step / 6 * (k1.dy + 2 * k2.dy + 2 * k3.dy + k4.dy);
        z += step;
    }
    return s;
}

constexpr double kAi0 = 0.35502805388781723926;
constexpr double kdAi0 = -0.25881940379280679841;
constexpr double kBi0 = 0.61492662744600073515;
constexpr double kdBi0 = 0.44828835735382635789;

}  // namespace

TEST_CASE("airy values against fixed references") {
    // reference values to 16-17 digits
    struct Ref {
        double z, ai, bi;
    };
    const std::vector<Ref> refs = {
        {0.5, 0.23169360648083349, 0.85427704310315549},
        {-0.5, 0.47572809161053959, 0.38035265975105385},
        {-2.0, 0.22740742820168558, -0.41230258795639849},
        {-5.0, 0.35076100902411432, -0.13836913490160058},
        {-8.0, -0.052705050356386203, -0.33125158075113786},
        {-10.37, -0.27328746682728187, -0.15539153931530783},
        {-88.0, -0.17968065878800929, -0.040580795411809234},
        {-160.5, -0.11532094420669207, 0.10874951562762482},
        {2.0, 0.034924130423274379, 3.2980949999782147},
        {4.0, 0.00095156385120480187, 83.84707140846814},
    };
    for (const Ref& r : refs) {
        CHECK(airy_ai(r.z) == doctest::Approx(r.ai).epsilon(2e-9));
        CHECK(airy_bi(r.z) == doctest::Approx(r.bi).epsilon(2e-9));
    }
}

TEST_CASE("airy values against the ODE oracle across the series/asymptotic seam") {
    for (double z : {-1.5, -4.0, -7.5, -8.5, -9.5, -12.0}) {
        const OdeTrack ai = airy_ode(z, kAi0, kdAi0);
        const OdeTrack bi = airy_ode(z, kBi0, kdBi0);
        CHECK(airy_ai(z) == doctest::Approx(ai.y).epsilon(5e-8));
        CHECK(airy_bi(z) == doctest::Approx(bi.y).epsilon(5e-8));
    }
}

TEST_CASE("quantization function: paper anchor points") {
    // first root location and a non-root
    CHECK(std::abs(airy_quantization(9.86851)) < 1e-4);
    CHECK(airy_quantization(0.0) != 0.0);
    CHECK(airy_quantization(0.0) == doctest::Approx(0.31827830794985984).epsilon(1e-9));
    // sign change across the second root
    CHECK(airy_quantization(39.47) * airy_quantization(39.49) < 0.0);
}

TEST_CASE("airy levels table") {
    const auto eps = solve_airy_levels(4);
    REQUIRE(eps.size() == 4);
    const double table[4] = {9.86851, 39.4787, 88.8266, 157.914};
    for (int i = 0; i < 4; ++i)
        CHECK(std::abs(eps[i] - table[i]) / table[i] < 1e-5);
    // weak-gravity correspondence: first level near pi^2
    CHECK(std::abs(eps[0] - M_PI * M_PI) < 0.002);
}

TEST_CASE("airy levels are strictly increasing") {
    const auto eps = solve_airy_levels(10);
    REQUIRE(eps.size() == 10);
    for (size_t i = 1; i < eps.size(); ++i) CHECK(eps[i] > eps[i - 1]);
}
