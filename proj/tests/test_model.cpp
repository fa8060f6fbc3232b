#include "doctest.h"

#include <cmath>
#include <random>

#include "qwalls/model.hpp"

using namespace qwalls;

TEST_CASE("trapezoid inner product on constants") {
    const Interval iv{0.0, 1.0};
    const GridState one = sample_function(iv, 101, [](double) { return cplx(1.0, 0.0); });
    CHECK(trapezoid_inner_product(one, one) == cplx(1.0, 0.0));

    const GridState ic = sample_function(iv, 101, [](double) { return cplx(0.0, 1.0); });
    // conjugation sits on the first slot
    CHECK(trapezoid_inner_product(one, ic) == cplx(0.0, 1.0));
    CHECK(trapezoid_inner_product(ic, one) == cplx(0.0, -1.0));
}

TEST_CASE("sine modes are orthogonal under the trapezoid rule") {
    const Interval iv{0.0, 1.0};
    const auto s1 = sample_function(iv, 2001, [](double x) { return cplx(std::sin(M_PI * x), 0.0); });
    const auto s2 = sample_function(iv, 2001, [](double x) { return cplx(std::sin(2 * M_PI * x), 0.0); });
    CHECK(std::abs(trapezoid_inner_product(s1, s2)) < 1e-6);
}

TEST_CASE("sample_function basics") {
    const Interval iv{0.0, 1.0};
    const GridState z = sample_function(iv, 11, [](double) { return cplx(0.0, 0.0); });
    for (const cplx& v : z.samples) CHECK(v == cplx(0.0, 0.0));

    const GridState id = sample_function(iv, 3, [](double x) { return cplx(x, 0.0); });
    CHECK(id.samples[0] == cplx(0.0, 0.0));
    CHECK(id.samples[1] == cplx(0.5, 0.0));
    CHECK(id.samples[2] == cplx(1.0, 0.0));

    // flat box state: all samples 1/sqrt(l) = 1, unit norm for any n
    for (int n : {3, 17, 101, 1024}) {
        const GridState v0 = sample_function(iv, n, [](double) { return cplx(1.0, 0.0); });
        CHECK(std::abs(trapezoid_norm(v0) - 1.0) < 1e-12);
    }
}

TEST_CASE("sample_function rejects non-finite rules") {
    const Interval iv{0.0, 1.0};
    CHECK_THROWS_AS(sample_function(iv, 11, [](double x) { return cplx(1.0 / (x - 0.5), 0.0); }),
                    std::domain_error);
    CHECK_THROWS_AS(sample_function(iv, 2, [](double) { return cplx(0.0, 0.0); }),
                    std::invalid_argument);
}

TEST_CASE("mismatched grids are rejected") {
    const Interval iv{0.0, 1.0};
    const auto f = sample_function(iv, 11, [](double) { return cplx(1.0, 0.0); });
    const auto g = sample_function(iv, 21, [](double) { return cplx(1.0, 0.0); });
    CHECK_THROWS_AS(trapezoid_inner_product(f, g), std::invalid_argument);
    const auto h = sample_function(Interval{0.0, 2.0}, 11, [](double) { return cplx(1.0, 0.0); });
    CHECK_THROWS_AS(trapezoid_inner_product(f, h), std::invalid_argument);
}

TEST_CASE("inner product is conjugate symmetric") {
    const Interval iv{-0.5, 1.5};
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int rep = 0; rep < 20; ++rep) {
        const double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
        const auto f = sample_function(iv, 64, [&](double x) { return cplx(std::cos(a * x) + b, std::sin(c * x)); });
        const auto g = sample_function(iv, 64, [&](double x) { return cplx(std::sin(b * x), d * x); });
        const cplx fg = trapezoid_inner_product(f, g);
        const cplx gf = trapezoid_inner_product(g, f);
        CHECK(std::abs(fg - std::conj(gf)) < 1e-14 * (1.0 + std::abs(fg)));
    }
}

TEST_CASE("config validation") {
    CHECK_THROWS_AS((PhysicalConfig{-1.0, 0.5, 1.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((Interval{1.0, 1.0}.validate()), std::invalid_argument);
    const PhysicalConfig def;
    CHECK(def.kinetic_scale() == 1.0);  // hbar^2/2m = 1 in default units
}
