#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "isodyn/core/metric.hpp"
#include "isodyn/disk/iterate.hpp"
#include "isodyn/disk/maps.hpp"
#include "isodyn/disk/poincare.hpp"
#include "isodyn/util/rng.hpp"

using namespace isodyn;
using disk::Complex;
using disk::DiskMap;
using disk::OrbitOutcome;

namespace {

// Gauss-Legendre-free reference: Simpson quadrature of 2|dz|/(1-|z|^2) along
// the segment [0, r].
double radial_quadrature(double r, int steps = 40000) {
    auto f = [](double t) { return 2.0 / (1.0 - t * t); };
    double h = r / steps, acc = 0.0;
    for (int i = 0; i < steps; ++i) {
        const double a = i * h, b = a + h;
        acc += (f(a) + 4.0 * f(0.5 * (a + b)) + f(b)) * (b - a) / 6.0;
    }
    return acc;
}

Complex random_point(util::Rng& rng, double rmax = 0.95) {
    return std::polar(rmax * std::sqrt(rng.uniform()), rng.uniform(0.0, 2.0 * util::kPi));
}

}  // namespace

TEST_CASE("poincare distance") {
    CHECK(disk::poincare_distance({0, 0}, {0, 0}) == 0.0);
    CHECK(disk::poincare_distance({0, 0}, {0.5, 0}) == Catch::Approx(std::log(3.0)).epsilon(1e-12));
    CHECK(disk::poincare_distance({0, 0}, {0.5, 0}) == Catch::Approx(radial_quadrature(0.5)).epsilon(1e-9));
    CHECK_THROWS_AS(disk::poincare_distance({1.0, 0}, {0, 0}), std::domain_error);

    SECTION("moebius invariance") {
        util::Rng rng(2024);
        for (int rep = 0; rep < 500; ++rep) {
            const auto g = disk::MoebiusDisk::automorphism(rng.uniform(0, 2 * util::kPi),
                                                           random_point(rng, 0.8));
            const Complex z = random_point(rng), w = random_point(rng);
            CHECK(disk::poincare_distance(g.apply(z), g.apply(w)) ==
                  Catch::Approx(disk::poincare_distance(z, w)).margin(1e-10));
        }
    }
}

TEST_CASE("disk map construction and the into-disk invariant") {
    CHECK_NOTHROW(disk::automorphism(0.3, Complex(0.4, 0.1)));
    CHECK_NOTHROW(DiskMap::blaschke({Complex(0.3, 0.0), Complex(-0.2, 0.4)}));
    CHECK_NOTHROW(DiskMap::polynomial({Complex(0, 0), Complex(0.33, 0), Complex(0.33, 0)}));

    // half + z is not a self-map of the disk
    CHECK_THROWS_AS(DiskMap::polynomial({Complex(0.5, 0), Complex(1.0, 0)}), std::invalid_argument);
    CHECK_THROWS_AS(DiskMap::blaschke({Complex(1.2, 0)}), std::domain_error);

    const auto b = DiskMap::blaschke({Complex(0.3, 0.0)});
    CHECK(b.margin() >= -1e-12);
    const auto p = DiskMap::polynomial({Complex(0, 0), Complex(0.5, 0)});
    CHECK(p.margin() > 0.4);
}

TEST_CASE("schwarz-pick: disk maps are semicontractions") {
    disk::PoincareDiskModel model;
    util::Rng rng(31);
    std::vector<std::pair<Complex, Complex>> pairs;
    for (int i = 0; i < 1000; ++i) pairs.emplace_back(random_point(rng), random_point(rng));

    const auto maps = {
        disk::automorphism(1.1, Complex(0.5, -0.2)),
        DiskMap::blaschke({Complex(0.3, 0.0), Complex(-0.1, 0.6)}, std::polar(1.0, 0.7)),
        DiskMap::polynomial({Complex(0.1, 0), Complex(0.2, 0.1), Complex(0, 0), Complex(0.35, 0)}),
    };
    for (const auto& f : maps) {
        const auto rep = core::semicontraction_check(model, [&](const Complex& z) { return f.apply(z); }, pairs);
        CHECK(rep.ok);
        CHECK(rep.max_ratio <= 1.0 + 1e-9);
    }

    // non-automorphisms contract strictly on interior compacta
    const auto strict = DiskMap::blaschke({Complex(0.3, 0.0), Complex(-0.1, 0.6)});
    double worst = 0.0;
    for (const auto& [z, w] : pairs) {
        if (std::abs(z) > 0.7 || std::abs(w) > 0.7 || std::abs(z - w) < 1e-3) continue;
        worst = std::max(worst, disk::poincare_distance(strict.apply(z), strict.apply(w)) /
                                    disk::poincare_distance(z, w));
    }
    CHECK(worst < 1.0);
}

TEST_CASE("gromov products along diverging boundary sequences stay bounded") {
    disk::PoincareDiskModel model;
    const double xi = 0.4, eta = 2.1;  // distinct circle angles
    double max_product = 0.0;
    for (int n = 1; n <= 24; ++n) {
        const Complex z = std::polar(1.0 - std::pow(2.0, -n), xi);
        const Complex w = std::polar(1.0 - std::pow(2.0, -n), eta);
        max_product = std::max(max_product,
                               core::gromov_product(model, model.basepoint(), z, w));
        if (n == 24) {
            CHECK(model.distance(z, model.basepoint()) > 15.0);
            CHECK(model.distance(w, model.basepoint()) > 15.0);
        }
    }
    // bounded by the visibility constant of the angle gap
    CHECK(max_product < 2.0 * std::log(2.0 / std::fabs(std::sin((eta - xi) / 2))) + 2.0);
}

TEST_CASE("orbit classification") {
    SECTION("interior contraction is bounded") {
        const auto half = DiskMap::polynomial({Complex(0, 0), Complex(0.5, 0)});
        const auto v = disk::iterate_classify(half, Complex(0.5, 0.0));
        CHECK(v.outcome == OrbitOutcome::BoundedOrbit);
        CHECK(v.starts_agree);
    }

    SECTION("elliptic rotation is bounded") {
        const auto rot = disk::elliptic_rotation(2.0 * util::kPi * 0.6180339887);
        const auto v = disk::iterate_classify(rot, Complex(0.3, 0.2));
        CHECK(v.outcome == OrbitOutcome::BoundedOrbit);
        CHECK(v.starts_agree);
    }

    SECTION("hyperbolic automorphism converges to the attracting endpoint") {
        const auto f = disk::hyperbolic_automorphism(1.0);
        CHECK(std::abs(f.apply(Complex(1.0, 0.0)) - Complex(1.0, 0.0)) < 1e-12);
        const auto v = disk::iterate_classify(f, Complex(0.0, 0.3));
        REQUIRE(v.outcome == OrbitOutcome::ConvergesTo);
        CHECK(util::circle_distance(v.theta, 0.0) < 1e-3);
        CHECK(v.starts_agree);
        CHECK(v.final_boundary_distance < 1e-6);
    }

    SECTION("parabolic automorphism converges to its fixed point") {
        const auto f = disk::parabolic_automorphism(1.0);
        CHECK(std::abs(f.apply(Complex(1.0, 0.0)) - Complex(1.0, 0.0)) < 1e-12);
        const auto v = disk::iterate_classify(f, Complex(-0.2, 0.1));
        REQUIRE(v.outcome == OrbitOutcome::ConvergesTo);
        CHECK(util::circle_distance(v.theta, 0.0) < 1e-3);
        CHECK(v.starts_agree);
    }

    SECTION("the explicit moebius family from a fraction") {
        // f(z) = (z + 1/2) / (1 + z/2)
        disk::MoebiusDisk m{Complex(1, 0), Complex(0.5, 0), Complex(0.5, 0), Complex(1, 0)};
        const auto f = DiskMap::moebius(m);
        const auto v = disk::iterate_classify(f, Complex(0.0, 0.3));
        REQUIRE(v.outcome == OrbitOutcome::ConvergesTo);
        CHECK(util::circle_distance(v.theta, 0.0) < 1e-3);
    }
}

TEST_CASE("characteristic sets of orbits") {
    SECTION("bounded orbits have empty characteristic set") {
        const auto half = DiskMap::polynomial({Complex(0, 0), Complex(0.5, 0)});
        CHECK(disk::characteristic_set_disk(half, Complex(0.5, 0.0), 2000, 2.0).empty());
    }

    SECTION("convergent orbits cluster at the verdict angle") {
        for (const auto& f : {disk::hyperbolic_automorphism(1.0), disk::parabolic_automorphism(1.0)}) {
            const auto v = disk::iterate_classify(f, Complex(0.0, 0.3));
            REQUIRE(v.outcome == OrbitOutcome::ConvergesTo);
            const auto set = disk::characteristic_set_disk(f, Complex(0.0, 0.3), 10000, 2.0);
            REQUIRE(set.size() == 1);
            CHECK(util::circle_distance(set[0], v.theta) < 1e-3);
        }
        // same family as the explicit fraction, started off-axis
        disk::MoebiusDisk m{Complex(1, 0), Complex(0.5, 0), Complex(0.5, 0), Complex(1, 0)};
        const auto set = disk::characteristic_set_disk(DiskMap::moebius(m), Complex(0.0, 0.3), 10000, 2.0);
        REQUIRE(set.size() == 1);
        CHECK(util::circle_distance(set[0], 0.0) < 1e-3);
    }
}
