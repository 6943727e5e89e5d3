#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "isodyn/cat0/model.hpp"
#include "isodyn/core/halfspace.hpp"
#include "isodyn/core/metric.hpp"
#include "isodyn/core/orbit.hpp"
#include "isodyn/core/special.hpp"
#include "isodyn/disk/poincare.hpp"
#include "isodyn/util/rng.hpp"

using namespace isodyn;
using cat0::Cat0Model;
using cat0::Cat0Point;
using cat0::Signature;

namespace {

Cat0Point pt2(const Cat0Model& m, double x, double y) {
    Eigen::VectorXd v(2);
    v << x, y;
    return m.make_point(v);
}

// Reference: check every pair (m, n) explicitly.
std::vector<std::size_t> special_indices_bruteforce(const std::vector<double>& a, double c) {
    std::vector<std::size_t> out;
    for (std::size_t n = 0; n < a.size(); ++n) {
        bool ok = true;
        for (std::size_t m = 0; m < n && ok; ++m)
            if (!(a[n] > a[m] - c)) ok = false;
        if (ok) out.push_back(n);
    }
    return out;
}

}  // namespace

TEST_CASE("halfspace membership on collinear Euclidean configurations") {
    Cat0Model r2(Signature::euclidean(2));
    core::HalfspaceSpec<Cat0Point> spec{{pt2(r2, 2, 0)}, 0.0, pt2(r2, 0, 0)};
    CHECK(core::halfspace_contains(r2, spec, pt2(r2, 3, 0)));
    CHECK_FALSE(core::halfspace_contains(r2, spec, pt2(r2, -1, 0)));
    // a witness is always a member at slack 0
    CHECK(core::halfspace_contains(r2, spec, pt2(r2, 2, 0)));
}

TEST_CASE("gromov product values") {
    Cat0Model r2(Signature::euclidean(2));
    const auto x0 = pt2(r2, 0, 0);
    CHECK(core::gromov_product(r2, x0, pt2(r2, 1, 0), pt2(r2, 1, 0)) == Catch::Approx(1.0));
    CHECK(core::gromov_product(r2, x0, pt2(r2, 1, 0), pt2(r2, -1, 0)) == Catch::Approx(0.0).margin(1e-12));
    // direct arithmetic: (1 + 1 - sqrt(2)) / 2
    CHECK(core::gromov_product(r2, x0, pt2(r2, 1, 0), pt2(r2, 0, 1)) ==
          Catch::Approx(1.0 - std::sqrt(2.0) / 2.0));
}

TEST_CASE("special index detection") {
    CHECK(core::detect_special_indices(std::vector<double>{1, 2, 3, 4}, 0.0) ==
          std::vector<std::size_t>{0, 1, 2, 3});
    CHECK(core::detect_special_indices(std::vector<double>{1, 3, 2, 4, 3, 5}, 1.0) ==
          std::vector<std::size_t>{0, 1, 3, 5});
    CHECK(core::detect_special_indices(std::vector<double>{5, 4, 3, 2, 1}, 0.0) ==
          std::vector<std::size_t>{0});
}

TEST_CASE("special index detection agrees with the pairwise scan") {
    util::Rng rng(20240817);
    for (int rep = 0; rep < 40; ++rep) {
        const std::size_t n = 1 + rng.uniform_index(1000);
        std::vector<double> a(n);
        for (auto& v : a) v = rng.uniform(-5.0, 50.0);
        const double c = rng.uniform(0.0, 3.0);
        CHECK(core::detect_special_indices(a, c) == special_indices_bruteforce(a, c));
    }
}

TEST_CASE("orbit generation classifies translations and rotations") {
    Cat0Model r2(Signature::euclidean(2));
    const auto x0 = pt2(r2, 0, 0);

    SECTION("translation is unbounded with a tail of special indices") {
        auto shift = [&](const Cat0Point& p) { return pt2(r2, p.euc(0) + 1.0, p.euc(1)); };
        auto rec = core::generate_orbit(r2, shift, x0, 10, 0.0, 5.0);
        REQUIRE(rec.classification == core::Boundedness::Unbounded);
        REQUIRE(rec.lengths[4] == Catch::Approx(4.0));
        CHECK(rec.special_indices == std::vector<std::size_t>{6, 7, 8, 9, 10});
    }

    SECTION("rotation about the basepoint is bounded") {
        auto rot = [&](const Cat0Point& p) { return pt2(r2, -p.euc(1), p.euc(0)); };
        auto rec = core::generate_orbit(r2, rot, pt2(r2, 1, 0), 40, 0.0, 5.0);
        CHECK(rec.classification == core::Boundedness::Bounded);
        CHECK(rec.special_indices.empty());
    }

    SECTION("contraction of the disk is bounded") {
        disk::PoincareDiskModel d;
        auto half = [](const std::complex<double>& z) { return z * 0.5; };
        auto rec = core::generate_orbit(d, half, std::complex<double>(0.5, 0.0), 30, 0.0, 5.0);
        CHECK(rec.classification == core::Boundedness::Bounded);
    }

    SECTION("lengths match distances to the basepoint") {
        auto shift = [&](const Cat0Point& p) { return pt2(r2, p.euc(0) + 0.3, p.euc(1) + 0.1); };
        auto rec = core::generate_orbit(r2, shift, pt2(r2, 0.2, -0.4), 15, 0.5, 2.0);
        for (std::size_t i = 0; i < rec.points.size(); ++i)
            CHECK(rec.lengths[i] == r2.distance(rec.points[i], rec.points[0]));
        for (std::size_t i : rec.special_indices)
            for (std::size_t m = 0; m < i; ++m) CHECK(rec.lengths[i] > rec.lengths[m] - 0.5);
    }
}

TEST_CASE("semicontraction check") {
    Cat0Model r2(Signature::euclidean(2));
    util::Rng rng(7);
    std::vector<std::pair<Cat0Point, Cat0Point>> pairs;
    for (int i = 0; i < 200; ++i)
        pairs.emplace_back(pt2(r2, rng.uniform(-3, 3), rng.uniform(-3, 3)),
                           pt2(r2, rng.uniform(-3, 3), rng.uniform(-3, 3)));

    SECTION("isometries have ratio 1") {
        auto iso = [&](const Cat0Point& p) { return pt2(r2, -p.euc(1) + 2.0, p.euc(0) - 1.0); };
        auto rep = core::semicontraction_check(r2, iso, pairs);
        CHECK(rep.ok);
        CHECK(rep.max_ratio == Catch::Approx(1.0).epsilon(1e-9));
    }

    SECTION("doubling fails with ratio 2") {
        auto dbl = [&](const Cat0Point& p) { return pt2(r2, 2 * p.euc(0), 2 * p.euc(1)); };
        auto rep = core::semicontraction_check(r2, dbl, pairs);
        CHECK_FALSE(rep.ok);
        CHECK(rep.max_ratio == Catch::Approx(2.0).epsilon(1e-9));
    }

    SECTION("squaring the disk satisfies the distance-decreasing property") {
        disk::PoincareDiskModel d;
        util::Rng r2nd(11);
        std::vector<std::pair<std::complex<double>, std::complex<double>>> zpairs;
        for (int i = 0; i < 1000; ++i) {
            const auto z = std::polar(0.97 * std::sqrt(r2nd.uniform()), r2nd.uniform(0, 2 * util::kPi));
            const auto w = std::polar(0.97 * std::sqrt(r2nd.uniform()), r2nd.uniform(0, 2 * util::kPi));
            zpairs.emplace_back(z, w);
        }
        auto sq = [](const std::complex<double>& z) { return z * z; };
        CHECK(core::semicontraction_check(d, sq, zpairs).ok);
    }
}

TEST_CASE("halfspace monotonicity in slack and witness set") {
    Cat0Model r2(Signature::euclidean(2));
    util::Rng rng(101);
    const auto x0 = pt2(r2, 0, 0);
    for (int rep = 0; rep < 1000; ++rep) {
        std::vector<Cat0Point> w1, w2;
        const int k = 1 + static_cast<int>(rng.uniform_index(4));
        for (int i = 0; i < k; ++i) w1.push_back(pt2(r2, rng.uniform(-10, 10), rng.uniform(-10, 10)));
        w2 = w1;
        w2.push_back(pt2(r2, rng.uniform(-10, 10), rng.uniform(-10, 10)));
        const double c = rng.uniform(0.0, 2.0);
        const double cbig = c + rng.uniform(0.0, 2.0);
        const auto z = pt2(r2, rng.uniform(-10, 10), rng.uniform(-10, 10));
        if (core::halfspace_contains(r2, {w1, c, x0}, z)) {
            CHECK(core::halfspace_contains(r2, {w1, cbig, x0}, z));
            CHECK(core::halfspace_contains(r2, {w2, c, x0}, z));
        }
    }
}

TEST_CASE("basepoint change sandwich") {
    Cat0Model r2(Signature::euclidean(2));
    util::Rng rng(202);
    for (int rep = 0; rep < 1000; ++rep) {
        const auto x0 = pt2(r2, rng.uniform(-5, 5), rng.uniform(-5, 5));
        const auto x = pt2(r2, rng.uniform(-5, 5), rng.uniform(-5, 5));
        const auto z = pt2(r2, rng.uniform(-12, 12), rng.uniform(-12, 12));
        std::vector<Cat0Point> w{pt2(r2, rng.uniform(-12, 12), rng.uniform(-12, 12)),
                                 pt2(r2, rng.uniform(-12, 12), rng.uniform(-12, 12))};
        const double c = rng.uniform(0.0, 3.0);
        const double d = r2.distance(x, x0);
        if (c - d >= 0.0 && core::halfspace_contains(r2, {w, c - d, x0}, z))
            CHECK(core::halfspace_contains(r2, {w, c, x}, z));
        if (core::halfspace_contains(r2, {w, c, x}, z))
            CHECK(core::halfspace_contains(r2, {w, c + d, x0}, z));
    }
}

TEST_CASE("gromov bound for halfspace members") {
    Cat0Model r2(Signature::euclidean(2));
    util::Rng rng(303);
    const auto x0 = pt2(r2, 0, 0);
    for (int rep = 0; rep < 1000; ++rep) {
        std::vector<Cat0Point> w{pt2(r2, rng.uniform(-10, 10), rng.uniform(-10, 10)),
                                 pt2(r2, rng.uniform(-10, 10), rng.uniform(-10, 10))};
        const double c = rng.uniform(0.0, 2.0);
        const auto z = pt2(r2, rng.uniform(-10, 10), rng.uniform(-10, 10));
        if (core::halfspace_contains(r2, {w, c, x0}, z)) {
            const auto& wmin = core::nearest_witness(r2, w, z);
            CHECK(core::gromov_product(r2, x0, z, wmin) >=
                  0.5 * (r2.distance(wmin, x0) - c) - 1e-9);
        }
    }
}

TEST_CASE("metric axioms hold on sampled triples") {
    Cat0Model rxh(Signature::product(2));
    util::Rng rng(404);
    auto sample = [&] {
        Eigen::VectorXd v(2);
        v << rng.uniform(-4, 4), rng.uniform(-4, 4);
        return rxh.make_point(v, std::polar(0.95 * rng.uniform(), rng.uniform(0, 2 * util::kPi)));
    };
    for (int rep = 0; rep < 1000; ++rep) {
        const auto p = sample(), q = sample(), r = sample();
        CHECK(rxh.distance(p, p) == Catch::Approx(0.0).margin(1e-12));
        CHECK(rxh.distance(p, q) == Catch::Approx(rxh.distance(q, p)).epsilon(1e-9));
        CHECK(rxh.distance(p, r) <= rxh.distance(p, q) + rxh.distance(q, r) + 1e-9);
    }
}
