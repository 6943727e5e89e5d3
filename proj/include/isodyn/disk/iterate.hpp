#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <vector>

#include "isodyn/core/special.hpp"
#include "isodyn/disk/maps.hpp"
#include "isodyn/disk/poincare.hpp"
#include "isodyn/util/numeric.hpp"
#include "isodyn/util/rng.hpp"

namespace isodyn::disk {

struct IterationThresholds {
    std::size_t n_max = 10000;
    double bounded_length = 25.0;        // orbit stays a bounded Poincare distance out
    double boundary_distance = 1e-6;     // Euclidean gap 1 - |z| for convergence
    double angle_window = 1e-3;          // angular oscillation of the orbit tail
};

enum class OrbitOutcome { BoundedOrbit, ConvergesTo, Indeterminate };

struct IterationVerdict {
    OrbitOutcome outcome = OrbitOutcome::Indeterminate;
    double theta = 0.0;                   // boundary angle for ConvergesTo
    double max_length = 0.0;              // max Poincare distance from the origin seen
    double tail_angle_spread = 0.0;       // angular oscillation over the last quartile
    double final_boundary_distance = 1.0; // 1 - |z| at the end
    std::vector<double> boundary_trace;   // downsampled 1 - |z| evidence
    bool starts_agree = true;             // all restarts produced the same outcome
};

namespace detail {

inline IterationVerdict classify_single(const DiskMap& f, Complex z0, const IterationThresholds& th) {
    IterationVerdict v;
    Complex z = z0;
    std::vector<double> tail_angles;
    const std::size_t tail_start = th.n_max - th.n_max / 4;
    for (std::size_t n = 1; n <= th.n_max; ++n) {
        z = f.apply(z);
        double r = std::abs(z);
        if (r >= 1.0) {  // numerical saturation at the circle
            z *= (1.0 - 1e-15) / r;
            r = 1.0 - 1e-15;
        }
        v.max_length = std::max(v.max_length, 2.0 * std::atanh(std::min(r, 1.0 - 1e-17)));
        if (n % 64 == 0) v.boundary_trace.push_back(1.0 - r);
        if (n >= tail_start) tail_angles.push_back(std::arg(z));
    }
    v.final_boundary_distance = 1.0 - std::abs(z);

    double spread = 0.0;
    const double ref = tail_angles.empty() ? 0.0 : tail_angles.back();
    for (double a : tail_angles) spread = std::max(spread, util::circle_distance(a, ref));
    v.tail_angle_spread = spread;

    if (v.final_boundary_distance < th.boundary_distance && spread < th.angle_window) {
        v.outcome = OrbitOutcome::ConvergesTo;
        v.theta = util::wrap_angle(ref);
    } else if (v.max_length < th.bounded_length) {
        v.outcome = OrbitOutcome::BoundedOrbit;
    } else {
        v.outcome = OrbitOutcome::Indeterminate;
    }
    return v;
}

}  // namespace detail

// Orbit classification with a starting-point independence check: the map is
// rerun from several random starting points and all runs must agree (and for
// convergent orbits land on the same boundary angle).
inline IterationVerdict iterate_classify(const DiskMap& f, const Complex& z0,
                                         const IterationThresholds& th = {}, int extra_starts = 5,
                                         std::uint64_t seed = 20240501) {
    require_in_disk(z0);
    IterationVerdict v = detail::classify_single(f, z0, th);
    util::Rng rng(seed);
    for (int s = 0; s < extra_starts; ++s) {
        const Complex w = std::polar(0.9 * std::sqrt(rng.uniform()), rng.uniform(0.0, 2.0 * util::kPi));
        const IterationVerdict u = detail::classify_single(f, w, th);
        if (u.outcome != v.outcome) v.starts_agree = false;
        if (v.outcome == OrbitOutcome::ConvergesTo && util::circle_distance(u.theta, v.theta) > 1e-3)
            v.starts_agree = false;
    }
    return v;
}

// Cluster angles of the orbit points at special indices of the length
// sequence a_n = d(z0, f^n(z0)). Empty for bounded orbits. For convergent
// orbits this is the single Denjoy-Wolff angle. The divergence threshold must
// stay below the growth of the slowest convergent maps (parabolic orbits
// reach only ~2 log n by step n).
inline std::vector<double> characteristic_set_disk(const DiskMap& f, const Complex& z0, std::size_t n_max,
                                                   double slack, double bound_threshold = 15.0) {
    require_in_disk(z0);
    std::vector<Complex> orbit{z0};
    std::vector<double> lengths{0.0};
    Complex z = z0;
    for (std::size_t n = 1; n <= n_max; ++n) {
        z = f.apply(z);
        double r = std::abs(z);
        if (r >= 1.0) {
            z *= (1.0 - 1e-15) / r;
        }
        orbit.push_back(z);
        lengths.push_back(poincare_distance(z0, z));
    }
    const double max_len = *std::max_element(lengths.begin(), lengths.end());
    if (max_len <= bound_threshold) return {};

    std::vector<double> angles;
    for (std::size_t i : core::detect_special_indices(lengths, slack))
        if (lengths[i] > bound_threshold) angles.push_back(std::arg(orbit[i]));
    if (angles.empty()) return {};

    // greedy circular clustering with a 0.05 rad merge window
    std::sort(angles.begin(), angles.end());
    std::vector<std::vector<double>> clusters{{angles.front()}};
    for (std::size_t i = 1; i < angles.size(); ++i) {
        if (angles[i] - clusters.back().back() < 0.05)
            clusters.back().push_back(angles[i]);
        else
            clusters.push_back({angles[i]});
    }
    if (clusters.size() > 1 &&
        util::circle_distance(clusters.front().front(), clusters.back().back()) < 0.05) {
        for (double a : clusters.back()) clusters.front().push_back(a - 2.0 * util::kPi);
        clusters.pop_back();
    }
    std::vector<double> out;
    for (const auto& c : clusters) {
        double acc = 0.0;
        for (double a : c) acc += a;
        out.push_back(util::wrap_angle(acc / static_cast<double>(c.size())));
    }
    return out;
}

}  // namespace isodyn::disk
