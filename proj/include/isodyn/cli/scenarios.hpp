#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "isodyn/cat0/boundary.hpp"
#include "isodyn/cat0/dynamics.hpp"
#include "isodyn/cat0/isometry.hpp"
#include "isodyn/cat0/star.hpp"
#include "isodyn/cayley/pingpong.hpp"
#include "isodyn/cayley/walk.hpp"
#include "isodyn/cli/output.hpp"
#include "isodyn/disk/iterate.hpp"
#include "isodyn/disk/maps.hpp"
#include "isodyn/hilbert/io.hpp"
#include "isodyn/hilbert/projective.hpp"
#include "isodyn/hilbert/star.hpp"
#include "isodyn/util/parallel.hpp"
#include "isodyn/util/rng.hpp"

namespace isodyn::cli {

struct RunResult {
    Table table;
    nlohmann::json summary;  // printed to stdout
};

// ---- shared option plumbing ----

struct CommonOptions {
    std::uint64_t seed = 1;
    std::string out = "out.csv";
    OutputFormat format = OutputFormat::Csv;
    int workers = 1;
};

inline cat0::Signature parse_model(const std::string& name) {
    if (name == "r2") return cat0::Signature::euclidean(2);
    if (name == "r3") return cat0::Signature::euclidean(3);
    if (name == "h2") return cat0::Signature::h2();
    if (name == "rxh2") return cat0::Signature::product(1);
    throw ConfigError("unknown model: " + name + " (expected r2|r3|h2|rxh2)");
}

inline cat0::VisualBoundaryPoint random_boundary(util::Rng& rng, const cat0::Signature& sig) {
    Eigen::VectorXd dir(sig.euclidean_dim);
    for (int i = 0; i < sig.euclidean_dim; ++i) dir(i) = rng.normal();
    if (!sig.hyperbolic) return cat0::boundary_euclidean(dir);
    if (sig.euclidean_dim == 0) return cat0::boundary_h2(rng.uniform(-util::kPi, util::kPi));
    return cat0::boundary_product(dir, rng.uniform(-util::kPi, util::kPi),
                                  std::asin(std::sqrt(rng.uniform())));
}

// ---- star-check ----

struct StarCheckOptions {
    CommonOptions common;
    std::string model = "r2";
    int pairs = 1000;
    double slack = 0.0;
    double band = 0.0;  // skip pairs within this Tits-angle band around pi/2
};

inline RunResult run_star_check(const StarCheckOptions& opt) {
    const cat0::Signature sig = parse_model(opt.model);
    if (opt.pairs < 1 || opt.pairs > 1000000) throw ConfigError("pairs out of range [1, 1e6]");
    if (opt.slack < 0.0) throw ConfigError("slack must be nonnegative");
    const double scale = cat0::default_star_scale(sig);

    Table table({"pair", "seed", "angle", "analytic", "sampled", "agree"});
    const auto rows = util::ordered_parallel_map<std::vector<std::string>>(
        static_cast<std::size_t>(opt.pairs), opt.common.workers, [&](std::size_t i) {
            const std::uint64_t row_seed = util::derive_seed(opt.common.seed, i);
            util::Rng rng(row_seed);
            cat0::VisualBoundaryPoint a, b;
            double angle;
            do {
                a = random_boundary(rng, sig);
                b = random_boundary(rng, sig);
                angle = cat0::angular_metric(sig, a, b);
            } while (std::fabs(angle - util::kPi / 2.0) <= opt.band);
            const bool analytic = cat0::star_membership_analytic(sig, a, b);
            const bool sampled = cat0::star_membership_sampled(sig, a, b, scale, opt.slack);
            return std::vector<std::string>{std::to_string(i),      std::to_string(row_seed),
                                            fmt_double(angle),      std::to_string(analytic),
                                            std::to_string(sampled), std::to_string(analytic == sampled)};
        });
    std::size_t agree = 0;
    for (const auto& r : rows) {
        if (r[5] == "1") ++agree;
        table.add_row(r);
    }
    nlohmann::json summary{{"scenario", "star-check"},
                           {"model", opt.model},
                           {"pairs", opt.pairs},
                           {"agreement", static_cast<double>(agree) / opt.pairs}};
    return {std::move(table), std::move(summary)};
}

// ---- dynamics ----

struct DynamicsOptions {
    CommonOptions common;
    std::string kind = "hyperbolic";  // hyperbolic | parabolic
    double parameter = 2.0;           // dilation factor or translation step
    int count = 20;                   // boundary points eta
    int steps = 200;
};

inline RunResult run_dynamics(const DynamicsOptions& opt) {
    if (opt.kind != "hyperbolic" && opt.kind != "parabolic")
        throw ConfigError("kind must be hyperbolic|parabolic");
    if (opt.count < 1 || opt.count > 100000) throw ConfigError("count out of range");
    if (opt.steps < 1 || opt.steps > 100000) throw ConfigError("steps out of range");
    const cat0::Signature sig = cat0::Signature::h2();
    const auto g = opt.kind == "hyperbolic"
                       ? cat0::Cat0Isometry::h2(cat0::sl2_dilation(opt.parameter))
                       : cat0::Cat0Isometry::h2(cat0::sl2_translation(opt.parameter));

    cat0::DynamicsOptions dopts;
    dopts.steps = static_cast<std::size_t>(opt.steps);

    Table table({"kind", "eta_index", "seed", "n", "angle_to_star", "dist_estimate"});
    std::size_t violations = 0, successes = 0;
    for (int i = 0; i < opt.count; ++i) {
        const std::uint64_t row_seed = util::derive_seed(opt.common.seed, static_cast<std::size_t>(i));
        util::Rng rng(row_seed);
        // redraw until the precondition holds; the excluded neighborhood is reported otherwise
        cat0::DynamicsRecord rec;
        int attempts = 0;
        do {
            rec = cat0::dynamics_experiment(sig, g, random_boundary(rng, sig), dopts);
        } while (!rec.precondition_ok && ++attempts < 64);
        if (!rec.precondition_ok) {
            ++violations;
            continue;
        }
        if (rec.success) ++successes;
        for (std::size_t n = 0; n < rec.distance_trace.size(); ++n)
            table.add_row({opt.kind, std::to_string(i), std::to_string(row_seed), std::to_string(n + 1),
                           fmt_double(rec.distance_trace[n]), fmt_double(rec.orbit_distance[n])});
    }
    nlohmann::json summary{{"scenario", "dynamics"},
                           {"kind", opt.kind},
                           {"count", opt.count},
                           {"successes", successes},
                           {"precondition_violations", violations}};
    return {std::move(table), std::move(summary)};
}

// ---- hilbert polytopes ----

inline hilbert::Polytope parse_polytope(const std::string& name) {
    if (name == "square") return hilbert::make_square();
    if (name == "triangle") return hilbert::make_triangle();
    if (name == "simplex3") return hilbert::make_simplex(3);
    if (name == "cube") return hilbert::make_cube();
    if (name == "pentagon") return hilbert::make_regular_polygon(5);
    if (name == "pyramid") return hilbert::make_square_pyramid();
    if (name == "prism") return hilbert::make_prism();
    if (name == "quad") return hilbert::make_quadrilateral();
    if (name.size() > 5 && name.substr(name.size() - 5) == ".json") {
        std::ifstream in(name);
        if (!in) throw ConfigError("cannot read polytope file: " + name);
        nlohmann::json j;
        in >> j;
        return hilbert::polytope_from_json(j);
    }
    throw ConfigError("unknown polytope: " + name);
}

struct HilbertStarOptions {
    CommonOptions common;
    std::string polytope = "square";
    std::vector<double> slacks{0.0, 1.0, 2.0};
};

inline RunResult run_hilbert_star(const HilbertStarOptions& opt) {
    const hilbert::Polytope p = parse_polytope(opt.polytope);
    Table table({"polytope", "slack", "face_i", "face_j", "combinatorial", "sampled", "agree"});
    std::size_t disagreements = 0;
    const int n = static_cast<int>(p.faces().size());
    for (double slack : opt.slacks) {
        if (slack < 0.0) throw ConfigError("slack must be nonnegative");
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const auto xi = p.face_representative(i);
                const auto eta = p.face_representative(j);
                const bool comb = hilbert::star_contains(p, xi, eta);
                const bool samp = hilbert::star_membership_sampled(p, xi, eta, 5.0, 10.0, slack);
                if (comb != samp) ++disagreements;
                table.add_row({opt.polytope, fmt_double(slack), std::to_string(i), std::to_string(j),
                               std::to_string(comb), std::to_string(samp), std::to_string(comb == samp)});
            }
    }
    nlohmann::json summary{{"scenario", "hilbert-star"},
                           {"polytope", opt.polytope},
                           {"pairs", table.row_count()},
                           {"disagreements", disagreements}};
    return {std::move(table), std::move(summary)};
}

struct HilbertDiameterOptions {
    CommonOptions common;
    std::vector<std::string> corpus{"triangle", "square", "simplex3", "cube", "pentagon", "pyramid", "prism", "quad"};
};

// known one-parameter automorphism families with unbounded orbits
inline bool certify_unbounded(const std::string& name, const hilbert::Polytope& p) {
    try {
        if (name == "triangle" || name == "simplex3") {
            Eigen::VectorXd mult(p.dim() + 1);
            for (int i = 0; i <= p.dim(); ++i) mult(i) = 1.0 + i;
            const auto g = hilbert::ProjectiveMap::simplex_dilation(p, mult);
            return hilbert::automorphism_orbit_unbounded(p, g, p.centroid(), 200, 10.0);
        }
        if (name == "pyramid") {
            Eigen::MatrixXd m = Eigen::MatrixXd::Identity(4, 4);
            m(3, 2) = -1.0;
            m(3, 3) = 2.0;
            return hilbert::automorphism_orbit_unbounded(p, hilbert::ProjectiveMap(m), p.centroid(), 200,
                                                         10.0);
        }
    } catch (const std::exception&) {
        return false;
    }
    return false;
}

inline RunResult run_hilbert_diameter(const HilbertDiameterOptions& opt) {
    Table table({"polytope", "diameter", "certified_unbounded", "within_bound"});
    bool all_ok = true;
    for (const auto& name : opt.corpus) {
        const hilbert::Polytope p = parse_polytope(name);
        const int diam = hilbert::simplicial_diameter(p);
        const bool cert = certify_unbounded(name, p);
        const bool ok = !cert || diam <= 3;
        all_ok = all_ok && ok;
        table.add_row({name, std::to_string(diam), std::to_string(cert), std::to_string(ok)});
    }
    nlohmann::json summary{{"scenario", "hilbert-diameter"}, {"all_within_bound", all_ok}};
    return {std::move(table), std::move(summary)};
}

// ---- groups ----

struct GroupSpec {
    std::string type;  // free | abelian | matrix
    int rank = 2;
    std::vector<cayley::IntMatrix> generators;
};

inline GroupSpec parse_group(const std::string& name) {
    GroupSpec spec;
    if (name == "free2") {
        spec.type = "free";
        spec.rank = 2;
        return spec;
    }
    if (name == "abelian2") {
        spec.type = "abelian";
        spec.rank = 2;
        return spec;
    }
    if (name == "sanov") {
        spec.type = "matrix";
        auto mk = [](std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
            cayley::IntMatrix m;
            m.n = 2;
            m.at(0, 0) = a;
            m.at(0, 1) = b;
            m.at(1, 0) = c;
            m.at(1, 1) = d;
            return m;
        };
        spec.generators = {mk(1, 2, 0, 1), mk(1, 0, 2, 1)};
        return spec;
    }
    if (name.size() > 5 && name.substr(name.size() - 5) == ".json") {
        std::ifstream in(name);
        if (!in) throw ConfigError("cannot read group file: " + name);
        nlohmann::json j;
        in >> j;
        const std::string type = j.at("type").get<std::string>();
        if (type == "free") {
            spec.type = "free";
            spec.rank = j.at("rank").get<int>();
        } else if (type == "abelian") {
            spec.type = "abelian";
            spec.rank = j.at("dim").get<int>();
        } else if (type == "matrix") {
            spec.type = "matrix";
            for (const auto& gm : j.at("generators")) {
                cayley::IntMatrix m;
                m.n = static_cast<int>(gm.size());
                for (int r = 0; r < m.n; ++r)
                    for (int c = 0; c < m.n; ++c) m.at(r, c) = gm.at(r).at(c).get<std::int64_t>();
                spec.generators.push_back(m);
            }
        } else {
            throw ConfigError("unknown group type: " + type);
        }
        return spec;
    }
    throw ConfigError("unknown group: " + name + " (expected free2|abelian2|sanov|file.json)");
}

struct PingPongOptions {
    CommonOptions common;
    std::string group = "free2";
    int radius = 6;
    int g_index = 0;  // indices into the generator list (as ordered pairs g, h)
    int h_index = 1;
};

inline RunResult run_pingpong(const PingPongOptions& opt) {
    if (opt.radius < 2 || opt.radius > 12) throw ConfigError("radius out of range [2, 12]");
    const GroupSpec spec = parse_group(opt.group);
    Table table({"group", "radius", "verdict", "witness", "ball_size", "witness_verified"});
    std::string verdict, witness_str;
    std::size_t ball = 0;
    bool verified = false;

    auto render = [&](auto&& group, auto&& g, auto&& h, auto&& to_string_fn) {
        const auto rep = cayley::pingpong_check(group, g, h, opt.radius);
        ball = rep.ball_size;
        switch (rep.verdict) {
            case cayley::PingPongVerdict::CertifiedOnBall:
                verdict = "certified";
                break;
            case cayley::PingPongVerdict::FailsWithWitness:
                verdict = "fails";
                break;
            case cayley::PingPongVerdict::Inconclusive:
                verdict = "inconclusive";
                break;
        }
        if (rep.witness) {
            witness_str = to_string_fn(*rep.witness);
            verified = cayley::verify_pingpong_witness(group, g, h, *rep.witness);
        }
    };

    if (spec.type == "free") {
        cayley::FreeGroup group(spec.rank);
        render(group, group.letter(1 + opt.g_index), group.letter(1 + opt.h_index),
               [](const cayley::FreeGroup::Element& w) {
                   std::string s;
                   for (auto l : w) s += (l > 0 ? "x" : "X") + std::to_string(std::abs(l));
                   return s.empty() ? std::string("e") : s;
               });
    } else if (spec.type == "abelian") {
        cayley::FreeAbelian group(spec.rank);
        auto unit = [&](int i) {
            auto e = group.identity();
            e[static_cast<std::size_t>(i)] = 1;
            return e;
        };
        render(group, unit(opt.g_index), unit(opt.h_index), [](const cayley::FreeAbelian::Element& v) {
            std::string s = "(";
            for (std::size_t i = 0; i < v.size(); ++i) s += std::to_string(v[i]) + (i + 1 < v.size() ? "," : ")");
            return s;
        });
    } else {
        cayley::MatrixGroup group(spec.generators);
        if (opt.g_index >= static_cast<int>(spec.generators.size()) ||
            opt.h_index >= static_cast<int>(spec.generators.size()))
            throw ConfigError("generator index out of range");
        render(group, spec.generators[static_cast<std::size_t>(opt.g_index)],
               spec.generators[static_cast<std::size_t>(opt.h_index)], [](const cayley::IntMatrix& m) {
                   std::string s = "[";
                   for (int r = 0; r < m.n; ++r)
                       for (int c = 0; c < m.n; ++c)
                           s += std::to_string(m.at(r, c)) + (r == m.n - 1 && c == m.n - 1 ? "]" : " ");
                   return s;
               });
    }
    table.add_row({opt.group, std::to_string(opt.radius), verdict, witness_str, std::to_string(ball),
                   std::to_string(verified)});
    nlohmann::json summary{{"scenario", "pingpong"}, {"group", opt.group}, {"verdict", verdict}};
    if (!witness_str.empty()) summary["witness"] = witness_str;
    return {std::move(table), std::move(summary)};
}

struct WalkOptions {
    CommonOptions common;
    std::string group = "free2";
    int steps = 2000;
    int seeds = 200;
    std::int64_t slack = 2;
    int burn_in = 10;
};

inline RunResult run_walk(const WalkOptions& opt) {
    if (opt.steps < 20 || opt.steps > 200000) throw ConfigError("steps out of range [20, 2e5]");
    if (opt.seeds < 1 || opt.seeds > 100000) throw ConfigError("seeds out of range");
    if (opt.slack < 0) throw ConfigError("slack must be nonnegative");
    if (opt.burn_in < 0 || opt.burn_in + 10 > opt.steps) throw ConfigError("burn-in out of range");
    const GroupSpec spec = parse_group(opt.group);
    if (spec.type == "matrix")
        throw ConfigError("walk scenarios need exact word lengths (free2 or abelian2)");

    struct SeedResult {
        std::vector<std::string> rows_flat;  // 5 cells per row
        double speed = 0.0;
        bool witness_ok = false;
        bool common_full = false;
    };

    auto run_for = [&](auto&& group) {
        return util::ordered_parallel_map<SeedResult>(
            static_cast<std::size_t>(opt.seeds), opt.common.workers, [&](std::size_t s) {
                const std::uint64_t seed = util::derive_seed(opt.common.seed, s);
                const auto rec = cayley::random_walk(group, static_cast<std::size_t>(opt.steps), seed);
                const auto summary = cayley::halfspace_intersection_experiment(
                    group, rec, opt.slack, static_cast<std::size_t>(opt.burn_in));
                SeedResult res;
                res.speed = cayley::escape_speed(rec);
                res.witness_ok = summary.best_covers_all && summary.best_index > static_cast<std::size_t>(opt.burn_in) + 1;
                res.common_full = summary.common_witness_full;
                std::vector<bool> special(rec.elements.size(), false);
                for (std::size_t i : summary.special_indices) special[i] = true;
                res.rows_flat.reserve(rec.elements.size() * 5);
                for (std::size_t n = 0; n < rec.elements.size(); ++n) {
                    res.rows_flat.push_back(std::to_string(seed));
                    res.rows_flat.push_back(std::to_string(n));
                    res.rows_flat.push_back(std::to_string(rec.lengths[n]));
                    res.rows_flat.push_back(special[n] ? "1" : "0");
                    res.rows_flat.push_back(special[n] && summary.best_covers_all && n == summary.best_index
                                                ? "1"
                                                : "0");
                }
                return res;
            });
    };

    std::vector<SeedResult> results;
    if (spec.type == "free")
        results = run_for(cayley::FreeGroup(spec.rank));
    else
        results = run_for(cayley::FreeAbelian(spec.rank));

    Table table({"seed", "n", "a_n", "is_special", "witness_ok"});
    double speed_acc = 0.0;
    int with_witness = 0, with_common = 0;
    for (const auto& r : results) {
        speed_acc += r.speed;
        with_witness += r.witness_ok ? 1 : 0;
        with_common += r.common_full ? 1 : 0;
        for (std::size_t i = 0; i < r.rows_flat.size(); i += 5)
            table.add_row({r.rows_flat[i], r.rows_flat[i + 1], r.rows_flat[i + 2], r.rows_flat[i + 3],
                           r.rows_flat[i + 4]});
    }
    nlohmann::json summary{{"scenario", "walk"},
                           {"group", opt.group},
                           {"steps", opt.steps},
                           {"seeds", opt.seeds},
                           {"mean_speed", speed_acc / opt.seeds},
                           {"fraction_with_witness", static_cast<double>(with_witness) / opt.seeds},
                           {"fraction_with_common_witness", static_cast<double>(with_common) / opt.seeds}};
    return {std::move(table), std::move(summary)};
}

// ---- denjoy-wolff ----

struct DenjoyWolffOptions {
    CommonOptions common;
    std::string maps = "builtin";  // builtin | file.json with a list of map specs
    int n_max = 10000;
    int starts = 5;
};

inline disk::DiskMap map_from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    auto cx = [](const nlohmann::json& v) {
        return disk::Complex(v.at(0).get<double>(), v.at(1).get<double>());
    };
    if (kind == "moebius") {
        disk::MoebiusDisk m;
        m.a = cx(j.at("a"));
        m.b = cx(j.at("b"));
        m.c = cx(j.at("c"));
        m.d = cx(j.at("d"));
        return disk::DiskMap::moebius(m);
    }
    if (kind == "blaschke") {
        std::vector<disk::Complex> zeros;
        for (const auto& z : j.at("zeros")) zeros.push_back(cx(z));
        disk::Complex factor(1.0, 0.0);
        if (j.contains("factor")) factor = cx(j.at("factor"));
        return disk::DiskMap::blaschke(std::move(zeros), factor);
    }
    if (kind == "poly") {
        std::vector<disk::Complex> coeffs;
        for (const auto& c : j.at("coefficients")) coeffs.push_back(cx(c));
        return disk::DiskMap::polynomial(std::move(coeffs));
    }
    throw ConfigError("unknown map kind: " + kind);
}

inline RunResult run_denjoy_wolff(const DenjoyWolffOptions& opt) {
    if (opt.n_max < 100 || opt.n_max > 1000000) throw ConfigError("n_max out of range [100, 1e6]");
    if (opt.starts < 1 || opt.starts > 64) throw ConfigError("starts out of range");
    std::vector<std::pair<std::string, disk::DiskMap>> maps;
    if (opt.maps == "builtin") {
        maps.emplace_back("hyperbolic_auto", disk::hyperbolic_automorphism(1.0));
        maps.emplace_back("parabolic_auto", disk::parabolic_automorphism(1.0));
        maps.emplace_back("half_contraction",
                          disk::DiskMap::polynomial({disk::Complex(0, 0), disk::Complex(0.5, 0)}));
        maps.emplace_back("elliptic_rotation", disk::elliptic_rotation(2.0 * util::kPi * 0.6180339887));
    } else {
        std::ifstream in(opt.maps);
        if (!in) throw ConfigError("cannot read map file: " + opt.maps);
        nlohmann::json j;
        in >> j;
        int index = 0;
        for (const auto& spec : j) maps.emplace_back("map" + std::to_string(index++), map_from_json(spec));
    }

    disk::IterationThresholds th;
    th.n_max = static_cast<std::size_t>(opt.n_max);

    Table table({"map", "outcome", "theta", "boundary_distance", "tail_spread", "starts_agree",
                 "characteristic_angle"});
    for (const auto& [name, f] : maps) {
        const auto v = disk::iterate_classify(f, disk::Complex(0.1, 0.2), th, opt.starts, opt.common.seed);
        std::string outcome = v.outcome == disk::OrbitOutcome::BoundedOrbit ? "bounded"
                              : v.outcome == disk::OrbitOutcome::ConvergesTo ? "converges"
                                                                             : "indeterminate";
        const auto charset =
            disk::characteristic_set_disk(f, disk::Complex(0.1, 0.2), th.n_max, 2.0);
        table.add_row({name, outcome,
                       v.outcome == disk::OrbitOutcome::ConvergesTo ? fmt_double(v.theta) : "",
                       fmt_double(v.final_boundary_distance), fmt_double(v.tail_angle_spread),
                       std::to_string(v.starts_agree),
                       charset.size() == 1 ? fmt_double(charset.front()) : ""});
    }
    nlohmann::json summary{{"scenario", "denjoy-wolff"}, {"maps", maps.size()}};
    return {std::move(table), std::move(summary)};
}

}  // namespace isodyn::cli
