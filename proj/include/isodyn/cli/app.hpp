#pragma once

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "isodyn/cli/scenarios.hpp"

namespace isodyn::cli {

namespace detail {

inline const std::set<std::string> kCommonKeys{"seed", "out", "format", "workers"};

inline void check_keys(const nlohmann::json& cfg, const std::set<std::string>& allowed) {
    for (const auto& [key, value] : cfg.items()) {
        (void)value;
        if (!kCommonKeys.count(key) && !allowed.count(key))
            throw ConfigError("unknown config key: " + key);
    }
}

inline void apply_common(const nlohmann::json& cfg, CommonOptions& common) {
    if (cfg.contains("seed")) common.seed = cfg.at("seed").get<std::uint64_t>();
    if (cfg.contains("out")) common.out = cfg.at("out").get<std::string>();
    if (cfg.contains("workers")) common.workers = cfg.at("workers").get<int>();
    if (cfg.contains("format")) {
        const std::string f = cfg.at("format").get<std::string>();
        if (f == "csv")
            common.format = OutputFormat::Csv;
        else if (f == "json")
            common.format = OutputFormat::Json;
        else
            throw ConfigError("format must be csv|json");
    }
}

inline nlohmann::json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file: " + path);
    nlohmann::json cfg;
    try {
        in >> cfg;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!cfg.is_object()) throw ConfigError("config must be a JSON object");
    return cfg;
}

inline std::vector<double> parse_double_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw ConfigError("bad numeric list entry: " + tok);
        }
    }
    if (out.empty()) throw ConfigError("empty numeric list");
    return out;
}

inline std::vector<std::string> parse_string_list(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(tok);
    return out;
}

struct FormatFlag {
    std::string value = "csv";
    void apply(CommonOptions& common) const {
        if (value == "csv")
            common.format = OutputFormat::Csv;
        else if (value == "json")
            common.format = OutputFormat::Json;
        else
            throw ConfigError("format must be csv|json");
    }
};

}  // namespace detail

// Runs a scenario to completion: writes the data file and the manifest,
// prints the summary JSON on stdout. Exit codes: 0 success, 2 config error,
// 3 precondition violation (domain errors from the scenario itself).
inline int run_cli(std::vector<std::string> args) {
    CLI::App app{"halfspace and star-at-infinity experiments on metric-space models"};
    app.require_subcommand(1);

    // all subcommands share these
    struct Shared {
        std::string config;
        detail::FormatFlag format;
    };

    StarCheckOptions star_opt;
    DynamicsOptions dyn_opt;
    HilbertStarOptions hstar_opt;
    HilbertDiameterOptions hdiam_opt;
    PingPongOptions pp_opt;
    WalkOptions walk_opt;
    DenjoyWolffOptions dw_opt;

    std::string hstar_slacks = "0,1,2";
    std::string hdiam_corpus = "builtin";

    struct Cmd {
        CLI::App* sub = nullptr;
        CommonOptions* common = nullptr;
        Shared shared;
        std::set<std::string> keys;
        std::function<void(const nlohmann::json&)> apply_config;
        std::function<RunResult()> run;
        std::function<nlohmann::json()> canonical;
    };
    std::vector<Cmd> cmds(7);

    auto add_common = [&](Cmd& cmd, CLI::App* sub, CommonOptions& common) {
        cmd.sub = sub;
        cmd.common = &common;
        sub->add_option("--config", cmd.shared.config, "JSON config file; flags override its values");
        sub->add_option("--seed", common.seed, "base RNG seed");
        sub->add_option("--out", common.out, "output data file");
        sub->add_option("--format", cmd.shared.format.value, "csv|json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--workers", common.workers, "worker threads (env ISODYN_WORKERS as fallback)");
    };

    // star-check
    {
        Cmd& cmd = cmds[0];
        auto* sub = app.add_subcommand("star-check", "analytic vs halfspace-sampled star membership");
        add_common(cmd, sub, star_opt.common);
        sub->add_option("--model", star_opt.model, "r2|r3|rxh2|h2");
        sub->add_option("--pairs", star_opt.pairs, "number of boundary pairs");
        sub->add_option("--slack", star_opt.slack, "halfspace slack C");
        sub->add_option("--band", star_opt.band, "skip pairs within this angle band around pi/2");
        cmd.keys = {"model", "pairs", "slack", "band"};
        cmd.apply_config = [&](const nlohmann::json& c) {
            if (c.contains("model")) star_opt.model = c.at("model").get<std::string>();
            if (c.contains("pairs")) star_opt.pairs = c.at("pairs").get<int>();
            if (c.contains("slack")) star_opt.slack = c.at("slack").get<double>();
            if (c.contains("band")) star_opt.band = c.at("band").get<double>();
        };
        cmd.run = [&] { return run_star_check(star_opt); };
        cmd.canonical = [&] {
            return nlohmann::json{{"scenario", "star-check"}, {"model", star_opt.model},
                                  {"pairs", star_opt.pairs},  {"slack", star_opt.slack},
                                  {"band", star_opt.band},    {"seed", star_opt.common.seed}};
        };
    }

    // dynamics
    {
        Cmd& cmd = cmds[1];
        auto* sub = app.add_subcommand("dynamics", "boundary convergence of iterated isometries of H2");
        add_common(cmd, sub, dyn_opt.common);
        sub->add_option("--kind", dyn_opt.kind, "hyperbolic|parabolic");
        sub->add_option("--parameter", dyn_opt.parameter, "dilation factor / translation step");
        sub->add_option("--count", dyn_opt.count, "number of boundary starting points");
        sub->add_option("--steps", dyn_opt.steps, "iterations per starting point");
        cmd.keys = {"kind", "parameter", "count", "steps"};
        cmd.apply_config = [&](const nlohmann::json& c) {
            if (c.contains("kind")) dyn_opt.kind = c.at("kind").get<std::string>();
            if (c.contains("parameter")) dyn_opt.parameter = c.at("parameter").get<double>();
            if (c.contains("count")) dyn_opt.count = c.at("count").get<int>();
            if (c.contains("steps")) dyn_opt.steps = c.at("steps").get<int>();
        };
        cmd.run = [&] { return run_dynamics(dyn_opt); };
        cmd.canonical = [&] {
            return nlohmann::json{{"scenario", "dynamics"},   {"kind", dyn_opt.kind},
                                  {"parameter", dyn_opt.parameter}, {"count", dyn_opt.count},
                                  {"steps", dyn_opt.steps},   {"seed", dyn_opt.common.seed}};
        };
    }

    // hilbert-star
    {
        Cmd& cmd = cmds[2];
        auto* sub = app.add_subcommand("hilbert-star", "combinatorial vs sampled Hilbert stars");
        add_common(cmd, sub, hstar_opt.common);
        sub->add_option("--polytope", hstar_opt.polytope, "square|triangle|...|file.json");
        sub->add_option("--slacks", hstar_slacks, "comma list of slack values");
        cmd.keys = {"polytope", "slacks"};
        cmd.apply_config = [&](const nlohmann::json& c) {
            if (c.contains("polytope")) hstar_opt.polytope = c.at("polytope").get<std::string>();
            if (c.contains("slacks")) hstar_opt.slacks = c.at("slacks").get<std::vector<double>>();
        };
        cmd.run = [&] {
            hstar_opt.slacks = detail::parse_double_list(hstar_slacks);
            return run_hilbert_star(hstar_opt);
        };
        cmd.canonical = [&] {
            return nlohmann::json{{"scenario", "hilbert-star"},
                                  {"polytope", hstar_opt.polytope},
                                  {"slacks", hstar_slacks},
                                  {"seed", hstar_opt.common.seed}};
        };
    }

    // hilbert-diameter
    {
        Cmd& cmd = cmds[3];
        auto* sub = app.add_subcommand("hilbert-diameter", "simplicial diameters over a polytope corpus");
        add_common(cmd, sub, hdiam_opt.common);
        sub->add_option("--corpus", hdiam_corpus, "builtin or comma list of polytopes");
        cmd.keys = {"corpus"};
        cmd.apply_config = [&](const nlohmann::json& c) {
            if (c.contains("corpus")) hdiam_corpus = c.at("corpus").get<std::string>();
        };
        cmd.run = [&] {
            if (hdiam_corpus != "builtin") hdiam_opt.corpus = detail::parse_string_list(hdiam_corpus);
            return run_hilbert_diameter(hdiam_opt);
        };
        cmd.canonical = [&] {
            return nlohmann::json{{"scenario", "hilbert-diameter"}, {"corpus", hdiam_corpus}};
        };
    }

    // pingpong
    {
        Cmd& cmd = cmds[4];
        auto* sub = app.add_subcommand("pingpong", "ball-local freeness certificates");
        add_common(cmd, sub, pp_opt.common);
        sub->add_option("--group", pp_opt.group, "free2|abelian2|sanov|file.json");
        sub->add_option("--radius", pp_opt.radius, "ball radius");
        sub->add_option("--g-index", pp_opt.g_index, "index of the first generator");
        sub->add_option("--h-index", pp_opt.h_index, "index of the second generator");
        cmd.keys = {"group", "radius", "g_index", "h_index"};
        cmd.apply_config = [&](const nlohmann::json& c) {
            if (c.contains("group")) pp_opt.group = c.at("group").get<std::string>();
            if (c.contains("radius")) pp_opt.radius = c.at("radius").get<int>();
            if (c.contains("g_index")) pp_opt.g_index = c.at("g_index").get<int>();
            if (c.contains("h_index")) pp_opt.h_index = c.at("h_index").get<int>();
        };
        cmd.run = [&] { return run_pingpong(pp_opt); };
        cmd.canonical = [&] {
            return nlohmann::json{{"scenario", "pingpong"},
                                  {"group", pp_opt.group},
                                  {"radius", pp_opt.radius},
                                  {"g_index", pp_opt.g_index},
                                  {"h_index", pp_opt.h_index}};
        };
    }

    // walk
    {
        Cmd& cmd = cmds[5];
        auto* sub = app.add_subcommand("walk", "random-walk speed, special indices, halfspace witnesses");
        add_common(cmd, sub, walk_opt.common);
        sub->add_option("--group", walk_opt.group, "free2|abelian2");
        sub->add_option("--steps", walk_opt.steps, "walk length");
        sub->add_option("--seeds", walk_opt.seeds, "number of seeds");
        sub->add_option("--slack", walk_opt.slack, "halfspace slack C");
        sub->add_option("--burn-in", walk_opt.burn_in, "index burn-in K");
        cmd.keys = {"group", "steps", "seeds", "slack", "burn_in"};
        cmd.apply_config = [&](const nlohmann::json& c) {
            if (c.contains("group")) walk_opt.group = c.at("group").get<std::string>();
            if (c.contains("steps")) walk_opt.steps = c.at("steps").get<int>();
            if (c.contains("seeds")) walk_opt.seeds = c.at("seeds").get<int>();
            if (c.contains("slack")) walk_opt.slack = c.at("slack").get<std::int64_t>();
            if (c.contains("burn_in")) walk_opt.burn_in = c.at("burn_in").get<int>();
        };
        cmd.run = [&] { return run_walk(walk_opt); };
        cmd.canonical = [&] {
            return nlohmann::json{{"scenario", "walk"},   {"group", walk_opt.group},
                                  {"steps", walk_opt.steps}, {"seeds", walk_opt.seeds},
                                  {"slack", walk_opt.slack}, {"burn_in", walk_opt.burn_in},
                                  {"seed", walk_opt.common.seed}};
        };
    }

    // denjoy-wolff
    {
        Cmd& cmd = cmds[6];
        auto* sub = app.add_subcommand("denjoy-wolff", "orbit classification of disk self-maps");
        add_common(cmd, sub, dw_opt.common);
        sub->add_option("--maps", dw_opt.maps, "builtin or a JSON file with map specs");
        sub->add_option("--n-max", dw_opt.n_max, "iteration budget");
        sub->add_option("--starts", dw_opt.starts, "independent starting points");
        cmd.keys = {"maps", "n_max", "starts"};
        cmd.apply_config = [&](const nlohmann::json& c) {
            if (c.contains("maps")) dw_opt.maps = c.at("maps").get<std::string>();
            if (c.contains("n_max")) dw_opt.n_max = c.at("n_max").get<int>();
            if (c.contains("starts")) dw_opt.starts = c.at("starts").get<int>();
        };
        cmd.run = [&] { return run_denjoy_wolff(dw_opt); };
        cmd.canonical = [&] {
            return nlohmann::json{{"scenario", "denjoy-wolff"},
                                  {"maps", dw_opt.maps},
                                  {"n_max", dw_opt.n_max},
                                  {"starts", dw_opt.starts},
                                  {"seed", dw_opt.common.seed}};
        };
    }

    try {
        // env fallback before config and flags
        if (const char* env = std::getenv("ISODYN_WORKERS")) {
            const int w = std::atoi(env);
            if (w >= 1)
                for (auto& cmd : cmds) cmd.common->workers = w;
        }

        // pre-pass: apply the config file so explicit flags can override it
        for (std::size_t i = 0; i + 1 < args.size(); ++i) {
            if (args[i] == "--config") {
                // locate the subcommand to know the allowed keys
                Cmd* active = nullptr;
                for (auto& cmd : cmds)
                    if (!args.empty() && cmd.sub->get_name() == args[0]) active = &cmd;
                if (!active) break;
                const nlohmann::json cfg = detail::load_config(args[i + 1]);
                detail::check_keys(cfg, active->keys);
                detail::apply_common(cfg, *active->common);
                active->apply_config(cfg);
                break;
            }
        }

        std::vector<const char*> argv{"isodyn"};
        for (const auto& a : args) argv.push_back(a.c_str());
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::CallForHelp& e) {
            std::cout << app.help() << std::flush;
            return 0;
        } catch (const CLI::ParseError& e) {
            throw ConfigError(e.what());
        }

        for (auto& cmd : cmds) {
            if (!cmd.sub->parsed()) continue;
            cmd.shared.format.apply(*cmd.common);
            if (cmd.common->workers < 1 || cmd.common->workers > 256)
                throw ConfigError("workers out of range [1, 256]");
            const auto t0 = std::chrono::steady_clock::now();
            RunResult result = cmd.run();
            const double wall_ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            result.table.write(cmd.common->out, cmd.common->format);
            write_manifest(cmd.common->out, cmd.canonical(), cmd.common->seed, result.table.row_count(),
                           wall_ms);
            std::cout << result.summary.dump(2) << std::endl;
            return 0;
        }
        throw ConfigError("no subcommand given");
    } catch (const ConfigError& e) {
        std::cerr << nlohmann::json{{"error", e.what()}, {"exit", 2}}.dump() << std::endl;
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << nlohmann::json{{"error", e.what()}, {"exit", 3}}.dump() << std::endl;
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << nlohmann::json{{"error", e.what()}, {"exit", 3}}.dump() << std::endl;
        return 3;
    } catch (const std::exception& e) {
        std::cerr << nlohmann::json{{"error", e.what()}, {"exit", 1}}.dump() << std::endl;
        return 1;
    }
}

}  // namespace isodyn::cli
