#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

namespace isodyn::cli {

inline constexpr const char* kVersion = "0.1.0";

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { Csv, Json };

// Fixed-format numeric rendering so reruns are byte-identical.
inline std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

// One output table: a frozen column schema plus string rows.
class Table {
  public:
    explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    void add_row(std::vector<std::string> cells) {
        if (cells.size() != columns_.size()) throw std::logic_error("table: row width mismatch");
        rows_.push_back(std::move(cells));
    }

    std::size_t row_count() const { return rows_.size(); }

    std::string render_csv() const {
        std::string out;
        for (std::size_t c = 0; c < columns_.size(); ++c) {
            out += columns_[c];
            out += c + 1 < columns_.size() ? ',' : '\n';
        }
        for (const auto& row : rows_)
            for (std::size_t c = 0; c < row.size(); ++c) {
                out += row[c];
                out += c + 1 < row.size() ? ',' : '\n';
            }
        return out;
    }

    nlohmann::json render_json() const {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& row : rows_) {
            nlohmann::json r;
            for (std::size_t c = 0; c < row.size(); ++c) r[columns_[c]] = row[c];
            rows.push_back(std::move(r));
        }
        return rows;
    }

    void write(const std::string& path, OutputFormat format) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw ConfigError("cannot open output path: " + path);
        if (format == OutputFormat::Csv)
            out << render_csv();
        else
            out << render_json().dump(2) << '\n';
    }

  private:
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

// Sidecar provenance: config hash, version, wall clock, row count. The data
// file itself stays byte-identical across reruns; the manifest carries the
// timing and is excluded from reproducibility comparisons.
inline void write_manifest(const std::string& out_path, const nlohmann::json& canonical_config,
                           std::uint64_t seed, std::size_t rows, double wall_ms) {
    nlohmann::json m;
    char hash[20];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(fnv1a(canonical_config.dump())));
    m["config_hash"] = hash;
    m["version"] = kVersion;
    m["seed"] = seed;
    m["rows"] = rows;
    m["wall_ms"] = wall_ms;
    std::ofstream out(out_path + ".manifest.json", std::ios::binary);
    if (out) out << m.dump(2) << '\n';
}

}  // namespace isodyn::cli
