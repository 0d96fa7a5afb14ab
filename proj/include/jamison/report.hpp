#pragma once

// Reports: canonical JSON (stable field order, fixed decimal formatting:
// floats as 17-significant-digit strings, rationals as exact p/q strings),
// CSV for tables, a text summary for humans, and a content-addressed cache.
// Timing is text-summary only so identical (spec, seed) runs are
// byte-identical.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>
#include <gmpxx.h>

#include <json.hpp>

#include "jamison/errors.hpp"
#include "jamison/version.hpp"

namespace jamison {

using json = nlohmann::ordered_json;

inline std::string format_float(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string format_rational(const mpq_class& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// FNV-1a 64-bit over the canonical spec text plus the library version.
inline std::string spec_hash(const std::string& canonical_spec) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
    };
    mix(canonical_spec);
    mix(std::string("|version=") + kVersion);
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

struct Report {
    std::string hash;
    std::string task;
    json meta;  // version, enumeration id, budgets, seed
    json body;  // task-specific content
    std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>> tables;
    double elapsed_seconds = 0.0; // text summary only
    bool cache_hit = false;

    std::string canonical_json() const {
        json root;
        root["spec_hash"] = hash;
        root["task"] = task;
        root["meta"] = meta;
        root["body"] = body;
        return root.dump(2) + "\n";
    }

    std::string text_summary() const {
        std::string out;
        out += "task: " + task + "\n";
        out += "spec hash: " + hash + "\n";
        if (cache_hit) out += "cache: hit\n";
        out += "meta: " + meta.dump() + "\n";
        out += "result:\n";
        std::function<void(const json&, const std::string&, int)> walk =
            [&](const json& node, const std::string& key, int indent) {
                std::string pad(static_cast<size_t>(indent) * 2, ' ');
                if (node.is_object()) {
                    if (!key.empty()) out += pad + key + ":\n";
                    for (auto it = node.begin(); it != node.end(); ++it)
                        walk(it.value(), it.key(), indent + (key.empty() ? 0 : 1));
                } else if (node.is_array()) {
                    out += pad + key + ": [" + std::to_string(node.size()) + " entries]\n";
                    size_t shown = 0;
                    for (const auto& item : node) {
                        if (shown++ >= 8) {
                            out += pad + "  ...\n";
                            break;
                        }
                        walk(item, "-", indent + 1);
                    }
                } else {
                    out += pad + key + ": " + (node.is_string() ? node.get<std::string>() : node.dump()) + "\n";
                }
            };
        walk(body, "", 0);
        out += "elapsed_seconds: " + format_float(elapsed_seconds) + "\n";
        return out;
    }
};

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

/// Writes report.json / report.txt / one CSV per table into `out_dir`.
/// `format` is one of json|csv|text|all.
inline std::vector<std::string> emit_report(const Report& report, const std::string& out_dir,
                                            const std::string& format = "all") {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory: " + out_dir);
    std::vector<std::string> written;
    auto write_file = [&](const std::string& name, const std::string& content) {
        fs::path p = fs::path(out_dir) / name;
        std::ofstream f(p, std::ios::binary);
        if (!f) throw IoError("cannot write " + p.string());
        f << content;
        written.push_back(p.string());
    };
    bool all = format == "all";
    if (all || format == "json") write_file("report.json", report.canonical_json());
    if (all || format == "text") write_file("report.txt", report.text_summary());
    if (all || format == "csv") {
        for (const auto& [name, rows] : report.tables) {
            std::string content;
            for (const auto& row : rows) {
                for (size_t i = 0; i < row.size(); ++i)
                    content += (i ? "," : "") + csv_escape(row[i]);
                content += "\n";
            }
            write_file(name + ".csv", content);
        }
    }
    return written;
}

/// Cache directory: JAMISON_CACHE_DIR if set, else disabled (empty).
inline std::string cache_directory() {
    const char* env = std::getenv("JAMISON_CACHE_DIR");
    return env ? env : "";
}

inline std::optional<std::string> cache_lookup(const std::string& hash) {
    std::string dir = cache_directory();
    if (dir.empty()) return std::nullopt;
    std::filesystem::path p = std::filesystem::path(dir) / (hash + ".json");
    std::ifstream f(p, std::ios::binary);
    if (!f) return std::nullopt;
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

inline void cache_store(const std::string& hash, const std::string& canonical_json) {
    std::string dir = cache_directory();
    if (dir.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) return;
    std::filesystem::path p = std::filesystem::path(dir) / (hash + ".json");
    std::ofstream f(p, std::ios::binary);
    if (f) f << canonical_json;
}

} // namespace jamison
