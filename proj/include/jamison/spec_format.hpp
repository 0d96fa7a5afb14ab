#pragma once

// Problem spec files: UTF-8 text, one `dotted.key = value` per line, `#`
// comments. Serialization is canonical (fixed key order) and round-trips
// through the parser, which is what the report cache hashes.

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>
#include <gmpxx.h>

#include "jamison/criterion.hpp"
#include "jamison/errors.hpp"
#include "jamison/group.hpp"
#include "jamison/sequence.hpp"

namespace jamison {

enum class Task { Verdict, Epsilon, Weight, Repnorm, Tree, Oracle };

inline std::string task_name(Task t) {
    switch (t) {
        case Task::Verdict: return "verdict";
        case Task::Epsilon: return "epsilon";
        case Task::Weight: return "weight";
        case Task::Repnorm: return "repnorm";
        case Task::Tree: return "tree";
        case Task::Oracle: return "oracle";
    }
    return "verdict";
}

struct PolicyBundle {
    VerdictPolicy verdict;
    long weight_terms = 30;
    long weight_atoms = 0;  // 0 = same as terms
    long weight_window = 0; // 0 = derived from terms
    long weight_scale_bits = 256;
    long levels_j = 6;
    int tree_depth = 4;
    mpz_class modulus = 0; // oracle task
    long norm_indices = 8; // translation norms k <= this
    long norm_span = 200;  // over h_m, m <= this
    long norm_chars = 50;  // repnorm sample size
};

struct ProblemSpec {
    std::string name;
    GroupDescriptor group;
    SequenceSpec sequence;
    Task task = Task::Verdict;
    PolicyBundle policy;
    std::uint64_t seed = 0;
};

namespace detail {

inline std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

inline mpz_class parse_int(const std::string& v, const std::string& field, int line) {
    try {
        if (v.empty()) throw std::invalid_argument("empty");
        return mpz_class(v);
    } catch (const std::exception&) {
        throw ParseError(line, field + ": not an integer: '" + v + "'");
    }
}

inline mpq_class parse_rational(const std::string& v, const std::string& field, int line) {
    try {
        if (v.find('/') != std::string::npos) {
            mpq_class q(v);
            q.canonicalize();
            return q;
        }
        if (v.find('.') != std::string::npos || v.find('e') != std::string::npos) {
            // decimal literal: exact via scaling
            double d = std::stod(v);
            mpq_class q(d);
            return q;
        }
        return mpq_class(mpz_class(v));
    } catch (const std::exception&) {
        throw ParseError(line, field + ": not a rational: '" + v + "'");
    }
}

/// "(a,b|t1,t2)" with the torsion block optional
inline GroupElement parse_element(const GroupDescriptor& g, const std::string& text,
                                  const std::string& field, int line) {
    std::string s = trim(text);
    if (s.size() < 2 || s.front() != '(' || s.back() != ')')
        throw ParseError(line, field + ": element must look like (a,b|t1,t2)");
    s = s.substr(1, s.size() - 2);
    std::string free_part = s, tors_part;
    if (auto bar = s.find('|'); bar != std::string::npos) {
        free_part = s.substr(0, bar);
        tors_part = s.substr(bar + 1);
    }
    std::map<int, mpz_class> f;
    if (!trim(free_part).empty()) {
        auto items = split(free_part, ',');
        for (size_t i = 0; i < items.size(); ++i)
            if (!items[i].empty() && items[i] != "0")
                f[static_cast<int>(i)] = parse_int(items[i], field, line);
    }
    std::vector<mpz_class> t;
    if (!trim(tors_part).empty())
        for (const auto& item : split(tors_part, ','))
            t.push_back(parse_int(item, field, line));
    try {
        return g.make(std::move(f), std::move(t));
    } catch (const ValidationError& e) {
        throw ParseError(line, field + ": " + e.what());
    }
}

} // namespace detail

inline ProblemSpec parse_spec_text(const std::string& text) {
    std::map<std::string, std::pair<std::string, int>> kv;
    {
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
            line = detail::trim(line);
            if (line.empty()) continue;
            auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ParseError(lineno, "expected key = value");
            std::string key = detail::trim(line.substr(0, eq));
            std::string value = detail::trim(line.substr(eq + 1));
            if (key.empty()) throw ParseError(lineno, "empty key");
            if (kv.count(key)) throw ParseError(lineno, "duplicate key '" + key + "'");
            kv[key] = {value, lineno};
        }
    }
    auto take = [&](const std::string& key) -> std::optional<std::pair<std::string, int>> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        auto out = it->second;
        kv.erase(it);
        return out;
    };

    ProblemSpec spec;
    if (auto v = take("name")) spec.name = v->first;

    // group
    long free_rank = 0;
    if (auto v = take("group.free_rank")) {
        if (v->first == "countable" || v->first == "infinity")
            free_rank = GroupDescriptor::kCountable;
        else
            free_rank = detail::parse_int(v->first, "group.free_rank", v->second).get_si();
    } else {
        throw ValidationError("group.free_rank", "missing");
    }
    std::vector<long> torsion;
    if (auto v = take("group.torsion"))
        for (const auto& item : detail::split(v->first, ','))
            if (!item.empty())
                torsion.push_back(detail::parse_int(item, "group.torsion", v->second).get_si());
    spec.group = GroupDescriptor(free_rank, torsion); // throws ValidationError with field path

    // sequence
    SequenceSpec seq;
    seq.ambient = spec.group;
    std::string kind = "family";
    if (auto v = take("sequence.kind")) kind = v->first;
    if (kind == "explicit") {
        seq.kind = SequenceKind::ExplicitList;
        if (auto v = take("sequence.elements")) {
            for (const auto& item : detail::split(v->first, ';'))
                if (!item.empty())
                    seq.elements.push_back(
                        detail::parse_element(spec.group, item, "sequence.elements", v->second));
        } else {
            throw ValidationError("sequence.elements", "explicit sequence needs elements");
        }
        if (auto v = take("sequence.exhaustive")) seq.exhaustive = (v->first == "true");
    } else if (kind == "family") {
        std::string family;
        if (auto v = take("sequence.family"))
            family = v->first;
        else
            throw ValidationError("sequence.family", "missing");
        if (family == "all")
            seq.kind = SequenceKind::AllElements;
        else if (family == "geometric")
            seq.kind = SequenceKind::Geometric;
        else if (family == "double_exp")
            seq.kind = SequenceKind::DoubleExponential;
        else if (family == "polynomial")
            seq.kind = SequenceKind::Polynomial;
        else if (family == "basis")
            seq.kind = SequenceKind::Basis;
        else
            throw ValidationError("sequence.family", "unknown family '" + family + "'");
        if (auto v = take("sequence.base")) seq.base = detail::parse_int(v->first, "sequence.base", v->second);
        if (auto v = take("sequence.ratio")) seq.ratio = detail::parse_int(v->first, "sequence.ratio", v->second);
        if (auto v = take("sequence.scale")) seq.scale = detail::parse_int(v->first, "sequence.scale", v->second);
        if (auto v = take("sequence.coeffs")) {
            seq.coeffs.clear();
            for (const auto& item : detail::split(v->first, ','))
                if (!item.empty()) seq.coeffs.push_back(detail::parse_int(item, "sequence.coeffs", v->second));
        }
        if (auto v = take("sequence.coordinate"))
            seq.coordinate = static_cast<int>(detail::parse_int(v->first, "sequence.coordinate", v->second).get_si());
        if (auto v = take("sequence.start"))
            seq.start = static_cast<int>(detail::parse_int(v->first, "sequence.start", v->second).get_si());
    } else {
        throw ValidationError("sequence.kind", "must be 'family' or 'explicit'");
    }
    if (auto v = take("sequence.name")) seq.name = v->first;
    validate(seq);
    spec.sequence = std::move(seq);

    // task
    if (auto v = take("task")) {
        const std::string& t = v->first;
        if (t == "verdict") spec.task = Task::Verdict;
        else if (t == "epsilon") spec.task = Task::Epsilon;
        else if (t == "weight") spec.task = Task::Weight;
        else if (t == "repnorm") spec.task = Task::Repnorm;
        else if (t == "tree") spec.task = Task::Tree;
        else if (t == "oracle") spec.task = Task::Oracle;
        else throw ValidationError("task", "unknown task '" + t + "'");
    }
    if (auto v = take("seed"))
        spec.seed = static_cast<std::uint64_t>(detail::parse_int(v->first, "seed", v->second).get_ui());

    // policy knobs
    auto& p = spec.policy;
    auto li = [&](const char* key, long& slot) {
        if (auto v = take(key)) slot = detail::parse_int(v->first, key, v->second).get_si();
    };
    if (auto v = take("policy.eps_levels"))
        p.verdict.eps_levels = static_cast<int>(detail::parse_int(v->first, "policy.eps_levels", v->second).get_si());
    if (auto v = take("policy.q_max"))
        p.verdict.q_max = detail::parse_int(v->first, "policy.q_max", v->second).get_ui();
    li("policy.max_denom_bits", p.verdict.max_denom_bits);
    li("policy.depth_k", p.verdict.depth_k);
    li("policy.grid", p.verdict.grid);
    li("policy.lower_bound_depth", p.verdict.lower_bound_depth);
    if (auto v = take("policy.delta"))
        p.verdict.delta = detail::parse_rational(v->first, "policy.delta", v->second);
    if (auto v = take("policy.orbit_cap"))
        p.verdict.orbit_cap = detail::parse_int(v->first, "policy.orbit_cap", v->second).get_ui();
    if (auto v = take("policy.tuple_budget"))
        p.verdict.tuple_budget = detail::parse_int(v->first, "policy.tuple_budget", v->second).get_ui();
    if (auto v = take("policy.sweep_budget"))
        p.verdict.sweep_budget = detail::parse_int(v->first, "policy.sweep_budget", v->second).get_ui();
    li("policy.weight_terms", p.weight_terms);
    li("policy.weight_atoms", p.weight_atoms);
    li("policy.weight_window", p.weight_window);
    li("policy.weight_scale_bits", p.weight_scale_bits);
    li("policy.levels_j", p.levels_j);
    if (auto v = take("policy.tree_depth"))
        p.tree_depth = static_cast<int>(detail::parse_int(v->first, "policy.tree_depth", v->second).get_si());
    if (auto v = take("policy.modulus"))
        p.modulus = detail::parse_int(v->first, "policy.modulus", v->second);
    li("policy.norm_indices", p.norm_indices);
    li("policy.norm_span", p.norm_span);
    li("policy.norm_chars", p.norm_chars);

    if (!kv.empty()) {
        auto& [key, vl] = *kv.begin();
        throw ParseError(vl.second, "unknown key '" + key + "'");
    }

    // cross-field validation
    auto positive = [](const char* field, long v) {
        if (v <= 0) throw ValidationError(field, "must be positive");
    };
    positive("policy.eps_levels", p.verdict.eps_levels);
    positive("policy.depth_k", p.verdict.depth_k);
    positive("policy.grid", p.verdict.grid);
    positive("policy.weight_terms", p.weight_terms);
    positive("policy.levels_j", p.levels_j);
    positive("policy.tree_depth", p.tree_depth);
    if (p.verdict.delta <= 0) throw ValidationError("policy.delta", "must be positive");
    if (spec.task == Task::Oracle) {
        if (p.modulus < 2) throw ValidationError("policy.modulus", "oracle task needs a modulus >= 2");
        if (spec.sequence.kind == SequenceKind::ExplicitList && !spec.sequence.exhaustive)
            throw ValidationError("sequence.exhaustive",
                                  "oracle task needs an exhaustive list or a formula family");
    }
    if (spec.task == Task::Tree && spec.sequence.kind == SequenceKind::AllElements)
        throw ValidationError("task", "tree task needs a non-separated sequence");
    return spec;
}

inline ProblemSpec parse_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open spec file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_spec_text(ss.str());
}

/// Canonical serialization; parse_spec_text(serialize_spec(s)) == s field-wise.
inline std::string serialize_spec(const ProblemSpec& spec) {
    std::ostringstream os;
    if (!spec.name.empty()) os << "name = " << spec.name << "\n";
    if (spec.group.countable_free_part())
        os << "group.free_rank = countable\n";
    else
        os << "group.free_rank = " << spec.group.free_rank() << "\n";
    if (!spec.group.torsion_orders().empty()) {
        os << "group.torsion = ";
        for (size_t i = 0; i < spec.group.torsion_orders().size(); ++i)
            os << (i ? "," : "") << spec.group.torsion_orders()[i];
        os << "\n";
    }
    const auto& s = spec.sequence;
    if (s.kind == SequenceKind::ExplicitList) {
        os << "sequence.kind = explicit\n";
        os << "sequence.elements = ";
        for (size_t i = 0; i < s.elements.size(); ++i)
            os << (i ? ";" : "") << spec.group.to_string(s.elements[i]);
        os << "\n";
        os << "sequence.exhaustive = " << (s.exhaustive ? "true" : "false") << "\n";
    } else {
        os << "sequence.kind = family\n";
        switch (s.kind) {
            case SequenceKind::AllElements: os << "sequence.family = all\n"; break;
            case SequenceKind::Geometric:
                os << "sequence.family = geometric\n";
                os << "sequence.scale = " << s.scale << "\n";
                os << "sequence.ratio = " << s.ratio << "\n";
                os << "sequence.coordinate = " << s.coordinate << "\n";
                break;
            case SequenceKind::DoubleExponential:
                os << "sequence.family = double_exp\n";
                os << "sequence.base = " << s.base << "\n";
                os << "sequence.coordinate = " << s.coordinate << "\n";
                break;
            case SequenceKind::Polynomial:
                os << "sequence.family = polynomial\n";
                os << "sequence.coeffs = ";
                for (size_t i = 0; i < s.coeffs.size(); ++i) os << (i ? "," : "") << s.coeffs[i];
                os << "\n";
                os << "sequence.coordinate = " << s.coordinate << "\n";
                break;
            case SequenceKind::Basis:
                os << "sequence.family = basis\n";
                os << "sequence.start = " << s.start << "\n";
                break;
            default: break;
        }
    }
    if (!s.name.empty()) os << "sequence.name = " << s.name << "\n";
    os << "task = " << task_name(spec.task) << "\n";
    os << "seed = " << spec.seed << "\n";
    const auto& p = spec.policy;
    os << "policy.eps_levels = " << p.verdict.eps_levels << "\n";
    os << "policy.q_max = " << p.verdict.q_max << "\n";
    os << "policy.max_denom_bits = " << p.verdict.max_denom_bits << "\n";
    os << "policy.depth_k = " << p.verdict.depth_k << "\n";
    os << "policy.grid = " << p.verdict.grid << "\n";
    os << "policy.lower_bound_depth = " << p.verdict.lower_bound_depth << "\n";
    os << "policy.delta = " << p.verdict.delta.get_num() << "/" << p.verdict.delta.get_den() << "\n";
    os << "policy.orbit_cap = " << p.verdict.orbit_cap << "\n";
    os << "policy.tuple_budget = " << p.verdict.tuple_budget << "\n";
    os << "policy.sweep_budget = " << p.verdict.sweep_budget << "\n";
    os << "policy.weight_terms = " << p.weight_terms << "\n";
    os << "policy.weight_atoms = " << p.weight_atoms << "\n";
    os << "policy.weight_window = " << p.weight_window << "\n";
    os << "policy.weight_scale_bits = " << p.weight_scale_bits << "\n";
    os << "policy.levels_j = " << p.levels_j << "\n";
    os << "policy.tree_depth = " << p.tree_depth << "\n";
    if (p.modulus != 0) os << "policy.modulus = " << p.modulus << "\n";
    os << "policy.norm_indices = " << p.norm_indices << "\n";
    os << "policy.norm_span = " << p.norm_span << "\n";
    os << "policy.norm_chars = " << p.norm_chars << "\n";
    return os.str();
}

} // namespace jamison
