#pragma once

// Orchestration: parse a ProblemSpec, dispatch to the task runner, cache the
// canonical report by spec hash, serialize. Identical (spec, seed) pairs
// produce byte-identical canonical JSON.

#include <chrono>
#include <random>
#include <string>
#include <vector>
#include <gmpxx.h>

#include "jamison/character.hpp"
#include "jamison/criterion.hpp"
#include "jamison/enumeration.hpp"
#include "jamison/orbit.hpp"
#include "jamison/report.hpp"
#include "jamison/representation.hpp"
#include "jamison/sequence.hpp"
#include "jamison/spec_format.hpp"
#include "jamison/tree.hpp"
#include "jamison/weight.hpp"

namespace jamison {

namespace detail {

inline json character_json(const Character& c) {
    json out;
    json angles = json::array();
    if (c.is_exact()) {
        for (const auto& [coord, a] : c.exact_angles()) {
            json entry;
            entry["coordinate"] = coord;
            entry["p"] = a.get_num().get_str();
            entry["q"] = a.get_den().get_str();
            angles.push_back(entry);
        }
    } else {
        for (const auto& [coord, a] : c.float_angles()) {
            json entry;
            entry["coordinate"] = coord;
            entry["angle"] = format_float(a);
            angles.push_back(entry);
        }
    }
    out["exact"] = c.is_exact();
    out["angles"] = angles;
    if (!c.torsion_numerators().empty()) {
        json t = json::array();
        for (const auto& x : c.torsion_numerators()) t.push_back(x.get_str());
        out["torsion"] = t;
    }
    return out;
}

inline json metric_json(const MetricValue& m) {
    json out;
    out["value"] = format_float(m.value);
    out["certified"] = m.certified;
    out["depth"] = m.depth;
    if (m.fold) out["fold"] = format_rational(*m.fold);
    return out;
}

inline json witness_json(const WitnessReport& w) {
    json out;
    out["character"] = character_json(w.witness);
    out["sup"] = metric_json(w.sup);
    out["note"] = w.note;
    return out;
}

inline json annihilator_json(const AnnihilatorDescription& a, size_t element_cap = 64) {
    json out;
    out["kind"] = a.kind == AnnihilatorDescription::Kind::Finite ? "finite" : "positive_dimensional";
    out["order"] = a.order.get_str();
    if (!a.note.empty()) out["note"] = a.note;
    json elems = json::array();
    for (size_t i = 0; i < a.elements.size() && i < element_cap; ++i)
        elems.push_back(character_json(a.elements[i]));
    out["elements"] = elems;
    json dirs = json::array();
    for (const auto& d : a.free_directions) {
        json row = json::array();
        for (const auto& x : d) row.push_back(x.get_str());
        dirs.push_back(row);
    }
    out["free_directions"] = dirs;
    return out;
}

inline json verdict_json(const Verdict& v) {
    json out;
    switch (v.kind) {
        case Verdict::Kind::NotJamisonInfiniteIndex: out["verdict"] = "not_jamison_infinite_index"; break;
        case Verdict::Kind::NotJamisonSeparationFails: out["verdict"] = "not_jamison_separation_fails"; break;
        case Verdict::Kind::JamisonCertified: out["verdict"] = "jamison_certified"; break;
        case Verdict::Kind::Empirical: out["verdict"] = "empirical"; break;
    }
    out["index"] = v.index.finite ? v.index.count.get_str() : "infinite";
    json ws = json::array();
    for (const auto& w : v.witnesses) ws.push_back(witness_json(w));
    out["witnesses"] = ws;
    out["eps_lower_bound"] = format_float(v.eps_lower_bound);
    if (v.eps_empirical > 0) out["eps_empirical"] = format_float(v.eps_empirical);
    if (!v.scope.empty()) out["scope"] = v.scope;
    out["caveats"] = v.caveats;
    out["tags"] = v.tags;
    if (v.annihilator_info) out["annihilator"] = annihilator_json(*v.annihilator_info);
    return out;
}

inline json run_verdict_task(const ProblemSpec& spec, Enumeration& enumeration) {
    Verdict v = jamison_verdict(spec.sequence, spec.policy.verdict, &enumeration);
    return verdict_json(v);
}

inline json run_epsilon_task(const ProblemSpec& spec, Enumeration& enumeration) {
    json out;
    const auto& pol = spec.policy.verdict;
    SequenceSpec seq = spec.sequence;
    auto idx = sequence_index(seq);
    out["index"] = idx.finite ? idx.count.get_str() : "infinite";
    bool augmented = false;
    if (idx.finite && idx.count > 1) {
        seq = augment_to_generating(seq);
        augmented = true;
    }
    out["augmented"] = augmented;
    json levels = json::array();
    for (int m = 1; m <= pol.eps_levels; ++m) {
        double eps = std::ldexp(1.0, -m);
        json level;
        level["eps"] = format_float(eps);
        auto r = witness_search(seq, eps, pol, &enumeration);
        switch (r.status) {
            case WitnessSearchResult::Status::Found:
                level["status"] = "witness_found";
                level["witness"] = witness_json(*r.report);
                break;
            case WitnessSearchResult::Status::NotFound: level["status"] = "not_found"; break;
            case WitnessSearchResult::Status::BudgetExceeded: level["status"] = "budget_exceeded"; break;
        }
        levels.push_back(level);
    }
    out["levels"] = levels;
    if (idx.finite) {
        try {
            SeparationReport rep = separation_lower_bound(
                seq, std::min(pol.lower_bound_depth, pol.depth_k), pol.grid, pol.delta, &enumeration);
            json lb;
            lb["lower_bound"] = format_float(rep.lower_bound);
            lb["min_center_value"] = format_float(rep.min_center_value);
            lb["grid"] = rep.grid;
            lb["delta"] = format_float(rep.delta);
            lb["depth"] = rep.depth;
            lb["lipschitz"] = format_float(rep.lipschitz);
            lb["trace"] = rep.trace;
            out["lower_bound"] = lb;
        } catch (const ResolutionInsufficientError& e) {
            out["lower_bound"] = std::string("unresolved: ") + e.what();
        } catch (const BudgetExceededError& e) {
            out["lower_bound"] = std::string("budget: ") + e.what();
        }
    }
    return out;
}

inline json run_weight_task(const ProblemSpec& spec, Enumeration& enumeration, Report& report) {
    const auto& p = spec.policy;
    long atoms = p.weight_atoms > 0 ? p.weight_atoms : p.weight_terms;
    size_t window = p.weight_window > 0 ? static_cast<size_t>(p.weight_window)
                                        : static_cast<size_t>(3 * p.weight_terms + 1);
    WeightTable wt(enumeration, p.weight_terms, atoms, window, p.weight_scale_bits);
    json out;
    out["terms"] = p.weight_terms;
    out["atoms"] = atoms;
    out["window"] = static_cast<long>(window);
    out["scale_bits"] = p.weight_scale_bits;
    out["sum_tracked"] = format_rational(wt.sum_tracked());
    out["off_mass"] = format_rational(wt.off_mass());
    out["deficit"] = format_rational(wt.deficit());
    out["missing"] = format_rational(wt.missing());

    json entries = json::array();
    long n_cap = std::min<long>(20, static_cast<long>(window));
    bool lower_bounds_hold = true;
    for (long n = 1; n <= n_cap; ++n) {
        const GroupElement& h = enumeration.at(static_cast<size_t>(n));
        mpq_class lo = wt.lower(h);
        mpq_class bound(1, mpz_class(1) << (n + 1));
        if (lo < bound) lower_bounds_hold = false;
        json e;
        e["n"] = n;
        e["element"] = spec.group.to_string(h);
        e["w_lower"] = format_rational(lo);
        entries.push_back(e);
    }
    out["first_entries"] = entries;
    out["atom_lower_bounds_hold"] = lower_bounds_hold;

    json sub = json::array();
    for (long ell = 1; ell <= std::min<long>(p.norm_indices, atoms); ++ell) {
        try {
            auto r = subinvariance_check(wt, enumeration, ell);
            json e;
            e["ell"] = ell;
            e["pairs"] = static_cast<long>(r.pairs);
            e["squared_bound_holds"] = r.squared_bound_holds;
            e["sqrt_bound_held_empirically"] = r.sqrt_bound_held_empirically;
            e["max_certified_ratio"] = format_float(r.max_certified_ratio);
            sub.push_back(e);
        } catch (const InsufficientSupportError& e) {
            json entry;
            entry["ell"] = ell;
            entry["error"] = std::string("insufficient_support: ") + e.what();
            sub.push_back(entry);
        }
    }
    out["subinvariance"] = sub;

    json norms = json::array();
    for (long k = 1; k <= std::min<long>(p.norm_indices, atoms); ++k) {
        try {
            auto r = translation_norm(wt, enumeration, k, static_cast<size_t>(p.norm_span));
            json e;
            e["k"] = k;
            e["pairs"] = static_cast<long>(r.pairs);
            e["observed"] = format_float(r.observed);
            e["certified_upper"] = format_float(r.certified_upper);
            e["bound_holds"] = r.bound_holds;
            e["bound"] = format_float(std::pow(std::sqrt(2.0), static_cast<double>(k + 1)));
            norms.push_back(e);
        } catch (const InsufficientSupportError& e) {
            json entry;
            entry["k"] = k;
            entry["error"] = std::string("insufficient_support: ") + e.what();
            norms.push_back(entry);
        }
    }
    out["translation_norms"] = norms;

    // CSV export of the table
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"index", "element", "w_lower", "w_upper"});
    for (size_t i = 0; i < wt.window_size(); ++i) {
        const GroupElement& g = wt.element(i);
        rows.push_back({std::to_string(i + 1), spec.group.to_string(g),
                        format_rational(wt.lower(g)), format_float(wt.upper_d(g))});
    }
    report.tables.emplace_back("weight_table", std::move(rows));
    return out;
}

inline json run_repnorm_task(const ProblemSpec& spec, Enumeration& enumeration, Report& report) {
    const auto& p = spec.policy;
    long atoms = p.weight_atoms > 0 ? p.weight_atoms : p.weight_terms;
    size_t window = p.weight_window > 0 ? static_cast<size_t>(p.weight_window)
                                        : static_cast<size_t>(3 * p.weight_terms + 1);
    WeightTable wt(enumeration, p.weight_terms, atoms, window, p.weight_scale_bits);
    std::mt19937_64 rng(spec.seed);
    json out;

    // star norm identity on sampled exact characters
    json stars = json::array();
    bool identity_ok = true;
    std::uniform_int_distribution<long> den(2, 50);
    const long coords = spec.group.finitely_generated() ? spec.group.free_rank() : 1;
    for (long i = 0; i < p.norm_chars; ++i) {
        std::map<int, mpq_class> angles;
        for (long c = 0; c < std::max<long>(coords, 1); ++c) {
            long q = den(rng);
            std::uniform_int_distribution<long> num(0, q - 1);
            long pv = num(rng);
            if (pv) angles[static_cast<int>(c)] = mpq_class(pv, q);
        }
        Character chi = Character::exact(spec.group, angles);
        StarNormBounds b = star_norm(chi, wt);
        if (!(b.lower <= 1.0 + 1e-15 && b.upper == 1.0)) identity_ok = false;
        if (i < 8) {
            json e;
            e["character"] = character_json(chi);
            e["star_lower"] = format_float(b.lower);
            e["star_upper"] = format_float(b.upper);
            stars.push_back(e);
        }
    }
    out["star_identity_on_samples"] = identity_ok;
    out["star_samples"] = stars;
    out["sampled_characters"] = p.norm_chars;

    // translation norm bound table (also exported as CSV)
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"k", "observed", "certified_upper", "bound"});
    json norms = json::array();
    for (long k = 1; k <= std::min<long>(p.norm_indices, atoms); ++k) {
        auto r = translation_norm(wt, enumeration, k, static_cast<size_t>(p.norm_span));
        double bound = std::pow(std::sqrt(2.0), static_cast<double>(k + 1));
        json e;
        e["k"] = k;
        e["observed"] = format_float(r.observed);
        e["certified_upper"] = format_float(r.certified_upper);
        e["bound_holds"] = r.bound_holds;
        norms.push_back(e);
        rows.push_back({std::to_string(k), format_float(r.observed),
                        format_float(r.certified_upper), format_float(bound)});
    }
    out["translation_norms"] = norms;
    report.tables.emplace_back("translation_norms", std::move(rows));

    // eigencharacter separation example with the certified M from the table
    if (spec.group.finitely_generated() && spec.group.free_rank() >= 1) {
        Character chi = Character::exact(spec.group, {{0, mpq_class(1, 3)}});
        Character one = Character::trivial(spec.group);
        auto rep = eigencharacter_separation(chi, one, spec.sequence, 3.0,
                                            std::min<long>(p.verdict.depth_k, 64), wt, &enumeration);
        json e;
        e["bound"] = format_float(rep.bound);
        e["distance_lower"] = format_float(rep.distance_lower);
        e["distance_upper"] = format_float(rep.distance_upper);
        e["chain_verified"] = rep.chain_verified;
        out["eigencharacter_example"] = e;
    }
    return out;
}

inline json run_tree_task(const ProblemSpec& spec, Enumeration& enumeration, Report& report) {
    const auto& p = spec.policy;
    GapChain chain = gap_chain_generate(spec.sequence, p.tree_depth, p.verdict, &enumeration);
    CharacterTree tree = build_character_tree(chain, p.tree_depth);
    TreeSeparationCheck check = verify_tree_separation(tree, spec.sequence, &enumeration);
    json out;
    json levels = json::array();
    for (size_t n = 0; n < chain.chain.size(); ++n) {
        json e;
        e["n"] = static_cast<long>(n + 1);
        e["chi"] = character_json(chain.chain[n]);
        e["d_to_one"] = metric_json(chain.d_to_one[n]);
        e["gap"] = metric_json(chain.gaps[n]);
        levels.push_back(e);
    }
    out["chain"] = levels;
    out["depth"] = p.tree_depth;
    out["leaves"] = static_cast<long>(tree.leaves().size());
    out["pairs"] = static_cast<long>(check.pairs);
    out["lower_ok"] = check.lower_ok;
    out["upper_ok"] = check.upper_ok;
    out["depth1_equality"] = check.depth1_equality;

    std::vector<std::vector<std::string>> rows;
    const size_t n = tree.leaves().size();
    std::vector<std::string> header = {"leaf"};
    for (size_t b = 0; b < n; ++b) header.push_back(std::to_string(b));
    rows.push_back(header);
    for (size_t a = 0; a < n; ++a) {
        std::vector<std::string> row = {std::to_string(a)};
        for (size_t b = 0; b < n; ++b)
            row.push_back(a == b ? "0" : format_float(check.matrix[a][b].value));
        rows.push_back(row);
    }
    report.tables.emplace_back("tree_separation", std::move(rows));
    return out;
}

inline json run_oracle_task(const ProblemSpec& spec, Enumeration& enumeration, Report& report) {
    const auto& p = spec.policy;
    ResidueOrbit orbit = residue_orbit(spec.sequence, p.modulus, p.verdict.orbit_cap, &enumeration);
    json out;
    out["modulus"] = p.modulus.get_str();
    switch (orbit.kind) {
        case ResidueOrbit::Kind::Finite: out["kind"] = "finite"; break;
        case ResidueOrbit::Kind::FullProduct: out["kind"] = "full_product"; break;
        case ResidueOrbit::Kind::BasisTail: out["kind"] = "basis_tail"; break;
    }
    out["certified"] = orbit.certified;
    out["certificate"] = orbit.certificate;
    out["steps"] = static_cast<long>(orbit.steps);
    out["size"] = static_cast<long>(orbit.residues.size());
    json res = json::array();
    for (size_t i = 0; i < orbit.residues.size() && i < 256; ++i)
        res.push_back(spec.group.to_string(orbit.residues[i]));
    out["residues"] = res;

    std::vector<std::vector<std::string>> rows;
    rows.push_back({"residue"});
    for (const auto& r : orbit.residues) rows.push_back({spec.group.to_string(r)});
    report.tables.emplace_back("residue_orbit", std::move(rows));
    return out;
}

} // namespace detail

/// Runs the task, consulting and filling the cache. Bit-identical canonical
/// JSON for identical (spec, seed).
inline Report run_pipeline(const ProblemSpec& spec) {
    Report report;
    std::string canonical_spec = serialize_spec(spec);
    report.hash = spec_hash(canonical_spec);
    report.task = task_name(spec.task);
    report.meta["version"] = kVersion;
    report.meta["enumeration"] = Enumeration::id();
    report.meta["seed"] = spec.seed;
    report.meta["sequence"] = spec.sequence.name.empty() ? std::string("unnamed") : spec.sequence.name;

    auto t0 = std::chrono::steady_clock::now();
    if (auto cached = cache_lookup(report.hash)) {
        // rebuild the body from cache so emitted bytes match exactly
        json root = json::parse(*cached);
        report.meta = root["meta"];
        report.body = root["body"];
        report.cache_hit = true;
        return report;
    }

    Enumeration enumeration(spec.group);
    switch (spec.task) {
        case Task::Verdict: report.body = detail::run_verdict_task(spec, enumeration); break;
        case Task::Epsilon: report.body = detail::run_epsilon_task(spec, enumeration); break;
        case Task::Weight: report.body = detail::run_weight_task(spec, enumeration, report); break;
        case Task::Repnorm: report.body = detail::run_repnorm_task(spec, enumeration, report); break;
        case Task::Tree: report.body = detail::run_tree_task(spec, enumeration, report); break;
        case Task::Oracle: report.body = detail::run_oracle_task(spec, enumeration, report); break;
    }
    auto t1 = std::chrono::steady_clock::now();
    report.elapsed_seconds = std::chrono::duration<double>(t1 - t0).count();
    cache_store(report.hash, report.canonical_json());
    return report;
}

} // namespace jamison
