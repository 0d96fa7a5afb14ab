#pragma once

// The separation pseudo-metric d(chi,phi) = sup_k |chi(g_k) - phi(g_k)|,
// truncated and certified flavors, and the product metric d_j. Certified
// values are exact folded angles obtained from residue orbits; truncated
// values are honest doubles flagged as such.

#include <algorithm>
#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>
#include <gmpxx.h>

#include "jamison/angles.hpp"
#include "jamison/character.hpp"
#include "jamison/errors.hpp"
#include "jamison/orbit.hpp"
#include "jamison/sequence.hpp"

namespace jamison {

struct MetricValue {
    double value = 0.0;
    bool certified = false;
    long depth = -1; // truncation K, or -1 when the sup runs over all k
    std::optional<mpq_class> fold; // exact folded angle when available

    static MetricValue truncated(double v, long k) { return {v, false, k, std::nullopt}; }
    static MetricValue exact_truncated(const mpq_class& f, long k) {
        return {chord(f), false, k, f};
    }
    static MetricValue certified_fold(const mpq_class& f) { return {chord(f), true, -1, f}; }
};

namespace detail {

/// Common denominator of the angle difference, 1 when no free angles differ.
inline mpz_class angle_lcm(const Character& delta) {
    mpz_class q = 1;
    for (const auto& [c, a] : delta.exact_angles()) q = lcm(q, a.get_den());
    return q;
}

inline size_t effective_depth(const SequenceSpec& seq, long k) {
    auto n = term_count(seq);
    size_t kk = static_cast<size_t>(k);
    if (n && *n < kk) return *n;
    return kk;
}

} // namespace detail

/// sup over the first K terms. Exact characters go through exact angle
/// arithmetic (modular term evaluation, so huge formula terms are fine).
inline MetricValue d_metric(const Character& chi, const Character& phi, const SequenceSpec& seq,
                            long depth, Enumeration* enumeration = nullptr) {
    if (depth < 1) throw ValidationError("depth", "metric depth must be >= 1");
    size_t kmax = detail::effective_depth(seq, depth);
    if (chi.is_exact() && phi.is_exact()) {
        Character delta = chi.times(phi.conjugate());
        if (delta.is_trivial()) return MetricValue::exact_truncated(mpq_class(0), depth);
        mpz_class q = detail::angle_lcm(delta);
        if (q == 1) q = 2; // only torsion angles differ; any modulus works
        mpq_class best(0);
        for (size_t k = 0; k < kmax; ++k) {
            GroupElement r = term_mod(seq, k, q, enumeration);
            mpq_class f = fold_angle(delta.eval_angle_exact(r));
            if (f > best) best = f;
        }
        return MetricValue::exact_truncated(best, depth);
    }
    double best = 0.0;
    for (size_t k = 0; k < kmax; ++k) {
        GroupElement g = term(seq, k, enumeration);
        double gap = chord_d(chi.eval_angle(g) - phi.eval_angle(g));
        if (gap > best) best = gap;
    }
    return MetricValue::truncated(best, depth);
}

/// Exact sup over ALL k via the residue orbit. Non-exhaustive explicit lists
/// fall back to the truncated metric over the full list (certified only when
/// the list is exhaustive by construction).
inline MetricValue d_metric_certified(const Character& chi, const Character& phi,
                                      const SequenceSpec& seq, Enumeration* enumeration = nullptr,
                                      size_t orbit_cap = 2'000'000) {
    if (!chi.is_exact() || !phi.is_exact())
        throw ValidationError("character", "certified metric needs exact characters");
    Character delta = chi.times(phi.conjugate());
    if (delta.is_trivial()) return MetricValue::certified_fold(mpq_class(0));

    if (seq.kind == SequenceKind::ExplicitList && !seq.exhaustive) {
        auto n = term_count(seq);
        MetricValue mv = d_metric(chi, phi, seq, static_cast<long>(*n), enumeration);
        return mv; // certified stays false
    }

    mpz_class q = detail::angle_lcm(delta);
    if (q == 1) q = 2;
    ResidueOrbit orbit = residue_orbit(seq, q, orbit_cap, enumeration);
    mpq_class best(0);
    auto consider = [&](const GroupElement& r) {
        mpq_class f = fold_angle(delta.eval_angle_exact(r));
        if (f > best) best = f;
    };
    switch (orbit.kind) {
        case ResidueOrbit::Kind::Finite:
            for (const auto& r : orbit.residues) consider(r);
            break;
        case ResidueOrbit::Kind::FullProduct: {
            // achievable values form the cyclic subgroup generated by all of
            // delta's angles; its largest fold is floor(L/2)/L
            mpz_class L = 1;
            for (const auto& [c, a] : delta.exact_angles()) L = lcm(L, a.get_den());
            const auto& orders = delta.group().torsion_orders();
            const auto& tors = delta.torsion_numerators();
            for (size_t i = 0; i < tors.size(); ++i) {
                if (tors[i] == 0) continue;
                mpq_class a(tors[i], mpz_class(orders[i]));
                a.canonicalize();
                L = lcm(L, a.get_den());
            }
            if (L > 1) best = mpq_class(L / 2, L);
            break;
        }
        case ResidueOrbit::Kind::BasisTail: {
            for (const auto& [c, a] : delta.exact_angles())
                if (c >= orbit.start) {
                    mpq_class f = fold_angle(a);
                    if (f > best) best = f;
                }
            for (const auto& r : orbit.residues) consider(r); // prefix terms
            // untouched coordinates contribute gap 0, already covered by best >= 0
            break;
        }
    }
    return MetricValue::certified_fold(best);
}

namespace detail {

inline std::complex<double> root_minus_one(double angle) {
    // e^{2 pi i a} - 1 = 2 sin(pi a) * (-sin(pi a) + i cos(pi a)); no cancellation near 0
    double s = std::sin(M_PI * angle), c = std::cos(M_PI * angle);
    return {-2.0 * s * s, 2.0 * s * c};
}

} // namespace detail

/// sup over tuples (k_0..k_j) in [0,K)^{j+1} of |prod(chi(g_ki)-1) - prod(phi(g_ki)-1)|.
/// Enumerates multisets over the distinct per-term value pairs; budget counts
/// product evaluations.
inline double d_j_product(const Character& chi, const Character& phi, const SequenceSpec& seq,
                          long depth, long level, unsigned long budget = 1'000'000,
                          Enumeration* enumeration = nullptr) {
    if (level < 0) throw ValidationError("level", "level must be >= 0");
    if (depth < 1) throw ValidationError("depth", "metric depth must be >= 1");
    size_t kmax = detail::effective_depth(seq, depth);

    if (level == 0) return d_metric(chi, phi, seq, depth, enumeration).value;

    // distinct (angle_chi, angle_phi) pairs across the first K terms
    std::vector<std::pair<double, double>> pairs;
    if (chi.is_exact() && phi.is_exact()) {
        mpz_class q = lcm(detail::angle_lcm(chi), detail::angle_lcm(phi));
        if (q == 1) q = 2;
        std::set<std::pair<mpq_class, mpq_class>> seen;
        for (size_t k = 0; k < kmax; ++k) {
            GroupElement r = term_mod(seq, k, q, enumeration);
            seen.emplace(chi.eval_angle_exact(r), phi.eval_angle_exact(r));
        }
        for (const auto& [a, b] : seen) pairs.emplace_back(a.get_d(), b.get_d());
    } else {
        std::set<std::pair<double, double>> seen;
        for (size_t k = 0; k < kmax; ++k) {
            GroupElement g = term(seq, k, enumeration);
            seen.emplace(chi.eval_angle(g), phi.eval_angle(g));
        }
        for (const auto& [a, b] : seen) pairs.emplace_back(a, b);
    }

    const size_t n = pairs.size();
    const size_t picks = static_cast<size_t>(level) + 1;
    // multiset count C(n+level, picks) as the enumeration budget
    double count = 1;
    for (size_t i = 1; i <= picks; ++i) count *= static_cast<double>(n + picks - i) / static_cast<double>(i);
    if (count > static_cast<double>(budget))
        throw BudgetExceededError("tuple space exceeds product evaluation budget");

    std::vector<std::complex<double>> fa(n), fb(n);
    for (size_t i = 0; i < n; ++i) {
        fa[i] = detail::root_minus_one(pairs[i].first);
        fb[i] = detail::root_minus_one(pairs[i].second);
    }
    double best = 0.0;
    std::function<void(size_t, size_t, std::complex<double>, std::complex<double>)> rec =
        [&](size_t from, size_t remaining, std::complex<double> pa, std::complex<double> pb) {
            if (remaining == 0) {
                double v = std::abs(pa - pb);
                if (v > best) best = v;
                return;
            }
            for (size_t i = from; i < n; ++i) rec(i, remaining - 1, pa * fa[i], pb * fb[i]);
        };
    rec(0, picks, {1.0, 0.0}, {1.0, 0.0});
    return best;
}

} // namespace jamison
