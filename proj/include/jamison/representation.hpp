#pragma once

// Desk-scale realization of the translation representation rho(g)f = f(.+g)
// on the weighted l^2 space: truncated operator norms, the renorming that
// caps translation norms along the sequence at 3, eigenvector separation, and
// the level-by-level continuity probe.

#include <complex>
#include <map>
#include <vector>
#include <gmpxx.h>

#include "jamison/certified.hpp"
#include "jamison/character.hpp"
#include "jamison/errors.hpp"
#include "jamison/lattice.hpp"
#include "jamison/metrics.hpp"
#include "jamison/weight.hpp"

namespace jamison {

struct SparseVector {
    std::map<GroupElement, std::complex<double>> coef;
};

inline SparseVector character_vector(const Character& chi, const WeightTable& wt) {
    SparseVector f;
    for (size_t i = 0; i < wt.window_size(); ++i) {
        const GroupElement& g = wt.element(i);
        f.coef[g] = chi.value(g);
    }
    return f;
}

/// (rho(g) f)(h) = f(h + g).
inline SparseVector translate(const GroupDescriptor& desc, const SparseVector& f,
                              const GroupElement& g) {
    SparseVector out;
    for (const auto& [h, c] : f.coef) out.coef[desc.sub(h, g)] = c;
    return out;
}

inline SparseVector axpy(const std::complex<double>& a, const SparseVector& x,
                         const SparseVector& y) {
    SparseVector out = y;
    for (const auto& [g, c] : x.coef) out.coef[g] += a * c;
    return out;
}

/// Sum |f(g)|^2 w(g) over the tracked window (a lower bound on the true norm).
inline double weighted_norm_sq(const SparseVector& f, const WeightTable& wt) {
    double acc = 0.0;
    for (const auto& [g, c] : f.coef) acc += std::norm(c) * wt.lower_d(g);
    return acc;
}

struct StarNormBounds {
    double lower = 0.0;
    double upper = 0.0;
};

namespace detail {

/// Gram matrix <chi_s, chi_t>_w over the tracked window.
inline std::vector<std::vector<std::complex<double>>> gram(
    const std::vector<Character>& chars, const WeightTable& wt) {
    size_t n = chars.size();
    std::vector<std::vector<std::complex<double>>> g(n, std::vector<std::complex<double>>(n));
    for (size_t s = 0; s < n; ++s)
        for (size_t t = 0; t <= s; ++t) {
            std::complex<double> acc = 0.0;
            for (size_t i = 0; i < wt.window_size(); ++i) {
                const GroupElement& el = wt.element(i);
                double a = chars[s].eval_angle(el) - chars[t].eval_angle(el);
                double w = wt.lower_d(el);
                acc += std::complex<double>(std::cos(2 * M_PI * a), std::sin(2 * M_PI * a)) * w;
            }
            g[s][t] = acc;
            g[t][s] = std::conj(acc);
        }
    return g;
}

inline double quad_form(const std::vector<std::vector<std::complex<double>>>& g,
                        const std::vector<std::complex<double>>& c) {
    std::complex<double> acc = 0.0;
    for (size_t s = 0; s < c.size(); ++s)
        for (size_t t = 0; t < c.size(); ++t) acc += c[s] * std::conj(c[t]) * g[s][t];
    return std::max(0.0, acc.real());
}

} // namespace detail

/// Single exact character: ||chi||_* = ||chi|| exactly, because every level
/// term is (d(chi,1)/2)^{j+1} <= 1 times the norm. The true ||chi|| is 1
/// (the weight has total mass one); the returned interval reflects the
/// truncated table.
inline StarNormBounds star_norm(const Character& chi, const WeightTable& wt) {
    (void)chi;
    StarNormBounds out;
    out.lower = std::sqrt(wt.sum_tracked().get_d());
    out.upper = 1.0;
    return out;
}

/// Finite combination sum c_t chi_t: lower bound by sampled product tuples,
/// upper bound by the triangle inequality per component.
inline StarNormBounds star_norm(const std::vector<std::complex<double>>& coef,
                                const std::vector<Character>& chars, const SequenceSpec& seq,
                                long depth, long level_cap, const WeightTable& wt,
                                unsigned long budget = 200'000,
                                Enumeration* enumeration = nullptr) {
    if (coef.size() != chars.size() || chars.empty())
        throw ValidationError("star_norm", "coefficient/character shape mismatch");
    auto g = detail::gram(chars, wt);
    double base_sq = detail::quad_form(g, coef);
    double missing = wt.missing().get_d();
    double c_abs = 0.0;
    for (const auto& c : coef) c_abs += std::abs(c);
    StarNormBounds out;
    out.lower = std::sqrt(base_sq);
    double base_upper = std::sqrt(base_sq + missing * c_abs * c_abs);

    // factor pairs per term index: distinct vectors (chi_t(g_k)-1)_t over k < K
    size_t kmax = detail::effective_depth(seq, depth);
    std::vector<std::vector<std::complex<double>>> factors; // [distinct k][t]
    {
        std::set<std::vector<double>> seen;
        for (size_t k = 0; k < kmax; ++k) {
            GroupElement el = term(seq, k, enumeration);
            std::vector<double> key;
            std::vector<std::complex<double>> row;
            for (const auto& ch : chars) {
                double a = ch.eval_angle(el);
                key.push_back(a);
                double s = std::sin(M_PI * a), c2 = std::cos(M_PI * a);
                row.push_back({-2.0 * s * s, 2.0 * s * c2});
            }
            if (seen.insert(key).second) factors.push_back(std::move(row));
        }
    }
    unsigned long spent = 0;
    std::vector<std::complex<double>> acc(coef);
    // level j uses j+1 factors; enumerate factor multisets up to level_cap
    std::function<void(size_t, size_t, long)> rec = [&](size_t from, size_t remaining, long level) {
        double norm_sq = detail::quad_form(g, acc);
        double term_val = std::ldexp(std::sqrt(norm_sq), -static_cast<int>(level) - 1);
        out.lower = std::max(out.lower, term_val);
        if (remaining == 0) return;
        for (size_t i = from; i < factors.size(); ++i) {
            if (++spent > budget) throw BudgetExceededError("star norm tuple budget exhausted");
            auto saved = acc;
            for (size_t t = 0; t < acc.size(); ++t) acc[t] *= factors[i][t];
            rec(i, remaining - 1, level + 1);
            acc = saved;
        }
    };
    rec(0, static_cast<size_t>(level_cap) + 1, -1);

    // upper: sup_j 2^{-j-1} sum |c_t| D_t^{j+1} peaks at j = 0, since D_t <= 2
    double d_half_sum = 0.0;
    for (size_t t = 0; t < chars.size(); ++t) {
        double dt = 2.0;
        if (chars[t].is_exact()) {
            try {
                dt = d_metric_certified(chars[t], Character::trivial(chars[t].group()), seq,
                                        enumeration).value;
            } catch (const std::exception&) {
                dt = 2.0; // no oracle; the chord ceiling still applies
            }
        }
        d_half_sum += std::abs(coef[t]) * dt / 2.0;
    }
    out.upper = std::max(base_upper, d_half_sum);
    return out;
}

struct EigencharacterReport {
    double bound = 0.0;          // d(chi,phi) / (M+1)
    double distance_lower = 0.0; // measured ||e_chi - e_phi|| from the table
    double distance_upper = 0.0;
    bool chain_verified = false; // |chi(g_k)-phi(g_k)| <= (M+1) dist for k < K
};

/// Separation of normalized eigenvectors under a partially bounded
/// representation: returns d/(M+1) and verifies the defining chain on the
/// concrete translation model (e_chi = chi, unit norm in the true space).
inline EigencharacterReport eigencharacter_separation(const Character& chi, const Character& phi,
                                                      const SequenceSpec& seq, double m_bound,
                                                      long depth, const WeightTable& wt,
                                                      Enumeration* enumeration = nullptr) {
    if (m_bound < 1.0) throw ValidationError("m_bound", "partial bound must be >= 1");
    EigencharacterReport out;
    MetricValue d = d_metric(chi, phi, seq, depth, enumeration);
    out.bound = d.value / (m_bound + 1.0);

    // ||chi - phi||^2 = sum |chi - phi|^2 w, tracked window + slack
    double acc = 0.0;
    for (size_t i = 0; i < wt.window_size(); ++i) {
        const GroupElement& el = wt.element(i);
        double gap = chord_d(chi.eval_angle(el) - phi.eval_angle(el));
        acc += gap * gap * wt.lower_d(el);
    }
    double slack = 4.0 * wt.missing().get_d();
    out.distance_lower = std::sqrt(acc);
    out.distance_upper = std::sqrt(acc + slack);

    out.chain_verified = true;
    size_t kmax = detail::effective_depth(seq, depth);
    for (size_t k = 0; k < kmax; ++k) {
        GroupElement g = term(seq, k, enumeration);
        double gap = chord_d(chi.eval_angle(g) - phi.eval_angle(g));
        if (gap > (m_bound + 1.0) * out.distance_upper * (1.0 + 1e-12)) out.chain_verified = false;
    }
    return out;
}

/// chi in G0-perp acts as a fixed vector of every translation along the
/// subgroup: chi(g_k) = 1 exactly for k < depth.
inline bool annihilator_fixed_point_check(const GeneratorLattice& lat, const Character& chi,
                                          const SequenceSpec& seq, long depth,
                                          Enumeration* enumeration = nullptr) {
    (void)lat;
    if (!chi.is_exact()) throw ValidationError("character", "fixed point check needs exact input");
    mpz_class q = 1;
    for (const auto& [c, a] : chi.exact_angles()) q = lcm(q, a.get_den());
    if (q == 1) q = 2;
    size_t kmax = detail::effective_depth(seq, depth);
    for (size_t k = 0; k < kmax; ++k) {
        GroupElement r = term_mod(seq, k, q, enumeration);
        if (chi.eval_angle_exact(r) != 0) return false;
    }
    return true;
}

struct ContinuityProbe {
    std::vector<double> dj;          // d_j at the truncation, j = 0..J
    std::vector<double> level_terms; // 2^{-j-1} d_j
    double observed_sup = 0.0;       // reported only; no global constant is asserted
    bool recursion_ok = true;        // d_j <= 2^j d_0 + 2 d_{j-1}
    bool induction_ok = true;        // d_j <= (j+1) 2^j d_0
    size_t coefficient_cases = 0;
    bool coefficient_bound_ok = true; // |chi(h)-phi(h)| <= (sum |alpha|) d_0, exact
};

/// Verifies the unconditionally true pieces of the eigenvector-field
/// continuity argument at finite truncation: the level recursion, its
/// induction consequence, and the generator-word coefficient bound.
inline ContinuityProbe continuity_probe(const Character& chi, const Character& phi,
                                        const SequenceSpec& seq, long depth, long level_cap,
                                        const std::vector<GroupElement>& probes,
                                        Enumeration* enumeration = nullptr,
                                        unsigned long tuple_budget = 1'000'000) {
    ContinuityProbe out;
    for (long j = 0; j <= level_cap; ++j) {
        double dj = d_j_product(chi, phi, seq, depth, j, tuple_budget, enumeration);
        out.dj.push_back(dj);
        out.level_terms.push_back(std::ldexp(dj, -static_cast<int>(j) - 1));
        out.observed_sup = std::max(out.observed_sup, out.level_terms.back());
        double d0 = out.dj[0];
        if (j >= 1) {
            double rhs = std::ldexp(d0, static_cast<int>(j)) + 2.0 * out.dj[static_cast<size_t>(j - 1)];
            if (dj > rhs) out.recursion_ok = false;
        }
        double induction_rhs = (static_cast<double>(j) + 1.0) * std::ldexp(d0, static_cast<int>(j));
        if (dj > induction_rhs) out.induction_ok = false;
    }

    // coefficient bound through generator words: express each probe in the
    // first `depth` terms and compare exactly when the characters are exact
    size_t kmax = detail::effective_depth(seq, depth);
    std::vector<GroupElement> gens;
    for (size_t k = 0; k < kmax; ++k) gens.push_back(term(seq, k, enumeration));
    GeneratorLattice lat{seq.ambient, gens};
    for (const auto& h : probes) {
        auto alpha = express_in_generators(h, lat);
        if (!alpha) throw NotCertifiableError("probe element not in the truncated span");
        out.coefficient_cases += 1;
        mpz_class s = 0;
        for (const auto& a : *alpha) s += abs(a);
        if (chi.is_exact() && phi.is_exact()) {
            mpq_class fh = pair_gap_fold(chi, phi, h);
            mpq_class fmax(0);
            for (size_t k = 0; k < gens.size(); ++k)
                fmax = std::max(fmax, pair_gap_fold(chi, phi, gens[k]));
            // chord(fh) <= s * chord(fmax), decided exactly
            if (sign_sin_combination({{mpq_class(1), fh}, {mpq_class(-s), fmax}}) > 0)
                out.coefficient_bound_ok = false;
        } else {
            double lhs = chord_d(chi.eval_angle(h) - phi.eval_angle(h));
            double d0 = out.dj.empty() ? 0.0 : out.dj[0];
            if (lhs > s.get_d() * d0 * (1.0 + 1e-12)) out.coefficient_bound_ok = false;
        }
    }
    return out;
}

} // namespace jamison
