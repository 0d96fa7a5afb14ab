#pragma once

// The weight w(g) = sum_{n>=1} 2^-n m^{*n}(g) for m = sum 2^-n delta_{h_n},
// truncated to N outer terms, M atoms and a finite window, with every dropped
// contribution accounted one-sidedly: tracked values are exact lower bounds
// at fixed-point scale 2^-F, and the global missing mass 1 - sum(w_N) is an
// exact upper slack valid for every entry. Inequality checks use the
// unfavorable endpoints, which turns the table into a one-sided certificate.

#include <optional>
#include <vector>
#include <gmpxx.h>

#include "jamison/enumeration.hpp"
#include "jamison/errors.hpp"
#include "jamison/group.hpp"

namespace jamison {

class WeightTable {
public:
    WeightTable(Enumeration& enumeration, long terms, long atoms, size_t window_count,
                long scale_bits = 256, size_t op_budget = 400'000'000)
        : desc_(enumeration.group()), terms_(terms), atoms_(atoms), scale_bits_(scale_bits) {
        if (terms < 1) throw ValidationError("weight.terms", "need at least one term");
        if (atoms < 1) throw ValidationError("weight.atoms", "need at least one atom");
        if (window_count < 1) throw ValidationError("weight.window", "empty window");
        double ops = static_cast<double>(window_count) * static_cast<double>(atoms) *
                     static_cast<double>(terms);
        if (ops > static_cast<double>(op_budget))
            throw SupportTooLargeError("weight table work exceeds the configured budget");

        enumeration.ensure(std::max<size_t>(window_count, static_cast<size_t>(atoms)));
        window_.reserve(window_count);
        for (size_t i = 0; i < window_count; ++i) {
            window_.push_back(enumeration.at(i + 1));
            index_[window_.back()] = i;
        }
        // transition table: adding atom h_i maps window slot v to slot t (or off-window)
        std::vector<std::vector<long>> target(static_cast<size_t>(atoms),
                                              std::vector<long>(window_count, -1));
        for (long i = 0; i < atoms; ++i) {
            const GroupElement& atom = enumeration.at(static_cast<size_t>(i) + 1);
            for (size_t v = 0; v < window_count; ++v) {
                GroupElement s = desc_.add(window_[v], atom);
                auto it = index_.find(s);
                if (it != index_.end()) target[static_cast<size_t>(i)][v] = static_cast<long>(it->second);
            }
        }

        w_.assign(window_count, mpz_class(0));
        std::vector<mpz_class> cur(window_count, mpz_class(0));
        std::vector<mpz_class> next(window_count, mpz_class(0));
        // m^{*1} restricted to the window
        for (long i = 0; i < atoms; ++i) {
            auto it = index_.find(enumeration.at(static_cast<size_t>(i) + 1));
            if (it == index_.end()) continue;
            mpz_class mass = mpz_class(1) << (scale_bits_ - (i + 1));
            cur[it->second] += mass;
        }
        mpz_class tmp;
        for (long n = 1; n <= terms_; ++n) {
            for (size_t v = 0; v < window_count; ++v) {
                if (cur[v] == 0) continue;
                mpz_tdiv_q_2exp(tmp.get_mpz_t(), cur[v].get_mpz_t(), static_cast<mp_bitcnt_t>(n));
                w_[v] += tmp;
            }
            if (n == terms_) break;
            for (auto& x : next) x = 0;
            for (size_t v = 0; v < window_count; ++v) {
                if (cur[v] == 0) continue;
                size_t bits = mpz_sizeinbase(cur[v].get_mpz_t(), 2);
                for (long i = 0; i < atoms; ++i) {
                    if (bits <= static_cast<size_t>(i + 1)) break; // shifted mass underflows
                    long t = target[static_cast<size_t>(i)][v];
                    if (t < 0) continue;
                    mpz_tdiv_q_2exp(tmp.get_mpz_t(), cur[v].get_mpz_t(),
                                    static_cast<mp_bitcnt_t>(i + 1));
                    next[static_cast<size_t>(t)] += tmp;
                }
            }
            cur.swap(next);
        }
        sum_w_ = 0;
        for (const auto& x : w_) sum_w_ += x;
    }

    const GroupDescriptor& group() const { return desc_; }
    long terms() const { return terms_; }
    long atoms() const { return atoms_; }
    long scale_bits() const { return scale_bits_; }
    size_t window_size() const { return window_.size(); }
    const GroupElement& element(size_t idx) const { return window_[idx]; }

    std::optional<size_t> window_index(const GroupElement& g) const {
        auto it = index_.find(g);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    /// Exact lower bound on w(g) (zero off-window).
    mpq_class lower(const GroupElement& g) const {
        auto idx = window_index(g);
        if (!idx) return mpq_class(0);
        return scaled(w_[*idx]);
    }

    const mpz_class& lower_num(size_t idx) const { return w_[idx]; }

    /// Total tracked mass, an exact lower bound on sum_g w_N(g) = 1 - 2^-N.
    mpq_class sum_tracked() const { return scaled(sum_w_); }

    /// Mass of the n<=N contributions that left the window or the atom set;
    /// exact, nonnegative when the table is sound.
    mpq_class off_mass() const {
        mpq_class full = 1 - mpq_class(1, mpz_class(1) << terms_);
        return full - sum_tracked();
    }

    /// 1 - (tracked + off bucket): exactly the dropped outer tail 2^-N.
    mpq_class deficit() const { return mpq_class(1, mpz_class(1) << terms_); }

    /// Global per-entry upper slack: w(g) <= lower(g) + missing() for every g.
    mpq_class missing() const { return 1 - sum_tracked(); }

    /// Numerator of missing() at scale 2^-F (exact).
    mpz_class missing_num() const { return (mpz_class(1) << scale_bits_) - sum_w_; }

    double lower_d(const GroupElement& g) const { return lower(g).get_d(); }
    double upper_d(const GroupElement& g) const {
        mpq_class u = lower(g) + missing();
        return u.get_d();
    }

    /// One-sided certificate for w(num_el) <= bound * w(den_el): compares the
    /// unfavorable endpoints exactly. Returns nullopt when the denominator's
    /// lower bound vanishes (insufficient support).
    std::optional<bool> certified_ratio_le(const GroupElement& num_el, const GroupElement& den_el,
                                           const mpz_class& bound) const {
        auto ni = window_index(num_el), di = window_index(den_el);
        if (!di || w_[*di] == 0) return std::nullopt;
        mpz_class up = ni ? w_[*ni] + missing_num() : missing_num();
        return up <= bound * w_[*di];
    }

private:
    mpq_class scaled(const mpz_class& num) const {
        mpq_class q(num, mpz_class(1) << scale_bits_);
        q.canonicalize();
        return q;
    }

    GroupDescriptor desc_;
    long terms_;
    long atoms_;
    long scale_bits_;
    std::vector<GroupElement> window_;
    std::map<GroupElement, size_t> index_;
    std::vector<mpz_class> w_;
    mpz_class sum_w_;
};

/// Convenience factory matching the usual parameterization.
inline WeightTable weight_table(Enumeration& enumeration, long terms, size_t window_count,
                                long atoms = 0, long scale_bits = 256) {
    if (atoms <= 0) atoms = terms;
    return WeightTable(enumeration, terms, atoms, window_count, scale_bits);
}

struct SubinvarianceReport {
    double max_certified_ratio = 0.0; // max over pairs of upper(g+h)/lower(g)
    size_t pairs = 0;
    bool squared_bound_holds = false;   // w(g+h_l) <= 2^{l+1} w(g), one-sided
    bool sqrt_bound_held_empirically = false; // the printed sqrt(2)^{l+1} form, midpoints
};

/// Checks w(g + h_l) <= 2^{l+1} w(g) over every pair with certifiable support
/// (lower(g) clearing the slack by margin_bits); also reports whether the
/// stricter sqrt(2)^{l+1} form held on the tracked values.
inline SubinvarianceReport subinvariance_check(const WeightTable& wt, Enumeration& enumeration,
                                               long ell, long margin_bits = 4) {
    if (ell < 1) throw ValidationError("ell", "enumeration index is 1-based");
    const GroupElement h = enumeration.at(static_cast<size_t>(ell));
    const auto& desc = wt.group();
    mpz_class bound = mpz_class(1) << (ell + 1);
    mpz_class slack = wt.missing_num() << margin_bits;

    SubinvarianceReport out;
    out.squared_bound_holds = true;
    out.sqrt_bound_held_empirically = true;
    double sqrt_bound = std::pow(std::sqrt(2.0), static_cast<double>(ell + 1));
    for (size_t v = 0; v < wt.window_size(); ++v) {
        const GroupElement& g = wt.element(v);
        if (wt.lower_num(v) == 0 || wt.lower_num(v) < slack) continue;
        GroupElement s = desc.add(g, h);
        auto si = wt.window_index(s);
        if (!si) continue;
        auto ok = wt.certified_ratio_le(s, g, bound);
        if (!ok) continue;
        out.pairs += 1;
        if (!*ok) out.squared_bound_holds = false;
        double up = wt.upper_d(s), lo = wt.lower_d(g);
        out.max_certified_ratio = std::max(out.max_certified_ratio, up / lo);
        // the printed corollary constant is sqrt(2)^{l+1} on w itself
        if (wt.lower_d(s) / lo > sqrt_bound) out.sqrt_bound_held_empirically = false;
    }
    if (out.pairs == 0)
        throw InsufficientSupportError("no pair clears the tail slack at this margin");
    return out;
}

struct TranslationNormReport {
    double observed = 0.0;       // sup over checked m of sqrt(lower(h_m - h_k)/lower(h_m))
    double certified_upper = 0.0;// same sup with unfavorable endpoints
    size_t pairs = 0;
    bool bound_holds = false;    // certified against 2^{k+1} in squared form
};

/// Norm of translation by h_k on the truncated space: a weighted permutation
/// in the Dirac basis, so the norm is exactly the sup of sqrt(w(h_m-h_k)/w(h_m)).
inline TranslationNormReport translation_norm(const WeightTable& wt, Enumeration& enumeration,
                                              long k, size_t m_max) {
    if (k < 1) throw ValidationError("k", "enumeration index is 1-based");
    const GroupElement hk = enumeration.at(static_cast<size_t>(k));
    const auto& desc = wt.group();
    mpz_class bound = mpz_class(1) << (k + 1);

    TranslationNormReport out;
    out.bound_holds = true;
    for (size_t m = 1; m <= m_max; ++m) {
        const GroupElement& hm = enumeration.at(m);
        auto mi = wt.window_index(hm);
        if (!mi) continue;
        GroupElement diff = desc.sub(hm, hk);
        if (!wt.window_index(diff)) continue;
        auto ok = wt.certified_ratio_le(diff, hm, bound);
        if (!ok) throw InsufficientSupportError("translation pair lost its denominator support");
        out.pairs += 1;
        if (!*ok) out.bound_holds = false;
        double lo_den = wt.lower_d(hm);
        out.observed = std::max(out.observed, std::sqrt(wt.lower_d(diff) / lo_den));
        out.certified_upper = std::max(out.certified_upper, std::sqrt(wt.upper_d(diff) / lo_den));
    }
    if (out.pairs == 0) throw InsufficientSupportError("no translation pairs inside the window");
    return out;
}

} // namespace jamison
