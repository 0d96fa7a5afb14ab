#pragma once

// Certified sign evaluation for expressions sum_i c_i * sin(pi * a_i) with
// rational c_i and rational angles a_i. Symbolic cancellation first, then
// MPFR evaluation with a rigorous error bound at escalating precision.
// This is what makes the zero-tolerance chord comparisons honest.

#include <map>
#include <stdexcept>
#include <vector>
#include <gmpxx.h>
#include <mpfr.h>

#include "jamison/angles.hpp"

namespace jamison {

struct SinTerm {
    mpq_class coef;
    mpq_class angle; // any rational; folded internally
};

struct ComparisonUndecided : std::runtime_error {
    explicit ComparisonUndecided(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline int sign_mpq(const mpq_class& q) { return sgn(q); }

/// Evaluate sum c_i sin(pi a_i) at `prec` bits; returns value and an absolute
/// error bound. Angles must be folded into [0,1/2].
inline void eval_sin_combination(const std::vector<SinTerm>& terms, mpfr_prec_t prec,
                                 double& value, double& err) {
    mpfr_t pi, t, acc, c;
    mpfr_init2(pi, prec);
    mpfr_init2(t, prec);
    mpfr_init2(acc, prec);
    mpfr_init2(c, prec);
    mpfr_const_pi(pi, MPFR_RNDN);
    mpfr_set_zero(acc, 1);
    double coef_abs_sum = 0.0;
    for (const auto& term : terms) {
        mpfr_set_q(t, term.angle.get_mpq_t(), MPFR_RNDN);
        mpfr_mul(t, t, pi, MPFR_RNDN);
        mpfr_sin(t, t, MPFR_RNDN);
        mpfr_set_q(c, term.coef.get_mpq_t(), MPFR_RNDN);
        mpfr_mul(t, t, c, MPFR_RNDN);
        mpfr_add(acc, acc, t, MPFR_RNDN);
        coef_abs_sum += std::abs(term.coef.get_d());
    }
    value = mpfr_get_d(acc, MPFR_RNDN);
    // Each term goes through <= 5 rounded operations on values bounded by
    // |c_i|, plus the final additions; 2^(8-prec) per unit of coefficient
    // mass is a generous absolute bound.
    err = (coef_abs_sum + 1.0) * std::ldexp(1.0, 8 - static_cast<int>(prec));
    mpfr_clear(pi);
    mpfr_clear(t);
    mpfr_clear(acc);
    mpfr_clear(c);
}

} // namespace detail

/// Sign of sum_i c_i * sin(pi * a_i), exact. Returns -1, 0, +1.
/// Throws ComparisonUndecided if the value is nonzero but smaller than the
/// final escalation precision can resolve (never expected for the chord
/// comparisons this library performs).
inline int sign_sin_combination(std::vector<SinTerm> terms) {
    // Canonicalize: fold angles, merge equal angles, drop sin(0) terms.
    std::map<mpq_class, mpq_class> merged;
    for (auto& t : terms) {
        mpq_class f = fold_angle(t.angle);
        if (f == 0 || t.coef == 0) continue;
        merged[f] += t.coef;
    }
    std::vector<SinTerm> clean;
    for (auto& [angle, coef] : merged)
        if (coef != 0) clean.push_back({coef, angle});
    if (clean.empty()) return 0;
    if (clean.size() == 1) return detail::sign_mpq(clean.front().coef); // sin > 0 on (0,1/2]

    for (mpfr_prec_t prec = 128; prec <= 16384; prec *= 2) {
        double value, err;
        detail::eval_sin_combination(clean, prec, value, err);
        if (value > err) return 1;
        if (value < -err) return -1;
    }
    throw ComparisonUndecided("sin combination too close to zero to resolve");
}

/// Sign of (2 sin(pi a) - scale * 2 sin(pi b)) for folded angles a, b.
inline int chord_cmp(const mpq_class& fold_a, const mpq_class& scale, const mpq_class& fold_b) {
    if (scale == 1 && fold_angle(fold_a) == fold_angle(fold_b)) return 0;
    return sign_sin_combination({{mpq_class(1), fold_a}, {-scale, fold_b}});
}

/// Certified comparison of two chord values given by folded angles.
inline int chord_cmp(const mpq_class& fold_a, const mpq_class& fold_b) {
    // 2 sin(pi x) is strictly increasing on [0,1/2].
    return cmp(fold_angle(fold_a), fold_angle(fold_b));
}

} // namespace jamison
