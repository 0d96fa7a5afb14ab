#pragma once

// Angles live on the torus R/Z and are stored as exact rationals in [0,1).
// All gap computations go through 2*sin(pi*x) of a folded angle so that
// values near 0 and 2 keep full relative accuracy.

#include <cmath>
#include <cstdint>
#include <gmpxx.h>

namespace jamison {

/// Reduce a rational onto [0,1).
inline mpq_class mod1(const mpq_class& a) {
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
    mpq_class out(r, a.get_den());
    out.canonicalize();
    return out;
}

inline mpq_class make_angle(const mpz_class& p, const mpz_class& q) {
    mpq_class a(p, q);
    a.canonicalize();
    return mod1(a);
}

inline mpq_class make_angle(long p, long q) { return make_angle(mpz_class(p), mpz_class(q)); }

/// Fold an angle in [0,1) onto [0,1/2]; |e^{2pi i a} - 1| depends only on the fold.
inline mpq_class fold_angle(const mpq_class& a) {
    mpq_class b = mod1(a);
    if (b > mpq_class(1, 2)) b = 1 - b;
    return b;
}

/// Chord length |e^{2pi i a} - 1| = 2 sin(pi * fold(a)).
inline double chord(const mpq_class& a) {
    mpq_class f = fold_angle(a);
    return 2.0 * std::sin(M_PI * f.get_d());
}

inline double mod1_d(double x) {
    double f = x - std::floor(x);
    if (f >= 1.0) f -= 1.0;
    return f;
}

inline double fold_angle_d(double x) {
    double f = mod1_d(x);
    return f > 0.5 ? 1.0 - f : f;
}

inline double chord_d(double a) { return 2.0 * std::sin(M_PI * fold_angle_d(a)); }

inline bool is_zero_angle(const mpq_class& a) { return mod1(a) == 0; }

} // namespace jamison
