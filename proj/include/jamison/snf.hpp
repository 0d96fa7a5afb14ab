#pragma once

// Smith normal form over Z with big-integer entries. Pivots are chosen as the
// nonzero entry of minimal absolute value in the remaining block to limit
// coefficient growth. U and D and V satisfy U*M*V = D exactly, with U, V
// unimodular and D diagonal with a divisibility chain d1 | d2 | ...

#include <cstddef>
#include <vector>
#include <gmpxx.h>

namespace jamison {

using IntMatrix = std::vector<std::vector<mpz_class>>;

inline IntMatrix identity_matrix(size_t n) {
    IntMatrix m(n, std::vector<mpz_class>(n, 0));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline IntMatrix matrix_product(const IntMatrix& a, const IntMatrix& b) {
    size_t r = a.size(), k = r ? a[0].size() : 0, c = b.empty() ? 0 : b[0].size();
    IntMatrix out(r, std::vector<mpz_class>(c, 0));
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j)
            for (size_t t = 0; t < k; ++t) out[i][j] += a[i][t] * b[t][j];
    return out;
}

/// Exact determinant by fraction-free (Bareiss) elimination.
inline mpz_class integer_determinant(IntMatrix m) {
    size_t n = m.size();
    if (n == 0) return 1;
    mpz_class sign = 1, prev = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            size_t swap = k + 1;
            while (swap < n && m[swap][k] == 0) ++swap;
            if (swap == n) return 0;
            std::swap(m[k], m[swap]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

struct SnfDecomposition {
    IntMatrix u; // rows x rows, unimodular
    IntMatrix d; // rows x cols, diagonal with divisibility chain
    IntMatrix v; // cols x cols, unimodular

    size_t rank() const {
        size_t r = 0, n = std::min(d.size(), d.empty() ? 0 : d[0].size());
        for (size_t i = 0; i < n; ++i)
            if (d[i][i] != 0) ++r;
        return r;
    }

    std::vector<mpz_class> diagonal() const {
        size_t n = std::min(d.size(), d.empty() ? 0 : d[0].size());
        std::vector<mpz_class> out;
        out.reserve(n);
        for (size_t i = 0; i < n; ++i) out.push_back(d[i][i]);
        return out;
    }
};

namespace detail {

inline bool find_min_pivot(const IntMatrix& d, size_t t, size_t& pi, size_t& pj) {
    size_t rows = d.size(), cols = rows ? d[0].size() : 0;
    bool found = false;
    mpz_class best;
    for (size_t i = t; i < rows; ++i)
        for (size_t j = t; j < cols; ++j) {
            if (d[i][j] == 0) continue;
            mpz_class a = abs(d[i][j]);
            if (!found || a < best) {
                best = a;
                pi = i;
                pj = j;
                found = true;
            }
        }
    return found;
}

inline bool row_col_clear(const IntMatrix& d, size_t t) {
    size_t rows = d.size(), cols = rows ? d[0].size() : 0;
    for (size_t i = t + 1; i < rows; ++i)
        if (d[i][t] != 0) return false;
    for (size_t j = t + 1; j < cols; ++j)
        if (d[t][j] != 0) return false;
    return true;
}

} // namespace detail

inline SnfDecomposition smith_normal_form(const IntMatrix& m) {
    size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    SnfDecomposition out;
    out.d = m;
    out.u = identity_matrix(rows);
    out.v = identity_matrix(cols);
    IntMatrix& d = out.d;
    IntMatrix& u = out.u;
    IntMatrix& v = out.v;

    size_t steps = std::min(rows, cols);
    for (size_t t = 0; t < steps; ++t) {
        for (;;) {
            size_t pi = t, pj = t;
            if (!detail::find_min_pivot(d, t, pi, pj)) {
                t = steps; // remaining block is zero
                break;
            }
            if (pi != t) {
                std::swap(d[t], d[pi]);
                std::swap(u[t], u[pi]);
            }
            if (pj != t) {
                for (size_t i = 0; i < rows; ++i) std::swap(d[i][t], d[i][pj]);
                for (size_t i = 0; i < cols; ++i) std::swap(v[i][t], v[i][pj]);
            }
            for (size_t i = t + 1; i < rows; ++i) {
                if (d[i][t] == 0) continue;
                mpz_class q;
                mpz_tdiv_q(q.get_mpz_t(), d[i][t].get_mpz_t(), d[t][t].get_mpz_t());
                if (q != 0)
                    for (size_t j = 0; j < cols; ++j) d[i][j] -= q * d[t][j];
                for (size_t j = 0; j < rows && q != 0; ++j) u[i][j] -= q * u[t][j];
            }
            for (size_t j = t + 1; j < cols; ++j) {
                if (d[t][j] == 0) continue;
                mpz_class q;
                mpz_tdiv_q(q.get_mpz_t(), d[t][j].get_mpz_t(), d[t][t].get_mpz_t());
                if (q != 0) {
                    for (size_t i = 0; i < rows; ++i) d[i][j] -= q * d[i][t];
                    for (size_t i = 0; i < cols; ++i) v[i][j] -= q * v[i][t];
                }
            }
            if (!detail::row_col_clear(d, t)) continue;

            // Enforce the divisibility chain: fold any non-multiple into row t.
            bool divides_all = true;
            for (size_t i = t + 1; i < rows && divides_all; ++i)
                for (size_t j = t + 1; j < cols && divides_all; ++j)
                    if (d[i][j] % d[t][t] != 0) {
                        for (size_t jj = 0; jj < cols; ++jj) d[t][jj] += d[i][jj];
                        for (size_t jj = 0; jj < rows; ++jj) u[t][jj] += u[i][jj];
                        divides_all = false;
                    }
            if (divides_all) break;
        }
        if (t >= steps) break;
        if (d[t][t] < 0) {
            for (size_t j = 0; j < cols; ++j) d[t][j] = -d[t][j];
            for (size_t j = 0; j < rows; ++j) u[t][j] = -u[t][j];
        }
    }
    // Normalize any leftover negative diagonal entries (zero block handled above).
    for (size_t t = 0; t < steps; ++t)
        if (d[t][t] < 0) {
            for (size_t j = 0; j < cols; ++j) d[t][j] = -d[t][j];
            for (size_t j = 0; j < rows; ++j) u[t][j] = -u[t][j];
        }
    return out;
}

} // namespace jamison
