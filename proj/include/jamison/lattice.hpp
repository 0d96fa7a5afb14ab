#pragma once

// Subgroups G0 of a finitely generated (or Z^infty) ambient group given by a
// finite generator list: index [G:G0], coset representatives, exact
// coefficient extraction, and the annihilator G0-perp in the dual.
//
// Everything routes through one lifted presentation: G = Z^n / R where
// n = free rank + torsion count and R is spanned by the torsion relations
// a_i * e_{l+i}. A generator list then becomes an integer matrix B whose
// columns are the lifted generators together with the relation columns, and
// [G:G0] = [Z^n : col-span(B)] falls out of the Smith normal form of B.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>
#include <gmpxx.h>

#include "jamison/character.hpp"
#include "jamison/errors.hpp"
#include "jamison/group.hpp"
#include "jamison/snf.hpp"

namespace jamison {

struct GeneratorLattice {
    GroupDescriptor ambient;
    std::vector<GroupElement> generators;
};

struct SubgroupIndex {
    bool finite = false;
    mpz_class count = 0;

    static SubgroupIndex infinite() { return {}; }
    static SubgroupIndex of(mpz_class n) { return {true, std::move(n)}; }
    bool operator==(const SubgroupIndex& o) const {
        return finite == o.finite && (!finite || count == o.count);
    }
};

struct AnnihilatorDescription {
    enum class Kind { Finite, PositiveDimensional };
    Kind kind = Kind::Finite;
    mpz_class order = 1;                      // |G0-perp| when finite
    std::vector<Character> elements;          // finite case: all of G0-perp
    std::vector<std::vector<mpz_class>> free_directions; // lifted integer directions theta(t) = t * dir mod 1
    std::string note;
};

namespace detail {

struct LiftedLattice {
    long free_rank = 0; // l
    long torsion = 0;   // r
    IntMatrix b;        // n x (m + r), columns: generators then relations
    size_t gen_count = 0;
    std::vector<int> coordinate_map; // lifted row -> ambient free coordinate (f.g.: identity)
};

inline LiftedLattice lift(const GeneratorLattice& lat, const GroupElement* extra = nullptr) {
    LiftedLattice out;
    const auto& desc = lat.ambient;
    if (desc.countable_free_part()) {
        std::set<int> touched;
        for (const auto& g : lat.generators)
            for (const auto& [c, v] : g.free) touched.insert(c);
        if (extra)
            for (const auto& [c, v] : extra->free) touched.insert(c);
        out.coordinate_map.assign(touched.begin(), touched.end());
        out.free_rank = static_cast<long>(out.coordinate_map.size());
    } else {
        out.free_rank = desc.free_rank();
        out.coordinate_map.resize(static_cast<size_t>(out.free_rank));
        for (long i = 0; i < out.free_rank; ++i) out.coordinate_map[static_cast<size_t>(i)] = static_cast<int>(i);
    }
    out.torsion = desc.torsion_count();
    const size_t n = static_cast<size_t>(out.free_rank + out.torsion);
    const size_t m = lat.generators.size();
    out.gen_count = m;
    out.b.assign(n, std::vector<mpz_class>(m + static_cast<size_t>(out.torsion), 0));
    std::map<int, size_t> row_of;
    for (size_t i = 0; i < out.coordinate_map.size(); ++i) row_of[out.coordinate_map[i]] = i;
    for (size_t j = 0; j < m; ++j) {
        const auto& g = lat.generators[j];
        for (const auto& [c, v] : g.free) out.b[row_of.at(c)][j] = v;
        for (long i = 0; i < out.torsion && i < static_cast<long>(g.torsion.size()); ++i)
            out.b[static_cast<size_t>(out.free_rank + i)][j] = g.torsion[static_cast<size_t>(i)];
    }
    const auto& orders = desc.torsion_orders();
    for (long i = 0; i < out.torsion; ++i)
        out.b[static_cast<size_t>(out.free_rank + i)][m + static_cast<size_t>(i)] = orders[static_cast<size_t>(i)];
    return out;
}

inline std::vector<mpz_class> lift_element(const LiftedLattice& ll, const GroupElement& g) {
    std::vector<mpz_class> x(static_cast<size_t>(ll.free_rank + ll.torsion), 0);
    std::map<int, size_t> row_of;
    for (size_t i = 0; i < ll.coordinate_map.size(); ++i) row_of[ll.coordinate_map[i]] = i;
    for (const auto& [c, v] : g.free) {
        auto it = row_of.find(c);
        if (it == row_of.end())
            throw NotCertifiableError("element touches a coordinate outside the lifted lattice");
        x[it->second] = v;
    }
    for (long i = 0; i < ll.torsion && i < static_cast<long>(g.torsion.size()); ++i)
        x[static_cast<size_t>(ll.free_rank + i)] = g.torsion[static_cast<size_t>(i)];
    return x;
}

inline std::vector<mpz_class> apply_matrix(const IntMatrix& m, const std::vector<mpz_class>& x) {
    std::vector<mpz_class> out(m.size(), 0);
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < x.size(); ++j)
            if (m[i][j] != 0 && x[j] != 0) out[i] += m[i][j] * x[j];
    return out;
}

} // namespace detail

/// [G : span(generators)], exact. Empty generator lists are fine (index |G|
/// when G is finite torsion, infinite otherwise). A Z^infty ambient always
/// yields infinite index for a finite generator list.
inline SubgroupIndex subgroup_index(const GeneratorLattice& lat) {
    if (lat.ambient.countable_free_part()) return SubgroupIndex::infinite();
    auto ll = detail::lift(lat);
    const size_t n = ll.b.size();
    if (n == 0) return SubgroupIndex::of(1);
    auto snf = smith_normal_form(ll.b);
    if (snf.rank() < n) return SubgroupIndex::infinite();
    mpz_class idx = 1;
    for (const auto& d : snf.diagonal()) idx *= d;
    return SubgroupIndex::of(idx);
}

/// The index of the generators inside the f.g. group spanned by the touched
/// coordinates only; used for truncated computations over Z^infty.
inline SubgroupIndex subgroup_index_truncated(const GeneratorLattice& lat) {
    if (!lat.ambient.countable_free_part()) return subgroup_index(lat);
    std::set<int> touched;
    for (const auto& g : lat.generators)
        for (const auto& [c, v] : g.free) touched.insert(c);
    GroupDescriptor trunc(static_cast<long>(touched.size()));
    std::map<int, int> remap;
    int next = 0;
    for (int c : touched) remap[c] = next++;
    GeneratorLattice tl{trunc, {}};
    for (const auto& g : lat.generators) {
        std::map<int, mpz_class> f;
        for (const auto& [c, v] : g.free) f[remap[c]] = v;
        tl.generators.push_back(trunc.make(std::move(f)));
    }
    return subgroup_index(tl);
}

/// Exactly [G:G0] coset representatives, pairwise inequivalent, identity
/// first, each the lexicographically smallest nonnegative vector of its class
/// within the fundamental box.
inline std::vector<GroupElement> coset_representatives(const GeneratorLattice& lat,
                                                       unsigned long enumeration_cap = 20'000'000) {
    auto idx = subgroup_index(lat);
    if (!idx.finite) throw InfiniteIndexError("coset representatives require finite index");
    auto ll = detail::lift(lat);
    const size_t n = ll.b.size();
    if (n == 0) return {lat.ambient.zero()};
    auto snf = smith_normal_form(ll.b);
    auto diag = snf.diagonal();

    // Coset code of x is (U*x mod d_i); the box [0,idx)^l x prod [0,a_i)
    // contains a full transversal because idx * Z^n lies in the column span.
    const auto& orders = lat.ambient.torsion_orders();
    std::vector<mpz_class> radix(n);
    for (size_t i = 0; i < n; ++i)
        radix[i] = i < static_cast<size_t>(ll.free_rank) ? idx.count
                                                         : mpz_class(orders[i - static_cast<size_t>(ll.free_rank)]);
    mpz_class total = 1;
    for (const auto& r : radix) total *= r;
    if (total > enumeration_cap)
        throw SupportTooLargeError("coset enumeration box exceeds cap");

    std::set<std::vector<mpz_class>> seen;
    std::vector<GroupElement> reps;
    std::vector<mpz_class> x(n, 0);
    const size_t want = idx.count.get_ui();
    auto advance = [&]() -> bool {
        for (size_t pos = n; pos-- > 0;) {
            x[pos] += 1;
            if (x[pos] < radix[pos]) return true;
            x[pos] = 0;
        }
        return false;
    };
    do {
        auto ux = detail::apply_matrix(snf.u, x);
        std::vector<mpz_class> code(n);
        for (size_t i = 0; i < n; ++i)
            mpz_fdiv_r(code[i].get_mpz_t(), ux[i].get_mpz_t(), diag[i].get_mpz_t());
        if (seen.insert(code).second) {
            std::map<int, mpz_class> f;
            std::vector<mpz_class> t;
            for (size_t i = 0; i < static_cast<size_t>(ll.free_rank); ++i)
                if (x[i] != 0) f[ll.coordinate_map[i]] = x[i];
            for (size_t i = static_cast<size_t>(ll.free_rank); i < n; ++i) t.push_back(x[i]);
            reps.push_back(lat.ambient.make(std::move(f), std::move(t)));
            if (reps.size() == want) break;
        }
    } while (advance());
    return reps;
}

namespace detail {

struct CoefficientProblem {
    std::vector<mpz_class> particular;          // length m (generator coefficients)
    std::vector<std::vector<mpz_class>> kernel; // column vectors, length m each
};

/// Column-style HNF reduction of the kernel; drops zero columns and yields a
/// lower-echelon basis ordered by pivot row.
inline std::vector<std::vector<mpz_class>> reduce_kernel(std::vector<std::vector<mpz_class>> cols) {
    if (cols.empty()) return cols;
    const size_t m = cols[0].size();
    size_t piv = 0;
    for (size_t row = 0; row < m && piv < cols.size(); ++row) {
        // gcd-combine columns piv.. so only cols[piv] is nonzero at this row
        for (;;) {
            size_t best = piv;
            bool found = false;
            mpz_class bestabs;
            for (size_t j = piv; j < cols.size(); ++j) {
                if (cols[j][row] == 0) continue;
                mpz_class a = abs(cols[j][row]);
                if (!found || a < bestabs) {
                    bestabs = a;
                    best = j;
                    found = true;
                }
            }
            if (!found) break;
            std::swap(cols[piv], cols[best]);
            bool clean = true;
            for (size_t j = piv + 1; j < cols.size(); ++j) {
                if (cols[j][row] == 0) continue;
                mpz_class q;
                mpz_tdiv_q(q.get_mpz_t(), cols[j][row].get_mpz_t(), cols[piv][row].get_mpz_t());
                for (size_t i = 0; i < m; ++i) cols[j][i] -= q * cols[piv][i];
                if (cols[j][row] != 0) clean = false;
            }
            if (clean) break;
        }
        if (cols[piv][row] != 0) {
            if (cols[piv][row] < 0)
                for (size_t i = 0; i < m; ++i) cols[piv][i] = -cols[piv][i];
            ++piv;
        }
    }
    cols.resize(piv);
    return cols;
}

inline mpz_class l1_norm(const std::vector<mpz_class>& v) {
    mpz_class s = 0;
    for (const auto& x : v) s += abs(x);
    return s;
}

inline bool lex_less(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

/// Exact minimizer of |y0 + K t|_1 with lexicographic tie-break, by branch
/// and bound over the echelon kernel basis.
inline std::vector<mpz_class> minimize_l1(const std::vector<mpz_class>& y0,
                                          const std::vector<std::vector<mpz_class>>& kernel) {
    if (kernel.empty()) return y0;
    const size_t m = y0.size();
    const size_t k = kernel.size();
    std::vector<size_t> pivot_row(k + 1, m);
    for (size_t j = 0; j < k; ++j) {
        size_t p = 0;
        while (p < m && kernel[j][p] == 0) ++p;
        pivot_row[j] = p;
    }

    std::vector<mpz_class> best = y0;
    mpz_class best_cost = l1_norm(y0);
    std::vector<mpz_class> y = y0;

    // Depth-first over t_0, t_1, ... Rows below pivot_row[j] are final before
    // level j runs; `settled` is their accumulated cost and a valid lower
    // bound for everything the subtree can reach.
    std::function<void(size_t, const mpz_class&)> descend = [&](size_t j, const mpz_class& settled) {
        if (j == k) {
            if (settled < best_cost || (settled == best_cost && lex_less(y, best))) {
                best_cost = settled;
                best = y;
            }
            return;
        }
        const size_t p = pivot_row[j];
        const mpz_class& step = kernel[j][p]; // positive by HNF normalization
        mpz_class t0;
        {
            mpz_class num = -y[p] + step / 2;
            mpz_fdiv_q(t0.get_mpz_t(), num.get_mpz_t(), step.get_mpz_t());
        }
        auto try_t = [&](const mpz_class& t) -> bool {
            mpz_class at_p = abs(y[p] + t * step);
            if (settled + at_p > best_cost) return false;
            for (size_t i = p; i < m; ++i) y[i] += t * kernel[j][i];
            mpz_class new_settled = settled;
            for (size_t row = p; row < pivot_row[j + 1]; ++row) new_settled += abs(y[row]);
            descend(j + 1, new_settled);
            for (size_t i = p; i < m; ++i) y[i] -= t * kernel[j][i];
            return true;
        };
        bool up_alive = true, down_alive = true;
        for (mpz_class off = 0; up_alive || down_alive; ++off) {
            if (off == 0) {
                if (!try_t(t0)) up_alive = down_alive = false;
                continue;
            }
            if (up_alive) up_alive = try_t(t0 + off);
            if (down_alive) down_alive = try_t(t0 - off);
        }
    };
    descend(0, 0);
    return best;
}

} // namespace detail

/// Integer coefficients alpha with sum alpha_k * gen_k = h, minimizing
/// sum |alpha_k| with lexicographic tie-break; nullopt when h is outside the
/// generated subgroup.
inline std::optional<std::vector<mpz_class>> express_in_generators(const GroupElement& h,
                                                                   const GeneratorLattice& lat) {
    detail::LiftedLattice ll;
    try {
        ll = detail::lift(lat, &h);
    } catch (const NotCertifiableError&) {
        return std::nullopt;
    }
    const size_t n = ll.b.size();
    const size_t cols = n == 0 ? 0 : ll.b[0].size();
    std::vector<mpz_class> target;
    try {
        target = detail::lift_element(ll, h);
    } catch (const NotCertifiableError&) {
        return std::nullopt;
    }
    if (n == 0) return std::vector<mpz_class>(lat.generators.size(), 0);

    auto snf = smith_normal_form(ll.b);
    auto uh = detail::apply_matrix(snf.u, target);
    const size_t nm = std::min(n, cols);
    std::vector<mpz_class> z(cols, 0);
    for (size_t i = 0; i < n; ++i) {
        const mpz_class di = i < nm ? snf.d[i][i] : mpz_class(0);
        if (di != 0) {
            mpz_class q, r;
            mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), uh[i].get_mpz_t(), di.get_mpz_t());
            if (r != 0) return std::nullopt;
            z[i] = q;
        } else if (uh[i] != 0) {
            return std::nullopt;
        }
    }
    auto y_full = detail::apply_matrix(snf.v, z);

    // kernel of the lifted map: columns of V at zero columns of D
    std::vector<std::vector<mpz_class>> kernel;
    for (size_t j = 0; j < cols; ++j) {
        bool zero_col = j >= nm || snf.d[j][j] == 0;
        if (!zero_col) continue;
        std::vector<mpz_class> col(ll.gen_count);
        bool nonzero = false;
        for (size_t i = 0; i < ll.gen_count; ++i) {
            col[i] = snf.v[i][j];
            if (col[i] != 0) nonzero = true;
        }
        if (nonzero) kernel.push_back(std::move(col));
    }
    std::vector<mpz_class> y0(y_full.begin(), y_full.begin() + static_cast<long>(ll.gen_count));
    auto reduced = detail::reduce_kernel(std::move(kernel));
    return detail::minimize_l1(y0, reduced);
}

/// G0-perp: all characters of G equal to 1 on the generated subgroup.
inline AnnihilatorDescription annihilator(const GeneratorLattice& lat,
                                          unsigned long enumeration_cap = 5'000'000) {
    AnnihilatorDescription out;
    if (lat.ambient.countable_free_part()) {
        out.kind = AnnihilatorDescription::Kind::PositiveDimensional;
        out.order = 0;
        out.note = "Z^infty ambient: untouched coordinates leave full circle directions";
        return out;
    }
    auto ll = detail::lift(lat);
    const size_t n = ll.b.size();
    if (n == 0) {
        out.kind = AnnihilatorDescription::Kind::Finite;
        out.order = 1;
        out.elements = {Character::trivial(lat.ambient)};
        return out;
    }
    auto snf = smith_normal_form(ll.b);
    const size_t cols = ll.b[0].size();
    const size_t nm = std::min(n, cols);

    std::vector<size_t> free_rows;
    std::vector<std::pair<size_t, mpz_class>> cyclic; // (row, modulus d_i >= 2)
    mpz_class order = 1;
    for (size_t i = 0; i < n; ++i) {
        mpz_class di = i < nm ? snf.d[i][i] : mpz_class(0);
        if (di == 0)
            free_rows.push_back(i);
        else if (di > 1) {
            cyclic.emplace_back(i, di);
            order *= di;
        }
    }
    if (!free_rows.empty()) {
        out.kind = AnnihilatorDescription::Kind::PositiveDimensional;
        out.order = 0;
        for (size_t i : free_rows) out.free_directions.push_back(snf.u[i]);
        out.note = "kernel of the generator matrix transpose has positive dimension";
        return out;
    }
    out.kind = AnnihilatorDescription::Kind::Finite;
    out.order = order;
    if (order > enumeration_cap)
        throw SupportTooLargeError("annihilator enumeration exceeds cap");

    const auto& orders = lat.ambient.torsion_orders();
    std::vector<mpz_class> psi(cyclic.size(), 0);
    for (;;) {
        // theta = U^T * (psi_i / d_i on the cyclic rows), reduced mod 1
        std::vector<mpq_class> theta(n, mpq_class(0));
        for (size_t t = 0; t < cyclic.size(); ++t) {
            if (psi[t] == 0) continue;
            auto [row, di] = cyclic[t];
            mpq_class w(psi[t], di);
            w.canonicalize();
            for (size_t c = 0; c < n; ++c)
                if (snf.u[row][c] != 0) theta[c] += w * snf.u[row][c];
        }
        std::map<int, mpq_class> angles;
        for (size_t c = 0; c < static_cast<size_t>(ll.free_rank); ++c) {
            mpq_class a = mod1(theta[c]);
            if (a != 0) angles[ll.coordinate_map[c]] = a;
        }
        std::vector<mpz_class> tors;
        for (size_t c = static_cast<size_t>(ll.free_rank); c < n; ++c) {
            mpq_class a = mod1(theta[c]);
            mpq_class scaled = a * orders[c - static_cast<size_t>(ll.free_rank)];
            scaled.canonicalize();
            // torsion angles are forced onto 1/a_i multiples by the relation columns
            tors.push_back(scaled.get_num());
        }
        out.elements.push_back(Character::exact(lat.ambient, std::move(angles), std::move(tors)));

        size_t pos = cyclic.size();
        bool done = true;
        while (pos > 0) {
            --pos;
            psi[pos] += 1;
            if (psi[pos] < cyclic[pos].second) {
                done = false;
                break;
            }
            psi[pos] = 0;
        }
        if (done) break;
    }
    return out;
}

} // namespace jamison
