#pragma once

// Sequence specifications (g_k): explicit lists or formula families with a
// residue oracle, plus the span bookkeeping that drives the verdict pipeline.
// Formula terms are evaluated modulo q wherever possible so that families
// like b^(2^k) never materialize astronomically large integers.

#include <optional>
#include <set>
#include <string>
#include <vector>
#include <gmpxx.h>

#include "jamison/enumeration.hpp"
#include "jamison/errors.hpp"
#include "jamison/group.hpp"
#include "jamison/lattice.hpp"

namespace jamison {

enum class SequenceKind { ExplicitList, Geometric, DoubleExponential, Polynomial, AllElements, Basis };

struct SequenceSpec {
    GroupDescriptor ambient;
    SequenceKind kind = SequenceKind::ExplicitList;

    std::vector<GroupElement> elements; // ExplicitList
    bool exhaustive = false;            // the list is all terms there are

    mpz_class scale = 1;            // Geometric: scale * ratio^k
    mpz_class ratio = 2;            // Geometric
    mpz_class base = 2;             // DoubleExponential: base^(2^k)
    std::vector<mpz_class> coeffs;  // Polynomial: c0 + c1*k + ...
    int coordinate = 0;             // free coordinate carrying a 1-D family
    int start = 0;                  // Basis: e_start, e_start+1, ...

    std::vector<GroupElement> prefix; // prepended terms (augmentation)
    std::string name;

    static SequenceSpec explicit_list(GroupDescriptor g, std::vector<GroupElement> elems,
                                      bool exhaustive_list = false) {
        SequenceSpec s;
        s.ambient = std::move(g);
        s.kind = SequenceKind::ExplicitList;
        s.elements = std::move(elems);
        s.exhaustive = exhaustive_list;
        return s;
    }

    static SequenceSpec integers_from(GroupDescriptor g, long first) {
        // convenience: (first, first+1, ...) as Polynomial k + first
        SequenceSpec s;
        s.ambient = std::move(g);
        s.kind = SequenceKind::Polynomial;
        s.coeffs = {mpz_class(first), mpz_class(1)};
        return s;
    }

    static SequenceSpec geometric(GroupDescriptor g, mpz_class scale_, mpz_class ratio_,
                                  int coordinate_ = 0) {
        SequenceSpec s;
        s.ambient = std::move(g);
        s.kind = SequenceKind::Geometric;
        s.scale = std::move(scale_);
        s.ratio = std::move(ratio_);
        s.coordinate = coordinate_;
        return s;
    }

    static SequenceSpec double_exponential(GroupDescriptor g, mpz_class base_, int coordinate_ = 0) {
        SequenceSpec s;
        s.ambient = std::move(g);
        s.kind = SequenceKind::DoubleExponential;
        s.base = std::move(base_);
        s.coordinate = coordinate_;
        return s;
    }

    static SequenceSpec polynomial(GroupDescriptor g, std::vector<mpz_class> coeffs_,
                                   int coordinate_ = 0) {
        SequenceSpec s;
        s.ambient = std::move(g);
        s.kind = SequenceKind::Polynomial;
        s.coeffs = std::move(coeffs_);
        s.coordinate = coordinate_;
        return s;
    }

    static SequenceSpec all_elements(GroupDescriptor g) {
        SequenceSpec s;
        s.ambient = std::move(g);
        s.kind = SequenceKind::AllElements;
        return s;
    }

    static SequenceSpec basis(GroupDescriptor g, int start_ = 0) {
        SequenceSpec s;
        s.ambient = std::move(g);
        s.kind = SequenceKind::Basis;
        s.start = start_;
        return s;
    }
};

inline void validate(const SequenceSpec& s) {
    switch (s.kind) {
        case SequenceKind::ExplicitList:
            if (s.elements.empty())
                throw ValidationError("sequence.elements", "explicit list must be nonempty");
            break;
        case SequenceKind::Geometric:
            if (s.ratio < 2) throw ValidationError("sequence.ratio", "ratio must be >= 2");
            if (s.scale == 0) throw ValidationError("sequence.scale", "scale must be nonzero");
            if (!s.ambient.valid_coordinate(s.coordinate))
                throw ValidationError("sequence.coordinate", "coordinate out of range");
            break;
        case SequenceKind::DoubleExponential:
            if (s.base < 2) throw ValidationError("sequence.base", "base must be >= 2");
            if (!s.ambient.valid_coordinate(s.coordinate))
                throw ValidationError("sequence.coordinate", "coordinate out of range");
            break;
        case SequenceKind::Polynomial: {
            if (s.coeffs.empty())
                throw ValidationError("sequence.coeffs", "polynomial needs coefficients");
            bool nonzero = false;
            for (const auto& c : s.coeffs)
                if (c != 0) nonzero = true;
            if (!nonzero) throw ValidationError("sequence.coeffs", "polynomial must be nonzero");
            if (!s.ambient.valid_coordinate(s.coordinate))
                throw ValidationError("sequence.coordinate", "coordinate out of range");
            break;
        }
        case SequenceKind::AllElements:
            break;
        case SequenceKind::Basis:
            if (s.start < 0) throw ValidationError("sequence.start", "start must be >= 0");
            if (!s.ambient.torsion_orders().empty())
                throw ValidationError("sequence.kind", "basis family needs a free ambient group");
            if (s.ambient.finitely_generated() && s.start >= s.ambient.free_rank())
                throw ValidationError("sequence.start", "start beyond ambient rank");
            break;
    }
}

/// Number of terms when the sequence is finite, nullopt when infinite.
inline std::optional<size_t> term_count(const SequenceSpec& s) {
    size_t pre = s.prefix.size();
    switch (s.kind) {
        case SequenceKind::ExplicitList:
            return pre + s.elements.size();
        case SequenceKind::Basis:
            if (s.ambient.finitely_generated())
                return pre + static_cast<size_t>(s.ambient.free_rank() - s.start);
            return std::nullopt;
        default:
            return std::nullopt;
    }
}

namespace detail {

inline mpz_class polynomial_value(const std::vector<mpz_class>& coeffs, const mpz_class& k) {
    mpz_class acc = 0;
    for (size_t i = coeffs.size(); i-- > 0;) acc = acc * k + coeffs[i];
    return acc;
}

} // namespace detail

/// g_k with the prefix occupying positions 0..prefix.size()-1. Materializes
/// the term; families whose terms outgrow `max_bits` raise BudgetExceeded.
inline GroupElement term(const SequenceSpec& s, size_t k, Enumeration* enumeration = nullptr,
                         size_t max_bits = 1u << 22) {
    if (k < s.prefix.size()) return s.prefix[k];
    size_t i = k - s.prefix.size();
    switch (s.kind) {
        case SequenceKind::ExplicitList:
            if (i >= s.elements.size())
                throw ValidationError("sequence", "term index beyond explicit list");
            return s.elements[i];
        case SequenceKind::Geometric: {
            mpz_class v;
            mpz_pow_ui(v.get_mpz_t(), s.ratio.get_mpz_t(), static_cast<unsigned long>(i));
            v *= s.scale;
            return s.ambient.make({{s.coordinate, v}});
        }
        case SequenceKind::DoubleExponential: {
            size_t bits = (size_t{1} << std::min<size_t>(i, 63)) *
                          mpz_sizeinbase(s.base.get_mpz_t(), 2);
            if (i >= 63 || bits > max_bits)
                throw BudgetExceededError("double exponential term too large to materialize");
            mpz_class v;
            mpz_pow_ui(v.get_mpz_t(), s.base.get_mpz_t(), 1ul << i);
            return s.ambient.make({{s.coordinate, v}});
        }
        case SequenceKind::Polynomial:
            return s.ambient.make({{s.coordinate, detail::polynomial_value(s.coeffs, mpz_class(i))}});
        case SequenceKind::AllElements: {
            if (!enumeration)
                throw ValidationError("sequence", "all-elements terms need an enumeration");
            return enumeration->at(i + 1);
        }
        case SequenceKind::Basis:
            return s.ambient.basis(s.start + static_cast<int>(i));
    }
    throw ValidationError("sequence", "unknown kind");
}

/// g_k reduced modulo q on free coordinates; cheap for all families.
inline GroupElement term_mod(const SequenceSpec& s, size_t k, const mpz_class& q,
                             Enumeration* enumeration = nullptr) {
    auto reduce = [&](GroupElement g) {
        for (auto& [c, v] : g.free) mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), q.get_mpz_t());
        s.ambient.normalize(g);
        return g;
    };
    if (k < s.prefix.size()) return reduce(s.prefix[k]);
    size_t i = k - s.prefix.size();
    switch (s.kind) {
        case SequenceKind::Geometric: {
            mpz_class v, e(static_cast<unsigned long>(i));
            mpz_powm(v.get_mpz_t(), s.ratio.get_mpz_t(), e.get_mpz_t(), q.get_mpz_t());
            v = (v * s.scale) % q;
            if (v < 0) v += q;
            return s.ambient.make({{s.coordinate, v}});
        }
        case SequenceKind::DoubleExponential: {
            mpz_class e = 1;
            e <<= i; // 2^i as an exponent is fine even for large i
            mpz_class v;
            mpz_powm(v.get_mpz_t(), s.base.get_mpz_t(), e.get_mpz_t(), q.get_mpz_t());
            return s.ambient.make({{s.coordinate, v}});
        }
        case SequenceKind::Polynomial: {
            mpz_class v = detail::polynomial_value(s.coeffs, mpz_class(i)) % q;
            if (v < 0) v += q;
            return s.ambient.make({{s.coordinate, v}});
        }
        default:
            return reduce(term(s, k, enumeration));
    }
}

struct SpanInfo {
    enum class Kind { Lattice, FullGroup, TailBasis };
    Kind kind = Kind::Lattice;
    GeneratorLattice lattice; // Kind::Lattice
    int start = 0;            // Kind::TailBasis
};

/// Generators of the subgroup generated by all terms (prefix included).
inline SpanInfo span_info(const SequenceSpec& s) {
    SpanInfo out;
    auto with_prefix = [&](std::vector<GroupElement> gens) {
        for (const auto& p : s.prefix) gens.push_back(p);
        out.kind = SpanInfo::Kind::Lattice;
        out.lattice = GeneratorLattice{s.ambient, std::move(gens)};
    };
    switch (s.kind) {
        case SequenceKind::ExplicitList:
            with_prefix(s.elements);
            break;
        case SequenceKind::Geometric:
            // gcd(scale*ratio^k) = scale, witnessed by k = 0
            with_prefix({s.ambient.make({{s.coordinate, s.scale}})});
            break;
        case SequenceKind::DoubleExponential:
            with_prefix({s.ambient.make({{s.coordinate, s.base}})});
            break;
        case SequenceKind::Polynomial: {
            // gcd of all values of an integer polynomial = gcd of deg+1 values
            mpz_class g = 0;
            for (size_t k = 0; k <= s.coeffs.size(); ++k)
                g = gcd(g, detail::polynomial_value(s.coeffs, mpz_class(k)));
            with_prefix({s.ambient.make({{s.coordinate, g}})});
            break;
        }
        case SequenceKind::AllElements:
            if (!s.prefix.empty()) {
                // prefix is redundant inside the full group
            }
            out.kind = SpanInfo::Kind::FullGroup;
            break;
        case SequenceKind::Basis:
            if (s.prefix.empty()) {
                out.kind = SpanInfo::Kind::TailBasis;
                out.start = s.start;
            } else if (s.ambient.finitely_generated()) {
                std::vector<GroupElement> gens;
                for (long c = s.start; c < s.ambient.free_rank(); ++c)
                    gens.push_back(s.ambient.basis(static_cast<int>(c)));
                with_prefix(std::move(gens));
            } else {
                out.kind = SpanInfo::Kind::TailBasis; // prefix cannot fix Z^infty
                out.start = s.start;
            }
            break;
    }
    return out;
}

/// [G : G0] for the subgroup generated by the sequence.
inline SubgroupIndex sequence_index(const SequenceSpec& s) {
    auto info = span_info(s);
    switch (info.kind) {
        case SpanInfo::Kind::FullGroup:
            return SubgroupIndex::of(1);
        case SpanInfo::Kind::TailBasis:
            if (info.start == 0) return SubgroupIndex::of(1);
            if (s.ambient.finitely_generated()) {
                // leading coordinates untouched
                return SubgroupIndex::infinite();
            }
            return SubgroupIndex::infinite();
        case SpanInfo::Kind::Lattice:
            return subgroup_index(info.lattice);
    }
    return SubgroupIndex::infinite();
}

/// Coset representatives prepended so that the span becomes the whole group;
/// original terms keep their order. Identity is always the first new term.
inline SequenceSpec augment_to_generating(const SequenceSpec& s) {
    auto idx = sequence_index(s);
    if (!idx.finite) throw InfiniteIndexError("cannot augment a sequence of infinite index");
    auto info = span_info(s);
    std::vector<GroupElement> reps;
    if (info.kind == SpanInfo::Kind::Lattice)
        reps = coset_representatives(info.lattice);
    else
        reps = {s.ambient.zero()};
    SequenceSpec out = s;
    std::vector<GroupElement> prefix = std::move(reps);
    for (auto& p : out.prefix) prefix.push_back(std::move(p));
    out.prefix = std::move(prefix);
    return out;
}

/// Bounded-ratio annotation (metadata only, never a certificate): families of
/// positive integers with sup n_{k+1}/n_k finite are Jamison by prior results.
inline std::optional<std::string> bounded_ratio_tag(const SequenceSpec& s) {
    bool on_z_line = s.ambient.torsion_orders().empty();
    if (!on_z_line) return std::nullopt;
    switch (s.kind) {
        case SequenceKind::Geometric:
            if (s.scale > 0)
                return "bounded ratio sup n_{k+1}/n_k = " + s.ratio.get_str() +
                       ": Jamison by prior literature (tag only)";
            return std::nullopt;
        case SequenceKind::Polynomial:
            if (!s.coeffs.empty() && s.coeffs.back() > 0)
                return "bounded ratio (polynomial growth): Jamison by prior literature (tag only)";
            return std::nullopt;
        default:
            return std::nullopt;
    }
}

} // namespace jamison
