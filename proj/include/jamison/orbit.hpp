#pragma once

// Exact residue orbits {g_k mod q : k >= 0} with closure certificates. The
// formula families are driven by first-order recurrences modulo q, so the
// orbit closes as soon as a state repeats; explicit exhaustive lists reduce
// term by term. These orbits are what turn truncated metric suprema into
// certified all-k values for rational characters.

#include <set>
#include <string>
#include <vector>
#include <gmpxx.h>

#include "jamison/errors.hpp"
#include "jamison/group.hpp"
#include "jamison/sequence.hpp"

namespace jamison {

struct ResidueOrbit {
    enum class Kind {
        Finite,      // materialized residue set
        FullProduct, // every residue combination occurs (all-elements sequences)
        BasisTail    // e_k for k >= start, countable ambient
    };
    Kind kind = Kind::Finite;
    std::vector<GroupElement> residues;
    int start = 0; // BasisTail
    bool certified = true;
    std::string certificate;
    size_t steps = 0;
};

inline ResidueOrbit residue_orbit(const SequenceSpec& seq, const mpz_class& q,
                                  size_t materialize_cap = 2'000'000,
                                  Enumeration* enumeration = nullptr) {
    if (q < 2) throw ValidationError("modulus", "modulus must be >= 2");
    ResidueOrbit out;
    auto add_prefix = [&](std::set<GroupElement>& seen) {
        for (size_t k = 0; k < seq.prefix.size(); ++k)
            seen.insert(term_mod(seq, k, q, enumeration));
    };
    switch (seq.kind) {
        case SequenceKind::ExplicitList: {
            if (!seq.exhaustive)
                throw NotCertifiableError("explicit list without exhaustiveness has no residue oracle");
            std::set<GroupElement> seen;
            add_prefix(seen);
            for (size_t k = 0; k < seq.elements.size(); ++k)
                seen.insert(term_mod(seq, seq.prefix.size() + k, q, enumeration));
            out.residues.assign(seen.begin(), seen.end());
            out.certificate = "exhaustive list of " + std::to_string(seq.elements.size()) + " terms";
            out.steps = seq.elements.size();
            return out;
        }
        case SequenceKind::Geometric:
        case SequenceKind::DoubleExponential: {
            // first-order recurrence mod q: x -> ratio*x, or x -> x^2
            std::set<mpz_class> seen_states;
            std::set<GroupElement> seen;
            add_prefix(seen);
            mpz_class x;
            if (seq.kind == SequenceKind::Geometric) {
                x = seq.scale % q;
                if (x < 0) x += q;
            } else {
                x = seq.base % q;
                if (x < 0) x += q;
            }
            size_t steps = 0;
            while (!seen_states.count(x)) {
                seen_states.insert(x);
                seen.insert(seq.ambient.make({{seq.coordinate, x}}));
                if (seq.kind == SequenceKind::Geometric)
                    x = (x * (seq.ratio % q)) % q;
                else
                    x = (x * x) % q;
                if (x < 0) x += q;
                if (++steps > materialize_cap)
                    throw BudgetExceededError("residue orbit exceeded materialization cap");
            }
            out.residues.assign(seen.begin(), seen.end());
            out.certificate = "recurrence mod " + q.get_str() + " closed after " +
                              std::to_string(steps) + " steps";
            out.steps = steps;
            return out;
        }
        case SequenceKind::Polynomial: {
            // P(k+q) = P(k) mod q, so k in [0,q) is exhaustive
            if (q > materialize_cap)
                throw BudgetExceededError("polynomial orbit modulus beyond materialization cap");
            std::set<GroupElement> seen;
            add_prefix(seen);
            unsigned long qq = q.get_ui();
            for (unsigned long k = 0; k < qq; ++k)
                seen.insert(term_mod(seq, seq.prefix.size() + k, q, enumeration));
            out.residues.assign(seen.begin(), seen.end());
            out.certificate = "polynomial period divides " + q.get_str();
            out.steps = qq;
            return out;
        }
        case SequenceKind::AllElements: {
            long l = seq.ambient.finitely_generated() ? seq.ambient.free_rank() : -1;
            const auto& orders = seq.ambient.torsion_orders();
            mpz_class combos = 1;
            bool small = l >= 0;
            if (small) {
                for (long i = 0; i < l; ++i) combos *= q;
                for (long o : orders) combos *= o;
                small = combos <= materialize_cap;
            }
            if (!small) {
                out.kind = ResidueOrbit::Kind::FullProduct;
                out.certificate = "every residue combination occurs (all elements)";
                return out;
            }
            // materialize the full product set
            std::vector<GroupElement> all;
            std::vector<mpz_class> radix;
            for (long i = 0; i < l; ++i) radix.push_back(q);
            for (long o : orders) radix.push_back(mpz_class(o));
            std::vector<mpz_class> x(radix.size(), 0);
            for (;;) {
                std::map<int, mpz_class> f;
                for (long i = 0; i < l; ++i)
                    if (x[static_cast<size_t>(i)] != 0) f[static_cast<int>(i)] = x[static_cast<size_t>(i)];
                std::vector<mpz_class> t(x.begin() + l, x.end());
                all.push_back(seq.ambient.make(std::move(f), std::move(t)));
                size_t pos = radix.size();
                bool carried = true;
                while (pos-- > 0) {
                    x[pos] += 1;
                    if (x[pos] < radix[pos]) {
                        carried = false;
                        break;
                    }
                    x[pos] = 0;
                }
                if (carried) break;
            }
            out.residues = std::move(all);
            out.certificate = "full residue product materialized";
            out.steps = out.residues.size();
            return out;
        }
        case SequenceKind::Basis: {
            if (seq.ambient.finitely_generated()) {
                std::set<GroupElement> seen;
                add_prefix(seen);
                for (long c = seq.start; c < seq.ambient.free_rank(); ++c)
                    seen.insert(seq.ambient.basis(static_cast<int>(c)));
                out.residues.assign(seen.begin(), seen.end());
                out.certificate = "finite basis tail";
                out.steps = out.residues.size();
                return out;
            }
            out.kind = ResidueOrbit::Kind::BasisTail;
            out.start = seq.start;
            {
                std::set<GroupElement> seen;
                add_prefix(seen); // prefix residues ride along explicitly
                out.residues.assign(seen.begin(), seen.end());
            }
            out.certificate = "canonical basis from e_" + std::to_string(seq.start);
            return out;
        }
    }
    throw ValidationError("sequence", "unknown kind");
}

} // namespace jamison
