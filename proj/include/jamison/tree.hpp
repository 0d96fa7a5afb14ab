#pragma once

// Gap chains and the binary character tree: when separation fails at every
// scale, a chain chi_n with d(chi_n, 1) < 4^-n * d(chi_{n-1}, conj chi_{n-1})
// spawns a tree psi_{s0} = psi_s * chi_n, psi_{s1} = psi_s * conj(chi_n)
// whose leaf family has bounded diameter yet pairwise separation controlled
// by the per-level gaps. All metric values here are certified folds.

#include <string>
#include <vector>
#include <gmpxx.h>

#include "jamison/certified.hpp"
#include "jamison/character.hpp"
#include "jamison/criterion.hpp"
#include "jamison/errors.hpp"
#include "jamison/metrics.hpp"

namespace jamison {

struct GapChain {
    std::vector<Character> chain;      // chi_1, chi_2, ...
    std::vector<MetricValue> d_to_one; // certified d(chi_n, 1)
    std::vector<MetricValue> gaps;     // certified d(chi_n, conj chi_n)
};

/// Builds a chain satisfying d(chi_1,1) < 1/4 and
/// d(chi_n,1) < 4^-n d(chi_{n-1}, conj chi_{n-1}), every inequality decided
/// exactly. Throws WitnessUnavailable when the witness schedule cannot
/// certify a needed scale.
inline GapChain gap_chain_generate(const SequenceSpec& seq, int depth,
                                   const VerdictPolicy& policy = {},
                                   Enumeration* enumeration = nullptr) {
    GapChain out;
    for (int n = 1; n <= depth; ++n) {
        mpq_class scale;
        mpq_class ref_fold;
        if (n == 1) {
            scale = mpq_class(1, 8); // 1/8 * chord(1/2) = 1/4
            ref_fold = mpq_class(1, 2);
        } else {
            mpz_class denom = 1;
            mpz_pow_ui(denom.get_mpz_t(), mpz_class(4).get_mpz_t(), static_cast<unsigned long>(n));
            scale = mpq_class(1, denom);
            ref_fold = *out.gaps.back().fold;
        }
        auto r = witness_search_below_chord(seq, scale, ref_fold, policy, enumeration);
        if (r.status != WitnessSearchResult::Status::Found)
            throw WitnessUnavailableError("no certified witness below 4^-" + std::to_string(n) +
                                          " times the previous gap");
        Character chi = r.report->witness;
        MetricValue d1 = r.report->sup;
        MetricValue gap = d_metric_certified(chi, chi.conjugate(), seq, enumeration,
                                             policy.orbit_cap);
        if (!gap.fold || *gap.fold == 0)
            throw WitnessUnavailableError("witness coincides with its conjugate");
        if (!out.gaps.empty() && chord_cmp(*gap.fold, *out.gaps.back().fold) >= 0)
            throw WitnessUnavailableError("gap chain failed to decrease");
        out.chain.push_back(std::move(chi));
        out.d_to_one.push_back(std::move(d1));
        out.gaps.push_back(std::move(gap));
    }
    return out;
}

struct CharacterTree {
    std::vector<Character> chain;
    std::vector<MetricValue> gaps;          // per level, certified
    std::vector<std::vector<Character>> levels; // levels[n-1]: 2^n nodes, bit s_1 most significant
    int depth = 0;

    const std::vector<Character>& leaves() const { return levels.back(); }
};

inline CharacterTree build_character_tree(const GapChain& chain, int depth) {
    if (depth < 1 || static_cast<size_t>(depth) > chain.chain.size())
        throw ValidationError("tree.depth", "chain too short for the requested depth");
    CharacterTree t;
    t.depth = depth;
    t.chain.assign(chain.chain.begin(), chain.chain.begin() + depth);
    t.gaps.assign(chain.gaps.begin(), chain.gaps.begin() + depth);
    std::vector<Character> level = {chain.chain[0], chain.chain[0].conjugate()};
    t.levels.push_back(level);
    for (int n = 2; n <= depth; ++n) {
        std::vector<Character> next;
        next.reserve(level.size() * 2);
        for (const auto& psi : level) {
            next.push_back(psi.times(chain.chain[static_cast<size_t>(n - 1)]));
            next.push_back(psi.times(chain.chain[static_cast<size_t>(n - 1)].conjugate()));
        }
        t.levels.push_back(next);
        level = std::move(next);
    }
    return t;
}

/// first index (1-based) where the bit paths of two leaves differ
inline int first_divergence(size_t a, size_t b, int depth) {
    for (int n = 1; n <= depth; ++n) {
        int shift = depth - n;
        if (((a >> shift) & 1u) != ((b >> shift) & 1u)) return n;
    }
    return depth + 1;
}

struct TreeSeparationCheck {
    size_t pairs = 0;
    bool lower_ok = true;     // d >= (5/6) gap_q at the first divergence q
    bool upper_ok = true;     // d <= (7/6) gap_q whenever the pair agrees through q
    bool depth1_equality = true; // d(psi_(0), psi_(1)) equals gap_1 exactly
    std::vector<std::vector<MetricValue>> matrix; // full pairwise certified metric
};

/// Exhaustive pairwise verification of the tree's separation sandwich with
/// exact rational metric evaluations.
inline TreeSeparationCheck verify_tree_separation(const CharacterTree& tree,
                                                  const SequenceSpec& seq,
                                                  Enumeration* enumeration = nullptr) {
    TreeSeparationCheck out;
    const auto& leaves = tree.leaves();
    const size_t n = leaves.size();
    out.matrix.assign(n, std::vector<MetricValue>(n));
    const mpq_class five_sixth(5, 6), seven_sixth(7, 6);
    for (size_t a = 0; a < n; ++a)
        for (size_t b = a + 1; b < n; ++b) {
            MetricValue d = d_metric_certified(leaves[a], leaves[b], seq, enumeration);
            out.matrix[a][b] = d;
            out.matrix[b][a] = d;
            out.pairs += 1;
            int q = first_divergence(a, b, tree.depth);
            const mpq_class& gap_q = *tree.gaps[static_cast<size_t>(q - 1)].fold;
            if (chord_cmp(*d.fold, five_sixth, gap_q) < 0) out.lower_ok = false;
            for (int agree = 1; agree < q; ++agree) {
                const mpq_class& gap_a = *tree.gaps[static_cast<size_t>(agree - 1)].fold;
                if (chord_cmp(*d.fold, seven_sixth, gap_a) > 0) out.upper_ok = false;
            }
        }
    if (tree.depth >= 1 && n >= 2) {
        MetricValue d01 = d_metric_certified(tree.levels[0][0], tree.levels[0][1], seq, enumeration);
        out.depth1_equality = (*d01.fold == *tree.gaps[0].fold);
    }
    return out;
}

} // namespace jamison
