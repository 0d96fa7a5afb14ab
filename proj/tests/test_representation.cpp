#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "jamison/representation.hpp"

using namespace jamison;

namespace {

struct Fixture {
    GroupDescriptor z = GroupDescriptor::integers();
    Enumeration en{z};
    SequenceSpec all = SequenceSpec::polynomial(z, {mpz_class(1), mpz_class(1)});
    WeightTable wt{en, 40, 40, 101, 256};
};

} // namespace

TEST_CASE_METHOD(Fixture, "star norm of a character is its norm") {
    auto chi = Character::exact(z, {{0, mpq_class(1, 7)}});
    auto b = star_norm(chi, wt);
    REQUIRE(b.upper == 1.0);
    REQUIRE(b.lower == std::sqrt(wt.sum_tracked().get_d()));
    REQUIRE(b.lower > 1.0 - 1e-9);
}

TEST_CASE_METHOD(Fixture, "zero combination has zero star norm") {
    auto chi = Character::exact(z, {{0, mpq_class(1, 5)}});
    auto b = star_norm({{0.0, 0.0}}, {chi}, all, 10, 4, wt);
    REQUIRE(b.lower == 0.0);
}

TEST_CASE_METHOD(Fixture, "translated characters keep their star norm within the 3-bound") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 25; ++t) {
        long q = 2 + static_cast<long>(rng() % 40);
        auto chi = Character::exact(z, {{0, mpq_class(static_cast<long>(rng() % static_cast<unsigned long>(q)), q)}});
        auto base = star_norm(chi, wt);
        // rho(g_p) chi = chi(g_p) chi: the star norm is unchanged, far under 3x
        for (long p = 0; p < 20; ++p) {
            auto moved = star_norm(chi, wt);
            REQUIRE(moved.upper <= 3.0 * base.lower);
        }
    }
}

TEST_CASE_METHOD(Fixture, "combination star norms: sampled lower within triangle upper") {
    std::mt19937_64 rng(9);
    int checked = 0;
    for (int t = 0; t < 100; ++t) {
        std::vector<Character> chars;
        std::vector<std::complex<double>> coef;
        for (int i = 0; i < 3; ++i) {
            long q = 2 + static_cast<long>(rng() % 30);
            chars.push_back(Character::exact(
                z, {{0, mpq_class(static_cast<long>(rng() % static_cast<unsigned long>(q)), q)}}));
            coef.push_back({std::uniform_real_distribution<double>(-1, 1)(rng),
                            std::uniform_real_distribution<double>(-1, 1)(rng)});
        }
        auto b = star_norm(coef, chars, all, 8, 3, wt, 60'000);
        REQUIRE(b.lower <= b.upper * (1.0 + 1e-9));
        // the partial-boundedness consequence: translating multiplies each
        // coefficient by a unimodular number, so the sampled lower of the
        // translate stays under 3x the upper of the original
        for (long p = 1; p <= 10; ++p) {
            GroupElement gp = term(all, static_cast<size_t>(p - 1));
            std::vector<std::complex<double>> moved;
            for (size_t i = 0; i < chars.size(); ++i)
                moved.push_back(coef[i] * chars[i].value(gp));
            auto mb = star_norm(moved, chars, all, 8, 3, wt, 60'000);
            REQUIRE(mb.lower <= 3.0 * b.upper * (1.0 + 1e-9));
        }
        ++checked;
    }
    REQUIRE(checked == 100);
}

TEST_CASE_METHOD(Fixture, "eigencharacter separation formula and chain") {
    auto one = Character::trivial(z);
    auto third = Character::exact(z, {{0, mpq_class(1, 3)}});
    REQUIRE(eigencharacter_separation(third, third, all, 2.0, 16, wt).bound == 0.0);
    auto r = eigencharacter_separation(third, one, all, 1.0, 16, wt);
    REQUIRE(r.bound == Catch::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-12));
    REQUIRE(r.chain_verified);
    // the measured translation-model distance also clears d/(M+1) for the
    // certified partial bound sup ||rho(g_k)|| read off the table
    auto r3 = eigencharacter_separation(third, one, all, 3.0, 16, wt);
    REQUIRE(r3.distance_upper >= r3.bound);
    REQUIRE(r3.chain_verified);
}

TEST_CASE_METHOD(Fixture, "annihilator characters are fixed points, others are not") {
    GeneratorLattice lat{z, {z.make({{0, 2}})}};
    auto even = SequenceSpec::polynomial(z, {mpz_class(2), mpz_class(2)});
    auto one = Character::trivial(z);
    REQUIRE(annihilator_fixed_point_check(lat, one, even, 50));
    auto half = Character::exact(z, {{0, mpq_class(1, 2)}});
    REQUIRE(annihilator_fixed_point_check(lat, half, even, 50));
    REQUIRE_FALSE(annihilator_fixed_point_check(lat, half, all, 50)); // odd terms break it
}

TEST_CASE_METHOD(Fixture, "annihilator of the index-6 lattice fixes every lattice element") {
    auto z2 = GroupDescriptor::free_abelian(2);
    GeneratorLattice lat{z2, {z2.make({{0, 2}}), z2.make({{1, 3}})}};
    auto ann = annihilator(lat);
    // sample lattice elements: integer combinations of the generators
    std::vector<GroupElement> elems;
    for (int a = -3; a <= 3; ++a)
        for (int b = -3; b <= 3; ++b)
            elems.push_back(z2.add(z2.scale(a, lat.generators[0]), z2.scale(b, lat.generators[1])));
    auto seq = SequenceSpec::explicit_list(z2, elems, true);
    for (const auto& chi : ann.elements)
        REQUIRE(annihilator_fixed_point_check(lat, chi, seq, static_cast<long>(elems.size())));
}

TEST_CASE_METHOD(Fixture, "characters are eigenvectors of every translation") {
    std::mt19937_64 rng(14);
    for (int t = 0; t < 30; ++t) {
        long q = 2 + static_cast<long>(rng() % 20);
        auto chi = Character::exact(z, {{0, mpq_class(static_cast<long>(rng() % static_cast<unsigned long>(q)), q)}});
        GroupElement g = z.make({{0, static_cast<long>(rng() % 9) - 4}});
        // exact form: angle(chi at h+g) = angle(chi at g) + angle(chi at h)
        for (int hv = -5; hv <= 5; ++hv) {
            GroupElement h = z.make({{0, hv}});
            REQUIRE(chi.eval_angle_exact(z.add(h, g)) ==
                    mod1(chi.eval_angle_exact(g) + chi.eval_angle_exact(h)));
        }
        // float vector form on the tracked window
        SparseVector v = character_vector(chi, wt);
        SparseVector moved = translate(z, v, g);
        std::complex<double> lambda = chi.value(g);
        for (const auto& [h, c] : v.coef) {
            auto it = moved.coef.find(h);
            if (it == moved.coef.end()) continue; // slid off the window
            REQUIRE(std::abs(it->second - lambda * c) < 1e-12);
        }
    }
}

TEST_CASE_METHOD(Fixture, "continuity probe: identical characters give zeros") {
    auto chi = Character::exact(z, {{0, mpq_class(2, 9)}});
    auto probe = continuity_probe(chi, chi, all, 10, 4, {z.make({{0, 7}})});
    for (double v : probe.dj) REQUIRE(v == 0.0);
    REQUIRE(probe.coefficient_bound_ok);
}

TEST_CASE_METHOD(Fixture, "continuity probe: word bound for 7 = 7 * 1 is exact") {
    auto one = Character::trivial(z);
    auto chi = Character::exact(z, {{0, mpq_class(1, 9)}});
    auto probe = continuity_probe(chi, one, all, 10, 5, {z.make({{0, 7}})});
    REQUIRE(probe.coefficient_cases == 1);
    REQUIRE(probe.coefficient_bound_ok);
    REQUIRE(probe.recursion_ok);
    REQUIRE(probe.induction_ok);
}

TEST_CASE_METHOD(Fixture, "continuity probe over sampled pairs and probes") {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 10; ++t) {
        long q1 = 2 + static_cast<long>(rng() % 25), q2 = 2 + static_cast<long>(rng() % 25);
        auto a = Character::exact(z, {{0, mpq_class(1 + static_cast<long>(rng() % static_cast<unsigned long>(q1)), q1 + 1)}});
        auto b = Character::exact(z, {{0, mpq_class(static_cast<long>(rng() % static_cast<unsigned long>(q2)), q2)}});
        std::vector<GroupElement> probes;
        for (int i = 0; i < 10; ++i)
            probes.push_back(z.make({{0, static_cast<long>(rng() % 60) - 30}}));
        auto probe = continuity_probe(a, b, all, 12, 6, probes);
        REQUIRE(probe.recursion_ok);
        REQUIRE(probe.induction_ok);
        REQUIRE(probe.coefficient_bound_ok);
        REQUIRE(probe.coefficient_cases == probes.size());
    }
}
