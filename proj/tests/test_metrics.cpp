#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "jamison/metrics.hpp"

using namespace jamison;

namespace {

Character angle_char(const GroupDescriptor& g, long p, long q) {
    return Character::exact(g, {{0, mpq_class(p, q)}});
}

} // namespace

TEST_CASE("d vanishes on equal characters") {
    auto z = GroupDescriptor::integers();
    auto seq = SequenceSpec::polynomial(z, {mpz_class(1), mpz_class(1)});
    auto chi = angle_char(z, 2, 7);
    REQUIRE(d_metric(chi, chi, seq, 40).value == 0.0);
    REQUIRE(d_metric_certified(chi, chi, seq).value == 0.0);
}

TEST_CASE("third against trivial reaches sqrt(3) by depth two") {
    auto z = GroupDescriptor::integers();
    auto seq = SequenceSpec::polynomial(z, {mpz_class(1), mpz_class(1)});
    auto chi = angle_char(z, 1, 3);
    auto one = Character::trivial(z);
    auto mv = d_metric(chi, one, seq, 2);
    REQUIRE(mv.value == Catch::Approx(std::sqrt(3.0)).epsilon(1e-15));
    REQUIRE_FALSE(mv.certified);
    REQUIRE(*mv.fold == mpq_class(1, 3));
}

TEST_CASE("even sequence kills the half character: pseudo-metric degeneracy") {
    auto z = GroupDescriptor::integers();
    auto even = SequenceSpec::polynomial(z, {mpz_class(2), mpz_class(2)});
    auto half = angle_char(z, 1, 2);
    auto one = Character::trivial(z);
    for (long k : {1L, 5L, 50L}) REQUIRE(d_metric(half, one, even, k).value == 0.0);
    REQUIRE(d_metric_certified(half, one, even).value == 0.0);
}

TEST_CASE("certified values over all k") {
    auto z = GroupDescriptor::integers();
    auto all = SequenceSpec::polynomial(z, {mpz_class(1), mpz_class(1)});
    auto one = Character::trivial(z);
    auto fifth = d_metric_certified(angle_char(z, 1, 5), one, all);
    REQUIRE(fifth.certified);
    REQUIRE(*fifth.fold == mpq_class(2, 5));
    REQUIRE(fifth.value == Catch::Approx(2.0 * std::sin(2.0 * M_PI / 5.0)).epsilon(1e-15));
    auto third = d_metric_certified(angle_char(z, 1, 3), one, all);
    REQUIRE(third.value == Catch::Approx(std::sqrt(3.0)).epsilon(1e-15));

    auto dexp = SequenceSpec::double_exponential(z, 2);
    auto tiny = d_metric_certified(Character::exact(z, {{0, mpq_class(1, mpz_class(65536))}}), one, dexp);
    REQUIRE(*tiny.fold == mpq_class(1, 256));
    REQUIRE(tiny.value == Catch::Approx(2.0 * std::sin(M_PI / 256.0)).epsilon(1e-15));
}

TEST_CASE("monotone in depth and below the certified sup") {
    auto z = GroupDescriptor::integers();
    auto all = SequenceSpec::polynomial(z, {mpz_class(1), mpz_class(1)});
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> den(2, 60);
    auto one = Character::trivial(z);
    for (int t = 0; t < 100; ++t) {
        long q = den(rng);
        auto chi = angle_char(z, static_cast<long>(rng() % static_cast<unsigned long>(q)), q);
        double prev = 0.0;
        for (long k : {1L, 2L, 4L, 8L, 32L}) {
            double v = d_metric(chi, one, all, k).value;
            REQUIRE(v >= prev);
            prev = v;
        }
        REQUIRE(prev <= d_metric_certified(chi, one, all).value + 1e-15);
    }
}

TEST_CASE("certified zero separates points of a generating sequence") {
    auto z = GroupDescriptor::integers();
    auto all = SequenceSpec::polynomial(z, {mpz_class(1), mpz_class(1)});
    for (long q = 2; q <= 50; ++q)
        for (long p = 1; p < q; ++p) {
            auto chi = angle_char(z, p, q);
            auto mv = d_metric_certified(chi, Character::trivial(z), all);
            REQUIRE(mv.value > 0.0); // nontrivial characters are seen
        }
}

TEST_CASE("pseudo-metric laws on sampled triples") {
    auto z = GroupDescriptor::integers();
    auto all = SequenceSpec::polynomial(z, {mpz_class(1), mpz_class(1)});
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<long> den(2, 60);
    for (int t = 0; t < 1000; ++t) {
        long q1 = den(rng), q2 = den(rng), q3 = den(rng);
        auto a = angle_char(z, static_cast<long>(rng() % static_cast<unsigned long>(q1)), q1);
        auto b = angle_char(z, static_cast<long>(rng() % static_cast<unsigned long>(q2)), q2);
        auto c = angle_char(z, static_cast<long>(rng() % static_cast<unsigned long>(q3)), q3);
        double ab = d_metric(a, b, all, 16).value;
        double ba = d_metric(b, a, all, 16).value;
        double ac = d_metric(a, c, all, 16).value;
        double cb = d_metric(c, b, all, 16).value;
        REQUIRE(ab == ba);
        REQUIRE(ab <= ac + cb + 1e-12);
    }
}

TEST_CASE("level zero of the product metric is the metric") {
    auto z = GroupDescriptor::integers();
    auto all = SequenceSpec::polynomial(z, {mpz_class(1), mpz_class(1)});
    auto a = angle_char(z, 1, 3);
    auto b = angle_char(z, 1, 4);
    REQUIRE(d_j_product(a, b, all, 12, 0) == d_metric(a, b, all, 12).value);
    REQUIRE(d_j_product(a, a, all, 12, 3) == 0.0);
}

TEST_CASE("level one matches brute force over all 9 tuples") {
    auto z = GroupDescriptor::integers();
    auto seq = SequenceSpec::polynomial(z, {mpz_class(1), mpz_class(1)}); // 1,2,3
    auto a = angle_char(z, 1, 3);
    auto b = angle_char(z, 1, 4);
    const long K = 3;
    double got = d_j_product(a, b, seq, K, 1);
    double want = 0.0;
    auto factor = [&](const Character& c, long n) {
        double ang = 2.0 * M_PI * c.eval_angle(z.make({{0, n}}));
        return std::complex<double>(std::cos(ang) - 1.0, std::sin(ang));
    };
    for (long k0 = 1; k0 <= K; ++k0)
        for (long k1 = 1; k1 <= K; ++k1) {
            auto va = factor(a, k0) * factor(a, k1);
            auto vb = factor(b, k0) * factor(b, k1);
            want = std::max(want, std::abs(va - vb));
        }
    REQUIRE(got == Catch::Approx(want).margin(1e-13));
}

TEST_CASE("level recursion and its induction consequence") {
    auto z = GroupDescriptor::integers();
    auto all = SequenceSpec::polynomial(z, {mpz_class(1), mpz_class(1)});
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<long> den(2, 30);
    for (int t = 0; t < 30; ++t) {
        long q1 = den(rng), q2 = den(rng);
        auto a = angle_char(z, 1 + static_cast<long>(rng() % static_cast<unsigned long>(q1 - 1)), q1);
        auto b = angle_char(z, static_cast<long>(rng() % static_cast<unsigned long>(q2)), q2);
        std::vector<double> dj;
        for (long j = 0; j <= 6; ++j) dj.push_back(d_j_product(a, b, all, 10, j));
        for (long j = 1; j <= 6; ++j) {
            double rhs = std::ldexp(dj[0], static_cast<int>(j)) + 2.0 * dj[static_cast<size_t>(j - 1)];
            REQUIRE(dj[static_cast<size_t>(j)] <= rhs);
        }
        for (long j = 0; j <= 6; ++j)
            REQUIRE(dj[static_cast<size_t>(j)] <=
                    (static_cast<double>(j) + 1.0) * std::ldexp(dj[0], static_cast<int>(j)));
    }
}

TEST_CASE("tuple budget is enforced") {
    auto z = GroupDescriptor::integers();
    auto all = SequenceSpec::polynomial(z, {mpz_class(1), mpz_class(1)});
    auto a = angle_char(z, 1, 97);
    auto b = angle_char(z, 1, 89);
    REQUIRE_THROWS_AS(d_j_product(a, b, all, 97, 6, 10), BudgetExceededError);
}
