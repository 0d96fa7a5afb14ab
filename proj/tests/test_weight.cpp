#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "jamison/representation.hpp"
#include "jamison/weight.hpp"

using namespace jamison;

TEST_CASE("one-term table is m/2 exactly") {
    auto z = GroupDescriptor::integers();
    Enumeration en(z);
    WeightTable wt(en, 1, 8, 17, 64);
    for (long n = 1; n <= 8; ++n) {
        mpq_class want(1, mpz_class(1) << (n + 1)); // 2^-1 * m(h_n) = 2^-(n+1)
        REQUIRE(wt.lower(en.at(static_cast<size_t>(n))) == want);
    }
    REQUIRE(wt.deficit() == mpq_class(1, 2));
}

TEST_CASE("mass accounting is exact") {
    auto z = GroupDescriptor::integers();
    Enumeration en(z);
    WeightTable wt(en, 30, 30, 91, 256);
    mpq_class full = wt.sum_tracked() + wt.off_mass() + wt.deficit();
    REQUIRE(full == 1); // identity of the three buckets
    REQUIRE(wt.off_mass() >= 0);
    REQUIRE(wt.off_mass() < mpq_class(1, mpz_class(1) << 28)); // window losses stay tiny
    REQUIRE(wt.deficit() == mpq_class(1, mpz_class(1) << 30));
}

TEST_CASE("first-atom lower bounds") {
    auto z = GroupDescriptor::integers();
    Enumeration en(z);
    WeightTable wt(en, 30, 30, 91, 256);
    for (long n = 1; n <= 20; ++n)
        REQUIRE(wt.lower(en.at(static_cast<size_t>(n))) >= mpq_class(1, mpz_class(1) << (n + 1)));
    // strictly positive on the enumerated atoms
    for (long n = 1; n <= 30; ++n)
        REQUIRE(wt.lower(en.at(static_cast<size_t>(n))) > 0);
}

TEST_CASE("translation by the identity is the identity") {
    auto z = GroupDescriptor::integers();
    Enumeration en(z);
    WeightTable wt(en, 40, 40, 101, 256);
    auto r = translation_norm(wt, en, 1, 40);
    REQUIRE(r.observed == 1.0);
    REQUIRE(r.bound_holds);
}

TEST_CASE("translation norms respect the exponential bound") {
    auto z = GroupDescriptor::integers();
    Enumeration en(z);
    WeightTable wt(en, 100, 100, 121, 512);
    for (long k = 1; k <= 6; ++k) {
        auto r = translation_norm(wt, en, k, 60);
        REQUIRE(r.bound_holds);
        REQUIRE(r.certified_upper <= std::pow(std::sqrt(2.0), static_cast<double>(k + 1)) + 1e-9);
        REQUIRE(r.pairs > 10);
    }
}

TEST_CASE("translation norm agrees with power iteration") {
    auto z = GroupDescriptor::integers();
    Enumeration en(z);
    WeightTable wt(en, 60, 60, 81, 400);
    const long k = 3;
    auto r = translation_norm(wt, en, k, 40);
    // the truncated operator is a weighted permutation; its square in the
    // orthonormalized Dirac basis is diagonal with entries w(u-h_k)/w(u)
    const GroupElement hk = en.at(static_cast<size_t>(k));
    std::vector<double> diag;
    for (size_t m = 1; m <= 40; ++m) {
        const GroupElement& hm = en.at(m);
        GroupElement diff = z.sub(hm, hk);
        if (!wt.window_index(diff) || !wt.window_index(hm)) continue;
        diag.push_back(wt.lower_d(diff) / wt.lower_d(hm));
    }
    std::vector<double> x(diag.size(), 1.0);
    double lambda = 0.0;
    for (int it = 0; it < 4000; ++it) {
        double norm = 0.0;
        for (size_t i = 0; i < x.size(); ++i) {
            x[i] *= diag[i];
            norm += x[i] * x[i];
        }
        norm = std::sqrt(norm);
        lambda = 0.0;
        for (size_t i = 0; i < x.size(); ++i) {
            x[i] /= norm;
            lambda = std::max(lambda, diag[i] * x[i] * x[i]);
        }
    }
    double rayleigh = 0.0;
    for (size_t i = 0; i < x.size(); ++i) rayleigh += diag[i] * x[i] * x[i];
    REQUIRE(std::sqrt(rayleigh) == Catch::Approx(r.observed).margin(1e-9));
}

TEST_CASE("sub-invariance: identity translation gives ratio one") {
    auto z = GroupDescriptor::integers();
    Enumeration en(z);
    WeightTable wt(en, 40, 40, 101, 256);
    auto r = subinvariance_check(wt, en, 1);
    REQUIRE(r.squared_bound_holds);
    REQUIRE(r.max_certified_ratio >= 1.0);
}

TEST_CASE("sub-invariance bound holds for small shifts") {
    auto z = GroupDescriptor::integers();
    Enumeration en(z);
    WeightTable wt(en, 100, 100, 121, 512);
    for (long ell = 1; ell <= 6; ++ell) {
        auto r = subinvariance_check(wt, en, ell);
        REQUIRE(r.squared_bound_holds);
        REQUIRE(r.pairs > 0);
    }
}

TEST_CASE("insufficient support is reported") {
    auto z = GroupDescriptor::integers();
    Enumeration en(z);
    WeightTable wt(en, 6, 6, 7, 64);
    REQUIRE_THROWS_AS(subinvariance_check(wt, en, 6, 40), InsufficientSupportError);
}

TEST_CASE("translation round trip is the identity on sparse vectors") {
    auto z = GroupDescriptor::integers();
    SparseVector f;
    f.coef[z.make({{0, 2}})] = {1.0, -0.5};
    f.coef[z.zero()] = {0.25, 0.0};
    GroupElement g = z.make({{0, 5}});
    auto back = translate(z, translate(z, f, g), z.neg(g));
    REQUIRE(back.coef == f.coef);
}

TEST_CASE("weight tables work over groups with torsion") {
    GroupDescriptor g(1, {3});
    Enumeration en(g);
    WeightTable wt(en, 16, 16, 40, 128);
    REQUIRE(wt.off_mass() >= 0);
    REQUIRE(wt.lower(en.at(1)) >= mpq_class(1, 4));
    auto r = translation_norm(wt, en, 2, 12);
    REQUIRE(r.bound_holds);
}
