#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "jamison/snf.hpp"

using namespace jamison;

namespace {

void check_snf_contract(const IntMatrix& m) {
    auto s = smith_normal_form(m);
    size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    REQUIRE(s.u.size() == rows);
    REQUIRE(s.v.size() == cols);
    // unimodular transforms
    mpz_class du = integer_determinant(s.u);
    mpz_class dv = integer_determinant(s.v);
    REQUIRE((du == 1 || du == -1));
    REQUIRE((dv == 1 || dv == -1));
    // U*M*V == D
    if (rows && cols) {
        auto umv = matrix_product(matrix_product(s.u, m), s.v);
        REQUIRE(umv == s.d);
    }
    // diagonal, nonnegative, divisibility chain
    auto diag = s.diagonal();
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j)
            if (i != j) REQUIRE(s.d[i][j] == 0);
    for (size_t i = 0; i < diag.size(); ++i) REQUIRE(diag[i] >= 0);
    for (size_t i = 0; i + 1 < diag.size(); ++i) {
        if (diag[i] == 0) REQUIRE(diag[i + 1] == 0);
        else REQUIRE(diag[i + 1] % diag[i] == 0);
    }
}

} // namespace

TEST_CASE("zero matrix is a fixed point") {
    auto s = smith_normal_form({{0}});
    REQUIRE(s.d == IntMatrix{{0}});
    REQUIRE(s.u == IntMatrix{{1}});
    REQUIRE(s.v == IntMatrix{{1}});
}

TEST_CASE("identity stays the identity") {
    auto s = smith_normal_form({{1, 0}, {0, 1}});
    REQUIRE(s.d == IntMatrix{{1, 0}, {0, 1}});
}

TEST_CASE("diag(2,3) normalizes to diag(1,6)") {
    IntMatrix m = {{2, 0}, {0, 3}};
    auto s = smith_normal_form(m);
    REQUIRE(s.d[0][0] == 1);
    REQUIRE(s.d[1][1] == 6);
    check_snf_contract(m);
}

TEST_CASE("empty matrix") {
    auto s = smith_normal_form({});
    REQUIRE(s.d.empty());
    REQUIRE(s.u.empty());
    REQUIRE(s.v.empty());
}

TEST_CASE("rectangular and rank-deficient shapes") {
    check_snf_contract({{1, 2, 3}});
    check_snf_contract({{1}, {2}, {3}});
    check_snf_contract({{2, 4}, {1, 2}});
    check_snf_contract({{6, 10, 15}, {10, 15, 6}, {15, 6, 10}});
}

TEST_CASE("random matrices satisfy the exact contract") {
    std::mt19937_64 rng(20260810);
    std::uniform_int_distribution<int> dim(1, 4), entry(-9, 9);
    for (int trial = 0; trial < 200; ++trial) {
        size_t r = static_cast<size_t>(dim(rng)), c = static_cast<size_t>(dim(rng));
        IntMatrix m(r, std::vector<mpz_class>(c));
        for (auto& row : m)
            for (auto& x : row) x = entry(rng);
        check_snf_contract(m);
    }
}

TEST_CASE("huge entries stay exact") {
    mpz_class big;
    mpz_ui_pow_ui(big.get_mpz_t(), 2, 256); // far beyond any fixed width
    IntMatrix m = {{big, 1}, {0, big + 1}};
    check_snf_contract(m);
}
