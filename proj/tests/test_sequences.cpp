#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "jamison/enumeration.hpp"
#include "jamison/orbit.hpp"
#include "jamison/sequence.hpp"

using namespace jamison;

namespace {

std::set<mpz_class> orbit_values(const ResidueOrbit& orbit, int coordinate) {
    std::set<mpz_class> out;
    for (const auto& g : orbit.residues) {
        auto it = g.free.find(coordinate);
        out.insert(it == g.free.end() ? mpz_class(0) : it->second);
    }
    return out;
}

} // namespace

TEST_CASE("torsion order below two is rejected with a field path") {
    try {
        GroupDescriptor g(1, {1});
        FAIL("expected validation error");
    } catch (const ValidationError& e) {
        REQUIRE(e.field == "group.torsion[0]");
    }
}

TEST_CASE("family parameter validation") {
    auto z = GroupDescriptor::integers();
    auto bad_ratio = SequenceSpec::geometric(z, 1, 1);
    REQUIRE_THROWS_AS(validate(bad_ratio), ValidationError);
    auto bad_base = SequenceSpec::double_exponential(z, 1);
    REQUIRE_THROWS_AS(validate(bad_base), ValidationError);
    SequenceSpec empty = SequenceSpec::explicit_list(z, {});
    REQUIRE_THROWS_AS(validate(empty), ValidationError);
}

TEST_CASE("shell-lex enumeration of Z") {
    auto z = GroupDescriptor::integers();
    Enumeration en(z);
    REQUIRE(en.at(1) == z.zero());
    REQUIRE(en.at(2) == z.make({{0, -1}}));
    REQUIRE(en.at(3) == z.make({{0, 1}}));
    REQUIRE(en.at(4) == z.make({{0, -2}}));
    REQUIRE(en.at(5) == z.make({{0, 2}}));
    REQUIRE(en.index_of(z.make({{0, -3}}), 100) == 6);
}

TEST_CASE("shell-lex enumeration of Z^2 counts shells") {
    auto z2 = GroupDescriptor::free_abelian(2);
    Enumeration en(z2);
    REQUIRE(en.at(1) == z2.zero());
    en.ensure(9);
    std::set<GroupElement> shell1;
    for (size_t n = 2; n <= 9; ++n) shell1.insert(en.at(n));
    REQUIRE(shell1.size() == 8); // the 3x3 box minus the origin
}

TEST_CASE("finite groups exhaust cleanly") {
    GroupDescriptor g(0, {5});
    Enumeration en(g);
    en.ensure(5);
    std::set<GroupElement> all;
    for (size_t n = 1; n <= 5; ++n) all.insert(en.at(n));
    REQUIRE(all.size() == 5);
    REQUIRE_THROWS_AS(en.ensure(6), SupportTooLargeError);
}

TEST_CASE("term and term_mod agree where terms are materializable") {
    auto z = GroupDescriptor::integers();
    auto dexp = SequenceSpec::double_exponential(z, 2);
    mpz_class q(65536);
    for (size_t k = 0; k < 5; ++k) {
        auto full = term(dexp, k);
        auto red = term_mod(dexp, k, q);
        mpz_class v = full.free.count(0) ? full.free.at(0) : mpz_class(0);
        mpz_class r = red.free.count(0) ? red.free.at(0) : mpz_class(0);
        REQUIRE(r == v % q);
    }
    // term 63 would need 2^63 squarings' worth of bits
    REQUIRE_THROWS_AS(term(dexp, 40), BudgetExceededError);
    // but its residue is cheap
    auto red = term_mod(dexp, 40, q);
    REQUIRE((red.free.empty() || red.free.at(0) == 0));
}

TEST_CASE("double exponential orbit mod 2^16") {
    auto z = GroupDescriptor::integers();
    auto seq = SequenceSpec::double_exponential(z, 2);
    auto orbit = residue_orbit(seq, mpz_class(65536));
    REQUIRE(orbit.kind == ResidueOrbit::Kind::Finite);
    REQUIRE(orbit.certified);
    REQUIRE(orbit_values(orbit, 0) == std::set<mpz_class>{0, 2, 4, 16, 256});
}

TEST_CASE("successive integers cover all residues mod 5") {
    auto z = GroupDescriptor::integers();
    auto seq = SequenceSpec::polynomial(z, {mpz_class(1), mpz_class(1)}); // k+1
    auto orbit = residue_orbit(seq, mpz_class(5));
    REQUIRE(orbit_values(orbit, 0) == std::set<mpz_class>{0, 1, 2, 3, 4});
}

TEST_CASE("powers of two mod 7") {
    auto z = GroupDescriptor::integers();
    auto seq = SequenceSpec::geometric(z, 1, 2);
    auto orbit = residue_orbit(seq, mpz_class(7));
    REQUIRE(orbit_values(orbit, 0) == std::set<mpz_class>{1, 2, 4});
}

TEST_CASE("non-exhaustive explicit lists have no oracle") {
    auto z = GroupDescriptor::integers();
    auto seq = SequenceSpec::explicit_list(z, {z.make({{0, 3}})}, false);
    REQUIRE_THROWS_AS(residue_orbit(seq, mpz_class(5)), NotCertifiableError);
    auto ok = SequenceSpec::explicit_list(z, {z.make({{0, 3}})}, true);
    REQUIRE(residue_orbit(ok, mpz_class(5)).certified);
}

TEST_CASE("span generators per family") {
    auto z = GroupDescriptor::integers();
    REQUIRE(sequence_index(SequenceSpec::double_exponential(z, 2)).count == 2);
    REQUIRE(sequence_index(SequenceSpec::geometric(z, 3, 2)).count == 3);
    REQUIRE(sequence_index(SequenceSpec::polynomial(z, {mpz_class(1), mpz_class(1)})).count == 1);
    // gcd of values of 2k+2 is 2
    REQUIRE(sequence_index(SequenceSpec::polynomial(z, {mpz_class(2), mpz_class(2)})).count == 2);
    REQUIRE(sequence_index(SequenceSpec::all_elements(z)).count == 1);
}

TEST_CASE("augmentation prepends coset representatives") {
    auto z = GroupDescriptor::integers();
    auto even = SequenceSpec::polynomial(z, {mpz_class(2), mpz_class(2)});
    auto aug = augment_to_generating(even);
    REQUIRE(aug.prefix.size() == 2);
    REQUIRE(aug.prefix[0] == z.zero());
    REQUIRE(aug.prefix[1] == z.make({{0, 1}}));
    REQUIRE(term(aug, 0) == z.zero());
    REQUIRE(term(aug, 1) == z.make({{0, 1}}));
    REQUIRE(term(aug, 2) == z.make({{0, 2}})); // original first term, order preserved
    REQUIRE(sequence_index(aug).count == 1);

    auto all = SequenceSpec::polynomial(z, {mpz_class(1), mpz_class(1)});
    auto aug2 = augment_to_generating(all);
    REQUIRE(aug2.prefix == std::vector<GroupElement>{z.zero()});

    auto z2 = GroupDescriptor::free_abelian(2);
    auto six = SequenceSpec::explicit_list(z2, {z2.make({{0, 2}}), z2.make({{1, 3}})});
    auto aug3 = augment_to_generating(six);
    REQUIRE(aug3.prefix.size() == 6);
    REQUIRE(sequence_index(aug3).count == 1);

    auto diag = SequenceSpec::explicit_list(z2, {z2.make({{0, 1}, {1, 1}})});
    REQUIRE_THROWS_AS(augment_to_generating(diag), InfiniteIndexError);
}

TEST_CASE("countable ambient index rules") {
    auto zi = GroupDescriptor::countable_free();
    REQUIRE(sequence_index(SequenceSpec::basis(zi, 0)).count == 1);
    REQUIRE_FALSE(sequence_index(SequenceSpec::basis(zi, 1)).finite);
    auto expl = SequenceSpec::explicit_list(zi, {zi.basis(0), zi.basis(2)});
    REQUIRE_FALSE(sequence_index(expl).finite);
}

TEST_CASE("bounded ratio is an annotation, not a certificate") {
    auto z = GroupDescriptor::integers();
    REQUIRE(bounded_ratio_tag(SequenceSpec::geometric(z, 1, 2)).has_value());
    REQUIRE(bounded_ratio_tag(SequenceSpec::polynomial(z, {mpz_class(1), mpz_class(1)})).has_value());
    REQUIRE_FALSE(bounded_ratio_tag(SequenceSpec::double_exponential(z, 2)).has_value());
}
