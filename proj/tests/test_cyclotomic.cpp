#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>

#include "reflmap/cyclotomic.hpp"
#include "reflmap/parser.hpp"

using namespace reflmap;

namespace {

UPoly upoly_from(std::initializer_list<long> coeffs) {
    UPoly p;
    for (long c : coeffs) p.push_back(Rat(c));
    upoly_trim(p);
    return p;
}

} // namespace

TEST_CASE("cyclotomic polynomials match known tables") {
    CHECK(cyclotomic_polynomial(1) == upoly_from({-1, 1}));
    CHECK(cyclotomic_polynomial(2) == upoly_from({1, 1}));
    CHECK(cyclotomic_polynomial(3) == upoly_from({1, 1, 1}));
    CHECK(cyclotomic_polynomial(4) == upoly_from({1, 0, 1}));
    CHECK(cyclotomic_polynomial(5) == upoly_from({1, 1, 1, 1, 1}));
    CHECK(cyclotomic_polynomial(6) == upoly_from({1, -1, 1}));
    CHECK(cyclotomic_polynomial(8) == upoly_from({1, 0, 0, 0, 1}));
    CHECK(cyclotomic_polynomial(12) == upoly_from({1, 0, -1, 0, 1}));
    // first index with a coefficient other than 0, +-1
    UPoly p105 = cyclotomic_polynomial(105);
    CHECK(p105[7] == Rat(-2));
}

TEST_CASE("product of Phi_d over divisors gives x^n - 1") {
    std::map<long, UPoly> memo;
    for (long n : {1L, 2L, 6L, 8L, 12L, 30L}) {
        UPoly prod{Rat(1)};
        for (long d = 1; d <= n; ++d)
            if (n % d == 0) prod = upoly_mul(prod, cyclotomic_polynomial(d, &memo));
        UPoly expect(static_cast<std::size_t>(n) + 1, Rat(0));
        expect[0] = Rat(-1);
        expect[static_cast<std::size_t>(n)] = Rat(1);
        CHECK(prod == expect);
    }
}

TEST_CASE("zeta relations") {
    for (long n : {2L, 3L, 5L, 8L, 12L, 30L}) {
        FieldPtr f = make_field(n);
        CycloElem z = CycloElem::zeta(f);
        CycloElem pw = CycloElem::one(f);
        for (long k = 0; k < n; ++k) pw = pw * z;
        CHECK(pw == CycloElem::one(f));
        // Phi_n(zeta) = 0
        const UPoly& phi = f->phi();
        CycloElem acc = CycloElem::zero(f);
        for (std::size_t i = 0; i < phi.size(); ++i)
            acc = acc + CycloElem::zeta(f, static_cast<long>(i)).scaled(phi[i]);
        CHECK(acc.is_zero());
    }
}

TEST_CASE("sqrt two inside Q(zeta_8)") {
    FieldPtr f = make_field(8);
    CycloElem r2 = CycloElem::zeta(f, 1) - CycloElem::zeta(f, 3);
    CHECK(r2 * r2 == CycloElem::rational(f, Rat(2)));
}

TEST_CASE("inverse of 1 + zeta for conductor 3") {
    FieldPtr f = make_field(3);
    CycloElem z = CycloElem::zeta(f);
    CycloElem a = CycloElem::one(f) + z;
    // 1 + zeta = -zeta^2, with inverse -zeta
    CHECK(a.inverse() == -z);
    CHECK(a * a.inverse() == CycloElem::one(f));
}

TEST_CASE("field axioms on random elements") {
    std::mt19937 rng(20240817);
    std::uniform_int_distribution<long> num(-9, 9);
    for (long n : {5L, 8L, 12L}) {
        FieldPtr f = make_field(n);
        auto random_elem = [&]() {
            CycloElem e = CycloElem::zero(f);
            for (int t = 0; t < 3; ++t) {
                long k = std::uniform_int_distribution<long>(0, n - 1)(rng);
                e = e + CycloElem::zeta(f, k).scaled(Rat(num(rng)));
            }
            return e;
        };
        for (int round = 0; round < 25; ++round) {
            CycloElem a = random_elem(), b = random_elem(), c = random_elem();
            CHECK(a + b == b + a);
            CHECK(a * b == b * a);
            CHECK(a * (b + c) == a * b + a * c);
            CHECK((a - a).is_zero());
            if (!a.is_zero()) {
                CHECK(a * a.inverse() == CycloElem::one(f));
                CHECK((a * b) / a == b);
            }
        }
    }
}

TEST_CASE("mixed conductors are rejected") {
    FieldPtr f8 = make_field(8);
    FieldPtr f12 = make_field(12);
    CHECK_THROWS_AS(CycloElem::one(f8) + CycloElem::one(f12), math_error);
    CHECK_THROWS_AS(make_field(0), math_error);
}

TEST_CASE("cyclotomic constant parsing") {
    FieldPtr f = make_field(8);
    CHECK(parse_cyclo("z^2", f) == CycloElem::zeta(f, 2));
    CHECK(parse_cyclo("1/2*z - 1/2*z^3 + z^8", f) ==
          CycloElem::zeta(f, 1).scaled(Rat(1, 2)) -
              CycloElem::zeta(f, 3).scaled(Rat(1, 2)) + CycloElem::one(f));
    CHECK(parse_cyclo("(1+z)*(1-z)", f) ==
          CycloElem::one(f) - CycloElem::zeta(f, 2));
    CHECK_THROWS_AS(parse_cyclo("x + 1", f), parse_error);
}
