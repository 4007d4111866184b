#include <catch2/catch_amalgamated.hpp>

#include "reflmap/mora.hpp"
#include "reflmap/parser.hpp"

using namespace reflmap;

namespace {

struct Fixture {
    FieldPtr f = make_field(1);
    CtxPtr ctx = std::make_shared<VarContext>(
        std::vector<std::string>{"x", "y"},
        std::vector<VarRole>{VarRole::space, VarRole::space});
    Budget budget{100'000'000};
    Poly parse(const std::string& s) const { return parse_poly(s, ctx, f); }

    std::optional<long> milnor_of(const std::string& s) {
        Poly p = parse(s);
        return local_quotient_dim({p.derivative(0), p.derivative(1)}, budget);
    }
};

} // namespace

TEST_CASE_METHOD(Fixture, "Mora normal form handles units") {
    // x is in the local ideal generated by x + x^2 = x(1 + x)
    CHECK(mora_normal_form(parse("x"), {parse("x + x^2")}, budget).is_zero());
    CHECK(mora_normal_form(parse("x^5 - 3*x^2"), {parse("x + x^2")}, budget).is_zero());
    // but y is not
    CHECK(!mora_normal_form(parse("y"), {parse("x + x^2")}, budget).is_zero());
}

TEST_CASE_METHOD(Fixture, "local quotient dimensions of monomial ideals") {
    CHECK(local_quotient_dim({parse("x"), parse("y")}, budget) == 1);
    CHECK(local_quotient_dim({parse("x^2"), parse("y^3")}, budget) == 6);
    CHECK(local_quotient_dim({parse("x^2"), parse("x*y"), parse("y^2")}, budget) == 3);
    CHECK(!local_quotient_dim({parse("x^2")}, budget).has_value());
    CHECK(local_quotient_dim({parse("1 + x")}, budget) == 0);
    CHECK(!local_quotient_dim({parse("0")}, budget).has_value());
}

TEST_CASE_METHOD(Fixture, "Milnor numbers of standard singularities") {
    // A_k: x^2 - y^(k+1) has mu = k
    CHECK(milnor_of("x^2 - y^2") == 1);
    CHECK(milnor_of("x^2 - y^3") == 2);
    CHECK(milnor_of("x^2 - y^7") == 6);
    // E_8: x^3 - y^5
    CHECK(milnor_of("x^3 - y^5") == 8);
    // D_4: x^3 - x*y^2
    CHECK(milnor_of("x^3 - x*y^2") == 4);
    // ordinary m-fold point: mu = (m-1)^2
    CHECK(milnor_of("x^4 - y^4") == 9);
    // smooth
    CHECK(milnor_of("x + y^5") == 0);
    // non-isolated
    CHECK(!milnor_of("x^2*y^2").has_value());
}

TEST_CASE_METHOD(Fixture, "local dimension can differ from the global one") {
    // x^2(x - 1) = x^3 - x^2: globally x = 0 and x = 1, locally just x^2
    std::vector<Poly> gens{parse("x^3 - x^2"), parse("y")};
    CHECK(local_quotient_dim(gens, budget) == 2);
    IdealBasis gb = groebner(gens, MonOrder::degrevlex(), budget);
    CHECK(quotient_dim(gb) == 3);
}

TEST_CASE_METHOD(Fixture, "local and global dimensions agree for homogeneous input") {
    std::vector<std::vector<std::string>> systems = {
        {"x^2 - y^2", "x*y"},
        {"x^3", "x*y", "y^4"},
        {"x^2 + y^2", "x^3 - y^3"},
    };
    for (const auto& sys : systems) {
        std::vector<Poly> gens;
        for (const auto& s : sys) gens.push_back(parse(s));
        IdealBasis gb = groebner(gens, MonOrder::degrevlex(), budget);
        CHECK(local_quotient_dim(gens, budget) == quotient_dim(gb));
    }
}

TEST_CASE_METHOD(Fixture, "intersection numbers via local dimension") {
    auto inter = [&](const std::string& a, const std::string& b) {
        return local_quotient_dim({parse(a), parse(b)}, budget);
    };
    CHECK(inter("x", "y") == 1);                 // transverse lines
    CHECK(inter("y", "y - x^2") == 2);           // tangent conic
    CHECK(inter("y^2 - x^3", "y") == 3);
    CHECK(inter("y^2 - x^3", "y^2 + x^3") == 6);
    CHECK(!inter("x*y", "x").has_value());       // shared component
}
