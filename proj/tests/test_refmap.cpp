#include <catch2/catch_amalgamated.hpp>

#include "reflmap/curveinv.hpp"
#include "reflmap/problem.hpp"
#include "reflmap/refmap.hpp"

using namespace reflmap;

namespace {

Problem load(const std::string& name) {
    return load_problem(std::string(PROBLEMS_DIR) + "/" + name, 2048);
}

} // namespace

TEST_CASE("problem loading and chart verification") {
    Problem p = load("d8_f1.json");
    CHECK(p.group->order() == 8);
    CHECK(p.orbit_check.ok);
    CHECK(smooth_at_origin(p.map));
    REQUIRE(p.map.chart.has_value());
    CHECK(pullback(p.map, p.map.L[0]).is_zero());
    // omega pulled back through the chart stays polynomial and nonzero
    for (const auto& w : p.map.omega) CHECK(!pullback(p.map, w).is_zero());
}

TEST_CASE("degree of the graph embeddings") {
    Budget budget;
    for (auto [file, k] : {std::pair{"graph_xy_k2.json", 2},
                           std::pair{"graph_xy_k3.json", 3},
                           std::pair{"graph_xy_k5.json", 5}}) {
        Problem p = load(file);
        DegreeInfo info = degree(p.map, budget);
        CHECK(info.setwise.size() == static_cast<std::size_t>(k));
        CHECK(info.pointwise.size() == 1);
        CHECK(info.degree == k);
        CHECK(!generically_one_to_one(p.map, budget));
    }
}

TEST_CASE("degree of the tetrahedral family") {
    Budget budget;
    Problem p0 = load("s4_t0.json");
    DegreeInfo d0 = degree(p0.map, budget);
    CHECK(d0.setwise.size() == 4);
    CHECK(d0.pointwise.size() == 2);
    CHECK(d0.degree == 2);

    Problem p1 = load("s4_t1.json");
    DegreeInfo d1 = degree(p1.map, budget);
    CHECK(d1.degree == 1);
    CHECK(generically_one_to_one(p1.map, budget));
}

TEST_CASE("image equations of the graph embeddings") {
    Budget budget;
    // degree-k maps give the k-th power of the reduced equation
    Problem p2 = load("graph_xy_k2.json");
    CHECK(image_equation(p2.map, budget).str() == "X^2*Y^2-2*X*Y*Z^2+Z^4");
    CHECK(!image_reduced(p2.map, budget));
    Problem p3 = load("graph_xy_k3.json");
    CHECK(image_equation(p3.map, budget).str() ==
          "Z^9-3*X*Y*Z^6+3*X^2*Y^2*Z^3-X^3*Y^3");
}

TEST_CASE("image equation of the linear dihedral slice") {
    Budget budget;
    Problem p = load("d8_f1.json");
    Poly g = image_equation(p.map, budget);
    CHECK(g.str() ==
          "Z^8-10*X*Z^6+33*X^2*Z^4-40*X^3*Z^2-14*Y*Z^4+16*X^4+70*X*Y*Z^2"
          "-200*X^2*Y+625*Y^2");
    CHECK(image_reduced(p.map, budget));
    // g(omega) is proportional to the orbit product of L
    std::vector<std::optional<Poly>> images(p.ctx->size());
    std::vector<std::size_t> target = p.ctx->with_role(VarRole::target);
    for (std::size_t i = 0; i < target.size(); ++i)
        images[target[i]] = p.map.omega[i];
    CHECK(substitute_same(g, images).proportional_to(product_of_orbit(p.map)));
}

TEST_CASE("normalization of image polynomials") {
    FieldPtr f = make_field(1);
    CtxPtr ctx = std::make_shared<VarContext>(
        std::vector<std::string>{"X", "Y", "Z"},
        std::vector<VarRole>(3, VarRole::target));
    auto p = [&](const std::string& s) { return parse_poly(s, ctx, f); };
    CHECK(normalize_image_poly(p("-2*X^2+4*Y")) == p("X^2-2*Y"));
    CHECK(normalize_image_poly(p("1/3*X*Y-1/6*Z^2")) == p("2*X*Y-Z^2"));
    CHECK(normalize_image_poly(p("6*X^2-9*Y^2")) == p("2*X^2-3*Y^2"));
}

TEST_CASE("branch equations of the linear dihedral slice") {
    Budget budget;
    Problem p = load("d8_f1.json");
    const ReflGroup& g = *p.group;
    std::vector<Poly> rotation_lambdas;
    for (std::size_t e = 1; e < g.order(); ++e) {
        BranchIdeal b = branch_lambda(p.map, static_cast<int>(e), budget);
        CHECK(b.is_reflection == g.elem(static_cast<int>(e)).is_reflection);
        if (b.is_reflection) {
            // the divided difference is a nonzero constant: empty branch
            CHECK(b.lambda.is_constant());
            CHECK(b.empty);
        } else {
            CHECK(!b.empty);
            rotation_lambdas.push_back(b.lambda);
        }
    }
    REQUIRE(rotation_lambdas.size() == 3);
    auto pp = [&](const std::string& s) { return parse_poly(s, p.ctx, p.field); };
    CHECK(rotation_lambdas[0].proportional_to(pp("u+3*v")));
    CHECK(rotation_lambdas[1].proportional_to(pp("4*u+2*v")));
    CHECK(rotation_lambdas[2].proportional_to(pp("3*u-v")));
}

TEST_CASE("alpha matrices satisfy the defining identity") {
    Budget budget;
    for (const char* file : {"d8_f1.json", "d8_f2.json", "s4_invariants.json"}) {
        Problem p = load(file);
        const ReflGroup& g = *p.group;
        for (std::size_t e = 1; e < g.order(); ++e) {
            PolyMatrix alpha = alpha_sigma(p.map, static_cast<int>(e));
            const GroupElem& el = g.elem(static_cast<int>(e));
            REQUIRE(alpha.size() == p.map.L.size());
            REQUIRE(alpha[0].size() == el.ell.size());
            for (std::size_t r = 0; r < alpha.size(); ++r) {
                Poly sum = Poly::zero(p.ctx, p.field);
                for (std::size_t i = 0; i < el.ell.size(); ++i)
                    sum = sum + alpha[r][i] * el.ell[i];
                CHECK(sum == g.act_inv(static_cast<int>(e), p.map.L[r]) - p.map.L[r]);
            }
        }
    }
}

TEST_CASE("double point spaces in the source") {
    Budget budget;
    Problem p = load("d8_f1.json");
    for (std::size_t e = 1; e < p.group->order(); ++e) {
        DSigmaInfo info = dsigma_ideal(p.map, static_cast<int>(e), budget);
        if (info.is_reflection) {
            CHECK(info.dim == -1);  // empty: lambda is a nonzero constant
        } else {
            CHECK(info.dim == 1);   // a line through the origin in Y
        }
    }
}

TEST_CASE("source double point spaces of a codimension-two slice") {
    Budget budget(100'000'000);
    Problem p = load("k2c3c5.json");
    REQUIRE(p.group->order() == 2310);
    // sigma_1 = (1,0,0,0,0) has an empty double point space, sigma_3 =
    // (1,1,1,0,0) a curve
    DSigmaInfo d1 = dsigma_ideal(p.map, 1155, budget);
    CHECK(d1.dim == -1);
    DSigmaInfo d3 = dsigma_ideal(p.map, 1617, budget);
    CHECK(d3.dim == 1);
}

TEST_CASE("blown-up double point spaces K2") {
    Budget budget(100'000'000);
    Problem p = load("k2c3c5.json");
    K2Report r1 = k2sigma_charts(p.map, 1155, budget);
    CHECK(r1.empty);
    CHECK(r1.dim == -1);
    K2Report r3 = k2sigma_charts(p.map, 1617, budget);
    CHECK(!r3.empty);
    CHECK(r3.dim == 1);
    CHECK(r3.exc_dim == 0);
    REQUIRE(r3.charts.size() == 5);
    for (const auto& c : r3.charts) CHECK(c.dim <= 1);
}

TEST_CASE("linear presolve preserves the solution set") {
    FieldPtr f = make_field(1);
    CtxPtr ctx = std::make_shared<VarContext>(
        std::vector<std::string>{"x", "y", "z"},
        std::vector<VarRole>(3, VarRole::space));
    auto p = [&](const std::string& s) { return parse_poly(s, ctx, f); };
    Budget budget;
    // z is linear in the first generator; after presolve the system is a
    // plane curve in x, y with the same Krull dimension
    std::vector<Poly> gens{p("z - x^2 - y"), p("z^2 - x*y")};
    detail::PresolveResult pre = detail::presolve_linear(gens, ctx, f);
    CHECK(pre.gens.size() == 1);
    CHECK(pre.ctx->size() == 2);
    IdealBasis gb = groebner(pre.gens, MonOrder::degrevlex(), budget);
    CHECK(krull_dim(gb, pre.ctx->size()) == 1);
    // a fully solvable linear system collapses to the padded context
    std::vector<Poly> lin{p("x - y"), p("y - z"), p("z - 1")};
    detail::PresolveResult all = detail::presolve_linear(lin, ctx, f);
    CHECK(all.gens.empty());
    CHECK(all.padded);
}
