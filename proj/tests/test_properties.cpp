#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "reflmap/curveinv.hpp"
#include "reflmap/problem.hpp"

using namespace reflmap;

namespace {

Problem load(const std::string& name) {
    return load_problem(std::string(PROBLEMS_DIR) + "/" + name, 2048);
}

// prod_{sigma != 1} lambda_sigma * prod_{reflections} ell = prod (sigma^-1 L - L)
void check_product_identity(const ReflMapping& f, Budget& budget) {
    const ReflGroup& g = *f.group;
    const CtxPtr& ctx = f.L[0].context();
    Poly lhs = Poly::one(ctx, g.field());
    Poly rhs = Poly::one(ctx, g.field());
    for (std::size_t e = 1; e < g.order(); ++e) {
        lhs = lhs * branch_lambda(f, static_cast<int>(e), budget).lambda;
        if (g.elem(static_cast<int>(e)).is_reflection)
            lhs = lhs * g.elem(static_cast<int>(e)).ell[0];
        rhs = rhs * (g.act_inv(static_cast<int>(e), f.L[0]) - f.L[0]);
    }
    CHECK(lhs == rhs);
}

// g(omega) = c * prod_{sigma in W} sigma L
void check_image_identity(const ReflMapping& f, Budget& budget) {
    Poly g = image_equation(f, budget);
    const CtxPtr& ctx = g.context();
    std::vector<std::size_t> target = ctx->with_role(VarRole::target);
    std::vector<std::optional<Poly>> images(ctx->size());
    for (std::size_t i = 0; i < target.size(); ++i) images[target[i]] = f.omega[i];
    CHECK(substitute_same(g, images).proportional_to(product_of_orbit(f)));
}

// prod lambda_sigma * det J omega = c * prod_{sigma != 1} sigma L  (mod <L>)
void check_jacobian_identity(const ReflMapping& f, Budget& budget) {
    const ReflGroup& g = *f.group;
    const CtxPtr& ctx = f.L[0].context();
    Poly lam = Poly::one(ctx, g.field());
    Poly rhs = Poly::one(ctx, g.field());
    for (std::size_t e = 1; e < g.order(); ++e) {
        lam = lam * branch_lambda(f, static_cast<int>(e), budget).lambda;
        rhs = rhs * g.act(static_cast<int>(e), f.L[0]);
    }
    Poly lhs = lam * poly_det(jacobian(f.omega, g.space_vars()));
    IdealBasis gb = groebner(f.L, MonOrder::degrevlex(), budget);
    CHECK(normal_form(lhs, gb, budget).proportional_to(normal_form(rhs, gb, budget)));
}

// every term of p has the same weighted degree; returns it
long weighted_degree(const Poly& p, const std::vector<std::size_t>& vars,
                     const std::vector<long>& weights) {
    long common = -1;
    for (const auto& t : p.terms()) {
        long w = 0;
        for (std::size_t i = 0; i < vars.size(); ++i)
            w += weights[i] * t.mon[vars[i]];
        if (common < 0) common = w;
        CHECK(w == common);
    }
    return common;
}

// per-branch mu = 2 delta - r + 1, I symmetry, M/Delta symmetry at inverses
void check_report_symmetries(const ReflMapping& f, Budget& budget) {
    const ReflGroup& g = *f.group;
    std::map<int, LocalCurve> curves;
    for (std::size_t e = 1; e < g.order(); ++e) {
        BranchIdeal b = branch_lambda(f, static_cast<int>(e), budget);
        curves.emplace(static_cast<int>(e), make_local_curve(pullback(f, b.lambda)));
    }
    for (auto& [e, c] : curves) {
        const LocalCurve& ci = curves.at(g.inverse(e));
        if (c.empty || c.poly.is_zero()) {
            CHECK(ci.empty == c.empty);
            continue;
        }
        std::optional<long> mu = milnor(c, budget);
        CHECK(milnor(ci, budget) == mu);
        BranchCount r = branch_count(c);
        if (mu && r.count) {
            std::optional<long> d = delta(c, budget);
            REQUIRE(d.has_value());
            CHECK(*mu == 2 * *d - *r.count + 1);
            CHECK(delta(ci, budget) == d);
        }
        for (auto& [e2, c2] : curves) {
            if (e2 <= e || c2.empty || c2.poly.is_zero()) continue;
            CHECK(intersection_number(c, c2, budget) ==
                  intersection_number(c2, c, budget));
        }
    }
}

void check_degree_divides(const ReflMapping& f, Budget& budget) {
    DegreeInfo info = degree(f, budget);
    CHECK(static_cast<long>(f.group->order()) % info.degree == 0);
}

} // namespace

TEST_CASE("identity suite on the example problems") {
    Budget budget(1'000'000'000);
    for (const char* file : {"d8_f1.json", "d8_f2.json", "s4_t0.json",
                             "s4_t1.json", "s4_invariants.json", "cyc235.json",
                             "graph_xy_k2.json"}) {
        INFO(file);
        Problem p = load(file);
        check_product_identity(p.map, budget);
        check_image_identity(p.map, budget);
        check_jacobian_identity(p.map, budget);
        check_degree_divides(p.map, budget);
        if (p.map.chart) check_report_symmetries(p.map, budget);
    }
}

TEST_CASE("weighted homogeneity of the image equation for reflected graphs") {
    Budget budget(1'000'000'000);
    struct Case {
        const char* file;
        std::vector<long> weights;
        long degree;
    };
    // graph of a degree-d H: g is weighted-homogeneous of degree d*|W| with
    // the omega degrees as weights
    for (const Case& c : {Case{"d8_f1.json", {2, 4, 1}, 8},
                          Case{"graph_xy_k2.json", {2, 2, 2}, 8},
                          Case{"cyc235.json", {2, 3, 5}, 30}}) {
        INFO(c.file);
        Problem p = load(c.file);
        Poly g = image_equation(p.map, budget);
        std::vector<std::size_t> target = p.ctx->with_role(VarRole::target);
        CHECK(weighted_degree(g, target, c.weights) == c.degree);
    }
}

TEST_CASE("identity suite on randomized slices") {
    Budget budget(1'000'000'000);
    std::mt19937 rng(1203);
    std::uniform_int_distribution<int> coeff(-3, 3);

    auto random_h = [&](const CtxPtr& ctx, const FieldPtr& field, std::size_t vx,
                        std::size_t vy) {
        // random nonzero h(u,v) of degree <= 2 with h(0) = 0
        Poly h = Poly::zero(ctx, field);
        while (h.is_zero()) {
            for (auto [a, b] : {std::pair{1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}}) {
                int c = coeff(rng);
                if (c == 0) continue;
                Monomial m(ctx->size(), 0);
                m[vx] = a;
                m[vy] = b;
                h = h + Poly(ctx, field, {{m, CycloElem::rational(field, Rat(c))}});
            }
        }
        return h;
    };

    auto run_case = [&](const Problem& base, std::size_t vx, std::size_t vy,
                        std::size_t vw) {
        Poly h = random_h(base.ctx, base.field, vx, vy);
        ReflMapping f = base.map;
        f.L = {Poly::variable(base.ctx, base.field, vw) - h};
        // chart (x, y) -> (x, y, h(x, y))
        CtxPtr cctx = std::make_shared<VarContext>(
            std::vector<std::string>{"x", "y"},
            std::vector<VarRole>(2, VarRole::space));
        std::vector<std::optional<Poly>> images(base.ctx->size());
        images[vx] = parse_poly("x", cctx, base.field);
        images[vy] = parse_poly("y", cctx, base.field);
        ChartSpec chart;
        chart.ctx = cctx;
        chart.images = {*images[vx], *images[vy], substitute(h, cctx, base.field, images)};
        f.chart = std::move(chart);
        verify_chart(f);
        INFO("L = " << f.L[0].str());
        check_product_identity(f, budget);
        check_image_identity(f, budget);
        check_jacobian_identity(f, budget);
        check_degree_divides(f, budget);
        check_report_symmetries(f, budget);
    };

    Problem d8 = load("d8_f1.json");      // dihedral group on (u, v), w free
    Problem c23 = load("graph_xy_k2.json");
    // replace the group of the second family with Z/2 x Z/3
    Problem c23b = c23;
    {
        FieldPtr field = make_field(6);
        CtxPtr ctx = std::make_shared<VarContext>(
            std::vector<std::string>{"u1", "u2", "u3", "X", "Y", "Z"},
            std::vector<VarRole>{VarRole::space, VarRole::space, VarRole::space,
                                 VarRole::target, VarRole::target, VarRole::target});
        std::vector<CycloMatrix> gens;
        for (std::size_t i = 0; i < 2; ++i) {
            CycloMatrix m = identity_matrix(field, 3);
            m[i][i] = CycloElem::zeta(field, i == 0 ? 3 : 2);
            gens.push_back(std::move(m));
        }
        auto group = std::make_shared<ReflGroup>(
            ReflGroup::close(gens, field, ctx, {0, 1, 2}, 64));
        REQUIRE(group->order() == 6);
        c23b.field = field;
        c23b.ctx = ctx;
        c23b.group = group;
        c23b.map.group = group;
        c23b.map.omega = {parse_poly("u1^2", ctx, field),
                          parse_poly("u2^3", ctx, field),
                          parse_poly("u3", ctx, field)};
        c23b.map.chart.reset();
    }

    for (int round = 0; round < 10; ++round) {
        run_case(d8, 0, 1, 2);
        run_case(c23b, 0, 1, 2);
    }
}
