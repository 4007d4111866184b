#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "reflmap/groebner.hpp"
#include "reflmap/parser.hpp"

using namespace reflmap;

namespace {

CtxPtr make_ctx(std::vector<std::string> names) {
    std::vector<VarRole> roles(names.size(), VarRole::space);
    return std::make_shared<VarContext>(std::move(names), std::move(roles));
}

// Every S-polynomial of a Groebner basis must reduce to zero.
bool spolys_reduce_to_zero(const IdealBasis& basis, Budget& budget) {
    auto sorted = basis.sorted_gens();
    for (std::size_t i = 0; i < sorted.size(); ++i)
        for (std::size_t j = i + 1; j < sorted.size(); ++j) {
            const Monomial& a = sorted[i].front().mon;
            const Monomial& b = sorted[j].front().mon;
            Monomial l = mon_lcm(a, b);
            TermVec s = sub_mul(TermVec{}, -sorted[j].front().coeff,
                                mon_div(l, a), sorted[i], basis.order);
            s = sub_mul(s, sorted[i].front().coeff, mon_div(l, b), sorted[j],
                        basis.order);
            TermVec r = normal_form_terms(std::move(s), sorted, basis.order, budget);
            if (!r.empty()) return false;
        }
    return true;
}

// Independent quotient dimension oracle: count monomials of degree <= D not
// reachable from the ideal, via exact rank of the Macaulay matrix, for D
// large enough that the count stabilizes.
long macaulay_quotient_dim(const std::vector<Poly>& gens, int nvars) {
    auto monomials_up_to = [&](int d) {
        std::vector<Monomial> out;
        Monomial m(static_cast<std::size_t>(nvars), 0);
        while (true) {
            if (mon_degree(m) <= d) out.push_back(m);
            int i = 0;
            while (i < nvars) {
                ++m[static_cast<std::size_t>(i)];
                if (mon_degree(m) <= d) break;
                m[static_cast<std::size_t>(i)] = 0;
                ++i;
            }
            if (i == nvars) break;
        }
        return out;
    };
    long prev = -1;
    for (int d = 2; d <= 14; ++d) {
        std::vector<Monomial> mons = monomials_up_to(d);
        std::map<Monomial, std::size_t> index;
        for (std::size_t i = 0; i < mons.size(); ++i) index[mons[i]] = i;
        std::vector<std::vector<Rat>> rows;
        for (const auto& g : gens) {
            int gd = g.total_degree();
            for (const auto& m : mons) {
                if (mon_degree(m) + gd > d) continue;
                std::vector<Rat> row(mons.size(), Rat(0));
                for (const auto& t : g.terms())
                    row[index.at(mon_mul(t.mon, m))] = t.coeff.rational_value();
                rows.push_back(std::move(row));
            }
        }
        // exact Gaussian elimination
        std::size_t rank = 0;
        std::size_t cols = mons.size();
        for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
            std::size_t pivot = rank;
            while (pivot < rows.size() && rat_is_zero(rows[pivot][c])) ++pivot;
            if (pivot == rows.size()) continue;
            std::swap(rows[rank], rows[pivot]);
            for (std::size_t r = 0; r < rows.size(); ++r) {
                if (r == rank || rat_is_zero(rows[r][c])) continue;
                Rat q = rows[r][c] / rows[rank][c];
                for (std::size_t cc = c; cc < cols; ++cc)
                    rows[r][cc] -= q * rows[rank][cc];
            }
            ++rank;
        }
        long dim = static_cast<long>(cols - rank);
        if (dim == prev) return dim;
        prev = dim;
    }
    return prev;
}

} // namespace

TEST_CASE("textbook Groebner bases") {
    FieldPtr f = make_field(1);
    CtxPtr ctx = make_ctx({"x", "y"});
    Budget budget;
    auto p = [&](const std::string& s) { return parse_poly(s, ctx, f); };

    IdealBasis gb = groebner({p("x^2+y^2-1"), p("x-y")}, MonOrder::lex(), budget);
    REQUIRE(gb.gens.size() == 2);
    CHECK(gb.gens[0].proportional_to(p("y^2-1/2")));
    CHECK(gb.gens[1] == p("x-y"));

    // the ideal is unchanged by the basis computation
    CHECK(in_ideal(p("(x-y)*(x+7*y^3)"), gb, budget));
    CHECK(in_ideal(p("x^2+y^2-1"), gb, budget));
    CHECK(!in_ideal(p("x+y"), gb, budget));
}

TEST_CASE("S-polynomial self-check on assorted ideals") {
    FieldPtr f = make_field(12);
    CtxPtr ctx = make_ctx({"x", "y", "z"});
    Budget budget;
    auto p = [&](const std::string& s) { return parse_poly(s, ctx, f); };
    std::vector<std::vector<Poly>> systems = {
        {p("x^2*y - z"), p("x*z - y^2"), p("y*z - x")},
        {p("x^2 + y^2 + z^2 - 1"), p("x*y - z"), p("x - y + z")},
        {p("x^3 - 2*x*y"), p("x^2*y - 2*y^2 + x")},
        {p("z*x - z*y"), p("x^2 - y*z + 1")},
    };
    for (const auto& sys : systems) {
        for (MonOrder ord : {MonOrder::lex(), MonOrder::degrevlex(),
                             MonOrder::block_elim(1)}) {
            IdealBasis gb = groebner(sys, ord, budget);
            CHECK(spolys_reduce_to_zero(gb, budget));
            for (const auto& g : sys) CHECK(in_ideal(g, gb, budget));
        }
    }
}

TEST_CASE("elimination of a parametrized curve") {
    FieldPtr f = make_field(1);
    CtxPtr ctx = make_ctx({"t", "x", "y"});
    Budget budget;
    auto p = [&](const std::string& s) { return parse_poly(s, ctx, f); };
    std::vector<Poly> elim = eliminate({p("x - t^2"), p("y - t^3")}, {0}, budget);
    REQUIRE(elim.size() == 1);
    CHECK(elim[0].proportional_to(p("y^2 - x^3")));

    // twisted cubic: x = t, y = t^2, z = t^3
    CtxPtr c4 = make_ctx({"t", "x", "y", "z"});
    auto q = [&](const std::string& s) { return parse_poly(s, c4, f); };
    std::vector<Poly> tw =
        eliminate({q("x - t"), q("y - t^2"), q("z - t^3")}, {0}, budget);
    IdealBasis ref = groebner({q("y - x^2"), q("z - x*y")}, MonOrder::degrevlex(), budget);
    for (const auto& g : tw) CHECK(in_ideal(g, ref, budget));
    IdealBasis got = groebner(tw, MonOrder::degrevlex(), budget);
    CHECK(in_ideal(q("y - x^2"), got, budget));
    CHECK(in_ideal(q("z - x*y"), got, budget));
}

TEST_CASE("quotient dimension matches the Macaulay oracle") {
    FieldPtr f = make_field(1);
    std::mt19937 rng(52);
    std::uniform_int_distribution<int> coeff(-4, 4);
    Budget budget(100'000'000);
    int checked = 0;
    while (checked < 25) {
        int nv = 2 + (rng() % 2);
        CtxPtr ctx = nv == 2 ? make_ctx({"x", "y"}) : make_ctx({"x", "y", "z"});
        // one generator per variable with a forced pure power keeps the
        // quotient finite-dimensional
        std::vector<Poly> gens;
        for (int v = 0; v < nv; ++v) {
            int deg = 2 + static_cast<int>(rng() % 3);
            Poly g = Poly::variable(ctx, f, static_cast<std::size_t>(v), deg);
            for (int t = 0; t < 3; ++t) {
                Monomial m(static_cast<std::size_t>(nv), 0);
                int d = static_cast<int>(rng() % deg);
                for (int i = 0; i < d; ++i) ++m[rng() % nv];
                int c = coeff(rng);
                if (c == 0) continue;
                g = g + Poly(ctx, f, {{m, CycloElem::rational(f, Rat(c))}});
            }
            gens.push_back(g);
        }
        IdealBasis gb = groebner(gens, MonOrder::degrevlex(), budget);
        std::optional<long> dim = quotient_dim(gb);
        REQUIRE(dim.has_value());
        long oracle = macaulay_quotient_dim(gens, nv);
        CHECK(*dim == oracle);
        ++checked;
    }
}

TEST_CASE("quotient dimension corner cases") {
    FieldPtr f = make_field(1);
    CtxPtr ctx = make_ctx({"x", "y"});
    Budget budget;
    auto p = [&](const std::string& s) { return parse_poly(s, ctx, f); };
    CHECK(quotient_dim(groebner({p("1")}, MonOrder::degrevlex(), budget)) == 0);
    CHECK(quotient_dim(groebner({p("x"), p("y")}, MonOrder::degrevlex(), budget)) == 1);
    CHECK(quotient_dim(groebner({p("x^2"), p("y^3")}, MonOrder::degrevlex(), budget)) == 6);
    CHECK(!quotient_dim(groebner({p("x^2")}, MonOrder::degrevlex(), budget)).has_value());
}

TEST_CASE("Krull dimension") {
    FieldPtr f = make_field(1);
    CtxPtr ctx = make_ctx({"x", "y", "z"});
    Budget budget;
    auto p = [&](const std::string& s) { return parse_poly(s, ctx, f); };
    auto kd = [&](std::vector<Poly> gens) {
        IdealBasis gb = groebner(std::move(gens), MonOrder::degrevlex(), budget);
        return krull_dim(gb, 3);
    };
    CHECK(kd({p("x")}) == 2);
    CHECK(kd({p("x*y")}) == 2);
    CHECK(kd({p("x"), p("y")}) == 1);
    CHECK(kd({p("x"), p("y"), p("z")}) == 0);
    CHECK(kd({p("x^2 - y*z"), p("x*y - z^2")}) == 1);
}

TEST_CASE("budget exhaustion raises resource_error") {
    FieldPtr f = make_field(1);
    CtxPtr ctx = make_ctx({"x", "y", "z"});
    auto p = [&](const std::string& s) { return parse_poly(s, ctx, f); };
    Budget tiny(5);
    CHECK_THROWS_AS(
        groebner({p("x^4*y - z^3 + x"), p("y^4*z - x^3"), p("z^4*x - y^3 + z")},
                 MonOrder::lex(), tiny),
        resource_error);
}
