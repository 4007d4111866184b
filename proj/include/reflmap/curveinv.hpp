#ifndef REFLMAP_CURVEINV_HPP
#define REFLMAP_CURVEINV_HPP

#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reflmap/errors.hpp"
#include "reflmap/mora.hpp"
#include "reflmap/polyops.hpp"
#include "reflmap/refmap.hpp"

namespace reflmap {

// Plane curve germ at the origin (a pulled-back branch equation).
struct LocalCurve {
    Poly poly;
    bool empty = false;  // unit at the origin

    int mult() const { return poly.order_at_origin(); }
    Poly cone() const { return tangent_cone(poly); }
};

inline LocalCurve make_local_curve(Poly p) {
    LocalCurve c;
    c.empty = p.is_unit_at_origin();
    c.poly = std::move(p);
    return c;
}

// Milnor number: local quotient dimension of the Jacobian ideal.
// nullopt = infinite (non-isolated singularity / non-reduced germ).
inline std::optional<long> milnor(const LocalCurve& c, Budget& budget) {
    std::vector<std::size_t> vars = detail::vars_present(c.poly);
    std::vector<Poly> jac;
    for (std::size_t v = 0; v < c.poly.nvars(); ++v)
        jac.push_back(c.poly.derivative(v));
    return local_quotient_dim(jac, budget);
}

inline std::optional<long> intersection_number(const LocalCurve& a, const LocalCurve& b,
                                               Budget& budget) {
    return local_quotient_dim({a.poly, b.poly}, budget);
}

struct BranchCount {
    std::optional<long> count;
    std::string reason;  // set when count is empty
};

// Tiered branch counting:
//  (i)   mult 1 -> smooth, one branch.
//  (ii)  squarefree tangent cone -> one smooth branch per tangent direction.
//  (iii) weighted-homogeneous poly -> monomial axes plus the number of
//        distinct roots of the edge polynomial (computed exactly over C as
//        deg q - deg gcd(q, q')).
inline BranchCount branch_count(const LocalCurve& c) {
    BranchCount out;
    if (c.empty || c.poly.is_zero()) {
        out.reason = "empty or zero germ";
        return out;
    }
    if (c.mult() == 1) { out.count = 1; return out; }
    Poly cone = c.cone();
    if (is_squarefree_bivariate(cone)) {
        out.count = c.mult();
        return out;
    }
    // tier (iii): check weighted homogeneity (collinear support)
    std::vector<std::size_t> vars = detail::vars_present(c.poly);
    if (vars.size() != 2) {
        out.reason = "tangent cone not squarefree and germ not a plane curve "
                     "in two variables";
        return out;
    }
    std::size_t vx = vars[0], vy = vars[1];
    long a = -1, b = -1;  // min exponents
    for (const auto& t : c.poly.terms()) {
        if (a < 0 || t.mon[vx] < a) a = t.mon[vx];
        if (b < 0 || t.mon[vy] < b) b = t.mon[vy];
    }
    // support relative to (a, b) must lie on a segment k*(w2, -w1)
    long da = 0, db = 0;
    for (const auto& t : c.poly.terms()) {
        long ra = t.mon[vx] - a, rb = t.mon[vy] - b;
        if (ra > da) { da = ra; }
        if (rb > db) { db = rb; }
    }
    if (da == 0 || db == 0) {
        // monomial times a 1-variable factor: x^a y^b (poly in one var)
        // happens only when the cone test above failed for non-reducedness
        out.reason = "degenerate support";
        return out;
    }
    long g = std::gcd(da, db);
    long w2 = da / g, w1 = db / g;  // weights: A*w1 + B*w2 constant
    // edge polynomial q(t), t of weight step: term x^(a + k*w2) y^(b + (K-k)*w1)
    long kmax = da / w2;
    std::vector<CycloElem> q(static_cast<std::size_t>(kmax) + 1,
                             CycloElem::zero(c.poly.field()));
    for (const auto& t : c.poly.terms()) {
        long ra = t.mon[vx] - a, rb = t.mon[vy] - b;
        if (ra % w2 != 0 || rb % w1 != 0) {
            out.reason = "not weighted-homogeneous";
            return out;
        }
        long k = ra / w2;
        if (rb / w1 != kmax - k) {
            out.reason = "not weighted-homogeneous";
            return out;
        }
        q[static_cast<std::size_t>(k)] = q[static_cast<std::size_t>(k)] + t.coeff;
    }
    // q as a univariate Poly in vx for the gcd machinery
    std::vector<Term> qt;
    for (std::size_t k = 0; k < q.size(); ++k) {
        if (q[k].is_zero()) continue;
        Monomial m(c.poly.nvars(), 0);
        m[vx] = static_cast<int>(k);
        qt.push_back({std::move(m), q[k]});
    }
    Poly qp(c.poly.context(), c.poly.field(), std::move(qt));
    if (qp.is_zero()) { out.reason = "vanishing edge polynomial"; return out; }
    Poly qg = gcd_poly(qp, qp.derivative(vx));
    long roots = qp.total_degree() - qg.total_degree();
    // q(0) = 0 would mean a misplaced axis factor; by construction the
    // constant term of q is the coefficient at (a, b+db), nonzero
    long count = roots + (a > 0 ? 1 : 0) + (b > 0 ? 1 : 0);
    out.count = count;
    return out;
}

// delta = (mu + r - 1)/2 via Hironaka's formula.
inline std::optional<long> delta(const LocalCurve& c, Budget& budget, std::string* why = nullptr) {
    if (c.empty) return 0;
    std::optional<long> mu = milnor(c, budget);
    if (!mu) {
        if (why) *why = "infinite Milnor number";
        return std::nullopt;
    }
    BranchCount r = branch_count(c);
    if (!r.count) {
        if (why) *why = r.reason;
        return std::nullopt;
    }
    long num = *mu + *r.count - 1;
    if (num % 2 != 0) throw internal_error("delta: mu + r - 1 is odd");
    return num / 2;
}

enum class ReportOrdering { paper, table };

// Non-identity elements: reflections first then the rest (paper mode), or
// plain table order.
inline std::vector<int> report_ordering(const ReflGroup& g, ReportOrdering mode) {
    std::vector<int> out;
    if (mode == ReportOrdering::table) {
        for (std::size_t e = 1; e < g.order(); ++e) out.push_back(static_cast<int>(e));
        return out;
    }
    for (std::size_t e = 1; e < g.order(); ++e)
        if (g.elem(static_cast<int>(e)).is_reflection) out.push_back(static_cast<int>(e));
    for (std::size_t e = 1; e < g.order(); ++e)
        if (!g.elem(static_cast<int>(e)).is_reflection) out.push_back(static_cast<int>(e));
    return out;
}

// Matrix report of the double point curve. Encodings: M and Delta are 0 for empty
// branches, the invariant when finite, -1 when infinite; Delta entries may
// additionally be unknown (tier failure) with a reason. I has 1 on the
// diagonal for empty branches, 0 otherwise, and intersection numbers
// off-diagonal (-1 = infinite).
struct InvariantReport {
    std::vector<int> ordering;
    std::vector<long> M;
    std::vector<long> Delta;
    std::vector<bool> delta_known;
    std::vector<std::string> delta_reason;
    std::vector<std::vector<long>> I;
    long k = 0;  // empty branches
    bool finite = true;
    bool mu_known = false;
    long mu_total = 0;
    bool delta_total_known = false;
    long delta_total = 0;
    bool branch_total_known = false;
    long branch_total = 0;
};

inline InvariantReport full_report(const ReflMapping& f, Budget& budget,
                                   ReportOrdering mode = ReportOrdering::paper) {
    if (f.L.size() != 1 || f.p() != 3)
        throw math_error("full_report requires a surface Y^2 in C^3");
    if (!f.chart) throw math_error("full_report requires a chart");
    if (f.chart->ctx->size() != 2)
        throw math_error("full_report requires a 2-variable chart "
                         "(substitute all parameters first)");
    if (!smooth_at_origin(f))
        throw math_error("Y is not smooth at the origin");
    verify_chart(f);

    const ReflGroup& g = *f.group;
    InvariantReport rep;
    rep.ordering = report_ordering(g, mode);
    std::size_t m = rep.ordering.size();

    std::vector<LocalCurve> curves;
    for (int e : rep.ordering) {
        BranchIdeal b = branch_lambda(f, e, budget);
        curves.push_back(make_local_curve(pullback(f, b.lambda)));
    }

    rep.M.resize(m);
    rep.Delta.assign(m, 0);
    rep.delta_known.assign(m, true);
    rep.delta_reason.assign(m, "");
    rep.I.assign(m, std::vector<long>(m, 0));

    for (std::size_t i = 0; i < m; ++i) {
        const LocalCurve& c = curves[i];
        if (c.empty) {
            ++rep.k;
            rep.M[i] = 0;
            rep.Delta[i] = 0;
            rep.I[i][i] = 1;
            continue;
        }
        if (c.poly.is_zero()) {
            rep.M[i] = -1;
            rep.Delta[i] = -1;
            rep.finite = false;
            continue;
        }
        std::optional<long> mu = milnor(c, budget);
        if (!mu) {
            rep.M[i] = -1;
            rep.Delta[i] = -1;
            rep.finite = false;
            continue;
        }
        rep.M[i] = *mu;
        std::string why;
        std::optional<long> d = delta(c, budget, &why);
        if (d) {
            rep.Delta[i] = *d;
        } else {
            rep.delta_known[i] = false;
            rep.delta_reason[i] = why;
        }
    }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            std::optional<long> inter = intersection_number(curves[i], curves[j], budget);
            long v = inter ? *inter : -1;
            if (!inter) rep.finite = false;
            rep.I[i][j] = rep.I[j][i] = v;
        }

    if (rep.finite) {
        long sumM = 0, sumI = 0, sumIupper = 0, sumDiag = 0;
        for (std::size_t i = 0; i < m; ++i) {
            sumM += rep.M[i];
            sumDiag += rep.I[i][i];
            for (std::size_t j = 0; j < m; ++j) {
                sumI += rep.I[i][j];
                if (j > i) sumIupper += rep.I[i][j];
            }
        }
        long w = static_cast<long>(g.order());
        rep.mu_known = true;
        rep.mu_total = sumM + sumI - w + 2;
        bool all_delta = true;
        for (std::size_t i = 0; i < m; ++i)
            if (!rep.delta_known[i]) all_delta = false;
        if (all_delta) {
            long sumD = 0;
            for (long d : rep.Delta) sumD += d;
            rep.delta_total_known = true;
            rep.delta_total = sumD + sumIupper;
            rep.branch_total_known = true;
            long s = 0;
            for (std::size_t i = 0; i < m; ++i)
                s += 2 * rep.Delta[i] - rep.M[i] - rep.I[i][i];
            rep.branch_total = s + w - 1;
        }
    }
    return rep;
}

} // namespace reflmap

#endif
