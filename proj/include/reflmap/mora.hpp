#ifndef REFLMAP_MORA_HPP
#define REFLMAP_MORA_HPP

#include <algorithm>
#include <vector>

#include "reflmap/errors.hpp"
#include "reflmap/groebner.hpp"
#include "reflmap/poly.hpp"

namespace reflmap {

namespace detail {

// ecart = total degree minus degree of the leading term (local order, so
// the lead has minimal degree among the terms).
inline int ecart(const TermVec& t) {
    int lead = mon_degree(t.front().mon);
    int top = lead;
    for (const auto& term : t) top = std::max(top, mon_degree(term.mon));
    return top - lead;
}

} // namespace detail

// Mora weak normal form: reduces the leading term until it is no longer
// divisible by any lead in the (growing) reducer set. The returned
// polynomial is zero iff p lies in the ideal locally; its leading term is
// outside the leading-term ideal otherwise.
inline TermVec mora_nf_terms(TermVec p, std::vector<TermVec> reducers,
                             const MonOrder& ord, Budget& budget) {
    while (!p.empty()) {
        int best = -1, best_ecart = 0;
        for (std::size_t i = 0; i < reducers.size(); ++i) {
            if (reducers[i].empty()) continue;
            if (!mon_divides(reducers[i].front().mon, p.front().mon)) continue;
            int e = detail::ecart(reducers[i]);
            if (best < 0 || e < best_ecart) { best = static_cast<int>(i); best_ecart = e; }
        }
        if (best < 0) break;
        budget.tick();
        if (best_ecart > detail::ecart(p)) reducers.push_back(p);
        const TermVec& g = reducers[static_cast<std::size_t>(best)];
        Monomial shift = mon_div(p.front().mon, g.front().mon);
        CycloElem c = p.front().coeff / g.front().coeff;
        p = sub_mul(p, c, shift, g, ord);
    }
    return p;
}

inline Poly mora_normal_form(const Poly& p, const std::vector<Poly>& gens, Budget& budget) {
    MonOrder ord = MonOrder::local_negdegrevlex();
    std::vector<TermVec> red;
    for (const auto& g : gens)
        if (!g.is_zero()) red.push_back(sort_terms(g, ord));
    TermVec t = mora_nf_terms(sort_terms(p, ord), std::move(red), ord, budget);
    return terms_to_poly(p.context(), p.field(), std::move(t));
}

// Standard basis of the ideal in the local ring at the origin
// (negdegrevlex, Buchberger pair loop with Mora reduction).
inline IdealBasis standard_basis(const std::vector<Poly>& input, Budget& budget) {
    MonOrder ord = MonOrder::local_negdegrevlex();
    CtxPtr ctx;
    FieldPtr field;
    for (const auto& p : input) {
        if (!ctx) { ctx = p.context(); field = p.field(); }
        else check_same_context(ctx, p.context());
    }
    detail::GBState st(ord);
    for (const auto& p : input) {
        if (p.is_zero()) continue;
        TermVec t = sort_terms(p, ord);
        make_monic(t);
        st.sugar.push_back(p.total_degree());
        st.gens.push_back(std::move(t));
        st.update(static_cast<int>(st.gens.size()) - 1);
    }
    while (!st.pairs.empty()) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < st.pairs.size(); ++i)
            if (detail::pair_before(st.pairs[i], st.pairs[best], ord)) best = i;
        detail::GBPair p = st.pairs[best];
        st.pairs.erase(st.pairs.begin() + static_cast<std::ptrdiff_t>(best));

        const TermVec& f = st.gens[static_cast<std::size_t>(p.i)];
        const TermVec& g = st.gens[static_cast<std::size_t>(p.j)];
        TermVec s = sub_mul(TermVec{}, CycloElem::rational(field, Rat(-1)),
                            mon_div(p.lcm, f.front().mon), f, ord);
        s = sub_mul(s, CycloElem::one(field), mon_div(p.lcm, g.front().mon), g, ord);
        s = mora_nf_terms(std::move(s), st.gens, ord, budget);
        if (s.empty()) continue;
        make_monic(s);
        st.sugar.push_back(p.sugar);
        st.gens.push_back(std::move(s));
        st.update(static_cast<int>(st.gens.size()) - 1);
    }

    // minimalize lead-term redundancies (no tail reduction in the local ring)
    std::vector<TermVec> minimal;
    for (std::size_t i = 0; i < st.gens.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < st.gens.size() && !redundant; ++j) {
            if (i == j) continue;
            const Monomial& li = st.gens[i].front().mon;
            const Monomial& lj = st.gens[j].front().mon;
            if (mon_divides(lj, li) && (li != lj || j < i)) redundant = true;
        }
        if (!redundant) minimal.push_back(st.gens[i]);
    }
    std::sort(minimal.begin(), minimal.end(), [&](const TermVec& a, const TermVec& b) {
        return ord.less(a.front().mon, b.front().mon);
    });

    IdealBasis out;
    out.order = ord;
    out.reduced_flag = false;
    for (auto& t : minimal)
        out.gens.push_back(terms_to_poly(ctx, field, std::move(t)));
    return out;
}

// dim_C O/(gens) in the local ring at the origin; nullopt = infinite.
inline std::optional<long> local_quotient_dim(const std::vector<Poly>& gens, Budget& budget) {
    bool allZero = true;
    for (const auto& g : gens) {
        if (g.is_unit_at_origin()) return 0;
        if (!g.is_zero()) allZero = false;
    }
    if (allZero) return std::nullopt;
    return quotient_dim(standard_basis(gens, budget));
}

} // namespace reflmap

#endif
