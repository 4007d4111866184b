#ifndef REFLMAP_GROEBNER_HPP
#define REFLMAP_GROEBNER_HPP

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "reflmap/errors.hpp"
#include "reflmap/poly.hpp"

namespace reflmap {

// Terms of a polynomial sorted descending under the active order.
using TermVec = std::vector<Term>;

inline TermVec sort_terms(const Poly& p, const MonOrder& ord) {
    TermVec t = p.terms();
    std::sort(t.begin(), t.end(),
              [&](const Term& a, const Term& b) { return ord.greater(a.mon, b.mon); });
    return t;
}

inline Poly terms_to_poly(const CtxPtr& ctx, const FieldPtr& f, TermVec t) {
    return Poly(ctx, f, std::move(t));
}

// r := a - c * x^m * b, all vectors sorted descending under ord.
inline TermVec sub_mul(const TermVec& a, const CycloElem& c, const Monomial& m,
                       const TermVec& b, const MonOrder& ord) {
    TermVec r;
    r.reserve(a.size() + b.size());
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        Monomial mb = mon_mul(ib->mon, m);
        int cmp = ord.compare(ia->mon, mb);
        if (cmp > 0) r.push_back(*ia++);
        else if (cmp < 0) {
            r.push_back({std::move(mb), -(c * ib->coeff)});
            ++ib;
        } else {
            CycloElem s = ia->coeff - c * ib->coeff;
            if (!s.is_zero()) r.push_back({ia->mon, std::move(s)});
            ++ia; ++ib;
        }
    }
    r.insert(r.end(), ia, a.end());
    for (; ib != b.end(); ++ib)
        r.push_back({mon_mul(ib->mon, m), -(c * ib->coeff)});
    return r;
}

inline void make_monic(TermVec& t) {
    if (t.empty() || t.front().coeff.is_one()) return;
    CycloElem inv = t.front().coeff.inverse();
    for (auto& term : t) term.coeff = term.coeff * inv;
}

// Fully reduced normal form against a monic family (global order).
inline TermVec normal_form_terms(TermVec p, const std::vector<TermVec>& basis,
                                 const MonOrder& ord, Budget& budget) {
    TermVec out;
    while (!p.empty()) {
        bool reduced = false;
        for (const auto& g : basis) {
            if (g.empty()) continue;
            if (!mon_divides(g.front().mon, p.front().mon)) continue;
            budget.tick();
            Monomial shift = mon_div(p.front().mon, g.front().mon);
            p = sub_mul(p, p.front().coeff, shift, g, ord);
            reduced = true;
            break;
        }
        if (!reduced) {
            out.push_back(std::move(p.front()));
            p.erase(p.begin());
        }
    }
    return out;
}

// Groebner/standard basis with its order. If reduced_flag is set the gens
// are the unique reduced basis: monic, pairwise fully reduced, sorted by
// ascending leading term.
struct IdealBasis {
    std::vector<Poly> gens;
    MonOrder order = MonOrder::degrevlex();
    bool reduced_flag = false;

    std::vector<TermVec> sorted_gens() const {
        std::vector<TermVec> out;
        out.reserve(gens.size());
        for (const auto& g : gens) out.push_back(sort_terms(g, order));
        return out;
    }
    bool is_unit_ideal() const {
        return gens.size() == 1 && gens[0].is_constant() && !gens[0].is_zero();
    }
    bool is_zero_ideal() const { return gens.empty(); }
};

namespace detail {

struct GBPair {
    int i, j;
    Monomial lcm;
    int sugar;
};

// Normal selection strategy: smallest lcm in the order, then lowest sugar,
// then input position.
inline bool pair_before(const GBPair& a, const GBPair& b, const MonOrder& ord) {
    int c = ord.compare(a.lcm, b.lcm);
    if (c != 0) return c < 0;
    if (a.sugar != b.sugar) return a.sugar < b.sugar;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
}

struct GBState {
    std::vector<TermVec> gens;
    std::vector<int> sugar;
    std::vector<GBPair> pairs;
    const MonOrder ord;

    explicit GBState(const MonOrder& o) : ord(o) {}

    const Monomial& lt(int i) const { return gens[static_cast<std::size_t>(i)].front().mon; }

    // Gebauer-Moeller pair update on arrival of generator t.
    void update(int t) {
        std::vector<GBPair> fresh;
        for (int i = 0; i < t; ++i) {
            GBPair p{i, t, mon_lcm(lt(i), lt(t)), 0};
            int d = mon_degree(p.lcm);
            p.sugar = std::max(sugar[static_cast<std::size_t>(i)] + d - mon_degree(lt(i)),
                               sugar[static_cast<std::size_t>(t)] + d - mon_degree(lt(t)));
            fresh.push_back(std::move(p));
        }
        // discard old pairs whose lcm is a proper multiple of lcm(i, t)
        std::erase_if(pairs, [&](const GBPair& p) {
            Monomial lit = mon_lcm(lt(p.i), lt(t));
            Monomial ljt = mon_lcm(lt(p.j), lt(t));
            return mon_divides(lt(t), p.lcm) && p.lcm != lit && p.lcm != ljt;
        });
        // among the new pairs keep one representative per lcm-divisibility class
        std::vector<GBPair> kept;
        for (std::size_t a = 0; a < fresh.size(); ++a) {
            bool drop = false;
            for (std::size_t b = 0; b < fresh.size() && !drop; ++b) {
                if (a == b) continue;
                if (fresh[b].lcm == fresh[a].lcm ? b < a
                                                 : mon_divides(fresh[b].lcm, fresh[a].lcm))
                    drop = true;
            }
            if (!drop) kept.push_back(fresh[a]);
        }
        // Buchberger's coprimality criterion
        std::erase_if(kept, [&](const GBPair& p) { return mon_coprime(lt(p.i), lt(p.j)); });
        pairs.insert(pairs.end(), kept.begin(), kept.end());
    }
};

} // namespace detail

// Reduced Groebner basis, Buchberger with Gebauer-Moeller pair elimination.
// Deterministic: normal selection strategy, sugar tie-break, input order last.
inline IdealBasis groebner(const std::vector<Poly>& input, const MonOrder& ord,
                           Budget& budget) {
    if (!ord.is_global())
        throw math_error("groebner requires a global monomial order");
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
        // both monic: spoly = x^(lcm-ltf) f - x^(lcm-ltg) g
        TermVec s = sub_mul(TermVec{}, CycloElem::rational(field, Rat(-1)),
                            mon_div(p.lcm, f.front().mon), f, ord);
        s = sub_mul(s, CycloElem::one(field), mon_div(p.lcm, g.front().mon), g, ord);
        s = normal_form_terms(std::move(s), st.gens, ord, budget);
        if (s.empty()) continue;
        make_monic(s);
        st.sugar.push_back(p.sugar);
        st.gens.push_back(std::move(s));
        st.update(static_cast<int>(st.gens.size()) - 1);
    }

    // minimalize: drop generators whose lead is divisible by another lead
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
    // tail-reduce each against the others
    std::vector<TermVec> reduced;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<TermVec> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        TermVec r = normal_form_terms(minimal[i], others, ord, budget);
        make_monic(r);
        reduced.push_back(std::move(r));
    }

    IdealBasis out;
    out.order = ord;
    out.reduced_flag = true;
    for (auto& t : reduced)
        out.gens.push_back(terms_to_poly(ctx, field, std::move(t)));
    return out;
}

inline Poly normal_form(const Poly& p, const IdealBasis& basis, Budget& budget) {
    TermVec t = sort_terms(p, basis.order);
    t = normal_form_terms(std::move(t), basis.sorted_gens(), basis.order, budget);
    return terms_to_poly(p.context(), p.field(), std::move(t));
}

inline bool in_ideal(const Poly& p, const IdealBasis& basis, Budget& budget) {
    return normal_form(p, basis, budget).is_zero();
}

inline bool ideal_equal(const std::vector<Poly>& a, const std::vector<Poly>& b,
                        Budget& budget) {
    IdealBasis ga = groebner(a, MonOrder::degrevlex(), budget);
    IdealBasis gb = groebner(b, MonOrder::degrevlex(), budget);
    if (ga.gens.size() != gb.gens.size()) return false;
    for (std::size_t i = 0; i < ga.gens.size(); ++i)
        if (ga.gens[i] != gb.gens[i]) return false;
    return true;
}

// Elimination of the given variables via a block order with the dropped
// variables leading. Returns a Groebner basis of the eliminated ideal
// (polynomials in the remaining variables, same context).
inline std::vector<Poly> eliminate(const std::vector<Poly>& gens,
                                   const std::vector<std::size_t>& drop,
                                   Budget& budget) {
    if (gens.empty()) return {};
    CtxPtr ctx = gens[0].context();
    FieldPtr field = gens[0].field();
    std::size_t n = ctx->size();
    // permuted context: dropped variables first
    std::vector<std::size_t> perm;
    std::vector<bool> dropped(n, false);
    for (std::size_t v : drop) {
        if (v >= n) throw math_error("eliminate: variable index out of range");
        dropped[v] = true;
    }
    for (std::size_t v = 0; v < n; ++v) if (dropped[v]) perm.push_back(v);
    std::size_t k = perm.size();
    for (std::size_t v = 0; v < n; ++v) if (!dropped[v]) perm.push_back(v);

    std::vector<std::string> names(n);
    std::vector<VarRole> roles(n);
    for (std::size_t i = 0; i < n; ++i) {
        names[i] = ctx->name(perm[i]);
        roles[i] = ctx->role(perm[i]);
    }
    CtxPtr pctx = std::make_shared<VarContext>(std::move(names), std::move(roles));
    std::vector<std::size_t> inv(n);
    for (std::size_t i = 0; i < n; ++i) inv[perm[i]] = i;

    auto remap = [&](const Poly& p, const CtxPtr& to, const std::vector<std::size_t>& where) {
        std::vector<Term> t;
        for (const auto& term : p.terms()) {
            Monomial m(n, 0);
            for (std::size_t v = 0; v < n; ++v) m[where[v]] = term.mon[v];
            t.push_back({std::move(m), term.coeff});
        }
        return Poly(to, p.field(), std::move(t));
    };

    std::vector<Poly> pgens;
    for (const auto& g : gens) pgens.push_back(remap(g, pctx, inv));
    IdealBasis gb = groebner(pgens, MonOrder::block_elim(static_cast<int>(k)), budget);

    std::vector<Poly> out;
    for (const auto& g : gb.gens) {
        bool usesDropped = false;
        for (std::size_t i = 0; i < k && !usesDropped; ++i)
            if (g.depends_on(i)) usesDropped = true;
        if (!usesDropped) out.push_back(remap(g, ctx, perm));
    }
    return out;
}

// Number of monomials outside the leading-term ideal (nullopt = infinite).
// Works for both global reduced bases and local standard bases.
inline std::optional<long> quotient_dim(const IdealBasis& basis) {
    if (basis.is_unit_ideal()) return 0;
    if (basis.gens.empty()) return std::nullopt;  // zero ideal, positive dim ring
    std::size_t n = basis.gens[0].context()->size();
    std::vector<Monomial> leads;
    for (const auto& g : basis.gens) {
        leads.push_back(sort_terms(g, basis.order).front().mon);
        if (mon_degree(leads.back()) == 0) return 0;  // unit in the ideal
    }
    // finite iff every variable has a pure power among the leads
    std::vector<long> bound(n, -1);
    for (const auto& m : leads) {
        int support = -1;
        bool pure = true;
        for (std::size_t v = 0; v < n && pure; ++v) {
            if (m[v] == 0) continue;
            if (support >= 0) pure = false;
            else support = static_cast<int>(v);
        }
        if (pure && support >= 0) {
            std::size_t v = static_cast<std::size_t>(support);
            if (bound[v] < 0 || m[v] < bound[v]) bound[v] = m[v];
        }
    }
    for (std::size_t v = 0; v < n; ++v)
        if (bound[v] < 0) return std::nullopt;
    // count staircase monomials inside the bounding box
    long count = 0;
    Monomial cur(n, 0);
    std::size_t pos = 0;
    // iterative odometer over the box
    for (;;) {
        bool in_ideal_flag = false;
        for (const auto& m : leads)
            if (mon_divides(m, cur)) { in_ideal_flag = true; break; }
        if (!in_ideal_flag) ++count;
        pos = 0;
        while (pos < n) {
            if (++cur[pos] < bound[pos]) break;
            cur[pos] = 0;
            ++pos;
        }
        if (pos == n) break;
    }
    return count;
}

// Combinatorial (Krull) dimension of the leading-term ideal: the largest
// size of a variable subset meeting no leading monomial's support.
// -1 for the unit ideal; #vars for the zero ideal.
inline int krull_dim(const IdealBasis& basis, std::size_t nvars) {
    if (basis.is_unit_ideal()) return -1;
    if (basis.gens.empty()) return static_cast<int>(nvars);
    std::vector<Monomial> leads;
    for (const auto& g : basis.gens)
        leads.push_back(sort_terms(g, basis.order).front().mon);
    int best = 0;
    for (std::uint64_t mask = 0; mask < (1ULL << nvars); ++mask) {
        int size = 0;
        for (std::size_t v = 0; v < nvars; ++v)
            if (mask & (1ULL << v)) ++size;
        if (size <= best) continue;
        bool independent = true;
        for (const auto& m : leads) {
            bool inside = true;
            for (std::size_t v = 0; v < nvars && inside; ++v)
                if (m[v] > 0 && !(mask & (1ULL << v))) inside = false;
            if (inside) { independent = false; break; }
        }
        if (independent) best = size;
    }
    return best;
}

} // namespace reflmap

#endif
