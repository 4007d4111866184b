#ifndef REFLMAP_POLYOPS_HPP
#define REFLMAP_POLYOPS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reflmap/errors.hpp"
#include "reflmap/groebner.hpp"
#include "reflmap/poly.hpp"

namespace reflmap {

class division_error : public math_error {
public:
    division_error(const std::string& msg, Poly rem)
        : math_error(msg), remainder(std::move(rem)) {}
    Poly remainder;
};

// Exact quotient num/den; throws division_error (carrying the remainder)
// if den does not divide num. The result is verified by multiplication.
inline Poly exact_divide(const Poly& num, const Poly& den) {
    check_same_context(num.context(), den.context());
    if (den.is_zero()) throw math_error("exact_divide: division by zero");
    MonOrder ord = MonOrder::degrevlex();
    TermVec n = sort_terms(num, ord);
    TermVec d = sort_terms(den, ord);
    TermVec q, rem;
    while (!n.empty()) {
        if (mon_divides(d.front().mon, n.front().mon)) {
            Monomial shift = mon_div(n.front().mon, d.front().mon);
            CycloElem c = n.front().coeff / d.front().coeff;
            q.push_back({shift, c});
            n = sub_mul(n, c, shift, d, ord);
        } else {
            rem.push_back(std::move(n.front()));
            n.erase(n.begin());
        }
    }
    if (!rem.empty())
        throw division_error("exact_divide: nonzero remainder",
                             terms_to_poly(num.context(), num.field(), std::move(rem)));
    Poly quot = terms_to_poly(num.context(), num.field(), std::move(q));
    if (quot * den != num) throw internal_error("exact_divide self-check failed");
    return quot;
}

// Substitute images for the variables of p. images[i] (in the target
// context) replaces source variable i; a missing image means the target
// context must contain a variable of the same name, used verbatim.
inline Poly substitute(const Poly& p, const CtxPtr& target, const FieldPtr& field,
                       const std::vector<std::optional<Poly>>& images) {
    std::size_t n = p.nvars();
    std::vector<Poly> base(n);
    for (std::size_t v = 0; v < n; ++v) {
        if (v < images.size() && images[v]) {
            check_same_context(images[v]->context(), target);
            base[v] = *images[v];
        } else if (p.depends_on(v)) {
            int t = target->find(p.context()->name(v));
            if (t < 0)
                throw math_error("substitute: no image for variable '" +
                                 p.context()->name(v) + "'");
            base[v] = Poly::variable(target, field, static_cast<std::size_t>(t));
        }
    }
    // memoized powers per variable
    std::vector<std::vector<Poly>> pow(n);
    auto power = [&](std::size_t v, int e) -> const Poly& {
        auto& cache = pow[v];
        if (cache.empty()) cache.push_back(Poly::one(target, field));
        while (static_cast<int>(cache.size()) <= e)
            cache.push_back(cache.back() * base[v]);
        return cache[static_cast<std::size_t>(e)];
    };
    Poly acc = Poly::zero(target, field);
    for (const auto& t : p.terms()) {
        Poly term = Poly::constant(target, field, t.coeff);
        for (std::size_t v = 0; v < n; ++v)
            if (t.mon[v] > 0) term = term * power(v, t.mon[v]);
        acc = acc + term;
    }
    return acc;
}

// Substitution within one context: images indexed by variable, identity
// where absent.
inline Poly substitute_same(const Poly& p, const std::vector<std::optional<Poly>>& images) {
    return substitute(p, p.context(), p.field(), images);
}

using PolyMatrix = std::vector<std::vector<Poly>>;

inline PolyMatrix jacobian(const std::vector<Poly>& fs, const std::vector<std::size_t>& vars) {
    PolyMatrix j;
    for (const auto& f : fs) {
        std::vector<Poly> row;
        for (std::size_t v : vars) row.push_back(f.derivative(v));
        j.push_back(std::move(row));
    }
    return j;
}

inline Poly poly_det(const PolyMatrix& m) {
    std::size_t n = m.size();
    if (n == 1) return m[0][0];
    // Laplace expansion along the first row
    Poly acc = Poly::zero(m[0][0].context(), m[0][0].field());
    for (std::size_t c = 0; c < n; ++c) {
        if (m[0][c].is_zero()) continue;
        PolyMatrix sub;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<Poly> row;
            for (std::size_t cc = 0; cc < n; ++cc)
                if (cc != c) row.push_back(m[r][cc]);
            sub.push_back(std::move(row));
        }
        Poly term = m[0][c] * poly_det(sub);
        acc = (c % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

// All k x k minors, rows then columns enumerated in lexicographic order
// of index subsets.
inline std::vector<Poly> minors(const PolyMatrix& m, std::size_t k) {
    std::vector<Poly> out;
    if (m.empty() || k == 0 || k > m.size() || k > m[0].size()) return out;
    std::size_t nr = m.size(), nc = m[0].size();
    std::vector<std::size_t> ri(k), ci(k);
    auto first = [&](std::vector<std::size_t>& v) {
        for (std::size_t i = 0; i < k; ++i) v[i] = i;
    };
    auto next = [&](std::vector<std::size_t>& v, std::size_t limit) {
        std::size_t i = k;
        while (i-- > 0) {
            if (++v[i] <= limit - (k - i)) {
                for (std::size_t j = i + 1; j < k; ++j) v[j] = v[j - 1] + 1;
                return true;
            }
        }
        return false;
    };
    for (first(ri); ; ) {
        for (first(ci); ; ) {
            PolyMatrix sub;
            for (std::size_t r = 0; r < k; ++r) {
                std::vector<Poly> row;
                for (std::size_t c = 0; c < k; ++c) row.push_back(m[ri[r]][ci[c]]);
                sub.push_back(std::move(row));
            }
            out.push_back(poly_det(sub));
            if (!next(ci, nc)) break;
        }
        if (!next(ri, nr)) break;
    }
    return out;
}

namespace detail {

inline std::vector<std::size_t> vars_present(const Poly& f) {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < f.nvars(); ++v)
        if (f.depends_on(v)) out.push_back(v);
    return out;
}

// f as a univariate polynomial in variable v with Poly coefficients.
inline std::vector<Poly> coeffs_in_var(const Poly& f, std::size_t v) {
    int d = 0;
    for (const auto& t : f.terms()) d = std::max(d, t.mon[v]);
    std::vector<Poly> out(static_cast<std::size_t>(d) + 1,
                          Poly::zero(f.context(), f.field()));
    for (const auto& t : f.terms()) {
        Monomial m = t.mon;
        int e = m[v];
        m[v] = 0;
        out[static_cast<std::size_t>(e)] =
            out[static_cast<std::size_t>(e)] +
            Poly(f.context(), f.field(), {{std::move(m), t.coeff}});
    }
    return out;
}

inline Poly from_coeffs(const std::vector<Poly>& c, std::size_t v,
                        const CtxPtr& ctx, const FieldPtr& f) {
    Poly acc = Poly::zero(ctx, f);
    for (std::size_t e = 0; e < c.size(); ++e) {
        if (c[e].is_zero()) continue;
        acc = acc + c[e] * Poly::variable(ctx, f, v, static_cast<int>(e));
    }
    return acc;
}

inline void trim_coeffs(std::vector<Poly>& c) {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
}

} // namespace detail

inline Poly gcd_poly(const Poly& a, const Poly& b);

namespace detail {

// content/primitive-part pseudo-remainder sequence in the main variable v
inline Poly content_in_var(const Poly& f, std::size_t v) {
    std::vector<Poly> c = coeffs_in_var(f, v);
    Poly g = Poly::zero(f.context(), f.field());
    for (const auto& coeff : c)
        if (!coeff.is_zero()) g = gcd_poly(g, coeff);
    return g;
}

inline std::vector<Poly> pseudo_rem(std::vector<Poly> f, const std::vector<Poly>& g,
                                    const CtxPtr& ctx, const FieldPtr& fld) {
    const Poly& lg = g.back();
    while (f.size() >= g.size()) {
        Poly lf = f.back();
        std::size_t shift = f.size() - g.size();
        for (auto& c : f) c = c * lg;
        for (std::size_t i = 0; i < g.size(); ++i)
            f[shift + i] = f[shift + i] - lf * g[i];
        trim_coeffs(f);
        if (f.empty()) break;
    }
    (void)ctx; (void)fld;
    return f;
}

} // namespace detail

// Normalized so the degrevlex-leading coefficient is 1.
inline Poly gcd_normalize(const Poly& g) {
    if (g.is_zero()) return g;
    const CycloElem& lc = g.terms().front().coeff;
    if (lc.is_one()) return g;
    return g.scaled(lc.inverse());
}

// Exact gcd over Q(zeta_N) by recursion on the variables present
// (content/primitive-part pseudo-remainder sequences).
inline Poly gcd_poly(const Poly& a, const Poly& b) {
    if (a.is_zero()) return gcd_normalize(b);
    if (b.is_zero()) return gcd_normalize(a);
    check_same_context(a.context(), b.context());
    const CtxPtr& ctx = a.context();
    const FieldPtr& fld = a.field();
    std::vector<std::size_t> va = detail::vars_present(a);
    std::vector<std::size_t> vb = detail::vars_present(b);
    if (va.empty() || vb.empty()) return Poly::one(ctx, fld);
    std::size_t v = std::max(va.back(), vb.back());
    if (!a.depends_on(v) || !b.depends_on(v)) {
        // the main variable appears in only one argument: gcd divides the
        // contents of the one that uses it
        const Poly& uses = a.depends_on(v) ? a : b;
        const Poly& other = a.depends_on(v) ? b : a;
        return gcd_poly(detail::content_in_var(uses, v), other);
    }
    Poly ca = detail::content_in_var(a, v);
    Poly cb = detail::content_in_var(b, v);
    Poly cont = gcd_poly(ca, cb);
    std::vector<Poly> f = detail::coeffs_in_var(exact_divide(a, ca), v);
    std::vector<Poly> g = detail::coeffs_in_var(exact_divide(b, cb), v);
    if (f.size() < g.size()) std::swap(f, g);
    while (!g.empty()) {
        std::vector<Poly> r = detail::pseudo_rem(f, g, ctx, fld);
        f = std::move(g);
        if (r.empty()) { g.clear(); break; }
        Poly rp = detail::from_coeffs(r, v, ctx, fld);
        Poly rc = detail::content_in_var(rp, v);
        g = detail::coeffs_in_var(exact_divide(rp, rc), v);
    }
    Poly pp = detail::from_coeffs(f, v, ctx, fld);
    if (pp.depends_on(v)) {
        Poly pc = detail::content_in_var(pp, v);
        pp = exact_divide(pp, pc);
    } else {
        pp = Poly::one(ctx, fld);
    }
    return gcd_normalize(cont * pp);
}

// Squarefree test in up to two variables: gcd(f, df/dx, df/dy) is a unit.
inline bool is_squarefree_bivariate(const Poly& f) {
    if (f.is_zero()) return false;
    std::vector<std::size_t> vars = detail::vars_present(f);
    if (vars.size() > 2)
        throw math_error("squarefree test limited to two variables");
    Poly g = f;
    for (std::size_t v : vars) g = gcd_poly(g, f.derivative(v));
    return g.is_constant();
}

// Squarefree part f / gcd(f, f') in up to two variables.
inline Poly squarefree_part_bivariate(const Poly& f) {
    std::vector<std::size_t> vars = detail::vars_present(f);
    if (vars.size() > 2)
        throw math_error("squarefree part limited to two variables");
    Poly g = f;
    for (std::size_t v : vars) g = gcd_poly(g, f.derivative(v));
    if (g.is_constant()) return f;
    return exact_divide(f, g);
}

// Lowest-degree homogeneous part (tangent cone at the origin).
inline Poly tangent_cone(const Poly& f) {
    int d = f.order_at_origin();
    std::vector<Term> t;
    for (const auto& term : f.terms())
        if (mon_degree(term.mon) == d) t.push_back(term);
    return Poly(f.context(), f.field(), std::move(t));
}

inline Poly poly_pow(const Poly& b, long e) {
    Poly acc = Poly::one(b.context(), b.field());
    Poly sq = b;
    while (e > 0) {
        if (e & 1) acc = acc * sq;
        e >>= 1;
        if (e) sq = sq * sq;
    }
    return acc;
}

} // namespace reflmap

#endif
