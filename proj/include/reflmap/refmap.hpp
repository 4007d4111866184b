#ifndef REFLMAP_REFMAP_HPP
#define REFLMAP_REFMAP_HPP

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reflmap/errors.hpp"
#include "reflmap/groebner.hpp"
#include "reflmap/group.hpp"
#include "reflmap/linalg.hpp"
#include "reflmap/mora.hpp"
#include "reflmap/poly.hpp"
#include "reflmap/polyops.hpp"

namespace reflmap {

// Parametrization of Y: images of the space variables in the source
// (chart) context.
struct ChartSpec {
    CtxPtr ctx;
    std::vector<Poly> images;
};

// A reflection mapping f = omega restricted to Y = V(L).
struct ReflMapping {
    GroupPtr group;
    std::vector<Poly> omega;
    std::vector<Poly> L;
    std::optional<ChartSpec> chart;

    std::size_t p() const { return group->dim(); }
    std::size_t n() const { return p() - L.size(); }
};

// Remap a polynomial into another context by variable name.
inline Poly remap_by_name(const Poly& q, const CtxPtr& target, const FieldPtr& field) {
    std::vector<std::optional<Poly>> none;
    return substitute(q, target, field, none);
}

// q composed with the chart: space variables replaced by their images.
inline Poly pullback(const ReflMapping& f, const Poly& q) {
    if (!f.chart) throw math_error("no chart available for pullback");
    const CtxPtr& src = f.chart->ctx;
    const FieldPtr& field = f.group->field();
    std::vector<std::optional<Poly>> images(q.nvars());
    const auto& space = f.group->space_vars();
    for (std::size_t i = 0; i < space.size(); ++i)
        images[space[i]] = f.chart->images[i];
    return substitute(q, src, field, images);
}

inline void verify_chart(const ReflMapping& f) {
    if (!f.chart) return;
    if (f.chart->images.size() != f.p())
        throw math_error("chart must provide one image per space variable");
    for (const auto& l : f.L)
        if (!pullback(f, l).is_zero())
            throw math_error("chart does not satisfy L = 0");
}

// Smoothness of the germ of Y at the origin: Jacobian of L at 0 has full
// rank p-n. Required before any local (chart-based) analysis.
inline bool smooth_at_origin(const ReflMapping& f) {
    const auto& space = f.group->space_vars();
    const FieldPtr& field = f.group->field();
    CycloMatrix j;
    for (const auto& l : f.L) {
        std::vector<CycloElem> row;
        for (std::size_t v : space)
            row.push_back(l.derivative(v).constant_term());
        j.push_back(std::move(row));
    }
    if (j.empty()) return true;
    return mat_rank(std::move(j)) == f.L.size();
}

// ---------------------------------------------------------------------
// Stabilizers and degree

inline std::vector<Poly> sigma_L(const ReflMapping& f, int e) {
    std::vector<Poly> out;
    for (const auto& l : f.L) out.push_back(f.group->act(e, l));
    return out;
}

// sigma^{-1} L = L composed with sigma
inline std::vector<Poly> sigma_inv_L(const ReflMapping& f, int e) {
    std::vector<Poly> out;
    for (const auto& l : f.L) out.push_back(f.group->act_inv(e, l));
    return out;
}

inline std::vector<int> setwise_stabilizer(const ReflMapping& f, Budget& budget) {
    IdealBasis base = groebner(f.L, MonOrder::degrevlex(), budget);
    std::vector<int> out;
    for (std::size_t e = 0; e < f.group->order(); ++e) {
        IdealBasis moved = groebner(sigma_L(f, static_cast<int>(e)),
                                    MonOrder::degrevlex(), budget);
        if (moved.gens.size() != base.gens.size()) continue;
        bool same = true;
        for (std::size_t i = 0; i < base.gens.size() && same; ++i)
            if (moved.gens[i] != base.gens[i]) same = false;
        if (same) out.push_back(static_cast<int>(e));
    }
    return out;
}

inline std::vector<int> pointwise_stabilizer(const ReflMapping& f, Budget& budget) {
    IdealBasis base = groebner(f.L, MonOrder::degrevlex(), budget);
    std::vector<int> out;
    for (std::size_t e = 0; e < f.group->order(); ++e) {
        bool fixes = true;
        for (const auto& form : f.group->elem(static_cast<int>(e)).ell)
            if (!normal_form(form, base, budget).is_zero()) { fixes = false; break; }
        if (fixes) out.push_back(static_cast<int>(e));
    }
    return out;
}

struct DegreeInfo {
    std::vector<int> setwise;
    std::vector<int> pointwise;
    long degree = 1;
};

inline DegreeInfo degree(const ReflMapping& f, Budget& budget) {
    DegreeInfo info;
    info.setwise = setwise_stabilizer(f, budget);
    info.pointwise = pointwise_stabilizer(f, budget);
    if (info.setwise.size() % info.pointwise.size() != 0)
        throw internal_error("stabilizer orders do not divide");
    info.degree = static_cast<long>(info.setwise.size() / info.pointwise.size());
    return info;
}

inline bool generically_one_to_one(const ReflMapping& f, Budget& budget) {
    return setwise_stabilizer(f, budget) == pointwise_stabilizer(f, budget);
}

// ---------------------------------------------------------------------
// Image equation

// Scale so the degrevlex-leading coefficient is 1, then clear rational
// denominators and divide by the integer content; the leading sign stays
// positive.
inline Poly normalize_image_poly(const Poly& g) {
    if (g.is_zero()) return g;
    Poly monic = g.scaled(g.terms().front().coeff.inverse());
    mpz_class lcd = 1, content = 0;
    for (const auto& t : monic.terms())
        for (const auto& [e, q] : t.coeff.coeffs())
            lcd = lcm(lcd, q.get_den());
    for (const auto& t : monic.terms())
        for (const auto& [e, q] : t.coeff.coeffs())
            content = gcd(content, mpz_class(q.get_num() * (lcd / q.get_den())));
    Rat scale = Rat(lcd) / Rat(content);
    return monic.scaled(CycloElem::rational(g.field(), scale));
}

inline Poly product_of_orbit(const ReflMapping& f) {
    if (f.L.size() != 1)
        throw math_error("hypersurface operation requires a single equation L");
    Poly prod = Poly::one(f.L[0].context(), f.group->field());
    for (std::size_t e = 0; e < f.group->order(); ++e)
        prod = prod * f.group->act(static_cast<int>(e), f.L[0]);
    return prod;
}

// g with V(g) = Im f (Fitting-ideal structure), by eliminating the space
// variables from <prod sigma L, X_i - omega_i>. Cross-checked against the
// identity g(omega) = c * prod sigma L.
inline Poly image_equation(const ReflMapping& f, Budget& budget) {
    Poly prod = product_of_orbit(f);
    const CtxPtr& ctx = prod.context();
    const FieldPtr& field = f.group->field();
    std::vector<std::size_t> target = ctx->with_role(VarRole::target);
    if (target.size() != f.omega.size())
        throw math_error("need one target variable per omega component");
    std::vector<Poly> gens{prod};
    for (std::size_t i = 0; i < target.size(); ++i)
        gens.push_back(Poly::variable(ctx, field, target[i]) - f.omega[i]);
    std::vector<Poly> elim = eliminate(gens, f.group->space_vars(), budget);
    if (elim.size() != 1)
        throw math_error("non-principal image ideal (" +
                         std::to_string(elim.size()) + " generators)");
    Poly g = normalize_image_poly(elim[0]);

    // cross-check: g(omega) must be a scalar multiple of prod sigma L
    std::vector<std::optional<Poly>> images(ctx->size());
    for (std::size_t i = 0; i < target.size(); ++i) images[target[i]] = f.omega[i];
    Poly composed = substitute_same(g, images);
    if (!prod.proportional_to(composed))
        throw internal_error("image cross-check failed: g(omega) != c * prod(sigma L)");
    return g;
}

inline bool image_reduced(const ReflMapping& f, Budget& budget) {
    bool one_to_one = generically_one_to_one(f, budget);
    Poly g = image_equation(f, budget);
    const CtxPtr& ctx = g.context();
    std::vector<Poly> gens{g};
    for (std::size_t v = 0; v < ctx->size(); ++v)
        if (g.depends_on(v)) gens.push_back(g.derivative(v));
    IdealBasis gb = groebner(gens, MonOrder::degrevlex(), budget);
    int sing_dim = krull_dim(gb, ctx->size());
    int hyper_dim = static_cast<int>(ctx->size()) - 1;
    bool squarefree = sing_dim < hyper_dim;
    if (squarefree != one_to_one)
        throw internal_error("image_reduced: squarefree test disagrees with the "
                             "stabilizer criterion");
    return one_to_one;
}

// ---------------------------------------------------------------------
// alpha and the branch ideals

// (p-n) x (p-r) matrix with sigma^{-1}L - L = alpha * ell_sigma, obtained
// by a linear change making the ell forms the first coordinates and a
// Taylor-splitting loop; the defining identity is asserted.
inline PolyMatrix alpha_sigma(const ReflMapping& f, int e) {
    if (e == 0) throw math_error("alpha_sigma: identity element");
    const GroupElem& el = f.group->elem(e);
    const auto& space = f.group->space_vars();
    const CtxPtr& ctx = f.L.empty() ? f.group->context() : f.L[0].context();
    const FieldPtr& field = f.group->field();
    std::size_t p = space.size();
    std::size_t k = el.ell.size();  // p - r

    // M: rows 0..k-1 are the ell coefficient rows, then unit rows on the
    // non-pivot coordinates
    CycloMatrix m(p, std::vector<CycloElem>(p, CycloElem::zero(field)));
    std::vector<bool> pivot(p, false);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
            m[i][j] = el.ell[i].derivative(space[j]).constant_value();
            if (!m[i][j].is_zero() && !pivot[j] &&
                std::all_of(m[i].begin(), m[i].begin() + static_cast<std::ptrdiff_t>(j),
                            [](const CycloElem& c) { return c.is_zero(); })) {
                pivot[j] = true;
            }
        }
    }
    std::size_t row = k;
    for (std::size_t j = 0; j < p && row < p; ++j) {
        if (pivot[j]) continue;
        m[row][j] = CycloElem::one(field);
        ++row;
    }
    CycloMatrix minv = mat_inverse(m);

    auto linear_images = [&](const CycloMatrix& mat) {
        std::vector<std::optional<Poly>> images(ctx->size());
        for (std::size_t i = 0; i < p; ++i) {
            Poly acc = Poly::zero(ctx, field);
            for (std::size_t j = 0; j < p; ++j)
                if (!mat[i][j].is_zero())
                    acc = acc + Poly::variable(ctx, field, space[j]).scaled(mat[i][j]);
            images[space[i]] = std::move(acc);
        }
        return images;
    };
    std::vector<std::optional<Poly>> to_y = linear_images(minv);  // u = Minv y
    std::vector<std::optional<Poly>> to_u = linear_images(m);     // y = M u

    PolyMatrix alpha;
    for (const auto& l : f.L) {
        Poly q = f.group->act_inv(e, l) - l;
        Poly qy = substitute_same(q, to_y);
        std::vector<Poly> row_alpha;
        for (std::size_t i = 0; i < k; ++i) {
            std::vector<std::optional<Poly>> kill(ctx->size());
            kill[space[i]] = Poly::zero(ctx, field);
            Poly rest = substitute_same(qy, kill);
            Poly a = exact_divide(qy - rest, Poly::variable(ctx, field, space[i]));
            row_alpha.push_back(substitute_same(a, to_u));
            qy = std::move(rest);
        }
        if (!qy.is_zero())
            throw internal_error("alpha_sigma: residue after splitting "
                                 "(sigma^{-1}L - L does not vanish on Fix sigma)");
        alpha.push_back(std::move(row_alpha));
    }
    // defining identity
    for (std::size_t j = 0; j < f.L.size(); ++j) {
        Poly sum = Poly::zero(ctx, field);
        for (std::size_t i = 0; i < k; ++i)
            sum = sum + alpha[j][i] * el.ell[i];
        if (sum != f.group->act_inv(e, f.L[j]) - f.L[j])
            throw internal_error("alpha_sigma identity check failed");
    }
    return alpha;
}

struct BranchIdeal {
    int sigma = 0;
    bool is_reflection = false;
    Poly lambda;
    bool empty = false;
};

// Hypersurface branch equation: lambda = (sigma^{-1}L - L)/ell for
// reflections, sigma^{-1}L - L otherwise.
inline BranchIdeal branch_lambda(const ReflMapping& f, int e, Budget& budget) {
    if (e == 0) throw math_error("branch_lambda: identity element");
    if (f.L.size() != 1)
        throw math_error("branch_lambda requires the hypersurface case");
    const GroupElem& el = f.group->elem(e);
    BranchIdeal b;
    b.sigma = e;
    b.is_reflection = el.is_reflection;
    Poly diff = f.group->act_inv(e, f.L[0]) - f.L[0];
    b.lambda = el.is_reflection ? exact_divide(diff, el.ell[0]) : diff;
    if (f.chart) {
        b.empty = pullback(f, b.lambda).is_unit_at_origin();
    } else {
        std::vector<Poly> gens{b.lambda, f.L[0]};
        IdealBasis gb = groebner(gens, MonOrder::degrevlex(), budget);
        b.empty = gb.is_unit_ideal();
    }
    return b;
}

// ---------------------------------------------------------------------
// General-codimension double point branches

struct DSigmaInfo {
    int sigma = 0;
    bool is_reflection = false;
    std::vector<Poly> gens;
    int dim = -1;   // Krull dimension, -1 = empty
};

// D_2^sigma as an ideal in the u variables: L(u), L(sigma u), and the
// (p-r) x (p-r) minors of alpha when r >= n.
inline DSigmaInfo dsigma_ideal(const ReflMapping& f, int e, Budget& budget) {
    if (e == 0) throw math_error("dsigma_ideal: identity element");
    const GroupElem& el = f.group->elem(e);
    DSigmaInfo info;
    info.sigma = e;
    info.is_reflection = el.is_reflection;
    info.gens = f.L;
    for (const auto& l : sigma_inv_L(f, e)) info.gens.push_back(l);
    std::size_t r = static_cast<std::size_t>(el.fix_dim);
    if (r >= f.n()) {
        PolyMatrix alpha = alpha_sigma(f, e);
        std::size_t k = f.p() - r;
        for (auto& mm : minors(alpha, k)) info.gens.push_back(std::move(mm));
    }
    IdealBasis gb = groebner(info.gens, MonOrder::degrevlex(), budget);
    info.dim = krull_dim(gb, f.group->context()->size()) -
               static_cast<int>(f.group->context()->size() - f.p());
    if (gb.is_unit_ideal()) info.dim = -1;
    return info;
}

namespace detail {

// Gaussian presolve: repeatedly eliminate a variable that occurs in some
// generator only through a single linear term, substituting its solution
// into the remaining generators. Returns the surviving generators remapped
// to a context holding only the surviving variables.
struct PresolveResult {
    std::vector<Poly> gens;
    CtxPtr ctx;
    bool padded = false;  // placeholder variable added (all vars eliminated)
};

inline PresolveResult presolve_linear(std::vector<Poly> gens, const CtxPtr& ctx,
                                      const FieldPtr& field) {
    std::vector<bool> gone(ctx->size(), false);
    bool progress = true;
    while (progress) {
        progress = false;
        for (std::size_t gi = 0; gi < gens.size() && !progress; ++gi) {
            const Poly& g = gens[gi];
            if (g.is_zero()) continue;
            for (std::size_t v = 0; v < ctx->size() && !progress; ++v) {
                if (gone[v]) continue;
                const Term* lin = nullptr;
                bool usable = true;
                for (const auto& t : g.terms()) {
                    if (t.mon[v] == 0) continue;
                    if (t.mon[v] == 1 && mon_degree(t.mon) == 1 && lin == nullptr)
                        lin = &t;
                    else {
                        usable = false;
                        break;
                    }
                }
                if (!usable || lin == nullptr) continue;
                Poly sol = (Poly::variable(ctx, field, v).scaled(lin->coeff) - g)
                               .scaled(lin->coeff.inverse());
                std::vector<std::optional<Poly>> images(ctx->size());
                images[v] = std::move(sol);
                for (std::size_t k = 0; k < gens.size(); ++k)
                    if (k != gi) gens[k] = substitute_same(gens[k], images);
                gens.erase(gens.begin() + static_cast<std::ptrdiff_t>(gi));
                gone[v] = true;
                progress = true;
            }
        }
    }
    std::vector<std::string> names;
    std::vector<VarRole> roles;
    for (std::size_t v = 0; v < ctx->size(); ++v) {
        if (gone[v]) continue;
        names.push_back(ctx->name(v));
        roles.push_back(ctx->role(v));
    }
    PresolveResult out;
    if (names.empty()) {
        names.push_back("_presolved");
        roles.push_back(VarRole::space);
        out.padded = true;
    }
    out.ctx = std::make_shared<VarContext>(names, roles);
    for (const auto& g : gens)
        if (!g.is_zero()) out.gens.push_back(remap_by_name(g, out.ctx, field));
    return out;
}

} // namespace detail

struct K2Chart {
    std::size_t chart = 0;   // index j of the chart v_j = 1
    int dim = -1;            // Krull dim of the chart ideal, -1 = empty
    int exc_dim = -1;        // Krull dim after adding ell_sigma(u) (on E)
};

struct K2Report {
    int sigma = 0;
    std::vector<K2Chart> charts;
    bool empty = true;       // all charts empty
    int dim = -1;            // max over charts
    int exc_dim = -1;        // max exceptional dim over charts
};

// K_2^sigma(f) per affine chart v_j = 1 of the projective v coordinates:
// wedge minors v ^ (sigma u - u) (the blow-up B_2(V)), ell^perp(v),
// L(u), and alpha(u) * ell_sigma(v).
inline K2Report k2sigma_charts(const ReflMapping& f, int e, Budget& budget) {
    if (e == 0) throw math_error("k2sigma_charts: identity element");
    const GroupElem& el = f.group->elem(e);
    const FieldPtr& field = f.group->field();
    const auto& space = f.group->space_vars();
    const CtxPtr& base = f.group->context();
    std::size_t p = space.size();

    // extended context: the space variables plus projective v_1..v_p
    std::vector<std::string> names;
    std::vector<VarRole> roles;
    for (std::size_t i = 0; i < p; ++i) {
        names.push_back(base->name(space[i]));
        roles.push_back(VarRole::space);
    }
    for (std::size_t i = 0; i < p; ++i) {
        names.push_back("v_" + base->name(space[i]));
        roles.push_back(VarRole::projective);
    }
    CtxPtr ext = std::make_shared<VarContext>(names, roles);
    auto uvar = [&](std::size_t i) { return Poly::variable(ext, field, i); };
    auto vvar = [&](std::size_t i) { return Poly::variable(ext, field, p + i); };

    // sigma u - u, componentwise, in the extended context
    std::vector<Poly> su(p, Poly::zero(ext, field));
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < p; ++j)
            if (!el.matrix[i][j].is_zero())
                su[i] = su[i] + uvar(j).scaled(el.matrix[i][j]);
        su[i] = su[i] - uvar(i);
    }

    std::vector<Poly> gens;
    // blow-up wedge: v ^ (sigma u - u) = 0
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i + 1; j < p; ++j)
            gens.push_back(su[i] * vvar(j) - su[j] * vvar(i));
    // ell^perp(v): forms vanishing on (Fix sigma)^perp = Im(sigma - I),
    // i.e. the left kernel of (sigma - I)
    CycloMatrix smi = el.matrix;
    for (std::size_t i = 0; i < p; ++i)
        smi[i][i] = smi[i][i] - CycloElem::one(field);
    CycloMatrix lperp = kernel_basis(mat_transpose(smi), p, field);
    for (const auto& w : lperp) {
        Poly form = Poly::zero(ext, field);
        for (std::size_t j = 0; j < p; ++j)
            if (!w[j].is_zero()) form = form + vvar(j).scaled(w[j]);
        gens.push_back(std::move(form));
    }
    // L(u)
    for (const auto& l : f.L) gens.push_back(remap_by_name(l, ext, field));
    // alpha(u) * ell_sigma(v)
    PolyMatrix alpha = alpha_sigma(f, e);
    std::size_t k = el.ell.size();
    std::vector<Poly> ellv(k, Poly::zero(ext, field));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < p; ++j) {
            CycloElem c = el.ell[i].derivative(space[j]).constant_value();
            if (!c.is_zero()) ellv[i] = ellv[i] + vvar(j).scaled(c);
        }
    for (std::size_t row = 0; row < alpha.size(); ++row) {
        Poly acc = Poly::zero(ext, field);
        for (std::size_t i = 0; i < k; ++i)
            acc = acc + remap_by_name(alpha[row][i], ext, field) * ellv[i];
        gens.push_back(std::move(acc));
    }
    // ell_sigma(u) in the extended context, for the exceptional slice
    std::vector<Poly> ellu;
    for (const auto& form : el.ell) ellu.push_back(remap_by_name(form, ext, field));

    K2Report rep;
    rep.sigma = e;
    for (std::size_t j = 0; j < p; ++j) {
        // chart context drops v_j (set to 1)
        std::vector<std::string> cn;
        std::vector<VarRole> cr;
        for (std::size_t i = 0; i < 2 * p; ++i) {
            if (i == p + j) continue;
            cn.push_back(names[i]);
            cr.push_back(roles[i]);
        }
        CtxPtr cctx = std::make_shared<VarContext>(cn, cr);
        std::vector<std::optional<Poly>> setone(2 * p);
        setone[p + j] = Poly::one(ext, field);
        auto to_chart = [&](const Poly& q) {
            return remap_by_name(substitute_same(q, setone), cctx, field);
        };
        std::vector<Poly> cgens;
        for (const auto& g : gens) cgens.push_back(to_chart(g));
        auto solved_dim = [&](const std::vector<Poly>& raw) {
            detail::PresolveResult pre = detail::presolve_linear(raw, cctx, field);
            IdealBasis gb = groebner(pre.gens, MonOrder::degrevlex(), budget);
            if (gb.is_unit_ideal()) return -1;
            return krull_dim(gb, pre.ctx->size()) - (pre.padded ? 1 : 0);
        };
        K2Chart chart;
        chart.chart = j;
        chart.dim = solved_dim(cgens);
        std::vector<Poly> egens = cgens;
        for (const auto& form : ellu) egens.push_back(to_chart(form));
        chart.exc_dim = solved_dim(egens);
        rep.charts.push_back(chart);
        if (chart.dim >= 0) rep.empty = false;
        rep.dim = std::max(rep.dim, chart.dim);
        rep.exc_dim = std::max(rep.exc_dim, chart.exc_dim);
    }
    return rep;
}

} // namespace reflmap

#endif
