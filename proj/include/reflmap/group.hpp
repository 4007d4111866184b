#ifndef REFLMAP_GROUP_HPP
#define REFLMAP_GROUP_HPP

#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reflmap/errors.hpp"
#include "reflmap/linalg.hpp"
#include "reflmap/poly.hpp"
#include "reflmap/polyops.hpp"

namespace reflmap {

struct GroupElem {
    CycloMatrix matrix;       // dim x dim, acting on the space variables
    int inverse_index = 0;
    int fix_dim = 0;          // dim of the fixed subspace
    bool is_reflection = false;
    std::vector<Poly> ell;    // canonical linear forms cutting Fix (RREF rows)
};

// Finite subgroup of GL(V) with multiplication table and per-element
// fixed-space data. Element 0 is the identity; the element order is the
// BFS discovery order over the generator list (or the mixed-radix index
// for the cyclic product), so all reports are deterministic.
class ReflGroup {
public:
    static ReflGroup close(const std::vector<CycloMatrix>& gens, FieldPtr field,
                           CtxPtr ctx, std::vector<std::size_t> space, long cap) {
        ReflGroup g(std::move(field), std::move(ctx), std::move(space));
        std::size_t dim = g.space_.size();
        for (const auto& m : gens)
            if (m.size() != dim || m[0].size() != dim)
                throw math_error("generator dimension mismatch");

        std::map<std::vector<CycloCoeffs>, int> seen;
        std::vector<CycloMatrix> mats;
        auto key = [&](const CycloMatrix& m) {
            std::vector<CycloCoeffs> k;
            for (const auto& row : m)
                for (const auto& e : row) k.push_back(e.coeffs());
            return k;
        };
        CycloMatrix id = identity_matrix(g.field_, dim);
        seen.emplace(key(id), 0);
        mats.push_back(id);
        struct Parent { int parent; int gen; };
        std::vector<Parent> parent{{-1, -1}};
        // rmul[j][a] = index of mats[a] * gens[j]
        std::vector<std::vector<int>> rmul(gens.size());
        for (std::size_t head = 0; head < mats.size(); ++head) {
            for (std::size_t j = 0; j < gens.size(); ++j) {
                CycloMatrix p = mat_mul(mats[head], gens[j]);
                auto k = key(p);
                auto it = seen.find(k);
                int idx;
                if (it == seen.end()) {
                    idx = static_cast<int>(mats.size());
                    if (idx >= cap)
                        throw resource_error("group closure exceeded the order cap (" +
                                             std::to_string(cap) + ")");
                    seen.emplace(std::move(k), idx);
                    mats.push_back(std::move(p));
                    parent.push_back({static_cast<int>(head), static_cast<int>(j)});
                } else {
                    idx = it->second;
                }
                if (rmul[j].size() <= head) rmul[j].resize(mats.size(), -1);
                rmul[j].resize(std::max(rmul[j].size(), mats.size()), -1);
                rmul[j][head] = idx;
            }
        }
        std::size_t m = mats.size();
        for (auto& r : rmul) r.resize(m, -1);

        // invertibility of the generators follows from closure: each element
        // has an inverse in the (finite, associative, cancellative) table
        // right-multiplication permutation per element, composed along BFS words
        std::vector<std::vector<int>> rperm(m);
        rperm[0].resize(m);
        std::iota(rperm[0].begin(), rperm[0].end(), 0);
        for (std::size_t e = 1; e < m; ++e) {
            const auto& pu = rperm[static_cast<std::size_t>(parent[e].parent)];
            const auto& rg = rmul[static_cast<std::size_t>(parent[e].gen)];
            rperm[e].resize(m);
            for (std::size_t x = 0; x < m; ++x)
                rperm[e][x] = rg[static_cast<std::size_t>(pu[x])];
        }
        g.table_.assign(m, std::vector<int>(m));
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b)
                g.table_[a][b] = rperm[b][a];

        g.elems_.resize(m);
        for (std::size_t e = 0; e < m; ++e) {
            g.elems_[e].matrix = std::move(mats[e]);
            g.classify(static_cast<int>(e));
        }
        g.fill_inverses();
        for (std::size_t j = 0; j < gens.size(); ++j)
            g.generator_indices_.push_back(rmul[j][0]);
        return g;
    }

    // Z/d1 x ... x Z/dp acting diagonally, zeta_{d_i} on the i-th coordinate.
    // Built directly: element (a_1..a_p) has mixed-radix index with a_p fastest.
    static ReflGroup cyclic_product(const std::vector<long>& degrees, FieldPtr field,
                                    CtxPtr ctx, std::vector<std::size_t> space) {
        ReflGroup g(std::move(field), std::move(ctx), std::move(space));
        std::size_t p = degrees.size();
        if (g.space_.size() != p)
            throw math_error("cyclic_product: degree count must match the space dimension");
        long n = g.field_->conductor();
        long order = 1;
        for (long d : degrees) {
            if (d < 1) throw math_error("cyclic_product: degrees must be positive");
            if (n % d != 0)
                throw math_error("cyclic_product: conductor not divisible by degree " +
                                 std::to_string(d));
            order *= d;
        }
        std::size_t m = static_cast<std::size_t>(order);
        auto decode = [&](long idx) {
            std::vector<long> a(p);
            for (std::size_t i = p; i-- > 0;) {
                a[i] = idx % degrees[i];
                idx /= degrees[i];
            }
            return a;
        };
        auto encode = [&](const std::vector<long>& a) {
            long idx = 0;
            for (std::size_t i = 0; i < p; ++i) idx = idx * degrees[i] + a[i];
            return idx;
        };
        g.elems_.resize(m);
        g.table_.assign(m, std::vector<int>(m));
        CycloElem zero = CycloElem::zero(g.field_);
        CycloElem one = CycloElem::one(g.field_);
        for (std::size_t e = 0; e < m; ++e) {
            std::vector<long> a = decode(static_cast<long>(e));
            GroupElem& el = g.elems_[e];
            el.matrix.assign(p, std::vector<CycloElem>(p, zero));
            int moved = 0;
            for (std::size_t i = 0; i < p; ++i) {
                el.matrix[i][i] = a[i] == 0
                    ? one
                    : CycloElem::zeta(g.field_, (n / degrees[i]) * a[i]);
                if (a[i] != 0) {
                    ++moved;
                    el.ell.push_back(Poly::variable(g.ctx_, g.field_, g.space_[i]));
                }
            }
            el.fix_dim = static_cast<int>(p) - moved;
            el.is_reflection = moved == 1;
            std::vector<long> inv(p);
            for (std::size_t i = 0; i < p; ++i) inv[i] = (degrees[i] - a[i]) % degrees[i];
            el.inverse_index = static_cast<int>(encode(inv));
            for (std::size_t f = 0; f < m; ++f) {
                std::vector<long> b = decode(static_cast<long>(f));
                std::vector<long> s(p);
                for (std::size_t i = 0; i < p; ++i) s[i] = (a[i] + b[i]) % degrees[i];
                g.table_[e][f] = static_cast<int>(encode(s));
            }
        }
        for (std::size_t i = 0; i < p; ++i) {
            std::vector<long> a(p, 0);
            a[i] = degrees[i] > 1 ? 1 : 0;
            g.generator_indices_.push_back(static_cast<int>(encode(a)));
        }
        return g;
    }

    std::size_t order() const { return elems_.size(); }
    std::size_t dim() const { return space_.size(); }
    const FieldPtr& field() const { return field_; }
    const CtxPtr& context() const { return ctx_; }
    const std::vector<std::size_t>& space_vars() const { return space_; }
    const GroupElem& elem(int i) const { return elems_[static_cast<std::size_t>(i)]; }
    int mult(int a, int b) const {
        return table_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    }
    int inverse(int a) const { return elems_[static_cast<std::size_t>(a)].inverse_index; }
    const std::vector<int>& generator_indices() const { return generator_indices_; }

    std::vector<int> reflection_indices() const {
        std::vector<int> out;
        for (std::size_t e = 0; e < elems_.size(); ++e)
            if (elems_[e].is_reflection) out.push_back(static_cast<int>(e));
        return out;
    }

    // (sigma H)(u) = H(sigma^{-1} u)
    Poly act(int e, const Poly& h) const {
        return compose_with(elems_[static_cast<std::size_t>(inverse(e))].matrix, h);
    }
    // H composed with sigma itself: (H o sigma)(u) = H(sigma u) = (sigma^{-1} H)(u)
    Poly act_inv(int e, const Poly& h) const {
        return compose_with(elems_[static_cast<std::size_t>(e)].matrix, h);
    }

private:
    ReflGroup(FieldPtr field, CtxPtr ctx, std::vector<std::size_t> space)
        : field_(std::move(field)), ctx_(std::move(ctx)), space_(std::move(space)) {
        if (space_.empty()) throw math_error("group needs at least one space variable");
    }

    Poly compose_with(const CycloMatrix& m, const Poly& h) const {
        std::vector<std::optional<Poly>> images(ctx_->size());
        for (std::size_t i = 0; i < space_.size(); ++i) {
            Poly row = Poly::zero(ctx_, field_);
            for (std::size_t j = 0; j < space_.size(); ++j)
                if (!m[i][j].is_zero())
                    row = row + Poly::variable(ctx_, field_, space_[j]).scaled(m[i][j]);
            images[space_[i]] = std::move(row);
        }
        return substitute_same(h, images);
    }

    void classify(int e) {
        GroupElem& el = elems_[static_cast<std::size_t>(e)];
        std::size_t p = space_.size();
        CycloMatrix a = el.matrix;
        for (std::size_t i = 0; i < p; ++i)
            a[i][i] = a[i][i] - CycloElem::one(field_);
        rref(a);
        el.fix_dim = static_cast<int>(p - a.size());
        el.is_reflection = a.size() == 1;
        el.ell.clear();
        for (const auto& row : a) {
            Poly form = Poly::zero(ctx_, field_);
            for (std::size_t j = 0; j < p; ++j)
                if (!row[j].is_zero())
                    form = form + Poly::variable(ctx_, field_, space_[j]).scaled(row[j]);
            el.ell.push_back(std::move(form));
        }
    }

    void fill_inverses() {
        std::size_t m = elems_.size();
        for (std::size_t a = 0; a < m; ++a) {
            int inv = -1;
            for (std::size_t b = 0; b < m; ++b)
                if (table_[a][b] == 0) { inv = static_cast<int>(b); break; }
            if (inv < 0 || table_[static_cast<std::size_t>(inv)][a] != 0)
                throw internal_error("group table has no two-sided inverse");
            elems_[a].inverse_index = inv;
        }
    }

    FieldPtr field_;
    CtxPtr ctx_;
    std::vector<std::size_t> space_;
    std::vector<GroupElem> elems_;
    std::vector<std::vector<int>> table_;
    std::vector<int> generator_indices_;
};

using GroupPtr = std::shared_ptr<const ReflGroup>;

struct OrbitCheck {
    bool ok = true;
    std::vector<std::string> failures;
    std::vector<int> degrees;
    void fail(std::string msg) {
        ok = false;
        failures.push_back(std::move(msg));
    }
};

// Validates an orbit map candidate: homogeneous components, invariance
// under the generators, product of degrees = |W|, and the Jacobian
// determinant identity det J = c * prod of the reflection hyperplane forms.
inline OrbitCheck verify_orbit_map(const ReflGroup& g, const std::vector<Poly>& omega) {
    OrbitCheck rep;
    const CtxPtr& ctx = g.context();
    for (std::size_t i = 0; i < omega.size(); ++i) {
        const Poly& w = omega[i];
        check_same_context(ctx, w.context());
        if (w.is_zero()) { rep.fail("omega_" + std::to_string(i + 1) + " is zero"); continue; }
        int d = w.total_degree();
        if (w.order_at_origin() != d)
            rep.fail("omega_" + std::to_string(i + 1) + " is not homogeneous");
        rep.degrees.push_back(d);
        for (std::size_t v = 0; v < ctx->size(); ++v)
            if (w.depends_on(v) && ctx->role(v) != VarRole::space)
                rep.fail("omega_" + std::to_string(i + 1) +
                         " involves non-space variable '" + ctx->name(v) + "'");
        for (int e : g.generator_indices())
            if (g.act(e, w) != w)
                rep.fail("omega_" + std::to_string(i + 1) +
                         " is not invariant under generator (element " +
                         std::to_string(e) + ")");
    }
    long degprod = 1;
    for (int d : rep.degrees) degprod *= d;
    if (rep.degrees.size() == omega.size() &&
        degprod != static_cast<long>(g.order()))
        rep.fail("product of degrees " + std::to_string(degprod) +
                 " != group order " + std::to_string(g.order()));

    if (omega.size() == g.dim() && rep.ok) {
        PolyMatrix j = jacobian(omega, g.space_vars());
        Poly det = poly_det(j);
        Poly prod = Poly::one(ctx, g.field());
        for (int e : g.reflection_indices())
            prod = prod * g.elem(e).ell[0];
        if (det.is_zero() || !prod.proportional_to(det))
            rep.fail("det(J omega) is not a scalar multiple of the product of "
                     "reflection hyperplane forms");
    }
    return rep;
}

} // namespace reflmap

#endif
