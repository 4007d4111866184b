#ifndef REFLMAP_POLY_HPP
#define REFLMAP_POLY_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "reflmap/cyclotomic.hpp"
#include "reflmap/errors.hpp"

namespace reflmap {

enum class VarRole { space, target, projective, parameter };

// Ordered variable list with per-variable role tags. The roles drive
// elimination blocks and the group action (the group acts on space
// variables only; parameters are carried along unchanged).
class VarContext {
public:
    VarContext(std::vector<std::string> names, std::vector<VarRole> roles)
        : names_(std::move(names)), roles_(std::move(roles)) {
        if (names_.empty()) throw math_error("variable context must be non-empty");
        if (names_.size() != roles_.size())
            throw math_error("variable/role count mismatch");
        for (std::size_t i = 0; i < names_.size(); ++i)
            for (std::size_t j = i + 1; j < names_.size(); ++j)
                if (names_[i] == names_[j])
                    throw math_error("duplicate variable name '" + names_[i] + "'");
    }

    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(std::size_t i) const { return names_[i]; }
    VarRole role(std::size_t i) const { return roles_[i]; }

    int find(const std::string& name) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name) return static_cast<int>(i);
        return -1;
    }
    std::size_t index(const std::string& name) const {
        int i = find(name);
        if (i < 0) throw math_error("unknown variable '" + name + "'");
        return static_cast<std::size_t>(i);
    }

    std::vector<std::size_t> with_role(VarRole r) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (roles_[i] == r) out.push_back(i);
        return out;
    }

    friend bool operator==(const VarContext& a, const VarContext& b) {
        return a.names_ == b.names_ && a.roles_ == b.roles_;
    }

private:
    std::vector<std::string> names_;
    std::vector<VarRole> roles_;
};

using CtxPtr = std::shared_ptr<const VarContext>;

inline void check_same_context(const CtxPtr& a, const CtxPtr& b) {
    if (a.get() == b.get()) return;
    if (!a || !b || !(*a == *b))
        throw math_error("polynomials from incompatible variable contexts");
}

using Monomial = std::vector<int>;

inline int mon_degree(const Monomial& m) {
    return std::accumulate(m.begin(), m.end(), 0);
}
inline bool mon_divides(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}
inline Monomial mon_mul(const Monomial& a, const Monomial& b) {
    Monomial c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return c;
}
inline Monomial mon_div(const Monomial& a, const Monomial& b) {
    Monomial c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
    return c;
}
inline Monomial mon_lcm(const Monomial& a, const Monomial& b) {
    Monomial c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = std::max(a[i], b[i]);
    return c;
}
inline bool mon_coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > 0 && b[i] > 0) return false;
    return true;
}

// Monomial orders. block_elim(k) eliminates the first k variables;
// local_negdegrevlex is the local order for germ computations at 0.
class MonOrder {
public:
    enum class Kind { lex, degrevlex, block_elim, local_negdegrevlex };

    static MonOrder lex() { return MonOrder(Kind::lex, 0); }
    static MonOrder degrevlex() { return MonOrder(Kind::degrevlex, 0); }
    static MonOrder block_elim(int k) { return MonOrder(Kind::block_elim, k); }
    static MonOrder local_negdegrevlex() { return MonOrder(Kind::local_negdegrevlex, 0); }

    Kind kind() const { return kind_; }
    int block() const { return block_; }
    bool is_global() const { return kind_ != Kind::local_negdegrevlex; }

    // +1 if a > b, -1 if a < b, 0 if equal.
    int compare(const Monomial& a, const Monomial& b) const {
        switch (kind_) {
        case Kind::lex:
            return cmp_lex(a, b, 0, a.size());
        case Kind::degrevlex:
            return cmp_drl(a, b, 0, a.size());
        case Kind::block_elim: {
            std::size_t k = static_cast<std::size_t>(block_);
            if (int c = cmp_drl(a, b, 0, k)) return c;
            return cmp_drl(a, b, k, a.size());
        }
        case Kind::local_negdegrevlex: {
            int da = mon_degree(a), db = mon_degree(b);
            if (da != db) return da < db ? 1 : -1;
            return cmp_revlex_tie(a, b, 0, a.size());
        }
        }
        return 0;
    }

    bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }
    bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

private:
    MonOrder(Kind k, int block) : kind_(k), block_(block) {}

    static int cmp_lex(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i)
            if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
        return 0;
    }
    static int deg_range(const Monomial& m, std::size_t lo, std::size_t hi) {
        int d = 0;
        for (std::size_t i = lo; i < hi; ++i) d += m[i];
        return d;
    }
    static int cmp_revlex_tie(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
        for (std::size_t i = hi; i-- > lo;)
            if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
        return 0;
    }
    static int cmp_drl(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
        int da = deg_range(a, lo, hi), db = deg_range(b, lo, hi);
        if (da != db) return da > db ? 1 : -1;
        return cmp_revlex_tie(a, b, lo, hi);
    }

    Kind kind_;
    int block_;
};

struct Term {
    Monomial mon;
    CycloElem coeff;
};

// Sparse multivariate polynomial over Q(zeta_N). Terms are kept sorted in
// descending degrevlex; that is also the canonical printing order.
class Poly {
public:
    Poly() = default;
    Poly(CtxPtr ctx, FieldPtr field) : ctx_(std::move(ctx)), field_(std::move(field)) {}
    Poly(CtxPtr ctx, FieldPtr field, std::vector<Term> terms)
        : ctx_(std::move(ctx)), field_(std::move(field)), terms_(std::move(terms)) {
        normalize();
    }

    static Poly zero(const CtxPtr& ctx, const FieldPtr& f) { return Poly(ctx, f); }
    static Poly constant(const CtxPtr& ctx, const FieldPtr& f, CycloElem c) {
        Poly p(ctx, f);
        if (!c.is_zero()) p.terms_.push_back({Monomial(ctx->size(), 0), std::move(c)});
        return p;
    }
    static Poly one(const CtxPtr& ctx, const FieldPtr& f) {
        return constant(ctx, f, CycloElem::one(f));
    }
    static Poly variable(const CtxPtr& ctx, const FieldPtr& f, std::size_t i, int power = 1) {
        Poly p(ctx, f);
        Monomial m(ctx->size(), 0);
        m[i] = power;
        p.terms_.push_back({std::move(m), CycloElem::one(f)});
        return p;
    }

    const CtxPtr& context() const { return ctx_; }
    const FieldPtr& field() const { return field_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t nvars() const { return ctx_->size(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && mon_degree(terms_[0].mon) == 0);
    }
    CycloElem constant_value() const {
        if (terms_.empty()) return CycloElem::zero(field_);
        if (!is_constant()) throw math_error("polynomial is not constant");
        return terms_[0].coeff;
    }
    // Coefficient of the degree-0 monomial (value at the origin).
    CycloElem constant_term() const {
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it)
            if (mon_degree(it->mon) == 0) return it->coeff;
        return CycloElem::zero(field_);
    }
    bool is_unit_at_origin() const { return !constant_term().is_zero(); }

    int total_degree() const {
        return terms_.empty() ? -1 : mon_degree(terms_.front().mon);
    }
    // Lowest total degree among terms (order of vanishing at 0 of the germ).
    int order_at_origin() const {
        int best = -1;
        for (const auto& t : terms_) {
            int d = mon_degree(t.mon);
            if (best < 0 || d < best) best = d;
        }
        return best;
    }
    bool depends_on(std::size_t var) const {
        for (const auto& t : terms_)
            if (t.mon[var] > 0) return true;
        return false;
    }

    friend Poly operator-(const Poly& a) {
        Poly r(a.ctx_, a.field_);
        r.terms_.reserve(a.terms_.size());
        for (const auto& t : a.terms_) r.terms_.push_back({t.mon, -t.coeff});
        return r;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        check_same_context(a.ctx_, b.ctx_);
        Poly r(a.ctx_, a.field_);
        auto ord = MonOrder::degrevlex();
        auto ia = a.terms_.begin(), ib = b.terms_.begin();
        while (ia != a.terms_.end() && ib != b.terms_.end()) {
            int c = ord.compare(ia->mon, ib->mon);
            if (c > 0) r.terms_.push_back(*ia++);
            else if (c < 0) r.terms_.push_back(*ib++);
            else {
                CycloElem s = ia->coeff + ib->coeff;
                if (!s.is_zero()) r.terms_.push_back({ia->mon, std::move(s)});
                ++ia; ++ib;
            }
        }
        r.terms_.insert(r.terms_.end(), ia, a.terms_.end());
        r.terms_.insert(r.terms_.end(), ib, b.terms_.end());
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

    Poly scaled(const CycloElem& c) const {
        if (c.is_zero()) return Poly(ctx_, field_);
        Poly r(ctx_, field_);
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) r.terms_.push_back({t.mon, t.coeff * c});
        return r;
    }
    Poly term_multiplied(const Monomial& m, const CycloElem& c) const {
        if (c.is_zero()) return Poly(ctx_, field_);
        Poly r(ctx_, field_);
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) r.terms_.push_back({mon_mul(t.mon, m), t.coeff * c});
        return r;
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        check_same_context(a.ctx_, b.ctx_);
        if (a.is_zero() || b.is_zero()) return Poly(a.ctx_, a.field_);
        const Poly& small = a.terms_.size() <= b.terms_.size() ? a : b;
        const Poly& big = a.terms_.size() <= b.terms_.size() ? b : a;
        Poly acc(a.ctx_, a.field_);
        for (const auto& t : small.terms_)
            acc = acc + big.term_multiplied(t.mon, t.coeff);
        return acc;
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t i = 0; i < a.terms_.size(); ++i)
            if (a.terms_[i].mon != b.terms_[i].mon || a.terms_[i].coeff != b.terms_[i].coeff)
                return false;
        return true;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    // True if b is a nonzero scalar multiple of a.
    bool proportional_to(const Poly& b) const {
        if (is_zero() || b.is_zero()) return is_zero() && b.is_zero();
        if (terms_.size() != b.terms_.size()) return false;
        CycloElem ratio = b.terms_[0].coeff / terms_[0].coeff;
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            if (terms_[i].mon != b.terms_[i].mon) return false;
            if (terms_[i].coeff * ratio != b.terms_[i].coeff) return false;
        }
        return true;
    }

    Poly derivative(std::size_t var) const {
        Poly r(ctx_, field_);
        for (const auto& t : terms_) {
            if (t.mon[var] == 0) continue;
            Monomial m = t.mon;
            int e = m[var]--;
            r.terms_.push_back({std::move(m), t.coeff.scaled(Rat(e))});
        }
        r.normalize();
        return r;
    }

    std::string str() const;

private:
    void normalize() {
        auto ord = MonOrder::degrevlex();
        std::sort(terms_.begin(), terms_.end(), [&](const Term& x, const Term& y) {
            return ord.greater(x.mon, y.mon);
        });
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (auto& t : terms_) {
            if (t.coeff.is_zero()) continue;
            if (!out.empty() && out.back().mon == t.mon) {
                out.back().coeff = out.back().coeff + t.coeff;
                if (out.back().coeff.is_zero()) out.pop_back();
            } else {
                out.push_back(std::move(t));
            }
        }
        terms_ = std::move(out);
    }

    CtxPtr ctx_;
    FieldPtr field_;
    std::vector<Term> terms_;
};

// Canonical printer: terms in descending degrevlex, explicit '*' and '^'.
inline std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : terms_) {
        std::string monstr;
        for (std::size_t i = 0; i < t.mon.size(); ++i) {
            if (t.mon[i] == 0) continue;
            if (!monstr.empty()) monstr += "*";
            monstr += ctx_->name(i);
            if (t.mon[i] > 1) monstr += "^" + std::to_string(t.mon[i]);
        }
        const CycloElem& c = t.coeff;
        std::string term;
        bool neg = false;
        if (c.is_rational()) {
            Rat q = c.rational_value();
            neg = sgn(q) < 0;
            Rat a = abs(q);
            if (monstr.empty()) term = rat_to_string(a);
            else if (a == 1) term = monstr;
            else term = rat_to_string(a) + "*" + monstr;
        } else {
            term = "(" + c.str() + ")";
            if (!monstr.empty()) term += "*" + monstr;
        }
        if (first) out += (neg ? "-" : "") + term;
        else out += (neg ? "-" : "+") + term;
        first = false;
    }
    return out;
}

} // namespace reflmap

#endif
