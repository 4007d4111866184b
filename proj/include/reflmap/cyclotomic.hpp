#ifndef REFLMAP_CYCLOTOMIC_HPP
#define REFLMAP_CYCLOTOMIC_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "reflmap/errors.hpp"
#include "reflmap/rational.hpp"
#include "reflmap/upoly.hpp"

namespace reflmap {

// Sparse coefficient vector in the power basis 1, z, ..., z^(phi(N)-1):
// sorted by exponent, no zero entries.
using CycloCoeffs = std::vector<std::pair<int, Rat>>;

// The N-th cyclotomic polynomial, by exact division of x^N - 1 by the
// product of Phi_d over proper divisors d of N (recursively).
inline UPoly cyclotomic_polynomial(long n, std::map<long, UPoly>* memo = nullptr) {
    std::map<long, UPoly> local;
    if (!memo) memo = &local;
    if (auto it = memo->find(n); it != memo->end()) return it->second;
    UPoly num(static_cast<std::size_t>(n) + 1, Rat(0));
    num[0] = -1;
    num[static_cast<std::size_t>(n)] = 1;
    UPoly den{Rat(1)};
    for (long d = 1; d < n; ++d)
        if (n % d == 0) den = upoly_mul(den, cyclotomic_polynomial(d, memo));
    UPoly phi = upoly_exact_div(std::move(num), den);
    memo->emplace(n, phi);
    return phi;
}

class CycloField;
using FieldPtr = std::shared_ptr<const CycloField>;

// Q(zeta_N) with the power-basis representation modulo Phi_N.
class CycloField : public std::enable_shared_from_this<CycloField> {
public:
    long conductor() const { return n_; }
    int degree() const { return degree_; }
    const UPoly& phi() const { return phi_; }

    // Canonical coefficients of z^k, any k >= 0 (reduced mod N, then mod Phi_N).
    const CycloCoeffs& zeta_power(long k) const {
        k %= n_;
        if (k < 0) k += n_;
        return zpow_[static_cast<std::size_t>(k)];
    }

    // Reduction table also covers exponents up to 2*degree-2 for products.
    const CycloCoeffs& reduced_power(long k) const {
        return zpow_table_[static_cast<std::size_t>(k)];
    }

    static FieldPtr make(long n) {
        if (n < 1) throw math_error("conductor must be a positive integer");
        return FieldPtr(new CycloField(n));
    }

    // Memoized inverse lookup; filled by CycloElem division.
    mutable std::mutex inv_mutex;
    mutable std::map<CycloCoeffs, CycloCoeffs> inv_cache;

private:
    explicit CycloField(long n) : n_(n) {
        phi_ = cyclotomic_polynomial(n);
        degree_ = upoly_deg(phi_);
        long table = std::max<long>(n_, 2L * degree_ - 1);
        zpow_table_.resize(static_cast<std::size_t>(table));
        UPoly cur{Rat(1)};
        for (long k = 0; k < table; ++k) {
            CycloCoeffs sp;
            for (std::size_t i = 0; i < cur.size(); ++i)
                if (!rat_is_zero(cur[i])) sp.emplace_back(static_cast<int>(i), cur[i]);
            zpow_table_[static_cast<std::size_t>(k)] = std::move(sp);
            // multiply by x and reduce mod Phi_N
            cur.insert(cur.begin(), Rat(0));
            if (upoly_deg(cur) == degree_) {
                Rat lead = cur.back();
                for (int i = 0; i <= degree_; ++i)
                    cur[static_cast<std::size_t>(i)] -= lead * phi_[static_cast<std::size_t>(i)];
                upoly_trim(cur);
            }
        }
        zpow_ = zpow_table_;
        zpow_.resize(static_cast<std::size_t>(n_));
    }

    long n_;
    int degree_;
    UPoly phi_;
    std::vector<CycloCoeffs> zpow_table_;
    std::vector<CycloCoeffs> zpow_;
};

inline FieldPtr make_field(long n) { return CycloField::make(n); }

// Element of Q(zeta_N). Immutable value; canonical (reduced mod Phi_N).
class CycloElem {
public:
    CycloElem() = default;
    CycloElem(FieldPtr field, CycloCoeffs coeffs)
        : field_(std::move(field)), coeffs_(std::move(coeffs)) {}

    static CycloElem zero(const FieldPtr& f) { return CycloElem(f, {}); }
    static CycloElem rational(const FieldPtr& f, Rat q) {
        CycloCoeffs c;
        if (!rat_is_zero(q)) c.emplace_back(0, std::move(q));
        return CycloElem(f, std::move(c));
    }
    static CycloElem one(const FieldPtr& f) { return rational(f, Rat(1)); }
    static CycloElem zeta(const FieldPtr& f, long k = 1) {
        return CycloElem(f, f->zeta_power(k));
    }

    const FieldPtr& field() const { return field_; }
    const CycloCoeffs& coeffs() const { return coeffs_; }

    bool is_zero() const { return coeffs_.empty(); }
    bool is_rational() const {
        return coeffs_.empty() || (coeffs_.size() == 1 && coeffs_[0].first == 0);
    }
    Rat rational_value() const {
        if (!is_rational()) throw math_error("cyclotomic element is not rational");
        return coeffs_.empty() ? Rat(0) : coeffs_[0].second;
    }
    bool is_one() const {
        return coeffs_.size() == 1 && coeffs_[0].first == 0 && coeffs_[0].second == 1;
    }

    friend bool operator==(const CycloElem& a, const CycloElem& b) {
        return a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const CycloElem& a, const CycloElem& b) { return !(a == b); }
    // Deterministic total order on representations (for canonical containers).
    friend bool operator<(const CycloElem& a, const CycloElem& b) {
        return a.coeffs_ < b.coeffs_;
    }

    friend CycloElem operator-(const CycloElem& a) {
        CycloCoeffs c = a.coeffs_;
        for (auto& [e, q] : c) q = -q;
        return CycloElem(a.field_, std::move(c));
    }

    friend CycloElem operator+(const CycloElem& a, const CycloElem& b) {
        check_same_field(a, b);
        CycloCoeffs c;
        c.reserve(a.coeffs_.size() + b.coeffs_.size());
        auto ia = a.coeffs_.begin(), ib = b.coeffs_.begin();
        while (ia != a.coeffs_.end() && ib != b.coeffs_.end()) {
            if (ia->first < ib->first) c.push_back(*ia++);
            else if (ib->first < ia->first) c.push_back(*ib++);
            else {
                Rat s = ia->second + ib->second;
                if (!rat_is_zero(s)) c.emplace_back(ia->first, std::move(s));
                ++ia; ++ib;
            }
        }
        c.insert(c.end(), ia, a.coeffs_.end());
        c.insert(c.end(), ib, b.coeffs_.end());
        return CycloElem(a.field_ ? a.field_ : b.field_, std::move(c));
    }

    friend CycloElem operator-(const CycloElem& a, const CycloElem& b) { return a + (-b); }

    friend CycloElem operator*(const CycloElem& a, const CycloElem& b) {
        check_same_field(a, b);
        const FieldPtr& f = a.field_ ? a.field_ : b.field_;
        if (a.is_zero() || b.is_zero()) return zero(f);
        if (a.is_rational()) return b.scaled(a.coeffs_[0].second);
        if (b.is_rational()) return a.scaled(b.coeffs_[0].second);
        int deg = f->degree();
        std::vector<Rat> dense(static_cast<std::size_t>(2 * deg - 1), Rat(0));
        for (const auto& [ea, qa] : a.coeffs_)
            for (const auto& [eb, qb] : b.coeffs_)
                dense[static_cast<std::size_t>(ea + eb)] += qa * qb;
        // fold exponents >= degree through the reduction table
        CycloCoeffs c;
        std::vector<Rat> low(static_cast<std::size_t>(deg), Rat(0));
        for (int e = 0; e < deg; ++e) low[static_cast<std::size_t>(e)] = dense[static_cast<std::size_t>(e)];
        for (int e = deg; e <= 2 * deg - 2; ++e) {
            const Rat& q = dense[static_cast<std::size_t>(e)];
            if (rat_is_zero(q)) continue;
            for (const auto& [er, qr] : f->reduced_power(e))
                low[static_cast<std::size_t>(er)] += q * qr;
        }
        for (int e = 0; e < deg; ++e)
            if (!rat_is_zero(low[static_cast<std::size_t>(e)]))
                c.emplace_back(e, std::move(low[static_cast<std::size_t>(e)]));
        return CycloElem(f, std::move(c));
    }

    CycloElem scaled(const Rat& q) const {
        if (rat_is_zero(q)) return zero(field_);
        CycloCoeffs c = coeffs_;
        for (auto& [e, v] : c) v *= q;
        return CycloElem(field_, std::move(c));
    }

    // Inverse via the extended Euclidean algorithm on (representative, Phi_N).
    CycloElem inverse() const {
        if (is_zero()) throw math_error("division by zero in Q(zeta_N)");
        if (is_rational()) return rational(field_, Rat(1) / coeffs_[0].second);
        {
            std::scoped_lock lk(field_->inv_mutex);
            if (auto it = field_->inv_cache.find(coeffs_); it != field_->inv_cache.end())
                return CycloElem(field_, it->second);
        }
        UPoly r0 = field_->phi();
        UPoly r1 = to_dense();
        UPoly s0{}, s1{Rat(1)};  // s tracks the coefficient of our representative
        while (!r1.empty()) {
            UPoly r2 = r0;
            UPoly q = upoly_divrem(r2, r1);
            UPoly qs = upoly_mul(q, s1);
            UPoly s2 = s0;
            if (s2.size() < qs.size()) s2.resize(qs.size(), Rat(0));
            for (std::size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
            upoly_trim(s2);
            r0 = std::move(r1); r1 = std::move(r2);
            s0 = std::move(s1); s1 = std::move(s2);
            // keep remainders monic to control coefficient growth
            if (!r1.empty() && r1.back() != 1) {
                Rat lead = r1.back();
                for (auto& v : r1) v /= lead;
                for (auto& v : s1) v /= lead;
            }
        }
        if (upoly_deg(r0) != 0)
            throw internal_error("element not invertible mod Phi_N");
        const Rat& g = r0[0];
        CycloCoeffs c;
        for (std::size_t i = 0; i < s0.size(); ++i)
            if (!rat_is_zero(s0[i])) c.emplace_back(static_cast<int>(i), s0[i] / g);
        {
            std::scoped_lock lk(field_->inv_mutex);
            field_->inv_cache.emplace(coeffs_, c);
        }
        return CycloElem(field_, std::move(c));
    }

    friend CycloElem operator/(const CycloElem& a, const CycloElem& b) {
        check_same_field(a, b);
        return a * b.inverse();
    }

    UPoly to_dense() const {
        UPoly d;
        if (coeffs_.empty()) return d;
        d.assign(static_cast<std::size_t>(coeffs_.back().first) + 1, Rat(0));
        for (const auto& [e, q] : coeffs_) d[static_cast<std::size_t>(e)] = q;
        return d;
    }

    // Canonical printing: terms of z^k in increasing k, zeros omitted.
    std::string str() const {
        if (coeffs_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [e, q] : coeffs_) {
            Rat a = abs(q);
            bool neg = sgn(q) < 0;
            std::string term;
            if (e == 0) term = rat_to_string(a);
            else {
                if (a != 1) term = rat_to_string(a) + "*";
                term += "z";
                if (e > 1) term += "^" + std::to_string(e);
            }
            if (first) out += (neg ? "-" : "") + term;
            else out += (neg ? "-" : "+") + term;
            first = false;
        }
        return out;
    }

private:
    static void check_same_field(const CycloElem& a, const CycloElem& b) {
        if (a.field_ && b.field_ && a.field_->conductor() != b.field_->conductor())
            throw math_error("mixed cyclotomic conductors N=" +
                             std::to_string(a.field_->conductor()) + " and N=" +
                             std::to_string(b.field_->conductor()));
    }

    FieldPtr field_;
    CycloCoeffs coeffs_;
};

} // namespace reflmap

#endif
