#ifndef REFLMAP_UPOLY_HPP
#define REFLMAP_UPOLY_HPP

#include <vector>

#include "reflmap/errors.hpp"
#include "reflmap/rational.hpp"

namespace reflmap {

// Dense univariate polynomials over Q, coefficient of x^i at index i.
// Internal helper for cyclotomic polynomials and field inversion.
using UPoly = std::vector<Rat>;

inline void upoly_trim(UPoly& p) {
    while (!p.empty() && rat_is_zero(p.back())) p.pop_back();
}

inline int upoly_deg(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

inline UPoly upoly_mul(const UPoly& a, const UPoly& b) {
    if (a.empty() || b.empty()) return {};
    UPoly c(a.size() + b.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (rat_is_zero(a[i])) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] += a[i] * b[j];
    }
    upoly_trim(c);
    return c;
}

// Euclidean division, den != 0. Returns quotient, leaves remainder in num.
inline UPoly upoly_divrem(UPoly& num, const UPoly& den) {
    if (den.empty()) throw math_error("univariate division by zero");
    UPoly q;
    if (num.size() >= den.size())
        q.assign(num.size() - den.size() + 1, Rat(0));
    const Rat& lead = den.back();
    while (!num.empty() && num.size() >= den.size()) {
        Rat c = num.back() / lead;
        std::size_t shift = num.size() - den.size();
        q[shift] = c;
        for (std::size_t i = 0; i < den.size(); ++i)
            num[shift + i] -= c * den[i];
        upoly_trim(num);
    }
    upoly_trim(q);
    return q;
}

inline UPoly upoly_exact_div(UPoly num, const UPoly& den) {
    UPoly q = upoly_divrem(num, den);
    if (!num.empty()) throw internal_error("univariate division left a remainder");
    return q;
}

} // namespace reflmap

#endif
