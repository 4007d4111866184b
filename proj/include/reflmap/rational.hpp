#ifndef REFLMAP_RATIONAL_HPP
#define REFLMAP_RATIONAL_HPP

#include <gmpxx.h>

#include <string>

#include "reflmap/errors.hpp"

namespace reflmap {

// Exact arbitrary-precision rational. All kernel arithmetic is exact;
// no floating point anywhere.
using Rat = mpq_class;

inline bool rat_is_zero(const Rat& r) { return sgn(r) == 0; }

inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

// Accepts "n" or "n/d" with an optional leading minus on n.
inline Rat rat_from_string(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0)
        throw parse_error("bad rational literal '" + s + "'", 0);
    r.canonicalize();
    return r;
}

} // namespace reflmap

#endif
