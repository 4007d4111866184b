#ifndef REFLMAP_ERRORS_HPP
#define REFLMAP_ERRORS_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace reflmap {

// Malformed input text or files. CLI exit code 1.
struct parse_error : std::runtime_error {
    std::size_t position;
    parse_error(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
};

// Violated mathematical precondition (division by zero, field mismatch,
// non-smooth input where a germ is required, ...). CLI exit code 2.
struct math_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A configurable computation budget was exhausted. CLI exit code 3.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A theorem-backed internal consistency check failed; always a bug.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

// Shared step counter for Groebner/Mora reduction loops.
class Budget {
public:
    explicit Budget(std::uint64_t limit = 1'000'000) : limit_(limit) {}

    void tick(std::uint64_t n = 1) {
        used_ += n;
        if (used_ > limit_)
            throw resource_error("step budget exhausted (" +
                                 std::to_string(limit_) + " reduction steps)");
    }
    std::uint64_t used() const { return used_; }
    std::uint64_t limit() const { return limit_; }

private:
    std::uint64_t used_ = 0;
    std::uint64_t limit_;
};

} // namespace reflmap

#endif
