#ifndef leafroot_core_hpp
#define leafroot_core_hpp

#include <array>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace leafroot {

using Vertex = std::int32_t;     // graph vertex, dense 0..n-1
using TreeVertex = std::int32_t; // vertex of a compressed tree
using EdgeId = std::int32_t;
using Weight = std::int64_t;

inline constexpr Vertex no_vertex = -1;

// weights above this are refused; k <= n+1 keeps real inputs far below it
inline constexpr Weight max_weight = Weight{1} << 62;

inline constexpr int odd(std::int64_t x) { return static_cast<int>(x & 1); }

enum class Parity { odd, even, best };

inline int parity_bit(Parity p) { return p == Parity::odd ? 1 : 0; }

// malformed input document; line is 1-based, 0 when not tied to a line
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// induced P4 or C4, listed along the path x-a-b-y
struct Obstruction {
    std::array<Vertex, 4> vertices{};
    bool cycle = false;

    std::string describe() const {
        std::string s = cycle ? "C4" : "P4";
        for (Vertex v : vertices) s += " " + std::to_string(v);
        return s;
    }
};

class NotTriviallyPerfect : public std::invalid_argument {
public:
    explicit NotTriviallyPerfect(const Obstruction& w)
        : std::invalid_argument("graph is not trivially perfect, induced " + w.describe()), witness_(w) {}
    const Obstruction& witness() const { return witness_; }

private:
    Obstruction witness_;
};

class LeafSetMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class LimitExceeded : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// broken internal contract, never a user error
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline void check_internal(bool ok, const char* what) {
    if (!ok) throw InternalError(what);
}

inline Weight checked_add(Weight a, Weight b) {
    Weight r;
    if (__builtin_add_overflow(a, b, &r) || r > max_weight || r < -max_weight)
        throw std::overflow_error("weight overflow");
    return r;
}

} // namespace leafroot

#endif
