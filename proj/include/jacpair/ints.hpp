#ifndef JACPAIR_INTS_HPP
#define JACPAIR_INTS_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace jacpair {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }
inline Int abs(const Int& a) { return boost::multiprecision::abs(a); }

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

// Nonnegative remainder, also for negative a.
inline Int mod(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

// Representative of r in [0,1).
inline Rat mod1(const Rat& r) {
    Int n = num(r), d = den(r);
    return Rat(mod(n, d), d);
}

inline Int pow_int(Int base, unsigned exp) {
    Int r = 1;
    while (exp) {
        if (exp & 1) r *= base;
        base *= base;
        exp >>= 1;
    }
    return r;
}

inline Int pow_mod(Int base, Int exp, const Int& m) {
    Int r = 1;
    base = mod(base, m);
    while (exp > 0) {
        if ((exp & 1) != 0) r = r * base % m;
        base = base * base % m;
        exp >>= 1;
    }
    return r;
}

// Inverse of a modulo m; requires gcd(a, m) = 1.
inline Int inv_mod(const Int& a, const Int& m) {
    Int old_r = mod(a, m), r = m;
    Int old_s = 1, s = 0;
    while (r != 0) {
        Int q = old_r / r;
        Int t = old_r - q * r; old_r = r; r = t;
        t = old_s - q * s; old_s = s; s = t;
    }
    if (old_r != 1)
        throw std::domain_error("inv_mod: not invertible (gcd = " + old_r.str() + ")");
    return mod(old_s, m);
}

// Domain errors carry a kind so the CLI can map them to exit codes.
enum class ErrorKind { NoWitness, Unrealizable, Degenerate, Internal };

class DomainError : public std::runtime_error {
public:
    DomainError(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace jacpair

#endif
