#pragma once

#include <cstdint>
#include <string>

#include "fareyforge/errors.hpp"

namespace fareyforge {

// Rational in lowest terms, the vertex identity of the Farey family. The
// denominator is nonnegative and zero only for the single representative 1/0
// standing for infinity. Canonical text form is "num/den".
struct Fraction {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Fraction() = default;
    // Normalizes sign and reduces; (0,0) and non-canonical infinities throw.
    Fraction(std::int64_t n, std::int64_t d);

    bool is_infinity() const { return den == 0; }
    std::string text() const;

    static Fraction infinity() { return Fraction(1, 0); }
    // Parses canonical "num/den" text; anything non-canonical is an input error.
    static Fraction parse(const std::string& text);

    bool operator==(const Fraction&) const = default;
};

// Numeric order with infinity greatest.
bool operator<(const Fraction& a, const Fraction& b);

inline Fraction mediant(const Fraction& a, const Fraction& b) {
    return Fraction(a.num + b.num, a.den + b.den);
}

// x ↦ −x; fixes 0/1 and 1/0.
inline Fraction mirrored(const Fraction& f) {
    return f.is_infinity() ? f : Fraction(-f.num, f.den);
}

// |ad − cb| for a/b, c/d: the two fractions form a Farey edge iff this is 1.
std::int64_t cross_determinant(const Fraction& a, const Fraction& b);

} // namespace fareyforge
