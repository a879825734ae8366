#include "fareyforge/fraction.hpp"

#include <cstdlib>
#include <numeric>

namespace fareyforge {

Fraction::Fraction(std::int64_t n, std::int64_t d) {
    if (n == 0 && d == 0)
        throw input_error("fraction 0/0 rejected");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    if (d == 0) {
        num = 1; // both infinities are identified with 1/0
        den = 0;
        return;
    }
    std::int64_t g = std::gcd(std::abs(n), d);
    num = n / g;
    den = d / g;
}

std::string Fraction::text() const {
    return std::to_string(num) + "/" + std::to_string(den);
}

Fraction Fraction::parse(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos || slash == 0 || slash + 1 == text.size())
        throw input_error("fraction '" + text + "' is not of the form num/den");
    std::int64_t n = 0, d = 0;
    try {
        std::size_t used = 0;
        n = std::stoll(text.substr(0, slash), &used);
        if (used != slash)
            throw input_error("");
        std::string dens = text.substr(slash + 1);
        d = std::stoll(dens, &used);
        if (used != dens.size())
            throw input_error("");
    } catch (const std::exception&) {
        throw input_error("fraction '" + text + "' has a malformed component");
    }
    Fraction f(n, d);
    if (f.text() != text)
        throw input_error("fraction '" + text + "' is not in canonical lowest terms");
    return f;
}

bool operator<(const Fraction& a, const Fraction& b) {
    if (a.is_infinity())
        return false;
    if (b.is_infinity())
        return true;
    // den > 0 on both sides; 64-bit products stay small for Farey truncations.
    return a.num * b.den < b.num * a.den;
}

std::int64_t cross_determinant(const Fraction& a, const Fraction& b) {
    return std::abs(a.num * b.den - b.num * a.den);
}

} // namespace fareyforge
