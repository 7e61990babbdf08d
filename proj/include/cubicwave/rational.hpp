#ifndef CUBICWAVE_RATIONAL_HPP
#define CUBICWAVE_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace cubicwave {

// Arbitrary-precision rational. Always in lowest terms with positive
// denominator; arithmetic is exact. All cancellation decisions in the
// perturbative engine are exact zero tests on these.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    return Rational(BigInt(num), BigInt(den));
}

// Accepts "n", "-n", "n/d".
inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(s));
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) throw std::domain_error("rational with zero denominator");
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("cannot parse rational: " + s);
    }
}

// "n" for integers, "n/d" otherwise (matches stream output of cpp_rational).
inline std::string to_string(const Rational& q) {
    return q.str();
}

inline double to_double(const Rational& q) {
    return q.convert_to<double>();
}

}  // namespace cubicwave

#endif
