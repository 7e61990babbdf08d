#ifndef CUBICWAVE_TRIGPOLY_HPP
#define CUBICWAVE_TRIGPOLY_HPP

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "cubicwave/rational.hpp"

namespace cubicwave::trig {

using cubicwave::Rational;

enum class Wave : int { cosine = 0, sine = 1 };

// One monomial  coeff * tau^power * cos(frequency*tau)  (or sin).
// Canonical constraints: coeff != 0, frequency >= 0, no (sine, 0) term.
struct TrigTerm {
    int power = 0;
    int frequency = 0;
    Wave wave = Wave::cosine;
    Rational coeff;
};

struct TermKey {
    int power;
    int frequency;
    int wave;  // 0 cos, 1 sin; sorts cos before sin
    auto operator<=>(const TermKey&) const = default;
};

// Exact finite sum of tau^p cos(w tau) and tau^p sin(w tau) monomials over
// big rationals. Immutable value type: every operation returns a new
// polynomial in canonical form (terms sorted by (power, frequency, wave),
// zero coefficients dropped, sin(0 tau) never stored, frequencies >= 0).
class SecularTrigPoly {
  public:
    SecularTrigPoly() = default;

    static SecularTrigPoly zero() { return {}; }
    static SecularTrigPoly constant(const Rational& c);
    // coeff * tau^power * cos/sin(freq*tau); negative freq is normalized via
    // cos(-w) = cos(w), sin(-w) = -sin(w).
    static SecularTrigPoly harmonic(Wave w, int freq, const Rational& coeff = Rational(1),
                                    int power = 0);

    bool is_zero() const { return terms_.empty(); }
    // Periodic <=> no term carries a positive tau power.
    bool is_periodic() const;
    std::size_t term_count() const { return terms_.size(); }

    const std::map<TermKey, Rational>& terms() const { return terms_; }
    Rational coeff(int power, int frequency, Wave w) const;

    // Exact value and first derivative at tau = 0.
    Rational value_at_zero() const;
    Rational derivative_at_zero() const;

    int max_power() const;
    int max_frequency() const;

    SecularTrigPoly operator+(const SecularTrigPoly& o) const;
    SecularTrigPoly operator-(const SecularTrigPoly& o) const;
    SecularTrigPoly operator-() const;
    SecularTrigPoly operator*(const SecularTrigPoly& o) const;
    SecularTrigPoly scaled(const Rational& c) const;
    bool operator==(const SecularTrigPoly& o) const { return terms_ == o.terms_; }

    // Exact d/dtau (product rule on the tau^p factor).
    SecularTrigPoly differentiated() const;

    // Terms with power >= 1 (these destroy periodicity) / power == 0.
    SecularTrigPoly secular_part() const;
    SecularTrigPoly periodic_part() const;

    // Floating-point evaluation; rational coefficients converted at call time.
    double eval(double tau) const;

    // Canonical textual form "num/den * tau^p * cos(w*tau)" joined by " + ";
    // "0" for the empty polynomial.
    std::string str() const;
    std::vector<TrigTerm> records() const;
    static SecularTrigPoly from_records(const std::vector<TrigTerm>& recs);

  private:
    void accumulate(int power, int frequency, Wave w, const Rational& c);
    std::map<TermKey, Rational> terms_;
};

// Duhamel convolution  u(tau) = int_0^tau sin(omega (tau-s)) source(s) ds,
// in closed form. u satisfies u'' + omega^2 u = omega * source with
// u(0) = u'(0) = 0 (note the omega factor: this is the convolution itself;
// callers of the mode recurrence divide by omega).
// Requires omega >= 1 and a periodic source (power-0 terms only); secular
// sources are rejected here, use duhamel_general for those.
SecularTrigPoly duhamel(int omega, const SecularTrigPoly& source);

// Same integral for arbitrary sources (tau powers allowed) via an exact
// particular-solution solve; agrees with duhamel() on periodic sources.
SecularTrigPoly duhamel_general(int omega, const SecularTrigPoly& source);

}  // namespace cubicwave::trig

#endif
