#include "cubicwave/trigpoly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cubicwave::trig {

void SecularTrigPoly::accumulate(int power, int frequency, Wave w, const Rational& c) {
    if (c == 0) return;
    Rational cc = c;
    if (frequency < 0) {
        frequency = -frequency;
        if (w == Wave::sine) cc = -cc;
    }
    if (w == Wave::sine && frequency == 0) return;  // sin(0) == 0
    TermKey key{power, frequency, static_cast<int>(w)};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, cc);
    } else {
        it->second += cc;
        if (it->second == 0) terms_.erase(it);
    }
}

SecularTrigPoly SecularTrigPoly::constant(const Rational& c) {
    SecularTrigPoly p;
    p.accumulate(0, 0, Wave::cosine, c);
    return p;
}

SecularTrigPoly SecularTrigPoly::harmonic(Wave w, int freq, const Rational& coeff, int power) {
    if (power < 0) throw std::invalid_argument("negative tau power");
    SecularTrigPoly p;
    p.accumulate(power, freq, w, coeff);
    return p;
}

bool SecularTrigPoly::is_periodic() const {
    for (const auto& [k, c] : terms_)
        if (k.power != 0) return false;
    return true;
}

Rational SecularTrigPoly::coeff(int power, int frequency, Wave w) const {
    auto it = terms_.find(TermKey{power, frequency, static_cast<int>(w)});
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational SecularTrigPoly::value_at_zero() const {
    // tau^p vanishes for p >= 1, sin(0) = 0, cos(0) = 1.
    Rational v(0);
    for (const auto& [k, c] : terms_)
        if (k.power == 0 && k.wave == 0) v += c;
    return v;
}

Rational SecularTrigPoly::derivative_at_zero() const {
    Rational v(0);
    for (const auto& [k, c] : terms_) {
        if (k.power == 0 && k.wave == 1) v += c * k.frequency;  // (sin w t)' -> w
        if (k.power == 1 && k.wave == 0) v += c;                // (t cos w t)' -> 1
    }
    return v;
}

int SecularTrigPoly::max_power() const {
    int p = 0;
    for (const auto& [k, c] : terms_) p = std::max(p, k.power);
    return p;
}

int SecularTrigPoly::max_frequency() const {
    int f = 0;
    for (const auto& [k, c] : terms_) f = std::max(f, k.frequency);
    return f;
}

SecularTrigPoly SecularTrigPoly::operator+(const SecularTrigPoly& o) const {
    SecularTrigPoly r = *this;
    for (const auto& [k, c] : o.terms_) {
        auto it = r.terms_.find(k);
        if (it == r.terms_.end()) {
            r.terms_.emplace(k, c);
        } else {
            it->second += c;
            if (it->second == 0) r.terms_.erase(it);
        }
    }
    return r;
}

SecularTrigPoly SecularTrigPoly::operator-() const {
    SecularTrigPoly r = *this;
    for (auto& [k, c] : r.terms_) c = -c;
    return r;
}

SecularTrigPoly SecularTrigPoly::operator-(const SecularTrigPoly& o) const {
    return *this + (-o);
}

SecularTrigPoly SecularTrigPoly::scaled(const Rational& c) const {
    if (c == 0) return {};
    SecularTrigPoly r = *this;
    for (auto& [k, v] : r.terms_) v *= c;
    return r;
}

SecularTrigPoly SecularTrigPoly::operator*(const SecularTrigPoly& o) const {
    // Product-to-sum identities; tau powers add, negative frequencies are
    // normalized inside accumulate().
    SecularTrigPoly r;
    for (const auto& [k1, c1] : terms_) {
        for (const auto& [k2, c2] : o.terms_) {
            int pw = k1.power + k2.power;
            int wm = k1.frequency - k2.frequency;
            int wp = k1.frequency + k2.frequency;
            Rational half = c1 * c2 / 2;
            if (k1.wave == 0 && k2.wave == 0) {
                // cos a cos b = (cos(a-b) + cos(a+b))/2
                r.accumulate(pw, wm, Wave::cosine, half);
                r.accumulate(pw, wp, Wave::cosine, half);
            } else if (k1.wave == 1 && k2.wave == 1) {
                // sin a sin b = (cos(a-b) - cos(a+b))/2
                r.accumulate(pw, wm, Wave::cosine, half);
                r.accumulate(pw, wp, Wave::cosine, -half);
            } else if (k1.wave == 1 && k2.wave == 0) {
                // sin a cos b = (sin(a-b) + sin(a+b))/2
                r.accumulate(pw, wm, Wave::sine, half);
                r.accumulate(pw, wp, Wave::sine, half);
            } else {
                // cos a sin b = (sin(b-a) + sin(b+a))/2
                r.accumulate(pw, -wm, Wave::sine, half);
                r.accumulate(pw, wp, Wave::sine, half);
            }
        }
    }
    return r;
}

SecularTrigPoly SecularTrigPoly::differentiated() const {
    SecularTrigPoly r;
    for (const auto& [k, c] : terms_) {
        if (k.power >= 1)  // d/dt tau^p = p tau^(p-1)
            r.accumulate(k.power - 1, k.frequency, static_cast<Wave>(k.wave), c * k.power);
        if (k.frequency >= 1) {
            if (k.wave == 0)  // cos -> -w sin
                r.accumulate(k.power, k.frequency, Wave::sine, -c * k.frequency);
            else  // sin -> w cos
                r.accumulate(k.power, k.frequency, Wave::cosine, c * k.frequency);
        }
    }
    return r;
}

SecularTrigPoly SecularTrigPoly::secular_part() const {
    SecularTrigPoly r;
    for (const auto& [k, c] : terms_)
        if (k.power >= 1) r.terms_.emplace(k, c);
    return r;
}

SecularTrigPoly SecularTrigPoly::periodic_part() const {
    SecularTrigPoly r;
    for (const auto& [k, c] : terms_)
        if (k.power == 0) r.terms_.emplace(k, c);
    return r;
}

double SecularTrigPoly::eval(double tau) const {
    double s = 0.0;
    for (const auto& [k, c] : terms_) {
        double trig = k.wave == 0 ? std::cos(k.frequency * tau) : std::sin(k.frequency * tau);
        s += to_double(c) * std::pow(tau, k.power) * trig;
    }
    return s;
}

std::string SecularTrigPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << numerator(c) << "/" << denominator(c) << " * tau^" << k.power << " * "
           << (k.wave == 0 ? "cos(" : "sin(") << k.frequency << "*tau)";
    }
    return os.str();
}

std::vector<TrigTerm> SecularTrigPoly::records() const {
    std::vector<TrigTerm> out;
    out.reserve(terms_.size());
    for (const auto& [k, c] : terms_)
        out.push_back(TrigTerm{k.power, k.frequency, static_cast<Wave>(k.wave), c});
    return out;
}

SecularTrigPoly SecularTrigPoly::from_records(const std::vector<TrigTerm>& recs) {
    SecularTrigPoly p;
    for (const auto& r : recs) p.accumulate(r.power, r.frequency, r.wave, r.coeff);
    return p;
}

SecularTrigPoly duhamel(int omega, const SecularTrigPoly& source) {
    if (omega < 1) throw std::invalid_argument("duhamel: omega must be >= 1");
    SecularTrigPoly u;
    for (const auto& [k, c] : source.terms()) {
        if (k.power != 0)
            throw std::invalid_argument(
                "duhamel: secular source term (use duhamel_general for tau-power sources)");
        int a = k.frequency;
        if (k.wave == 0) {
            if (a == omega) {
                // resonant cosine: (1/2) tau sin(omega tau)
                u = u + SecularTrigPoly::harmonic(Wave::sine, omega, c / 2, 1);
            } else {
                // omega/(omega^2-a^2) (cos(a tau) - cos(omega tau))
                Rational g = Rational(omega) / Rational(omega * omega - a * a);
                u = u + SecularTrigPoly::harmonic(Wave::cosine, a, c * g)
                      - SecularTrigPoly::harmonic(Wave::cosine, omega, c * g);
            }
        } else {
            if (a == omega) {
                // resonant sine: -(1/2) tau cos + (1/(2 omega)) sin
                u = u + SecularTrigPoly::harmonic(Wave::cosine, omega, -c / 2, 1)
                      + SecularTrigPoly::harmonic(Wave::sine, omega, c / Rational(2 * omega));
            } else {
                // (omega sin(a tau) - a sin(omega tau)) / (omega^2 - a^2)
                Rational d = Rational(omega * omega - a * a);
                u = u + SecularTrigPoly::harmonic(Wave::sine, a, c * omega / d)
                      - SecularTrigPoly::harmonic(Wave::sine, omega, c * a / d);
            }
        }
    }
    return u;
}

namespace {

// Exact particular solution U of U'' + omega^2 U = rhs for a single-frequency
// block rhs = sum_r tau^r (sc[r] cos(a tau) + ss[r] sin(a tau)), via a
// triangular solve on the ansatz coefficients. Resonant blocks (a == omega)
// get the extra tau power.
void particular_block(int omega, int a, std::vector<Rational> sc, std::vector<Rational> ss,
                      SecularTrigPoly& accum) {
    int p = static_cast<int>(sc.size()) - 1;  // max source power
    if (a == 0) {
        // pure polynomial source: U = sum c_q tau^q with
        // omega^2 c_r + (r+1)(r+2) c_{r+2} = sc_r
        std::vector<Rational> cq(p + 1, Rational(0));
        Rational w2(omega * omega);
        for (int r = p; r >= 0; --r) {
            Rational rhs = sc[r];
            if (r + 2 <= p) rhs -= Rational((r + 1) * (r + 2)) * cq[r + 2];
            cq[r] = rhs / w2;
        }
        for (int q = 0; q <= p; ++q)
            accum = accum + SecularTrigPoly::harmonic(Wave::cosine, 0, cq[q], q);
        return;
    }
    if (a != omega) {
        // coefficient of tau^r cos: D c_r + 2a(r+1) d_{r+1} + (r+1)(r+2) c_{r+2} = sc_r
        // coefficient of tau^r sin: D d_r - 2a(r+1) c_{r+1} + (r+1)(r+2) d_{r+2} = ss_r
        Rational D(omega * omega - a * a);
        std::vector<Rational> cq(p + 1, Rational(0)), dq(p + 1, Rational(0));
        for (int r = p; r >= 0; --r) {
            Rational rc = sc[r], rs = ss[r];
            if (r + 1 <= p) {
                rc -= Rational(2 * a * (r + 1)) * dq[r + 1];
                rs += Rational(2 * a * (r + 1)) * cq[r + 1];
            }
            if (r + 2 <= p) {
                rc -= Rational((r + 1) * (r + 2)) * cq[r + 2];
                rs -= Rational((r + 1) * (r + 2)) * dq[r + 2];
            }
            cq[r] = rc / D;
            dq[r] = rs / D;
        }
        for (int q = 0; q <= p; ++q) {
            accum = accum + SecularTrigPoly::harmonic(Wave::cosine, a, cq[q], q)
                  + SecularTrigPoly::harmonic(Wave::sine, a, dq[q], q);
        }
        return;
    }
    // Resonant block, ansatz degree p+1, c_0 = d_0 = 0 (homogeneous):
    //   tau^r cos:  2 omega (r+1) d_{r+1} + (r+1)(r+2) c_{r+2} = sc_r
    //   tau^r sin: -2 omega (r+1) c_{r+1} + (r+1)(r+2) d_{r+2} = ss_r
    std::vector<Rational> cq(p + 2, Rational(0)), dq(p + 2, Rational(0));
    for (int r = p; r >= 0; --r) {
        Rational rc = sc[r], rs = ss[r];
        if (r + 2 <= p + 1) {
            rc -= Rational((r + 1) * (r + 2)) * cq[r + 2];
            rs -= Rational((r + 1) * (r + 2)) * dq[r + 2];
        }
        dq[r + 1] = rc / Rational(2 * omega * (r + 1));
        cq[r + 1] = -rs / Rational(2 * omega * (r + 1));
    }
    for (int q = 1; q <= p + 1; ++q) {
        accum = accum + SecularTrigPoly::harmonic(Wave::cosine, omega, cq[q], q)
              + SecularTrigPoly::harmonic(Wave::sine, omega, dq[q], q);
    }
}

}  // namespace

SecularTrigPoly duhamel_general(int omega, const SecularTrigPoly& source) {
    if (omega < 1) throw std::invalid_argument("duhamel: omega must be >= 1");
    // Group the scaled source omega*source by frequency, solve each block.
    std::map<int, std::pair<std::vector<Rational>, std::vector<Rational>>> blocks;
    for (const auto& [k, c] : source.terms()) {
        auto& [sc, ss] = blocks[k.frequency];
        std::size_t need = static_cast<std::size_t>(k.power) + 1;
        if (sc.size() < need) { sc.resize(need, Rational(0)); ss.resize(need, Rational(0)); }
        (k.wave == 0 ? sc : ss)[k.power] += c * omega;
    }
    SecularTrigPoly particular;
    for (auto& [a, srcs] : blocks)
        particular_block(omega, a, std::move(srcs.first), std::move(srcs.second), particular);
    // Subtract the homogeneous solution matching u(0) = u'(0) = 0.
    Rational u0 = particular.value_at_zero();
    Rational du0 = particular.derivative_at_zero();
    return particular - SecularTrigPoly::harmonic(Wave::cosine, omega, u0)
         - SecularTrigPoly::harmonic(Wave::sine, omega, du0 / omega);
}

}  // namespace cubicwave::trig
