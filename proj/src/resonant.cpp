#include "cubicwave/resonant.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cubicwave::resonant {

using trig::Wave;

double FrequencySeries::omega_squared(double eps) const {
    // Horner on the truncated series.
    double s = 0.0;
    for (auto it = thetas_.rbegin(); it != thetas_.rend(); ++it)
        s = s * eps + to_double(*it);
    return s;
}

double FrequencySeries::omega(double eps) const {
    double w2 = omega_squared(eps);
    if (w2 <= 0.0)
        throw std::domain_error("frequency series: Omega^2(eps) <= 0 at this eps");
    return std::sqrt(w2);
}

const SecularTrigPoly& PerturbativeState::mode_poly(int lambda, int m) const {
    static const SecularTrigPoly kZero;
    auto it = polys_.find({lambda, m});
    return it == polys_.end() ? kZero : it->second;
}

Rational PerturbativeState::free_datum(int lambda) const {
    auto it = free_data_.find(lambda);
    return it == free_data_.end() ? Rational(0) : it->second;
}

std::vector<int> PerturbativeState::active_modes() const {
    std::set<int> s;
    for (const auto& [key, poly] : polys_)
        if (!poly.is_zero()) s.insert(key.second);
    return {s.begin(), s.end()};
}

std::vector<int> PerturbativeState::modes_at(int lambda) const {
    std::set<int> s;
    for (const auto& [key, poly] : polys_)
        if (key.first == lambda && !poly.is_zero()) s.insert(key.second);
    return {s.begin(), s.end()};
}

Engine::Engine(ModeCutoff cutoff, std::map<int, Rational> free_data)
    : cutoff_(cutoff), free_data_(std::move(free_data)) {
    if (cutoff_.policy == ModeCutoff::Policy::fixed && cutoff_.max_modes < 1)
        throw std::invalid_argument("fixed mode cutoff must retain at least one mode");
    for (const auto& [lambda, value] : free_data_)
        if (lambda < 2)
            throw std::invalid_argument("free data start at order 2 (the seed fixes order 1)");
}

PerturbativeState Engine::seed() const {
    PerturbativeState s;
    s.max_order_ = 1;
    s.thetas_ = {Rational(1)};  // theta_0 = omega_0^2 = 1
    s.free_data_[1] = Rational(1);
    s.polys_[{1, 0}] = SecularTrigPoly::harmonic(Wave::cosine, 1);
    return s;
}

Rational Engine::datum_for(const PerturbativeState& state, int lambda) const {
    if (lambda == 1) return Rational(1);
    auto it = state.free_data_.find(lambda);
    if (it != state.free_data_.end()) return it->second;
    auto cfg = free_data_.find(lambda);
    return cfg == free_data_.end() ? Rational(0) : cfg->second;
}

std::vector<int> Engine::candidate_modes(const PerturbativeState& state) const {
    if (cutoff_.policy == ModeCutoff::Policy::fixed) {
        std::vector<int> out(static_cast<std::size_t>(cutoff_.max_modes));
        for (int m = 0; m < cutoff_.max_modes; ++m) out[static_cast<std::size_t>(m)] = m;
        return out;
    }
    // The cubic of active eigenfunctions radiates frequencies up to
    // 3 * max omega(active); only those modes can acquire a source.
    int wmax = 1;
    for (int m : state.active_modes()) wmax = std::max(wmax, modes::omega(m));
    std::vector<int> out;
    for (int m = 0; modes::omega(m) <= 3 * wmax; ++m) out.push_back(m);
    return out;
}

SecularTrigPoly Engine::assemble_impl(const PerturbativeState& state, int lambda, int m,
                                      const Rational& theta_candidate,
                                      const Rational& data_candidate,
                                      SecularTrigPoly* source_out) const {
    if (lambda < 2 || lambda > state.max_order() + 1)
        throw std::invalid_argument("assemble: order out of range for this state");
    if (m < 0) throw std::invalid_argument("assemble: mode must be >= 0");
    const int om = modes::omega(m);

    auto theta_at = [&](int nu) -> Rational {
        if (nu == lambda - 1) return theta_candidate;
        return state.theta(nu);
    };
    // Mode-m polynomial of order mu with the probe datum substituted: for
    // m >= 1 the stored f_{lambda-2}^(m) carries datum 0 until forced, so the
    // candidate adds data_candidate * cos(omega_m tau) on top.
    SecularTrigPoly overridden;
    bool has_override = m >= 1 && lambda - 2 >= 2 && data_candidate != 0;
    if (has_override)
        overridden = state.mode_poly(lambda - 2, m) +
                     SecularTrigPoly::harmonic(Wave::cosine, om, data_candidate);
    auto poly_at = [&](int mu, int mode) -> const SecularTrigPoly& {
        if (has_override && mode == m && mu == lambda - 2) return overridden;
        return state.mode_poly(mu, mode);
    };
    auto modes_with_terms = [&](int mu) {
        std::vector<int> out = state.modes_at(mu);
        if (has_override && mu == lambda - 2 &&
            std::find(out.begin(), out.end(), m) == out.end())
            out.push_back(m);
        return out;
    };

    // Homogeneous part f_lambda^(m)(0) cos(omega_m tau); the datum is the
    // registered free variable for the dominant mode and 0 (pending or
    // forced) for m >= 1.
    SecularTrigPoly result;
    if (m == 0) {
        Rational datum = datum_for(state, lambda);
        if (datum != 0) result = SecularTrigPoly::harmonic(Wave::cosine, om, datum);
    }

    // theta corrections and the theta part of N: sum over mu + nu = lambda,
    // (mu, nu) != (lambda, 0); mu = 0 drops since f_0 = 0.
    SecularTrigPoly N;
    for (int nu = 1; nu <= lambda - 1; ++nu) {
        int mu = lambda - nu;
        const SecularTrigPoly& g = poly_at(mu, m);
        if (g.is_zero()) continue;
        Rational th = theta_at(nu);
        if (th == 0) continue;
        Rational g0 = g.value_at_zero();
        SecularTrigPoly corr = SecularTrigPoly::harmonic(Wave::cosine, om, g0) - g;
        result = result + corr.scaled(th);
        N = N + g.scaled(th * om);
    }

    // Cubic part of N: -(1/omega_m) sum C_ijk^(m) sum f_mu^(i) f_nu^(j) f_rho^(k),
    // triples restricted to mu, nu, rho in [1, lambda-2] with mu+nu+rho = lambda.
    for (int mu = 1; mu <= lambda - 2; ++mu) {
        for (int nu = 1; nu <= lambda - 2; ++nu) {
            int rho = lambda - mu - nu;
            if (rho < 1 || rho > lambda - 2) continue;
            for (int i : modes_with_terms(mu)) {
                const SecularTrigPoly& fi = poly_at(mu, i);
                if (fi.is_zero()) continue;
                for (int j : modes_with_terms(nu)) {
                    const SecularTrigPoly& fj = poly_at(nu, j);
                    if (fj.is_zero()) continue;
                    SecularTrigPoly fij = fi * fj;
                    for (int k : modes_with_terms(rho)) {
                        const SecularTrigPoly& fk = poly_at(rho, k);
                        if (fk.is_zero()) continue;
                        std::int64_t c = table_(i, j, k, m);
                        if (c == 0) continue;
                        N = N - (fij * fk).scaled(Rational(c, om));
                    }
                }
            }
        }
    }

    if (source_out) *source_out = N;
    result = result + (general_duhamel_ ? trig::duhamel_general(om, N) : trig::duhamel(om, N));
    return result;
}

SecularTrigPoly Engine::nonlinear_source(const PerturbativeState& state, int lambda, int m,
                                         const Rational& theta_candidate,
                                         const Rational& data_candidate) const {
    SecularTrigPoly N;
    assemble_impl(state, lambda, m, theta_candidate, data_candidate, &N);
    return N;
}

SecularTrigPoly Engine::assemble_order(const PerturbativeState& state, int lambda, int m,
                                       const Rational& theta_candidate,
                                       const Rational& data_candidate) const {
    return assemble_impl(state, lambda, m, theta_candidate, data_candidate, nullptr);
}

namespace {

// Exact solve of S0 + x * SD == 0 termwise; every secular term must agree on
// the same x and SD's support must cover S0's.
Rational affine_secular_solve(const SecularTrigPoly& S0, const SecularTrigPoly& SD,
                              const char* what) {
    if (SD.is_zero()) {
        if (S0.is_zero()) return Rational(0);  // nothing to cancel
        throw DegenerateSlopeError(std::string(what) +
                                   ": secular term present but unknown has zero slope");
    }
    bool have = false;
    Rational x(0);
    for (const auto& [key, sd] : SD.terms()) {
        Rational s0 = S0.coeff(key.power, key.frequency, static_cast<Wave>(key.wave));
        Rational cand = -s0 / sd;
        if (!have) {
            x = cand;
            have = true;
        } else if (cand != x) {
            throw SecularCancellationError(std::string(what) +
                                           ": secular terms demand inconsistent values");
        }
    }
    // terms of S0 outside SD's support are uncancellable
    for (const auto& [key, s0] : S0.terms()) {
        if (SD.coeff(key.power, key.frequency, static_cast<Wave>(key.wave)) == 0)
            throw SecularCancellationError(std::string(what) +
                                           ": secular term outside the unknown's reach");
    }
    return x;
}

}  // namespace

Rational Engine::solve_shift(const PerturbativeState& state, int lambda) const {
    if (lambda < 2) throw std::invalid_argument("solve_shift: order must be >= 2");
    SecularTrigPoly P0 = assemble_order(state, lambda, 0, Rational(0));
    SecularTrigPoly P1 = assemble_order(state, lambda, 0, Rational(1));
    SecularTrigPoly S0 = P0.secular_part();
    SecularTrigPoly SD = (P1 - P0).secular_part();
    return affine_secular_solve(S0, SD, "solve_shift");
}

Engine::ForcedSolve Engine::solve_forced_impl(const PerturbativeState& state, int lambda, int m,
                                              const Rational& theta_value) const {
    SecularTrigPoly Q0 = assemble_impl(state, lambda, m, theta_value, Rational(0), nullptr);
    SecularTrigPoly Q1 = assemble_impl(state, lambda, m, theta_value, Rational(1), nullptr);
    SecularTrigPoly S0 = Q0.secular_part();
    SecularTrigPoly SD = (Q1 - Q0).secular_part();
    Rational obstruction = SD.coeff(1, modes::omega(m), Wave::sine);
    if (obstruction == 0)
        throw DegenerateSlopeError("solve_forced_data: vanishing obstruction coefficient");
    Rational value = affine_secular_solve(S0, SD, "solve_forced_data");
    return {value, obstruction};
}

Engine::ForcedSolve Engine::solve_forced_data(const PerturbativeState& state, int lambda,
                                              int m) const {
    if (lambda < 4) throw std::invalid_argument("solve_forced_data: order must be >= 4");
    if (m < 1) throw std::invalid_argument("solve_forced_data: mode must be >= 1");
    Rational th = lambda - 1 < static_cast<int>(state.thetas().size())
                      ? state.theta(lambda - 1)
                      : solve_shift(state, lambda);
    return solve_forced_impl(state, lambda, m, th);
}

PerturbativeState Engine::advance(const PerturbativeState& state) const {
    const int lambda = state.max_order() + 1;
    PerturbativeState next = state;

    Rational shift = solve_shift(state, lambda);
    next.thetas_.push_back(shift);
    next.free_data_[lambda] = datum_for(state, lambda);

    std::vector<int> cands = candidate_modes(state);
    if (lambda >= 4) {
        for (int m : cands) {
            if (m < 1) continue;
            ForcedSolve fs = solve_forced_impl(state, lambda, m, shift);
            next.forced_log_.push_back({lambda - 2, m, fs.obstruction, fs.value});
            if (fs.value != 0) {
                // A nonzero retro-datum is only consistent when theta_1 = 0
                // (otherwise it would feed back into order lambda-1).
                if (next.thetas_.size() > 1 && next.theta(1) != 0)
                    throw EngineError("advance: nonzero forced datum with theta_1 != 0");
                next.polys_[{lambda - 2, m}] =
                    state.mode_poly(lambda - 2, m) +
                    SecularTrigPoly::harmonic(Wave::cosine, modes::omega(m), fs.value);
            }
        }
    }

    for (int m : cands) {
        SecularTrigPoly f = assemble_impl(next, lambda, m, shift, Rational(0), nullptr);
        if (!f.secular_part().is_zero())
            throw SecularCancellationError("advance: secular term survived cancellation");
        if (!f.is_zero()) next.polys_[{lambda, m}] = std::move(f);
    }
    next.max_order_ = lambda;
    return next;
}

PerturbativeState Engine::expand(int order) const {
    if (order < 1) throw std::invalid_argument("expand: order must be >= 1");
    PerturbativeState s = seed();
    while (s.max_order() < order) s = advance(s);
    return s;
}

SecularTrigPoly Engine::residual(const PerturbativeState& state, int lambda, int m) const {
    if (lambda < 1 || lambda > state.max_order())
        throw std::invalid_argument("residual: order not complete in this state");
    const int om = modes::omega(m);
    const SecularTrigPoly& f = state.mode_poly(lambda, m);

    // S_lambda^(m) = -sum C_ijk^(m) sum_{mu,nu,rho} f f f
    //               - sum_{mu+nu=lambda, (mu,nu)!=(lambda,0)} theta_nu f_mu''
    SecularTrigPoly S;
    for (int nu = 1; nu <= lambda - 1; ++nu) {
        int mu = lambda - nu;
        const SecularTrigPoly& g = state.mode_poly(mu, m);
        if (g.is_zero()) continue;
        Rational th = state.theta(nu);
        if (th == 0) continue;
        S = S - g.differentiated().differentiated().scaled(th);
    }
    for (int mu = 1; mu <= lambda - 2; ++mu) {
        for (int nu = 1; nu <= lambda - 2; ++nu) {
            int rho = lambda - mu - nu;
            if (rho < 1 || rho > lambda - 2) continue;
            for (int i : state.modes_at(mu)) {
                for (int j : state.modes_at(nu)) {
                    SecularTrigPoly fij = state.mode_poly(mu, i) * state.mode_poly(nu, j);
                    for (int k : state.modes_at(rho)) {
                        std::int64_t c = table_(i, j, k, m);
                        if (c == 0) continue;
                        S = S - (fij * state.mode_poly(rho, k)).scaled(Rational(c));
                    }
                }
            }
        }
    }
    return f.differentiated().differentiated() + f.scaled(Rational(om * om)) - S;
}

double frequency(const PerturbativeState& state, double eps) {
    return state.frequency_series().omega(eps);
}

double evaluate_solution(const PerturbativeState& state, double eps, double t, double psi) {
    if (psi < 0.0 || psi > std::numbers::pi)
        throw std::domain_error("evaluate_solution: psi outside [0, pi]");
    if (eps == 0.0) return 0.0;
    double tau = frequency(state, eps) * t;
    double sum = 0.0;
    for (const auto& [key, poly] : state.mode_polys()) {
        double weight = std::pow(eps, key.first);
        sum += weight * poly.eval(tau) * std::sin(modes::omega(key.second) * psi);
    }
    return sum;
}

}  // namespace cubicwave::resonant
