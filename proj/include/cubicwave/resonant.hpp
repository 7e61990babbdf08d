#ifndef CUBICWAVE_RESONANT_HPP
#define CUBICWAVE_RESONANT_HPP

#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cubicwave/modes.hpp"
#include "cubicwave/trigpoly.hpp"

namespace cubicwave::resonant {

using cubicwave::Rational;
using trig::SecularTrigPoly;

struct EngineError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// The affine slope of a cancellation equation vanished; indicates an engine
// bug or an altered seed, never the standard pipeline.
struct DegenerateSlopeError : EngineError {
    using EngineError::EngineError;
};
// A secular term survived that no available unknown can cancel.
struct SecularCancellationError : EngineError {
    using EngineError::EngineError;
};

// Squared perturbed frequency Omega^2(eps) = sum_l theta_l eps^l.
class FrequencySeries {
  public:
    explicit FrequencySeries(std::vector<Rational> thetas) : thetas_(std::move(thetas)) {}
    const std::vector<Rational>& thetas() const { return thetas_; }
    double omega_squared(double eps) const;
    double omega(double eps) const;  // throws std::domain_error when Omega^2 <= 0

  private:
    std::vector<Rational> thetas_;
};

struct ModeCutoff {
    enum class Policy { automatic_discovery, fixed };
    Policy policy = Policy::automatic_discovery;
    int max_modes = 0;

    // Retain every mode whose polynomial or forced datum turns out nonzero;
    // the collapse to the dominant mode is discovered, not assumed.
    static ModeCutoff automatic() { return {}; }
    static ModeCutoff fixed(int m) { return {Policy::fixed, m}; }
};

// Record of a forced initial datum f_{order}^(mode)(0) and the obstruction
// coefficient (the tau sin(omega_m tau) slope) that forced it.
struct ForcedDatumRecord {
    int order = 0;  // the order of the datum that was fixed (lambda - 2)
    int mode = 0;
    Rational obstruction;
    Rational value;
};

// Expansion state up to max_order: mode polynomials f_lambda^(m), frequency
// shifts theta_0..theta_{max_order-1}, the free-data registry for mode 0 and
// the forced-data log for modes >= 1. Immutable once an order completes;
// data of modes >= 1 not yet forced are represented as 0 (their eventual
// forced value in the standard pipeline).
class PerturbativeState {
  public:
    int max_order() const { return max_order_; }
    const std::vector<Rational>& thetas() const { return thetas_; }
    Rational theta(int l) const { return thetas_.at(static_cast<std::size_t>(l)); }
    FrequencySeries frequency_series() const { return FrequencySeries(thetas_); }

    // f_lambda^(m); the zero polynomial when nothing is stored.
    const SecularTrigPoly& mode_poly(int lambda, int m) const;
    const std::map<std::pair<int, int>, SecularTrigPoly>& mode_polys() const { return polys_; }

    // Registered free datum f_lambda^(0)(0) (1 at the seed order).
    Rational free_datum(int lambda) const;
    const std::map<int, Rational>& free_data() const { return free_data_; }
    const std::vector<ForcedDatumRecord>& forced_data_log() const { return forced_log_; }

    // Modes with a nonzero polynomial at some order <= max_order.
    std::vector<int> active_modes() const;
    std::vector<int> modes_at(int lambda) const;

  private:
    friend class Engine;
    int max_order_ = 0;
    std::vector<Rational> thetas_;
    std::map<std::pair<int, int>, SecularTrigPoly> polys_;
    std::map<int, Rational> free_data_;
    std::vector<ForcedDatumRecord> forced_log_;
};

// The order-by-order engine for the dominant-mode (gamma = 0) expansion of
//   Omega^2 f'' + L[f] = -f^3/sin^2(psi),
// seeded with f_1 = cos(tau) e_0. Builds each f_lambda^(m) from the
// variation-of-constants recurrence, cancels the m = 0 secular term by the
// frequency shift theta_{lambda-1} and the m >= 1 ones by forcing
// f_{lambda-2}^(m)(0); every cancellation is an exact affine solve obtained
// by probing the unknown at 0 and 1 (no symbolic algebra).
class Engine {
  public:
    explicit Engine(ModeCutoff cutoff = ModeCutoff::automatic(),
                    std::map<int, Rational> free_data = {});

    PerturbativeState seed() const;
    PerturbativeState advance(const PerturbativeState& state) const;
    // seed() followed by advance up to the requested order.
    PerturbativeState expand(int order) const;

    // N_lambda^(m) with theta_{lambda-1} := theta_candidate and
    // f_{lambda-2}^(m)(0) := data_candidate (modes >= 1) substituted.
    SecularTrigPoly nonlinear_source(const PerturbativeState& state, int lambda, int m,
                                     const Rational& theta_candidate = Rational(0),
                                     const Rational& data_candidate = Rational(0)) const;

    // The candidate f_lambda^(m) under the same substitutions; includes the
    // homogeneous part and the theta_nu (f_mu^(m)(0) cos(omega_m tau) -
    // f_mu^(m)(tau)) correction.
    SecularTrigPoly assemble_order(const PerturbativeState& state, int lambda, int m,
                                   const Rational& theta_candidate = Rational(0),
                                   const Rational& data_candidate = Rational(0)) const;

    // The unique theta_{lambda-1} cancelling secular_part(f_lambda^(0)).
    Rational solve_shift(const PerturbativeState& state, int lambda) const;

    struct ForcedSolve {
        Rational value;        // the forced f_{lambda-2}^(m)(0)
        Rational obstruction;  // slope of the tau sin(omega_m tau) coefficient
    };
    // The value of f_{lambda-2}^(m)(0) cancelling the tau sin(omega_m tau)
    // term of f_lambda^(m); lambda >= 4, m >= 1.
    ForcedSolve solve_forced_data(const PerturbativeState& state, int lambda, int m) const;

    // Exact defect of the projected recurrence at (lambda, m):
    //   f'' + omega_m^2 f - S_lambda^(m), the zero polynomial for solutions.
    SecularTrigPoly residual(const PerturbativeState& state, int lambda, int m) const;

    // Allow tau-power sources in the Duhamel step (exploring branches where
    // lower orders keep secular terms).
    void set_general_duhamel(bool on) { general_duhamel_ = on; }

    const modes::InteractionTable& interactions() const { return table_; }

  private:
    Rational datum_for(const PerturbativeState& state, int lambda) const;
    std::vector<int> candidate_modes(const PerturbativeState& state) const;
    SecularTrigPoly assemble_impl(const PerturbativeState& state, int lambda, int m,
                                  const Rational& theta_candidate, const Rational& data_candidate,
                                  SecularTrigPoly* source_out) const;
    ForcedSolve solve_forced_impl(const PerturbativeState& state, int lambda, int m,
                                  const Rational& theta_value) const;

    ModeCutoff cutoff_;
    std::map<int, Rational> free_data_;
    bool general_duhamel_ = false;
    mutable modes::InteractionTable table_;
};

// sqrt(sum_{l <= max_order-1} theta_l eps^l); throws when negative.
double frequency(const PerturbativeState& state, double eps);

// sum_lambda eps^lambda sum_m f_lambda^(m)(Omega t) e_m(psi), psi in [0, pi].
double evaluate_solution(const PerturbativeState& state, double eps, double t, double psi);

}  // namespace cubicwave::resonant

#endif
