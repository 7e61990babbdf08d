#include "cubicwave/pdesim.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "cubicwave/modes.hpp"
#include "cubicwave/quadrature.hpp"

namespace cubicwave::pdesim {

namespace {
constexpr double kPi = std::numbers::pi;
}

Simulator::Simulator(int n_modes, int dealias_factor) : n_(n_modes) {
    if (n_modes < 1) throw std::invalid_argument("simulator needs at least one mode");
    // Exact sine transform of sin(psi) g^3 needs M - 1 >= 3 n_modes - 2.
    if (dealias_factor < 3) throw std::invalid_argument("dealias factor must be >= 3");
    grid_m_ = dealias_factor * n_modes;
    int interior = grid_m_ - 1;
    cos_psi_.resize(static_cast<std::size_t>(interior));
    sin_psi_.resize(static_cast<std::size_t>(interior));
    sine_table_.resize(static_cast<std::size_t>(n_) * interior);
    for (int r = 1; r < grid_m_; ++r) {
        double psi = kPi * r / grid_m_;
        cos_psi_[static_cast<std::size_t>(r - 1)] = std::cos(psi);
        sin_psi_[static_cast<std::size_t>(r - 1)] = std::sin(psi);
        for (int m = 0; m < n_; ++m)
            sine_table_[static_cast<std::size_t>(m) * interior + (r - 1)] =
                std::sin((m + 1) * psi);
    }
}

double Simulator::collocation_g(const std::vector<double>& a, std::size_t r) const {
    // g(psi_r) = sum_m a_m U_m(cos psi_r) by the U recurrence.
    double y = cos_psi_[r];
    double u0 = 1.0, u1 = 2.0 * y;
    double g = a[0] * u0;
    if (n_ > 1) g += a[1] * u1;
    for (int m = 2; m < n_; ++m) {
        double u2 = 2.0 * y * u1 - u0;
        u0 = u1;
        u1 = u2;
        g += a[static_cast<std::size_t>(m)] * u1;
    }
    return g;
}

std::vector<double> Simulator::nonlinearity(const std::vector<double>& a) const {
    if (static_cast<int>(a.size()) != n_)
        throw std::invalid_argument("nonlinearity: coefficient count mismatch");
    std::size_t interior = static_cast<std::size_t>(grid_m_ - 1);
    std::vector<double> h(interior);
    for (std::size_t r = 0; r < interior; ++r) {
        double g = collocation_g(a, r);
        h[r] = sin_psi_[r] * g * g * g;  // f^3/sin^2 = sin(psi) g^3, smooth
    }
    // DST-I: b_q = (2/M) sum_r h(psi_r) sin(q psi_r), exact since h is a sine
    // polynomial of frequency <= 3n - 2 <= M - 1.
    std::vector<double> out(static_cast<std::size_t>(n_));
    for (int m = 0; m < n_; ++m) {
        const double* row = &sine_table_[static_cast<std::size_t>(m) * interior];
        double s = 0.0;
        for (std::size_t r = 0; r < interior; ++r) s += row[r] * h[r];
        out[static_cast<std::size_t>(m)] = 2.0 * s / grid_m_;
    }
    return out;
}

void Simulator::rhs(const SpectralState& s, std::vector<double>& da,
                    std::vector<double>& dv) const {
    da = s.v;
    dv.assign(static_cast<std::size_t>(n_), 0.0);
    if (nonlinear_) dv = nonlinearity(s.a);
    for (int m = 0; m < n_; ++m) {
        double w = modes::omega(m);
        dv[static_cast<std::size_t>(m)] =
            -w * w * s.a[static_cast<std::size_t>(m)] - dv[static_cast<std::size_t>(m)];
    }
}

SpectralState Simulator::step(const SpectralState& s, double dt) const {
    auto axpy = [this](const SpectralState& base, double c, const std::vector<double>& da,
                       const std::vector<double>& dv) {
        SpectralState r = base;
        for (int m = 0; m < n_; ++m) {
            r.a[static_cast<std::size_t>(m)] += c * da[static_cast<std::size_t>(m)];
            r.v[static_cast<std::size_t>(m)] += c * dv[static_cast<std::size_t>(m)];
        }
        return r;
    };
    std::vector<double> da1, dv1, da2, dv2, da3, dv3, da4, dv4;
    rhs(s, da1, dv1);
    SpectralState s2 = axpy(s, 0.5 * dt, da1, dv1);
    rhs(s2, da2, dv2);
    SpectralState s3 = axpy(s, 0.5 * dt, da2, dv2);
    rhs(s3, da3, dv3);
    SpectralState s4 = axpy(s, dt, da3, dv3);
    rhs(s4, da4, dv4);
    SpectralState r = s;
    r.t = s.t + dt;
    for (int m = 0; m < n_; ++m) {
        std::size_t i = static_cast<std::size_t>(m);
        r.a[i] += dt / 6.0 * (da1[i] + 2.0 * (da2[i] + da3[i]) + da4[i]);
        r.v[i] += dt / 6.0 * (dv1[i] + 2.0 * (dv2[i] + dv3[i]) + dv4[i]);
    }
    return r;
}

SpectralState Simulator::simulate(const SpectralState& s0, double t_end, double dt) const {
    if (static_cast<int>(s0.a.size()) != n_ || static_cast<int>(s0.v.size()) != n_)
        throw std::invalid_argument("simulate: state size mismatch");
    if (dt <= 0.0) throw std::invalid_argument("simulate: dt must be positive");
    if (dt * n_ > 2.5)
        throw std::invalid_argument("simulate: dt too large for the top retained frequency");
    if (t_end < 0.0) throw std::invalid_argument("simulate: t_end must be >= 0");

    double norm0 = 0.0;
    for (double x : s0.a) norm0 = std::max(norm0, std::abs(x));
    for (double x : s0.v) norm0 = std::max(norm0, std::abs(x));
    double limit = 1e6 * (norm0 + 1.0);

    long n = t_end > 0.0 ? static_cast<long>(std::ceil(t_end / dt - 1e-12)) : 0;
    double h = n > 0 ? t_end / static_cast<double>(n) : 0.0;
    SpectralState s = s0;
    for (long i = 0; i < n; ++i) {
        s = step(s, h);
        for (int m = 0; m < n_; ++m) {
            std::size_t idx = static_cast<std::size_t>(m);
            if (!std::isfinite(s.a[idx]) || std::abs(s.a[idx]) > limit ||
                !std::isfinite(s.v[idx]) || std::abs(s.v[idx]) > limit) {
                std::ostringstream os;
                os << "simulate: coefficient blow-up at t = " << s.t << " (mode " << m
                   << "); reduce dt or the time horizon";
                throw BlowupError(os.str());
            }
        }
    }
    s.t = s0.t + t_end;
    return s;
}

EnergyReport Simulator::energy_report(const SpectralState& s, int quad_points) const {
    EnergyReport e;
    for (int m = 0; m < n_; ++m) {
        std::size_t i = static_cast<std::size_t>(m);
        double w = modes::omega(m);
        e.kinetic += s.v[i] * s.v[i];
        e.gradient += w * w * s.a[i] * s.a[i];
    }
    e.kinetic *= kPi / 2.0;
    e.gradient *= kPi / 2.0;
    // (1/2) int_0^pi sin^2 g^4 dpsi = (1/2) int_-1^1 sqrt(1-y^2) g(y)^4 dy,
    // Gauss-Chebyshev-U exact for the degree-4(n-1) integrand.
    int q = quad_points > 0 ? quad_points : 2 * n_;
    double sum = 0.0;
    for (int r = 1; r <= q; ++r) {
        double theta = r * kPi / (q + 1);
        double y = std::cos(theta), sn = std::sin(theta);
        double w = kPi / (q + 1) * sn * sn;
        double u0 = 1.0, u1 = 2.0 * y, g = s.a[0];
        if (n_ > 1) g += s.a[1] * u1;
        for (int m = 2; m < n_; ++m) {
            double u2 = 2.0 * y * u1 - u0;
            u0 = u1;
            u1 = u2;
            g += s.a[static_cast<std::size_t>(m)] * u1;
        }
        double g2 = g * g;
        sum += w * g2 * g2;
    }
    e.potential = 0.5 * sum;
    return e;
}

double Simulator::eval(const SpectralState& s, double psi) const {
    double f = 0.0;
    for (int m = 0; m < n_; ++m)
        f += s.a[static_cast<std::size_t>(m)] * std::sin((m + 1) * psi);
    return f;
}

double Simulator::hardy_diagnostic(const SpectralState& s, int p) const {
    if (p < 1 || p > 6) throw std::invalid_argument("hardy_diagnostic: p must be in [1, 6]");
    double l2 = 0.0, h1 = 0.0;
    for (int m = 0; m < n_; ++m) {
        std::size_t i = static_cast<std::size_t>(m);
        double w = modes::omega(m);
        l2 += s.a[i] * s.a[i];
        h1 += w * w * s.a[i] * s.a[i];
    }
    double right = std::sqrt(kPi / 2.0 * h1) + std::sqrt(kPi / 2.0 * l2);
    if (right == 0.0) return 0.0;
    // |f|^p sin^{2-p} = sin^2 |g|^p, smooth on [0, pi]
    auto rule = quadrature::gauss_legendre(4 * n_ + 16, 0.0, kPi);
    double integral = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        double psi = rule.nodes[i];
        double sn = std::sin(psi), y = std::cos(psi);
        double u0 = 1.0, u1 = 2.0 * y, g = s.a[0];
        if (n_ > 1) g += s.a[1] * u1;
        for (int m = 2; m < n_; ++m) {
            double u2 = 2.0 * y * u1 - u0;
            u0 = u1;
            u1 = u2;
            g += s.a[static_cast<std::size_t>(m)] * u1;
        }
        integral += rule.weights[i] * sn * sn * std::pow(std::abs(g), p);
    }
    return std::pow(integral, 1.0 / p) / right;
}

double state_distance(const SpectralState& s1, const SpectralState& s2) {
    if (s1.a.size() != s2.a.size() || s1.v.size() != s2.v.size())
        throw std::invalid_argument("state_distance: size mismatch");
    double kin = 0.0, grad = 0.0;
    for (std::size_t i = 0; i < s1.a.size(); ++i) {
        double w = static_cast<double>(i) + 1.0;
        double da = s1.a[i] - s2.a[i];
        double dv = s1.v[i] - s2.v[i];
        grad += w * w * da * da;
        kin += dv * dv;
    }
    return std::sqrt(kPi / 2.0 * (kin + grad));
}

SpectralState project_initial(const resonant::PerturbativeState& state, double eps, int n_modes,
                              int order) {
    if (n_modes < 1) throw std::invalid_argument("project_initial: need at least one mode");
    if (order < 0 || order > state.max_order()) order = state.max_order();
    SpectralState s;
    s.a.assign(static_cast<std::size_t>(n_modes), 0.0);
    s.v.assign(static_cast<std::size_t>(n_modes), 0.0);
    for (const auto& [key, poly] : state.mode_polys()) {
        auto [lambda, m] = key;
        if (lambda > order || m >= n_modes) continue;
        s.a[static_cast<std::size_t>(m)] +=
            std::pow(eps, lambda) * to_double(poly.value_at_zero());
    }
    return s;
}

double periodicity_error(const resonant::PerturbativeState& state, double eps, int order,
                         int n_modes, double dt) {
    if (order < 1 || order > state.max_order())
        throw std::invalid_argument("periodicity_error: order not available in the state");
    if (eps == 0.0) return 0.0;
    std::vector<Rational> thetas(state.thetas().begin(),
                                 state.thetas().begin() + order);
    resonant::FrequencySeries series(std::move(thetas));
    double T = 2.0 * kPi / series.omega(eps);
    Simulator sim(n_modes);
    SpectralState s0 = project_initial(state, eps, n_modes, order);
    SpectralState s1 = sim.simulate(s0, T, dt);
    return state_distance(s1, s0);
}

}  // namespace cubicwave::pdesim
