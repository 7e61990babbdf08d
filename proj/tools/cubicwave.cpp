// cubicwave: command-line front end for the exact perturbative engine, the
// one-mode ODE reduction, and the sine-pseudospectral simulator. Machine
// readable output only: JSON (schema "1") or CSV, byte-stable across runs.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "cubicwave/duffing.hpp"
#include "cubicwave/modes.hpp"
#include "cubicwave/pdesim.hpp"
#include "cubicwave/resonant.hpp"

using json = nlohmann::ordered_json;
using cubicwave::Rational;
using cubicwave::parse_rational;
namespace resonant = cubicwave::resonant;
namespace duffing = cubicwave::duffing;
namespace pdesim = cubicwave::pdesim;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitComputational = 1;
constexpr int kExitUsage = 2;

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// Resolve --out against CUBICWAVE_OUT_DIR for bare relative paths.
std::filesystem::path resolve_out(const std::string& out) {
    std::filesystem::path p(out);
    if (p.is_relative()) {
        if (const char* dir = std::getenv("CUBICWAVE_OUT_DIR")) return std::filesystem::path(dir) / p;
    }
    return p;
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    auto path = resolve_out(out);
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open output file: " + path.string());
    f << text;
}

std::map<int, Rational> parse_free_data(const std::vector<std::string>& kvs) {
    std::map<int, Rational> out;
    for (const auto& kv : kvs) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--free-data", "expected ORDER=VALUE, got '" + kv + "'");
        int order = 0;
        try {
            order = std::stoi(kv.substr(0, eq));
        } catch (...) {
            throw CLI::ValidationError("--free-data", "bad order in '" + kv + "'");
        }
        if (order < 2) throw CLI::ValidationError("--free-data", "order must be >= 2");
        try {
            out[order] = parse_rational(kv.substr(eq + 1));
        } catch (...) {
            throw CLI::ValidationError("--free-data", "bad rational in '" + kv + "'");
        }
    }
    return out;
}

resonant::Engine make_engine(const std::vector<std::string>& free_data, int cutoff) {
    auto mc = cutoff > 0 ? resonant::ModeCutoff::fixed(cutoff)
                         : resonant::ModeCutoff::automatic();
    return resonant::Engine(mc, parse_free_data(free_data));
}

json theta_strings(const resonant::PerturbativeState& state) {
    json arr = json::array();
    for (const auto& t : state.thetas()) arr.push_back(cubicwave::to_string(t));
    return arr;
}

json poly_records(const cubicwave::trig::SecularTrigPoly& p) {
    json arr = json::array();
    for (const auto& term : p.records()) {
        json rec;
        rec["power"] = term.power;
        rec["frequency"] = term.frequency;
        rec["parity"] = term.wave == cubicwave::trig::Wave::cosine ? "cos" : "sin";
        rec["numerator"] = numerator(term.coeff).str();
        rec["denominator"] = denominator(term.coeff).str();
        arr.push_back(rec);
    }
    return arr;
}

int cmd_coeffs(int max_index, const std::string& out) {
    std::string text = "i,j,k,m,value\n";
    for (int i = 0; i <= max_index; ++i)
        for (int j = 0; j <= max_index; ++j)
            for (int k = 0; k <= max_index; ++k)
                for (int m = 0; m <= max_index; ++m)
                    text += std::to_string(i) + "," + std::to_string(j) + "," +
                            std::to_string(k) + "," + std::to_string(m) + "," +
                            std::to_string(cubicwave::modes::interaction_coeff(i, j, k, m)) +
                            "\n";
    emit(text, out);
    return kExitOk;
}

int cmd_shifts(int order, const std::vector<std::string>& free_data, const std::string& out) {
    auto engine = make_engine(free_data, 0);
    auto state = engine.expand(order);
    json doc;
    doc["schema"] = "1";
    doc["order"] = order;
    doc["thetas"] = theta_strings(state);
    emit(doc.dump(2) + "\n", out);
    return kExitOk;
}

int cmd_expand(int order, const std::vector<std::string>& free_data, int cutoff,
               const std::string& out) {
    auto engine = make_engine(free_data, cutoff);
    auto state = engine.expand(order);
    json doc;
    doc["schema"] = "1";
    doc["order"] = order;
    doc["thetas"] = theta_strings(state);
    json modes = json::object();
    for (int lambda = 1; lambda <= order; ++lambda) {
        json per_mode = json::object();
        for (int m : state.modes_at(lambda))
            per_mode[std::to_string(m)] = poly_records(state.mode_poly(lambda, m));
        modes[std::to_string(lambda)] = per_mode;
    }
    doc["modes"] = modes;
    json flog = json::array();
    for (const auto& rec : state.forced_data_log()) {
        json r;
        r["order"] = rec.order;
        r["mode"] = rec.mode;
        r["obstruction"] = cubicwave::to_string(rec.obstruction);
        r["value"] = cubicwave::to_string(rec.value);
        flog.push_back(r);
    }
    doc["forced_data_log"] = flog;
    doc["active_modes"] = state.active_modes();
    json freg = json::object();
    for (const auto& [lambda, value] : state.free_data())
        freg[std::to_string(lambda)] = cubicwave::to_string(value);
    doc["free_data"] = freg;
    emit(doc.dump(2) + "\n", out);
    return kExitOk;
}

int cmd_residual(int order, const std::vector<std::string>& free_data, int cutoff, int max_mode,
                 const std::string& out) {
    auto engine = make_engine(free_data, cutoff);
    auto state = engine.expand(order);
    json results = json::array();
    bool all_zero = true;
    for (int lambda = 1; lambda <= order; ++lambda) {
        for (int m = 0; m <= max_mode; ++m) {
            bool zero = engine.residual(state, lambda, m).is_zero();
            all_zero = all_zero && zero;
            json r;
            r["lambda"] = lambda;
            r["mode"] = m;
            r["zero"] = zero;
            results.push_back(r);
        }
    }
    json doc;
    doc["schema"] = "1";
    doc["order"] = order;
    doc["results"] = results;
    doc["all_zero"] = all_zero;
    emit(doc.dump(2) + "\n", out);
    return all_zero ? kExitOk : kExitComputational;
}

int cmd_ode_period(double x0, int quad_points, const std::string& out) {
    json doc;
    doc["schema"] = "1";
    doc["x0"] = x0;
    doc["period"] = duffing::period(x0, quad_points);
    emit(doc.dump(2) + "\n", out);
    return kExitOk;
}

int cmd_ode_orbit(double x0, double periods, int samples, const std::string& out) {
    double t_end = periods * duffing::period(x0);
    duffing::Orbit orbit = duffing::integrate(x0, t_end, 1e-12);
    std::size_t n = orbit.t.size();
    std::size_t stride = std::max<std::size_t>(1, n / static_cast<std::size_t>(samples));
    std::string text = "t,X,Y,energy\n";
    for (std::size_t i = 0; i < n; i += stride) {
        const auto& p = orbit.p[i];
        text += fmt17(orbit.t[i]) + "," + fmt17(p.x) + "," + fmt17(p.y) + "," +
                fmt17(duffing::energy(p)) + "\n";
    }
    emit(text, out);
    return kExitOk;
}

int cmd_ode_verify(double x0, int order, const std::string& out) {
    double t_quad = duffing::period(x0, 96);
    duffing::Closure closure = duffing::orbit_closure(x0);
    resonant::Engine engine;
    auto state = engine.expand(order);
    double t_series = 2.0 * std::numbers::pi / resonant::frequency(state, std::abs(x0));
    json doc;
    doc["schema"] = "1";
    doc["x0"] = x0;
    doc["period_quadrature"] = t_quad;
    doc["return_found"] = closure.found;
    doc["period_return"] = closure.return_time;
    doc["return_gap"] = closure.gap;
    doc["series_order"] = order;
    doc["period_series"] = t_series;
    doc["gap_quadrature_vs_return"] = std::abs(t_quad - closure.return_time);
    doc["gap_quadrature_vs_series"] = std::abs(t_quad - t_series);
    emit(doc.dump(2) + "\n", out);
    return closure.found ? kExitOk : kExitComputational;
}

int cmd_pde_simulate(double epsilon, int order, int n_modes, double dt, double t_end,
                     const std::vector<std::string>& free_data, int stride,
                     const std::string& out) {
    auto engine = make_engine(free_data, 0);
    auto state = engine.expand(order);
    pdesim::Simulator sim(n_modes);
    pdesim::SpectralState s = pdesim::project_initial(state, epsilon, n_modes);

    std::string text = "t";
    for (int m = 0; m < n_modes; ++m) text += ",a_" + std::to_string(m);
    text += ",energy\n";
    auto row = [&](const pdesim::SpectralState& st) {
        text += fmt17(st.t);
        for (double a : st.a) text += "," + fmt17(a);
        text += "," + fmt17(sim.energy_report(st).total()) + "\n";
    };
    long steps = static_cast<long>(std::ceil(t_end / dt - 1e-12));
    double h = steps > 0 ? t_end / static_cast<double>(steps) : 0.0;
    row(s);
    for (long i = 0; i < steps; ++i) {
        s = sim.step(s, h);
        s.t = h * static_cast<double>(i + 1);
        if ((i + 1) % stride == 0 || i + 1 == steps) row(s);
    }
    emit(text, out);
    return kExitOk;
}

int cmd_pde_verify(double epsilon, int order, int n_modes, double dt, double slope_dt,
                   const std::vector<std::string>& free_data, const std::string& out) {
    auto engine = make_engine(free_data, 0);
    auto state = engine.expand(order);
    pdesim::Simulator sim(n_modes);

    double T = 2.0 * std::numbers::pi / resonant::frequency(state, epsilon);
    pdesim::SpectralState s0 = pdesim::project_initial(state, epsilon, n_modes);
    pdesim::EnergyReport before = sim.energy_report(s0);
    pdesim::SpectralState s1 = sim.simulate(s0, T, dt);
    pdesim::EnergyReport after = sim.energy_report(s1);
    double drift = before.total() > 0.0
                       ? std::abs(after.total() - before.total()) / before.total()
                       : 0.0;

    // spectral nonlinearity against the exact interaction tensor
    double consistency = 0.0;
    {
        std::vector<double> a(static_cast<std::size_t>(n_modes), 0.0);
        a[0] = 0.3;
        if (n_modes > 3) a[3] = -0.2;
        if (n_modes > 5) a[5] = 0.15;
        auto nl = sim.nonlinearity(a);
        for (int m = 0; m < n_modes; ++m) {
            double expect = 0.0;
            for (int i : {0, 3, 5})
                for (int j : {0, 3, 5})
                    for (int k : {0, 3, 5}) {
                        if (i >= n_modes || j >= n_modes || k >= n_modes) continue;
                        expect += static_cast<double>(
                                      cubicwave::modes::interaction_coeff(i, j, k, m)) *
                                  a[static_cast<std::size_t>(i)] *
                                  a[static_cast<std::size_t>(j)] *
                                  a[static_cast<std::size_t>(k)];
                    }
            consistency =
                std::max(consistency, std::abs(nl[static_cast<std::size_t>(m)] - expect));
        }
    }

    // log-log slope of the periodicity error over {2 eps, eps, eps/2}
    std::vector<double> eps_list = {2.0 * epsilon, epsilon, 0.5 * epsilon};
    std::vector<double> errors;
    for (double e : eps_list)
        errors.push_back(pdesim::periodicity_error(state, e, order, n_modes, slope_dt));
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        double x = std::log(eps_list[i]), y = std::log(errors[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double npt = static_cast<double>(eps_list.size());
    double slope = (npt * sxy - sx * sy) / (npt * sxx - sx * sx);

    json doc;
    doc["schema"] = "1";
    doc["epsilon"] = epsilon;
    doc["order"] = order;
    doc["modes"] = n_modes;
    doc["dt"] = dt;
    doc["period"] = T;
    doc["periodicity_error"] = errors[1];
    doc["energy_drift"] = drift;
    doc["nonlinearity_consistency"] = consistency;
    json st;
    st["epsilons"] = eps_list;
    st["errors"] = errors;
    st["dt"] = slope_dt;
    st["slope"] = slope;
    st["expected_slope"] = order + 1;
    doc["slope_test"] = st;
    emit(doc.dump(2) + "\n", out);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"time-periodic solutions of the conformal cubic wave equation: exact "
                 "perturbative engine with ODE and PDE validators"};
    app.require_subcommand(1);

    // ---- coeffs
    auto* coeffs = app.add_subcommand("coeffs", "interaction coefficient table as CSV");
    int coeffs_max = 4;
    std::string coeffs_out;
    coeffs->add_option("--max", coeffs_max, "largest index in each of i,j,k,m")
        ->check(CLI::Range(0, 64));
    coeffs->add_option("--out", coeffs_out, "output file (default stdout)");

    // ---- shifts / expand / residual
    int order = 6, cutoff = 0, max_mode = 6;
    std::vector<std::string> free_data;
    std::string out;

    auto add_expand_opts = [&](CLI::App* cmd, bool with_cutoff) {
        cmd->add_option("--order", order, "expansion order (>= 1)")
            ->required()
            ->check(CLI::PositiveNumber);
        cmd->add_option("--free-data", free_data,
                        "dominant-mode datum per order, e.g. 2=1/2 (repeatable)");
        if (with_cutoff)
            cmd->add_option("--cutoff", cutoff, "fixed mode cutoff (0 = automatic)")
                ->check(CLI::NonNegativeNumber);
        cmd->add_option("--out", out, "output file (default stdout)");
    };

    auto* shifts = app.add_subcommand("shifts", "frequency-shift series as exact rationals");
    add_expand_opts(shifts, false);
    auto* expand = app.add_subcommand("expand", "full expansion as JSON term records");
    add_expand_opts(expand, true);
    auto* residual = app.add_subcommand("residual", "per-order exact residual report");
    add_expand_opts(residual, true);
    residual->add_option("--max-mode", max_mode, "largest mode checked")
        ->check(CLI::Range(0, 64));

    // ---- ode
    auto* ode = app.add_subcommand("ode", "one-mode reduction (Duffing) tools");
    ode->require_subcommand(1);
    double x0 = 0.1, periods = 1.0;
    int quad_points = 64, samples = 1024, series_order = 6;
    std::string ode_out;

    auto* ode_period = ode->add_subcommand("period", "orbit period by quadrature");
    ode_period->add_option("--x0", x0, "initial amplitude (nonzero)")->required();
    ode_period->add_option("--quad-points", quad_points, "quadrature nodes")
        ->check(CLI::PositiveNumber);
    ode_period->add_option("--out", ode_out, "output file (default stdout)");

    auto* ode_orbit = ode->add_subcommand("orbit", "sampled orbit as CSV");
    ode_orbit->add_option("--x0", x0, "initial amplitude (nonzero)")->required();
    ode_orbit->add_option("--periods", periods, "time horizon in periods")
        ->check(CLI::PositiveNumber);
    ode_orbit->add_option("--samples", samples, "approximate CSV row count")
        ->check(CLI::PositiveNumber);
    ode_orbit->add_option("--out", ode_out, "output file (default stdout)");

    auto* ode_verify = ode->add_subcommand("verify", "period oracle cross-check as JSON");
    ode_verify->add_option("--x0", x0, "initial amplitude (nonzero)")->required();
    ode_verify->add_option("--order", series_order, "frequency-series truncation order")
        ->check(CLI::PositiveNumber);
    ode_verify->add_option("--out", ode_out, "output file (default stdout)");

    // ---- pde
    auto* pde = app.add_subcommand("pde", "sine-pseudospectral simulator");
    pde->require_subcommand(1);
    double epsilon = 0.05, dt = 1e-3, t_end = 10.0, slope_dt = 0.0;
    int pde_order = 7, n_modes = 32, stride = 10;
    std::vector<std::string> pde_free_data;
    std::string pde_out;

    auto* pde_sim = pde->add_subcommand("simulate", "evolve truncated initial data, CSV");
    auto* pde_verify = pde->add_subcommand("verify", "periodicity/energy report as JSON");
    pde_sim->add_option("--epsilon", epsilon, "perturbation amplitude (>= 0)")
        ->required()
        ->check(CLI::NonNegativeNumber);
    pde_verify->add_option("--epsilon", epsilon, "perturbation amplitude (> 0)")
        ->required()
        ->check(CLI::PositiveNumber);
    for (CLI::App* cmd : {pde_sim, pde_verify}) {
        cmd->add_option("--order", pde_order, "truncation order of the initial data")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--modes", n_modes, "retained sine modes")
            ->check(CLI::Range(1, 4096));
        cmd->add_option("--dt", dt, "time step")->check(CLI::PositiveNumber);
        cmd->add_option("--free-data", pde_free_data,
                        "dominant-mode datum per order, e.g. 2=1/2 (repeatable)");
        cmd->add_option("--out", pde_out, "output file (default stdout)");
    }
    pde_sim->add_option("--t-end", t_end, "time horizon")->required()
        ->check(CLI::NonNegativeNumber);
    pde_sim->add_option("--stride", stride, "CSV row stride in steps")
        ->check(CLI::PositiveNumber);
    pde_verify->add_option("--slope-dt", slope_dt,
                           "time step for the convergence-slope runs (default --dt)")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (coeffs->parsed()) return cmd_coeffs(coeffs_max, coeffs_out);
        if (shifts->parsed()) return cmd_shifts(order, free_data, out);
        if (expand->parsed()) return cmd_expand(order, free_data, cutoff, out);
        if (residual->parsed()) return cmd_residual(order, free_data, cutoff, max_mode, out);
        if (ode_period->parsed()) {
            if (x0 == 0.0) throw CLI::ValidationError("--x0", "must be nonzero");
            return cmd_ode_period(x0, quad_points, ode_out);
        }
        if (ode_orbit->parsed()) {
            if (x0 == 0.0) throw CLI::ValidationError("--x0", "must be nonzero");
            return cmd_ode_orbit(x0, periods, samples, ode_out);
        }
        if (ode_verify->parsed()) {
            if (x0 == 0.0) throw CLI::ValidationError("--x0", "must be nonzero");
            return cmd_ode_verify(x0, series_order, ode_out);
        }
        if (pde_sim->parsed()) {
            if (dt * n_modes > 2.5)
                throw CLI::ValidationError("--dt", "does not resolve the top mode frequency");
            return cmd_pde_simulate(epsilon, pde_order, n_modes, dt, t_end, pde_free_data,
                                    stride, pde_out);
        }
        if (pde_verify->parsed()) {
            if (dt * n_modes > 2.5)
                throw CLI::ValidationError("--dt", "does not resolve the top mode frequency");
            if (slope_dt <= 0.0) slope_dt = dt;
            return cmd_pde_verify(epsilon, pde_order, n_modes, dt, slope_dt, pde_free_data,
                                  pde_out);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        json err;
        err["schema"] = "1";
        err["error"] = e.what();
        std::cout << err.dump(2) << "\n";
        return kExitComputational;
    }
    return kExitUsage;
}
