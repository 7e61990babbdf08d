#include "cubicwave/modes.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace cubicwave::modes {

double eigen_eval(int m, double psi) {
    if (m < 0) throw std::invalid_argument("mode index must be >= 0");
    if (psi < 0.0 || psi > std::numbers::pi)
        throw std::domain_error("eigen_eval: psi outside [0, pi]");
    return std::sin((m + 1) * psi);
}

double chebyshev_u_eval(int n, double y) {
    if (n < 0) throw std::invalid_argument("degree must be >= 0");
    if (y < -1.0 || y > 1.0) throw std::domain_error("chebyshev_u_eval: y outside [-1, 1]");
    double u0 = 1.0, u1 = 2.0 * y;
    if (n == 0) return u0;
    for (int r = 2; r <= n; ++r) {
        double u2 = 2.0 * y * u1 - u0;
        u0 = u1;
        u1 = u2;
    }
    return u1;
}

std::int64_t interaction_coeff(int i, int j, int k, int m) {
    if (i < 0 || j < 0 || k < 0 || m < 0)
        throw std::invalid_argument("mode indices must be >= 0");
    if (i > j) std::swap(i, j);
    if (k > m) std::swap(k, m);
    std::int64_t target = static_cast<std::int64_t>(m - k) - (j - i);
    if (target % 2 != 0) return 0;
    std::int64_t count = 0;
    for (int alpha = 0; alpha <= i; ++alpha)
        for (int beta = 0; beta <= k; ++beta)
            if (2 * static_cast<std::int64_t>(alpha - beta) == target) ++count;
    return count;
}

std::int64_t interaction_coeff_stepped(int i, int j, int k, int m) {
    if (i < 0 || j < 0 || k < 0 || m < 0)
        throw std::invalid_argument("mode indices must be >= 0");
    if (i > j) std::swap(i, j);
    if (k > m) std::swap(k, m);
    std::int64_t count = 0;
    for (int p = j - i; p <= j + i; p += 2)
        for (int q = m - k; q <= m + k; q += 2)
            if (p == q) ++count;
    return count;
}

double interaction_coeff_quadrature(int i, int j, int k, int m) {
    if (i < 0 || j < 0 || k < 0 || m < 0)
        throw std::invalid_argument("mode indices must be >= 0");
    // Gauss-Chebyshev second kind with n nodes integrates
    // int_-1^1 f(y) sqrt(1-y^2) dy exactly for deg f <= 2n-1.
    int degree = i + j + k + m;
    int n = degree / 2 + 2;
    const double pi = std::numbers::pi;
    double sum = 0.0;
    for (int r = 1; r <= n; ++r) {
        double theta = r * pi / (n + 1);
        double y = std::cos(theta);
        double s = std::sin(theta);
        double w = pi / (n + 1) * s * s;
        sum += w * chebyshev_u_eval(i, y) * chebyshev_u_eval(j, y) * chebyshev_u_eval(k, y) *
               chebyshev_u_eval(m, y);
    }
    return 2.0 / pi * sum;
}

std::int64_t InteractionTable::operator()(int i, int j, int k, int m) const {
    if (i > j) std::swap(i, j);
    if (k > m) std::swap(k, m);
    Key key{i, j, k, m};
    {
        std::shared_lock lock(mutex_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
    }
    std::int64_t value = interaction_coeff(i, j, k, m);
    std::unique_lock lock(mutex_);
    return cache_.emplace(key, value).first->second;
}

}  // namespace cubicwave::modes
