#include "gasinar/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace gasinar::optim {

namespace {

constexpr double kWorstObjective = -std::numeric_limits<double>::infinity();

double safe_eval(const Objective& f, const std::vector<double>& x) {
    const double v = f(x);
    return std::isfinite(v) ? v : kWorstObjective;
}

}  // namespace

SimplexResult maximize(const Objective& f, const std::vector<double>& x0,
                       const SimplexOptions& options) {
    const std::size_t n = x0.size();
    if (n == 0) throw std::invalid_argument("simplex search needs at least one coordinate");

    // Standard coefficients: reflection 1, expansion 2, contraction 1/2, shrink 1/2.
    const double rho = 1.0, chi = 2.0, gamma = 0.5, sigma = 0.5;

    std::vector<std::vector<double>> simplex(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i) {
        simplex[i + 1][i] += std::max(0.1, 0.1 * std::abs(x0[i]));
    }
    std::vector<double> fvals(n + 1);
    for (std::size_t i = 0; i <= n; ++i) fvals[i] = safe_eval(f, simplex[i]);

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), trial(n), trial2(n);

    SimplexResult result;
    int iter = 0;
    for (; iter < options.max_iter; ++iter) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return fvals[a] > fvals[b]; });

        const double best = fvals[order.front()];
        const double worst = fvals[order.back()];
        if (std::isfinite(worst) && best - worst < options.tol * (1.0 + std::abs(best))) {
            result.converged = true;
            break;
        }

        // Centroid of all vertices but the worst.
        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[order[r]][j];
        }
        for (double& c : centroid) c /= static_cast<double>(n);

        const std::size_t worst_idx = order.back();
        const std::size_t second_worst_idx = order[n - 1];

        for (std::size_t j = 0; j < n; ++j) {
            trial[j] = centroid[j] + rho * (centroid[j] - simplex[worst_idx][j]);
        }
        const double f_reflect = safe_eval(f, trial);

        if (f_reflect > fvals[order.front()]) {
            for (std::size_t j = 0; j < n; ++j) {
                trial2[j] = centroid[j] + chi * (trial[j] - centroid[j]);
            }
            const double f_expand = safe_eval(f, trial2);
            if (f_expand > f_reflect) {
                simplex[worst_idx] = trial2;
                fvals[worst_idx] = f_expand;
            } else {
                simplex[worst_idx] = trial;
                fvals[worst_idx] = f_reflect;
            }
            continue;
        }
        if (f_reflect > fvals[second_worst_idx]) {
            simplex[worst_idx] = trial;
            fvals[worst_idx] = f_reflect;
            continue;
        }

        if (f_reflect > fvals[worst_idx]) {
            // Outside contraction.
            for (std::size_t j = 0; j < n; ++j) {
                trial2[j] = centroid[j] + gamma * (trial[j] - centroid[j]);
            }
            const double f_contract = safe_eval(f, trial2);
            if (f_contract >= f_reflect) {
                simplex[worst_idx] = trial2;
                fvals[worst_idx] = f_contract;
                continue;
            }
        } else {
            // Inside contraction.
            for (std::size_t j = 0; j < n; ++j) {
                trial2[j] = centroid[j] - gamma * (centroid[j] - simplex[worst_idx][j]);
            }
            const double f_contract = safe_eval(f, trial2);
            if (f_contract > fvals[worst_idx]) {
                simplex[worst_idx] = trial2;
                fvals[worst_idx] = f_contract;
                continue;
            }
        }

        // Shrink towards the best vertex.
        const std::size_t best_idx = order.front();
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == best_idx) continue;
            for (std::size_t j = 0; j < n; ++j) {
                simplex[i][j] = simplex[best_idx][j] + sigma * (simplex[i][j] - simplex[best_idx][j]);
            }
            fvals[i] = safe_eval(f, simplex[i]);
        }
    }

    const std::size_t best = static_cast<std::size_t>(
        std::max_element(fvals.begin(), fvals.end()) - fvals.begin());
    result.x = simplex[best];
    result.fx = fvals[best];
    result.iterations = iter;
    return result;
}

Matrix numerical_hessian(const Objective& f, const std::vector<double>& x, double step_scale) {
    const std::size_t n = x.size();
    std::vector<double> h(n);
    for (std::size_t i = 0; i < n; ++i) h[i] = step_scale * (1.0 + std::abs(x[i]));

    Matrix hess(n, std::vector<double>(n, 0.0));
    const double f0 = f(x);
    std::vector<double> p(x);
    for (std::size_t i = 0; i < n; ++i) {
        p = x;
        p[i] = x[i] + h[i];
        const double fp = f(p);
        p[i] = x[i] - h[i];
        const double fm = f(p);
        hess[i][i] = (fp - 2.0 * f0 + fm) / (h[i] * h[i]);
        for (std::size_t j = i + 1; j < n; ++j) {
            p = x;
            p[i] = x[i] + h[i];
            p[j] = x[j] + h[j];
            const double fpp = f(p);
            p[j] = x[j] - h[j];
            const double fpm = f(p);
            p[i] = x[i] - h[i];
            const double fmm = f(p);
            p[j] = x[j] + h[j];
            const double fmp = f(p);
            hess[i][j] = hess[j][i] = (fpp - fpm - fmp + fmm) / (4.0 * h[i] * h[j]);
        }
    }
    return hess;
}

bool cholesky(const Matrix& a, Matrix& lower) {
    const std::size_t n = a.size();
    lower.assign(n, std::vector<double>(n, 0.0));
    bool all_zero = true;
    for (const auto& row : a) {
        for (double v : row) {
            if (v != 0.0) all_zero = false;
        }
    }
    if (all_zero) return true;

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double sum = a[i][j];
            for (std::size_t k = 0; k < j; ++k) sum -= lower[i][k] * lower[j][k];
            if (i == j) {
                if (!(sum > 0.0)) return false;
                lower[i][i] = std::sqrt(sum);
            } else {
                lower[i][j] = sum / lower[j][j];
            }
        }
    }
    return true;
}

Matrix invert_spd(const Matrix& a, bool& ok) {
    const std::size_t n = a.size();
    Matrix lower;
    ok = cholesky(a, lower);
    Matrix inv(n, std::vector<double>(n, 0.0));
    if (!ok) return inv;

    // Solve L L^T X = I column by column.
    std::vector<double> y(n), z(n);
    for (std::size_t col = 0; col < n; ++col) {
        for (std::size_t i = 0; i < n; ++i) {
            double sum = (i == col) ? 1.0 : 0.0;
            for (std::size_t k = 0; k < i; ++k) sum -= lower[i][k] * y[k];
            if (lower[i][i] == 0.0) {
                ok = false;
                return Matrix(n, std::vector<double>(n, 0.0));
            }
            y[i] = sum / lower[i][i];
        }
        for (std::size_t i = n; i-- > 0;) {
            double sum = y[i];
            for (std::size_t k = i + 1; k < n; ++k) sum -= lower[k][i] * z[k];
            z[i] = sum / lower[i][i];
        }
        for (std::size_t i = 0; i < n; ++i) inv[i][col] = z[i];
    }
    return inv;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    const std::size_t rows = a.size();
    const std::size_t inner = b.size();
    const std::size_t cols = inner ? b[0].size() : 0;
    Matrix out(rows, std::vector<double>(cols, 0.0));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t k = 0; k < inner; ++k) {
            const double aik = a[i][k];
            for (std::size_t j = 0; j < cols; ++j) out[i][j] += aik * b[k][j];
        }
    }
    return out;
}

Matrix transpose(const Matrix& a) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    Matrix out(cols, std::vector<double>(rows, 0.0));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) out[j][i] = a[i][j];
    }
    return out;
}

double chi2_survival(double x, int df) {
    if (df < 1) throw std::invalid_argument("chi-square df must be positive");
    if (x <= 0.0) return 1.0;
    const double half = x / 2.0;
    if (df % 2 == 0) {
        // Closed form: exp(-x/2) * sum_{j<df/2} (x/2)^j / j!
        double term = 1.0;
        double sum = 1.0;
        for (int j = 1; j < df / 2; ++j) {
            term *= half / j;
            sum += term;
        }
        return std::exp(-half) * sum;
    }
    // Odd df: erfc(sqrt(x/2)) plus the even-style correction terms.
    double sf = std::erfc(std::sqrt(half));
    double term = std::sqrt(half) / std::sqrt(std::acos(-1.0)) * 2.0 * std::exp(-half);
    for (int j = 1; j <= (df - 1) / 2; ++j) {
        sf += term;
        term *= half / (static_cast<double>(j) + 0.5);
    }
    return std::min(1.0, sf);
}

}  // namespace gasinar::optim
