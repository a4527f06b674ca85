#ifndef GASINAR_OPTIM_HPP
#define GASINAR_OPTIM_HPP

#include <functional>
#include <vector>

namespace gasinar::optim {

using Objective = std::function<double(const std::vector<double>&)>;
using Matrix = std::vector<std::vector<double>>;

struct SimplexOptions {
    int max_iter = 2000;
    double tol = 1e-9;  // convergence when the simplex objective spread falls below this
};

struct SimplexResult {
    std::vector<double> x;
    double fx = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Derivative-free Nelder-Mead simplex search, maximizing f. Non-finite
// objective values are treated as -inf so the simplex backs away from them.
SimplexResult maximize(const Objective& f, const std::vector<double>& x0,
                       const SimplexOptions& options = {});

// Central-difference Hessian with per-coordinate step h_i = step_scale * (1 + |x_i|).
Matrix numerical_hessian(const Objective& f, const std::vector<double>& x,
                         double step_scale = 1e-4);

// Cholesky factor of a symmetric positive definite matrix; false when the
// matrix is not positive definite. An all-zero matrix yields a zero factor.
bool cholesky(const Matrix& a, Matrix& lower);

// Inverse through the Cholesky factor; ok = false when not positive definite.
Matrix invert_spd(const Matrix& a, bool& ok);

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);

// Upper tail of the chi-square distribution with integer df.
double chi2_survival(double x, int df);

}  // namespace gasinar::optim

#endif
