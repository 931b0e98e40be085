#pragma once

#include <Eigen/Dense>

#include "lpvdd/model.hpp"
#include "lpvdd/rng.hpp"

namespace lpvdd::test {

/// Independent oracle: largest pointwise violation of the IO relation
///   y(k) + sum_i a_i(p(k-i)) y(k-i) - sum_j b_j(p(k-j)) u(k-j)
/// over every time step whose lags stay inside the window. Evaluates the
/// relation directly instead of replaying the simulator recursion.
inline double max_io_residual(const LpvIoModel& model, const Eigen::MatrixXd& u,
                              const Eigen::MatrixXd& y, const Eigen::MatrixXd& p) {
    const int n_r = model.shift_degree();
    const int len = static_cast<int>(y.cols());
    double worst = 0.0;
    for (int k = n_r; k < len; ++k) {
        Eigen::VectorXd r = y.col(k);
        for (int i = 1; i <= model.a_degree(); ++i) {
            r += model.a_eval(i, p.col(k - i)) * y.col(k - i);
        }
        for (int j = 0; j <= model.b_degree(); ++j) {
            r -= model.b_eval(j, p.col(k - j)) * u.col(k - j);
        }
        worst = std::max(worst, r.cwiseAbs().maxCoeff());
    }
    return worst;
}

inline Eigen::MatrixXd random_matrix(Rng& rng, int rows, int cols, double lo = -1.0,
                                     double hi = 1.0) {
    Eigen::MatrixXd m(rows, cols);
    for (int c = 0; c < cols; ++c) {
        for (int r = 0; r < rows; ++r) m(r, c) = rng.uniform(lo, hi);
    }
    return m;
}

inline InitWindow random_init(Rng& rng, const LpvIoModel& model, double scale = 1.0) {
    const int len = model.shift_degree();
    InitWindow w;
    w.u = scale * random_matrix(rng, model.inputs(), len);
    w.y = scale * random_matrix(rng, model.outputs(), len);
    w.p = random_matrix(rng, model.scheduling_dim(), len);
    return w;
}

}  // namespace lpvdd::test
