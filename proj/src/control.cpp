#include "lpvdd/control.hpp"

#include <stdexcept>
#include <string>

#include "lpvdd/errors.hpp"

namespace lpvdd {

Eigen::MatrixXd SchedulingMap::apply(const Eigen::MatrixXd& u, const Eigen::MatrixXd& y) const {
    if (u.cols() != y.cols()) {
        throw std::invalid_argument("SchedulingMap: input and output sample counts differ");
    }
    Eigen::MatrixXd p(n_p, u.cols());
    for (int k = 0; k < u.cols(); ++k) {
        p.col(k) = map(u.col(k), y.col(k));
    }
    return p;
}

namespace {

/// Hankel blocks of one problem instance; only the restriction operator
/// changes across scheduling iterations.
struct Workspace {
    Eigen::MatrixXd h_ini;     // initial-window rows of the depth-(T_i+T_r) Hankel
    Eigen::MatrixXd h_u;       // response input rows
    Eigen::MatrixXd h_y;       // response output rows
    Eigen::MatrixXd hw_full;   // complete w Hankel
    Eigen::MatrixXd hwp_full;  // complete lifted Hankel
    Eigen::MatrixXd weighted;  // [sqrt(Q) h_y; sqrt(R) h_u]
    Eigen::VectorXd d_ini;     // vec(w_ini)
    int t_i = 0, t_r = 0;
    int n_u = 0, n_y = 0, n_w = 0, n_p = 0;
};

Workspace make_workspace(const DataDictionary& data, const Eigen::MatrixXd& w_ini,
                         const Eigen::MatrixXd& p_ini, int t_r, const Eigen::MatrixXd& q_weight,
                         const Eigen::MatrixXd& r_weight) {
    Workspace ws;
    ws.n_u = data.w.inputs();
    ws.n_y = data.w.outputs();
    ws.n_w = data.w.dim();
    ws.n_p = data.p.dim();
    ws.t_i = static_cast<int>(w_ini.cols());
    ws.t_r = t_r;

    const int total = ws.t_i + ws.t_r;
    if (t_r < 1) {
        throw std::invalid_argument("qp_step: need a response horizon of at least one sample");
    }
    if (total > data.length()) {
        throw std::invalid_argument("qp_step: window length " + std::to_string(total) +
                                    " exceeds the dictionary length " +
                                    std::to_string(data.length()));
    }
    if (ws.t_i > 0 && (w_ini.rows() != ws.n_w || p_ini.rows() != ws.n_p)) {
        throw std::invalid_argument("qp_step: initial window dimensions mismatch");
    }
    if (p_ini.cols() != ws.t_i) {
        throw std::invalid_argument("qp_step: w_ini and p_ini must span the same window");
    }
    if (q_weight.rows() != ws.t_r * ws.n_y || q_weight.cols() != ws.t_r * ws.n_y ||
        r_weight.rows() != ws.t_r * ws.n_u || r_weight.cols() != ws.t_r * ws.n_u) {
        throw std::invalid_argument("qp_step: weight dimensions must match the stacked horizon");
    }

    ws.hw_full = hankel(data.w.samples(), total).entries;
    ws.hwp_full = hankel(kron_lift(data.w.samples(), data.p.samples()), total).entries;

    const int cols = static_cast<int>(ws.hw_full.cols());
    ws.h_ini = ws.hw_full.topRows(ws.t_i * ws.n_w);
    ws.h_u.resize(ws.t_r * ws.n_u, cols);
    ws.h_y.resize(ws.t_r * ws.n_y, cols);
    for (int t = 0; t < ws.t_r; ++t) {
        const int row = (ws.t_i + t) * ws.n_w;
        ws.h_u.middleRows(t * ws.n_u, ws.n_u) = ws.hw_full.middleRows(row, ws.n_u);
        ws.h_y.middleRows(t * ws.n_y, ws.n_y) = ws.hw_full.middleRows(row + ws.n_u, ws.n_y);
    }

    ws.weighted.resize(ws.h_y.rows() + ws.h_u.rows(), cols);
    ws.weighted << matrix_sqrt_psd(q_weight) * ws.h_y, matrix_sqrt_psd(r_weight) * ws.h_u;
    ws.d_ini = ws.t_i > 0 ? vec(w_ini) : Eigen::VectorXd();
    return ws;
}

QpSolution solve_qp(const Workspace& ws, const Eigen::MatrixXd& p_ini,
                    const Eigen::MatrixXd& p_r, double safety) {
    // Equality constraints: initial-window match plus scheduling restriction.
    Eigen::MatrixXd p_full(ws.n_p, ws.t_i + ws.t_r);
    if (ws.t_i > 0) {
        p_full << p_ini, p_r;
    } else {
        p_full = p_r;
    }
    const Eigen::MatrixXd restriction =
        ws.hwp_full - blkdiag_kron(p_full, ws.n_w) * ws.hw_full;

    const int ini_rows = static_cast<int>(ws.h_ini.rows());
    Eigen::MatrixXd constraints(ini_rows + restriction.rows(), ws.hw_full.cols());
    Eigen::VectorXd d(constraints.rows());
    constraints.topRows(ini_rows) = ws.h_ini;
    constraints.bottomRows(restriction.rows()) = restriction;
    if (ini_rows > 0) d.head(ini_rows) = ws.d_ini;
    d.tail(restriction.rows()).setZero();

    const LstsqResult particular = min_norm_lstsq(constraints, d, safety);
    if (particular.residual > 1e-6 * (1.0 + d.norm())) {
        throw InfeasibleProblemError(
            "qp_step: initial trajectory cannot be matched by the data (residual " +
                std::to_string(particular.residual) + ")",
            particular.residual);
    }

    // Minimum-norm optimizer: g = g0 + Z z with g0 orthogonal to kernel(C),
    // z the minimum-norm minimizer of ||weighted (g0 + Z z)||.
    const Eigen::MatrixXd kernel = null_space(constraints, safety);
    Eigen::VectorXd g = particular.x;
    if (kernel.cols() > 0) {
        const LstsqResult z =
            min_norm_lstsq(ws.weighted * kernel, -(ws.weighted * particular.x), safety);
        g += kernel * z.x;
    }

    QpSolution sol;
    sol.g = g;
    sol.u_r = unvec(ws.h_u * g, ws.n_u);
    sol.y_r = unvec(ws.h_y * g, ws.n_y);
    sol.objective = (ws.weighted * g).squaredNorm();
    sol.feasibility_residual = (constraints * g - d).norm() / (1.0 + d.norm());
    const Eigen::VectorXd gradient = 2.0 * (ws.weighted.transpose() * (ws.weighted * g));
    sol.kkt_residual = kernel.cols() > 0
                           ? (kernel.transpose() * gradient).norm() / (1.0 + gradient.norm())
                           : 0.0;
    return sol;
}

}  // namespace

QpSolution qp_step(const DataDictionary& data, const Eigen::MatrixXd& w_ini,
                   const Eigen::MatrixXd& p_ini, const Eigen::MatrixXd& p_r,
                   const Eigen::MatrixXd& q_weight, const Eigen::MatrixXd& r_weight,
                   double safety) {
    const Workspace ws =
        make_workspace(data, w_ini, p_ini, static_cast<int>(p_r.cols()), q_weight, r_weight);
    return solve_qp(ws, p_ini, p_r, safety);
}

ControlResult iterate(const ControlProblem& prob, double safety) {
    if (prob.tol <= 0.0) {
        throw std::invalid_argument("iterate: convergence tolerance must be positive");
    }
    if (prob.max_iter < 1) {
        throw std::invalid_argument("iterate: max_iter must be >= 1");
    }
    if (!prob.psi.map) {
        throw std::invalid_argument("iterate: the problem needs a scheduling map");
    }

    const Workspace ws = make_workspace(prob.data, prob.w_ini, prob.p_ini, prob.horizon,
                                        prob.q_weight, prob.r_weight);
    Eigen::MatrixXd p_r = prob.p_r_init.size() > 0
                              ? prob.p_r_init
                              : Eigen::MatrixXd::Zero(ws.n_p, prob.horizon);
    if (p_r.rows() != ws.n_p || p_r.cols() != prob.horizon) {
        throw std::invalid_argument("iterate: p_r_init must be n_p x T_r");
    }

    ControlResult result;
    for (int n = 1; n <= prob.max_iter; ++n) {
        const QpSolution sol = solve_qp(ws, prob.p_ini, p_r, safety);
        const Eigen::MatrixXd p_next = prob.psi.apply(sol.u_r, sol.y_r);
        const double p_change = (p_next - p_r).norm();

        result.u_r = sol.u_r;
        result.y_r = sol.y_r;
        result.p_r = p_next;
        result.iterations = n;
        result.history.push_back({sol.u_r, sol.y_r, p_next, sol.objective, p_change});

        p_r = p_next;
        if (p_change < prob.tol) {
            result.converged = true;
            break;
        }
    }
    return result;
}

}  // namespace lpvdd
