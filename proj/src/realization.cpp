#include "lpvdd/realization.hpp"

#include <stdexcept>
#include <string>

#include "lpvdd/errors.hpp"
#include "lpvdd/hankel.hpp"
#include "lpvdd/rng.hpp"

namespace lpvdd {

StructuredSs structured_split(const LpvSsModel& ss, const LpvIoModel& model) {
    const int n_y = model.outputs();
    const int n_u = model.inputs();
    const int n_p = model.scheduling_dim();
    const int n_r = model.shift_degree();
    const int n_x = n_y * n_r;
    if (ss.n_x != n_x || ss.n_u != n_u || ss.n_y != n_y || ss.n_p != n_p) {
        throw std::invalid_argument("structured_split: state-space and IO model dimensions differ");
    }

    StructuredSs s;
    s.n_x = n_x;
    s.n_u = n_u;
    s.n_y = n_y;
    s.n_p = n_p;

    s.A0 = Eigen::MatrixXd::Zero(n_x, n_x);
    s.Ap = Eigen::MatrixXd::Zero(n_x, n_p * n_y);
    s.B0 = Eigen::MatrixXd::Zero(n_x, n_u);
    s.Bp = Eigen::MatrixXd::Zero(n_x, n_p * n_u);
    s.Bpp = Eigen::MatrixXd::Zero(n_x, n_p * n_p * n_u);
    s.C = Eigen::MatrixXd::Zero(n_y, n_x);
    s.C.leftCols(n_y) = Eigen::MatrixXd::Identity(n_y, n_y);
    s.D0 = model.b_coeff(0, 0);
    s.Dp = Eigen::MatrixXd::Zero(n_y, n_p * n_u);
    for (int j = 1; j <= n_p; ++j) {
        s.Dp.middleCols((j - 1) * n_u, n_u) = model.b_coeff(0, j);
    }

    for (int i = 1; i <= n_r; ++i) {
        const int r = (i - 1) * n_y;
        s.A0.block(r, 0, n_y, n_y) = -model.a_coeff(i, 0);
        if (i < n_r) s.A0.block(r, i * n_y, n_y, n_y) = Eigen::MatrixXd::Identity(n_y, n_y);
        s.B0.block(r, 0, n_y, n_u) =
            model.b_coeff(i, 0) - model.a_coeff(i, 0) * model.b_coeff(0, 0);
        for (int j = 1; j <= n_p; ++j) {
            s.Ap.block(r, (j - 1) * n_y, n_y, n_y) = -model.a_coeff(i, j);
            // The p_j u coefficient of b_i(p) - a_i(p) b_0(p): the cross terms
            // with the feedthrough stay in Bp, the bilinear remainder in Bpp.
            s.Bp.block(r, (j - 1) * n_u, n_y, n_u) =
                model.b_coeff(i, j) - model.a_coeff(i, 0) * model.b_coeff(0, j) -
                model.a_coeff(i, j) * model.b_coeff(0, 0);
            for (int l = 1; l <= n_p; ++l) {
                s.Bpp.block(r, ((j - 1) * n_p + (l - 1)) * n_u, n_y, n_u) =
                    -model.a_coeff(i, j) * model.b_coeff(0, l);
            }
        }
    }

    Eigen::MatrixXd i_kron_d0 = Eigen::MatrixXd::Zero(n_p * n_y, n_p * n_u);
    for (int j = 0; j < n_p; ++j) {
        i_kron_d0.block(j * n_y, j * n_u, n_y, n_u) = s.D0;
    }
    s.Bp_tilde = s.Bp - s.Ap * i_kron_d0;
    // I (x) Dp maps p (x) p (x) u: block j applies Dp to p_j * (p (x) u).
    Eigen::MatrixXd i_kron_dp = Eigen::MatrixXd::Zero(n_p * n_y, n_p * n_p * n_u);
    for (int j = 0; j < n_p; ++j) {
        i_kron_dp.block(j * n_y, j * n_p * n_u, n_y, n_p * n_u) = s.Dp;
    }
    s.Bpp_tilde = s.Bpp - s.Ap * i_kron_dp;

    // Consistency with the realization at a fixed scheduling point.
    Rng probe(0x5eed);
    Eigen::VectorXd p_probe(n_p);
    for (int j = 0; j < n_p; ++j) p_probe(j) = probe.uniform(-1.0, 1.0);
    const Eigen::MatrixXd a_probe = ss.A.eval(p_probe);
    Eigen::MatrixXd a_built = s.A0;
    for (int j = 0; j < n_p; ++j) {
        a_built.leftCols(n_y) += p_probe(j) * s.Ap.middleCols(j * n_y, n_y);
    }
    if ((a_probe - a_built).norm() > 1e-9 * (1.0 + a_probe.norm())) {
        throw std::invalid_argument("structured_split: state-space model is not the companion "
                                    "realization of the given IO model");
    }
    return s;
}

SsSimResult simulate_structured(const StructuredSs& s, const Eigen::MatrixXd& u,
                                const Eigen::MatrixXd& p, const Eigen::VectorXd& x0) {
    if (x0.size() != s.n_x || u.rows() != s.n_u || p.rows() != s.n_p || u.cols() != p.cols()) {
        throw std::invalid_argument("simulate_structured: dimension mismatch");
    }
    const int horizon = static_cast<int>(u.cols());
    SsSimResult out;
    out.y.resize(s.n_y, horizon);
    out.x.resize(s.n_x, horizon + 1);
    out.x.col(0) = x0;
    for (int k = 0; k < horizon; ++k) {
        const Eigen::VectorXd pk = p.col(k);
        const Eigen::VectorXd uk = u.col(k);
        const Eigen::VectorXd x1 = out.x.col(k).head(s.n_y);
        const Eigen::VectorXd pu = kron_lift(uk, pk);
        const Eigen::VectorXd px1 = kron_lift(x1, pk);
        const Eigen::VectorXd ppu = kron_lift(pu, pk);
        out.y.col(k) = s.C * out.x.col(k) + s.D0 * uk + s.Dp * pu;
        out.x.col(k + 1) = s.A0 * out.x.col(k) + s.B0 * uk + s.Ap * px1 + s.Bp * pu + s.Bpp * ppu;
    }
    return out;
}

HorizonMatrices horizon_matrices(const StructuredSs& s, int depth) {
    if (depth < 1) {
        throw std::invalid_argument("horizon_matrices: depth must be >= 1");
    }
    const int n_y = s.n_y, n_u = s.n_u, n_p = s.n_p, n_x = s.n_x;

    // Powers C A0^t for t = 0..depth-1.
    std::vector<Eigen::MatrixXd> ca(depth);
    ca[0] = s.C;
    for (int t = 1; t < depth; ++t) ca[t] = ca[t - 1] * s.A0;

    HorizonMatrices h;
    h.depth = depth;
    h.O.resize(depth * n_y, n_x);
    h.T = Eigen::MatrixXd::Zero(depth * n_y, depth * n_u);
    h.Op = Eigen::MatrixXd::Zero(depth * n_y, depth * n_p * n_y);
    h.Tp = Eigen::MatrixXd::Zero(depth * n_y, depth * n_p * n_u);
    h.Tpp = Eigen::MatrixXd::Zero(depth * n_y, depth * n_p * n_p * n_u);

    for (int t = 0; t < depth; ++t) {
        h.O.middleRows(t * n_y, n_y) = ca[t];
        h.T.block(t * n_y, t * n_u, n_y, n_u) = s.D0;
        h.Tp.block(t * n_y, t * n_p * n_u, n_y, n_p * n_u) = s.Dp;
        for (int q = 0; q < t; ++q) {
            const Eigen::MatrixXd& caq = ca[t - q - 1];
            h.T.block(t * n_y, q * n_u, n_y, n_u) = caq * s.B0;
            h.Op.block(t * n_y, q * n_p * n_y, n_y, n_p * n_y) = caq * s.Ap;
            h.Tp.block(t * n_y, q * n_p * n_u, n_y, n_p * n_u) = caq * s.Bp_tilde;
            h.Tpp.block(t * n_y, q * n_p * n_p * n_u, n_y, n_p * n_p * n_u) =
                caq * s.Bpp_tilde;
        }
    }
    return h;
}

Eigen::MatrixXd behavior_basis(const LpvIoModel& model, const Eigen::MatrixXd& p_window) {
    if (p_window.rows() != model.scheduling_dim()) {
        throw std::invalid_argument("behavior_basis: scheduling window has dimension " +
                                    std::to_string(p_window.rows()) + ", expected " +
                                    std::to_string(model.scheduling_dim()));
    }
    const int depth = static_cast<int>(p_window.cols());
    const StructuredSs s = structured_split(realize_ss(model), model);
    const HorizonMatrices h = horizon_matrices(s, depth);
    const int n_u = s.n_u, n_y = s.n_y, n_x = s.n_x;
    const int n_w = n_u + n_y;

    const Eigen::MatrixXd p_ny = blkdiag_kron(p_window, n_y);
    const Eigen::MatrixXd p_nu = blkdiag_kron(p_window, n_u);
    const Eigen::MatrixXd p_nunp = blkdiag_kron(p_window, n_u * s.n_p);

    const Eigen::MatrixXd q = h.T + h.Tp * p_nu + h.Tpp * p_nunp * p_nu;
    // Unit lower-triangular by the strictly-lower structure of Op.
    const Eigen::MatrixXd m =
        Eigen::MatrixXd::Identity(depth * n_y, depth * n_y) - h.Op * p_ny;

    Eigen::MatrixXd y_rows(depth * n_y, n_x + depth * n_u);
    y_rows << h.O, q;
    m.triangularView<Eigen::Lower>().solveInPlace(y_rows);

    // Interleave input and output rows back into time-major w order.
    Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(depth * n_w, n_x + depth * n_u);
    for (int t = 0; t < depth; ++t) {
        basis.block(t * n_w, n_x + t * n_u, n_u, n_u) =
            Eigen::MatrixXd::Identity(n_u, n_u);
        basis.middleRows(t * n_w + n_u, n_y) = y_rows.middleRows(t * n_y, n_y);
    }
    return basis;
}

int observability_rank(const StructuredSs& s, int depth, double safety) {
    return numeric_rank(horizon_matrices(s, depth).O, safety).rank;
}

Eigen::VectorXd initial_state(const LpvIoModel& model, const Eigen::MatrixXd& w_window,
                              const Eigen::MatrixXd& p_window, double consistency_tol) {
    const int n_u = model.inputs();
    const int n_y = model.outputs();
    const int len = static_cast<int>(w_window.cols());
    if (w_window.rows() != n_u + n_y || p_window.rows() != model.scheduling_dim() ||
        p_window.cols() != len) {
        throw std::invalid_argument("initial_state: window dimensions do not match the model");
    }
    if (len < model.complexity().lag) {
        throw std::invalid_argument("initial_state: window spans " + std::to_string(len) +
                                    " samples but the lag is " +
                                    std::to_string(model.complexity().lag));
    }

    const StructuredSs s = structured_split(realize_ss(model), model);
    const HorizonMatrices h = horizon_matrices(s, len);

    const Eigen::VectorXd u_vec = vec(w_window.topRows(n_u));
    const Eigen::VectorXd y_vec = vec(w_window.bottomRows(n_y));
    const Eigen::MatrixXd p_ny = blkdiag_kron(p_window, n_y);
    const Eigen::MatrixXd p_nu = blkdiag_kron(p_window, n_u);
    const Eigen::MatrixXd p_nunp = blkdiag_kron(p_window, n_u * s.n_p);

    const Eigen::MatrixXd q = h.T + h.Tp * p_nu + h.Tpp * p_nunp * p_nu;
    const Eigen::VectorXd rhs = y_vec - h.Op * (p_ny * y_vec) - q * u_vec;

    const LstsqResult sol = min_norm_lstsq(h.O, rhs);
    if (sol.residual > consistency_tol * (1.0 + rhs.norm())) {
        throw InconsistentWindowError(
            "initial_state: window is inconsistent with the model (residual " +
                std::to_string(sol.residual) + ")",
            sol.residual);
    }

    // Propagate to the sample after the window: stacked block rows
    // [A0^{len-1} Ap, ..., Ap] etc. applied to the lifted window signals.
    Eigen::MatrixXd a_blocks(s.n_x, len * s.n_p * n_y);
    Eigen::MatrixXd b_blocks(s.n_x, len * n_u);
    Eigen::MatrixXd bp_blocks(s.n_x, len * s.n_p * n_u);
    Eigen::MatrixXd bpp_blocks(s.n_x, len * s.n_p * s.n_p * n_u);
    Eigen::MatrixXd a_pow = Eigen::MatrixXd::Identity(s.n_x, s.n_x);
    for (int l = len - 1; l >= 0; --l) {
        a_blocks.middleCols(l * s.n_p * n_y, s.n_p * n_y) = a_pow * s.Ap;
        b_blocks.middleCols(l * n_u, n_u) = a_pow * s.B0;
        bp_blocks.middleCols(l * s.n_p * n_u, s.n_p * n_u) = a_pow * s.Bp_tilde;
        bpp_blocks.middleCols(l * s.n_p * s.n_p * n_u, s.n_p * s.n_p * n_u) =
            a_pow * s.Bpp_tilde;
        a_pow = s.A0 * a_pow;
    }
    // a_pow now holds A0^len.
    return a_pow * sol.x + a_blocks * (p_ny * y_vec) + b_blocks * u_vec +
           bp_blocks * (p_nu * u_vec) + bpp_blocks * (p_nunp * (p_nu * u_vec));
}

}  // namespace lpvdd
