#pragma once

#include <Eigen/Dense>

#include "lpvdd/model.hpp"
#include "lpvdd/numeric.hpp"

namespace lpvdd {

/// Companion realization split into scheduling-independent and
/// scheduling-dependent parts:
///
///   x(k+1) = A0 x + B0 u + Ap (p (x) x_1) + Bp (p (x) u) + Bpp (p (x) p (x) u)
///   y(k)   = C x + D0 u + Dp (p (x) u)
///
/// with x_1 = y - b_0(p) u the first state block. Bp_tilde and Bpp_tilde
/// rewrite the update in terms of p (x) y instead of p (x) x_1:
/// Bp_tilde = Bp - Ap (I (x) D0), Bpp_tilde = Bpp - Ap (I (x) Dp).
struct StructuredSs {
    Eigen::MatrixXd A0;        // n_x x n_x
    Eigen::MatrixXd Ap;        // n_x x (n_p n_y)
    Eigen::MatrixXd B0;        // n_x x n_u
    Eigen::MatrixXd Bp;        // n_x x (n_p n_u)
    Eigen::MatrixXd Bpp;       // n_x x (n_p^2 n_u)
    Eigen::MatrixXd C;         // n_y x n_x
    Eigen::MatrixXd D0;        // n_y x n_u
    Eigen::MatrixXd Dp;        // n_y x (n_p n_u)
    Eigen::MatrixXd Bp_tilde;  // n_x x (n_p n_u)
    Eigen::MatrixXd Bpp_tilde; // n_x x (n_p^2 n_u)
    int n_x = 0, n_u = 0, n_y = 0, n_p = 0;
};

/// Splits the companion realization of `model`. The passed `ss` must be the
/// realization of the same model; it is cross-checked at a random scheduling
/// point.
StructuredSs structured_split(const LpvSsModel& ss, const LpvIoModel& model);

/// Runs the split recursion directly (independent route for cross-checks).
SsSimResult simulate_structured(const StructuredSs& s, const Eigen::MatrixXd& u,
                                const Eigen::MatrixXd& p, const Eigen::VectorXd& x0);

/// Finite-horizon response matrices: vec(y) = O x0 + T vec(u) + Op vec(y^p)
///                                           + Tp vec(u^p) + Tpp vec(u^pp).
struct HorizonMatrices {
    Eigen::MatrixXd O;    // (L n_y) x n_x         rows C A0^t
    Eigen::MatrixXd T;    // (L n_y) x (L n_u)     Toeplitz in (C A0^t B0, D0)
    Eigen::MatrixXd Op;   // (L n_y) x (L n_p n_y) strictly lower, C A0^t Ap
    Eigen::MatrixXd Tp;   // (L n_y) x (L n_p n_u) Toeplitz in (C A0^t Bp_tilde, Dp)
    Eigen::MatrixXd Tpp;  // (L n_y) x (L n_p^2 n_u) strictly lower, C A0^t Bpp_tilde
    int depth = 0;
};

HorizonMatrices horizon_matrices(const StructuredSs& s, int depth);

/// Basis of the w windows compatible with the scheduling window p (n_p x L),
/// with rows in time-major w = col(u, y) order. Column count n_x + n_u * L;
/// the column span has dimension order + m * L exactly when L >= lag.
Eigen::MatrixXd behavior_basis(const LpvIoModel& model, const Eigen::MatrixXd& p_window);

int observability_rank(const StructuredSs& s, int depth, double safety = rank_safety());

/// Recovers the state at the sample following a length-T window (w, p) of the
/// model, T >= lag. Throws InconsistentWindowError when the window does not
/// satisfy the model relations to `consistency_tol` (relative).
Eigen::VectorXd initial_state(const LpvIoModel& model, const Eigen::MatrixXd& w_window,
                              const Eigen::MatrixXd& p_window,
                              double consistency_tol = 1e-6);

}  // namespace lpvdd
