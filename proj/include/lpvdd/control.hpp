#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "lpvdd/ddrep.hpp"

namespace lpvdd {

/// Static map from a manifest sample (u(k), y(k)) to the scheduling value
/// p(k); the mechanism that embeds a nonlinear system in LPV form.
struct SchedulingMap {
    std::string name;
    int n_p = 0;
    std::function<Eigen::VectorXd(const Eigen::VectorXd& u, const Eigen::VectorXd& y)> map;

    Eigen::MatrixXd apply(const Eigen::MatrixXd& u, const Eigen::MatrixXd& y) const;
};

/// Receding trajectory optimization over the data-driven representation with a
/// scheduling iteration: solve the equality-constrained QP for fixed p_r, then
/// update p_r through the scheduling map until it converges.
struct ControlProblem {
    DataDictionary data;
    Eigen::MatrixXd w_ini;    // n_w x T_i
    Eigen::MatrixXd p_ini;    // n_p x T_i
    int horizon = 0;          // T_r
    Eigen::MatrixXd q_weight; // (T_r n_y) x (T_r n_y), symmetric PSD
    Eigen::MatrixXd r_weight; // (T_r n_u) x (T_r n_u), symmetric PSD
    SchedulingMap psi;
    Eigen::MatrixXd p_r_init; // n_p x T_r; zero when empty
    double tol = 1e-6;
    int max_iter = 50;
};

struct QpSolution {
    Eigen::MatrixXd u_r;  // n_u x T_r
    Eigen::MatrixXd y_r;  // n_y x T_r
    Eigen::VectorXd g;
    double objective = 0.0;
    double kkt_residual = 0.0;          // projected-gradient stationarity, relative
    double feasibility_residual = 0.0;  // equality-constraint mismatch
};

/// One quadratic-program step for a fixed response scheduling p_r:
/// minimize vec(y_r)' Q vec(y_r) + vec(u_r)' R vec(u_r) over g subject to the
/// initial-window rows and the scheduling restriction rows. Throws
/// InfeasibleProblemError when the initial trajectory cannot be matched.
QpSolution qp_step(const DataDictionary& data, const Eigen::MatrixXd& w_ini,
                   const Eigen::MatrixXd& p_ini, const Eigen::MatrixXd& p_r,
                   const Eigen::MatrixXd& q_weight, const Eigen::MatrixXd& r_weight,
                   double safety = rank_safety());

struct ControlIterate {
    Eigen::MatrixXd u_r, y_r, p_r;
    double objective = 0.0;
    double p_change = 0.0;  // ||p_r^{n-1} - p_r^n||_2 over the stacked window
};

struct ControlResult {
    Eigen::MatrixXd u_r, y_r, p_r;
    int iterations = 0;
    bool converged = false;
    std::vector<ControlIterate> history;
};

/// Runs the scheduling iteration to convergence (p change below tol) or
/// max_iter; hitting max_iter yields converged = false rather than an error.
ControlResult iterate(const ControlProblem& prob, double safety = rank_safety());

}  // namespace lpvdd
