#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "lpvdd/ddrep.hpp"

namespace lpvdd {

/// Data-driven simulation problem: continue an initial trajectory of length
/// T_i with the response to an input-scheduling pair of length T_r, using only
/// the dictionary. T_i = 0 means no initial constraint (free initial state).
struct SimProblem {
    DataDictionary data;
    Eigen::MatrixXd w_ini;  // n_w x T_i
    Eigen::MatrixXd p_ini;  // n_p x T_i
    Eigen::MatrixXd u_r;    // n_u x T_r
    Eigen::MatrixXd p_r;    // n_p x T_r

    int t_ini() const { return static_cast<int>(w_ini.cols()); }
    int t_resp() const { return static_cast<int>(u_r.cols()); }
};

enum class Uniqueness { unique, non_unique };

struct SimResult {
    Eigen::MatrixXd y_r;   // n_y x T_r
    Eigen::VectorXd g;     // minimum-norm coefficient vector, length N_d - (T_i + T_r) + 1
    double residual = 0.0; // 2-norm of the linear-system mismatch
    bool consistent = true;
    Uniqueness uniqueness = Uniqueness::unique;
    /// Dimension of the output-side freedom of the solution set (0 when unique).
    int output_freedom = 0;
};

/// Solves the dictionary-based simulation system in the minimum-norm
/// least-squares sense and reads the response outputs off the stored-output
/// Hankel rows. A positive residual (an inconsistent problem, e.g. data that
/// cannot represent the behavior) is reported, not fatal.
SimResult dd_simulate(const SimProblem& prob, double safety = rank_safety(),
                      double consistency_tol = 1e-6);

/// Distinct valid responses of a non-unique problem: the minimum-norm
/// continuation first, then perturbations of g along the solution set's null
/// directions. Throws when the problem is unique.
std::vector<Eigen::MatrixXd> solution_samples(const SimProblem& prob, int count,
                                              std::uint64_t seed = 1,
                                              double safety = rank_safety());

}  // namespace lpvdd
