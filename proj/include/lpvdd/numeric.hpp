#pragma once

#include <Eigen/Dense>

namespace lpvdd {

/// Safety factor applied on top of the machine-epsilon rank cutoff.
/// Defaults to 1e3; override with the LPVDD_RANK_SAFETY environment variable.
double rank_safety();

struct RankInfo {
    int rank = 0;
    double tolerance = 0.0;
    /// Ratio sigma[rank-1] / sigma[rank]; +inf when the tail is exactly zero
    /// or the matrix has full rank.
    double gap = 0.0;
    Eigen::VectorXd singular_values;
};

/// Numeric rank: sigma_i counts iff sigma_i > max(rows, cols) * sigma_max * eps * safety.
RankInfo numeric_rank(const Eigen::MatrixXd& m, double safety = rank_safety());

/// Orthonormal basis of the null space (right singular vectors past the rank).
/// Zero columns when the kernel is trivial.
Eigen::MatrixXd null_space(const Eigen::MatrixXd& m, double safety = rank_safety());

struct LstsqResult {
    Eigen::VectorXd x;       // minimum-norm least-squares solution
    double residual = 0.0;   // ||a x - b||_2
    int rank = 0;
};

LstsqResult min_norm_lstsq(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                           double safety = rank_safety());

Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& m, double safety = rank_safety());

/// Largest principal angle (radians) between the column spans of a and b.
double max_principal_angle(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                           double safety = rank_safety());

/// Symmetric PSD square root; small negative eigenvalues are clipped to zero.
Eigen::MatrixXd matrix_sqrt_psd(const Eigen::MatrixXd& m);

/// Stacks the columns of a sample block (n x N) into a single vector,
/// sample 1 on top.
Eigen::VectorXd vec(const Eigen::MatrixXd& samples);

/// Inverse of vec(): reshapes a stacked vector back into an (n x N) block.
Eigen::MatrixXd unvec(const Eigen::VectorXd& v, int rows);

}  // namespace lpvdd
