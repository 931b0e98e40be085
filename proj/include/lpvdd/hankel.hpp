#pragma once

#include <Eigen/Dense>
#include <vector>

#include "lpvdd/trajectory.hpp"

namespace lpvdd {

/// Block Hankel matrix of depth L built from an (n x N) sample block:
///
///   [ s(1)  s(2)  ...  s(N-L+1) ]
///   [ s(2)  s(3)  ...  s(N-L+2) ]
///   [  :     :    ...     :     ]
///   [ s(L)  s(L+1) ...  s(N)    ]
struct HankelMatrix {
    Eigen::MatrixXd entries;  // (L*n) x (N-L+1)
    int depth = 0;            // L
    int block_rows = 0;       // n

    int cols() const { return static_cast<int>(entries.cols()); }
    int rows() const { return static_cast<int>(entries.rows()); }

    /// Block at block-row i (0-based) and column j: sample i+j+1 of the source.
    Eigen::MatrixXd block(int i, int j) const {
        return entries.block(i * block_rows, j, block_rows, 1);
    }
};

HankelMatrix hankel(const Eigen::MatrixXd& samples, int depth);
HankelMatrix hankel(const Trajectory& traj, int depth);

/// Pointwise Kronecker lift: sample k of the result is p(k) (x) w(k), laid out
/// p-major (block i of size n_w equals p_i(k) * w(k)).
Eigen::MatrixXd kron_lift(const Eigen::MatrixXd& w, const Eigen::MatrixXd& p);
Eigen::MatrixXd kron_lift(const Trajectory& w, const SchedulingTrajectory& p);

/// Block-diagonal Kronecker operator blkdiag(p(1) (x) I_n, ..., p(N) (x) I_n),
/// size (N*n_p*n) x (N*n). Satisfies vec(kron_lift(w, p)) = blkdiag_kron(p, n_w) * vec(w).
Eigen::MatrixXd blkdiag_kron(const Eigen::MatrixXd& p, int n);
Eigen::MatrixXd blkdiag_kron(const SchedulingTrajectory& p, int n);

/// Row permutation relating the stacked pair [hankel(w, L); hankel(kron_lift(w, p), L)]
/// to the Hankel matrix of the combined signal col(w, p (x) w): row i of the
/// stacked form equals row perm[i] of the combined-signal Hankel matrix.
std::vector<int> lifted_row_permutation(int depth, int n_w, int n_p);

}  // namespace lpvdd
