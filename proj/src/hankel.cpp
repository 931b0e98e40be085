#include "lpvdd/hankel.hpp"

#include <stdexcept>
#include <string>

namespace lpvdd {

HankelMatrix hankel(const Eigen::MatrixXd& samples, int depth) {
    const int n = static_cast<int>(samples.rows());
    const int len = static_cast<int>(samples.cols());
    if (depth < 1) {
        throw std::invalid_argument("hankel: depth must be >= 1, got " + std::to_string(depth));
    }
    if (depth > len) {
        throw std::invalid_argument("hankel: depth " + std::to_string(depth) +
                                    " exceeds the available " + std::to_string(len) +
                                    " samples");
    }
    HankelMatrix h;
    h.depth = depth;
    h.block_rows = n;
    h.entries.resize(depth * n, len - depth + 1);
    for (int i = 0; i < depth; ++i) {
        h.entries.middleRows(i * n, n) = samples.middleCols(i, len - depth + 1);
    }
    return h;
}

HankelMatrix hankel(const Trajectory& traj, int depth) { return hankel(traj.samples(), depth); }

Eigen::MatrixXd kron_lift(const Eigen::MatrixXd& w, const Eigen::MatrixXd& p) {
    if (w.cols() != p.cols()) {
        throw std::invalid_argument("kron_lift: signal has " + std::to_string(w.cols()) +
                                    " samples but scheduling has " + std::to_string(p.cols()));
    }
    const int n_w = static_cast<int>(w.rows());
    const int n_p = static_cast<int>(p.rows());
    Eigen::MatrixXd lifted(n_p * n_w, w.cols());
    for (int k = 0; k < w.cols(); ++k) {
        for (int i = 0; i < n_p; ++i) {
            lifted.block(i * n_w, k, n_w, 1) = p(i, k) * w.col(k);
        }
    }
    return lifted;
}

Eigen::MatrixXd kron_lift(const Trajectory& w, const SchedulingTrajectory& p) {
    if (w.start_index() != p.start_index()) {
        throw std::invalid_argument("kron_lift: start indices differ (" +
                                    std::to_string(w.start_index()) + " vs " +
                                    std::to_string(p.start_index()) + ")");
    }
    return kron_lift(w.samples(), p.samples());
}

Eigen::MatrixXd blkdiag_kron(const Eigen::MatrixXd& p, int n) {
    if (p.cols() < 1) {
        throw std::invalid_argument("blkdiag_kron: empty scheduling window");
    }
    if (n < 1) {
        throw std::invalid_argument("blkdiag_kron: block size must be >= 1");
    }
    const int n_p = static_cast<int>(p.rows());
    const int len = static_cast<int>(p.cols());
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(len * n_p * n, len * n);
    for (int k = 0; k < len; ++k) {
        for (int i = 0; i < n_p; ++i) {
            out.block(k * n_p * n + i * n, k * n, n, n) =
                p(i, k) * Eigen::MatrixXd::Identity(n, n);
        }
    }
    return out;
}

Eigen::MatrixXd blkdiag_kron(const SchedulingTrajectory& p, int n) {
    return blkdiag_kron(p.samples(), n);
}

std::vector<int> lifted_row_permutation(int depth, int n_w, int n_p) {
    // Combined signal col(w, p (x) w) has (1 + n_p)*n_w rows per time block.
    const int block = (1 + n_p) * n_w;
    std::vector<int> perm(depth * block);
    for (int t = 0; t < depth; ++t) {
        for (int r = 0; r < n_w; ++r) {
            perm[t * n_w + r] = t * block + r;
        }
        for (int r = 0; r < n_p * n_w; ++r) {
            perm[depth * n_w + t * n_p * n_w + r] = t * block + n_w + r;
        }
    }
    return perm;
}

}  // namespace lpvdd
