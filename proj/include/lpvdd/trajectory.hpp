#pragma once

#include <Eigen/Dense>
#include <optional>

namespace lpvdd {

/// Time-indexed manifest signal w = col(u, y). Samples are stored as columns;
/// the first column carries time index `start_index` (1-based convention at
/// the interface). Immutable after construction.
class Trajectory {
public:
    Trajectory(Eigen::MatrixXd samples, int n_u, int n_y, int start_index = 1);

    int length() const { return static_cast<int>(samples_.cols()); }
    int dim() const { return static_cast<int>(samples_.rows()); }
    int inputs() const { return n_u_; }
    int outputs() const { return n_y_; }
    int start_index() const { return start_index_; }

    const Eigen::MatrixXd& samples() const { return samples_; }
    Eigen::MatrixXd input_samples() const { return samples_.topRows(n_u_); }
    Eigen::MatrixXd output_samples() const { return samples_.bottomRows(n_y_); }

    /// Restriction to `count` samples starting at column `offset` (0-based);
    /// the time index of the result is shifted accordingly.
    Trajectory segment(int offset, int count) const;

private:
    Eigen::MatrixXd samples_;
    int n_u_ = 0;
    int n_y_ = 0;
    int start_index_ = 1;
};

/// Scheduling signal p, optionally constrained to a box P = [lo, hi]^n_p.
class SchedulingTrajectory {
public:
    explicit SchedulingTrajectory(Eigen::MatrixXd samples, int start_index = 1);
    SchedulingTrajectory(Eigen::MatrixXd samples, Eigen::VectorXd box_lo,
                         Eigen::VectorXd box_hi, int start_index = 1);

    int length() const { return static_cast<int>(samples_.cols()); }
    int dim() const { return static_cast<int>(samples_.rows()); }
    int start_index() const { return start_index_; }
    const Eigen::MatrixXd& samples() const { return samples_; }
    bool has_box() const { return box_lo_.has_value(); }

    SchedulingTrajectory segment(int offset, int count) const;

private:
    Eigen::MatrixXd samples_;
    int start_index_ = 1;
    std::optional<Eigen::VectorXd> box_lo_;
    std::optional<Eigen::VectorXd> box_hi_;
};

/// Concatenation: a's samples followed by b's. Dimensions and the IO split
/// must agree; the result keeps a's start index.
Trajectory concat(const Trajectory& a, const Trajectory& b);
SchedulingTrajectory concat(const SchedulingTrajectory& a, const SchedulingTrajectory& b);

}  // namespace lpvdd
