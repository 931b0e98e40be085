#include "lpvdd/trajectory.hpp"

#include <stdexcept>
#include <string>

namespace lpvdd {

Trajectory::Trajectory(Eigen::MatrixXd samples, int n_u, int n_y, int start_index)
    : samples_(std::move(samples)), n_u_(n_u), n_y_(n_y), start_index_(start_index) {
    if (n_u_ < 0 || n_y_ < 1) {
        throw std::invalid_argument("Trajectory: need n_u >= 0 and n_y >= 1, got n_u=" +
                                    std::to_string(n_u_) + ", n_y=" + std::to_string(n_y_));
    }
    if (samples_.rows() != n_u_ + n_y_) {
        throw std::invalid_argument("Trajectory: sample dimension " +
                                    std::to_string(samples_.rows()) +
                                    " does not match n_u + n_y = " +
                                    std::to_string(n_u_ + n_y_));
    }
}

Trajectory Trajectory::segment(int offset, int count) const {
    if (offset < 0 || count < 0 || offset + count > length()) {
        throw std::invalid_argument("Trajectory::segment: window [" +
                                    std::to_string(start_index_ + offset) + ", " +
                                    std::to_string(start_index_ + offset + count - 1) +
                                    "] exceeds the stored interval [" +
                                    std::to_string(start_index_) + ", " +
                                    std::to_string(start_index_ + length() - 1) + "]");
    }
    return Trajectory(samples_.middleCols(offset, count), n_u_, n_y_, start_index_ + offset);
}

SchedulingTrajectory::SchedulingTrajectory(Eigen::MatrixXd samples, int start_index)
    : samples_(std::move(samples)), start_index_(start_index) {
    if (samples_.rows() < 1) {
        throw std::invalid_argument("SchedulingTrajectory: need n_p >= 1");
    }
}

SchedulingTrajectory::SchedulingTrajectory(Eigen::MatrixXd samples, Eigen::VectorXd box_lo,
                                           Eigen::VectorXd box_hi, int start_index)
    : SchedulingTrajectory(std::move(samples), start_index) {
    if (box_lo.size() != samples_.rows() || box_hi.size() != samples_.rows()) {
        throw std::invalid_argument("SchedulingTrajectory: box bounds must have dimension n_p");
    }
    for (int k = 0; k < length(); ++k) {
        for (int i = 0; i < dim(); ++i) {
            if (samples_(i, k) < box_lo(i) || samples_(i, k) > box_hi(i)) {
                throw std::invalid_argument(
                    "SchedulingTrajectory: sample at time " +
                    std::to_string(start_index_ + k) + " leaves the scheduling box");
            }
        }
    }
    box_lo_ = std::move(box_lo);
    box_hi_ = std::move(box_hi);
}

SchedulingTrajectory SchedulingTrajectory::segment(int offset, int count) const {
    if (offset < 0 || count < 0 || offset + count > length()) {
        throw std::invalid_argument("SchedulingTrajectory::segment: window exceeds interval [" +
                                    std::to_string(start_index_) + ", " +
                                    std::to_string(start_index_ + length() - 1) + "]");
    }
    SchedulingTrajectory out(samples_.middleCols(offset, count), start_index_ + offset);
    out.box_lo_ = box_lo_;
    out.box_hi_ = box_hi_;
    return out;
}

Trajectory concat(const Trajectory& a, const Trajectory& b) {
    if (a.dim() != b.dim() || a.inputs() != b.inputs() || a.outputs() != b.outputs()) {
        throw std::invalid_argument("concat: trajectories have mismatched dimensions (" +
                                    std::to_string(a.inputs()) + "+" +
                                    std::to_string(a.outputs()) + " vs " +
                                    std::to_string(b.inputs()) + "+" +
                                    std::to_string(b.outputs()) + ")");
    }
    Eigen::MatrixXd joined(a.dim(), a.length() + b.length());
    joined << a.samples(), b.samples();
    return Trajectory(std::move(joined), a.inputs(), a.outputs(), a.start_index());
}

SchedulingTrajectory concat(const SchedulingTrajectory& a, const SchedulingTrajectory& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("concat: scheduling dimensions differ (" +
                                    std::to_string(a.dim()) + " vs " +
                                    std::to_string(b.dim()) + ")");
    }
    Eigen::MatrixXd joined(a.dim(), a.length() + b.length());
    joined << a.samples(), b.samples();
    return SchedulingTrajectory(std::move(joined), a.start_index());
}

}  // namespace lpvdd
