#include "lpvdd/ddrep.hpp"

#include <stdexcept>
#include <string>

namespace lpvdd {

DataDictionary::DataDictionary(Trajectory w_, SchedulingTrajectory p_, std::string provenance_,
                               std::uint64_t seed_)
    : w(std::move(w_)), p(std::move(p_)), provenance(std::move(provenance_)), seed(seed_) {
    if (w.length() != p.length()) {
        throw std::invalid_argument("DataDictionary: w spans " + std::to_string(w.length()) +
                                    " samples but p spans " + std::to_string(p.length()));
    }
    if (w.length() < 1) {
        throw std::invalid_argument("DataDictionary: need at least one sample");
    }
    if (w.start_index() != p.start_index()) {
        throw std::invalid_argument("DataDictionary: w and p start indices differ");
    }
}

DataDictionary DataDictionary::truncated(int count) const {
    return DataDictionary(w.segment(0, count), p.segment(0, count), provenance, seed);
}

DdRepresentation::DdRepresentation(const DataDictionary& data, int depth, double safety)
    : depth_(depth),
      n_u_(data.w.inputs()),
      n_y_(data.w.outputs()),
      n_p_(data.p.dim()) {
    if (depth < 1 || depth > data.length()) {
        throw std::invalid_argument("DdRepresentation: depth " + std::to_string(depth) +
                                    " exceeds the dictionary length " +
                                    std::to_string(data.length()));
    }
    hw_ = hankel(data.w.samples(), depth);
    hwp_ = hankel(kron_lift(data.w.samples(), data.p.samples()), depth);
    stacked_.resize(hw_.rows() + hwp_.rows(), hw_.cols());
    stacked_ << hw_.entries, hwp_.entries;
    stacked_rank_ = numeric_rank(stacked_, safety);
}

RankCheck gpe_check(const DdRepresentation& rep, const Complexity& c, double safety) {
    RankCheck out;
    const int n_w = rep.inputs() + rep.outputs();
    out.required = c.order + (c.m + rep.scheduling_dim() * n_w) * rep.depth();
    const RankInfo info =
        safety == rank_safety() ? rep.stacked_rank() : numeric_rank(rep.stacked(), safety);
    out.rank = info.rank;
    out.gap = info.gap;
    out.over_rank = out.rank > out.required;
    out.holds = out.rank == out.required;
    return out;
}

int min_samples(const Complexity& c, int n_p, int n_w, int depth) {
    return (1 + n_w * n_p + c.m) * depth + c.order - 1;
}

Eigen::MatrixXd restriction_kernel(const DdRepresentation& rep, const Eigen::MatrixXd& p_query,
                                   double safety) {
    if (p_query.cols() != rep.depth()) {
        throw std::invalid_argument("restriction_kernel: scheduling window spans " +
                                    std::to_string(p_query.cols()) + " samples, expected " +
                                    std::to_string(rep.depth()));
    }
    if (p_query.rows() != rep.scheduling_dim()) {
        throw std::invalid_argument("restriction_kernel: scheduling dimension mismatch");
    }
    const int n_w = rep.inputs() + rep.outputs();
    const Eigen::MatrixXd restriction =
        rep.hwp().entries - blkdiag_kron(p_query, n_w) * rep.hw().entries;
    return null_space(restriction, safety);
}

RankCheck restricted_image_rank(const DdRepresentation& rep, const Eigen::MatrixXd& p_query,
                                const Complexity& c, double safety) {
    RankCheck out;
    out.required = c.order + c.m * rep.depth();
    const Eigen::MatrixXd np = restriction_kernel(rep, p_query, safety);
    const RankInfo info = numeric_rank(rep.hw().entries * np, safety);
    out.rank = info.rank;
    out.gap = info.gap;
    out.over_rank = out.rank > out.required;
    out.holds = out.rank == out.required;
    return out;
}

namespace {

PeCheck pe_check_impl(const DataDictionary& data, const Complexity& c, int depth,
                      bool with_outputs, double safety) {
    const int ext_depth = depth + c.order;
    if (ext_depth > data.length()) {
        throw std::invalid_argument("excitation check: depth " + std::to_string(ext_depth) +
                                    " exceeds the dictionary length " +
                                    std::to_string(data.length()));
    }
    const Eigen::MatrixXd u = data.w.input_samples();
    const Eigen::MatrixXd up = kron_lift(u, data.p.samples());
    const HankelMatrix hu = hankel(u, ext_depth);
    const HankelMatrix hup = hankel(up, ext_depth);

    PeCheck out;
    const int n_p = data.p.dim();
    if (!with_outputs) {
        Eigen::MatrixXd stacked(hu.rows() + hup.rows(), hu.cols());
        stacked << hu.entries, hup.entries;
        out.rank = numeric_rank(stacked, safety).rank;
        out.bound = c.m * (1 + n_p) * (c.order + depth);
    } else {
        const Eigen::MatrixXd yp = kron_lift(data.w.output_samples(), data.p.samples());
        const HankelMatrix hyp = hankel(yp, ext_depth);
        Eigen::MatrixXd stacked(hu.rows() + hup.rows() + hyp.rows(), hu.cols());
        stacked << hu.entries, hup.entries, hyp.entries;
        out.rank = numeric_rank(stacked, safety).rank;
        const int n_w = data.w.dim();
        out.bound = (c.m + n_w * n_p) * (c.order + depth);
    }
    out.holds = out.rank == out.bound;
    return out;
}

}  // namespace

PeCheck naive_input_pe_check(const DataDictionary& data, const Complexity& c, int depth,
                             double safety) {
    return pe_check_impl(data, c, depth, false, safety);
}

PeCheck embedded_pe_check(const DataDictionary& data, const Complexity& c, int depth,
                          double safety) {
    return pe_check_impl(data, c, depth, true, safety);
}

}  // namespace lpvdd
