#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "lpvdd/hankel.hpp"
#include "lpvdd/model.hpp"
#include "lpvdd/numeric.hpp"
#include "lpvdd/trajectory.hpp"

namespace lpvdd {

/// A single recorded (w, p) trajectory; the sole input of every data-driven
/// operation.
struct DataDictionary {
    Trajectory w;
    SchedulingTrajectory p;
    std::string provenance;
    std::uint64_t seed = 0;

    DataDictionary(Trajectory w_, SchedulingTrajectory p_, std::string provenance_ = {},
                   std::uint64_t seed_ = 0);

    int length() const { return w.length(); }

    /// Dictionary restricted to its first `count` samples.
    DataDictionary truncated(int count) const;
};

/// Finite-horizon data-driven representation: the depth-L Hankel matrices of w
/// and of the lifted signal p (x) w, with the rank diagnostics of their stack
/// cached at construction.
class DdRepresentation {
public:
    DdRepresentation(const DataDictionary& data, int depth, double safety = rank_safety());

    const HankelMatrix& hw() const { return hw_; }
    const HankelMatrix& hwp() const { return hwp_; }
    const Eigen::MatrixXd& stacked() const { return stacked_; }
    const RankInfo& stacked_rank() const { return stacked_rank_; }

    int depth() const { return depth_; }
    int cols() const { return hw_.cols(); }
    int inputs() const { return n_u_; }
    int outputs() const { return n_y_; }
    int scheduling_dim() const { return n_p_; }

private:
    HankelMatrix hw_;
    HankelMatrix hwp_;
    Eigen::MatrixXd stacked_;
    RankInfo stacked_rank_;
    int depth_ = 0;
    int n_u_ = 0, n_y_ = 0, n_p_ = 0;
};

struct RankCheck {
    int rank = 0;
    int required = 0;
    bool holds = false;
    /// Measured rank above `required`: wrong declared complexity or corrupted
    /// data; never silently accepted.
    bool over_rank = false;
    double gap = 0.0;
};

/// Rank test of the stacked representation against
/// required = order + (m + n_p * n_w) * depth.
RankCheck gpe_check(const DdRepresentation& rep, const Complexity& c,
                    double safety = rank_safety());

/// Smallest dictionary length that can satisfy the rank test:
/// (1 + n_w * n_p + m) * depth + order - 1.
int min_samples(const Complexity& c, int n_p, int n_w, int depth);

/// Orthonormal basis of kernel(Hwp - P^{n_w} Hw) for the queried scheduling
/// window (n_p x L). Zero columns when the kernel is trivial.
Eigen::MatrixXd restriction_kernel(const DdRepresentation& rep,
                                   const Eigen::MatrixXd& p_query,
                                   double safety = rank_safety());

/// Rank of Hw * restriction_kernel vs required = order + m * depth.
RankCheck restricted_image_rank(const DdRepresentation& rep, const Eigen::MatrixXd& p_query,
                                const Complexity& c, double safety = rank_safety());

struct PeCheck {
    int rank = 0;
    int bound = 0;
    bool holds = false;
};

/// Input-only excitation test: rank of the stacked depth-(L + order) Hankel
/// matrices of u and u^p against m (1 + n_p)(order + L). Satisfying it does
/// NOT guarantee a valid representation; kept for diagnostic comparison.
PeCheck naive_input_pe_check(const DataDictionary& data, const Complexity& c, int depth,
                             double safety = rank_safety());

/// Excitation test on the embedded inputs (u, u^p, y^p) against
/// (m + n_w * n_p)(order + L); the conclusive counterpart of the naive test.
PeCheck embedded_pe_check(const DataDictionary& data, const Complexity& c, int depth,
                          double safety = rank_safety());

}  // namespace lpvdd
