#pragma once

#include <Eigen/Dense>
#include <vector>

namespace lpvdd {

/// Invariants of a behavior: number of inputs m, minimal lag, minimal state
/// order. All rank bounds are computed from this triple.
struct Complexity {
    int m = 0;
    int lag = 1;
    int order = 1;
};

/// Matrix-valued function of the scheduling value: constant + linear
/// coefficients, plus an optional quadratic part (only the B matrix of a
/// realization with scheduling-dependent feedthrough needs it).
class PMatrix {
public:
    PMatrix() = default;
    PMatrix(Eigen::MatrixXd constant, std::vector<Eigen::MatrixXd> linear);
    PMatrix(Eigen::MatrixXd constant, std::vector<Eigen::MatrixXd> linear,
            std::vector<std::vector<Eigen::MatrixXd>> quadratic);

    Eigen::MatrixXd eval(const Eigen::VectorXd& p) const;

    const Eigen::MatrixXd& constant() const { return constant_; }
    const std::vector<Eigen::MatrixXd>& linear() const { return linear_; }
    bool has_quadratic() const { return !quadratic_.empty(); }
    const std::vector<std::vector<Eigen::MatrixXd>>& quadratic() const { return quadratic_; }
    int scheduling_dim() const { return static_cast<int>(linear_.size()); }
    Eigen::Index rows() const { return constant_.rows(); }
    Eigen::Index cols() const { return constant_.cols(); }

private:
    Eigen::MatrixXd constant_;
    std::vector<Eigen::MatrixXd> linear_;
    std::vector<std::vector<Eigen::MatrixXd>> quadratic_;
};

/// Input-output model
///
///   y(k) + sum_{i=1..n_a} a_i(p(k-i)) y(k-i) = sum_{j=0..n_b} b_j(p(k-j)) u(k-j)
///
/// with affine coefficient functions a_i(p) = a[i][0] + sum_j p_j a[i][j]
/// (and likewise b). The leading coefficient is normalized to a_0 = I.
class LpvIoModel {
public:
    /// a[i][j] for i = 0..n_a, j = 0..n_p (each n_y x n_y);
    /// b[i][j] for i = 0..n_b (each n_y x n_u).
    LpvIoModel(std::vector<std::vector<Eigen::MatrixXd>> a,
               std::vector<std::vector<Eigen::MatrixXd>> b, Complexity complexity);

    int inputs() const { return n_u_; }
    int outputs() const { return n_y_; }
    int scheduling_dim() const { return n_p_; }
    int a_degree() const { return n_a_; }
    int b_degree() const { return n_b_; }
    int shift_degree() const { return std::max(n_a_, n_b_); }  // n_r
    const Complexity& complexity() const { return complexity_; }

    /// Coefficient tensor entries; i up to the respective degree, j = 0 is the
    /// constant part. Out-of-range i returns a zero block.
    const Eigen::MatrixXd& a_coeff(int i, int j) const;
    const Eigen::MatrixXd& b_coeff(int i, int j) const;

    Eigen::MatrixXd a_eval(int i, const Eigen::VectorXd& p) const;
    Eigen::MatrixXd b_eval(int i, const Eigen::VectorXd& p) const;

private:
    std::vector<std::vector<Eigen::MatrixXd>> a_;
    std::vector<std::vector<Eigen::MatrixXd>> b_;
    int n_u_ = 0, n_y_ = 0, n_p_ = 0, n_a_ = 0, n_b_ = 0;
    Complexity complexity_;
    Eigen::MatrixXd zero_a_, zero_b_;
};

/// Past window used to start an IO simulation; the last column is the sample
/// immediately before the first simulated step.
struct InitWindow {
    Eigen::MatrixXd u;  // n_u x T
    Eigen::MatrixXd y;  // n_y x T
    Eigen::MatrixXd p;  // n_p x T

    int length() const { return static_cast<int>(y.cols()); }

    static InitWindow zero(int n_u, int n_y, int n_p, int len);
};

/// Runs the IO recursion; returns the outputs (n_y x T) for inputs u (n_u x T)
/// and scheduling p (n_p x T). The init window must span at least
/// max(n_a, n_b) samples.
Eigen::MatrixXd simulate_io(const LpvIoModel& model, const Eigen::MatrixXd& u,
                            const Eigen::MatrixXd& p, const InitWindow& init);

/// State-space model x(k+1) = A(p(k)) x(k) + B(p(k)) u(k),
/// y(k) = C(p(k)) x(k) + D(p(k)) u(k), with static scheduling dependence.
struct LpvSsModel {
    PMatrix A, B, C, D;
    int n_x = 0, n_u = 0, n_y = 0, n_p = 0;
};

struct SsSimResult {
    Eigen::MatrixXd y;  // n_y x T
    Eigen::MatrixXd x;  // n_x x (T+1); column T is the post-horizon state
};

SsSimResult simulate_ss(const LpvSsModel& ss, const Eigen::MatrixXd& u,
                        const Eigen::MatrixXd& p, const Eigen::VectorXd& x0);

/// Companion-form realization of the IO model: n_x = n_y * max(n_a, n_b),
/// C = [I 0 ... 0], D(p) = b_0(p). States follow the shift construction
/// x_1 = y - b_0(p) u.
LpvSsModel realize_ss(const LpvIoModel& model);

/// State of the companion realization at the sample following the given past
/// window (the init mapping that makes simulate_ss continue simulate_io).
Eigen::VectorXd state_from_past(const LpvIoModel& model, const InitWindow& init);

}  // namespace lpvdd
