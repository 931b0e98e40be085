#include "lpvdd/simulate.hpp"

#include <stdexcept>
#include <string>

#include "lpvdd/rng.hpp"

namespace lpvdd {

namespace {

struct SimSystem {
    Eigen::MatrixXd lhs;       // stacked constraint matrix acting on g
    Eigen::VectorXd rhs;       // [vec(w_ini); vec(u_r); 0]
    Eigen::MatrixXd h_y_resp;  // response-output Hankel rows
};

SimSystem assemble(const SimProblem& prob) {
    const int n_w = prob.data.w.dim();
    const int n_u = prob.data.w.inputs();
    const int n_y = prob.data.w.outputs();
    const int n_p = prob.data.p.dim();
    const int t_i = prob.t_ini();
    const int t_r = prob.t_resp();
    const int total = t_i + t_r;
    const int n_d = prob.data.length();

    if (t_r < 1) {
        throw std::invalid_argument("dd_simulate: need at least one response sample");
    }
    if (total > n_d) {
        throw std::invalid_argument("dd_simulate: window length " + std::to_string(total) +
                                    " exceeds the dictionary length " + std::to_string(n_d));
    }
    if (prob.w_ini.rows() != n_w && t_i > 0) {
        throw std::invalid_argument("dd_simulate: w_ini dimension mismatch");
    }
    if (prob.p_ini.cols() != t_i) {
        throw std::invalid_argument("dd_simulate: p_ini must span the initial window");
    }
    if (prob.u_r.rows() != n_u || prob.p_r.rows() != n_p || prob.p_r.cols() != t_r) {
        throw std::invalid_argument("dd_simulate: response signal dimensions mismatch");
    }

    const int cols = n_d - total + 1;
    const Eigen::MatrixXd& w = prob.data.w.samples();
    const Eigen::MatrixXd u = prob.data.w.input_samples();

    // Scheduling over the whole window fixes the restriction operator.
    Eigen::MatrixXd p_full(n_p, total);
    if (t_i > 0) {
        p_full << prob.p_ini, prob.p_r;
    } else {
        p_full = prob.p_r;
    }

    const HankelMatrix hw_full = hankel(w, total);
    const HankelMatrix hwp_full = hankel(kron_lift(w, prob.data.p.samples()), total);
    const Eigen::MatrixXd restriction =
        hwp_full.entries - blkdiag_kron(p_full, n_w) * hw_full.entries;

    SimSystem sys;
    const int ini_rows = t_i * n_w;
    const int u_rows = t_r * n_u;
    sys.lhs.resize(ini_rows + u_rows + restriction.rows(), cols);
    sys.rhs.resize(ini_rows + u_rows + restriction.rows());

    if (t_i > 0) {
        sys.lhs.topRows(ini_rows) = hankel(w.leftCols(n_d - t_r), t_i).entries;
        sys.rhs.head(ini_rows) = vec(prob.w_ini);
    }
    sys.lhs.middleRows(ini_rows, u_rows) = hankel(u.rightCols(n_d - t_i), t_r).entries;
    sys.rhs.segment(ini_rows, u_rows) = vec(prob.u_r);
    sys.lhs.bottomRows(restriction.rows()) = restriction;
    sys.rhs.tail(restriction.rows()).setZero();

    sys.h_y_resp =
        hankel(prob.data.w.output_samples().rightCols(n_d - t_i), t_r).entries;
    return sys;
}

}  // namespace

SimResult dd_simulate(const SimProblem& prob, double safety, double consistency_tol) {
    const SimSystem sys = assemble(prob);

    SimResult out;
    const LstsqResult sol = min_norm_lstsq(sys.lhs, sys.rhs, safety);
    out.g = sol.x;
    out.residual = sol.residual;
    out.consistent = sol.residual <= consistency_tol * (1.0 + sys.rhs.norm());
    out.y_r = unvec(sys.h_y_resp * out.g, prob.data.w.outputs());

    // The response is unique iff the output rows annihilate the solution
    // set's null directions.
    const Eigen::MatrixXd kernel = null_space(sys.lhs, safety);
    if (kernel.cols() == 0) {
        out.uniqueness = Uniqueness::unique;
        out.output_freedom = 0;
    } else {
        const RankInfo freedom = numeric_rank(sys.h_y_resp * kernel, safety);
        out.output_freedom = freedom.rank;
        out.uniqueness = freedom.rank == 0 ? Uniqueness::unique : Uniqueness::non_unique;
    }
    return out;
}

std::vector<Eigen::MatrixXd> solution_samples(const SimProblem& prob, int count,
                                              std::uint64_t seed, double safety) {
    if (count < 1) {
        throw std::invalid_argument("solution_samples: count must be >= 1");
    }
    const SimSystem sys = assemble(prob);
    const LstsqResult sol = min_norm_lstsq(sys.lhs, sys.rhs, safety);
    const Eigen::MatrixXd kernel = null_space(sys.lhs, safety);
    const int n_y = prob.data.w.outputs();

    if (kernel.cols() == 0 || numeric_rank(sys.h_y_resp * kernel, safety).rank == 0) {
        throw std::invalid_argument("solution_samples: the response is unique");
    }

    std::vector<Eigen::MatrixXd> samples;
    samples.reserve(static_cast<size_t>(count));
    samples.push_back(unvec(sys.h_y_resp * sol.x, n_y));

    Rng rng(seed);
    for (int s = 1; s < count; ++s) {
        Eigen::VectorXd z(kernel.cols());
        for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = rng.normal();
        const Eigen::VectorXd g = sol.x + kernel * z;
        samples.push_back(unvec(sys.h_y_resp * g, n_y));
    }
    return samples;
}

}  // namespace lpvdd
