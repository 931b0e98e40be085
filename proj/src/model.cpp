#include "lpvdd/model.hpp"

#include <stdexcept>
#include <string>

namespace lpvdd {

PMatrix::PMatrix(Eigen::MatrixXd constant, std::vector<Eigen::MatrixXd> linear)
    : constant_(std::move(constant)), linear_(std::move(linear)) {
    for (const auto& m : linear_) {
        if (m.rows() != constant_.rows() || m.cols() != constant_.cols()) {
            throw std::invalid_argument("PMatrix: coefficient size mismatch");
        }
    }
}

PMatrix::PMatrix(Eigen::MatrixXd constant, std::vector<Eigen::MatrixXd> linear,
                 std::vector<std::vector<Eigen::MatrixXd>> quadratic)
    : PMatrix(std::move(constant), std::move(linear)) {
    quadratic_ = std::move(quadratic);
    if (!quadratic_.empty()) {
        if (quadratic_.size() != linear_.size()) {
            throw std::invalid_argument("PMatrix: quadratic part must be n_p x n_p");
        }
        for (const auto& row : quadratic_) {
            if (row.size() != linear_.size()) {
                throw std::invalid_argument("PMatrix: quadratic part must be n_p x n_p");
            }
            for (const auto& m : row) {
                if (m.rows() != constant_.rows() || m.cols() != constant_.cols()) {
                    throw std::invalid_argument("PMatrix: coefficient size mismatch");
                }
            }
        }
    }
}

Eigen::MatrixXd PMatrix::eval(const Eigen::VectorXd& p) const {
    if (p.size() != static_cast<Eigen::Index>(linear_.size())) {
        throw std::invalid_argument("PMatrix::eval: scheduling value has dimension " +
                                    std::to_string(p.size()) + ", expected " +
                                    std::to_string(linear_.size()));
    }
    Eigen::MatrixXd out = constant_;
    for (size_t j = 0; j < linear_.size(); ++j) {
        out += p(static_cast<Eigen::Index>(j)) * linear_[j];
    }
    for (size_t j = 0; j < quadratic_.size(); ++j) {
        for (size_t l = 0; l < quadratic_[j].size(); ++l) {
            out += p(static_cast<Eigen::Index>(j)) * p(static_cast<Eigen::Index>(l)) *
                   quadratic_[j][l];
        }
    }
    return out;
}

LpvIoModel::LpvIoModel(std::vector<std::vector<Eigen::MatrixXd>> a,
                       std::vector<std::vector<Eigen::MatrixXd>> b, Complexity complexity)
    : a_(std::move(a)), b_(std::move(b)), complexity_(complexity) {
    if (a_.empty() || b_.empty()) {
        throw std::invalid_argument("LpvIoModel: coefficient tensors must be nonempty");
    }
    n_a_ = static_cast<int>(a_.size()) - 1;
    n_b_ = static_cast<int>(b_.size()) - 1;
    const size_t n_terms = a_[0].size();
    if (n_terms < 1) {
        throw std::invalid_argument("LpvIoModel: need at least the constant coefficient");
    }
    n_p_ = static_cast<int>(n_terms) - 1;
    n_y_ = static_cast<int>(a_[0][0].rows());
    n_u_ = static_cast<int>(b_[0][0].cols());

    for (const auto& row : a_) {
        if (row.size() != n_terms) {
            throw std::invalid_argument("LpvIoModel: ragged a coefficient tensor");
        }
        for (const auto& m : row) {
            if (m.rows() != n_y_ || m.cols() != n_y_) {
                throw std::invalid_argument("LpvIoModel: a coefficients must be n_y x n_y");
            }
        }
    }
    for (const auto& row : b_) {
        if (row.size() != n_terms) {
            throw std::invalid_argument("LpvIoModel: ragged b coefficient tensor");
        }
        for (const auto& m : row) {
            if (m.rows() != n_y_ || m.cols() != n_u_) {
                throw std::invalid_argument("LpvIoModel: b coefficients must be n_y x n_u");
            }
        }
    }

    // Normalization a_0 = I: the leading coefficient is identity and carries
    // no scheduling dependence.
    if (!a_[0][0].isIdentity(1e-12)) {
        throw std::invalid_argument("LpvIoModel: leading coefficient a_0 must be the identity");
    }
    for (int j = 1; j <= n_p_; ++j) {
        if (a_[0][static_cast<size_t>(j)].norm() != 0.0) {
            throw std::invalid_argument(
                "LpvIoModel: leading coefficient a_0 must be scheduling independent");
        }
    }

    if (complexity_.m != n_u_) {
        throw std::invalid_argument("LpvIoModel: declared m = " + std::to_string(complexity_.m) +
                                    " does not match n_u = " + std::to_string(n_u_));
    }
    if (complexity_.lag < 1 || complexity_.order < complexity_.lag) {
        throw std::invalid_argument("LpvIoModel: complexity must satisfy lag >= 1, order >= lag");
    }

    zero_a_ = Eigen::MatrixXd::Zero(n_y_, n_y_);
    zero_b_ = Eigen::MatrixXd::Zero(n_y_, n_u_);
}

const Eigen::MatrixXd& LpvIoModel::a_coeff(int i, int j) const {
    if (j < 0 || j > n_p_) throw std::invalid_argument("LpvIoModel::a_coeff: bad index j");
    if (i < 0 || i > n_a_) return zero_a_;
    return a_[static_cast<size_t>(i)][static_cast<size_t>(j)];
}

const Eigen::MatrixXd& LpvIoModel::b_coeff(int i, int j) const {
    if (j < 0 || j > n_p_) throw std::invalid_argument("LpvIoModel::b_coeff: bad index j");
    if (i < 0 || i > n_b_) return zero_b_;
    return b_[static_cast<size_t>(i)][static_cast<size_t>(j)];
}

Eigen::MatrixXd LpvIoModel::a_eval(int i, const Eigen::VectorXd& p) const {
    Eigen::MatrixXd out = a_coeff(i, 0);
    for (int j = 1; j <= n_p_; ++j) out += p(j - 1) * a_coeff(i, j);
    return out;
}

Eigen::MatrixXd LpvIoModel::b_eval(int i, const Eigen::VectorXd& p) const {
    Eigen::MatrixXd out = b_coeff(i, 0);
    for (int j = 1; j <= n_p_; ++j) out += p(j - 1) * b_coeff(i, j);
    return out;
}

InitWindow InitWindow::zero(int n_u, int n_y, int n_p, int len) {
    InitWindow w;
    w.u = Eigen::MatrixXd::Zero(n_u, len);
    w.y = Eigen::MatrixXd::Zero(n_y, len);
    w.p = Eigen::MatrixXd::Zero(n_p, len);
    return w;
}

namespace {

void check_init(const LpvIoModel& model, const InitWindow& init) {
    const int n_r = model.shift_degree();
    if (init.u.cols() < n_r || init.y.cols() < n_r || init.p.cols() < n_r) {
        throw std::invalid_argument("simulate_io: init window has " +
                                    std::to_string(init.y.cols()) + " samples, need at least " +
                                    std::to_string(n_r));
    }
    if (init.u.rows() != model.inputs() || init.y.rows() != model.outputs() ||
        init.p.rows() != model.scheduling_dim()) {
        throw std::invalid_argument("simulate_io: init window dimensions do not match the model");
    }
}

}  // namespace

Eigen::MatrixXd simulate_io(const LpvIoModel& model, const Eigen::MatrixXd& u,
                            const Eigen::MatrixXd& p, const InitWindow& init) {
    check_init(model, init);
    if (u.cols() != p.cols()) {
        throw std::invalid_argument("simulate_io: input spans " + std::to_string(u.cols()) +
                                    " samples but scheduling spans " + std::to_string(p.cols()));
    }
    if (u.rows() != model.inputs() || p.rows() != model.scheduling_dim()) {
        throw std::invalid_argument("simulate_io: signal dimensions do not match the model");
    }

    const int horizon = static_cast<int>(u.cols());
    const int past = static_cast<int>(init.y.cols());

    // Extended timeline: init window occupies columns [0, past), the simulated
    // horizon the remaining columns.
    Eigen::MatrixXd u_ext(model.inputs(), past + horizon);
    Eigen::MatrixXd p_ext(model.scheduling_dim(), past + horizon);
    Eigen::MatrixXd y_ext(model.outputs(), past + horizon);
    u_ext << init.u, u;
    p_ext << init.p, p;
    y_ext.leftCols(past) = init.y;

    for (int k = past; k < past + horizon; ++k) {
        Eigen::VectorXd yk = Eigen::VectorXd::Zero(model.outputs());
        for (int i = 1; i <= model.a_degree(); ++i) {
            yk -= model.a_eval(i, p_ext.col(k - i)) * y_ext.col(k - i);
        }
        for (int j = 0; j <= model.b_degree(); ++j) {
            yk += model.b_eval(j, p_ext.col(k - j)) * u_ext.col(k - j);
        }
        y_ext.col(k) = yk;
    }
    return y_ext.rightCols(horizon);
}

SsSimResult simulate_ss(const LpvSsModel& ss, const Eigen::MatrixXd& u,
                        const Eigen::MatrixXd& p, const Eigen::VectorXd& x0) {
    if (x0.size() != ss.n_x) {
        throw std::invalid_argument("simulate_ss: initial state has dimension " +
                                    std::to_string(x0.size()) + ", expected " +
                                    std::to_string(ss.n_x));
    }
    if (u.cols() != p.cols() || u.rows() != ss.n_u || p.rows() != ss.n_p) {
        throw std::invalid_argument("simulate_ss: signal dimensions do not match the model");
    }
    const int horizon = static_cast<int>(u.cols());
    SsSimResult out;
    out.y.resize(ss.n_y, horizon);
    out.x.resize(ss.n_x, horizon + 1);
    out.x.col(0) = x0;
    for (int k = 0; k < horizon; ++k) {
        const Eigen::VectorXd pk = p.col(k);
        out.y.col(k) = ss.C.eval(pk) * out.x.col(k) + ss.D.eval(pk) * u.col(k);
        out.x.col(k + 1) = ss.A.eval(pk) * out.x.col(k) + ss.B.eval(pk) * u.col(k);
    }
    return out;
}

LpvSsModel realize_ss(const LpvIoModel& model) {
    const int n_y = model.outputs();
    const int n_u = model.inputs();
    const int n_p = model.scheduling_dim();
    const int n_r = model.shift_degree();
    const int n_x = n_y * n_r;

    // A(p): companion form, first block column -a_i(p), identity superdiagonal.
    Eigen::MatrixXd a0 = Eigen::MatrixXd::Zero(n_x, n_x);
    std::vector<Eigen::MatrixXd> a_lin(n_p, Eigen::MatrixXd::Zero(n_x, n_x));
    for (int i = 1; i <= n_r; ++i) {
        a0.block((i - 1) * n_y, 0, n_y, n_y) = -model.a_coeff(i, 0);
        for (int j = 1; j <= n_p; ++j) {
            a_lin[j - 1].block((i - 1) * n_y, 0, n_y, n_y) = -model.a_coeff(i, j);
        }
        if (i < n_r) {
            a0.block((i - 1) * n_y, i * n_y, n_y, n_y) =
                Eigen::MatrixXd::Identity(n_y, n_y);
        }
    }

    // B(p): block i holds b_i(p) - a_i(p) b_0(p). The product of two affine
    // functions leaves a quadratic part whenever both a_i and b_0 depend on p.
    Eigen::MatrixXd b0 = Eigen::MatrixXd::Zero(n_x, n_u);
    std::vector<Eigen::MatrixXd> b_lin(n_p, Eigen::MatrixXd::Zero(n_x, n_u));
    std::vector<std::vector<Eigen::MatrixXd>> b_quad;
    bool any_quad = false;
    if (n_p > 0) {
        b_quad.assign(n_p, std::vector<Eigen::MatrixXd>(n_p, Eigen::MatrixXd::Zero(n_x, n_u)));
    }
    for (int i = 1; i <= n_r; ++i) {
        b0.block((i - 1) * n_y, 0, n_y, n_u) =
            model.b_coeff(i, 0) - model.a_coeff(i, 0) * model.b_coeff(0, 0);
        for (int j = 1; j <= n_p; ++j) {
            b_lin[j - 1].block((i - 1) * n_y, 0, n_y, n_u) =
                model.b_coeff(i, j) - model.a_coeff(i, 0) * model.b_coeff(0, j) -
                model.a_coeff(i, j) * model.b_coeff(0, 0);
            for (int l = 1; l <= n_p; ++l) {
                const Eigen::MatrixXd q = -model.a_coeff(i, j) * model.b_coeff(0, l);
                if (q.norm() != 0.0) any_quad = true;
                b_quad[j - 1][l - 1].block((i - 1) * n_y, 0, n_y, n_u) = q;
            }
        }
    }
    if (!any_quad) b_quad.clear();

    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n_y, n_x);
    c.leftCols(n_y) = Eigen::MatrixXd::Identity(n_y, n_y);

    Eigen::MatrixXd d0 = model.b_coeff(0, 0);
    std::vector<Eigen::MatrixXd> d_lin(n_p, Eigen::MatrixXd::Zero(n_y, n_u));
    for (int j = 1; j <= n_p; ++j) d_lin[j - 1] = model.b_coeff(0, j);

    LpvSsModel ss;
    ss.A = PMatrix(std::move(a0), std::move(a_lin));
    ss.B = PMatrix(std::move(b0), std::move(b_lin), std::move(b_quad));
    ss.C = PMatrix(std::move(c), std::vector<Eigen::MatrixXd>(
                                     n_p, Eigen::MatrixXd::Zero(n_y, n_x)));
    ss.D = PMatrix(std::move(d0), std::move(d_lin));
    ss.n_x = n_x;
    ss.n_u = n_u;
    ss.n_y = n_y;
    ss.n_p = n_p;
    return ss;
}

Eigen::VectorXd state_from_past(const LpvIoModel& model, const InitWindow& init) {
    check_init(model, init);
    const int n_r = model.shift_degree();
    const int n_y = model.outputs();
    const int past = static_cast<int>(init.y.cols());

    // Unrolled shift construction: component i of the state after the window is
    //   x_i = sum_{l=0}^{n_r-i} b_{i+l}(p(-l)) u(-l) - a_{i+l}(p(-l)) y(-l),
    // with (-l) counting back from the last window column.
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n_y * n_r);
    for (int i = 1; i <= n_r; ++i) {
        Eigen::VectorXd xi = Eigen::VectorXd::Zero(n_y);
        for (int l = 0; l <= n_r - i; ++l) {
            const int col = past - 1 - l;
            const Eigen::VectorXd pk = init.p.col(col);
            xi += model.b_eval(i + l, pk) * init.u.col(col);
            xi -= model.a_eval(i + l, pk) * init.y.col(col);
        }
        x.segment((i - 1) * n_y, n_y) = xi;
    }
    return x;
}

}  // namespace lpvdd
