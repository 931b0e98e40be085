#include "lpvdd/numeric.hpp"

#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>

namespace lpvdd {

double rank_safety() {
    static const double value = [] {
        if (const char* env = std::getenv("LPVDD_RANK_SAFETY")) {
            const double v = std::atof(env);
            if (v > 0.0) return v;
        }
        return 1e3;
    }();
    return value;
}

namespace {

double cutoff(Eigen::Index rows, Eigen::Index cols, double sigma_max, double safety) {
    const double dim = static_cast<double>(std::max(rows, cols));
    return dim * sigma_max * std::numeric_limits<double>::epsilon() * safety;
}

}  // namespace

RankInfo numeric_rank(const Eigen::MatrixXd& m, double safety) {
    RankInfo info;
    if (m.size() == 0) {
        info.gap = std::numeric_limits<double>::infinity();
        return info;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    info.singular_values = svd.singularValues();
    const double sigma_max = info.singular_values.size() > 0 ? info.singular_values(0) : 0.0;
    info.tolerance = cutoff(m.rows(), m.cols(), sigma_max, safety);
    int r = 0;
    while (r < info.singular_values.size() && info.singular_values(r) > info.tolerance) ++r;
    info.rank = r;
    if (r == 0 || r >= info.singular_values.size() || info.singular_values(r) == 0.0) {
        info.gap = std::numeric_limits<double>::infinity();
    } else {
        info.gap = info.singular_values(r - 1) / info.singular_values(r);
    }
    return info;
}

Eigen::MatrixXd null_space(const Eigen::MatrixXd& m, double safety) {
    if (m.size() == 0) {
        return Eigen::MatrixXd::Identity(m.cols(), m.cols());
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double tol = cutoff(m.rows(), m.cols(), sv.size() > 0 ? sv(0) : 0.0, safety);
    int r = 0;
    while (r < sv.size() && sv(r) > tol) ++r;
    return svd.matrixV().rightCols(m.cols() - r);
}

LstsqResult min_norm_lstsq(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, double safety) {
    if (a.rows() != b.size()) {
        throw std::invalid_argument("min_norm_lstsq: matrix has " + std::to_string(a.rows()) +
                                    " rows but rhs has " + std::to_string(b.size()) +
                                    " entries");
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double tol = cutoff(a.rows(), a.cols(), sv.size() > 0 ? sv(0) : 0.0, safety);
    svd.setThreshold(sv.size() > 0 && sv(0) > 0.0 ? tol / sv(0) : 1.0);

    LstsqResult out;
    out.x = svd.solve(b);
    out.rank = static_cast<int>(svd.rank());
    out.residual = (a * out.x - b).norm();
    return out;
}

Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& m, double safety) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double tol = cutoff(m.rows(), m.cols(), sv.size() > 0 ? sv(0) : 0.0, safety);
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > tol) inv(i) = 1.0 / sv(i);
    }
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

double max_principal_angle(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double safety) {
    auto orth = [safety](const Eigen::MatrixXd& m) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
        const Eigen::VectorXd& sv = svd.singularValues();
        const double tol = cutoff(m.rows(), m.cols(), sv.size() > 0 ? sv(0) : 0.0, safety);
        int r = 0;
        while (r < sv.size() && sv(r) > tol) ++r;
        return Eigen::MatrixXd(svd.matrixU().leftCols(r));
    };
    const Eigen::MatrixXd qa = orth(a);
    const Eigen::MatrixXd qb = orth(b);
    if (qa.cols() != qb.cols()) {
        return 3.14159265358979323846 / 2.0;  // different dimensions: maximal angle
    }
    if (qa.cols() == 0) return 0.0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(qa.transpose() * qb);
    const double c = std::min(1.0, svd.singularValues().minCoeff());
    return std::acos(c);
}

Eigen::MatrixXd matrix_sqrt_psd(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("matrix_sqrt_psd: matrix must be square");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    Eigen::VectorXd d = es.eigenvalues();
    for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = d(i) > 0.0 ? std::sqrt(d(i)) : 0.0;
    return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose();
}

Eigen::VectorXd vec(const Eigen::MatrixXd& samples) {
    return Eigen::Map<const Eigen::VectorXd>(samples.data(), samples.size());
}

Eigen::MatrixXd unvec(const Eigen::VectorXd& v, int rows) {
    if (rows <= 0 || v.size() % rows != 0) {
        throw std::invalid_argument("unvec: vector length " + std::to_string(v.size()) +
                                    " is not a multiple of the row count " +
                                    std::to_string(rows));
    }
    return Eigen::Map<const Eigen::MatrixXd>(v.data(), rows, v.size() / rows);
}

}  // namespace lpvdd
