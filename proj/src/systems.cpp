#include "lpvdd/systems.hpp"

#include <cmath>
#include <stdexcept>

namespace lpvdd {

namespace {

using Coeffs = std::vector<std::vector<Eigen::MatrixXd>>;

Eigen::MatrixXd scalar(double v) {
    Eigen::MatrixXd m(1, 1);
    m(0, 0) = v;
    return m;
}

double sinc(double x) {
    if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

}  // namespace

LpvIoModel msd_model(double mass, double s0, double s1, double damping, double Ts) {
    if (mass <= 0.0 || Ts <= 0.0) {
        throw std::invalid_argument("msd_model: mass and sample time must be positive");
    }
    Coeffs a = {
        {scalar(1.0), scalar(0.0)},
        {scalar(damping * Ts / mass - 2.0), scalar(0.0)},
        {scalar(1.0 + (s0 * Ts * Ts - damping * Ts) / mass), scalar(s1 * Ts * Ts / mass)},
    };
    Coeffs b = {
        {scalar(0.0), scalar(0.0)},
        {scalar(0.0), scalar(0.0)},
        {scalar(Ts * Ts / mass), scalar(0.0)},
    };
    return LpvIoModel(std::move(a), std::move(b), Complexity{1, 2, 2});
}

LpvIoModel example2_model() {
    Coeffs a = {
        {scalar(1.0), scalar(0.0)},
        {scalar(1.0), scalar(1.0)},
    };
    Coeffs b = {
        {scalar(1.0), scalar(0.0)},
        {scalar(0.0), scalar(1.0)},
    };
    return LpvIoModel(std::move(a), std::move(b), Complexity{1, 1, 1});
}

Eigen::MatrixXd NonlinearExample::simulate(const Eigen::MatrixXd& u,
                                           const Eigen::MatrixXd& u_init,
                                           const Eigen::MatrixXd& y_init) const {
    if (u.rows() != 1 || u_init.rows() != 1 || y_init.rows() != 1) {
        throw std::invalid_argument("NonlinearExample: scalar input and output expected");
    }
    if (u_init.cols() < 2 || y_init.cols() < 2) {
        throw std::invalid_argument("NonlinearExample: init window must span two samples");
    }
    const int horizon = static_cast<int>(u.cols());
    Eigen::VectorXd u_ext(2 + horizon);
    Eigen::VectorXd y_ext(2 + horizon);
    u_ext.head(2) << u_init(0, u_init.cols() - 2), u_init(0, u_init.cols() - 1);
    y_ext.head(2) << y_init(0, y_init.cols() - 2), y_init(0, y_init.cols() - 1);
    u_ext.tail(horizon) = u.row(0).transpose();

    for (int k = 2; k < 2 + horizon; ++k) {
        const double y1 = y_ext(k - 1);
        const double y2 = y_ext(k - 2);
        const double u1 = u_ext(k - 1);
        y_ext(k) = (0.4 * std::tanh(y1) - 0.2) * y1 + (1.0 - 0.4 * std::tanh(y2)) * y2 +
                   1.2 * u1 + 0.4 * std::sin(u1) * std::exp(-y1 * y1);
    }
    return y_ext.tail(horizon).transpose();
}

SchedulingMap nl_scheduling_map(NlMapReading reading) {
    SchedulingMap psi;
    psi.name = reading == NlMapReading::sinc ? "nl_example" : "nl_example_sin";
    psi.n_p = 2;
    psi.map = [reading](const Eigen::VectorXd& u, const Eigen::VectorXd& y) {
        Eigen::VectorXd p(2);
        p(0) = std::tanh(y(0));
        const double env = std::exp(-y(0) * y(0));
        p(1) = (reading == NlMapReading::sinc ? sinc(u(0)) : std::sin(u(0))) * env;
        return p;
    };
    return psi;
}

NlExampleSystem nl_example_system(NlMapReading reading) {
    Coeffs a = {
        {scalar(1.0), scalar(0.0), scalar(0.0)},
        {scalar(0.2), scalar(-0.4), scalar(0.0)},
        {scalar(-1.0), scalar(0.4), scalar(0.0)},
    };
    Coeffs b = {
        {scalar(0.0), scalar(0.0), scalar(0.0)},
        {scalar(1.2), scalar(0.0), scalar(0.4)},
    };
    return NlExampleSystem{NonlinearExample{}, nl_scheduling_map(reading),
                           LpvIoModel(std::move(a), std::move(b), Complexity{1, 2, 2})};
}

double nl_embedding_error(NlMapReading reading, int steps, std::uint64_t seed) {
    const NlExampleSystem sys = nl_example_system(reading);
    Rng rng(seed);
    Eigen::MatrixXd u(1, steps);
    for (int k = 0; k < steps; ++k) u(0, k) = rng.normal();

    const Eigen::MatrixXd zero_init = Eigen::MatrixXd::Zero(1, 2);
    const Eigen::MatrixXd y_nl = sys.system.simulate(u, zero_init, zero_init);
    const Eigen::MatrixXd p = sys.psi.apply(u, y_nl);

    InitWindow init = InitWindow::zero(1, 1, 2, 2);
    for (int k = 0; k < 2; ++k) {
        init.p.col(k) = sys.psi.map(zero_init.col(k), zero_init.col(k));
    }
    const Eigen::MatrixXd y_emb = simulate_io(sys.embedding, u, p, init);
    return (y_nl - y_emb).cwiseAbs().maxCoeff();
}

SchedulingMap scheduling_map(const std::string& name) {
    if (name == "nl_example") return nl_scheduling_map(NlMapReading::sinc);
    if (name == "nl_example_sin") return nl_scheduling_map(NlMapReading::sin);
    throw std::invalid_argument("scheduling_map: unknown map '" + name + "'");
}

std::vector<std::string> scheduling_map_names() { return {"nl_example", "nl_example_sin"}; }

namespace {

// Numeric coprimeness of the p = 0 polynomials 1 + sum a_i x^i and
// sum b_j x^j through the rank of their Sylvester matrix.
bool lti_core_coprime(const std::vector<double>& a, const std::vector<double>& b) {
    const int deg_a = static_cast<int>(a.size()) - 1;
    int deg_b = static_cast<int>(b.size()) - 1;
    while (deg_b > 0 && b[static_cast<size_t>(deg_b)] == 0.0) --deg_b;
    if (deg_b == 0) return b[0] != 0.0;
    if (deg_a == 0) return true;

    const int n = deg_a + deg_b;
    Eigen::MatrixXd syl = Eigen::MatrixXd::Zero(n, n);
    for (int r = 0; r < deg_b; ++r) {
        for (int i = 0; i <= deg_a; ++i) syl(r, r + i) = a[static_cast<size_t>(i)];
    }
    for (int r = 0; r < deg_a; ++r) {
        for (int i = 0; i <= deg_b; ++i) syl(deg_b + r, r + i) = b[static_cast<size_t>(i)];
    }
    return numeric_rank(syl).rank == n;
}

}  // namespace

LpvIoModel random_siso_model(Rng& rng, const RandomModelOptions& opts) {
    for (int attempt = 0; attempt < 256; ++attempt) {
        const int n_r = rng.uniform_int(1, opts.max_lag);
        const int n_p = rng.uniform_int(1, opts.max_scheduling_dim);
        const int n_b = rng.uniform_int(0, n_r);

        Coeffs a(static_cast<size_t>(n_r) + 1,
                 std::vector<Eigen::MatrixXd>(static_cast<size_t>(n_p) + 1, scalar(0.0)));
        Coeffs b(static_cast<size_t>(n_b) + 1,
                 std::vector<Eigen::MatrixXd>(static_cast<size_t>(n_p) + 1, scalar(0.0)));
        a[0][0] = scalar(1.0);
        for (int i = 1; i <= n_r; ++i) {
            for (int j = 0; j <= n_p; ++j) a[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                scalar(rng.uniform(-1.0, 1.0));
        }
        for (int i = 0; i <= n_b; ++i) {
            for (int j = 0; j <= n_p; ++j) b[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                scalar(rng.uniform(-1.0, 1.0));
        }
        if (!opts.allow_feedthrough) {
            for (int j = 0; j <= n_p; ++j) b[0][static_cast<size_t>(j)] = scalar(0.0);
        }

        // Rescale the lag coefficients so that sum_i max_{|p|<=1} |a_i(p)| stays
        // below the margin; trajectories then remain bounded inside the box.
        double gain = 0.0;
        for (int i = 1; i <= n_r; ++i) {
            double row = 0.0;
            for (int j = 0; j <= n_p; ++j)
                row += std::abs(a[static_cast<size_t>(i)][static_cast<size_t>(j)](0, 0));
            gain += row;
        }
        if (gain > opts.stability_margin) {
            const double scale = opts.stability_margin / gain;
            for (int i = 1; i <= n_r; ++i) {
                for (int j = 0; j <= n_p; ++j) a[static_cast<size_t>(i)][static_cast<size_t>(j)] *=
                    scale;
            }
        }

        // The declared lag must be exact: the top coefficient row may not vanish.
        double top = 0.0;
        for (int j = 0; j <= n_p; ++j)
            top += std::abs(a[static_cast<size_t>(n_r)][static_cast<size_t>(j)](0, 0));
        if (n_b == n_r) {
            for (int j = 0; j <= n_p; ++j)
                top += std::abs(b[static_cast<size_t>(n_b)][static_cast<size_t>(j)](0, 0));
        }
        if (top < 0.05) continue;

        std::vector<double> a_core, b_core;
        for (int i = 0; i <= n_r; ++i) a_core.push_back(a[static_cast<size_t>(i)][0](0, 0));
        for (int i = 0; i <= n_b; ++i) b_core.push_back(b[static_cast<size_t>(i)][0](0, 0));
        bool b_nonzero = false;
        for (double v : b_core) b_nonzero = b_nonzero || v != 0.0;
        if (!b_nonzero) continue;
        if (!lti_core_coprime(a_core, b_core)) continue;

        return LpvIoModel(std::move(a), std::move(b), Complexity{1, n_r, n_r});
    }
    throw std::runtime_error("random_siso_model: rejection sampling did not terminate");
}

DataDictionary excited_dictionary(const LpvIoModel& model, std::uint64_t seed, int n_d,
                                  ExcitationKind kind) {
    if (n_d < 1) {
        throw std::invalid_argument("excited_dictionary: need n_d >= 1");
    }
    Rng rng(seed);
    const int n_u = model.inputs();
    const int n_p = model.scheduling_dim();

    auto draw = [&]() {
        return kind == ExcitationKind::gaussian ? rng.normal() : rng.uniform(-1.0, 1.0);
    };
    Eigen::MatrixXd u(n_u, n_d);
    for (int k = 0; k < n_d; ++k) {
        for (int i = 0; i < n_u; ++i) u(i, k) = draw();
    }
    Eigen::MatrixXd p(n_p, n_d);
    for (int k = 0; k < n_d; ++k) {
        for (int i = 0; i < n_p; ++i) p(i, k) = draw();
    }

    const InitWindow init =
        InitWindow::zero(n_u, model.outputs(), n_p, model.shift_degree());
    const Eigen::MatrixXd y = simulate_io(model, u, p, init);

    Eigen::MatrixXd w(model.inputs() + model.outputs(), n_d);
    w << u, y;
    return DataDictionary(Trajectory(std::move(w), n_u, model.outputs()),
                          SchedulingTrajectory(std::move(p)),
                          kind == ExcitationKind::gaussian ? "excited:gaussian"
                                                           : "excited:uniform_box",
                          seed);
}

DataDictionary example2_dictionary(std::uint64_t seed, int n_d, bool feedback_input) {
    if (n_d < 1) {
        throw std::invalid_argument("example2_dictionary: need n_d >= 1");
    }
    Rng rng(seed);
    Eigen::VectorXd p(n_d), u(n_d), y(n_d);
    for (int k = 0; k < n_d; ++k) p(k) = rng.normal();

    double u_prev = 1.0, y_prev = 1.0, p_prev = 1.0;
    for (int k = 0; k < n_d; ++k) {
        u(k) = feedback_input ? p_prev * (1.0 - u_prev) + 2.0 : rng.normal();
        y(k) = -(1.0 + p_prev) * y_prev + u(k) + p_prev * u_prev;
        u_prev = u(k);
        y_prev = y(k);
        p_prev = p(k);
    }

    Eigen::MatrixXd w(2, n_d);
    w.row(0) = u.transpose();
    w.row(1) = y.transpose();
    return DataDictionary(Trajectory(std::move(w), 1, 1),
                          SchedulingTrajectory(Eigen::MatrixXd(p.transpose())),
                          feedback_input ? "example2:feedback" : "example2:gaussian", seed);
}

DataDictionary nl_example_dictionary(std::uint64_t seed, int n_d, NlMapReading reading) {
    if (n_d < 1) {
        throw std::invalid_argument("nl_example_dictionary: need n_d >= 1");
    }
    const NlExampleSystem sys = nl_example_system(reading);
    Rng rng(seed);
    Eigen::MatrixXd u(1, n_d);
    for (int k = 0; k < n_d; ++k) u(0, k) = rng.normal();

    const Eigen::MatrixXd zero_init = Eigen::MatrixXd::Zero(1, 2);
    const Eigen::MatrixXd y = sys.system.simulate(u, zero_init, zero_init);
    const Eigen::MatrixXd p = sys.psi.apply(u, y);

    Eigen::MatrixXd w(2, n_d);
    w << u, y;
    return DataDictionary(Trajectory(std::move(w), 1, 1), SchedulingTrajectory(p),
                          std::string("nl_example:") + sys.psi.name, seed);
}

}  // namespace lpvdd
