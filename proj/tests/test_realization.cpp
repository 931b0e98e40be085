#include <doctest.h>

#include "helpers.hpp"
#include "lpvdd/errors.hpp"
#include "lpvdd/hankel.hpp"
#include "lpvdd/numeric.hpp"
#include "lpvdd/realization.hpp"
#include "lpvdd/systems.hpp"

using namespace lpvdd;

TEST_SUITE_BEGIN("realization");

namespace {

Eigen::MatrixXd lift2(const Eigen::MatrixXd& u, const Eigen::MatrixXd& p) {
    return kron_lift(kron_lift(u, p), p);
}

}  // namespace

TEST_CASE("structured split of the counterexample system") {
    const LpvIoModel m = example2_model();
    const StructuredSs s = structured_split(realize_ss(m), m);

    CHECK(s.A0(0, 0) == -1.0);
    CHECK(s.Ap(0, 0) == -1.0);
    CHECK(s.B0(0, 0) == -1.0);
    // b_{1,1} is cancelled by the feedthrough cross term a_{1,1} b_{0,0}.
    CHECK(s.Bp(0, 0) == 0.0);
    CHECK(s.Bpp(0, 0) == 0.0);
    CHECK(s.C(0, 0) == 1.0);
    CHECK(s.D0(0, 0) == 1.0);
    CHECK(s.Dp(0, 0) == 0.0);
    CHECK(s.Bp_tilde(0, 0) == 1.0);
    CHECK(s.Bpp_tilde(0, 0) == 0.0);
}

TEST_CASE("split reassembles the realization") {
    Rng rng(31);
    for (int trial = 0; trial < 5; ++trial) {
        const LpvIoModel m = random_siso_model(rng);
        const LpvSsModel ss = realize_ss(m);
        const StructuredSs s = structured_split(ss, m);
        const int n_p = m.scheduling_dim();

        for (int probe = 0; probe < 3; ++probe) {
            const Eigen::VectorXd p = test::random_matrix(rng, n_p, 1);
            const Eigen::VectorXd u = test::random_matrix(rng, 1, 1);

            Eigen::MatrixXd a_built = s.A0;
            for (int j = 0; j < n_p; ++j) {
                a_built.leftCols(s.n_y) += p(j) * s.Ap.middleCols(j * s.n_y, s.n_y);
            }
            CHECK((ss.A.eval(p) - a_built).norm() <= 1e-13);

            const Eigen::VectorXd b_built =
                s.B0 * u + s.Bp * kron_lift(u, p) + s.Bpp * lift2(u, p);
            CHECK((ss.B.eval(p) * u - b_built).norm() <= 1e-13);

            const Eigen::VectorXd d_built = s.D0 * u + s.Dp * kron_lift(u, p);
            CHECK((ss.D.eval(p) * u - d_built).norm() <= 1e-13);
        }
    }
}

TEST_CASE("LTI coefficients leave no scheduling-dependent blocks") {
    const LpvIoModel lti = msd_model(25.0, 5.5, 0.0, 1.0, 0.1);
    const StructuredSs s = structured_split(realize_ss(lti), lti);
    CHECK(s.Ap.norm() == 0.0);
    CHECK(s.Bp.norm() == 0.0);
    CHECK(s.Bpp.norm() == 0.0);
    CHECK(s.Dp.norm() == 0.0);
}

TEST_CASE("structured recursion agrees with the realization") {
    Rng rng(57);
    for (int trial = 0; trial < 5; ++trial) {
        const LpvIoModel m = random_siso_model(rng);
        const LpvSsModel ss = realize_ss(m);
        const StructuredSs s = structured_split(ss, m);

        const int horizon = 100;
        const Eigen::MatrixXd u = test::random_matrix(rng, 1, horizon);
        const Eigen::MatrixXd p = test::random_matrix(rng, m.scheduling_dim(), horizon);
        const Eigen::VectorXd x0 = test::random_matrix(rng, ss.n_x, 1);

        const SsSimResult a = simulate_ss(ss, u, p, x0);
        const SsSimResult b = simulate_structured(s, u, p, x0);
        CHECK((a.y - b.y).cwiseAbs().maxCoeff() <= 1e-10);
        CHECK((a.x - b.x).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("horizon matrices at depth one") {
    const LpvIoModel m = example2_model();
    const StructuredSs s = structured_split(realize_ss(m), m);
    const HorizonMatrices h = horizon_matrices(s, 1);
    CHECK(h.O == s.C);
    CHECK(h.T == s.D0);
    CHECK(h.Op.norm() == 0.0);
    CHECK(h.Tp == s.Dp);
    CHECK(h.Tpp.norm() == 0.0);
}

TEST_CASE("horizon matrix shapes") {
    const NlExampleSystem sys = nl_example_system();
    const StructuredSs s = structured_split(realize_ss(sys.embedding), sys.embedding);
    const int depth = 7;
    const HorizonMatrices h = horizon_matrices(s, depth);
    CHECK(h.O.rows() == depth * s.n_y);
    CHECK(h.O.cols() == s.n_x);
    CHECK(h.T.rows() == depth * s.n_y);
    CHECK(h.T.cols() == depth * s.n_u);
    CHECK(h.Op.cols() == depth * s.n_p * s.n_y);
    CHECK(h.Tp.cols() == depth * s.n_p * s.n_u);
    CHECK(h.Tpp.cols() == depth * s.n_p * s.n_p * s.n_u);
}

TEST_CASE("observability stack is unit lower triangular for the companion form") {
    Rng rng(77);
    const LpvIoModel m = random_siso_model(rng);
    const StructuredSs s = structured_split(realize_ss(m), m);
    const HorizonMatrices h = horizon_matrices(s, s.n_x);
    for (int i = 0; i < s.n_x; ++i) {
        CHECK(h.O(i, i) == 1.0);
        for (int j = i + 1; j < s.n_x; ++j) CHECK(h.O(i, j) == 0.0);
    }
}

TEST_CASE("finite-horizon response identity") {
    Rng rng(91);
    for (int trial = 0; trial < 5; ++trial) {
        const LpvIoModel m = random_siso_model(rng);
        const LpvSsModel ss = realize_ss(m);
        const StructuredSs s = structured_split(ss, m);
        const int depth = 8;
        const HorizonMatrices h = horizon_matrices(s, depth);

        const Eigen::MatrixXd u = test::random_matrix(rng, 1, depth);
        const Eigen::MatrixXd p = test::random_matrix(rng, s.n_p, depth);
        const Eigen::VectorXd x0 = test::random_matrix(rng, s.n_x, 1);
        const SsSimResult sim = simulate_ss(ss, u, p, x0);

        const Eigen::VectorXd reconstructed =
            h.O * x0 + h.T * vec(u) + h.Op * vec(kron_lift(sim.y, p)) +
            h.Tp * vec(kron_lift(u, p)) + h.Tpp * vec(lift2(u, p));
        CHECK((vec(sim.y) - reconstructed).cwiseAbs().maxCoeff() <= 1e-9);
    }
}

TEST_CASE("behavior basis rank counts") {
    const LpvIoModel msd = msd_model();
    Rng rng(123);

    // At depth 10 the span has dimension order + m L = 12.
    const Eigen::MatrixXd p10 = test::random_matrix(rng, 1, 10);
    CHECK(numeric_rank(behavior_basis(msd, p10)).rank == 12);

    // Depth below the lag loses rank.
    const Eigen::MatrixXd p1 = test::random_matrix(rng, 1, 1);
    CHECK(numeric_rank(behavior_basis(msd, p1)).rank < 3);
}

TEST_CASE("observability rank against the lag") {
    const LpvIoModel msd = msd_model();
    const StructuredSs s = structured_split(realize_ss(msd), msd);
    CHECK(observability_rank(s, 1) == 1);
    CHECK(observability_rank(s, 2) == 2);
    CHECK(observability_rank(s, 5) == 2);

    const LpvIoModel ex2 = example2_model();
    const StructuredSs s2 = structured_split(realize_ss(ex2), ex2);
    CHECK(observability_rank(s2, 1) == 1);
}

TEST_CASE("initial state recovery from a window") {
    Rng rng(314);
    for (int trial = 0; trial < 5; ++trial) {
        const LpvIoModel m = random_siso_model(rng);
        const LpvSsModel ss = realize_ss(m);
        const int lag = m.complexity().lag;

        for (int extra : {0, 2}) {
            const int len = lag + extra;
            const Eigen::MatrixXd u = test::random_matrix(rng, 1, len);
            const Eigen::MatrixXd p = test::random_matrix(rng, m.scheduling_dim(), len);
            const Eigen::VectorXd x0 = test::random_matrix(rng, ss.n_x, 1);
            const SsSimResult sim = simulate_ss(ss, u, p, x0);

            Eigen::MatrixXd w(2, len);
            w << u, sim.y;
            const Eigen::VectorXd recovered = initial_state(m, w, p);
            CHECK((recovered - sim.x.col(len)).cwiseAbs().maxCoeff() <= 1e-8);
        }

        if (lag >= 2) {
            const int len = lag - 1;
            const Eigen::MatrixXd w = test::random_matrix(rng, 2, len);
            const Eigen::MatrixXd p = test::random_matrix(rng, m.scheduling_dim(), len);
            CHECK_THROWS_AS(initial_state(m, w, p), std::invalid_argument);
        }
    }
}

TEST_CASE("initial state rejects inconsistent windows") {
    const LpvIoModel m = msd_model();
    Rng rng(999);
    // A random length-4 window generically violates the two-lag relation.
    const Eigen::MatrixXd w = test::random_matrix(rng, 2, 4);
    const Eigen::MatrixXd p = test::random_matrix(rng, 1, 4);
    CHECK_THROWS_AS(initial_state(m, w, p), InconsistentWindowError);
}

TEST_CASE("initial state extends the window") {
    const LpvIoModel m = msd_model();
    const LpvSsModel ss = realize_ss(m);
    Rng rng(271);

    const int len = 6, tail = 10;
    const Eigen::MatrixXd u = test::random_matrix(rng, 1, len + tail);
    const Eigen::MatrixXd p = test::random_matrix(rng, 1, len + tail);
    const Eigen::VectorXd x0 = test::random_matrix(rng, 2, 1);
    const SsSimResult sim = simulate_ss(ss, u, p, x0);

    Eigen::MatrixXd w(2, len);
    w << u.leftCols(len), sim.y.leftCols(len);
    const Eigen::VectorXd x_mid = initial_state(m, w, p.leftCols(len));

    const SsSimResult cont = simulate_ss(ss, u.rightCols(tail), p.rightCols(tail), x_mid);
    CHECK((cont.y - sim.y.rightCols(tail)).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("representation equivalence chain") {
    Rng rng(555);
    for (int trial = 0; trial < 5; ++trial) {
        const LpvIoModel m = random_siso_model(rng);
        const LpvSsModel ss = realize_ss(m);
        const StructuredSs s = structured_split(ss, m);

        const int horizon = 100;
        const Eigen::MatrixXd u = test::random_matrix(rng, 1, horizon);
        const Eigen::MatrixXd p = test::random_matrix(rng, m.scheduling_dim(), horizon);
        const InitWindow init = test::random_init(rng, m);
        const Eigen::VectorXd x0 = state_from_past(m, init);

        const Eigen::MatrixXd y_io = simulate_io(m, u, p, init);
        const Eigen::MatrixXd y_ss = simulate_ss(ss, u, p, x0).y;
        const Eigen::MatrixXd y_st = simulate_structured(s, u, p, x0).y;
        CHECK((y_io - y_ss).cwiseAbs().maxCoeff() <= 1e-8);
        CHECK((y_io - y_st).cwiseAbs().maxCoeff() <= 1e-8);
    }
}

TEST_SUITE_END();
