#include <doctest.h>

#include "helpers.hpp"
#include "lpvdd/model.hpp"
#include "lpvdd/systems.hpp"

using namespace lpvdd;

TEST_SUITE_BEGIN("models");

TEST_CASE("benchmark mass-spring-damper coefficients") {
    const LpvIoModel m = msd_model();
    CHECK(m.inputs() == 1);
    CHECK(m.outputs() == 1);
    CHECK(m.scheduling_dim() == 1);
    CHECK(m.a_degree() == 2);
    CHECK(m.b_degree() == 2);

    CHECK(m.a_coeff(1, 0)(0, 0) == doctest::Approx(-1.996).epsilon(1e-14));
    CHECK(m.a_coeff(1, 1)(0, 0) == 0.0);
    CHECK(m.a_coeff(2, 0)(0, 0) == doctest::Approx(0.9982).epsilon(1e-14));
    CHECK(m.a_coeff(2, 1)(0, 0) == doctest::Approx(0.0018).epsilon(1e-14));
    CHECK(m.b_coeff(2, 0)(0, 0) == doctest::Approx(4e-4).epsilon(1e-14));
    CHECK(m.b_coeff(0, 0)(0, 0) == 0.0);
    CHECK(m.b_coeff(1, 0)(0, 0) == 0.0);

    // Scheduling-independent spring: the model degenerates to LTI.
    const LpvIoModel lti = msd_model(25.0, 5.5, 0.0, 1.0, 0.1);
    CHECK(lti.a_coeff(2, 1)(0, 0) == 0.0);

    CHECK_THROWS_AS(msd_model(0.0, 1.0, 1.0, 1.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(msd_model(1.0, 1.0, 1.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("model invariants") {
    // a_0 must be the identity without scheduling dependence.
    std::vector<std::vector<Eigen::MatrixXd>> a = {
        {Eigen::MatrixXd::Identity(1, 1) * 2.0, Eigen::MatrixXd::Zero(1, 1)},
        {Eigen::MatrixXd::Zero(1, 1), Eigen::MatrixXd::Zero(1, 1)},
    };
    std::vector<std::vector<Eigen::MatrixXd>> b = {
        {Eigen::MatrixXd::Ones(1, 1), Eigen::MatrixXd::Zero(1, 1)},
    };
    CHECK_THROWS_AS(LpvIoModel(a, b, Complexity{1, 1, 1}), std::invalid_argument);

    a[0][0].setIdentity();
    a[0][1].setOnes();
    CHECK_THROWS_AS(LpvIoModel(a, b, Complexity{1, 1, 1}), std::invalid_argument);

    a[0][1].setZero();
    CHECK_THROWS_AS(LpvIoModel(a, b, Complexity{2, 1, 1}), std::invalid_argument);
    CHECK_NOTHROW(LpvIoModel(a, b, Complexity{1, 1, 1}));
}

TEST_CASE("io simulation basics") {
    const LpvIoModel m = msd_model();
    Rng rng(41);
    const int horizon = 50;
    const Eigen::MatrixXd p = test::random_matrix(rng, 1, horizon);

    const Eigen::MatrixXd y = simulate_io(m, Eigen::MatrixXd::Zero(1, horizon), p,
                                          InitWindow::zero(1, 1, 1, 2));
    CHECK(y.norm() == 0.0);

    InitWindow thin = InitWindow::zero(1, 1, 1, 1);
    CHECK_THROWS_AS(
        simulate_io(m, Eigen::MatrixXd::Zero(1, 3), Eigen::MatrixXd::Zero(1, 3), thin),
        std::invalid_argument);
}

TEST_CASE("feedback policy pins the counterexample output at one") {
    const DataDictionary dict = example2_dictionary(99, 40);
    CHECK((dict.w.output_samples().array() - 1.0).abs().maxCoeff() <= 1e-9);

    // Cross-check the generator against the IO simulator.
    const LpvIoModel m = example2_model();
    InitWindow init;
    init.u = Eigen::MatrixXd::Ones(1, 1);
    init.y = Eigen::MatrixXd::Ones(1, 1);
    init.p = Eigen::MatrixXd::Ones(1, 1);
    const Eigen::MatrixXd y =
        simulate_io(m, dict.w.input_samples(), dict.p.samples(), init);
    CHECK((y - dict.w.output_samples()).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("feedthrough realization of the counterexample system") {
    const LpvSsModel ss = realize_ss(example2_model());
    CHECK(ss.n_x == 1);

    Eigen::VectorXd p(1);
    p << 0.7;
    CHECK(ss.A.eval(p)(0, 0) == doctest::Approx(-1.7).epsilon(1e-14));
    CHECK(ss.B.eval(p)(0, 0) == doctest::Approx(-1.0).epsilon(1e-14));
    p << -2.3;
    CHECK(ss.B.eval(p)(0, 0) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(ss.C.eval(p)(0, 0) == 1.0);
    CHECK(ss.D.eval(p)(0, 0) == 1.0);
}

TEST_CASE("realization collapses to the companion form for LTI coefficients") {
    Rng rng(4242);
    RandomModelOptions opts;
    const LpvIoModel m = random_siso_model(rng, opts);

    std::vector<std::vector<Eigen::MatrixXd>> a, b;
    for (int i = 0; i <= m.a_degree(); ++i) {
        a.push_back({m.a_coeff(i, 0), Eigen::MatrixXd::Zero(1, 1)});
    }
    for (int i = 0; i <= m.b_degree(); ++i) {
        b.push_back({m.b_coeff(i, 0), Eigen::MatrixXd::Zero(1, 1)});
    }
    const LpvIoModel lti(a, b, m.complexity());
    const LpvSsModel ss = realize_ss(lti);

    Eigen::VectorXd p0 = Eigen::VectorXd::Zero(1);
    Eigen::VectorXd p1 = Eigen::VectorXd::Ones(1) * 0.8;
    CHECK((ss.A.eval(p0) - ss.A.eval(p1)).norm() == 0.0);
    CHECK((ss.B.eval(p0) - ss.B.eval(p1)).norm() == 0.0);

    // Companion layout: identity superdiagonal, -a_i in the first column.
    const Eigen::MatrixXd a_mat = ss.A.eval(p0);
    for (int i = 1; i <= lti.a_degree(); ++i) {
        CHECK(a_mat(i - 1, 0) == -lti.a_coeff(i, 0)(0, 0));
    }
}

TEST_CASE("ss simulation matches io simulation") {
    const LpvIoModel m = msd_model();
    const LpvSsModel ss = realize_ss(m);
    Rng rng(7);
    const int horizon = 200;
    const Eigen::MatrixXd u(test::random_matrix(rng, 1, horizon));
    Eigen::MatrixXd p(1, horizon);
    for (int k = 0; k < horizon; ++k) p(0, k) = rng.normal();

    const InitWindow init = test::random_init(rng, m);
    const Eigen::MatrixXd y_io = simulate_io(m, u, p, init);
    const SsSimResult r_ss = simulate_ss(ss, u, p, state_from_past(m, init));
    CHECK((y_io - r_ss.y).cwiseAbs().maxCoeff() <= 1e-9);

    CHECK_THROWS_AS(simulate_ss(ss, u, p, Eigen::VectorXd::Zero(3)), std::invalid_argument);
}

TEST_CASE("zero input keeps the ss at the origin") {
    const LpvSsModel ss = realize_ss(msd_model());
    Rng rng(9);
    const Eigen::MatrixXd p = test::random_matrix(rng, 1, 30);
    const SsSimResult r =
        simulate_ss(ss, Eigen::MatrixXd::Zero(1, 30), p, Eigen::VectorXd::Zero(2));
    CHECK(r.y.norm() == 0.0);
    CHECK(r.x.norm() == 0.0);
}

TEST_CASE("nonlinear benchmark and its embedding") {
    const NlExampleSystem sys = nl_example_system();

    // Origin is an equilibrium.
    const Eigen::MatrixXd zero_init = Eigen::MatrixXd::Zero(1, 2);
    const Eigen::MatrixXd y0 =
        sys.system.simulate(Eigen::MatrixXd::Zero(1, 20), zero_init, zero_init);
    CHECK(y0.norm() == 0.0);

    // The scheduling map at the origin.
    const Eigen::VectorXd p0 = sys.psi.map(Eigen::VectorXd::Zero(1), Eigen::VectorXd::Zero(1));
    CHECK(p0(0) == 0.0);
    CHECK(p0(1) == 1.0);

    // Only the sinc reading embeds the dynamics exactly.
    CHECK(nl_embedding_error(NlMapReading::sinc, 100, 2024) <= 1e-10);
    CHECK(nl_embedding_error(NlMapReading::sin, 100, 2024) > 1e-3);
}

TEST_CASE("random model generator yields bounded simulations") {
    Rng rng(1001);
    for (int trial = 0; trial < 5; ++trial) {
        const LpvIoModel m = random_siso_model(rng);
        const DataDictionary dict =
            excited_dictionary(m, 50 + static_cast<std::uint64_t>(trial), 120,
                               ExcitationKind::uniform_box);
        CHECK(dict.w.samples().cwiseAbs().maxCoeff() < 1e3);
        CHECK(test::max_io_residual(m, dict.w.input_samples(), dict.w.output_samples(),
                                    dict.p.samples()) <= 1e-10);
    }
}

TEST_SUITE_END();
