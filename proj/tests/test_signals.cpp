#include <doctest.h>

#include "helpers.hpp"
#include "lpvdd/hankel.hpp"
#include "lpvdd/numeric.hpp"
#include "lpvdd/trajectory.hpp"

using namespace lpvdd;

TEST_SUITE_BEGIN("signals");

TEST_CASE("hankel of a scalar sequence") {
    Eigen::MatrixXd s(1, 4);
    s << 1, 2, 3, 4;

    const HankelMatrix h = hankel(s, 2);
    Eigen::MatrixXd expected(2, 3);
    expected << 1, 2, 3, 2, 3, 4;
    CHECK(h.entries == expected);
    CHECK(h.depth == 2);
    CHECK(h.block_rows == 1);

    const HankelMatrix full = hankel(s, 4);
    CHECK(full.cols() == 1);
    CHECK(full.entries.col(0) == vec(s));

    CHECK_THROWS_AS(hankel(s, 5), std::invalid_argument);
    CHECK_THROWS_AS(hankel(s, 0), std::invalid_argument);
}

TEST_CASE("hankel shape for a dictionary-sized signal") {
    // Independent shape oracle.
    const int n_d = 161, n = 2, depth = 40;
    const int rows = depth * n;
    const int cols = n_d - depth + 1;

    Rng rng(11);
    const HankelMatrix h = hankel(test::random_matrix(rng, n, n_d), depth);
    CHECK(h.rows() == rows);
    CHECK(h.cols() == cols);
    CHECK(cols == 122);
}

TEST_CASE("hankel shift structure") {
    Rng rng(5);
    const Eigen::MatrixXd s = test::random_matrix(rng, 3, 17);
    const HankelMatrix h = hankel(s, 6);
    for (int i = 0; i + 1 < h.depth; ++i) {
        for (int j = 0; j + 1 < h.cols(); ++j) {
            CHECK(h.block(i + 1, j) == h.block(i, j + 1));
        }
    }
}

TEST_CASE("kron_lift ordering and degenerate cases") {
    Eigen::MatrixXd w(2, 1), p(1, 1);
    w << 3, 4;
    p << 2;
    Eigen::MatrixXd lifted = kron_lift(w, p);
    CHECK(lifted(0, 0) == 6);
    CHECK(lifted(1, 0) == 8);

    // Unit selector: p = (1, 0) keeps the first block and zeroes the second.
    Eigen::MatrixXd p2(2, 1);
    p2 << 1, 0;
    w << -1.5, 7;
    lifted = kron_lift(w, p2);
    CHECK(lifted.rows() == 4);
    CHECK(lifted(0, 0) == -1.5);
    CHECK(lifted(1, 0) == 7);
    CHECK(lifted(2, 0) == 0);
    CHECK(lifted(3, 0) == 0);

    Rng rng(3);
    const Eigen::MatrixXd wr = test::random_matrix(rng, 2, 9);
    CHECK(kron_lift(wr, Eigen::MatrixXd::Zero(2, 9)).norm() == 0.0);

    CHECK_THROWS_AS(kron_lift(wr, Eigen::MatrixXd::Zero(2, 8)), std::invalid_argument);
}

TEST_CASE("blkdiag_kron layout") {
    Eigen::MatrixXd p(1, 2);
    p << 0.5, -2.0;
    const Eigen::MatrixXd d = blkdiag_kron(p, 1);
    Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(2, 2);
    expected(0, 0) = 0.5;
    expected(1, 1) = -2.0;
    CHECK(d == expected);

    Eigen::MatrixXd ones(2, 3);
    ones.setOnes();
    const Eigen::MatrixXd d2 = blkdiag_kron(ones, 1);
    CHECK(d2.rows() == 6);
    CHECK(d2.cols() == 3);
    for (int k = 0; k < 3; ++k) {
        CHECK(d2(2 * k, k) == 1.0);
        CHECK(d2(2 * k + 1, k) == 1.0);
    }
    CHECK(d2.sum() == 6.0);
}

TEST_CASE("lift identity vec(w^p) = P vec(w)") {
    Rng rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        const int n_w = rng.uniform_int(1, 3);
        const int n_p = rng.uniform_int(1, 3);
        const Eigen::MatrixXd w = test::random_matrix(rng, n_w, 5);
        const Eigen::MatrixXd p = test::random_matrix(rng, n_p, 5);
        const Eigen::VectorXd lhs = vec(kron_lift(w, p));
        const Eigen::VectorXd rhs = blkdiag_kron(p, n_w) * vec(w);
        CHECK((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));
    }
}

TEST_CASE("stacked Hankel pair is a row permutation of the combined-signal Hankel") {
    Rng rng(23);
    const int n_w = 2, n_p = 2, depth = 4, len = 11;
    const Eigen::MatrixXd w = test::random_matrix(rng, n_w, len);
    const Eigen::MatrixXd p = test::random_matrix(rng, n_p, len);
    const Eigen::MatrixXd wp = kron_lift(w, p);

    Eigen::MatrixXd combined(n_w + n_p * n_w, len);
    combined << w, wp;
    const HankelMatrix h_combined = hankel(combined, depth);

    const HankelMatrix hw = hankel(w, depth);
    const HankelMatrix hwp = hankel(wp, depth);
    Eigen::MatrixXd stacked(hw.rows() + hwp.rows(), hw.cols());
    stacked << hw.entries, hwp.entries;

    const std::vector<int> perm = lifted_row_permutation(depth, n_w, n_p);
    REQUIRE(static_cast<int>(perm.size()) == stacked.rows());
    for (int r = 0; r < stacked.rows(); ++r) {
        CHECK(stacked.row(r) == h_combined.entries.row(perm[static_cast<size_t>(r)]));
    }
}

TEST_CASE("concat keeps order and checks dimensions") {
    Rng rng(7);
    const Trajectory a(test::random_matrix(rng, 2, 3), 1, 1);
    const Trajectory b(test::random_matrix(rng, 2, 5), 1, 1);
    const Trajectory joined = concat(a, b);
    CHECK(joined.length() == 8);
    CHECK(joined.samples().leftCols(3) == a.samples());
    CHECK(joined.samples().rightCols(5) == b.samples());

    // Empty left operand is the identity.
    const Trajectory empty(Eigen::MatrixXd(2, 0), 1, 1);
    CHECK(concat(empty, b).samples() == b.samples());

    // An initial window of 5 samples extended with a 35-sample response spans
    // the length-40 representation window.
    const Trajectory ini(test::random_matrix(rng, 2, 5), 1, 1);
    const Trajectory resp(test::random_matrix(rng, 2, 35), 1, 1);
    CHECK(concat(ini, resp).length() == 40);

    const Trajectory wide(test::random_matrix(rng, 3, 4), 2, 1);
    CHECK_THROWS_AS(concat(a, wide), std::invalid_argument);
}

TEST_CASE("trajectory invariants") {
    CHECK_THROWS_AS(Trajectory(Eigen::MatrixXd::Zero(2, 4), 2, 0), std::invalid_argument);
    CHECK_THROWS_AS(Trajectory(Eigen::MatrixXd::Zero(2, 4), 2, 1), std::invalid_argument);

    const Trajectory t(Eigen::MatrixXd::Random(3, 6), 2, 1, 1);
    const Trajectory mid = t.segment(2, 3);
    CHECK(mid.start_index() == 3);
    CHECK(mid.samples() == t.samples().middleCols(2, 3));
    CHECK_THROWS_AS(t.segment(4, 4), std::invalid_argument);

    const SchedulingTrajectory boxed(Eigen::MatrixXd::Ones(1, 3) * 0.5,
                                     -Eigen::VectorXd::Ones(1), Eigen::VectorXd::Ones(1));
    CHECK(boxed.has_box());
    CHECK_THROWS_AS(SchedulingTrajectory(Eigen::MatrixXd::Ones(1, 3) * 2.0,
                                         -Eigen::VectorXd::Ones(1), Eigen::VectorXd::Ones(1)),
                    std::invalid_argument);
}

TEST_SUITE_END();
