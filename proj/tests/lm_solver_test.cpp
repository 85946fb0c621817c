#include <cmath>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "mbuw/errors.hpp"
#include "mbuw/lm_solver.hpp"

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

mbuw::LmProblem linear_problem(const MatrixXd& a, const VectorXd& b) {
    mbuw::LmProblem p;
    p.residual = [a, b](const VectorXd& th) -> VectorXd { return a * th - b; };
    p.jacobian = [a](const VectorXd&) -> MatrixXd { return a; };
    p.lower_bounds = VectorXd::Constant(a.cols(), -1e300);
    return p;
}

}  // namespace

TEST(Lm, ScalarLinear) {
    const auto res = mbuw::lm_solve(linear_problem(MatrixXd::Ones(1, 1), VectorXd::Constant(1, 3.0)),
                                    VectorXd::Zero(1));
    EXPECT_TRUE(res.converged);
    EXPECT_NEAR(res.estimate(0), 3.0, 1e-9);
}

TEST(Lm, OverdeterminedLinearMatchesNormalEquations) {
    MatrixXd a(3, 2);
    a << 1, 0, 0, 2, 1, 1;
    VectorXd b(3);
    b << 1, 2, 2;
    const VectorXd exact = (a.transpose() * a).ldlt().solve(a.transpose() * b);
    const double exact_sse = (a * exact - b).squaredNorm();

    const auto res = mbuw::lm_solve(linear_problem(a, b), VectorXd::Zero(2));
    EXPECT_TRUE(res.converged);
    EXPECT_NEAR(res.sse, exact_sse, 1e-10);
    EXPECT_NEAR((res.estimate - exact).norm(), 0.0, 1e-6);
}

TEST(Lm, ExponentialDecay) {
    VectorXd t(8);
    VectorXd y(8);
    for (int i = 0; i < 8; ++i) {
        t(i) = 0.5 * i;
        y(i) = std::exp(-0.7 * t(i));
    }
    mbuw::LmProblem p;
    p.residual = [t, y](const VectorXd& th) -> VectorXd { return y - (-th(0) * t.array()).exp().matrix(); };
    p.jacobian = [t](const VectorXd& th) -> MatrixXd {
        return (t.array() * (-th(0) * t.array()).exp()).matrix();
    };
    p.lower_bounds = VectorXd::Constant(1, 1e-8);
    const auto res = mbuw::lm_solve(p, VectorXd::Constant(1, 0.1));
    EXPECT_TRUE(res.converged);
    EXPECT_NEAR(res.estimate(0), 0.7, 1e-6);
}

TEST(Lm, SseTraceNonIncreasing) {
    mbuw::LmProblem p;
    p.residual = [](const VectorXd& th) -> VectorXd {
        VectorXd r(2);
        r << 10 * (th(1) - th(0) * th(0)), 1 - th(0);
        return r;
    };
    p.jacobian = [](const VectorXd& th) -> MatrixXd {
        MatrixXd j(2, 2);
        j << -20 * th(0), 10, -1, 0;
        return j;
    };
    p.lower_bounds = VectorXd::Constant(2, -1e300);
    VectorXd start(2);
    start << -1.2, 1.0;
    const auto res = mbuw::lm_solve(p, start);
    EXPECT_TRUE(res.converged);
    EXPECT_NEAR(res.estimate(0), 1.0, 1e-6);
    ASSERT_GE(res.sse_trace.size(), 2u);
    for (std::size_t i = 1; i < res.sse_trace.size(); ++i) EXPECT_LE(res.sse_trace[i], res.sse_trace[i - 1]);
}

TEST(Lm, BoundsRespected) {
    // Unconstrained optimum at -2; bound at 0.5.
    mbuw::LmProblem p = linear_problem(MatrixXd::Ones(1, 1), VectorXd::Constant(1, -2.0));
    p.lower_bounds = VectorXd::Constant(1, 0.5);
    const auto res = mbuw::lm_solve(p, VectorXd::Constant(1, 3.0));
    EXPECT_GT(res.estimate(0), 0.5);
}

TEST(Lm, IterationCapReportsNotConverged) {
    mbuw::LmConfig cfg;
    cfg.max_iter = 1;
    mbuw::LmProblem p;
    p.residual = [](const VectorXd& th) -> VectorXd { return VectorXd::Constant(1, std::exp(-th(0)) - 0.3); };
    p.jacobian = [](const VectorXd& th) -> MatrixXd { return MatrixXd::Constant(1, 1, -std::exp(-th(0))); };
    p.lower_bounds = VectorXd::Constant(1, -1e300);
    const auto res = mbuw::lm_solve(p, VectorXd::Constant(1, 5.0), cfg);
    EXPECT_FALSE(res.converged);
    EXPECT_EQ(res.iterations, 1);
}

TEST(Lm, NonFiniteResidualThrows) {
    mbuw::LmProblem p;
    p.residual = [](const VectorXd&) -> VectorXd { return VectorXd::Constant(1, std::nan("")); };
    p.jacobian = [](const VectorXd&) -> MatrixXd { return MatrixXd::Ones(1, 1); };
    p.lower_bounds = VectorXd::Constant(1, -1e300);
    EXPECT_THROW(mbuw::lm_solve(p, VectorXd::Zero(1)), mbuw::NumericalError);
}

TEST(Lm, SingularNormalEquationsThrow) {
    mbuw::LmProblem p;
    p.residual = [](const VectorXd&) -> VectorXd { return VectorXd::Ones(2); };
    p.jacobian = [](const VectorXd&) -> MatrixXd { return MatrixXd::Constant(2, 2, 1e12); };
    p.lower_bounds = VectorXd::Constant(2, -1e300);
    EXPECT_THROW(mbuw::lm_solve(p, VectorXd::Zero(2)), mbuw::NumericalError);
}

TEST(StandardErrors, ScaledBySampleSize) {
    Eigen::Matrix2d gmm1;
    gmm1 << 12.1458, -0.7633, -0.7633, 0.0617;
    const VectorXd se = mbuw::standard_errors(gmm1, 35);
    EXPECT_NEAR(se(0), 0.586, 0.005);
    EXPECT_NEAR(se(1), 0.042, 0.005);

    Eigen::Matrix2d pct2;
    pct2 << 52.4635, 219.6857, 219.6857, 949.066;
    const VectorXd se2 = mbuw::standard_errors(pct2, 20);
    EXPECT_NEAR(se2(0), 1.620, 1e-3);
    EXPECT_NEAR(se2(1), 6.889, 1e-3);

    const VectorXd unit = mbuw::standard_errors(MatrixXd::Identity(3, 3), 4);
    EXPECT_TRUE(unit.isApprox(VectorXd::Constant(3, 0.5)));
}

TEST(StandardErrors, NegativeDiagonalThrows) {
    Eigen::Matrix2d m;
    m << 1.66e4, -1.7e5, -1.7e5, -1.6e6;
    EXPECT_THROW(mbuw::standard_errors(m, 20), mbuw::NumericalError);
}
