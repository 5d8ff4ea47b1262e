#include "catch_amalgamated.hpp"

#include "relspace/error.hpp"
#include "relspace/product_space.hpp"
#include "support/fixtures.hpp"

using namespace relspace;
using Catch::Approx;

namespace {

BinaryRcaMatrix toy()
{
    Eigen::MatrixXd x(3, 2);
    x << 1, 1, 1, 0, 0, 1;
    return BinaryRcaMatrix(x, 2012);
}

Eigen::MatrixXd mat(std::initializer_list<std::initializer_list<double>> rows)
{
    Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()),
                        static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index i = 0;
    for (const auto& row : rows) {
        Eigen::Index j = 0;
        for (double v : row)
            out(i, j++) = v;
        ++i;
    }
    return out;
}

}  // namespace

TEST_CASE("C on the toy matrix")
{
    const auto c = product_space::cond_prob_C(toy());
    CHECK(c.values.isApprox(mat({{1, .5, .5}, {1, 1, 0}, {1, 0, 1}})));
    CHECK(c.kind == ProbKind::C);
    CHECK(c.zeroed_rows.empty());
}

TEST_CASE("B on the toy matrix zeroes the u = 0 row")
{
    const auto x = toy();
    const auto b = product_space::cond_prob_B(x, compute_anti_rca(x));
    CHECK((b.values - mat({{0, 0, 0}, {1, 0, 1}, {1, 1, 0}})).cwiseAbs().maxCoeff() == 0.0);
    REQUIRE(b.zeroed_rows.size() == 1);
    CHECK(b.zeroed_rows[0] == 0);
    CHECK(b.values.diagonal().isZero());
}

TEST_CASE("K on the toy matrix")
{
    const auto x = toy();
    const auto k = product_space::marginal_K(product_space::cond_prob_C(x),
                                             product_space::cond_prob_B(x, compute_anti_rca(x)));
    CHECK((k.values - mat({{1, .5, .5}, {0, 1, -1}, {0, -1, 1}})).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("K of equal operands is zero and mismatched shapes throw")
{
    const auto x = toy();
    const auto c = product_space::cond_prob_C(x);
    CHECK(product_space::marginal_K(c, c).values.isZero());
    ConditionalProbMatrix small{Eigen::MatrixXd::Zero(2, 2), ProbKind::B, Side::Product, 2012, {}};
    try {
        product_space::marginal_K(c, small);
        FAIL("expected ShapeMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ShapeMismatch);
    }
}

TEST_CASE("D on the toy matrix, country 1")
{
    const auto x = toy();
    const auto cmin = product_space::symmetrized(product_space::cond_prob_C(x));
    CHECK(cmin.values.isApprox(mat({{1, .5, .5}, {.5, 1, 0}, {.5, 0, 1}})));
    const auto d = product_space::density_D(x, cmin);
    CHECK(d.values(0, 0) == Approx(0.75));
    CHECK(d.values(1, 0) == Approx(1.0));
    CHECK(d.values(2, 0) == Approx(1.0 / 3.0));
}

TEST_CASE("D saturation: all-RCA column is ones and empty column is zeros")
{
    Eigen::MatrixXd x(4, 3);
    x << 1, 1, 0, 1, 0, 0, 1, 1, 0, 1, 0, 0;
    const BinaryRcaMatrix bx(x);
    const auto d = product_space::density_D(bx, product_space::symmetrized(product_space::cond_prob_C(bx)));
    CHECK(d.values.col(0).isOnes());
    CHECK(d.values.col(2).isZero());
}

TEST_CASE("C for a single country and for identical rows")
{
    Eigen::MatrixXd one(3, 1);
    one << 1, 0, 1;
    const auto c1 = product_space::cond_prob_C(BinaryRcaMatrix(one));
    CHECK(c1.values.isApprox(mat({{1, 0, 1}, {0, 0, 0}, {1, 0, 1}})));
    CHECK(c1.zeroed_rows == std::vector<Eigen::Index>{1});

    Eigen::MatrixXd same(3, 4);
    same << 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0;
    const auto c2 = product_space::cond_prob_C(BinaryRcaMatrix(same));
    CHECK(c2.values.isOnes());
}

TEST_CASE("all-ones X: B vanishes, E is ones")
{
    const BinaryRcaMatrix x(Eigen::MatrixXd::Ones(4, 3));
    const auto z = compute_anti_rca(x);
    const auto c = product_space::cond_prob_C(x);
    const auto b = product_space::cond_prob_B(x, z);
    CHECK(b.values.isZero());
    const auto e = product_space::indicator_E(x, z, c, b);
    CHECK(e.e.values.isOnes());
    const auto k = product_space::marginal_K(c, b);
    CHECK((e.e2.values - k.values.transpose() * x.x() / 4.0).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("Dtilde equals D when B vanishes")
{
    Eigen::MatrixXd one(4, 1);
    one << 1, 0, 1, 1;
    const BinaryRcaMatrix x(one);
    const auto z = compute_anti_rca(x);
    const auto cmin = product_space::symmetrized(product_space::cond_prob_C(x));
    const auto bmin = product_space::symmetrized(product_space::cond_prob_B(x, z));
    CHECK(bmin.values.isZero());
    CHECK(product_space::density_Dtilde(x, z, cmin, bmin).values ==
          product_space::density_D(x, cmin).values);
}

TEST_CASE("Dtilde on the toy matrix matches a hand expansion")
{
    const auto x = toy();
    const auto z = compute_anti_rca(x);
    const auto cmin = product_space::symmetrized(product_space::cond_prob_C(x));
    const auto bmin = product_space::symmetrized(product_space::cond_prob_B(x, z));
    // Bmin = [[0,0,0],[0,0,1],[0,1,0]]; country 1 has z = (0,0,1).
    // product 1: (1*1 + .5*1 + .5*0 + 0) / (2 + 0) = .75
    // product 2: (.5 + 1 + 0 + 1*1) / (1.5 + 1) = 1
    // product 3: (.5 + 0 + 0 + 0) / (1.5 + 1) = .2
    const auto dt = product_space::density_Dtilde(x, z, cmin, bmin);
    CHECK(dt.values(0, 0) == Approx(0.75));
    CHECK(dt.values(1, 0) == Approx(1.0));
    CHECK(dt.values(2, 0) == Approx(0.2));
}

TEST_CASE("product space matches the counting oracle on random matrices")
{
    std::mt19937_64 gen(7);
    std::uniform_int_distribution<int> dim(1, 8);
    std::uniform_int_distribution<int> dimn(1, 6);
    std::uniform_real_distribution<double> dens(0.05, 0.95);
    for (int trial = 0; trial < 300; ++trial) {
        const auto bits = fixtures::random_bits(gen, dim(gen), dimn(gen), dens(gen));
        const BinaryRcaMatrix x(fixtures::to_matrix(bits));
        const auto o = oracle::compute(bits);
        const auto p = fixtures::run_pipeline(x);
        INFO("trial " << trial);
        CHECK(fixtures::max_diff(p.c.values, o.c) <= 1e-12);
        CHECK(fixtures::max_diff(p.b.values, o.b) <= 1e-12);
        CHECK(fixtures::max_diff(p.k.values, o.k) <= 1e-12);
        CHECK(fixtures::max_diff(p.cmin.values, o.cmin) <= 1e-12);
        CHECK(fixtures::max_diff(p.bmin.values, o.bmin) <= 1e-12);
        CHECK(fixtures::max_diff(p.d.values, o.d) <= 1e-12);
        CHECK(fixtures::max_diff(p.dt.values, o.dt) <= 1e-12);
        CHECK(fixtures::max_diff(p.e.e.values, o.e) <= 1e-12);
        CHECK(fixtures::max_diff(p.e.e1.values, o.e1) <= 1e-12);
        CHECK(fixtures::max_diff(p.e.e2.values, o.e2) <= 1e-12);
    }
}

TEST_CASE("product space invariants on random matrices")
{
    std::mt19937_64 gen(11);
    std::uniform_int_distribution<int> dim(2, 9);
    for (int trial = 0; trial < 200; ++trial) {
        const int m = dim(gen), n = dim(gen);
        const BinaryRcaMatrix x(fixtures::to_matrix(fixtures::random_bits(gen, m, n, 0.4)));
        const auto p = fixtures::run_pipeline(x);
        INFO("trial " << trial);

        // ubiquity redistribution: row sums of E over countries equal s
        const Eigen::VectorXd rows = p.e.e.values.rowwise().sum();
        CHECK((rows - x.s().cast<double>()).cwiseAbs().maxCoeff() <= 1e-10);
        CHECK((p.e.e.values - p.e.e1.values - p.e.e2.values).cwiseAbs().maxCoeff() <= 1e-12);

        // both algebraic forms of E agree
        const Eigen::MatrixXd o = Eigen::MatrixXd::Ones(m, n);
        const Eigen::MatrixXd z = o - x.x();
        const Eigen::MatrixXd first = p.c.values.transpose() * x.x() + p.b.values.transpose() * z;
        const Eigen::MatrixXd second = p.b.values.transpose() * o + p.k.values.transpose() * x.x();
        CHECK((first - second).cwiseAbs().maxCoeff() <= 1e-12);

        // E1 has identical columns
        for (Eigen::Index j = 1; j < n; ++j)
            CHECK(p.e.e1.values.col(j) == p.e.e1.values.col(0));

        CHECK(p.c.values.minCoeff() >= 0.0);
        CHECK(p.c.values.maxCoeff() <= 1.0);
        CHECK(p.b.values.minCoeff() >= 0.0);
        CHECK(p.b.values.maxCoeff() <= 1.0);
        CHECK(p.k.values.minCoeff() >= -1.0);
        CHECK(p.k.values.maxCoeff() <= 1.0);
        for (Eigen::Index i = 0; i < m; ++i)
            if (x.s()(i) > 0)
                CHECK(p.c.values(i, i) == 1.0);
        CHECK(p.cmin.values == p.cmin.values.transpose());
        CHECK(p.bmin.values == p.bmin.values.transpose());
        CHECK(p.d.values.minCoeff() >= 0.0);
        CHECK(p.d.values.maxCoeff() <= 1.0 + 1e-15);
        CHECK(p.dt.values.minCoeff() >= 0.0);
        CHECK(p.dt.values.maxCoeff() <= 1.0 + 1e-15);
        CHECK(p.d.id == IndicatorId::D);
        CHECK(p.e.e2.id == IndicatorId::E2);
    }
}
