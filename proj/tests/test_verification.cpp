#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "avgctrl/generator.hpp"
#include "avgctrl/verification.hpp"
#include "fixtures.hpp"

using namespace avgctrl;
using fixtures::fig3;
using fixtures::make;

namespace {

ReducedGraph canonical_fig3() {
    ReducedGraph rg = analyze_reduced(fig3());
    return apply_labeling(rg, canonical_relabel(rg));
}

// Midpoint-rule reference for the moment integral of |sigma|^r over the
// uniform probability measure on [-1, 1].
double moment_quadrature(double r, int slices = 2'000'000) {
    double sum = 0.0;
    for (int i = 0; i < slices; ++i) {
        double s = (i + 0.5) / slices;  // symmetric, so integrate [0, 1]
        sum += std::pow(s, r);
    }
    return sum / slices;
}

}  // namespace

TEST_CASE("moment law against quadrature") {
    CHECK(moment(0.0) == doctest::Approx(1.0));
    CHECK(moment(1.0) == doctest::Approx(0.5));
    CHECK(moment(2.0) == doctest::Approx(1.0 / 3.0));
    double r = 3.0 * std::sqrt(2.0) + 1.0 / 3.0;
    CHECK(moment(r) == doctest::Approx(0.179340).epsilon(1e-5));
    for (double probe : {0.5, 1.0, std::sqrt(2.0), r})
        CHECK(moment(probe) == doctest::Approx(moment_quadrature(probe)).epsilon(1e-6));
    CHECK_THROWS_AS(moment(-0.5), std::domain_error);
}

TEST_CASE("exact moment overload agrees with the float route") {
    ReducedGraph rg = canonical_fig3();
    EdgeWeighting w = build_nu(rg);
    NuValue nu{2, 3};  // 1/3 + 3*sqrt2
    CHECK(moment(nu, w) == doctest::Approx(moment(w.value(nu))).epsilon(1e-14));
}

TEST_CASE("columns of the certificate matrix") {
    ReducedGraph rg = canonical_fig3();
    EdgeWeighting w = build_nu(rg);
    ColumnVec c1 = column(rg, w, 1);
    REQUIRE(c1.v.size() == 9);
    // Support = V(1) = {a1, a2}.
    CHECK(c1.v(0) == doctest::Approx(1.0));  // moment of nu = 0
    CHECK(c1.v(1) == doctest::Approx(1.0 / (2.0 * std::sqrt(2.0) + 1.0)));
    CHECK(c1.v(1) == doctest::Approx(0.261204).epsilon(1e-5));
    for (int row = 3; row <= 9; ++row) CHECK(c1.v(row - 1) == 0.0);
    CHECK(c1.provenance[0].has_value());
    CHECK(c1.provenance[1].has_value());
    CHECK_FALSE(c1.provenance[2].has_value());
    // Column 4 is supported on V(4) = {a2, a3, a7, a8}.
    ColumnVec c4 = column(rg, w, 4);
    for (int row = 1; row <= 9; ++row) {
        bool in_support = row == 2 || row == 3 || row == 7 || row == 8;
        CHECK((c4.v(row - 1) != 0.0) == in_support);
        CHECK(c4.provenance[row - 1].has_value() == in_support);
    }
    // Entries follow the moment law on the walk value.
    auto wd = c4.provenance[2];  // a3 at j = 4: nu = 3*sqrt2 + 1/3
    REQUIRE(wd.has_value());
    CHECK(c4.v(2) == doctest::Approx(moment(wd->nu, w)));
    CHECK(c4.v(2) == doctest::Approx(0.179340).epsilon(1e-5));
}

TEST_CASE("column selection of the pruned running example") {
    ReducedGraph rg = canonical_fig3();
    EdgeWeighting w = build_nu(rg);
    ColumnSelection sel = select_columns(rg, w);
    CHECK(sel.j_star == 4);
    CHECK(sel.core_columns == std::vector<std::int64_t>{1});
    REQUIRE(sel.groups.size() == 3);
    CHECK(sel.groups[0].ell == 0);
    CHECK(sel.groups[0].v_prime == std::vector<int>{2, 3, 7, 8});
    CHECK(sel.groups[0].columns == std::vector<std::int64_t>{4, 10, 16, 22});
    CHECK(sel.groups[1].ell == 1);
    CHECK(sel.groups[1].v_prime == std::vector<int>{4, 5, 9});
    CHECK(sel.groups[1].columns == std::vector<std::int64_t>{5, 11, 17});
    CHECK(sel.groups[2].ell == 2);
    CHECK(sel.groups[2].v_prime == std::vector<int>{6});
    CHECK(sel.groups[2].columns == std::vector<std::int64_t>{6});
    CHECK(sel.all_columns ==
          std::vector<std::int64_t>{1, 4, 10, 16, 22, 5, 11, 17, 6});
}

TEST_CASE("rank certificate of the pruned running example") {
    ReducedGraph rg = canonical_fig3();
    EdgeWeighting w = build_nu(rg);
    RankCertificate cert = certify_rank(rg, w);
    CHECK(cert.verdict);
    CHECK(cert.numeric_rank == 9);
    CHECK(cert.sv_ratio > 1e-10);
    REQUIRE(cert.group_checks.size() == 3);
    for (const auto& chk : cert.group_checks) {
        CHECK(chk.nus_distinct);
        CHECK(chk.cauchy_consistent);
        CHECK(chk.det_nonzero);
    }
    CHECK(cert.matrix.rows() == 9);
    CHECK(cert.matrix.cols() == 9);
}

TEST_CASE("wide column window has the same numeric rank") {
    ReducedGraph rg = canonical_fig3();
    EdgeWeighting w = build_nu(rg);
    Eigen::MatrixXd wide(9, 30);
    for (int j = 1; j <= 30; ++j) wide.col(j - 1) = column(rg, w, j).v;
    CHECK(numeric_rank(wide) == 9);
}

TEST_CASE("numeric_rank basics") {
    Eigen::MatrixXd m(3, 3);
    m << 1, 2, 3, 2, 4, 6, 0, 0, 1;
    CHECK(numeric_rank(m) == 2);
    CHECK(numeric_rank(Eigen::MatrixXd::Identity(4, 4)) == 4);
    CHECK(numeric_rank(Eigen::MatrixXd::Zero(3, 3)) == 0);
}

TEST_CASE("certificates pass on random qualifying patterns") {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 1 + static_cast<int>(rng() % 9);
        SparsityPattern g = generate_pattern(n, true, rng());
        auto [rg0, trace] = reduce(g, decide_structural_avg_ctrl(g));
        ReducedGraph rg = apply_labeling(rg0, canonical_relabel(rg0));
        EdgeWeighting w = build_nu(rg);
        RankCertificate cert = certify_rank(rg, w);
        INFO("trial ", trial, " n ", n);
        CHECK(cert.verdict);
        CHECK(cert.numeric_rank == g.n);
        CHECK(static_cast<int>(cert.selection.all_columns.size()) == g.n);
    }
}
