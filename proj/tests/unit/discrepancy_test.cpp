#include "negdep/discrepancy.hpp"

#include "brute_oracles.hpp"
#include "negdep/errors.hpp"
#include "negdep/rng.hpp"
#include "negdep/sampling.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace negdep;

TEST_CASE("single point at the origin has discrepancy one") {
    PointSet ps(2);
    ps.push_point({Rational(0), Rational(0)});
    const auto d = star_discrepancy_exact(ps);
    CHECK(d.value == 1);
}

TEST_CASE("midpoint sets attain 1/(2N)") {
    for (const int n : {1, 2, 4, 8, 16}) {
        PointSet ps(1);
        for (int k = 0; k < n; ++k) ps.push_point({Rational(2 * k + 1, 2 * n)});
        CHECK(star_discrepancy_exact(ps).value == Rational(1, 2 * n));
    }
}

TEST_CASE("grid evaluation matches a dense brute-force scan") {
    // The brute-force grid scan evaluates anchored boxes with corners on a
    // fine lattice; on lattice-aligned points it sees the same supremum.
    PointSet ps(2);
    ps.push_point({Rational(1, 4), Rational(3, 4)});
    ps.push_point({Rational(1, 2), Rational(1, 4)});
    ps.push_point({Rational(3, 4), Rational(1, 2)});
    const auto fast = star_discrepancy_exact(ps);
    const Rational slow = testing::brute_star_discrepancy(ps, 64);
    CHECK(fast.value == slow);
}

TEST_CASE("discrepancy is invariant under point reordering") {
    Rng rng(3);
    PointSet ps(2);
    std::vector<std::vector<Coord>> pts;
    for (int n = 0; n < 12; ++n) {
        pts.push_back({rng.next_unit(), rng.next_unit()});
        ps.push_point(pts.back());
    }
    PointSet shuffled(2);
    std::vector<int> order(12);
    for (int i = 0; i < 12; ++i) order[i] = i;
    Rng perm_rng(4);
    std::vector<int> ord = order;
    perm_rng.shuffle(ord);
    for (const int i : ord) shuffled.push_point(pts[i]);
    CHECK(star_discrepancy_exact(ps).value == star_discrepancy_exact(shuffled).value);
}

TEST_CASE("witness recomputation equals the reported value") {
    Rng rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        PointSet ps(2);
        for (int n = 0; n < 8; ++n) ps.push_point({rng.next_unit(), rng.next_unit()});
        const auto report = star_discrepancy_exact(ps);
        CHECK(discrepancy_at_witness(ps, report) == report.value);
    }
}

TEST_CASE("budget guard") {
    PointSet ps(3);
    Rng rng(1);
    for (int n = 0; n < 30; ++n)
        ps.push_point({rng.next_unit(), rng.next_unit(), rng.next_unit()});
    CHECK_THROWS_AS(star_discrepancy_exact(ps, 1000), BudgetExceeded);
}

TEST_CASE("success probability boundary and monotonicity") {
    const double c_zero = std::sqrt(10.7042 / 1.6741);
    CHECK(success_probability({c_zero, 1, 0.0}) == 0.0);
    CHECK(success_probability({2.5287, 1, 0.0}) > 0.0);
    for (const int d : {1, 5, 50}) {
        CHECK(success_probability({2.6442, d, static_cast<double>(d)}) > 0.0);
    }
    // Monotone increasing in c, decreasing in gamma_log.
    double prev = -1.0;
    for (double c = 2.5; c <= 3.5; c += 0.1) {
        const double p = success_probability({c, 3, 1.0});
        CHECK(p >= prev);
        prev = p;
    }
    CHECK(success_probability({2.8, 3, 0.5}) >= success_probability({2.8, 3, 2.0}));
}

TEST_CASE("minimal constants") {
    CHECK(std::llround(min_constant(0.0) * 1e4) == 25287);
    CHECK(std::llround(min_constant(1.0) * 1e4) == 26442);
    CHECK(min_constant(2.0) > min_constant(1.0));
    CHECK(min_constant(10.0) > min_constant(2.0));
    CHECK_THROWS_AS(min_constant(-0.5), std::invalid_argument);
    // The returned constant strictly satisfies the defining inequality.
    for (const double rate : {0.0, 1.0, 3.5}) {
        const double c = min_constant(rate);
        CHECK(1.6741 * c * c - 10.7042 > rate);
        const double below = c - 1e-4;
        CHECK(1.6741 * below * below - 10.7042 <= rate + 1e-9);
    }
}

TEST_CASE("empirical bound frequencies") {
    // 1-d independent points at N=64: the threshold 0.3161 is far above the
    // typical discrepancy, so every seed stays below it.
    const auto mc = bound_vs_empirical(McModel{1, 64}, 2.5287, 100, 5, 0.0);
    CHECK(mc.fraction == 1.0);
    CHECK(mc.fraction >= mc.predicted);

    // 1-d Latin hypercube: discrepancy is at most 1/64 deterministically.
    const auto lhs = bound_vs_empirical(LhsModel{1, 64}, 2.5287, 100, 5, 1.0);
    CHECK(lhs.fraction == 1.0);

    // 2-d Latin hypercube at N=16: the bound is loose, the prediction small.
    const auto small = bound_vs_empirical(LhsModel{2, 16}, 2.6442, 50, 5, 1.0);
    CHECK(small.fraction >= small.predicted);
}

TEST_CASE("sample_model covers all three kinds") {
    CHECK(sample_model(McModel{2, 5}, 1).size() == 5);
    CHECK(sample_model(LhsModel{3, 4}, 1).dim() == 3);
    const NetParams params{2, 0, 2, 3};
    const auto mats = search_net_matrices(params);
    REQUIRE(mats.has_value());
    ScramblingScheme scheme;
    scheme.base = 2;
    scheme.depth = 2;
    const ScrambledNetModel model{params, net_from_matrices(params, *mats), scheme};
    const PointSet a = sample_model(model, 7);
    const PointSet b = sample_model(model, 7);
    CHECK(a.size() == 4);
    CHECK(verify_net(a, params).ok);
    for (int n = 0; n < a.size(); ++n)
        for (int j = 0; j < a.dim(); ++j)
            CHECK(a.at(n, j).rational() == b.at(n, j).rational());
}
