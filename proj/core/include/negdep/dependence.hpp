#pragma once

#include "negdep/geometry.hpp"
#include "negdep/sampling.hpp"
#include "negdep/scrambling.hpp"

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

namespace negdep {

enum class DependenceSide { upper, lower };

/// Which joint probability is asked for: with side=upper the probability
/// that every point indexed by `points` (1-based) lands in the test set;
/// with side=lower the probability that none of them does.
struct DependenceQuery {
    TestSet set;
    std::vector<int> points;
    DependenceSide side = DependenceSide::upper;
};

struct ConfidenceInterval {
    double lo = 0.0;
    double hi = 0.0;
};

struct DependenceReport {
    bool exact = true;

    // Exact mode carries exact rationals; ratio handles the zero-product
    // conventions (1 when joint and product both vanish, infinite when only
    // the product does).
    Rational joint = 0;
    Rational product = 0;
    Rational ratio = 0;
    bool ratio_infinite = false;

    // Reporting-boundary doubles, set in both modes.
    double joint_value = 0.0;
    double product_value = 0.0;
    double ratio_value = 0.0;

    // Estimated mode: 99% normal-approximation intervals.
    std::optional<ConfidenceInterval> joint_ci;
    std::optional<ConfidenceInterval> ratio_ci;

    std::uint64_t states = 0;  // enumeration states or replications
};

struct McModel {
    int dim = 1;
    int n = 1;
};

struct LhsModel {
    int dim = 1;
    int n = 1;
};

struct ScrambledNetModel {
    NetParams params;
    PointSet base;
    ScramblingScheme scheme;
};

using RandomPointModel = std::variant<McModel, LhsModel, ScrambledNetModel>;

int model_dim(const RandomPointModel& m);
int model_point_count(const RandomPointModel& m);
bool model_exchangeable(const RandomPointModel& m);

/// Product of the per-coordinate penalty factors: 1 when a_i = 0 or both
/// bounds sit on the 1/N grid, e otherwise.
double gamma_ab(const AnchoredBox& a, const AnchoredBox& b, int n_points);

/// Exact joint/product/ratio for a Latin hypercube model, by enumeration of
/// the per-coordinate cell injections (points conditioned on cells are
/// independent with membership weights that are differences of products, so
/// the average factorizes coordinate by coordinate after an
/// inclusion-exclusion expansion over the per-point membership parts).
DependenceReport exact_joint_lhs(const DependenceQuery& q, int dim, int n_points,
                                 std::uint64_t budget = 10'000'000);

/// Exact values for independent uniform points.
DependenceReport exact_joint_mc(const DependenceQuery& q, int dim);

/// Exact joint/product/ratio for a scrambled-net model by enumeration of the
/// full scrambling realization space (and, when symmetrized, of the ordered
/// label injections). Each point's basic cube is determined per realization;
/// membership probability given the cube is vol(S n C)/vol(C).
DependenceReport exact_joint_scrambled_net(const DependenceQuery& q,
                                           const ScrambledNetModel& model,
                                           std::uint64_t realization_cap = 2'000'000);

DependenceReport exact_joint(const DependenceQuery& q, const RandomPointModel& model);

/// Rao-Blackwellized estimator: samples only the discrete layer
/// (permutations / scrambling realizations / labelings) and accumulates the
/// exact conditional membership products, never indicator hits. 99% CI.
DependenceReport mc_estimate_joint(const DependenceQuery& q, const RandomPointModel& model,
                                   int reps, std::uint64_t seed);

/// Closed forms for the diagonal-corner box family ([0,(d-1)/d)^d grown by
/// eps). ratio = p_event * ((1-1/d)^d)^(1-d) * t_factor, which equals the
/// exact d! eps^d / vol^d identity.
struct LhsRatioAnalytic {
    double probability_event = 0.0;  // d!/d^d
    double joint = 0.0;              // d! eps^d
    double set_volume = 0.0;         // vol(D)
    double remainder = 0.0;          // R(eps,d)
    double t_factor = 0.0;           // T(eps,d)
    double ratio = 0.0;
};
LhsRatioAnalytic lhs_ratio_analytic(int dim, double eps);

/// (3/4 + 3 eps/2 + eps^2)^-3: the exact triple-point ratio of a scrambled
/// (0,2,3)-net in base 2 on the same box family; tends to (4/3)^3.
double net_ratio_analytic(double eps);

/// 2/9 of net_ratio_analytic: the 4-point Latin hypercube analogue; tends to
/// 128/243.
double lhs_vs_net_comparison(double eps);

/// b^(N/b)/b, the unsymmetrized-scrambling lower bound. Requires b | N.
double unsymmetrized_lower_bound(int base, int n_points);

enum class TestFamily { anchored_boxes, box_differences };

/// Deterministic structured grid of test sets: corner coordinates from
/// {k/N} plus {k/N + eps} for each mesh eps. Sets are indexable without
/// materializing the whole grid.
struct TestSetGrid {
    int dim = 1;
    int cells = 1;  // N of the k/N grid
    TestFamily family = TestFamily::box_differences;
    std::vector<Rational> mesh = {Rational(1, 10), Rational(1, 100), Rational(1, 1000),
                                  Rational(1, 10000)};

    std::uint64_t set_count() const;
    TestSet set_at(std::uint64_t index) const;

private:
    std::vector<Rational> corner_values() const;
    std::vector<std::pair<Rational, Rational>> corner_pairs() const;
};

/// Evenly strided sample of (set, J-size, side) queries from a grid,
/// capped at max_queries. J is {1..k} for each size k in [1, N].
std::vector<DependenceQuery> build_grid_queries(const TestSetGrid& grid, int n_points,
                                                std::size_t max_queries);

struct SearchConfig {
    TestFamily family = TestFamily::box_differences;
    std::vector<Rational> mesh = {Rational(1, 10), Rational(1, 100), Rational(1, 1000),
                                  Rational(1, 10000)};
    int max_subset_size = 0;  // 0 = all sizes
    std::uint64_t budget = 200'000;
};

/// Certified lower bound on the correlation number: the maximum exact ratio
/// over the structured grid, with its witnessing query.
struct SearchResult {
    Rational best_ratio = 0;
    bool infinite = false;
    DependenceQuery witness;
    std::uint64_t queries = 0;
};
SearchResult correlation_number_search(const RandomPointModel& model, const SearchConfig& cfg);

}  // namespace negdep
