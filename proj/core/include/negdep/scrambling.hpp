#pragma once

#include "negdep/geometry.hpp"
#include "negdep/rng.hpp"
#include "negdep/sampling.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

namespace negdep {

/// How the permutation scrambling digit j is selected: by the full digit
/// prefix (nested) or by the digit position alone (positional).
enum class ScrambleFramework { nested, positional };

/// The permutation family each node draws from. affine_matrix is the fixed
/// nested/positional hybrid where digit k gets h_{k,k} x_k + sum_{j<k}
/// h_{k,j} x_j + g_k mod b; it ignores the framework field.
enum class PermFamily { uniform, linear, digital_shift, affine_matrix };

struct ScramblingScheme {
    ScrambleFramework framework = ScrambleFramework::nested;
    PermFamily family = PermFamily::uniform;
    int depth = 1;
    int base = 2;
    bool symmetrize = false;
    std::uint64_t seed = 0;
    /// Fault injection for the abstract-net checker tests: reuse point 0's
    /// tail vector for every point, breaking condition (iii).
    bool break_tail_independence = false;

    void validate() const;
};

/// First `count` base-b digits of x in [0,1), terminating convention
/// (infinitely many digits differ from b-1). Exact for both double and
/// rational coordinates.
std::vector<std::uint8_t> digits(const Coord& x, int base, int count);

/// Uniform draw from the named permutation family on {0..b-1}.
/// linear and digital_shift require a prime base.
std::vector<std::uint8_t> sample_permutation(PermFamily family, int base, Rng& rng);

/// Realized random choices of one coordinate's scrambling.
struct CoordinateTables {
    /// nested/positional node permutations keyed by (level, digit prefix
    /// packed most-significant-first); positional nodes use prefix key 0.
    std::map<std::pair<int, std::uint32_t>, std::vector<std::uint8_t>> node_perms;
    /// affine-matrix coefficients, k = 1..depth stored at k-1.
    std::vector<std::uint8_t> affine_diag;                 // h_{k,k} in {1..b-1}
    std::vector<std::vector<std::uint8_t>> affine_lower;   // h_{k,j}, j < k
    std::vector<std::uint8_t> affine_shift;                // g_k
};

struct ScramblingRealization {
    ScramblingScheme scheme;
    int dim = 0;
    int n_points = 0;
    std::vector<CoordinateTables> coords;             // per coordinate
    std::vector<std::vector<std::uint64_t>> tails;    // [n][j], 53-bit numerators
    std::vector<std::uint32_t> relabel;               // output i -> source point

    /// Applies the realized digit permutations of coordinate `coord` to a
    /// packed depth-digit prefix.
    std::uint32_t map_prefix(int coord, std::uint32_t prefix) const;
};

struct ScrambleResult {
    PointSet points;
    ScramblingRealization realization;
};

/// Applies a d-tuple of independent depth-l scramblings to the point set.
/// Output coordinates are exact dyadic rationals (permuted prefix plus a
/// 53-bit uniform tail over b^-depth). With symmetrize, the output order is
/// a uniform random relabeling of the scrambled points.
ScrambleResult scramble(const PointSet& p, const ScramblingScheme& scheme);

/// Replays a realization on a point set; bit-identical to the scramble()
/// call that produced it.
PointSet apply_realization(const PointSet& p, const ScramblingRealization& r);

/// All-identity realization (identity permutations, unit affine diagonal,
/// zero tails, identity relabel) for the given geometry.
ScramblingRealization identity_realization(const ScramblingScheme& scheme, int n_points,
                                           int dim);

/// Nested uniform scrambling with permutations at every digit level up to
/// `precision` and no uniform tail beyond the truncation.
PointSet infinite_digit_scramble(const PointSet& p, int base, int precision,
                                 std::uint64_t seed);

/// Packed depth-digit prefixes of every point/coordinate: floor(x * b^depth).
std::vector<std::vector<std::uint32_t>> point_prefixes(const PointSet& p, int base, int depth);

/// One sampled trial of the integer fast path: basic-cube indices and
/// within-cube offsets per output point and coordinate. Agrees bit-for-bit
/// with floor/remainder of scramble() at the same seed.
struct CubeSample {
    std::vector<std::vector<std::uint32_t>> cubes;  // [i][j]
    std::vector<std::vector<double>> offsets;       // [i][j] in [0,1)
};
CubeSample scramble_cubes(const std::vector<std::vector<std::uint32_t>>& base_prefixes,
                          const ScramblingScheme& scheme, std::uint64_t seed);

/// Full per-coordinate realization space of a depth-l scrambling, as prefix
/// maps on [0, b^l). Used by the exact enumeration oracle. Throws
/// BudgetExceeded when the space is larger than `cap`.
std::vector<std::vector<std::uint32_t>> enumerate_prefix_maps(ScrambleFramework framework,
                                                              PermFamily family, int base,
                                                              int depth,
                                                              std::uint64_t cap = 1'000'000);

/// Statistical check of the abstract-scrambled-net conditions:
/// (i) every trial's output is again a net, (ii) per-point basic-cube
/// frequencies are uniform (chi-square), (iii) within-cube offsets are
/// uniform per axis (Kolmogorov-Smirnov) and uncorrelated across the
/// (point, axis) series. Bonferroni-adjusted at `significance`.
struct AbstractNetCheck {
    int trials = 0;
    double significance = 1e-3;

    bool net_property_ok = true;
    std::uint64_t net_failures = 0;

    bool cube_uniform_ok = true;
    double cube_pvalue_min = 1.0;

    bool within_cube_uniform_ok = true;
    double ks_pvalue_min = 1.0;

    bool within_cube_independent_ok = true;
    double corr_pvalue_min = 1.0;
    double corr_abs_max = 0.0;

    bool ok() const {
        return net_property_ok && cube_uniform_ok && within_cube_uniform_ok &&
               within_cube_independent_ok;
    }
};

AbstractNetCheck verify_abstract_conditions(const ScramblingScheme& scheme,
                                            const NetParams& params, const PointSet& base,
                                            int trials, double significance = 1e-3);

/// Same checks driven by an arbitrary sampler (e.g. infinite-digit
/// scrambling); the sampler receives a derived per-trial seed.
AbstractNetCheck verify_abstract_conditions_sampled(
    const std::function<PointSet(std::uint64_t)>& sampler, const NetParams& params, int trials,
    double significance = 1e-3, std::uint64_t seed = 0);

}  // namespace negdep
