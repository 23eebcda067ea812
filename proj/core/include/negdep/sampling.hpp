#pragma once

#include "negdep/geometry.hpp"
#include "negdep/rng.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace negdep {

/// Parameters of a (t,m,d)-net in base b: N = b^m points, every elementary
/// interval of order m-t holds exactly b^t of them.
struct NetParams {
    int base = 2;
    int t = 0;
    int m = 0;
    int dim = 1;

    int order() const { return m - t; }
    std::uint64_t point_count() const;
    void validate() const;
};

/// The permutations and per-cell uniforms behind a Latin hypercube sample.
/// Point formula: X_{n,j} = (perms[j][n] + uniforms[n][j]) / N, reproducing
/// the sample bit-exactly.
struct LhsRealization {
    int dim = 0;
    int n = 0;
    bool exact = false;
    std::vector<std::vector<std::uint32_t>> perms;  // [j][n]
    std::vector<std::vector<Coord>> uniforms;       // [n][j]
};

struct LhsSample {
    PointSet points;
    LhsRealization realization;
};

/// N i.i.d. uniform points; deterministic in (d, n, seed).
PointSet gen_mc(int dim, int n, std::uint64_t seed);

/// Latin hypercube sample plus its realization. With exact_uniforms the
/// per-cell uniforms are dyadic rationals with denominator 2^53 and the
/// coordinates are exact; otherwise coordinates are doubles.
LhsSample gen_lhs(int dim, int n, std::uint64_t seed, bool exact_uniforms = false);

/// Recomputes the points from a realization (bit-identical to the original).
PointSet lhs_points_from_realization(const LhsRealization& r);

/// d generator matrices, each m x m over the integers mod base.
/// Entry layout: mats[j][row][col]; digit map y = C_j * digits_b(n) mod b
/// with digits least-significant first, output digit r weighted b^-(r+1).
struct GeneratorMatrices {
    int base = 2;
    int m = 0;
    std::vector<std::vector<std::vector<std::uint8_t>>> mats;
};

/// Digital net from generator matrices; coordinates are exact rationals with
/// denominator b^m. Requires a prime base.
PointSet net_from_matrices(const NetParams& params, const GeneratorMatrices& mats);

struct NetViolation {
    ElementaryInterval interval;
    std::uint64_t count = 0;
};

struct NetCheckReport {
    bool ok = false;
    std::uint64_t expected_per_interval = 0;
    std::uint64_t intervals_checked = 0;
    std::vector<NetViolation> violations;
};

/// Checks the net property: every elementary interval of order m-t contains
/// exactly b^t points. The report lists every violating interval.
NetCheckReport verify_net(const PointSet& p, const NetParams& params,
                          std::uint64_t interval_limit = 10'000'000);

/// Brute-force search for generator matrices, scanning d-tuples of m x m
/// matrices mod b in lexicographic order and returning the first tuple whose
/// net passes verify_net (skipping `skip_hits` earlier hits). Returns nullopt
/// when the full space was scanned without (another) hit; throws
/// BudgetExceeded when the space is larger than `budget`.
std::optional<GeneratorMatrices> search_net_matrices(const NetParams& params,
                                                     std::uint64_t budget = 1u << 24,
                                                     std::uint64_t skip_hits = 0);

bool is_prime(int n);

}  // namespace negdep
