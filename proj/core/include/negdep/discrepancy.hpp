#pragma once

#include "negdep/dependence.hpp"
#include "negdep/geometry.hpp"

#include <cstdint>

namespace negdep {

struct StarDiscrepancy {
    Rational value = 0;
    /// Corner of the critical grid where the supremum is attained; when
    /// witness_closed the supremum is approached by boxes closing on the
    /// corner from above (points on the boundary counted in).
    AnchoredBox witness;
    bool witness_closed = false;
    std::uint64_t corners = 0;

    double value_d() const { return to_double(value); }
};

/// Exact star discrepancy over the critical grid (per-dimension coordinate
/// values plus 1), evaluating open and closed counts at every corner.
/// Budget counts point-in-box evaluations (N times the corner count).
StarDiscrepancy star_discrepancy_exact(const PointSet& p,
                                       std::uint64_t budget = 100'000'000);

/// Recomputes |count/N - vol| at the witness corner of a report (closed or
/// open count per the witness flag). Equals the reported value.
Rational discrepancy_at_witness(const PointSet& p, const StarDiscrepancy& report);

struct BoundParams {
    double c = 0.0;
    int dim = 1;
    double gamma_log = 0.0;  // ln(gamma), so gamma = e^d stays representable
};

/// 1 - exp(gamma_log - (1.6741 c^2 - 10.7042) d), clamped to [0,1].
double success_probability(const BoundParams& bp);

/// Smallest 4-decimal c with 1.6741 c^2 - 10.7042 > gamma_rate, where
/// gamma_rate = ln(gamma)/d (0 for independent points, 1 for Latin
/// hypercube samples). Rounded up.
double min_constant(double gamma_rate);

struct BoundCheck {
    int seeds = 0;
    int within = 0;
    double fraction = 0.0;
    double threshold = 0.0;  // c sqrt(d/N)
    double predicted = 0.0;  // success_probability
};

/// Fraction of seeded realizations whose exact star discrepancy stays below
/// c sqrt(d/N), next to the success-probability prediction.
BoundCheck bound_vs_empirical(const RandomPointModel& model, double c, int seeds,
                              std::uint64_t seed0, double gamma_rate);

/// One realization of a model (mc/lhs: generated; scrambled net: the base
/// net scrambled with the given seed).
PointSet sample_model(const RandomPointModel& model, std::uint64_t seed);

}  // namespace negdep
