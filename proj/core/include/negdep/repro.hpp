#pragma once

#include "negdep/rational.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace negdep {

/// Named one-command reproduction checks of the library's reference results.
enum class ReproTarget {
    thm22,              // grid conformance of the pair-ratio bound
    prop23_d2,          // 2-point Latin hypercube exact pair ratio
    prop23_d3,          // 3-point exact triple ratio
    prop23_asymptotic,  // large-d ratio growth constant
    prop39,             // scrambled-net triple ratio limit (4/3)^3
    remark38,           // unsymmetrized-vs-symmetrized witness box
    remark310,          // 4-point Latin hypercube comparison 128/243
    constants,          // minimal discrepancy-bound constants
};

struct ReproOptions {
    std::optional<Rational> eps;
    std::optional<int> seeds;
    std::string emit_curve_path;  // two-column TSV of the ratio-vs-eps curve
};

struct ReproRow {
    std::string check;
    std::string observed;
    std::string expected;
    std::string tolerance;
    bool pass = true;
    bool informational = false;  // shown but not gating
};

struct ReproOutcome {
    ReproTarget target;
    std::vector<ReproRow> rows;
    double elapsed_seconds = 0.0;

    bool pass() const;
};

ReproOutcome run_repro(ReproTarget target, const ReproOptions& options = {});

const std::vector<ReproTarget>& all_repro_targets();
std::optional<ReproTarget> parse_repro_target(std::string_view name);
std::string_view repro_target_name(ReproTarget target);

}  // namespace negdep
