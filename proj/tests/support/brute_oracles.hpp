#pragma once

// Test-only reference oracles, deliberately written as direct transcriptions
// of the definitions. They enumerate labeled permutation tuples with no
// factorization or symmetry reduction, so they stay independent of the
// production enumeration path they are used to check.

#include "negdep/dependence.hpp"
#include "negdep/geometry.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace negdep::testing {

/// Joint probability for a Latin hypercube sample by brute force over all
/// (N!)^d labeled permutation tuples. Feasible for N! ^ d up to ~10^5.
inline Rational brute_lhs_joint(const DependenceQuery& q, int dim, int n_points) {
    std::vector<std::vector<int>> perms;
    std::vector<int> base(n_points);
    std::iota(base.begin(), base.end(), 0);
    do {
        perms.push_back(base);
    } while (std::next_permutation(base.begin(), base.end()));

    const AnchoredBox inner = q.set.effective_inner();
    const BigInt cells = n_points;

    Rational total = 0;
    BigInt tuples = 0;
    std::vector<std::size_t> pick(dim, 0);  // one permutation index per coordinate
    while (true) {
        Rational term = 1;
        for (const int j : q.points) {
            Rational in_outer = 1, in_inner = 1;
            for (int i = 0; i < dim; ++i) {
                const int cell = perms[pick[i]][j - 1];
                in_outer *= cell_fraction(q.set.outer().upper()[i], cells, cell);
                in_inner *= cell_fraction(inner.upper()[i], cells, cell);
            }
            const Rational member = in_outer - in_inner;
            term *= q.side == DependenceSide::upper ? member : 1 - member;
        }
        total += term;
        ++tuples;

        std::size_t pos = 0;
        while (pos < pick.size()) {
            if (++pick[pos] < perms.size()) break;
            pick[pos] = 0;
            ++pos;
        }
        if (pos == pick.size()) break;
    }
    return total / Rational(tuples);
}

/// Star discrepancy by dense rational grid refinement of the critical
/// corners; used as a slow cross-check on tiny 1-d and 2-d sets.
inline Rational brute_star_discrepancy(const PointSet& p, int grid) {
    const int d = p.dim();
    Rational best = 0;
    std::vector<int> idx(d, 0);
    while (true) {
        std::vector<Rational> corner(d);
        for (int i = 0; i < d; ++i) corner[i] = Rational(idx[i], grid);
        Rational vol = 1;
        for (int i = 0; i < d; ++i) vol *= corner[i];
        int count = 0;
        for (int n = 0; n < p.size(); ++n) {
            bool in = true;
            for (int i = 0; i < d && in; ++i)
                if (p.at(n, i).rational() >= corner[i]) in = false;
            count += in;
        }
        const Rational diff = Rational(count, p.size()) - vol;
        const Rational mag = diff < 0 ? Rational(-diff) : diff;
        if (mag > best) best = mag;

        int pos = d - 1;
        while (pos >= 0) {
            if (++idx[pos] <= grid) break;
            idx[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return best;
}

}  // namespace negdep::testing
