#include "negdep/discrepancy.hpp"

#include "negdep/errors.hpp"
#include "negdep/sampling.hpp"
#include "negdep/scrambling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace negdep {

StarDiscrepancy star_discrepancy_exact(const PointSet& p, std::uint64_t budget) {
    const int d = p.dim();
    const int n = p.size();

    // Critical grid: sorted unique coordinate values per dimension, plus 1.
    std::vector<std::vector<Rational>> values(d);
    for (int i = 0; i < d; ++i) {
        std::vector<Rational> v;
        v.reserve(n + 1);
        for (int pt = 0; pt < n; ++pt) v.push_back(p.at(pt, i).rational());
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        v.push_back(Rational(1));
        values[i] = std::move(v);
    }

    std::uint64_t corners = 1;
    for (int i = 0; i < d; ++i) {
        if (corners > budget / values[i].size())
            throw BudgetExceeded("star discrepancy grid exceeds budget");
        corners *= values[i].size();
    }
    if (corners > budget / std::max(1, n))
        throw BudgetExceeded("star discrepancy grid exceeds budget");

    // Coordinate ranks: position of each coordinate in its dimension's grid.
    std::vector<std::vector<int>> rank(n, std::vector<int>(d));
    for (int pt = 0; pt < n; ++pt) {
        for (int i = 0; i < d; ++i) {
            const Rational x = p.at(pt, i).rational();
            const auto it = std::lower_bound(values[i].begin(), values[i].end(), x);
            rank[pt][i] = static_cast<int>(it - values[i].begin());
        }
    }

    StarDiscrepancy out;
    out.corners = corners;
    std::vector<int> idx(d, 0);
    std::vector<Rational> corner(d);
    while (true) {
        int open_count = 0, closed_count = 0;
        for (int pt = 0; pt < n; ++pt) {
            bool open_in = true, closed_in = true;
            for (int i = 0; i < d && closed_in; ++i) {
                if (rank[pt][i] > idx[i]) {
                    open_in = false;
                    closed_in = false;
                } else if (rank[pt][i] == idx[i]) {
                    open_in = false;
                }
            }
            open_count += open_in;
            closed_count += closed_in;
        }
        Rational vol = 1;
        for (int i = 0; i < d; ++i) vol *= values[i][idx[i]];
        const Rational under = vol - Rational(open_count, n);
        const Rational over = Rational(closed_count, n) - vol;
        if (under > out.value || over > out.value) {
            for (int i = 0; i < d; ++i) corner[i] = values[i][idx[i]];
            out.witness = AnchoredBox(corner);
            if (over >= under) {
                out.value = over;
                out.witness_closed = true;
            } else {
                out.value = under;
                out.witness_closed = false;
            }
        }
        int pos = d - 1;
        while (pos >= 0) {
            if (++idx[pos] < static_cast<int>(values[pos].size())) break;
            idx[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return out;
}

Rational discrepancy_at_witness(const PointSet& p, const StarDiscrepancy& report) {
    const int d = p.dim();
    if (report.witness.dim() != d) throw std::invalid_argument("witness dimension mismatch");
    int count = 0;
    for (int pt = 0; pt < p.size(); ++pt) {
        bool in = true;
        for (int i = 0; i < d && in; ++i) {
            const Rational x = p.at(pt, i).rational();
            const Rational& a = report.witness.upper()[i];
            if (report.witness_closed ? x > a : x >= a) in = false;
        }
        count += in;
    }
    const Rational vol = report.witness.volume();
    const Rational diff = Rational(count, p.size()) - vol;
    return diff < 0 ? Rational(-diff) : diff;
}

double success_probability(const BoundParams& bp) {
    const double exponent =
        bp.gamma_log - (1.6741 * bp.c * bp.c - 10.7042) * static_cast<double>(bp.dim);
    const double p = 1.0 - std::exp(exponent);
    return std::clamp(p, 0.0, 1.0);
}

double min_constant(double gamma_rate) {
    if (gamma_rate < 0.0) throw std::invalid_argument("gamma rate must be >= 0");
    const double c0 = std::sqrt((10.7042 + gamma_rate) / 1.6741);
    double c = std::ceil(c0 * 1e4) / 1e4;
    while (1.6741 * c * c - 10.7042 <= gamma_rate) c += 1e-4;
    return c;
}

PointSet sample_model(const RandomPointModel& model, std::uint64_t seed) {
    return std::visit(
        [&](const auto& m) -> PointSet {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, McModel>) {
                return gen_mc(m.dim, m.n, seed);
            } else if constexpr (std::is_same_v<T, LhsModel>) {
                return gen_lhs(m.dim, m.n, seed).points;
            } else {
                ScramblingScheme scheme = m.scheme;
                scheme.seed = seed;
                return scramble(m.base, scheme).points;
            }
        },
        model);
}

BoundCheck bound_vs_empirical(const RandomPointModel& model, double c, int seeds,
                              std::uint64_t seed0, double gamma_rate) {
    if (seeds < 1) throw std::invalid_argument("need seeds >= 1");
    const int d = model_dim(model);
    const int n = model_point_count(model);

    BoundCheck check;
    check.seeds = seeds;
    check.threshold = c * std::sqrt(static_cast<double>(d) / static_cast<double>(n));
    check.predicted =
        success_probability({c, d, gamma_rate * static_cast<double>(d)});

    const SeedStream root = SeedStream(seed0).child("bound-check");
    for (int s = 0; s < seeds; ++s) {
        const PointSet ps = sample_model(model, root.child(static_cast<std::uint64_t>(s)).key());
        const StarDiscrepancy disc = star_discrepancy_exact(ps);
        if (disc.value_d() <= check.threshold) ++check.within;
    }
    check.fraction = static_cast<double>(check.within) / static_cast<double>(seeds);
    return check;
}

}  // namespace negdep
