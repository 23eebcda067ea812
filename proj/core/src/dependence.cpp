#include "negdep/dependence.hpp"

#include "negdep/errors.hpp"
#include "negdep/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace negdep {

namespace {

void finish_exact_report(DependenceReport& r) {
    r.exact = true;
    r.joint_value = to_double(r.joint);
    r.product_value = to_double(r.product);
    if (r.product > 0) {
        r.ratio = r.joint / r.product;
        r.ratio_value = to_double(r.ratio);
    } else if (r.joint == 0) {
        r.ratio = 1;  // vacuous constraint
        r.ratio_value = 1.0;
    } else {
        r.ratio_infinite = true;
        r.ratio_value = std::numeric_limits<double>::infinity();
    }
}

void validate_query(const DependenceQuery& q, int dim, int n_points) {
    if (q.set.dim() != dim) throw std::invalid_argument("test set dimension mismatch");
    if (q.points.empty()) throw std::invalid_argument("index set must be non-empty");
    std::set<int> seen;
    for (const int j : q.points) {
        if (j < 1 || j > n_points) throw std::invalid_argument("point index outside [1..N]");
        if (!seen.insert(j).second) throw std::invalid_argument("duplicate point index");
    }
}

std::uint64_t falling_factorial(int n, int k) {
    std::uint64_t v = 1;
    for (int i = 0; i < k; ++i) v *= static_cast<std::uint64_t>(n - i);
    return v;
}

/// Sum over ordered injections (v_1..v_k) of distinct values in [0..n-1] of
/// prod_r (*factors[r])[v_r].
Rational injection_sum(const std::vector<const std::vector<Rational>*>& factors, int n) {
    const int k = static_cast<int>(factors.size());
    Rational total = 0;
    std::vector<int> pick(k, -1);
    std::uint32_t used = 0;

    // Iterative depth-first walk with explicit stack of partial products.
    std::vector<Rational> partial(k + 1);
    partial[0] = 1;
    int depth = 0;
    int value = 0;
    while (depth >= 0) {
        if (depth == k) {
            total += partial[k];
            --depth;
            if (depth >= 0) {
                value = pick[depth];
                used &= ~(1u << value);
                ++value;
            }
            continue;
        }
        bool advanced = false;
        for (; value < n; ++value) {
            if (used & (1u << value)) continue;
            const Rational& f = (*factors[depth])[value];
            if (f == 0) continue;  // zero factor kills every extension
            pick[depth] = value;
            used |= 1u << value;
            partial[depth + 1] = partial[depth] * f;
            ++depth;
            value = 0;
            advanced = true;
            break;
        }
        if (!advanced) {
            --depth;
            if (depth >= 0) {
                value = pick[depth];
                used &= ~(1u << value);
                ++value;
            }
        }
    }
    return total;
}

/// Per-coordinate within-cell membership weights of the anchored parts of a
/// test set, over `cells` equal cells.
struct CellWeights {
    std::vector<std::vector<Rational>> outer;  // [coord][cell]
    std::vector<std::vector<Rational>> inner;  // effective inner = outer n inner
    std::vector<Rational> ones;
};

CellWeights cell_weights(const TestSet& s, int cells) {
    const int d = s.dim();
    const AnchoredBox inner = s.effective_inner();
    CellWeights w;
    w.outer.assign(d, std::vector<Rational>(cells));
    w.inner.assign(d, std::vector<Rational>(cells));
    w.ones.assign(cells, Rational(1));
    const BigInt cell_count = cells;
    for (int i = 0; i < d; ++i) {
        for (int c = 0; c < cells; ++c) {
            w.outer[i][c] = cell_fraction(s.outer().upper()[i], cell_count, c);
            w.inner[i][c] = cell_fraction(inner.upper()[i], cell_count, c);
        }
    }
    return w;
}

/// E[ prod over the k selected points of their membership part ] for a Latin
/// hypercube: inclusion-exclusion over the per-point part selector, each term
/// factorizing into per-coordinate injection sums.
/// Selector alphabet: 0 = constant one, 1 = outer part, 2 = inner part.
Rational lhs_expectation(const CellWeights& w, int n_points, int k, DependenceSide side) {
    const int d = static_cast<int>(w.outer.size());
    const std::uint64_t inj = falling_factorial(n_points, k);
    Rational denom = 1;
    for (int i = 0; i < d; ++i) denom *= inj;

    Rational total = 0;
    // side == upper: per point q = outer - inner; selectors in {1,2}.
    // side == lower: per point 1 - q = 1 - outer + inner; selectors in {0,1,2}.
    std::vector<int> sel(k, side == DependenceSide::upper ? 1 : 0);
    while (true) {
        int sign = 1;
        for (const int s : sel) {
            if (side == DependenceSide::upper) {
                if (s == 2) sign = -sign;
            } else {
                if (s == 1) sign = -sign;
            }
        }
        Rational term = sign;
        for (int i = 0; i < d && term != 0; ++i) {
            std::vector<const std::vector<Rational>*> factors(k);
            for (int r = 0; r < k; ++r) {
                factors[r] = sel[r] == 0 ? &w.ones : (sel[r] == 1 ? &w.outer[i] : &w.inner[i]);
            }
            term *= injection_sum(factors, n_points);
        }
        total += term;

        int pos = k - 1;
        const int lo = side == DependenceSide::upper ? 1 : 0;
        while (pos >= 0) {
            if (++sel[pos] <= 2) break;
            sel[pos] = lo;
            --pos;
        }
        if (pos < 0) break;
    }
    return total / denom;
}

}  // namespace

int model_dim(const RandomPointModel& m) {
    return std::visit(
        [](const auto& v) -> int {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, ScrambledNetModel>)
                return v.params.dim;
            else
                return v.dim;
        },
        m);
}

int model_point_count(const RandomPointModel& m) {
    return std::visit(
        [](const auto& v) -> int {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, ScrambledNetModel>)
                return static_cast<int>(v.params.point_count());
            else
                return v.n;
        },
        m);
}

bool model_exchangeable(const RandomPointModel& m) {
    return std::visit(
        [](const auto& v) -> bool {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, ScrambledNetModel>)
                return v.scheme.symmetrize;
            else
                return true;
        },
        m);
}

double gamma_ab(const AnchoredBox& a, const AnchoredBox& b, int n_points) {
    if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
    if (n_points < 1) throw std::invalid_argument("need N >= 1");
    const auto on_grid = [&](const Rational& x) {
        return x > 0 && denominator(Rational(x * n_points)) == 1;
    };
    int penalties = 0;
    for (int i = 0; i < a.dim(); ++i) {
        const Rational& ai = a.upper()[i];
        const Rational& bi = b.upper()[i];
        const bool unit = ai == 0 || (on_grid(ai) && on_grid(bi));
        if (!unit) ++penalties;
    }
    return std::exp(static_cast<double>(penalties));
}

DependenceReport exact_joint_lhs(const DependenceQuery& q, int dim, int n_points,
                                 std::uint64_t budget) {
    if (dim < 1 || n_points < 1) throw std::invalid_argument("need dim, N >= 1");
    validate_query(q, dim, n_points);
    if (n_points > 20) throw BudgetExceeded("cell injections need N <= 20");

    const int k = static_cast<int>(q.points.size());
    // Work estimate: the selector expansion has at most 3^k terms, each doing
    // d injection sums of (N)_k tuples.
    const double states = static_cast<double>(falling_factorial(n_points, k)) * dim *
                          std::pow(3.0, k);
    if (states > static_cast<double>(budget)) {
        std::ostringstream msg;
        msg << "exact LHS enumeration of ~" << states << " states exceeds budget " << budget;
        throw BudgetExceeded(msg.str());
    }

    const CellWeights w = cell_weights(q.set, n_points);

    DependenceReport rep;
    rep.states = static_cast<std::uint64_t>(states);
    rep.joint = lhs_expectation(w, n_points, k, q.side);
    const Rational marginal = lhs_expectation(w, n_points, 1, q.side);
    rep.product = 1;
    for (int r = 0; r < k; ++r) rep.product *= marginal;
    finish_exact_report(rep);
    return rep;
}

DependenceReport exact_joint_mc(const DependenceQuery& q, int dim) {
    validate_query(q, dim, std::numeric_limits<int>::max() - 1);
    const Rational vol = q.set.volume();
    const Rational per_point = q.side == DependenceSide::upper ? vol : 1 - vol;
    DependenceReport rep;
    rep.states = 1;
    rep.joint = 1;
    for (std::size_t r = 0; r < q.points.size(); ++r) rep.joint *= per_point;
    rep.product = rep.joint;
    finish_exact_report(rep);
    return rep;
}

DependenceReport exact_joint_scrambled_net(const DependenceQuery& q,
                                           const ScrambledNetModel& model,
                                           std::uint64_t realization_cap) {
    model.params.validate();
    model.scheme.validate();
    const int d = model.params.dim;
    const int n_points = static_cast<int>(model.params.point_count());
    validate_query(q, d, n_points);
    if (model.scheme.base != model.params.base)
        throw std::invalid_argument("scheme base differs from net base");
    if (model.scheme.depth != model.params.order())
        throw std::invalid_argument("exact oracle needs scrambling depth == m - t");
    if (model.base.size() != n_points || model.base.dim() != d)
        throw std::invalid_argument("base net does not match parameters");

    const int depth = model.scheme.depth;
    const int cells = static_cast<int>(
        int_pow(static_cast<std::uint64_t>(model.params.base), static_cast<unsigned>(depth))
            .convert_to<std::uint64_t>());
    const auto maps = enumerate_prefix_maps(model.scheme.framework, model.scheme.family,
                                            model.params.base, depth, realization_cap);
    const auto prefixes = point_prefixes(model.base, model.params.base, depth);

    const int k = static_cast<int>(q.points.size());
    const std::uint64_t labelings =
        model.scheme.symmetrize ? falling_factorial(n_points, k) : 1;
    double total_states = static_cast<double>(labelings);
    for (int i = 0; i < d; ++i) total_states *= static_cast<double>(maps.size());
    if (total_states > static_cast<double>(realization_cap)) {
        std::ostringstream msg;
        msg << "scrambled-net enumeration of ~" << total_states << " states exceeds cap "
            << realization_cap;
        throw BudgetExceeded(msg.str());
    }

    const CellWeights w = cell_weights(q.set, cells);

    // q(point) per realization; then sum the labeling products.
    const auto accumulate = [&](int subset_size, bool singleton_point_mode,
                                int singleton_point) -> Rational {
        Rational total = 0;
        std::vector<std::size_t> choice(d, 0);  // realization odometer
        std::vector<Rational> q_point(n_points);
        while (true) {
            for (int n = 0; n < n_points; ++n) {
                Rational outer = 1, inner = 1;
                for (int i = 0; i < d; ++i) {
                    const std::uint32_t cube = maps[choice[i]][prefixes[n][i]];
                    outer *= w.outer[i][cube];
                    inner *= w.inner[i][cube];
                }
                const Rational qv = outer - inner;
                q_point[n] = q.side == DependenceSide::upper ? qv : 1 - qv;
            }
            if (model.scheme.symmetrize) {
                // Sum over ordered injections of the subset into the points.
                std::vector<const std::vector<Rational>*> factors(
                    static_cast<std::size_t>(subset_size), &q_point);
                total += injection_sum(factors, n_points);
            } else {
                Rational term = 1;
                if (singleton_point_mode) {
                    term = q_point[singleton_point];
                } else {
                    for (const int j : q.points) term *= q_point[j - 1];
                }
                total += term;
            }
            std::size_t pos = 0;
            while (pos < choice.size()) {
                if (++choice[pos] < maps.size()) break;
                choice[pos] = 0;
                ++pos;
            }
            if (pos == choice.size()) break;
        }
        return total;
    };

    Rational realizations = 1;
    for (int i = 0; i < d; ++i) realizations *= static_cast<std::uint64_t>(maps.size());

    DependenceReport rep;
    rep.states = static_cast<std::uint64_t>(total_states);
    rep.joint = accumulate(k, false, -1) / (realizations * labelings);

    rep.product = 1;
    if (model.scheme.symmetrize) {
        const Rational marginal = accumulate(1, false, -1) / (realizations * n_points);
        for (int r = 0; r < k; ++r) rep.product *= marginal;
    } else {
        for (const int j : q.points) {
            const Rational marginal = accumulate(1, true, j - 1) / realizations;
            rep.product *= marginal;
        }
    }
    finish_exact_report(rep);
    return rep;
}

DependenceReport exact_joint(const DependenceQuery& q, const RandomPointModel& model) {
    return std::visit(
        [&](const auto& m) -> DependenceReport {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, McModel>) {
                validate_query(q, m.dim, m.n);
                return exact_joint_mc(q, m.dim);
            } else if constexpr (std::is_same_v<T, LhsModel>) {
                return exact_joint_lhs(q, m.dim, m.n);
            } else {
                return exact_joint_scrambled_net(q, m);
            }
        },
        model);
}

DependenceReport mc_estimate_joint(const DependenceQuery& q, const RandomPointModel& model,
                                   int reps, std::uint64_t seed) {
    if (reps < 100) throw std::invalid_argument("need reps >= 100");
    const int d = model_dim(model);
    const int n_points = model_point_count(model);
    validate_query(q, d, n_points);

    const int k = static_cast<int>(q.points.size());
    const Rational vol = q.set.volume();
    const Rational marginal_exact = q.side == DependenceSide::upper ? vol : 1 - vol;
    Rational product_exact = 1;
    for (int r = 0; r < k; ++r) product_exact *= marginal_exact;

    DependenceReport rep;
    rep.exact = false;
    rep.states = static_cast<std::uint64_t>(reps);
    rep.product_value = to_double(product_exact);
    rep.product = product_exact;

    double mean = 0.0;
    double m2 = 0.0;
    int count = 0;
    const auto push = [&](double x) {
        ++count;
        const double delta = x - mean;
        mean += delta / count;
        m2 += delta * (x - mean);
    };

    const SeedStream root = SeedStream(seed).child("estimate");

    if (std::holds_alternative<McModel>(model)) {
        // The discrete layer is trivial: the conditional product is constant.
        const double term = to_double(product_exact);
        for (int r = 0; r < reps; ++r) push(term);
    } else if (const LhsModel* lhs = std::get_if<LhsModel>(&model)) {
        const CellWeights w = cell_weights(q.set, lhs->n);
        std::vector<std::vector<double>> outer_d(d, std::vector<double>(lhs->n));
        std::vector<std::vector<double>> inner_d(d, std::vector<double>(lhs->n));
        for (int i = 0; i < d; ++i)
            for (int c = 0; c < lhs->n; ++c) {
                outer_d[i][c] = to_double(w.outer[i][c]);
                inner_d[i][c] = to_double(w.inner[i][c]);
            }
        for (int r = 0; r < reps; ++r) {
            Rng rng = root.child(static_cast<std::uint64_t>(r)).rng();
            double term = 1.0;
            std::vector<std::vector<std::uint32_t>> perms(d);
            for (int i = 0; i < d; ++i)
                perms[i] = random_permutation(static_cast<std::uint32_t>(lhs->n), rng);
            for (const int j : q.points) {
                double po = 1.0, pi = 1.0;
                for (int i = 0; i < d; ++i) {
                    const std::uint32_t cell = perms[i][j - 1];
                    po *= outer_d[i][cell];
                    pi *= inner_d[i][cell];
                }
                const double qv = po - pi;
                term *= q.side == DependenceSide::upper ? qv : 1.0 - qv;
            }
            push(term);
        }
    } else {
        const auto& net = std::get<ScrambledNetModel>(model);
        if (net.scheme.depth != net.params.order())
            throw std::invalid_argument("estimator needs scrambling depth == m - t");
        const int cells = static_cast<int>(
            int_pow(static_cast<std::uint64_t>(net.params.base),
                    static_cast<unsigned>(net.scheme.depth))
                .convert_to<std::uint64_t>());
        const CellWeights w = cell_weights(q.set, cells);
        std::vector<std::vector<double>> outer_d(d, std::vector<double>(cells));
        std::vector<std::vector<double>> inner_d(d, std::vector<double>(cells));
        for (int i = 0; i < d; ++i)
            for (int c = 0; c < cells; ++c) {
                outer_d[i][c] = to_double(w.outer[i][c]);
                inner_d[i][c] = to_double(w.inner[i][c]);
            }
        const auto prefixes = point_prefixes(net.base, net.params.base, net.scheme.depth);
        for (int r = 0; r < reps; ++r) {
            const CubeSample sample = scramble_cubes(
                prefixes, net.scheme, root.child(static_cast<std::uint64_t>(r)).key());
            double term = 1.0;
            for (const int j : q.points) {
                double po = 1.0, pi = 1.0;
                for (int i = 0; i < d; ++i) {
                    const std::uint32_t cube = sample.cubes[j - 1][i];
                    po *= outer_d[i][cube];
                    pi *= inner_d[i][cube];
                }
                const double qv = po - pi;
                term *= q.side == DependenceSide::upper ? qv : 1.0 - qv;
            }
            push(term);
        }
    }

    const double sd = count > 1 ? std::sqrt(m2 / (count - 1)) : 0.0;
    const double z = normal_quantile(0.995);
    const double half = z * sd / std::sqrt(static_cast<double>(count));
    rep.joint_value = mean;
    rep.joint_ci = ConfidenceInterval{mean - half, mean + half};
    if (rep.product_value > 0.0) {
        rep.ratio_value = mean / rep.product_value;
        rep.ratio_ci = ConfidenceInterval{(mean - half) / rep.product_value,
                                          (mean + half) / rep.product_value};
    } else {
        rep.ratio_value = mean == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
        rep.ratio_infinite = mean != 0.0;
    }
    return rep;
}

LhsRatioAnalytic lhs_ratio_analytic(int dim, double eps) {
    if (dim < 2) throw std::invalid_argument("need dim >= 2");
    if (!(eps > 0.0) || !(eps < 1.0 / dim))
        throw std::invalid_argument("need 0 < eps < 1/d");
    const double d = static_cast<double>(dim);
    const double qf = 1.0 - 1.0 / d;

    LhsRatioAnalytic out;

    double log_p_event = 0.0;
    for (int kk = 1; kk <= dim; ++kk) log_p_event += std::log(static_cast<double>(kk) / d);
    out.probability_event = std::exp(log_p_event);

    // vol(D)/eps = sum_{k=0}^{d-1} C(d,k) q^k eps^{d-1-k}, summed from the
    // dominant k = d-1 term downward; all terms positive.
    double lam_sum = 0.0;
    {
        double term = d * std::pow(qf, dim - 1);  // k = d-1
        for (int kk = dim - 1; kk >= 0; --kk) {
            lam_sum += term;
            if (term < lam_sum * 1e-30) break;
            // C(d,k-1) = C(d,k) * k/(d-k+1); one more eps power, one less q.
            term *= static_cast<double>(kk) / (d - kk + 1.0) * (eps / qf);
        }
    }
    out.set_volume = eps * lam_sum;

    // R(eps,d)/eps^2 = sum_{k=0}^{d-2} C(d,k) q^k eps^{d-2-k}.
    double rem_sum = 0.0;
    if (dim >= 2) {
        double term = d * (d - 1.0) / 2.0 * std::pow(qf, dim - 2);  // k = d-2
        for (int kk = dim - 2; kk >= 0; --kk) {
            rem_sum += term;
            if (term < rem_sum * 1e-30) break;
            term *= static_cast<double>(kk) / (d - kk + 1.0) * (eps / qf);
        }
    }
    out.remainder = eps * eps * rem_sum;

    out.t_factor = std::pow(1.0 - out.remainder / out.set_volume, dim);

    // joint = d! eps^d = p_event * (d eps)^d, kept in log space until the end.
    out.joint = std::exp(log_p_event + d * std::log(d * eps));

    const double log_ratio = log_p_event + d * (1.0 - d) * std::log(qf) +
                             d * std::log1p(-out.remainder / out.set_volume);
    out.ratio = std::exp(log_ratio);
    return out;
}

double net_ratio_analytic(double eps) {
    if (!(eps > 0.0) || !(eps < 0.25)) throw std::invalid_argument("need 0 < eps < 1/4");
    const double scaled_volume = 0.75 + 1.5 * eps + eps * eps;  // vol(D)/eps
    return 1.0 / (scaled_volume * scaled_volume * scaled_volume);
}

double lhs_vs_net_comparison(double eps) { return 2.0 / 9.0 * net_ratio_analytic(eps); }

double unsymmetrized_lower_bound(int base, int n_points) {
    if (base < 2 || n_points < 1) throw std::invalid_argument("need b >= 2, N >= 1");
    if (n_points % base != 0) throw std::invalid_argument("b must divide N");
    return std::pow(static_cast<double>(base), static_cast<double>(n_points / base) - 1.0);
}

std::uint64_t TestSetGrid::set_count() const {
    if (family == TestFamily::anchored_boxes) {
        const std::uint64_t v = corner_values().size();
        std::uint64_t total = 1;
        for (int i = 0; i < dim; ++i) total *= v;
        return total;
    }
    const std::uint64_t p = corner_pairs().size();
    std::uint64_t total = 1;
    for (int i = 0; i < dim; ++i) total *= p;
    return total;
}

std::vector<Rational> TestSetGrid::corner_values() const {
    std::vector<Rational> vals;
    for (int kk = 0; kk <= cells; ++kk) vals.emplace_back(kk, cells);
    for (int kk = 0; kk < cells; ++kk) {
        for (const Rational& e : mesh) {
            const Rational v = Rational(kk, cells) + e;
            if (v < 1) vals.push_back(v);
        }
    }
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    return vals;
}

std::vector<std::pair<Rational, Rational>> TestSetGrid::corner_pairs() const {
    const auto vals = corner_values();
    std::vector<std::pair<Rational, Rational>> pairs;
    for (std::size_t x = 0; x < vals.size(); ++x)
        for (std::size_t y = x; y < vals.size(); ++y) pairs.emplace_back(vals[x], vals[y]);
    return pairs;
}

TestSet TestSetGrid::set_at(std::uint64_t index) const {
    if (family == TestFamily::anchored_boxes) {
        const auto vals = corner_values();
        std::vector<Rational> upper(dim);
        for (int i = dim - 1; i >= 0; --i) {
            upper[i] = vals[index % vals.size()];
            index /= vals.size();
        }
        return TestSet::anchored(AnchoredBox(std::move(upper)));
    }
    const auto pairs = corner_pairs();
    std::vector<Rational> inner(dim), outer(dim);
    for (int i = dim - 1; i >= 0; --i) {
        const auto& pr = pairs[index % pairs.size()];
        inner[i] = pr.first;
        outer[i] = pr.second;
        index /= pairs.size();
    }
    return TestSet(AnchoredBox(std::move(outer)), AnchoredBox(std::move(inner)));
}

std::vector<DependenceQuery> build_grid_queries(const TestSetGrid& grid, int n_points,
                                                std::size_t max_queries) {
    const std::uint64_t sets = grid.set_count();
    const std::uint64_t total = sets * static_cast<std::uint64_t>(n_points) * 2;
    const std::uint64_t stride = std::max<std::uint64_t>(1, total / max_queries);
    std::vector<DependenceQuery> queries;
    for (std::uint64_t idx = 0; idx < total && queries.size() < max_queries; idx += stride) {
        const std::uint64_t set_idx = idx / (static_cast<std::uint64_t>(n_points) * 2);
        const std::uint64_t rest = idx % (static_cast<std::uint64_t>(n_points) * 2);
        const int subset_size = static_cast<int>(rest / 2) + 1;
        const DependenceSide side = rest % 2 == 0 ? DependenceSide::upper : DependenceSide::lower;
        DependenceQuery q;
        q.set = grid.set_at(set_idx);
        q.points.resize(subset_size);
        for (int j = 0; j < subset_size; ++j) q.points[j] = j + 1;
        q.side = side;
        queries.push_back(std::move(q));
    }
    return queries;
}

SearchResult correlation_number_search(const RandomPointModel& model, const SearchConfig& cfg) {
    const int d = model_dim(model);
    const int n_points = model_point_count(model);
    const bool exchangeable = model_exchangeable(model);

    TestSetGrid grid;
    grid.dim = d;
    grid.cells = n_points;
    grid.family = cfg.family;
    grid.mesh = cfg.mesh;

    // Index subsets: sizes only for exchangeable models, every non-empty
    // subset otherwise.
    std::vector<std::vector<int>> subsets;
    const int max_size = cfg.max_subset_size > 0 ? std::min(cfg.max_subset_size, n_points)
                                                 : n_points;
    if (exchangeable) {
        for (int k = 1; k <= max_size; ++k) {
            std::vector<int> J(k);
            for (int j = 0; j < k; ++j) J[j] = j + 1;
            subsets.push_back(std::move(J));
        }
    } else {
        if (n_points > 20) throw BudgetExceeded("subset enumeration needs N <= 20");
        for (std::uint32_t mask = 1; mask < (1u << n_points); ++mask) {
            std::vector<int> J;
            for (int j = 0; j < n_points; ++j)
                if (mask & (1u << j)) J.push_back(j + 1);
            if (static_cast<int>(J.size()) <= max_size) subsets.push_back(std::move(J));
        }
    }

    const std::uint64_t sets = grid.set_count();
    const std::uint64_t total = sets * subsets.size() * 2;
    if (total > cfg.budget) {
        std::ostringstream msg;
        msg << "correlation search needs " << total << " queries, over budget " << cfg.budget;
        throw BudgetExceeded(msg.str());
    }

    SearchResult best;
    best.best_ratio = 0;
    for (std::uint64_t s = 0; s < sets; ++s) {
        const TestSet set = grid.set_at(s);
        for (const auto& J : subsets) {
            for (const DependenceSide side : {DependenceSide::upper, DependenceSide::lower}) {
                DependenceQuery q;
                q.set = set;
                q.points = J;
                q.side = side;
                const DependenceReport rep = exact_joint(q, model);
                ++best.queries;
                if (rep.ratio_infinite) {
                    if (!best.infinite) {
                        best.infinite = true;
                        best.witness = q;
                    }
                } else if (!best.infinite && rep.ratio > best.best_ratio) {
                    best.best_ratio = rep.ratio;
                    best.witness = q;
                }
            }
        }
    }
    return best;
}

}  // namespace negdep
