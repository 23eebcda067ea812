#include "negdep/sampling.hpp"

#include "negdep/errors.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace negdep {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p == 0) return false;
    }
    return true;
}

std::uint64_t NetParams::point_count() const {
    std::uint64_t n = 1;
    for (int i = 0; i < m; ++i) {
        if (n > (~std::uint64_t{0}) / static_cast<std::uint64_t>(base))
            throw std::invalid_argument("b^m overflows");
        n *= static_cast<std::uint64_t>(base);
    }
    return n;
}

void NetParams::validate() const {
    if (base < 2) throw std::invalid_argument("net base must be >= 2");
    if (t < 0 || m < t) throw std::invalid_argument("need 0 <= t <= m");
    if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
}

PointSet gen_mc(int dim, int n, std::uint64_t seed) {
    if (dim < 1 || n < 1) throw std::invalid_argument("need dim, n >= 1");
    std::ostringstream prov;
    prov << "mc d=" << dim << " n=" << n << " seed=" << seed;
    PointSet ps(dim, prov.str());
    Rng rng = SeedStream(seed).child("mc").rng();
    for (int i = 0; i < n; ++i) {
        std::vector<Coord> pt;
        pt.reserve(dim);
        for (int j = 0; j < dim; ++j) pt.emplace_back(rng.next_unit());
        ps.push_point(std::move(pt));
    }
    return ps;
}

LhsSample gen_lhs(int dim, int n, std::uint64_t seed, bool exact_uniforms) {
    if (dim < 1 || n < 1) throw std::invalid_argument("need dim, n >= 1");
    const SeedStream root = SeedStream(seed).child("lhs");

    LhsRealization real;
    real.dim = dim;
    real.n = n;
    real.exact = exact_uniforms;
    real.perms.resize(dim);
    for (int j = 0; j < dim; ++j) {
        Rng rng = root.child("perm").child(static_cast<std::uint64_t>(j)).rng();
        real.perms[j] = random_permutation(static_cast<std::uint32_t>(n), rng);
    }
    real.uniforms.assign(n, std::vector<Coord>());
    for (int i = 0; i < n; ++i) {
        real.uniforms[i].reserve(dim);
        for (int j = 0; j < dim; ++j) {
            Rng rng = root.child("uniform")
                          .child(static_cast<std::uint64_t>(i))
                          .child(static_cast<std::uint64_t>(j))
                          .rng();
            if (exact_uniforms) {
                real.uniforms[i].emplace_back(
                    Rational(rng.next_bits53(), BigInt(1) << 53));
            } else {
                real.uniforms[i].emplace_back(rng.next_unit());
            }
        }
    }

    PointSet pts = lhs_points_from_realization(real);
    std::ostringstream prov;
    prov << "lhs d=" << dim << " n=" << n << " seed=" << seed;
    pts.set_provenance(prov.str());
    return {std::move(pts), std::move(real)};
}

PointSet lhs_points_from_realization(const LhsRealization& r) {
    PointSet ps(r.dim);
    for (int i = 0; i < r.n; ++i) {
        std::vector<Coord> pt;
        pt.reserve(r.dim);
        for (int j = 0; j < r.dim; ++j) {
            const std::uint32_t cell = r.perms[j][i];
            const Coord& u = r.uniforms[i][j];
            if (u.exact()) {
                pt.emplace_back(Rational(cell + u.rational()) / r.n);
            } else {
                pt.emplace_back((static_cast<double>(cell) + u.real()) /
                                static_cast<double>(r.n));
            }
        }
        ps.push_point(std::move(pt));
    }
    return ps;
}

namespace {

/// Base-b digits of n, least significant first, padded to `count`.
std::vector<std::uint8_t> integer_digits(std::uint64_t n, int base, int count) {
    std::vector<std::uint8_t> d(count, 0);
    for (int i = 0; i < count && n != 0; ++i) {
        d[i] = static_cast<std::uint8_t>(n % static_cast<std::uint64_t>(base));
        n /= static_cast<std::uint64_t>(base);
    }
    return d;
}

/// Per-point, per-coordinate digit vectors (most significant first) of a
/// digital net, pure integer arithmetic.
std::vector<std::vector<std::vector<std::uint8_t>>> net_digit_table(
    const NetParams& params, const GeneratorMatrices& mats) {
    const std::uint64_t n_points = params.point_count();
    std::vector<std::vector<std::vector<std::uint8_t>>> table(n_points);
    for (std::uint64_t n = 0; n < n_points; ++n) {
        const auto nd = integer_digits(n, params.base, params.m);
        auto& per_coord = table[n];
        per_coord.resize(params.dim);
        for (int j = 0; j < params.dim; ++j) {
            auto& y = per_coord[j];
            y.assign(params.m, 0);
            for (int r = 0; r < params.m; ++r) {
                unsigned acc = 0;
                for (int c = 0; c < params.m; ++c) {
                    acc += static_cast<unsigned>(mats.mats[j][r][c]) * nd[c];
                }
                y[r] = static_cast<std::uint8_t>(acc % static_cast<unsigned>(params.base));
            }
        }
    }
    return table;
}

/// Fast net check on integer digit vectors. Counts points per elementary
/// interval bucket, one shape at a time.
bool digits_pass_net_check(const std::vector<std::vector<std::vector<std::uint8_t>>>& digits,
                           const NetParams& params) {
    const int d = params.dim;
    const int order = params.order();
    const std::uint64_t expected = int_pow(static_cast<std::uint64_t>(params.base),
                                           static_cast<unsigned>(params.t))
                                       .convert_to<std::uint64_t>();
    std::vector<int> shape(d, 0);
    shape[0] = order;
    while (true) {
        std::map<std::uint64_t, std::uint64_t> buckets;
        for (const auto& pt : digits) {
            std::uint64_t key = 0;
            for (int j = 0; j < d; ++j) {
                for (int l = 0; l < shape[j]; ++l) {
                    key = key * static_cast<std::uint64_t>(params.base) + pt[j][l];
                }
            }
            ++buckets[key];
        }
        std::uint64_t cells = 1;
        for (int j = 0; j < d; ++j)
            cells *= int_pow(static_cast<std::uint64_t>(params.base),
                             static_cast<unsigned>(shape[j]))
                         .convert_to<std::uint64_t>();
        if (buckets.size() != cells) return false;  // some interval is empty
        for (const auto& [key, count] : buckets) {
            if (count != expected) return false;
        }
        int i = 0;
        while (i < d - 1 && shape[i] == 0) ++i;
        if (i == d - 1) break;
        const int v = shape[i];
        shape[i] = 0;
        shape[0] = v - 1;
        ++shape[i + 1];
    }
    return true;
}

GeneratorMatrices matrices_from_index(const NetParams& params, const BigInt& index) {
    GeneratorMatrices g;
    g.base = params.base;
    g.m = params.m;
    g.mats.resize(params.dim);
    BigInt rest = index;
    // Last matrix varies fastest: the tuple (C_1,...,C_d) is the mixed-radix
    // spelling of `index`, entries row-major within each matrix.
    const int entries = params.m * params.m;
    std::vector<std::vector<std::uint8_t>> flat(params.dim,
                                                std::vector<std::uint8_t>(entries, 0));
    for (int j = params.dim - 1; j >= 0; --j) {
        for (int e = entries - 1; e >= 0; --e) {
            flat[j][e] = static_cast<std::uint8_t>(rest % params.base);
            rest /= params.base;
        }
    }
    for (int j = 0; j < params.dim; ++j) {
        g.mats[j].assign(params.m, std::vector<std::uint8_t>(params.m, 0));
        for (int r = 0; r < params.m; ++r)
            for (int c = 0; c < params.m; ++c) g.mats[j][r][c] = flat[j][r * params.m + c];
    }
    return g;
}

}  // namespace

PointSet net_from_matrices(const NetParams& params, const GeneratorMatrices& mats) {
    params.validate();
    if (!is_prime(params.base)) throw std::invalid_argument("digital nets need a prime base");
    if (mats.base != params.base || mats.m != params.m ||
        static_cast<int>(mats.mats.size()) != params.dim)
        throw std::invalid_argument("generator matrices inconsistent with net parameters");
    for (const auto& mat : mats.mats) {
        if (static_cast<int>(mat.size()) != params.m)
            throw std::invalid_argument("generator matrix has wrong shape");
        for (const auto& row : mat) {
            if (static_cast<int>(row.size()) != params.m)
                throw std::invalid_argument("generator matrix has wrong shape");
            for (const auto e : row) {
                if (e >= params.base) throw std::invalid_argument("matrix entry not mod base");
            }
        }
    }

    const auto digits = net_digit_table(params, mats);
    const BigInt denom = int_pow(static_cast<std::uint64_t>(params.base),
                                 static_cast<unsigned>(params.m));
    std::ostringstream prov;
    prov << "net b=" << params.base << " t=" << params.t << " m=" << params.m
         << " d=" << params.dim;
    PointSet ps(params.dim, prov.str());
    for (const auto& per_coord : digits) {
        std::vector<Coord> pt;
        pt.reserve(params.dim);
        for (int j = 0; j < params.dim; ++j) {
            BigInt num = 0;
            for (int r = 0; r < params.m; ++r)
                num = num * params.base + per_coord[j][r];
            pt.emplace_back(Rational(num, denom));
        }
        ps.push_point(std::move(pt));
    }
    return ps;
}

NetCheckReport verify_net(const PointSet& p, const NetParams& params,
                          std::uint64_t interval_limit) {
    params.validate();
    if (static_cast<std::uint64_t>(p.size()) != params.point_count())
        throw std::invalid_argument("point count does not equal b^m");
    if (p.dim() != params.dim) throw std::invalid_argument("dimension mismatch");

    NetCheckReport report;
    report.expected_per_interval = int_pow(static_cast<std::uint64_t>(params.base),
                                           static_cast<unsigned>(params.t))
                                       .convert_to<std::uint64_t>();
    const auto intervals =
        enumerate_elementary_intervals(params.base, params.order(), params.dim, interval_limit);
    report.intervals_checked = intervals.size();
    for (const auto& e : intervals) {
        std::uint64_t count = 0;
        for (int n = 0; n < p.size(); ++n) {
            if (e.contains(p.point(n))) ++count;
        }
        if (count != report.expected_per_interval)
            report.violations.push_back({e, count});
    }
    report.ok = report.violations.empty();
    return report;
}

std::optional<GeneratorMatrices> search_net_matrices(const NetParams& params,
                                                     std::uint64_t budget,
                                                     std::uint64_t skip_hits) {
    params.validate();
    if (!is_prime(params.base)) throw std::invalid_argument("digital nets need a prime base");

    const int entries = params.m * params.m;
    BigInt space = 1;
    for (int i = 0; i < entries * params.dim; ++i) space *= params.base;
    if (space > budget) {
        std::ostringstream msg;
        msg << "matrix search space of size " << space << " exceeds budget " << budget;
        throw BudgetExceeded(msg.str());
    }

    std::uint64_t hits_seen = 0;
    for (BigInt index = 0; index < space; ++index) {
        const GeneratorMatrices cand = matrices_from_index(params, index);
        const auto digits = net_digit_table(params, cand);
        if (digits_pass_net_check(digits, params)) {
            if (hits_seen == skip_hits) return cand;
            ++hits_seen;
        }
    }
    return std::nullopt;
}

}  // namespace negdep
