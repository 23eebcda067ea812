#include "negdep/scrambling.hpp"

#include "negdep/errors.hpp"
#include "negdep/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace negdep {

namespace {

std::uint64_t checked_pow(int base, int exp, std::uint64_t limit, const char* what) {
    std::uint64_t v = 1;
    for (int i = 0; i < exp; ++i) {
        if (v > limit / static_cast<std::uint64_t>(base)) throw std::invalid_argument(what);
        v *= static_cast<std::uint64_t>(base);
    }
    return v;
}

void unpack_digits(std::uint32_t prefix, int base, int depth, std::uint8_t* out) {
    for (int i = depth - 1; i >= 0; --i) {
        out[i] = static_cast<std::uint8_t>(prefix % static_cast<std::uint32_t>(base));
        prefix /= static_cast<std::uint32_t>(base);
    }
}

std::uint32_t pack_digits(const std::uint8_t* d, int base, int depth) {
    std::uint32_t v = 0;
    for (int i = 0; i < depth; ++i) v = v * static_cast<std::uint32_t>(base) + d[i];
    return v;
}

}  // namespace

void ScramblingScheme::validate() const {
    if (base < 2) throw std::invalid_argument("scrambling base must be >= 2");
    if (depth < 1) throw std::invalid_argument("scrambling depth must be >= 1");
    checked_pow(base, depth, std::uint32_t(-1), "depth exceeds digit capacity of coordinates");
    if ((family == PermFamily::linear || family == PermFamily::digital_shift) &&
        !is_prime(base))
        throw std::invalid_argument("linear and digital-shift families need a prime base");
}

std::vector<std::uint8_t> digits(const Coord& x, int base, int count) {
    if (base < 2 || count < 0) throw std::invalid_argument("need base >= 2, count >= 0");
    Rational r = x.rational();
    if (r < 0 || r >= 1) throw std::invalid_argument("coordinate outside [0,1)");
    std::vector<std::uint8_t> out(count, 0);
    for (int i = 0; i < count; ++i) {
        r *= base;
        const BigInt d = numerator(r) / denominator(r);
        out[i] = d.convert_to<std::uint8_t>();
        r -= d;
    }
    return out;
}

std::vector<std::uint8_t> sample_permutation(PermFamily family, int base, Rng& rng) {
    if (base < 2) throw std::invalid_argument("permutation base must be >= 2");
    switch (family) {
        case PermFamily::uniform: {
            std::vector<std::uint8_t> perm(base);
            std::iota(perm.begin(), perm.end(), std::uint8_t{0});
            rng.shuffle(perm);
            return perm;
        }
        case PermFamily::linear: {
            if (!is_prime(base))
                throw std::invalid_argument("linear permutations need a prime base");
            const int h = 1 + static_cast<int>(rng.next_below(base - 1));
            const int g = static_cast<int>(rng.next_below(base));
            std::vector<std::uint8_t> perm(base);
            for (int x = 0; x < base; ++x)
                perm[x] = static_cast<std::uint8_t>((h * x + g) % base);
            return perm;
        }
        case PermFamily::digital_shift: {
            if (!is_prime(base))
                throw std::invalid_argument("digital shifts need a prime base");
            const int g = static_cast<int>(rng.next_below(base));
            std::vector<std::uint8_t> perm(base);
            for (int x = 0; x < base; ++x)
                perm[x] = static_cast<std::uint8_t>((x + g) % base);
            return perm;
        }
        case PermFamily::affine_matrix:
            throw std::invalid_argument(
                "affine-matrix scrambling draws coefficients, not standalone permutations");
    }
    throw std::invalid_argument("unknown permutation family");
}

namespace {

/// Shared lazy builder for the random choices of one scrambling realization.
/// Every node is derived from a pure hash of (seed, role, coordinate, node),
/// so identity never depends on visit order.
class RealizationBuilder {
public:
    RealizationBuilder(const ScramblingScheme& scheme, std::uint64_t seed, int dim)
        : scheme_(scheme), root_(SeedStream(seed).child("scramble")), dim_(dim) {
        tables_.resize(dim);
        if (scheme.family == PermFamily::affine_matrix) {
            for (int j = 0; j < dim; ++j) build_affine(j);
        }
    }

    std::uint32_t map_prefix(int coord, std::uint32_t prefix) {
        std::uint8_t in[32], out[32];
        unpack_digits(prefix, scheme_.base, scheme_.depth, in);
        if (scheme_.family == PermFamily::affine_matrix) {
            apply_affine(tables_[coord], scheme_.base, scheme_.depth, in, out);
        } else {
            for (int level = 0; level < scheme_.depth; ++level) {
                const std::uint32_t key =
                    scheme_.framework == ScrambleFramework::nested
                        ? pack_digits(in, scheme_.base, level)
                        : 0u;
                const auto& perm = node_perm(coord, level, key);
                out[level] = perm[in[level]];
            }
        }
        return pack_digits(out, scheme_.base, scheme_.depth);
    }

    std::uint64_t tail(int n, int j) const {
        const int src = scheme_.break_tail_independence ? 0 : n;
        return root_.child("tail")
            .child(static_cast<std::uint64_t>(src))
            .child(static_cast<std::uint64_t>(j))
            .rng()
            .next_bits53();
    }

    std::vector<std::uint32_t> relabel(int n_points) const {
        std::vector<std::uint32_t> id(n_points);
        std::iota(id.begin(), id.end(), 0u);
        if (scheme_.symmetrize) {
            Rng rng = root_.child("relabel").rng();
            rng.shuffle(id);
        }
        return id;
    }

    std::vector<CoordinateTables> take_tables() { return std::move(tables_); }

    static void apply_affine(const CoordinateTables& t, int base, int depth,
                             const std::uint8_t* in, std::uint8_t* out) {
        for (int k = 0; k < depth; ++k) {
            unsigned acc = static_cast<unsigned>(t.affine_diag[k]) * in[k] + t.affine_shift[k];
            for (int j = 0; j < k; ++j)
                acc += static_cast<unsigned>(t.affine_lower[k][j]) * in[j];
            out[k] = static_cast<std::uint8_t>(acc % static_cast<unsigned>(base));
        }
    }

private:
    const std::vector<std::uint8_t>& node_perm(int coord, int level, std::uint32_t key) {
        auto& table = tables_[coord].node_perms;
        const auto it = table.find({level, key});
        if (it != table.end()) return it->second;
        Rng rng = root_.child("coord")
                      .child(static_cast<std::uint64_t>(coord))
                      .child("node")
                      .child(static_cast<std::uint64_t>(level))
                      .child(static_cast<std::uint64_t>(key))
                      .rng();
        auto perm = sample_permutation(scheme_.family, scheme_.base, rng);
        return table.emplace(std::make_pair(level, key), std::move(perm)).first->second;
    }

    void build_affine(int coord) {
        auto& t = tables_[coord];
        t.affine_diag.resize(scheme_.depth);
        t.affine_shift.resize(scheme_.depth);
        t.affine_lower.assign(scheme_.depth, {});
        for (int k = 0; k < scheme_.depth; ++k) {
            Rng rng = root_.child("coord")
                          .child(static_cast<std::uint64_t>(coord))
                          .child("affine")
                          .child(static_cast<std::uint64_t>(k))
                          .rng();
            t.affine_diag[k] =
                static_cast<std::uint8_t>(1 + rng.next_below(scheme_.base - 1));
            t.affine_lower[k].resize(k);
            for (int j = 0; j < k; ++j)
                t.affine_lower[k][j] = static_cast<std::uint8_t>(rng.next_below(scheme_.base));
            t.affine_shift[k] = static_cast<std::uint8_t>(rng.next_below(scheme_.base));
        }
    }

    ScramblingScheme scheme_;
    SeedStream root_;
    int dim_;
    std::vector<CoordinateTables> tables_;
};

}  // namespace

std::uint32_t ScramblingRealization::map_prefix(int coord, std::uint32_t prefix) const {
    std::uint8_t in[32], out[32];
    unpack_digits(prefix, scheme.base, scheme.depth, in);
    const CoordinateTables& t = coords[coord];
    if (scheme.family == PermFamily::affine_matrix) {
        RealizationBuilder::apply_affine(t, scheme.base, scheme.depth, in, out);
    } else {
        for (int level = 0; level < scheme.depth; ++level) {
            const std::uint32_t key = scheme.framework == ScrambleFramework::nested
                                          ? pack_digits(in, scheme.base, level)
                                          : 0u;
            const auto it = t.node_perms.find({level, key});
            if (it == t.node_perms.end())
                throw std::invalid_argument("realization is missing a permutation node");
            out[level] = it->second[in[level]];
        }
    }
    return pack_digits(out, scheme.base, scheme.depth);
}

std::vector<std::vector<std::uint32_t>> point_prefixes(const PointSet& p, int base, int depth) {
    const BigInt scale = int_pow(static_cast<std::uint64_t>(base), static_cast<unsigned>(depth));
    std::vector<std::vector<std::uint32_t>> prefixes(p.size(),
                                                     std::vector<std::uint32_t>(p.dim()));
    for (int n = 0; n < p.size(); ++n) {
        for (int j = 0; j < p.dim(); ++j) {
            prefixes[n][j] =
                floor_scaled(p.at(n, j).rational(), scale).convert_to<std::uint32_t>();
        }
    }
    return prefixes;
}

ScrambleResult scramble(const PointSet& p, const ScramblingScheme& scheme) {
    scheme.validate();
    const int n_points = p.size();
    const int dim = p.dim();

    RealizationBuilder builder(scheme, scheme.seed, dim);
    const auto prefixes = point_prefixes(p, scheme.base, scheme.depth);

    ScramblingRealization real;
    real.scheme = scheme;
    real.dim = dim;
    real.n_points = n_points;
    real.tails.assign(n_points, std::vector<std::uint64_t>(dim));
    for (int n = 0; n < n_points; ++n)
        for (int j = 0; j < dim; ++j) real.tails[n][j] = builder.tail(n, j);
    real.relabel = builder.relabel(n_points);

    const BigInt tail_denom = BigInt(1) << 53;
    const BigInt denom =
        int_pow(static_cast<std::uint64_t>(scheme.base), static_cast<unsigned>(scheme.depth)) *
        tail_denom;

    PointSet out(dim, p.provenance().empty() ? "scrambled" : "scrambled " + p.provenance());
    for (int i = 0; i < n_points; ++i) {
        const int src = static_cast<int>(real.relabel[i]);
        std::vector<Coord> pt;
        pt.reserve(dim);
        for (int j = 0; j < dim; ++j) {
            const std::uint32_t mapped = builder.map_prefix(j, prefixes[src][j]);
            const BigInt num = BigInt(mapped) * tail_denom + real.tails[src][j];
            pt.emplace_back(Rational(num, denom));
        }
        out.push_point(std::move(pt));
    }

    real.coords = builder.take_tables();
    return {std::move(out), std::move(real)};
}

PointSet apply_realization(const PointSet& p, const ScramblingRealization& r) {
    r.scheme.validate();
    if (p.size() != r.n_points || p.dim() != r.dim)
        throw std::invalid_argument("realization does not match point set");
    const auto prefixes = point_prefixes(p, r.scheme.base, r.scheme.depth);
    const BigInt tail_denom = BigInt(1) << 53;
    const BigInt denom = int_pow(static_cast<std::uint64_t>(r.scheme.base),
                                 static_cast<unsigned>(r.scheme.depth)) *
                         tail_denom;
    PointSet out(p.dim());
    for (int i = 0; i < r.n_points; ++i) {
        const int src = static_cast<int>(r.relabel[i]);
        std::vector<Coord> pt;
        pt.reserve(p.dim());
        for (int j = 0; j < p.dim(); ++j) {
            const std::uint32_t mapped = r.map_prefix(j, prefixes[src][j]);
            const BigInt num = BigInt(mapped) * tail_denom + r.tails[src][j];
            pt.emplace_back(Rational(num, denom));
        }
        out.push_point(std::move(pt));
    }
    return out;
}

ScramblingRealization identity_realization(const ScramblingScheme& scheme, int n_points,
                                           int dim) {
    scheme.validate();
    ScramblingRealization r;
    r.scheme = scheme;
    r.dim = dim;
    r.n_points = n_points;
    r.coords.resize(dim);
    std::vector<std::uint8_t> id(scheme.base);
    std::iota(id.begin(), id.end(), std::uint8_t{0});
    for (int j = 0; j < dim; ++j) {
        if (scheme.family == PermFamily::affine_matrix) {
            r.coords[j].affine_diag.assign(scheme.depth, 1);
            r.coords[j].affine_shift.assign(scheme.depth, 0);
            r.coords[j].affine_lower.assign(scheme.depth, {});
            for (int k = 0; k < scheme.depth; ++k) r.coords[j].affine_lower[k].resize(k, 0);
        } else {
            for (int level = 0; level < scheme.depth; ++level) {
                const int prefix_count =
                    scheme.framework == ScrambleFramework::nested
                        ? static_cast<int>(checked_pow(scheme.base, level, 1u << 24,
                                                       "identity table too large"))
                        : 1;
                for (int key = 0; key < prefix_count; ++key)
                    r.coords[j].node_perms[{level, static_cast<std::uint32_t>(key)}] = id;
            }
        }
    }
    r.tails.assign(n_points, std::vector<std::uint64_t>(dim, 0));
    r.relabel.resize(n_points);
    std::iota(r.relabel.begin(), r.relabel.end(), 0u);
    return r;
}

PointSet infinite_digit_scramble(const PointSet& p, int base, int precision,
                                 std::uint64_t seed) {
    if (base < 2 || precision < 1) throw std::invalid_argument("need base >= 2, precision >= 1");
    ScramblingScheme scheme;
    scheme.framework = ScrambleFramework::nested;
    scheme.family = PermFamily::uniform;
    scheme.base = base;
    scheme.depth = precision;
    scheme.validate();

    RealizationBuilder builder(scheme, SeedStream(seed).child("infinite-digit").key(), p.dim());
    const auto prefixes = point_prefixes(p, base, precision);
    const BigInt denom =
        int_pow(static_cast<std::uint64_t>(base), static_cast<unsigned>(precision));
    PointSet out(p.dim(), "infinite-digit scrambled");
    for (int n = 0; n < p.size(); ++n) {
        std::vector<Coord> pt;
        pt.reserve(p.dim());
        for (int j = 0; j < p.dim(); ++j) {
            const std::uint32_t mapped = builder.map_prefix(j, prefixes[n][j]);
            pt.emplace_back(Rational(BigInt(mapped), denom));
        }
        out.push_point(std::move(pt));
    }
    return out;
}

CubeSample scramble_cubes(const std::vector<std::vector<std::uint32_t>>& base_prefixes,
                          const ScramblingScheme& scheme, std::uint64_t seed) {
    scheme.validate();
    const int n_points = static_cast<int>(base_prefixes.size());
    const int dim = n_points ? static_cast<int>(base_prefixes[0].size()) : 0;
    RealizationBuilder builder(scheme, seed, dim);

    CubeSample sample;
    sample.cubes.assign(n_points, std::vector<std::uint32_t>(dim));
    sample.offsets.assign(n_points, std::vector<double>(dim));
    const auto relabel = builder.relabel(n_points);
    for (int i = 0; i < n_points; ++i) {
        const int src = static_cast<int>(relabel[i]);
        for (int j = 0; j < dim; ++j) {
            sample.cubes[i][j] = builder.map_prefix(j, base_prefixes[src][j]);
            sample.offsets[i][j] =
                static_cast<double>(builder.tail(src, j)) * 0x1.0p-53;
        }
    }
    return sample;
}

std::vector<std::vector<std::uint32_t>> enumerate_prefix_maps(ScrambleFramework framework,
                                                              PermFamily family, int base,
                                                              int depth, std::uint64_t cap) {
    if (base < 2 || depth < 1) throw std::invalid_argument("need base >= 2, depth >= 1");
    const std::uint32_t prefix_count = static_cast<std::uint32_t>(
        checked_pow(base, depth, 1u << 24, "depth exceeds digit capacity"));

    // Enumerate the per-node choice space.
    std::vector<std::vector<std::vector<std::uint8_t>>> node_choices;
    if (family == PermFamily::affine_matrix) {
        // Node k has (b-1)*b^k coefficient tuples (h_kk; h_k1..h_k,k-1; g_k).
        for (int k = 0; k < depth; ++k) {
            std::vector<std::vector<std::uint8_t>> choices;
            std::vector<std::uint8_t> coeff(static_cast<std::size_t>(k) + 2);
            // coeff = [h_kk, h_k1..h_k,k-1, g_k]
            std::function<void(std::size_t)> rec = [&](std::size_t pos) {
                if (pos == coeff.size()) {
                    choices.push_back(coeff);
                    return;
                }
                const int lo = pos == 0 ? 1 : 0;
                for (int v = lo; v < base; ++v) {
                    coeff[pos] = static_cast<std::uint8_t>(v);
                    rec(pos + 1);
                }
            };
            rec(0);
            node_choices.push_back(std::move(choices));
        }
    } else {
        std::vector<std::vector<std::uint8_t>> family_elements;
        switch (family) {
            case PermFamily::uniform: {
                std::vector<std::uint8_t> perm(base);
                std::iota(perm.begin(), perm.end(), std::uint8_t{0});
                do {
                    family_elements.push_back(perm);
                } while (std::next_permutation(perm.begin(), perm.end()));
                break;
            }
            case PermFamily::linear: {
                if (!is_prime(base))
                    throw std::invalid_argument("linear permutations need a prime base");
                for (int h = 1; h < base; ++h)
                    for (int g = 0; g < base; ++g) {
                        std::vector<std::uint8_t> perm(base);
                        for (int x = 0; x < base; ++x)
                            perm[x] = static_cast<std::uint8_t>((h * x + g) % base);
                        family_elements.push_back(std::move(perm));
                    }
                break;
            }
            case PermFamily::digital_shift: {
                if (!is_prime(base))
                    throw std::invalid_argument("digital shifts need a prime base");
                for (int g = 0; g < base; ++g) {
                    std::vector<std::uint8_t> perm(base);
                    for (int x = 0; x < base; ++x)
                        perm[x] = static_cast<std::uint8_t>((x + g) % base);
                    family_elements.push_back(std::move(perm));
                }
                break;
            }
            case PermFamily::affine_matrix:
                break;  // handled above
        }
        int node_count = 0;
        if (framework == ScrambleFramework::nested) {
            for (int level = 0; level < depth; ++level)
                node_count += static_cast<int>(
                    checked_pow(base, level, 1u << 20, "nested node table too large"));
        } else {
            node_count = depth;
        }
        node_choices.assign(node_count, family_elements);
    }

    // Realization count guard.
    double estimate = 1.0;
    for (const auto& c : node_choices) estimate *= static_cast<double>(c.size());
    if (estimate > static_cast<double>(cap)) {
        std::ostringstream msg;
        msg << "scrambling realization space of size " << estimate << " exceeds cap " << cap;
        throw BudgetExceeded(msg.str());
    }

    // Node order: affine by digit k; nested by (level, prefix) with prefix
    // packed most-significant-first; positional by level.
    const auto node_index_nested = [&](int level, std::uint32_t key) {
        int idx = 0;
        for (int l = 0; l < level; ++l)
            idx += static_cast<int>(checked_pow(base, l, 1u << 20, "node table too large"));
        return idx + static_cast<int>(key);
    };

    std::vector<std::size_t> choice(node_choices.size(), 0);
    std::vector<std::vector<std::uint32_t>> maps;
    maps.reserve(static_cast<std::size_t>(estimate));
    while (true) {
        std::vector<std::uint32_t> map(prefix_count);
        for (std::uint32_t v = 0; v < prefix_count; ++v) {
            std::uint8_t in[32], out[32];
            unpack_digits(v, base, depth, in);
            if (family == PermFamily::affine_matrix) {
                for (int k = 0; k < depth; ++k) {
                    const auto& coeff = node_choices[k][choice[k]];
                    unsigned acc = static_cast<unsigned>(coeff[0]) * in[k] + coeff.back();
                    for (int j = 0; j < k; ++j)
                        acc += static_cast<unsigned>(coeff[1 + j]) * in[j];
                    out[k] = static_cast<std::uint8_t>(acc % static_cast<unsigned>(base));
                }
            } else {
                for (int level = 0; level < depth; ++level) {
                    const int node = framework == ScrambleFramework::nested
                                         ? node_index_nested(level, pack_digits(in, base, level))
                                         : level;
                    out[level] = node_choices[node][choice[node]][in[level]];
                }
            }
            map[v] = pack_digits(out, base, depth);
        }
        maps.push_back(std::move(map));
        // odometer
        std::size_t pos = 0;
        while (pos < choice.size()) {
            if (++choice[pos] < node_choices[pos].size()) break;
            choice[pos] = 0;
            ++pos;
        }
        if (pos == choice.size()) break;
    }
    return maps;
}

namespace {

/// Net check on basic-cube indices: every elementary interval of the given
/// order is a union of cube-prefix buckets, so the first `order` digits per
/// coordinate decide membership.
bool cubes_pass_net_check(const std::vector<std::vector<std::uint32_t>>& cubes,
                          const NetParams& params) {
    const int d = params.dim;
    const int order = params.order();
    const std::uint64_t expected = int_pow(static_cast<std::uint64_t>(params.base),
                                           static_cast<unsigned>(params.t))
                                       .convert_to<std::uint64_t>();
    std::vector<std::vector<std::uint8_t>> digit_table(cubes.size());
    for (std::size_t n = 0; n < cubes.size(); ++n) {
        digit_table[n].resize(static_cast<std::size_t>(d) * order);
        for (int j = 0; j < d; ++j)
            unpack_digits(cubes[n][j], params.base, order,
                          digit_table[n].data() + static_cast<std::size_t>(j) * order);
    }
    std::vector<int> shape(d, 0);
    shape[0] = order;
    while (true) {
        std::map<std::uint64_t, std::uint64_t> buckets;
        std::uint64_t cells = 1;
        for (int j = 0; j < d; ++j)
            cells *= int_pow(static_cast<std::uint64_t>(params.base),
                             static_cast<unsigned>(shape[j]))
                         .convert_to<std::uint64_t>();
        for (const auto& pt : digit_table) {
            std::uint64_t key = 0;
            for (int j = 0; j < d; ++j)
                for (int l = 0; l < shape[j]; ++l)
                    key = key * static_cast<std::uint64_t>(params.base) +
                          pt[static_cast<std::size_t>(j) * order + l];
            ++buckets[key];
        }
        if (buckets.size() != cells) return false;
        for (const auto& [key, count] : buckets)
            if (count != expected) return false;
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

AbstractNetCheck run_abstract_checks(
    const std::function<CubeSample(std::uint64_t)>& trial, const NetParams& params, int trials,
    double significance, std::uint64_t seed) {
    params.validate();
    const int d = params.dim;
    const int n_points = static_cast<int>(params.point_count());
    const std::uint64_t cube_count_1d =
        int_pow(static_cast<std::uint64_t>(params.base), static_cast<unsigned>(params.order()))
            .convert_to<std::uint64_t>();
    std::uint64_t cube_count = 1;
    for (int j = 0; j < d; ++j) cube_count *= cube_count_1d;

    if (static_cast<std::uint64_t>(trials) < 5 * cube_count)
        throw std::invalid_argument(
            "insufficient trials for the requested significance (need >= 5 per cube cell)");

    AbstractNetCheck check;
    check.trials = trials;
    check.significance = significance;

    // counts[point][cube] for condition (ii).
    std::vector<std::vector<std::uint64_t>> counts(
        n_points, std::vector<std::uint64_t>(cube_count, 0));
    // offset series per (point, axis) for condition (iii).
    std::vector<std::vector<double>> offsets(static_cast<std::size_t>(n_points) * d);
    for (auto& s : offsets) s.reserve(trials);

    const SeedStream trial_root = SeedStream(seed).child("trial");
    for (int t = 0; t < trials; ++t) {
        const CubeSample sample = trial(trial_root.child(static_cast<std::uint64_t>(t)).key());
        if (!cubes_pass_net_check(sample.cubes, params)) {
            check.net_property_ok = false;
            ++check.net_failures;
        }
        for (int i = 0; i < n_points; ++i) {
            std::uint64_t cube = 0;
            for (int j = 0; j < d; ++j) cube = cube * cube_count_1d + sample.cubes[i][j];
            ++counts[i][cube];
            for (int j = 0; j < d; ++j)
                offsets[static_cast<std::size_t>(i) * d + j].push_back(sample.offsets[i][j]);
        }
    }

    // (ii) per-point chi-square over cubes, Bonferroni across points.
    for (int i = 0; i < n_points; ++i) {
        const auto res = chi_square_uniform(counts[i]);
        check.cube_pvalue_min = std::min(check.cube_pvalue_min, res.pvalue);
    }
    check.cube_uniform_ok = check.cube_pvalue_min >= significance / n_points;

    // (iii) per-axis KS over pooled offsets, Bonferroni across axes.
    for (int j = 0; j < d; ++j) {
        std::vector<double> pooled;
        pooled.reserve(static_cast<std::size_t>(trials) * n_points);
        for (int i = 0; i < n_points; ++i) {
            const auto& s = offsets[static_cast<std::size_t>(i) * d + j];
            pooled.insert(pooled.end(), s.begin(), s.end());
        }
        const auto res = ks_uniform(pooled);
        check.ks_pvalue_min = std::min(check.ks_pvalue_min, res.pvalue);
    }
    check.within_cube_uniform_ok = check.ks_pvalue_min >= significance / d;

    // (iii) pairwise correlation across all (point, axis) series.
    const std::size_t series = offsets.size();
    std::size_t pairs = 0;
    for (std::size_t a = 0; a < series; ++a) {
        for (std::size_t b = a + 1; b < series; ++b) {
            const double r = pearson_correlation(offsets[a], offsets[b]);
            const double z = std::abs(r) * std::sqrt(static_cast<double>(trials));
            const double p = 2.0 * (1.0 - normal_cdf(z));
            check.corr_abs_max = std::max(check.corr_abs_max, std::abs(r));
            check.corr_pvalue_min = std::min(check.corr_pvalue_min, p);
            ++pairs;
        }
    }
    check.within_cube_independent_ok =
        pairs == 0 || check.corr_pvalue_min >= significance / static_cast<double>(pairs);
    return check;
}

}  // namespace

AbstractNetCheck verify_abstract_conditions(const ScramblingScheme& scheme,
                                            const NetParams& params, const PointSet& base,
                                            int trials, double significance) {
    scheme.validate();
    params.validate();
    if (scheme.base != params.base)
        throw std::invalid_argument("scheme base differs from net base");
    if (scheme.depth != params.order())
        throw std::invalid_argument(
            "fast checks need depth == m - t; use the sampled variant otherwise");
    if (!verify_net(base, params).ok)
        throw std::invalid_argument("base point set is not a net for these parameters");

    const auto prefixes = point_prefixes(base, scheme.base, scheme.depth);
    return run_abstract_checks(
        [&](std::uint64_t trial_seed) { return scramble_cubes(prefixes, scheme, trial_seed); },
        params, trials, significance, scheme.seed);
}

AbstractNetCheck verify_abstract_conditions_sampled(
    const std::function<PointSet(std::uint64_t)>& sampler, const NetParams& params, int trials,
    double significance, std::uint64_t seed) {
    params.validate();
    const int order = params.order();
    const BigInt scale =
        int_pow(static_cast<std::uint64_t>(params.base), static_cast<unsigned>(order));
    return run_abstract_checks(
        [&](std::uint64_t trial_seed) {
            const PointSet ps = sampler(trial_seed);
            CubeSample sample;
            sample.cubes.assign(ps.size(), std::vector<std::uint32_t>(ps.dim()));
            sample.offsets.assign(ps.size(), std::vector<double>(ps.dim()));
            for (int n = 0; n < ps.size(); ++n) {
                for (int j = 0; j < ps.dim(); ++j) {
                    const Rational x = ps.at(n, j).rational();
                    const BigInt cube = floor_scaled(x, scale);
                    sample.cubes[n][j] = cube.convert_to<std::uint32_t>();
                    sample.offsets[n][j] = to_double(x * scale - cube);
                }
            }
            return sample;
        },
        params, trials, significance, seed);
}

}  // namespace negdep
