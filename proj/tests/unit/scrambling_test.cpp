#include "negdep/scrambling.hpp"

#include "negdep/errors.hpp"
#include "negdep/stats.hpp"

#include <doctest.h>

#include <array>
#include <cmath>
#include <map>

using namespace negdep;

namespace {

const std::array<std::pair<ScrambleFramework, PermFamily>, 7> kAllSchemes = {{
    {ScrambleFramework::nested, PermFamily::uniform},
    {ScrambleFramework::positional, PermFamily::uniform},
    {ScrambleFramework::nested, PermFamily::linear},
    {ScrambleFramework::positional, PermFamily::linear},
    {ScrambleFramework::nested, PermFamily::digital_shift},
    {ScrambleFramework::positional, PermFamily::digital_shift},
    {ScrambleFramework::nested, PermFamily::affine_matrix},
}};

ScramblingScheme make_scheme(ScrambleFramework fw, PermFamily fam, int base, int depth,
                             std::uint64_t seed, bool symmetrize = false) {
    ScramblingScheme s;
    s.framework = fw;
    s.family = fam;
    s.base = base;
    s.depth = depth;
    s.seed = seed;
    s.symmetrize = symmetrize;
    return s;
}

PointSet searched_net(const NetParams& params) {
    const auto mats = search_net_matrices(params);
    REQUIRE(mats.has_value());
    return net_from_matrices(params, *mats);
}

}  // namespace

TEST_CASE("digits extraction with the terminating convention") {
    CHECK(digits(Coord(Rational(0)), 2, 4) == std::vector<std::uint8_t>{0, 0, 0, 0});
    CHECK(digits(Coord(Rational(3, 4)), 2, 3) == std::vector<std::uint8_t>{1, 1, 0});
    CHECK(digits(Coord(Rational(1, 3)), 3, 2) == std::vector<std::uint8_t>{1, 0});
    CHECK(digits(Coord(0.75), 2, 3) == std::vector<std::uint8_t>{1, 1, 0});
    CHECK(digits(Coord(Rational(5, 9)), 3, 4) == std::vector<std::uint8_t>{1, 2, 0, 0});
}

TEST_CASE("base-2 permutation families coincide") {
    Rng rng(1);
    std::map<std::vector<std::uint8_t>, int> seen;
    for (int i = 0; i < 2000; ++i) {
        for (const auto fam :
             {PermFamily::uniform, PermFamily::linear, PermFamily::digital_shift}) {
            const auto p = sample_permutation(fam, 2, rng);
            REQUIRE(p.size() == 2);
            CHECK((p == std::vector<std::uint8_t>{0, 1} || p == std::vector<std::uint8_t>{1, 0}));
            ++seen[p];
        }
    }
    // Both elements appear with roughly equal frequency.
    CHECK(seen.size() == 2);
    for (const auto& [perm, count] : seen) CHECK(std::abs(count - 3000) < 300);
}

TEST_CASE("single-fold uniformity of the permutation families") {
    const int draws = 100000;
    const int b = 5;
    for (const auto fam : {PermFamily::uniform, PermFamily::linear, PermFamily::digital_shift}) {
        Rng rng(0xabcdef);
        std::vector<std::vector<int>> freq(b, std::vector<int>(b, 0));
        for (int i = 0; i < draws; ++i) {
            const auto p = sample_permutation(fam, b, rng);
            for (int x = 0; x < b; ++x) ++freq[x][p[x]];
        }
        const double expect = static_cast<double>(draws) / b;
        const double sigma = std::sqrt(draws * (1.0 / b) * (1.0 - 1.0 / b));
        for (int x = 0; x < b; ++x)
            for (int y = 0; y < b; ++y)
                CHECK(std::abs(freq[x][y] - expect) <= 4.0 * sigma);
    }
}

TEST_CASE("linear and shift families need prime bases") {
    Rng rng(2);
    CHECK_THROWS_AS(sample_permutation(PermFamily::linear, 4, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_permutation(PermFamily::digital_shift, 6, rng),
                    std::invalid_argument);
    CHECK(sample_permutation(PermFamily::uniform, 4, rng).size() == 4);
}

TEST_CASE("identity realization maps x to its tail") {
    // All-identity permutations, zero digits in: sigma(x) = y * b^-depth.
    for (const auto fam : {PermFamily::uniform, PermFamily::affine_matrix}) {
        ScramblingScheme scheme = make_scheme(ScrambleFramework::nested, fam, 2, 3, 0);
        ScramblingRealization real = identity_realization(scheme, 2, 1);
        real.tails[0][0] = 123456;
        real.tails[1][0] = (1ull << 53) - 1;
        PointSet zeros(1);
        zeros.push_point({Rational(0)});
        zeros.push_point({Rational(0)});
        const PointSet out = apply_realization(zeros, real);
        const BigInt denom = (BigInt(1) << 53) * 8;
        CHECK(out.at(0, 0).rational() == Rational(123456, denom));
        CHECK(out.at(1, 0).rational() == Rational((BigInt(1) << 53) - 1, denom));
    }
}

TEST_CASE("identity realization keeps net points in place up to the tail") {
    const PointSet net = searched_net(NetParams{2, 0, 2, 3});
    ScramblingScheme scheme = make_scheme(ScrambleFramework::nested, PermFamily::uniform, 2, 2, 0);
    const ScramblingRealization real = identity_realization(scheme, net.size(), net.dim());
    const PointSet out = apply_realization(net, real);
    for (int n = 0; n < net.size(); ++n)
        for (int j = 0; j < net.dim(); ++j)
            CHECK(out.at(n, j).rational() == net.at(n, j).rational());
}

TEST_CASE("apply_realization replays scramble bit-exactly") {
    const PointSet net = searched_net(NetParams{2, 0, 2, 3});
    for (const auto& [fw, fam] : kAllSchemes) {
        const ScramblingScheme scheme = make_scheme(fw, fam, 2, 2, 777, true);
        const ScrambleResult res = scramble(net, scheme);
        const PointSet replay = apply_realization(net, res.realization);
        for (int n = 0; n < net.size(); ++n)
            for (int j = 0; j < net.dim(); ++j)
                CHECK(replay.at(n, j).rational() == res.points.at(n, j).rational());
    }
}

TEST_CASE("scramble is deterministic in the scheme seed") {
    const PointSet net = searched_net(NetParams{2, 0, 2, 3});
    const auto a = scramble(net, make_scheme(ScrambleFramework::nested, PermFamily::uniform, 2,
                                             2, 42));
    const auto b = scramble(net, make_scheme(ScrambleFramework::nested, PermFamily::uniform, 2,
                                             2, 42));
    const auto c = scramble(net, make_scheme(ScrambleFramework::nested, PermFamily::uniform, 2,
                                             2, 43));
    bool same = true, diff = false;
    for (int n = 0; n < net.size(); ++n)
        for (int j = 0; j < net.dim(); ++j) {
            same = same && a.points.at(n, j).rational() == b.points.at(n, j).rational();
            diff = diff || a.points.at(n, j).rational() != c.points.at(n, j).rational();
        }
    CHECK(same);
    CHECK(diff);
}

TEST_CASE("scrambled nets stay nets across schemes, parameters and seeds") {
    // Base-2 nets with (t,m) in {(0,1),(0,2),(1,2)} and d <= 3, 200 seeds.
    std::vector<NetParams> nets;
    for (const auto& [t, m] : {std::pair{0, 1}, {0, 2}, {1, 2}}) {
        for (int d = 1; d <= 3; ++d) nets.push_back(NetParams{2, t, m, d});
    }
    for (const auto& params : nets) {
        const PointSet net = searched_net(params);
        REQUIRE(verify_net(net, params).ok);
        if (params.order() == 0) continue;  // depth-0 scrambling is undefined
        for (const auto& [fw, fam] : kAllSchemes) {
            for (std::uint64_t seed = 0; seed < 200; ++seed) {
                const ScramblingScheme scheme =
                    make_scheme(fw, fam, 2, params.order(), seed, seed % 2 == 1);
                const ScrambleResult res = scramble(net, scheme);
                if (!verify_net(res.points, params).ok) {
                    CAPTURE(params.t);
                    CAPTURE(params.m);
                    CAPTURE(params.dim);
                    CAPTURE(seed);
                    FAIL("scrambled output lost the net property");
                }
            }
        }
    }
}

TEST_CASE("scramble_cubes agrees with the exact scramble") {
    const NetParams params{2, 0, 2, 3};
    const PointSet net = searched_net(params);
    const auto prefixes = point_prefixes(net, 2, 2);
    for (const auto& [fw, fam] : kAllSchemes) {
        for (const bool symmetrize : {false, true}) {
            ScramblingScheme scheme = make_scheme(fw, fam, 2, 2, 31337, symmetrize);
            const CubeSample fast = scramble_cubes(prefixes, scheme, scheme.seed);
            const ScrambleResult slow = scramble(net, scheme);
            for (int n = 0; n < net.size(); ++n)
                for (int j = 0; j < net.dim(); ++j) {
                    const Rational x = slow.points.at(n, j).rational();
                    const BigInt cube = floor_scaled(x, 4);
                    CHECK(fast.cubes[n][j] == cube.convert_to<std::uint32_t>());
                    CHECK(fast.offsets[n][j] ==
                          doctest::Approx(to_double(Rational(x * 4 - cube))).epsilon(1e-15));
                }
        }
    }
}

TEST_CASE("enumerate_prefix_maps sizes") {
    CHECK(enumerate_prefix_maps(ScrambleFramework::nested, PermFamily::uniform, 2, 2).size() ==
          8);
    CHECK(enumerate_prefix_maps(ScrambleFramework::positional, PermFamily::uniform, 2, 2)
              .size() == 4);
    CHECK(enumerate_prefix_maps(ScrambleFramework::nested, PermFamily::affine_matrix, 2, 2)
              .size() == 8);
    CHECK(enumerate_prefix_maps(ScrambleFramework::nested, PermFamily::uniform, 4, 1).size() ==
          24);
    CHECK(enumerate_prefix_maps(ScrambleFramework::nested, PermFamily::linear, 3, 1).size() ==
          6);
    CHECK(enumerate_prefix_maps(ScrambleFramework::nested, PermFamily::digital_shift, 3, 1)
              .size() == 3);
    CHECK_THROWS_AS(
        enumerate_prefix_maps(ScrambleFramework::nested, PermFamily::uniform, 2, 5, 100),
        BudgetExceeded);
}

TEST_CASE("every enumerated prefix map is a depth-respecting bijection") {
    for (const auto& [fw, fam] : kAllSchemes) {
        const auto maps = enumerate_prefix_maps(fw, fam, 2, 2);
        for (const auto& map : maps) {
            std::vector<bool> hit(4, false);
            for (std::uint32_t v = 0; v < 4; ++v) {
                CHECK(map[v] < 4);
                hit[map[v]] = true;
            }
            CHECK(std::all_of(hit.begin(), hit.end(), [](bool h) { return h; }));
            // First digit of the image depends only on the first digit.
            CHECK(map[0] / 2 == map[1] / 2);
            CHECK(map[2] / 2 == map[3] / 2);
        }
    }
}

TEST_CASE("abstract-net conditions hold for the scrambled (0,2,3)-net") {
    const NetParams params{2, 0, 2, 3};
    const PointSet net = searched_net(params);
    const ScramblingScheme scheme =
        make_scheme(ScrambleFramework::nested, PermFamily::uniform, 2, 2, 5);
    const AbstractNetCheck check = verify_abstract_conditions(scheme, params, net, 2000);
    CHECK(check.net_property_ok);
    CHECK(check.cube_uniform_ok);
    CHECK(check.within_cube_uniform_ok);
    CHECK(check.within_cube_independent_ok);
    CHECK(check.ok());
}

TEST_CASE("a shared tail across points is flagged by condition (iii)") {
    const NetParams params{2, 0, 2, 3};
    const PointSet net = searched_net(params);
    ScramblingScheme scheme = make_scheme(ScrambleFramework::nested, PermFamily::uniform, 2, 2, 5);
    scheme.break_tail_independence = true;
    const AbstractNetCheck check = verify_abstract_conditions(scheme, params, net, 2000);
    CHECK(check.net_property_ok);
    CHECK_FALSE(check.within_cube_independent_ok);
    CHECK_FALSE(check.ok());
}

TEST_CASE("insufficient trials are rejected") {
    const NetParams params{2, 0, 2, 3};
    const PointSet net = searched_net(params);
    const ScramblingScheme scheme =
        make_scheme(ScrambleFramework::nested, PermFamily::uniform, 2, 2, 5);
    CHECK_THROWS_AS(verify_abstract_conditions(scheme, params, net, 100),
                    std::invalid_argument);
}

TEST_CASE("infinite-digit scrambling matches depth-m scrambling on a t=0 net") {
    const NetParams params{2, 0, 2, 3};
    const PointSet net = searched_net(params);

    // Cube occupancy of the first output point, both samplers, 4000 trials.
    const int trials = 4000;
    std::vector<std::uint64_t> counts_inf(64, 0), counts_depth(64, 0);
    const SeedStream root(909);
    const auto prefixes = point_prefixes(net, 2, 2);
    for (int t = 0; t < trials; ++t) {
        const PointSet inf =
            infinite_digit_scramble(net, 2, 6, root.child("inf").child(t).key());
        std::uint64_t cube = 0;
        for (int j = 0; j < 3; ++j)
            cube = cube * 4 + floor_scaled(inf.at(0, j).rational(), 4).convert_to<std::uint64_t>();
        ++counts_inf[cube];

        const ScramblingScheme scheme = make_scheme(ScrambleFramework::nested,
                                                    PermFamily::uniform, 2, 2,
                                                    root.child("depth").child(t).key());
        const CubeSample s = scramble_cubes(prefixes, scheme, scheme.seed);
        std::uint64_t cube2 = 0;
        for (int j = 0; j < 3; ++j) cube2 = cube2 * 4 + s.cubes[0][j];
        ++counts_depth[cube2];
    }
    CHECK(chi_square_two_sample(counts_inf, counts_depth).pvalue >= 1e-3);
}

TEST_CASE("infinite-digit scrambling preserves the net property") {
    const NetParams params{2, 0, 2, 3};
    const PointSet net = searched_net(params);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const PointSet out = infinite_digit_scramble(net, 2, 5, seed);
        CHECK(verify_net(out, params).ok);
    }
}

TEST_CASE("the abstract checker runs on infinite-digit scrambling of a t>0 net") {
    // With t > 0 the infinite-digit variant keeps digits beyond m - t, which
    // can couple the within-cube positions; the checker must run and report
    // either way.
    const NetParams params{2, 1, 2, 2};
    const PointSet net = searched_net(params);
    REQUIRE(verify_net(net, params).ok);
    const auto sampler = [&](std::uint64_t seed) {
        return infinite_digit_scramble(net, 2, 6, seed);
    };
    const AbstractNetCheck check =
        verify_abstract_conditions_sampled(sampler, params, 1000, 1e-3, 11);
    CHECK(check.trials == 1000);
    CHECK(check.net_property_ok);  // scrambling still maps intervals to intervals
}

TEST_CASE("scheme validation") {
    ScramblingScheme bad = make_scheme(ScrambleFramework::nested, PermFamily::linear, 4, 1, 0);
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    ScramblingScheme deep = make_scheme(ScrambleFramework::nested, PermFamily::uniform, 2, 40, 0);
    CHECK_THROWS_AS(deep.validate(), std::invalid_argument);
}
