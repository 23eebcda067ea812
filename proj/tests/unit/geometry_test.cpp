#include "negdep/geometry.hpp"

#include "negdep/errors.hpp"
#include "negdep/rng.hpp"

#include <doctest.h>

#include <map>
#include <sstream>

using namespace negdep;

namespace {

TestSet diagonal(int dim, const Rational& corner, const Rational& eps) {
    std::vector<Rational> in(dim, corner), out(dim, corner + eps);
    return TestSet(AnchoredBox(std::move(out)), AnchoredBox(std::move(in)));
}

std::vector<Coord> pt(std::initializer_list<Rational> xs) {
    return std::vector<Coord>(xs.begin(), xs.end());
}

}  // namespace

TEST_CASE("volume of the full cube and diagonal shells") {
    CHECK(TestSet::anchored(AnchoredBox::unit_cube(3)).volume() == 1);

    // (1/2 + 1/100)^3 - (1/2)^3 computed two ways.
    const TestSet d1 = diagonal(3, Rational(1, 2), Rational(1, 100));
    CHECK(d1.volume() == Rational(7651, 1000000));
    const Rational eps(1, 100);
    CHECK(d1.volume() == eps * (Rational(3, 4) + Rational(3, 2) * eps + eps * eps));

    // (2/3 + 1/100)^3 - (2/3)^3 against the expanded form.
    const TestSet d2 = diagonal(3, Rational(2, 3), Rational(1, 100));
    CHECK(d2.volume() == Rational(365427, 27000000));
    CHECK(d2.volume() == Rational(4, 3) * eps + 2 * eps * eps + eps * eps * eps);
}

TEST_CASE("volume uses the box intersection when corners are not nested") {
    // B = [0,0.3) x [0,0.9), A = [0,0.7) x [0,0.1): A n B = [0,0.3) x [0,0.1).
    const TestSet s(AnchoredBox({Rational(3, 10), Rational(9, 10)}),
                    AnchoredBox({Rational(7, 10), Rational(1, 10)}));
    CHECK(s.volume() == Rational(27, 100) - Rational(3, 100));
}

TEST_CASE("empty inner boxes make anchored sets") {
    const TestSet s = TestSet::anchored(AnchoredBox({Rational(1, 2), Rational(1, 2)}));
    CHECK(s.is_anchored());
    CHECK(s.volume() == Rational(1, 4));
    CHECK(AnchoredBox({Rational(0), Rational(1, 2)}).empty());
    CHECK(AnchoredBox({Rational(0), Rational(1, 2)}).volume() == 0);
}

TEST_CASE("contains follows half-open semantics") {
    const TestSet box = TestSet::anchored(AnchoredBox({Rational(1, 2), Rational(1, 2)}));
    CHECK(box.contains(pt({Rational(0), Rational(0)})));
    CHECK_FALSE(box.contains(pt({Rational(1, 2), Rational(0)})));

    const TestSet ring(AnchoredBox({Rational(3, 4), Rational(3, 4)}),
                       AnchoredBox({Rational(1, 2), Rational(1, 2)}));
    CHECK(ring.contains(pt({Rational(3, 5), Rational(1, 10)})));
    CHECK_FALSE(ring.contains(pt({Rational(1, 10), Rational(1, 10)})));

    CHECK_THROWS_AS((void)box.contains(pt({Rational(0)})), std::invalid_argument);
}

TEST_CASE("half-open property holds on random boxes") {
    Rng rng(17);
    for (int it = 0; it < 50; ++it) {
        const int d = 1 + static_cast<int>(rng.next_below(3));
        std::vector<Rational> upper(d);
        for (int i = 0; i < d; ++i)
            upper[i] = Rational(1 + rng.next_below(15), 16);
        const AnchoredBox box{upper};
        std::vector<Coord> zero(d, Coord(Rational(0)));
        CHECK(box.contains(zero));
        for (int i = 0; i < d; ++i) {
            std::vector<Coord> edge = zero;
            edge[i] = Coord(upper[i]);
            CHECK_FALSE(box.contains(edge));
        }
    }
}

TEST_CASE("elementary interval membership and volume") {
    ElementaryInterval e;
    e.base = 2;
    e.levels = {1, 0, 2};
    e.indices = {1, 0, 2};
    CHECK(e.order() == 3);
    CHECK(e.volume() == Rational(1, 8));
    CHECK(e.contains(pt({Rational(1, 2), Rational(0), Rational(1, 2)})));
    CHECK_FALSE(e.contains(pt({Rational(1, 2), Rational(0), Rational(3, 4)})));
    CHECK(e.lower(0) == Rational(1, 2));
    CHECK(e.lower(2) == Rational(1, 2));
}

TEST_CASE("enumerate_elementary_intervals counts") {
    CHECK(enumerate_elementary_intervals(2, 2, 3).size() == 24);
    CHECK(count_elementary_intervals(2, 2, 3) == 24);
    CHECK(enumerate_elementary_intervals(2, 0, 3).size() == 1);
    CHECK(enumerate_elementary_intervals(3, 1, 2).size() == 6);
    CHECK_THROWS_AS(enumerate_elementary_intervals(2, 30, 4, 1000), BudgetExceeded);
}

TEST_CASE("enumeration emits every interval exactly once") {
    const auto all = enumerate_elementary_intervals(3, 2, 2);
    CHECK(all.size() == count_elementary_intervals(3, 2, 2));
    std::map<std::pair<std::vector<int>, std::vector<std::uint32_t>>, int> seen;
    for (const auto& e : all) ++seen[{e.levels, e.indices}];
    for (const auto& [key, count] : seen) CHECK(count == 1);
}

TEST_CASE("per-order interval partitions cover every point once") {
    Rng rng(23);
    PointSet ps(2);
    for (int n = 0; n < 9; ++n)
        ps.push_point({rng.next_unit(), rng.next_unit()});
    for (int order = 0; order <= 3; ++order) {
        // Fixed shape = a partition of the cube; counts must sum to N.
        for (const int first : {0, order}) {
            std::uint64_t total = 0;
            for (const auto& e : enumerate_elementary_intervals(2, order, 2)) {
                if (e.levels[0] != first) continue;
                for (int n = 0; n < ps.size(); ++n)
                    if (e.contains(ps.point(n))) ++total;
            }
            CHECK(total == 9);
        }
    }
}

TEST_CASE("is_fair") {
    PointSet ps(2);
    ps.push_point(pt({Rational(0), Rational(0)}));
    ps.push_point(pt({Rational(1, 2), Rational(1, 2)}));
    CHECK(is_fair(ps, TestSet::anchored(AnchoredBox::unit_cube(2))));

    ElementaryInterval half;
    half.base = 2;
    half.levels = {1, 0};
    half.indices = {0, 0};
    CHECK(is_fair(ps, half));

    // Two copies of one point inside a half-volume interval: count 2 != 1.
    PointSet dup(2);
    dup.push_point(pt({Rational(1, 4), Rational(1, 4)}));
    dup.push_point(pt({Rational(1, 4), Rational(1, 4)}));
    CHECK_FALSE(is_fair(dup, half));

    // N * vol not an integer is unfair by definition.
    const TestSet third = TestSet::anchored(AnchoredBox({Rational(1, 3), Rational(1)}));
    CHECK_FALSE(is_fair(ps, third));
}

TEST_CASE("cell_fraction clamps exactly") {
    CHECK(cell_fraction(Rational(1, 2), 2, 0) == 1);
    CHECK(cell_fraction(Rational(1, 2), 2, 1) == 0);
    CHECK(cell_fraction(Rational(3, 5), 2, 1) == Rational(1, 5));
    CHECK(cell_fraction(Rational(1), 4, 3) == 1);
    CHECK(cell_fraction(Rational(0), 4, 0) == 0);
}

TEST_CASE("point-set file format round-trips bit-exactly") {
    PointSet exact(2, "fixture");
    exact.push_point(pt({Rational(1, 3), Rational(0)}));
    exact.push_point(pt({Rational(200, 243), Rational(7, 8)}));
    std::stringstream buf;
    write_pointset(buf, exact);
    const PointSet back = read_pointset(buf);
    REQUIRE(back.size() == 2);
    for (int n = 0; n < 2; ++n)
        for (int j = 0; j < 2; ++j) {
            CHECK(back.at(n, j).exact());
            CHECK(back.at(n, j).rational() == exact.at(n, j).rational());
        }

    Rng rng(31);
    PointSet inexact(3);
    for (int n = 0; n < 5; ++n)
        inexact.push_point({rng.next_unit(), rng.next_unit(), rng.next_unit()});
    std::stringstream buf2;
    write_pointset(buf2, inexact);
    const PointSet back2 = read_pointset(buf2);
    for (int n = 0; n < 5; ++n)
        for (int j = 0; j < 3; ++j) {
            CHECK_FALSE(back2.at(n, j).exact());
            CHECK(back2.at(n, j).real() == inexact.at(n, j).real());
        }
}

TEST_CASE("point-set reader rejects malformed input") {
    std::stringstream bad1("2");
    CHECK_THROWS_AS(read_pointset(bad1), std::invalid_argument);
    std::stringstream bad2("2 2\n0.5 0.5\n");
    CHECK_THROWS_AS(read_pointset(bad2), std::invalid_argument);
    std::stringstream bad3("1 1\n1.5\n");
    CHECK_THROWS_AS(read_pointset(bad3), std::invalid_argument);
}
