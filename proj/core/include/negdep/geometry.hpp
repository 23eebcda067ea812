#pragma once

#include "negdep/rational.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace negdep {

/// One coordinate in [0,1). Holds either a double (sampled data) or an exact
/// rational (enumerated data). Every comparison against box bounds goes
/// through the exact rational value, so membership decisions never depend on
/// floating rounding.
class Coord {
public:
    Coord() : v_(0.0) {}
    Coord(double v) : v_(v) {}
    Coord(Rational v) : v_(std::move(v)) {}

    bool exact() const { return std::holds_alternative<Rational>(v_); }

    Rational rational() const {
        if (const double* d = std::get_if<double>(&v_)) return rational_from_double(*d);
        return std::get<Rational>(v_);
    }

    double real() const {
        if (const double* d = std::get_if<double>(&v_)) return *d;
        return to_double(std::get<Rational>(v_));
    }

private:
    std::variant<double, Rational> v_;
};

/// Ordered tuple of N points of equal dimension. Point order is significant:
/// index n identifies the n-th random variable of the model that produced it.
class PointSet {
public:
    explicit PointSet(int dim, std::string provenance = {});

    int dim() const { return dim_; }
    int size() const { return static_cast<int>(coords_.size() / dim_); }

    void push_point(std::vector<Coord> point);

    std::span<const Coord> point(int n) const {
        return {coords_.data() + static_cast<std::size_t>(n) * dim_,
                static_cast<std::size_t>(dim_)};
    }
    const Coord& at(int n, int j) const {
        return coords_[static_cast<std::size_t>(n) * dim_ + j];
    }

    const std::string& provenance() const { return provenance_; }
    void set_provenance(std::string p) { provenance_ = std::move(p); }

private:
    int dim_;
    std::string provenance_;
    std::vector<Coord> coords_;
};

/// Half-open anchored box [0, a), a in [0,1]^d. Empty iff some a_i = 0.
class AnchoredBox {
public:
    AnchoredBox() = default;
    explicit AnchoredBox(std::vector<Rational> upper);

    static AnchoredBox empty_box(int dim);
    static AnchoredBox unit_cube(int dim);

    int dim() const { return static_cast<int>(upper_.size()); }
    const std::vector<Rational>& upper() const { return upper_; }
    bool empty() const;

    Rational volume() const;
    bool contains(std::span<const Coord> x) const;

private:
    std::vector<Rational> upper_;
};

/// Difference of anchored boxes B \ A. A does not have to be nested in B;
/// membership is x in B and x not in A, and the volume uses the exact
/// intersection vol(B) - vol(A n B).
class TestSet {
public:
    TestSet() = default;
    TestSet(AnchoredBox outer, AnchoredBox inner);

    /// Anchored box viewed as a member of the difference family: B \ empty.
    static TestSet anchored(AnchoredBox outer);

    int dim() const { return outer_.dim(); }
    const AnchoredBox& outer() const { return outer_; }
    const AnchoredBox& inner() const { return inner_; }
    bool is_anchored() const { return inner_.empty(); }

    /// Componentwise min(inner, outer) = the box A n B.
    AnchoredBox effective_inner() const;

    Rational volume() const;
    bool contains(std::span<const Coord> x) const;

private:
    AnchoredBox outer_;
    AnchoredBox inner_;
};

/// Base-b elementary interval: prod_i [k_i b^-l_i, (k_i+1) b^-l_i).
struct ElementaryInterval {
    int base = 2;
    std::vector<int> levels;
    std::vector<std::uint32_t> indices;

    int dim() const { return static_cast<int>(levels.size()); }
    int order() const;
    Rational volume() const;
    bool contains(std::span<const Coord> x) const;
    Rational lower(int i) const;
    std::string to_string() const;
};

/// Cube of side b^-order; the order-(m-t) elementary cubes of a net.
struct BasicCube {
    int base = 2;
    int order = 0;
    std::vector<std::uint32_t> indices;

    ElementaryInterval to_elementary_interval() const;
    Rational volume() const;
    bool contains(std::span<const Coord> x) const;
};

Rational volume(const AnchoredBox& b);
Rational volume(const TestSet& s);
Rational volume(const ElementaryInterval& e);

bool contains(const TestSet& s, std::span<const Coord> x);
bool contains(const ElementaryInterval& e, std::span<const Coord> x);
bool contains(const BasicCube& c, std::span<const Coord> x);

/// N * vol(F) equals the number of points inside F. False whenever N*vol(F)
/// is not an integer.
bool is_fair(const PointSet& p, const TestSet& f);
bool is_fair(const PointSet& p, const ElementaryInterval& f);

/// All elementary intervals with level sum `order`; count is
/// C(order+d-1, d-1) * b^order and is guarded by `limit`.
std::vector<ElementaryInterval> enumerate_elementary_intervals(int base, int order, int dim,
                                                               std::uint64_t limit = 10'000'000);

/// Exact count of the enumeration above (overflow-guarded).
std::uint64_t count_elementary_intervals(int base, int order, int dim);

/// Fraction of the length of cell [c/cells, (c+1)/cells) covered by [0, u),
/// i.e. clamp(u*cells - c, 0, 1). The within-cell membership weight used by
/// the exact probability oracles.
Rational cell_fraction(const Rational& u, const BigInt& cells, std::uint64_t c);

/// Point-set text format: header "d N", then N rows of d space-separated
/// coordinates; exact values spelled "p/q", sampled values as shortest
/// round-trip decimals. Round-trips bit-exactly in both modes.
PointSet read_pointset(std::istream& in);
void write_pointset(std::ostream& out, const PointSet& ps);

}  // namespace negdep
