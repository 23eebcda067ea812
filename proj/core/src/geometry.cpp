#include "negdep/geometry.hpp"

#include "negdep/errors.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace negdep {

PointSet::PointSet(int dim, std::string provenance)
    : dim_(dim), provenance_(std::move(provenance)) {
    if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
}

void PointSet::push_point(std::vector<Coord> point) {
    if (static_cast<int>(point.size()) != dim_)
        throw std::invalid_argument("point dimension mismatch");
    for (const Coord& c : point) {
        const Rational v = c.rational();
        if (v < 0 || v >= 1) throw std::invalid_argument("coordinate outside [0,1)");
    }
    coords_.insert(coords_.end(), std::make_move_iterator(point.begin()),
                   std::make_move_iterator(point.end()));
}

AnchoredBox::AnchoredBox(std::vector<Rational> upper) : upper_(std::move(upper)) {
    for (const Rational& a : upper_) {
        if (a < 0 || a > 1) throw std::invalid_argument("anchored box bound outside [0,1]");
    }
}

AnchoredBox AnchoredBox::empty_box(int dim) {
    return AnchoredBox(std::vector<Rational>(dim, Rational(0)));
}

AnchoredBox AnchoredBox::unit_cube(int dim) {
    return AnchoredBox(std::vector<Rational>(dim, Rational(1)));
}

bool AnchoredBox::empty() const {
    if (upper_.empty()) return true;
    return std::any_of(upper_.begin(), upper_.end(), [](const Rational& a) { return a == 0; });
}

Rational AnchoredBox::volume() const {
    Rational v = 1;
    for (const Rational& a : upper_) v *= a;
    return v;
}

bool AnchoredBox::contains(std::span<const Coord> x) const {
    if (x.size() != upper_.size()) throw std::invalid_argument("dimension mismatch");
    for (std::size_t i = 0; i < upper_.size(); ++i) {
        if (x[i].rational() >= upper_[i]) return false;
    }
    return true;
}

TestSet::TestSet(AnchoredBox outer, AnchoredBox inner)
    : outer_(std::move(outer)), inner_(std::move(inner)) {
    if (outer_.dim() != inner_.dim()) throw std::invalid_argument("dimension mismatch");
}

TestSet TestSet::anchored(AnchoredBox outer) {
    const int d = outer.dim();
    return TestSet(std::move(outer), AnchoredBox::empty_box(d));
}

AnchoredBox TestSet::effective_inner() const {
    std::vector<Rational> m(outer_.dim());
    for (int i = 0; i < outer_.dim(); ++i)
        m[i] = std::min(inner_.upper()[i], outer_.upper()[i]);
    return AnchoredBox(std::move(m));
}

Rational TestSet::volume() const {
    return outer_.volume() - effective_inner().volume();
}

bool TestSet::contains(std::span<const Coord> x) const {
    return outer_.contains(x) && !inner_.contains(x);
}

int ElementaryInterval::order() const {
    int s = 0;
    for (const int l : levels) s += l;
    return s;
}

Rational ElementaryInterval::volume() const {
    return Rational(1, int_pow(static_cast<std::uint64_t>(base),
                               static_cast<unsigned>(order())));
}

bool ElementaryInterval::contains(std::span<const Coord> x) const {
    if (static_cast<int>(x.size()) != dim()) throw std::invalid_argument("dimension mismatch");
    for (int i = 0; i < dim(); ++i) {
        const BigInt scale = int_pow(static_cast<std::uint64_t>(base),
                                     static_cast<unsigned>(levels[i]));
        const Rational scaled = x[i].rational() * scale;
        if (scaled < indices[i] || scaled >= indices[i] + 1) return false;
    }
    return true;
}

Rational ElementaryInterval::lower(int i) const {
    return Rational(indices[i], int_pow(static_cast<std::uint64_t>(base),
                                        static_cast<unsigned>(levels[i])));
}

std::string ElementaryInterval::to_string() const {
    std::ostringstream out;
    for (int i = 0; i < dim(); ++i) {
        if (i) out << " x ";
        out << "[" << indices[i] << "/" << base << "^" << levels[i] << ", " << indices[i] + 1
            << "/" << base << "^" << levels[i] << ")";
    }
    return out.str();
}

ElementaryInterval BasicCube::to_elementary_interval() const {
    ElementaryInterval e;
    e.base = base;
    e.levels.assign(indices.size(), order);
    e.indices = indices;
    return e;
}

Rational BasicCube::volume() const { return to_elementary_interval().volume(); }

bool BasicCube::contains(std::span<const Coord> x) const {
    return to_elementary_interval().contains(x);
}

Rational volume(const AnchoredBox& b) { return b.volume(); }
Rational volume(const TestSet& s) { return s.volume(); }
Rational volume(const ElementaryInterval& e) { return e.volume(); }

bool contains(const TestSet& s, std::span<const Coord> x) { return s.contains(x); }
bool contains(const ElementaryInterval& e, std::span<const Coord> x) { return e.contains(x); }
bool contains(const BasicCube& c, std::span<const Coord> x) { return c.contains(x); }

namespace {

template <class SetT>
bool is_fair_impl(const PointSet& p, const SetT& f) {
    const Rational target = f.volume() * p.size();
    if (denominator(target) != 1) return false;
    BigInt count = 0;
    for (int n = 0; n < p.size(); ++n) {
        if (f.contains(p.point(n))) ++count;
    }
    return count == numerator(target);
}

}  // namespace

bool is_fair(const PointSet& p, const TestSet& f) { return is_fair_impl(p, f); }
bool is_fair(const PointSet& p, const ElementaryInterval& f) { return is_fair_impl(p, f); }

std::uint64_t count_elementary_intervals(int base, int order, int dim) {
    // C(order+dim-1, dim-1) * base^order with overflow guards.
    std::uint64_t shapes = 1;
    for (int i = 1; i <= dim - 1; ++i) {
        shapes = shapes * static_cast<std::uint64_t>(order + i) / static_cast<std::uint64_t>(i);
    }
    std::uint64_t positions = 1;
    for (int i = 0; i < order; ++i) {
        if (positions > (~std::uint64_t{0}) / static_cast<std::uint64_t>(base))
            throw BudgetExceeded("elementary interval count overflows");
        positions *= static_cast<std::uint64_t>(base);
    }
    if (shapes != 0 && positions > (~std::uint64_t{0}) / shapes)
        throw BudgetExceeded("elementary interval count overflows");
    return shapes * positions;
}

std::vector<ElementaryInterval> enumerate_elementary_intervals(int base, int order, int dim,
                                                               std::uint64_t limit) {
    if (base < 2 || order < 0 || dim < 1)
        throw std::invalid_argument("need base >= 2, order >= 0, dim >= 1");
    const std::uint64_t total = count_elementary_intervals(base, order, dim);
    if (total > limit) {
        std::ostringstream msg;
        msg << "elementary interval enumeration of size " << total << " exceeds limit " << limit;
        throw BudgetExceeded(msg.str());
    }

    std::vector<ElementaryInterval> out;
    out.reserve(total);

    // Compositions of `order` into dim non-negative parts.
    std::vector<int> levels(dim, 0);
    levels[dim - 1] = order;
    auto emit_shape = [&](const std::vector<int>& shape) {
        std::vector<std::uint32_t> idx(dim, 0);
        std::vector<std::uint32_t> radix(dim);
        for (int i = 0; i < dim; ++i) {
            radix[i] = static_cast<std::uint32_t>(
                int_pow(static_cast<std::uint64_t>(base), static_cast<unsigned>(shape[i]))
                    .convert_to<std::uint64_t>());
        }
        while (true) {
            ElementaryInterval e;
            e.base = base;
            e.levels = shape;
            e.indices = idx;
            out.push_back(std::move(e));
            int pos = dim - 1;
            while (pos >= 0) {
                if (++idx[pos] < radix[pos]) break;
                idx[pos] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
    };

    // Iterate compositions in colex order starting from (0,...,0,order).
    std::vector<int> shape(dim, 0);
    shape[0] = order;
    while (true) {
        std::vector<int> rev(shape.rbegin(), shape.rend());
        emit_shape(rev);
        // next composition of `order` into dim parts (standard successor).
        int i = 0;
        while (i < dim - 1 && shape[i] == 0) ++i;
        if (i == dim - 1) break;
        const int v = shape[i];
        shape[i] = 0;
        shape[0] = v - 1;
        ++shape[i + 1];
    }
    return out;
}

Rational cell_fraction(const Rational& u, const BigInt& cells, std::uint64_t c) {
    Rational v = u * cells - c;
    if (v <= 0) return Rational(0);
    if (v >= 1) return Rational(1);
    return v;
}

}  // namespace negdep
