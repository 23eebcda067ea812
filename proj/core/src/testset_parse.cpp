#include "negdep/testset_parse.hpp"

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace negdep {

namespace {

std::vector<Rational> parse_corner(std::string_view part) {
    std::vector<Rational> vals;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = part.find(',', start);
        const std::string_view tok =
            comma == std::string_view::npos ? part.substr(start) : part.substr(start, comma - start);
        if (tok.empty()) throw std::invalid_argument("empty coordinate in test-set spec");
        const Rational v = parse_rational(tok);
        if (v < 0 || v > 1) throw std::invalid_argument("test-set corner outside [0,1]");
        vals.push_back(v);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return vals;
}

}  // namespace

TestSet parse_testset(std::string_view spec, int expected_dim) {
    if (spec.empty()) throw std::invalid_argument("empty test-set spec");
    const std::size_t colon = spec.find(':');
    TestSet out;
    if (colon == std::string_view::npos) {
        auto corner = parse_corner(spec);
        out = TestSet::anchored(AnchoredBox(std::move(corner)));
    } else {
        auto inner = parse_corner(spec.substr(0, colon));
        auto outer = parse_corner(spec.substr(colon + 1));
        if (inner.size() != outer.size())
            throw std::invalid_argument("inner and outer corners have different dimensions");
        out = TestSet(AnchoredBox(std::move(outer)), AnchoredBox(std::move(inner)));
    }
    if (expected_dim > 0 && out.dim() != expected_dim) {
        std::ostringstream msg;
        msg << "test set has dimension " << out.dim() << ", expected " << expected_dim;
        throw std::invalid_argument(msg.str());
    }
    return out;
}

std::string format_testset(const TestSet& s) {
    std::ostringstream out;
    if (!s.is_anchored()) {
        for (int i = 0; i < s.dim(); ++i) {
            if (i) out << ',';
            out << format_rational(s.inner().upper()[i]);
        }
        out << ':';
    }
    for (int i = 0; i < s.dim(); ++i) {
        if (i) out << ',';
        out << format_rational(s.outer().upper()[i]);
    }
    return out.str();
}

}  // namespace negdep
