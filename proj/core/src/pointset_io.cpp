#include "negdep/geometry.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace negdep {

namespace {

Coord parse_coord(const std::string& token) {
    if (token.find('/') != std::string::npos) return Coord(parse_rational(token));
    double v = 0.0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
    if (res.ec != std::errc{} || res.ptr != token.data() + token.size())
        throw std::invalid_argument("bad coordinate token: " + token);
    return Coord(v);
}

}  // namespace

PointSet read_pointset(std::istream& in) {
    int dim = 0;
    long long n = 0;
    if (!(in >> dim >> n)) throw std::invalid_argument("bad point-set header");
    if (dim < 1 || n < 1) throw std::invalid_argument("bad point-set header values");
    PointSet ps(dim);
    std::string token;
    for (long long i = 0; i < n; ++i) {
        std::vector<Coord> point;
        point.reserve(dim);
        for (int j = 0; j < dim; ++j) {
            if (!(in >> token)) throw std::invalid_argument("truncated point-set file");
            point.push_back(parse_coord(token));
        }
        ps.push_point(std::move(point));
    }
    return ps;
}

void write_pointset(std::ostream& out, const PointSet& ps) {
    out << ps.dim() << ' ' << ps.size() << '\n';
    for (int n = 0; n < ps.size(); ++n) {
        for (int j = 0; j < ps.dim(); ++j) {
            if (j) out << ' ';
            const Coord& c = ps.at(n, j);
            if (c.exact())
                out << format_rational(c.rational());
            else
                out << format_double(c.real());
        }
        out << '\n';
    }
}

}  // namespace negdep
