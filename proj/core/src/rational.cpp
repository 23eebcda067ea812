#include "negdep/rational.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace negdep {

Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite coordinate");
    // cpp_rational converts floating point values exactly.
    return Rational(x);
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

BigInt floor_scaled(const Rational& x, const BigInt& scale) {
    if (x < 0) throw std::invalid_argument("floor_scaled expects x >= 0");
    const Rational scaled = x * scale;
    return numerator(scaled) / denominator(scaled);
}

BigInt int_pow(std::uint64_t base, unsigned exp) {
    BigInt result = 1;
    for (unsigned i = 0; i < exp; ++i) result *= base;
    return result;
}

namespace {

BigInt parse_integer(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty number");
    std::size_t i = 0;
    bool neg = false;
    if (s[0] == '+' || s[0] == '-') {
        neg = s[0] == '-';
        i = 1;
    }
    if (i == s.size()) throw std::invalid_argument("bare sign");
    BigInt v = 0;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("bad digit in number");
        v = v * 10 + (s[i] - '0');
    }
    return neg ? BigInt(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view token) {
    if (token.empty()) throw std::invalid_argument("empty rational");
    if (auto slash = token.find('/'); slash != std::string_view::npos) {
        const BigInt num = parse_integer(token.substr(0, slash));
        const BigInt den = parse_integer(token.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    }

    std::string_view mantissa = token;
    long exponent = 0;
    if (auto epos = token.find_first_of("eE"); epos != std::string_view::npos) {
        mantissa = token.substr(0, epos);
        const std::string_view etok = token.substr(epos + 1);
        const std::string ebuf(etok);
        char* end = nullptr;
        exponent = std::strtol(ebuf.c_str(), &end, 10);
        if (end == ebuf.c_str() || *end != '\0')
            throw std::invalid_argument("bad exponent: " + std::string(token));
    }

    std::string digits;
    long frac_digits = 0;
    if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
        digits = std::string(mantissa.substr(0, dot)) + std::string(mantissa.substr(dot + 1));
        frac_digits = static_cast<long>(mantissa.size() - dot - 1);
        if (digits.empty() || digits == "+" || digits == "-")
            throw std::invalid_argument("bad decimal: " + std::string(token));
    } else {
        digits = std::string(mantissa);
    }

    const BigInt mant = parse_integer(digits);
    const long shift = exponent - frac_digits;
    if (shift >= 0) return Rational(mant * int_pow(10, static_cast<unsigned>(shift)));
    return Rational(mant, int_pow(10, static_cast<unsigned>(-shift)));
}

std::string format_rational(const Rational& r) {
    std::ostringstream out;
    out << numerator(r) << '/' << denominator(r);
    return out.str();
}

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

}  // namespace negdep
