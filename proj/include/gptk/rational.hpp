#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace gptk {

// Exact fraction, the universal scalar. Always stored in lowest terms
// with a positive denominator (cpp_rational maintains both).
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

using Vec = std::vector<Rational>;

inline std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

// Parses "p/q" or "p". Rejects zero denominators and junk.
inline Rational parse_rational(const std::string& s) {
    auto bad = [&] { throw std::invalid_argument("malformed rational: '" + s + "'"); };
    if (s.empty()) bad();
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(s));
        Integer num(s.substr(0, slash));
        Integer den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator in rational: '" + s + "'");
        return Rational(num, den);
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception&) {
        bad();
    }
    return Rational(0);  // unreachable
}

inline Rational dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Rational sum(const Vec& v) {
    Rational s = 0;
    for (const auto& x : v) s += x;
    return s;
}

}  // namespace gptk
