#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace ahres {

using BigInt = boost::multiprecision::cpp_int;
// Always stored reduced with positive denominator.
using BigRat = boost::multiprecision::cpp_rational;

struct ring_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Accepts "p", "p/q", optional leading sign, arbitrary size.
inline BigRat parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return BigRat(BigInt(s));
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) throw ring_error("rational with zero denominator: " + s);
        return BigRat(num, den);
    } catch (const ring_error&) {
        throw;
    } catch (const std::exception&) {
        throw ring_error("cannot parse rational: " + s);
    }
}

inline std::string rational_to_string(const BigRat& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

inline double rational_to_double(const BigRat& r) { return r.template convert_to<double>(); }

// q = (n + j)/2 style half-integers show up everywhere; keep a helper.
inline BigRat half(long p) { return BigRat(p, 2); }

} // namespace ahres
