#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "jtwist/common.hpp"

namespace jtwist {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational rat(long long p, long long q = 1) {
    if (q == 0) throw ConstraintViolation("rational with zero denominator");
    return Rational(Integer(p), Integer(q));
}

// Accepts "p", "-p", "p/q" with optional sign on p; q > 0 after normalization.
inline Rational parse_rational(const std::string& s) {
    auto bad = [&] { return ParseError("cannot parse rational: '" + s + "'"); };
    if (s.empty()) throw bad();
    auto check_int = [&](const std::string& t) {
        if (t.empty()) throw bad();
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) throw bad();
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') throw bad();
    };
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            check_int(s);
            return Rational(Integer(s));
        }
        const std::string num = s.substr(0, slash);
        const std::string den = s.substr(slash + 1);
        check_int(num);
        check_int(den);
        Integer q(den);
        if (q == 0) throw bad();
        return Rational(Integer(num), q);
    } catch (const std::exception&) {
        throw bad();
    }
}

// "p" when the denominator is 1, otherwise "p/q".
inline std::string rational_str(const Rational& r) {
    const Integer num = boost::multiprecision::numerator(r);
    const Integer den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

inline Integer factorial(int n) {
    Integer f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

// Generalized binomial coefficient binom(r, k) = r(r-1)...(r-k+1)/k!.
inline Rational binomial(const Rational& r, int k) {
    if (k < 0) return Rational(0);
    Rational num = 1;
    for (int i = 0; i < k; ++i) num *= (r - i);
    return num / Rational(factorial(k));
}

} // namespace jtwist
