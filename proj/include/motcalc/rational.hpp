#ifndef MOTCALC_RATIONAL_HPP
#define MOTCALC_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace motcalc {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return numerator(r); }
inline Int rat_den(const Rat& r) { return denominator(r); }

inline bool is_integer(const Rat& r) { return rat_den(r) == 1; }

inline std::string to_string(const Int& n) { return n.str(); }

// "a" or "a/b", lowest terms, '-' on the numerator.
inline std::string to_string(const Rat& r) {
    if (is_integer(r)) return rat_num(r).str();
    return rat_num(r).str() + "/" + rat_den(r).str();
}

inline Int parse_int(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty integer literal");
    return Int(s);
}

inline Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(parse_int(s));
    Int num = parse_int(s.substr(0, slash));
    Int den = parse_int(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + s);
    return Rat(num, den);
}

inline Int abs_int(const Int& n) { return n < 0 ? Int(-n) : n; }

inline Int gcd_int(Int a, Int b) {
    a = abs_int(a);
    b = abs_int(b);
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace motcalc

#endif
