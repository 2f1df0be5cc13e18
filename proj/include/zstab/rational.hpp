// Copyright (c) 2026 The zstab Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace zstab {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using RatVec = std::vector<Rat>;
using RatMat = std::vector<std::vector<Rat>>;

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct precondition_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline double to_double(const Rat& q) { return q.template convert_to<double>(); }

inline Rat rat_of_double(double x) {
    // Doubles are dyadic rationals; this conversion is exact.
    if (!std::isfinite(x)) throw numeric_error("non-finite value cannot be converted to a rational");
    int exp = 0;
    double mant = std::frexp(x, &exp);
    // mant * 2^53 is an integer for any finite double
    long long scaled = static_cast<long long>(std::ldexp(mant, 53));
    Rat r(scaled);
    int e = exp - 53;
    if (e >= 0)
        r *= Rat(BigInt(1) << e);
    else
        r /= Rat(BigInt(1) << (-e));
    return r;
}

// Parses "p/q", "p", "p.frac" (sign allowed). Exact.
inline Rat parse_rational(const std::string& in) {
    std::string s;
    for (char c : in)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw parse_error("empty rational literal");
    bool neg = false;
    std::size_t pos = 0;
    if (s[0] == '+' || s[0] == '-') {
        neg = (s[0] == '-');
        pos = 1;
    }
    std::string digits, frac, den;
    enum { INT, FRAC, DEN } state = INT;
    for (; pos < s.size(); ++pos) {
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            (state == INT ? digits : state == FRAC ? frac : den).push_back(c);
        } else if (c == '.' && state == INT) {
            state = FRAC;
        } else if (c == '/' && state == INT) {
            state = DEN;
        } else {
            throw parse_error("bad rational literal: '" + in + "'");
        }
    }
    if (digits.empty() && frac.empty()) throw parse_error("bad rational literal: '" + in + "'");
    if (state == DEN && den.empty()) throw parse_error("bad rational literal: '" + in + "'");
    BigInt num = digits.empty() ? BigInt(0) : BigInt(digits);
    Rat r;
    if (state == DEN) {
        BigInt d(den);
        if (d == 0) throw parse_error("zero denominator in '" + in + "'");
        r = Rat(num, d);
    } else if (state == FRAC) {
        BigInt scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        r = Rat(num * scale + (frac.empty() ? BigInt(0) : BigInt(frac)), scale);
    } else {
        r = Rat(num);
    }
    if (neg) r = -r;
    return r;
}

inline std::string rat_to_string(const Rat& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

// Gaussian rational: exact complex number with rational parts.
struct CRat {
    Rat re;
    Rat im;

    CRat() = default;
    CRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
    explicit CRat(long long r) : re(r), im(0) {}

    bool is_zero() const { return re == 0 && im == 0; }
    std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }

    friend CRat operator+(const CRat& a, const CRat& b) { return {a.re + b.re, a.im + b.im}; }
    friend CRat operator-(const CRat& a, const CRat& b) { return {a.re - b.re, a.im - b.im}; }
    friend CRat operator-(const CRat& a) { return {-a.re, -a.im}; }
    friend CRat operator*(const CRat& a, const CRat& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend CRat operator*(const Rat& s, const CRat& a) { return {s * a.re, s * a.im}; }
    friend bool operator==(const CRat& a, const CRat& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const CRat& a, const CRat& b) { return !(a == b); }
};

// Parses "a+bi" / "a-bi" / "a" / "bi" / "i" / "-i" with rational or decimal a, b.
inline CRat parse_complex(const std::string& in) {
    std::string s;
    for (char c : in)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw parse_error("empty complex literal");
    if (s.back() != 'i' && s.back() != 'I') return CRat(parse_rational(s), Rat(0));
    s.pop_back();  // drop the i
    // find the split between real and imaginary part: last +/- not at index 0
    // and not part of a fraction/decimal (no exponents in this grammar).
    std::size_t split = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;) {
        if (s[i] == '+' || s[i] == '-') {
            split = i;
            break;
        }
    }
    std::string re_part, im_part;
    if (split == std::string::npos) {
        im_part = s;
    } else {
        re_part = s.substr(0, split);
        im_part = s.substr(split);
    }
    Rat im;
    if (im_part.empty() || im_part == "+")
        im = 1;
    else if (im_part == "-")
        im = -1;
    else
        im = parse_rational(im_part);
    Rat re = re_part.empty() ? Rat(0) : parse_rational(re_part);
    return CRat(re, im);
}

inline std::string complex_to_string(const CRat& z) {
    if (z.im == 0) return rat_to_string(z.re);
    std::string im = rat_to_string(z.im);
    if (z.re == 0) return im + "i";
    if (im[0] != '-') im = "+" + im;
    return rat_to_string(z.re) + im + "i";
}

inline BigInt big_gcd(BigInt a, BigInt b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        BigInt t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline BigInt big_lcm(const BigInt& a, const BigInt& b) {
    if (a == 0 || b == 0) return 0;
    BigInt g = big_gcd(a, b);
    BigInt l = (a / g) * b;
    return l < 0 ? -l : l;
}

// Smallest integer vector positively proportional to a nonzero rational vector.
inline std::vector<BigInt> primitive_integer_vector(const RatVec& v) {
    BigInt l = 1;
    for (const auto& q : v) l = big_lcm(l, denominator(q));
    std::vector<BigInt> w(v.size());
    BigInt g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        w[i] = numerator(v[i]) * (l / denominator(v[i]));
        g = big_gcd(g, w[i]);
    }
    if (g == 0) throw precondition_error("primitive_integer_vector: zero vector");
    for (auto& x : w) x /= g;
    return w;
}

inline std::optional<std::vector<long long>> to_int64_checked(const std::vector<BigInt>& v) {
    std::vector<long long> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] > std::numeric_limits<long long>::max() || v[i] < std::numeric_limits<long long>::min())
            return std::nullopt;
        out[i] = v[i].template convert_to<long long>();
    }
    return out;
}

}  // namespace zstab
