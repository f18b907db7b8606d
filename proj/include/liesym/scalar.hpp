#pragma once

// Exact scalar arithmetic over the Gaussian rationals Q(i).
//
// A value is a pair of arbitrary-precision rationals (real and imaginary
// part), each kept in reduced form with positive denominator.  No floating
// point is used anywhere; equality is decidable and exact.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace liesym {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Base class for all errors thrown by the library.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed textual input (scalar grammar, file formats).
class parse_error : public error {
public:
    explicit parse_error(const std::string& what) : error(what) {}
};

class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(int v) : re_(v) {}                      // NOLINT(google-explicit-constructor)
    GaussianRational(const Rational& re) : re_(re) {}        // NOLINT(google-explicit-constructor)
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussianRational i() { return GaussianRational(Rational(0), Rational(1)); }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    bool is_integer() const {
        return boost::multiprecision::denominator(re_) == 1 && im_ == 0;
    }
    bool is_even_integer() const {
        return is_integer() && boost::multiprecision::numerator(re_) % 2 == 0;
    }
    /// Integer value; requires is_integer().
    Int to_integer() const {
        if (!is_integer()) throw error("scalar is not an integer: " + str());
        return boost::multiprecision::numerator(re_);
    }

    GaussianRational conj() const { return {re_, -im_}; }

    /// Squared modulus re^2 + im^2; a nonnegative rational.
    Rational norm() const { return re_ * re_ + im_ * im_; }

    GaussianRational operator-() const { return {-re_, -im_}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rational r = re_ * o.re_ - im_ * o.im_;
        Rational i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) {
        if (o.is_zero()) throw error("division by zero");
        Rational n = o.norm();
        GaussianRational c = o.conj();
        *this *= c;
        re_ /= n;
        im_ /= n;
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

    GaussianRational inverse() const {
        GaussianRational one(1);
        return one / *this;
    }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    /// Lexicographic order on (re, im).  Used only to fix deterministic
    /// enumeration orders; Q(i) has no field order.
    friend bool operator<(const GaussianRational& a, const GaussianRational& b) {
        if (a.re_ != b.re_) return a.re_ < b.re_;
        return a.im_ < b.im_;
    }

    /// Canonical text form; round-trips through parse().
    std::string str() const;

    /// Parse the scalar grammar:
    ///   rational := '-'? digits ('/' digits)?
    ///   gaussian := rational | rational ('+'|'-') rational 'i' | rational 'i'
    /// Examples: "3/4", "-1/2+2/3i", "1i".
    static GaussianRational parse(std::string_view text);

private:
    Rational re_{0};
    Rational im_{0};
};

namespace detail {

inline std::string rational_str(const Rational& q) {
    std::string s = boost::multiprecision::numerator(q).str();
    if (boost::multiprecision::denominator(q) != 1)
        s += "/" + boost::multiprecision::denominator(q).str();
    return s;
}

// Parses one 'rational' starting at pos; advances pos past it.
inline Rational parse_rational(std::string_view s, std::size_t& pos) {
    std::size_t start = pos;
    bool neg = false;
    if (pos < s.size() && s[pos] == '-') {
        neg = true;
        ++pos;
    }
    std::size_t dig = pos;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
    if (pos == dig)
        throw parse_error("expected digits at position " + std::to_string(start) + " in scalar \"" +
                          std::string(s) + "\"");
    Int num(std::string(s.substr(dig, pos - dig)));
    Int den = 1;
    if (pos < s.size() && s[pos] == '/') {
        ++pos;
        std::size_t d2 = pos;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
        if (pos == d2)
            throw parse_error("expected denominator digits in scalar \"" + std::string(s) + "\"");
        den = Int(std::string(s.substr(d2, pos - d2)));
        if (den == 0) throw parse_error("zero denominator in scalar \"" + std::string(s) + "\"");
    }
    Rational q(num, den);
    return neg ? Rational(-q) : q;
}

}  // namespace detail

inline std::string GaussianRational::str() const {
    using detail::rational_str;
    if (im_ == 0) return rational_str(re_);
    std::string imag = rational_str(im_ < 0 ? Rational(-im_) : im_) + "i";
    if (re_ == 0) return (im_ < 0 ? "-" : "") + imag;
    return rational_str(re_) + (im_ < 0 ? "-" : "+") + imag;
}

inline GaussianRational GaussianRational::parse(std::string_view text) {
    std::size_t b = 0, e = text.size();
    while (b < e && (text[b] == ' ' || text[b] == '\t')) ++b;
    while (e > b && (text[e - 1] == ' ' || text[e - 1] == '\t')) --e;
    std::string_view s = text.substr(b, e - b);
    if (s.empty()) throw parse_error("empty scalar");

    std::size_t pos = 0;
    Rational first = detail::parse_rational(s, pos);
    if (pos == s.size()) return GaussianRational(first);
    if (s[pos] == 'i') {
        if (pos + 1 != s.size())
            throw parse_error("trailing characters after 'i' in scalar \"" + std::string(s) + "\"");
        return GaussianRational(Rational(0), first);
    }
    char sep = s[pos];
    if (sep != '+' && sep != '-')
        throw parse_error("expected '+', '-' or 'i' at position " + std::to_string(pos) +
                          " in scalar \"" + std::string(s) + "\"");
    ++pos;
    Rational second = detail::parse_rational(s, pos);
    if (pos >= s.size() || s[pos] != 'i' || pos + 1 != s.size())
        throw parse_error("expected terminating 'i' in scalar \"" + std::string(s) + "\"");
    if (sep == '-') second = -second;
    return GaussianRational(first, second);
}

}  // namespace liesym
