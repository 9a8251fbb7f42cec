#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace cmt {

/// Exact arbitrary-precision rational. Always kept in canonical reduced
/// form with positive denominator; every probability and threshold in the
/// toolkit is one of these. No floating point anywhere.
class Rational {
public:
    using Int = boost::multiprecision::cpp_int;

    Rational() : v_(0) {}
    Rational(long long n) : v_(n) {}
    Rational(long long num, long long den) : v_(num, den) {}
    Rational(const Int& num, const Int& den) : v_(num, den) {}

    Int numerator() const { return boost::multiprecision::numerator(v_); }
    Int denominator() const { return boost::multiprecision::denominator(v_); }

    bool is_integer() const { return denominator() == 1; }

    /// Accepts "a/b", plain integers and decimal literals ("1.02" -> 51/50).
    /// Returns nullopt on anything else.
    static std::optional<Rational> parse(std::string_view text);

    /// "p/q" reduced, or just "p" when the denominator is 1.
    std::string str() const;

    Rational operator+(const Rational& o) const { return Rational(v_ + o.v_); }
    Rational operator-(const Rational& o) const { return Rational(v_ - o.v_); }
    Rational operator*(const Rational& o) const { return Rational(v_ * o.v_); }
    Rational operator/(const Rational& o) const { return Rational(v_ / o.v_); }
    Rational operator-() const { return Rational(-v_); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    Rational abs() const { return v_ < 0 ? Rational(-v_) : *this; }

private:
    using Backend = boost::multiprecision::cpp_rational;
    explicit Rational(Backend v) : v_(std::move(v)) {}
    Backend v_;
};

inline std::optional<Rational> Rational::parse(std::string_view text) {
    if (text.empty()) return std::nullopt;
    bool negative = false;
    size_t i = 0;
    if (text[0] == '-') { negative = true; i = 1; }
    else if (text[0] == '+') { i = 1; }
    if (i >= text.size()) return std::nullopt;

    auto digits = [&](size_t& pos) {
        std::string out;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') out.push_back(text[pos++]);
        return out;
    };

    std::string whole = digits(i);
    Int num, den = 1;
    if (i < text.size() && text[i] == '/') {
        ++i;
        std::string d = digits(i);
        if (whole.empty() || d.empty() || i != text.size()) return std::nullopt;
        num = Int(whole);
        den = Int(d);
        if (den == 0) return std::nullopt;
    } else if (i < text.size() && text[i] == '.') {
        ++i;
        std::string frac = digits(i);
        if ((whole.empty() && frac.empty()) || i != text.size()) return std::nullopt;
        num = Int(whole.empty() ? "0" : whole);
        for (char c : frac) {
            num = num * 10 + (c - '0');
            den *= 10;
        }
    } else {
        if (whole.empty() || i != text.size()) return std::nullopt;
        num = Int(whole);
    }
    if (negative) num = -num;
    return Rational(num, den);
}

inline std::string Rational::str() const {
    std::string s = numerator().str();
    if (!is_integer()) {
        s += '/';
        s += denominator().str();
    }
    return s;
}

} // namespace cmt
