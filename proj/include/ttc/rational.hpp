#pragma once

/**
 * @file rational.hpp
 * @brief Exact rational arithmetic over the zero-totalized rationals.
 *
 * The carrier here is Q0: the field of rationals with the multiplicative
 * inverse made total by setting inv(0) = 0. All operations are total and
 * exact; there is no floating-point mode.
 *
 * Representation invariants:
 *   - denominator > 0 (sign lives in the numerator)
 *   - numerator and denominator are coprime
 *   - zero is uniquely 0/1
 *
 * Consequences worth knowing before using this header:
 *   - division is total: a / b == a * inv(b), so a / 0 == 0
 *   - 0/0 == 0 while a/a == 1 for a != 0
 *   - pow(a, n) accepts negative exponents via the total inverse,
 *     so pow(0, -3) == 0 and pow(0, 0) == 1
 *
 * Backed by GMP (mpq_class) for arbitrary precision; cumulative-interest
 * powers like (1+p)^n stay exact, which is what makes zero tests on
 * discounted totals genuine equality tests.
 */

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ttc {

class Rational {
    mpq_class v_;

public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}  // NOLINT: implicit on purpose, literals read naturally
    Rational(long n, long d) : v_() {
        if (d == 0) throw std::domain_error("Rational: zero denominator in construction");
        v_ = mpq_class(n, d);
        v_.canonicalize();
    }
    explicit Rational(const mpz_class& n) : v_(n) {}
    Rational(const mpz_class& n, const mpz_class& d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator in construction");
        v_ = mpq_class(n, d);
        v_.canonicalize();
    }
    explicit Rational(mpq_class q) : v_(std::move(q)) { v_.canonicalize(); }

    mpz_class numerator() const { return v_.get_num(); }
    mpz_class denominator() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sgn_int() const { return sgn(v_); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(mpq_class(a.v_ + b.v_));
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(mpq_class(a.v_ * b.v_));
    }
    // Subtraction is the derived form a + (-b).
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    /// "n" when integral, otherwise "n/d".
    std::string to_string() const {
        if (is_integer()) return v_.get_num().get_str();
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.to_string();
    }

    /// Parses `-?[0-9]+(/[1-9][0-9]*)?` or a decimal like `-0.25` (exactly -1/4).
    /// Throws std::invalid_argument on anything else.
    static Rational from_literal(std::string_view text);
};

/// Total multiplicative inverse: inv(0) == 0, otherwise the reciprocal.
inline Rational inv(const Rational& a) {
    if (a.is_zero()) return Rational();
    return Rational(a.denominator(), a.numerator());
}

/// Total division a * inv(b); in particular a / 0 == 0.
inline Rational operator/(const Rational& a, const Rational& b) { return a * inv(b); }

/// Signum as a carrier element: -1, 0 or 1.
inline Rational sign(const Rational& a) { return Rational(a.sgn_int()); }

/// max via the signed-meadow formula (sign(a-b)+1)/2 * (a-b) + b.
inline Rational max2(const Rational& a, const Rational& b) {
    const Rational d = a - b;
    return (sign(d) + Rational(1)) / Rational(2) * d + b;
}

inline Rational min2(const Rational& a, const Rational& b) { return -max2(-a, -b); }

/// a <= b defined as max2(a, b) == b.
inline bool leq(const Rational& a, const Rational& b) { return max2(a, b) == b; }

/// Total integer power: pow(a, 0) == 1 (even for a == 0); negative
/// exponents go through the total inverse, so pow(0, -n) == 0.
inline Rational pow(const Rational& a, std::int64_t n) {
    if (n < 0) return pow(inv(a), -n);
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), a.numerator().get_mpz_t(), static_cast<unsigned long>(n));
    mpz_pow_ui(den.get_mpz_t(), a.denominator().get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(num, den);
}

inline Rational Rational::from_literal(std::string_view text) {
    auto fail = [&]() -> Rational {
        throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
    };
    if (text.empty()) return fail();
    std::size_t pos = 0;
    bool negative = false;
    if (text[0] == '-') { negative = true; pos = 1; }
    auto digits = [&](std::size_t from) {
        std::size_t i = from;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
        return i;
    };
    std::size_t int_end = digits(pos);
    if (int_end == pos) return fail();
    std::string int_part(text.substr(pos, int_end - pos));
    if (int_end == text.size()) {
        mpz_class n(int_part, 10);
        return Rational(negative ? mpz_class(-n) : n);
    }
    if (text[int_end] == '/') {
        std::size_t den_begin = int_end + 1;
        std::size_t den_end = digits(den_begin);
        if (den_end != text.size() || den_end == den_begin) return fail();
        if (text[den_begin] == '0') return fail();  // denominator must start 1-9
        mpz_class n(int_part, 10);
        mpz_class d(std::string(text.substr(den_begin, den_end - den_begin)), 10);
        return Rational(negative ? mpz_class(-n) : n, d);
    }
    if (text[int_end] == '.') {
        std::size_t frac_begin = int_end + 1;
        std::size_t frac_end = digits(frac_begin);
        if (frac_end != text.size() || frac_end == frac_begin) return fail();
        std::string frac_part(text.substr(frac_begin, frac_end - frac_begin));
        mpz_class n(int_part + frac_part, 10);
        mpz_class d;
        mpz_ui_pow_ui(d.get_mpz_t(), 10, static_cast<unsigned long>(frac_part.size()));
        return Rational(negative ? mpz_class(-n) : n, d);
    }
    return fail();
}

}  // namespace ttc
