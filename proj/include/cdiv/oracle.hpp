#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "cdiv/fpkit.hpp"

namespace cdiv {

// Arbitrary-precision rational, always canonical: lowest terms, positive
// denominator. Every finite binary64 converts exactly (doubles are dyadic).
class ExactRational {
  public:
    ExactRational() : q_(0) {}
    explicit ExactRational(long n) : q_(n) {}
    ExactRational(long num, unsigned long den) : q_(num, den) { q_.canonicalize(); }
    explicit ExactRational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    // Throws std::invalid_argument for NaN/Inf.
    static ExactRational from_double(double v);

    // Exact value of a plain decimal literal such as "-12.5e-3".
    // Throws std::invalid_argument on malformed input.
    static ExactRational from_decimal(std::string_view text);

    ExactRational operator+(const ExactRational& o) const { return wrap(q_ + o.q_); }
    ExactRational operator-(const ExactRational& o) const { return wrap(q_ - o.q_); }
    ExactRational operator*(const ExactRational& o) const { return wrap(q_ * o.q_); }
    ExactRational operator/(const ExactRational& o) const;
    ExactRational operator-() const { return wrap(-q_); }

    ExactRational abs() const { return wrap(::abs(q_)); }

    bool operator==(const ExactRational& o) const { return q_ == o.q_; }
    bool operator!=(const ExactRational& o) const { return q_ != o.q_; }
    bool operator<(const ExactRational& o) const { return q_ < o.q_; }
    bool operator<=(const ExactRational& o) const { return q_ <= o.q_; }
    bool operator>(const ExactRational& o) const { return q_ > o.q_; }
    bool operator>=(const ExactRational& o) const { return q_ >= o.q_; }

    bool is_zero() const { return sgn(q_) == 0; }
    int sign() const { return sgn(q_); }

    mpz_class numerator() const { return q_.get_num(); }
    mpz_class denominator() const { return q_.get_den(); }
    std::string to_string() const { return q_.get_str(); }

    // Nearest binary64, ties to even, with gradual underflow and overflow
    // to +-Inf past the usual boundary.
    double round_to_double() const;

  private:
    static ExactRational wrap(mpq_class q) {
        ExactRational r;
        r.q_ = std::move(q);
        return r;
    }
    mpq_class q_;
};

inline double round_rational_to_binary64(const ExactRational& q) {
    return q.round_to_double();
}

// x/y evaluated exactly over the rationals, each component then rounded to
// nearest (ties to even). Requires finite operands and y != 0:
// throws std::invalid_argument on non-finite input and std::domain_error
// on a zero divisor.
Complex64 oracle_divide(Complex64 x, Complex64 y);

struct ExactComplex {
    ExactRational re;
    ExactRational im;
};

// The unrounded quotient, for tests that need the exact value.
ExactComplex oracle_divide_exact(Complex64 x, Complex64 y);

}  // namespace cdiv
