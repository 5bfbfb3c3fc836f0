#include "cdiv/oracle.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cdiv {

ExactRational ExactRational::from_double(double v) {
    if (!std::isfinite(v))
        throw std::invalid_argument("ExactRational: value is not finite");
    return wrap(mpq_class(v));  // mpq_set_d is exact for finite doubles
}

ExactRational ExactRational::from_decimal(std::string_view text) {
    const auto fail = [&] {
        throw std::invalid_argument("invalid decimal literal: '" +
                                    std::string(text) + "'");
    };
    size_t i = 0;
    const size_t n = text.size();
    bool negative = false;
    if (i < n && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';

    mpz_class digits = 0;
    long frac_digits = 0;
    bool any = false, in_frac = false;
    for (; i < n; ++i) {
        const char ch = text[i];
        if (ch == '.') {
            if (in_frac) fail();
            in_frac = true;
        } else if (std::isdigit(static_cast<unsigned char>(ch))) {
            digits = digits * 10 + (ch - '0');
            if (in_frac) ++frac_digits;
            any = true;
        } else {
            break;
        }
    }
    if (!any) fail();

    long exp10 = 0;
    if (i < n && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        bool exp_neg = false;
        if (i < n && (text[i] == '+' || text[i] == '-')) exp_neg = text[i++] == '-';
        if (i >= n) fail();
        long e = 0;
        for (; i < n && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
            e = e * 10 + (text[i] - '0');
            if (e > 100000) fail();
        }
        exp10 = exp_neg ? -e : e;
    }
    if (i != n) fail();

    mpq_class q(negative ? mpz_class(-digits) : digits);
    const long net = exp10 - frac_digits;
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(net)));
    if (net >= 0)
        q *= pow10;
    else
        q /= pow10;
    return ExactRational(std::move(q));
}

ExactRational ExactRational::operator/(const ExactRational& o) const {
    if (o.is_zero())
        throw std::domain_error("ExactRational: division by zero");
    return wrap(q_ / o.q_);
}

/*
 * Round-to-nearest-even of p/q, done in integer arithmetic.
 *
 * With e = floor(log2(p/q)) the quantum exponent is e-52 in the normal
 * range and pinned at -1074 below it (gradual underflow). The significand
 * is the nearest integer to p / (q * 2^qe) with ties to even; a carry out
 * of 53 bits bumps the exponent, and anything that lands at e >= 1024
 * after the carry is the overflow case, which rounds to infinity exactly
 * when the unbounded-exponent result exceeds the largest normal.
 */
double ExactRational::round_to_double() const {
    const int s = sgn(q_);
    if (s == 0) return 0.0;

    const mpz_class p = ::abs(mpz_class(q_.get_num()));
    const mpz_class& q = q_.get_den();

    // e such that p/q in [2^e, 2^(e+1))
    long e = static_cast<long>(mpz_sizeinbase(p.get_mpz_t(), 2)) -
             static_cast<long>(mpz_sizeinbase(q.get_mpz_t(), 2));
    {
        mpz_class lhs = p, rhs = q;
        if (e >= 0)
            rhs <<= e;
        else
            lhs <<= -e;
        if (lhs < rhs) --e;
    }

    const long qe = e >= -1022 ? e - 52 : -1074;

    mpz_class num = p, den = q;
    if (qe >= 0)
        den <<= qe;
    else
        num <<= -qe;

    mpz_class m, r;
    mpz_fdiv_qr(m.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    r <<= 1;
    const int cmp = ::cmp(r, den);
    if (cmp > 0 || (cmp == 0 && mpz_odd_p(m.get_mpz_t()))) ++m;

    if (e >= -1022 && mpz_sizeinbase(m.get_mpz_t(), 2) > 53) {
        m >>= 1;  // m was exactly 2^53
        ++e;
    }
    if (e >= 1024)
        return s > 0 ? std::numeric_limits<double>::infinity()
                     : -std::numeric_limits<double>::infinity();

    const double mag = std::ldexp(m.get_d(), static_cast<int>(qe));
    return s > 0 ? mag : -mag;
}

namespace {

ExactComplex exact_quotient(Complex64 x, Complex64 y) {
    const ExactRational a = ExactRational::from_double(x.re);
    const ExactRational b = ExactRational::from_double(x.im);
    const ExactRational c = ExactRational::from_double(y.re);
    const ExactRational d = ExactRational::from_double(y.im);

    const ExactRational den = c * c + d * d;
    return {(a * c + b * d) / den, (b * c - a * d) / den};
}

}  // namespace

Complex64 oracle_divide(Complex64 x, Complex64 y) {
    if (!std::isfinite(x.re) || !std::isfinite(x.im) || !std::isfinite(y.re) ||
        !std::isfinite(y.im))
        throw std::invalid_argument("oracle_divide: non-finite operand");
    if (y.re == 0.0 && y.im == 0.0)
        throw std::domain_error("oracle_divide: division by zero");

    const ExactComplex z = exact_quotient(x, y);
    return {z.re.round_to_double(), z.im.round_to_double()};
}

ExactComplex oracle_divide_exact(Complex64 x, Complex64 y) {
    if (!std::isfinite(x.re) || !std::isfinite(x.im) || !std::isfinite(y.re) ||
        !std::isfinite(y.im))
        throw std::invalid_argument("oracle_divide: non-finite operand");
    if (y.re == 0.0 && y.im == 0.0)
        throw std::domain_error("oracle_divide: division by zero");
    return exact_quotient(x, y);
}

}  // namespace cdiv
