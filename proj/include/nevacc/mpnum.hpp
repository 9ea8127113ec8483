// Arbitrary-precision reals (MPFR) and exact rationals (GMP) with an explicit
// decimal precision carried by every value. There is no ambient precision:
// each operation takes its precision from its operands or an argument.

#ifndef NEVACC_MPNUM_HPP
#define NEVACC_MPNUM_HPP

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace nevacc {

using BigInt = mpz_class;
using ExactRational = mpq_class;

/// Raised when an argument lies outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Significant decimal digits of a working representation.
class Precision {
public:
    static constexpr int kMinDigits = 10;

    explicit Precision(int decimal_digits) : digits_(decimal_digits)
    {
        if (decimal_digits < kMinDigits)
            throw std::invalid_argument("precision must be at least " + std::to_string(kMinDigits) +
                                        " decimal digits, got " + std::to_string(decimal_digits));
    }

    int digits() const { return digits_; }

    /// Binary mantissa size: enough bits for the decimal digits plus 16 guard bits.
    mpfr_prec_t bits() const
    {
        return static_cast<mpfr_prec_t>(std::ceil(digits_ * 3.321928094887362)) + 16;
    }

    friend bool operator==(Precision, Precision) = default;
    friend auto operator<=>(Precision, Precision) = default;

private:
    int digits_;
};

inline Precision max(Precision a, Precision b) { return a < b ? b : a; }

inline ExactRational make_rational(long num, long den)
{
    if (den == 0)
        throw DomainError("rational with zero denominator");
    ExactRational q(num, den);
    q.canonicalize();
    return q;
}

inline ExactRational make_rational(const BigInt& num, const BigInt& den)
{
    if (den == 0)
        throw DomainError("rational with zero denominator");
    ExactRational q(num, den);
    q.canonicalize();
    return q;
}

inline ExactRational abs(const ExactRational& q) { return ExactRational(::abs(q)); }

inline std::string to_string(const ExactRational& q)
{
    return q.get_den() == 1 ? q.get_num().get_str() : q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline BigInt factorial(unsigned long n)
{
    BigInt f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

inline BigInt binomial(unsigned long n, unsigned long k)
{
    BigInt b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

/// Parses "p/q", an integer, or a plain decimal ("-1.25") exactly.
inline ExactRational parse_rational(std::string_view text)
{
    std::string s(text);
    if (s.empty())
        throw std::invalid_argument("empty rational");
    if (auto slash = s.find('/'); slash != std::string::npos) {
        BigInt num, den;
        if (num.set_str(s.substr(0, slash), 10) != 0 || den.set_str(s.substr(slash + 1), 10) != 0)
            throw std::invalid_argument("malformed rational '" + s + "'");
        return make_rational(num, den);
    }
    bool negative = false;
    std::size_t pos = 0;
    if (s[0] == '-' || s[0] == '+') {
        negative = s[0] == '-';
        pos = 1;
    }
    std::string digits;
    long scale = 0;
    bool seen_point = false;
    for (; pos < s.size(); ++pos) {
        char c = s[pos];
        if (c == '.' && !seen_point) {
            seen_point = true;
        } else if (c >= '0' && c <= '9') {
            digits.push_back(c);
            if (seen_point)
                ++scale;
        } else {
            throw std::invalid_argument("malformed rational '" + s + "'");
        }
    }
    if (digits.empty())
        throw std::invalid_argument("malformed rational '" + s + "'");
    BigInt num(digits, 10);
    BigInt den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(scale));
    if (negative)
        num = -num;
    return make_rational(num, den);
}

/// An MPFR value tagged with the decimal precision it was produced under.
///
/// Binary operations produce a result at the larger of the operand
/// precisions; mixed operations with integers or rationals use the BigReal
/// operand's precision. All rounding is to nearest, ties to even.
class BigReal {
public:
    explicit BigReal(Precision p) : prec_(p)
    {
        mpfr_init2(v_, p.bits());
        mpfr_set_zero(v_, 1);
    }

    BigReal(long value, Precision p) : prec_(p)
    {
        mpfr_init2(v_, p.bits());
        mpfr_set_si(v_, value, MPFR_RNDN);
    }

    BigReal(const ExactRational& q, Precision p) : prec_(p)
    {
        mpfr_init2(v_, p.bits());
        mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
    }

    BigReal(const BigInt& z, Precision p) : prec_(p)
    {
        mpfr_init2(v_, p.bits());
        mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN);
    }

    /// Rounds an existing value to a different precision.
    BigReal(const BigReal& other, Precision p) : prec_(p)
    {
        mpfr_init2(v_, p.bits());
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }

    BigReal(const BigReal& other) : prec_(other.prec_)
    {
        mpfr_init2(v_, mpfr_get_prec(other.v_));
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }

    BigReal(BigReal&& other) noexcept : prec_(other.prec_)
    {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, other.v_);
    }

    BigReal& operator=(const BigReal& other)
    {
        if (this != &other) {
            prec_ = other.prec_;
            mpfr_set_prec(v_, mpfr_get_prec(other.v_));
            mpfr_set(v_, other.v_, MPFR_RNDN);
        }
        return *this;
    }

    BigReal& operator=(BigReal&& other) noexcept
    {
        prec_ = other.prec_;
        mpfr_swap(v_, other.v_);
        return *this;
    }

    ~BigReal() { mpfr_clear(v_); }

    /// Parses a decimal literal ("-1.25e-3", "3/7" is not accepted here).
    static BigReal parse(std::string_view text, Precision p)
    {
        BigReal r(p);
        std::string s(text);
        char* end = nullptr;
        if (!s.empty())
            mpfr_strtofr(r.v_, s.c_str(), &end, 10, MPFR_RNDN);
        if (s.empty() || end == s.c_str() || *end != '\0' || !r.is_finite())
            throw std::invalid_argument("malformed decimal '" + s + "'");
        return r;
    }

    Precision precision() const { return prec_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_ptr raw() { return v_; }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    /// Binary exponent e with |x| in [2^(e-1), 2^e); meaningless for zero.
    long exponent2() const { return mpfr_get_exp(v_); }

    BigReal operator-() const
    {
        BigReal r(prec_);
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }

    BigReal& operator+=(const BigReal& o) { return assign_binary(o, mpfr_add); }
    BigReal& operator-=(const BigReal& o) { return assign_binary(o, mpfr_sub); }
    BigReal& operator*=(const BigReal& o) { return assign_binary(o, mpfr_mul); }
    BigReal& operator/=(const BigReal& o) { return assign_binary(o, mpfr_div); }

    BigReal& operator+=(long o) { mpfr_add_si(v_, v_, o, MPFR_RNDN); return *this; }
    BigReal& operator-=(long o) { mpfr_sub_si(v_, v_, o, MPFR_RNDN); return *this; }
    BigReal& operator*=(long o) { mpfr_mul_si(v_, v_, o, MPFR_RNDN); return *this; }
    BigReal& operator/=(long o) { mpfr_div_si(v_, v_, o, MPFR_RNDN); return *this; }

    BigReal& operator+=(const ExactRational& q) { mpfr_add_q(v_, v_, q.get_mpq_t(), MPFR_RNDN); return *this; }
    BigReal& operator-=(const ExactRational& q) { mpfr_sub_q(v_, v_, q.get_mpq_t(), MPFR_RNDN); return *this; }
    BigReal& operator*=(const ExactRational& q) { mpfr_mul_q(v_, v_, q.get_mpq_t(), MPFR_RNDN); return *this; }
    BigReal& operator/=(const ExactRational& q) { mpfr_div_q(v_, v_, q.get_mpq_t(), MPFR_RNDN); return *this; }

    friend BigReal operator+(BigReal a, const BigReal& b) { return std::move(a += b); }
    friend BigReal operator-(BigReal a, const BigReal& b) { return std::move(a -= b); }
    friend BigReal operator*(BigReal a, const BigReal& b) { return std::move(a *= b); }
    friend BigReal operator/(BigReal a, const BigReal& b) { return std::move(a /= b); }

    friend BigReal operator+(BigReal a, long b) { return std::move(a += b); }
    friend BigReal operator-(BigReal a, long b) { return std::move(a -= b); }
    friend BigReal operator*(BigReal a, long b) { return std::move(a *= b); }
    friend BigReal operator/(BigReal a, long b) { return std::move(a /= b); }
    friend BigReal operator+(long a, BigReal b) { return std::move(b += a); }
    friend BigReal operator*(long a, BigReal b) { return std::move(b *= a); }
    friend BigReal operator-(long a, const BigReal& b)
    {
        BigReal r(b.prec_);
        mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal operator/(long a, const BigReal& b)
    {
        BigReal r(b.prec_);
        mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
        return r;
    }

    friend BigReal operator+(BigReal a, const ExactRational& b) { return std::move(a += b); }
    friend BigReal operator-(BigReal a, const ExactRational& b) { return std::move(a -= b); }
    friend BigReal operator*(BigReal a, const ExactRational& b) { return std::move(a *= b); }
    friend BigReal operator/(BigReal a, const ExactRational& b) { return std::move(a /= b); }

    friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend std::partial_ordering operator<=>(const BigReal& a, const BigReal& b)
    {
        if (mpfr_unordered_p(a.v_, b.v_))
            return std::partial_ordering::unordered;
        int c = mpfr_cmp(a.v_, b.v_);
        return c < 0 ? std::partial_ordering::less
                     : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
    }
    friend bool operator==(const BigReal& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
    friend std::partial_ordering operator<=>(const BigReal& a, long b)
    {
        int c = mpfr_cmp_si(a.v_, b);
        return c < 0 ? std::partial_ordering::less
                     : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
    }

private:
    template <class Op>
    BigReal& assign_binary(const BigReal& o, Op op)
    {
        if (o.prec_ > prec_) {
            prec_ = o.prec_;
            mpfr_prec_round(v_, o.prec_.bits(), MPFR_RNDN);
        }
        op(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }

    Precision prec_;
    mpfr_t v_;
};

namespace detail {

template <class Fn>
BigReal unary(const BigReal& x, Fn fn)
{
    BigReal r(x.precision());
    fn(r.raw(), x.get(), MPFR_RNDN);
    return r;
}

} // namespace detail

inline BigReal abs(const BigReal& x) { return detail::unary(x, mpfr_abs); }
inline BigReal sqrt(const BigReal& x) { return detail::unary(x, mpfr_sqrt); }
inline BigReal exp(const BigReal& x) { return detail::unary(x, mpfr_exp); }
inline BigReal atan(const BigReal& x) { return detail::unary(x, mpfr_atan); }

inline BigReal log(const BigReal& x)
{
    if (x.sign() <= 0)
        throw DomainError("logarithm of a nonpositive value");
    return detail::unary(x, mpfr_log);
}

inline BigReal log10(const BigReal& x)
{
    if (x.sign() <= 0)
        throw DomainError("logarithm of a nonpositive value");
    return detail::unary(x, mpfr_log10);
}

inline BigReal pow(const BigReal& x, long k)
{
    BigReal r(x.precision());
    mpfr_pow_si(r.raw(), x.get(), k, MPFR_RNDN);
    return r;
}

inline BigReal pow(const BigReal& x, const BigReal& y)
{
    BigReal r(max(x.precision(), y.precision()));
    mpfr_pow(r.raw(), x.get(), y.get(), MPFR_RNDN);
    return r;
}

/// |a - b| <= 2^-(bits - slack_bits) * max(|a|, |b|): equal to working precision.
inline bool equal_to_working_precision(const BigReal& a, const BigReal& b, int slack_bits = 8)
{
    if (a == b)
        return true;
    BigReal diff = abs(a - b);
    BigReal scale = abs(a) > abs(b) ? abs(a) : abs(b);
    if (scale.is_zero())
        return diff.is_zero();
    long bits = static_cast<long>(max(a.precision(), b.precision()).bits());
    mpfr_mul_2si(scale.raw(), scale.get(), -(bits - slack_bits), MPFR_RNDN);
    return diff <= scale;
}

inline BigReal const_pi(Precision p)
{
    BigReal r(p);
    mpfr_const_pi(r.raw(), MPFR_RNDN);
    return r;
}

inline BigReal const_ln2(Precision p)
{
    BigReal r(p);
    mpfr_const_log2(r.raw(), MPFR_RNDN);
    return r;
}

/// Riemann zeta at an integer argument s >= 2.
inline BigReal const_zeta(long s, Precision p)
{
    if (s < 2)
        throw DomainError("zeta(s) requires s >= 2, got " + std::to_string(s));
    BigReal r(p);
    mpfr_zeta_ui(r.raw(), static_cast<unsigned long>(s), MPFR_RNDN);
    return r;
}

namespace detail {

inline std::string strip_negative_zero(std::string s)
{
    if (!s.empty() && s[0] == '-' &&
        s.find_first_not_of("0.", 1) == std::string::npos)
        s.erase(0, 1);
    return s;
}

inline std::string normalize_exponent(const std::string& s)
{
    auto e = s.find('e');
    if (e == std::string::npos)
        return s;
    long ex = std::strtol(s.c_str() + e + 1, nullptr, 10);
    return s.substr(0, e) + "e" + (ex < 0 ? "-" : "+") + std::to_string(std::labs(ex));
}

inline bool in_fixed_range(const BigReal& x)
{
    if (x.is_zero())
        return true;
    BigReal a = abs(x);
    Precision p = x.precision();
    return a >= BigReal(make_rational(1, 1000000), p) && a <= BigReal(1000000000L, p);
}

inline std::string printf_mpfr(const char* fmt, int digits, const BigReal& x)
{
    char* buf = nullptr;
    if (mpfr_asprintf(&buf, fmt, digits, x.get()) < 0)
        throw std::runtime_error("mpfr_asprintf failed");
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

} // namespace detail

/// Fixed-point rendering with exactly `decimals` digits after the point,
/// round-half-even, no exponent.
inline std::string format_fixed(const BigReal& x, int decimals)
{
    if (!x.is_finite())
        throw DomainError("cannot render a non-finite value");
    return detail::strip_negative_zero(detail::printf_mpfr("%.*RNf", decimals, x));
}

/// Canonical rendering with `decimals` digits after the point: fixed form for
/// |x| in [1e-6, 1e9] (and zero), otherwise d.ddd e<sign><exp>.
inline std::string to_string(const BigReal& x, int decimals)
{
    if (!x.is_finite())
        throw DomainError("cannot render a non-finite value");
    if (detail::in_fixed_range(x))
        return format_fixed(x, decimals);
    return detail::normalize_exponent(detail::printf_mpfr("%.*RNe", decimals, x));
}

/// Canonical rendering with `significant` significant digits.
inline std::string to_string_significant(const BigReal& x, int significant)
{
    if (significant < 1)
        throw std::invalid_argument("need at least one significant digit");
    if (!x.is_finite())
        throw DomainError("cannot render a non-finite value");
    if (x.is_zero())
        return format_fixed(x, significant - 1);
    if (!detail::in_fixed_range(x))
        return detail::normalize_exponent(detail::printf_mpfr("%.*RNe", significant - 1, x));
    mpfr_exp_t e10 = 0;
    char* raw = mpfr_get_str(nullptr, &e10, 10, static_cast<size_t>(significant), x.get(), MPFR_RNDN);
    std::string digits(raw);
    mpfr_free_str(raw);
    std::string sign;
    if (!digits.empty() && digits[0] == '-') {
        sign = "-";
        digits.erase(0, 1);
    }
    // value = 0.d1d2... * 10^e10
    std::string out;
    if (e10 <= 0) {
        out = "0." + std::string(static_cast<std::size_t>(-e10), '0') + digits;
    } else if (static_cast<std::size_t>(e10) >= digits.size()) {
        out = digits + std::string(static_cast<std::size_t>(e10) - digits.size(), '0') + ".";
        out += "0";
    } else {
        out = digits.substr(0, static_cast<std::size_t>(e10)) + "." + digits.substr(static_cast<std::size_t>(e10));
    }
    return sign + out;
}

/// log10|x| as a double; x must be nonzero.
inline double log10_abs(const BigReal& x)
{
    if (x.is_zero())
        throw DomainError("log10 of zero");
    long e;
    double m = mpfr_get_d_2exp(&e, x.get(), MPFR_RNDN);
    return std::log10(std::fabs(m)) + static_cast<double>(e) * 0.30102999566398120;
}

/// Exact binary value of x as a rational.
inline ExactRational to_rational(const BigReal& x)
{
    if (!x.is_finite())
        throw DomainError("non-finite value has no rational form");
    BigInt m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x.get());
    ExactRational q(m);
    if (e >= 0)
        mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
    else
        mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
    return q;
}

} // namespace nevacc

#endif // NEVACC_MPNUM_HPP
