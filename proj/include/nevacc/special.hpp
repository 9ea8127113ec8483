// Lerch transcendent Phi(z, s, a) = sum_{n>=0} z^n / (n+a)^s for real z and
// positive integer s, a, plus polygamma functions psi^(m)(x) for m >= 1.

#ifndef NEVACC_SPECIAL_HPP
#define NEVACC_SPECIAL_HPP

#include "nevacc/mpnum.hpp"

#include <cmath>
#include <mutex>
#include <string>
#include <vector>

namespace nevacc {

struct LerchArgs {
    BigReal z;
    long s;
    long a;
};

namespace detail {

inline Precision guarded(Precision p, int extra) { return Precision(p.digits() + extra); }

/// 10^-digits at precision p.
inline BigReal decimal_epsilon(long digits, Precision p)
{
    BigReal ten(10L, p);
    return pow(ten, -digits);
}

inline void check_lerch_integers(long s, long a)
{
    if (s < 1)
        throw DomainError("Lerch Phi requires integer s >= 1, got " + std::to_string(s));
    if (a < 1)
        throw DomainError("Lerch Phi requires integer a >= 1, got " + std::to_string(a));
}

/// Exact even-index Bernoulli numbers B_0, B_1 = -1/2, B_2, ... up to index m.
inline ExactRational bernoulli(unsigned m)
{
    static std::mutex mutex;
    static std::vector<ExactRational> table{ExactRational(1)};
    std::lock_guard lock(mutex);
    while (table.size() <= m) {
        const unsigned k = static_cast<unsigned>(table.size());
        ExactRational sum = 0;
        for (unsigned r = 0; r < k; ++r)
            sum += ExactRational(binomial(k + 1, r)) * table[r];
        ExactRational b = -sum / ExactRational(k + 1);
        b.canonicalize();
        table.push_back(b);
    }
    return table[m];
}

} // namespace detail

/// Polygamma psi^(m)(x), m >= 1, x > 0: upward recurrence shift followed by
/// the asymptotic series
///   psi^(m)(y) ~ (-1)^(m+1) [ (m-1)!/y^m + m!/(2 y^(m+1))
///                             + sum_k B_2k (2k+m-1)! / ((2k)! y^(2k+m)) ].
inline BigReal polygamma(long m, const BigReal& x, Precision p)
{
    if (m < 1)
        throw DomainError("polygamma order must be >= 1, got " + std::to_string(m));
    if (x.sign() <= 0)
        throw DomainError("polygamma requires x > 0");
    const Precision pw = detail::guarded(p, 12);
    const BigReal xw(x, pw);

    // Asymptotic error behaves like (2 pi y)^-2k; y >= 0.5 p + 2m + 10 reaches 10^-p.
    const double threshold = 0.5 * pw.digits() + 2.0 * static_cast<double>(m) + 10.0;
    const double xd = xw.to_double();
    const long shift = xd >= threshold ? 0 : static_cast<long>(std::ceil(threshold - xd));

    const BigInt m_fact = factorial(static_cast<unsigned long>(m));
    BigReal head(pw);
    for (long k = 0; k < shift; ++k)
        head += pow(xw + k, -(m + 1));
    head *= BigReal(m_fact, pw);

    const BigReal y = xw + shift;
    const BigReal inv_y = 1L / y;
    const BigReal inv_y2 = inv_y * inv_y;
    BigReal series = BigReal(factorial(static_cast<unsigned long>(m - 1)), pw) * pow(inv_y, m);
    series += BigReal(m_fact, pw) * pow(inv_y, m + 1) / 2L;

    const BigReal eps = detail::decimal_epsilon(pw.digits() + 2, pw);
    BigReal y_pow = pow(inv_y, m) ; // tracks y^-(2k+m)
    BigReal previous_size(pw);
    for (unsigned k = 1;; ++k) {
        y_pow *= inv_y2;
        ExactRational coeff = detail::bernoulli(2 * k) *
                              ExactRational(factorial(2 * k + static_cast<unsigned long>(m) - 1)) /
                              ExactRational(factorial(2 * k));
        BigReal term = y_pow * coeff;
        BigReal size = abs(term);
        series += term;
        if (size <= eps * abs(series))
            break;
        if (k > 2 && size > previous_size)
            throw std::logic_error("polygamma asymptotic series diverged before reaching precision");
        previous_size = size;
    }
    if (m % 2 == 0)
        series = -series; // (-1)^(m+1)

    // psi^(m)(x) = psi^(m)(x+N) - (-1)^m m! sum_{k<N} (x+k)^-(m+1)
    BigReal result = m % 2 == 0 ? series - head : series + head;
    return BigReal(result, p);
}

/// Exact inner sum  sum_{k=0}^n (-1)^k C(n,k) / (a+k)^s  by direct summation.
inline ExactRational lerch_inner_sum(long n, long s, long a)
{
    if (n < 0)
        throw DomainError("inner sum requires n >= 0");
    detail::check_lerch_integers(s, a);
    ExactRational total = 0;
    BigInt denom;
    for (long k = 0; k <= n; ++k) {
        mpz_ui_pow_ui(denom.get_mpz_t(), static_cast<unsigned long>(a + k), static_cast<unsigned long>(s));
        ExactRational term = make_rational(binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(k)), denom);
        if (k % 2 == 0)
            total += term;
        else
            total -= term;
    }
    return total;
}

/// Closed form of the s = 1 inner sum: n! (a-1)! / (a+n)!.
inline ExactRational lerch_inner_sum_s1(long n, long a)
{
    if (n < 0)
        throw DomainError("inner sum requires n >= 0");
    detail::check_lerch_integers(1, a);
    return make_rational(factorial(static_cast<unsigned long>(n)) * factorial(static_cast<unsigned long>(a - 1)),
                         factorial(static_cast<unsigned long>(a + n)));
}

/// Phi by its defining series. Requires |z| < 1, or z = 1 with s >= 2 (the
/// latter is the Hurwitz zeta value zeta(s) - sum_{k<a} k^-s).
inline BigReal lerch_phi_direct(const LerchArgs& args, Precision p)
{
    detail::check_lerch_integers(args.s, args.a);
    const Precision pw = detail::guarded(p, 12);
    const BigReal z(args.z, pw);
    if (z == 1L) {
        if (args.s < 2)
            throw DomainError("Phi(1, 1, a) diverges");
        BigReal result = const_zeta(args.s, pw);
        for (long k = 1; k < args.a; ++k)
            result -= pow(BigReal(k, pw), -args.s);
        return BigReal(result, p);
    }
    const BigReal abs_z = abs(z);
    if (abs_z >= 1L)
        throw DomainError("direct Lerch series requires |z| < 1 (or z = 1 with s >= 2)");
    if (z.is_zero())
        return BigReal(pow(BigReal(args.a, pw), -args.s), p);

    const BigReal eps = detail::decimal_epsilon(p.digits() + 5, pw);
    const BigReal one_minus = 1L - abs_z;
    BigReal sum(pw);
    BigReal z_pow(1L, pw);
    for (long n = 0;; ++n) {
        sum += z_pow / pow(BigReal(n + args.a, pw), args.s);
        z_pow *= z;
        // tail sum_{m>n} |z|^m/(m+a)^s <= |z|^(n+1) / ((n+1+a)^s (1-|z|))
        BigReal tail = abs(z_pow) / (pow(BigReal(n + 1 + args.a, pw), args.s) * one_minus);
        if (tail <= eps * abs(sum))
            break;
    }
    return BigReal(sum, p);
}

/// Phi by the binomially transformed series
///   Phi(z,s,a) = 1/(1-z) sum_n (-z/(1-z))^n sum_{k<=n} (-1)^k C(n,k)/(a+k)^s,
/// valid for real z < 1/2. The s = 1 inner sums use their closed form.
inline BigReal lerch_phi_transformed(const LerchArgs& args, Precision p)
{
    detail::check_lerch_integers(args.s, args.a);
    const Precision pw = detail::guarded(p, 12);
    const BigReal z(args.z, pw);
    if (z >= BigReal(make_rational(1, 2), pw))
        throw DomainError("transformed Lerch series requires z < 1/2 so that |z/(1-z)| < 1");
    const BigReal one_minus_z = 1L - z;
    const BigReal ratio = -z / one_minus_z;
    const BigReal abs_ratio = abs(ratio);
    const BigReal tail_factor = 1L / ((1L - abs_ratio) * abs(one_minus_z));
    const BigReal eps = detail::decimal_epsilon(p.digits() + 5, pw);

    BigReal sum(pw);
    BigReal ratio_pow(1L, pw);
    BigReal inner = BigReal(make_rational(1, args.a), pw) / pow(BigReal(args.a, pw), args.s - 1);
    for (long n = 0;; ++n) {
        if (n > 0) {
            if (args.s == 1) {
                inner *= n;
                inner /= (args.a + n);
            } else {
                inner = BigReal(lerch_inner_sum(n, args.s, args.a), pw);
            }
        }
        sum += ratio_pow * inner;
        ratio_pow *= ratio;
        // 0 <= I_m <= I_n for m > n, so the tail is at most I_n |r|^(n+1) / (1-|r|)
        BigReal tail = abs(ratio_pow) * inner * tail_factor;
        if (tail <= eps * abs(sum) / abs(one_minus_z) || ratio.is_zero())
            break;
    }
    return BigReal(sum / one_minus_z, p);
}

/// Dispatches to the direct series for |z| <= 1/2 and z = 1, the transformed
/// series for z < -1/2.
inline BigReal lerch_phi(const LerchArgs& args, Precision p)
{
    const Precision pw = detail::guarded(p, 2);
    const BigReal half(make_rational(1, 2), pw);
    if (args.z == 1L || abs(BigReal(args.z, pw)) <= half)
        return lerch_phi_direct(args, p);
    return lerch_phi_transformed(args, p);
}

} // namespace nevacc

#endif // NEVACC_SPECIAL_HPP
