// Independent reference computations for the test suite. Nothing here calls
// the library's own constant or special-function routines.

#ifndef NEVACC_TESTS_ORACLES_HPP
#define NEVACC_TESTS_ORACLES_HPP

#include "nevacc/mpnum.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using nevacc::BigInt;
using nevacc::BigReal;
using nevacc::ExactRational;
using nevacc::Precision;
using nevacc::make_rational;

inline BigReal tolerance(int digits, Precision p) { return nevacc::pow(BigReal(10L, p), -digits); }

/// arctan(1/m) by its Taylor series, exact rational partial sums truncated once
/// terms fall below 10^-(digits+10).
inline BigReal arctan_inverse(long m, Precision p)
{
    BigReal eps = tolerance(p.digits() + 10, p);
    BigReal sum(p);
    BigReal power(make_rational(1, m), p);
    const BigReal m2(m * m, p);
    for (long k = 0;; ++k) {
        BigReal term = power / (2 * k + 1);
        if (k % 2 == 0)
            sum += term;
        else
            sum -= term;
        if (nevacc::abs(term) < eps)
            break;
        power /= m2;
    }
    return sum;
}

/// Machin: pi = 16 arctan(1/5) - 4 arctan(1/239).
inline BigReal pi(Precision p)
{
    Precision g(p.digits() + 10);
    return BigReal(16L * arctan_inverse(5, g) - 4L * arctan_inverse(239, g), p);
}

/// ln 2 = sum_{k>=1} 1 / (k 2^k).
inline BigReal ln2(Precision p)
{
    Precision g(p.digits() + 10);
    BigReal eps = tolerance(g.digits() + 5, g);
    BigReal sum(g);
    BigReal half_pow(1L, g);
    for (long k = 1;; ++k) {
        half_pow /= 2L;
        BigReal term = half_pow / k;
        sum += term;
        if (term < eps)
            break;
    }
    return BigReal(sum, p);
}

/// zeta(3) = (5/2) sum_{k>=1} (-1)^(k+1) / (k^3 C(2k,k)).
inline BigReal zeta3(Precision p)
{
    Precision g(p.digits() + 10);
    BigReal eps = tolerance(g.digits() + 5, g);
    BigReal sum(g);
    BigInt central = 1; // C(2k, k)
    for (long k = 1;; ++k) {
        central = central * (2 * (2 * k - 1)) / k;
        BigReal term = BigReal(1L, g) / BigReal(BigInt(central * k * k * k), g);
        if (k % 2 == 1)
            sum += term;
        else
            sum -= term;
        if (term < eps)
            break;
    }
    return BigReal(sum * make_rational(5, 2), p);
}

/// Direct partial sum sum_{k=1}^{n} k^-a in exact arithmetic.
inline ExactRational power_sum(long a, long n)
{
    ExactRational total = 0;
    for (long k = 1; k <= n; ++k) {
        BigInt d;
        mpz_ui_pow_ui(d.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(a));
        total += ExactRational(BigInt(1), d);
    }
    total.canonicalize();
    return total;
}

/// Bernoulli numbers B_0..B_m from the defining recurrence.
inline std::vector<ExactRational> bernoulli(int m)
{
    std::vector<ExactRational> b{ExactRational(1)};
    for (int k = 1; k <= m; ++k) {
        ExactRational acc = 0;
        BigInt binom = 1; // C(k+1, i)
        for (int i = 0; i < k; ++i) {
            acc += ExactRational(binom) * b[static_cast<std::size_t>(i)];
            binom = binom * (k + 1 - i) / (i + 1);
        }
        b.push_back(-acc / (k + 1));
    }
    return b;
}

/// zeta(s), integer s >= 2, by Euler-Maclaurin summation cut at N = 80.
inline BigReal zeta(long s, Precision p)
{
    const Precision g(p.digits() + 10);
    const long big_n = 80;
    const int terms = 40;
    BigReal sum(g);
    for (long k = 1; k < big_n; ++k)
        sum += nevacc::pow(BigReal(k, g), -s);
    BigReal nn(big_n, g);
    sum += nevacc::pow(nn, 1 - s) / (s - 1L) + nevacc::pow(nn, -s) / 2L;
    std::vector<ExactRational> b = bernoulli(2 * terms);
    ExactRational rising = s; // s (s+1) ... (s+2m-2) / (2m)!
    ExactRational fact = 2;
    for (int m = 1; m <= terms; ++m) {
        if (m > 1) {
            rising *= ExactRational(BigInt(s + 2 * m - 3) * BigInt(s + 2 * m - 2));
            fact *= ExactRational(BigInt(2 * m - 1) * BigInt(2 * m));
        }
        ExactRational coeff = b[static_cast<std::size_t>(2 * m)] * rising / fact;
        sum += BigReal(coeff, g) * nevacc::pow(nn, -(s + 2 * m - 1));
    }
    return BigReal(sum, p);
}

/// Tanh-sinh quadrature of f over [0, 1]; refines the step until two levels
/// agree to `digits`.
inline BigReal integrate_unit(const std::function<BigReal(const BigReal&)>& f, int digits, Precision p)
{
    const Precision g(p.digits() + 15);
    const BigReal half_pi = pi(g) / 2L;
    const BigReal eps = tolerance(digits + 2, g);
    const BigReal tiny = tolerance(g.digits() + 5, g);

    auto node = [&](const BigReal& u, BigReal& x, BigReal& one_minus_x, BigReal& weight) {
        BigReal eu = nevacc::exp(u);
        BigReal sinh_u = (eu - 1L / eu) / 2L;
        BigReal cosh_u = (eu + 1L / eu) / 2L;
        BigReal q = nevacc::exp(-2L * half_pi * sinh_u); // e^{-pi sinh u}
        // x = (1 + tanh(v))/2 = 1/(1+q), 1 - x = q/(1+q), v = (pi/2) sinh u
        x = 1L / (1L + q);
        one_minus_x = q / (1L + q);
        // dx/du = (pi/2) cosh u / (2 cosh^2 v) = pi cosh u q / (1+q)^2
        weight = 2L * half_pi * cosh_u * q / ((1L + q) * (1L + q));
    };

    BigReal h(make_rational(1, 2), g);
    BigReal previous(g);
    bool have_previous = false;
    for (int level = 0; level < 14; ++level) {
        BigReal sum(g);
        for (long k = 0;; ++k) {
            BigReal u = h * k;
            bool done = true;
            for (int side : {1, -1}) {
                if (k == 0 && side < 0)
                    continue;
                BigReal x(g), omx(g), w(g);
                node(side > 0 ? u : -u, x, omx, w);
                if (x.is_zero() || omx.is_zero())
                    continue;
                BigReal term = w * f(x);
                sum += term;
                if (nevacc::abs(term) > tiny)
                    done = false;
            }
            if (done && k > 0)
                break;
        }
        sum *= h;
        if (have_previous && nevacc::abs(sum - previous) < eps)
            return BigReal(sum, p);
        previous = sum;
        have_previous = true;
        h /= 2L;
    }
    throw std::runtime_error("quadrature did not converge");
}

/// Phi(z, 1, a) = int_0^1 t^(a-1) / (1 - z t) dt for z <= 0.
inline BigReal lerch_integral(const BigReal& z, long a, int digits, Precision p)
{
    return integrate_unit([&](const BigReal& t) { return nevacc::pow(t, a - 1) / (1L - z * t); }, digits, p);
}

/// Seeded generators for the hand-rolled property tests.
class Generator {
public:
    explicit Generator(std::uint64_t seed) : rng_(seed) {}

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

    ExactRational rational(long max_abs_num, long max_den)
    {
        long den = integer(1, max_den);
        long num = integer(-max_abs_num, max_abs_num);
        return make_rational(num, den);
    }

    ExactRational nonzero_rational(long max_abs_num, long max_den)
    {
        for (;;) {
            ExactRational q = rational(max_abs_num, max_den);
            if (q != 0)
                return q;
        }
    }

    /// Uniform in [lo, hi] with 18 random decimal digits.
    ExactRational uniform(const ExactRational& lo, const ExactRational& hi)
    {
        const long scale = 1000000000000000000L;
        ExactRational u = make_rational(integer(0, scale), scale);
        return lo + (hi - lo) * u;
    }

    std::vector<BigReal> bounded_sequence(std::size_t count, Precision p)
    {
        std::vector<BigReal> out;
        for (std::size_t i = 0; i < count; ++i)
            out.emplace_back(uniform(-1, 1), p);
        return out;
    }

private:
    std::mt19937_64 rng_;
};

} // namespace oracle

#endif // NEVACC_TESTS_ORACLES_HPP
