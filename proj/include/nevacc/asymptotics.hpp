// Subleading asymptotics of partial sums.
//
// Convention: s_n = s_inf + r_n, so r_n = s_n - s_inf = -sum_{k>n} a_k, and
// for large n  s_n ~ c_0 + sum_{j>=1} c_j / (n+1)^j  with c_0 = s_inf.

#ifndef NEVACC_ASYMPTOTICS_HPP
#define NEVACC_ASYMPTOTICS_HPP

#include "nevacc/mpnum.hpp"
#include "nevacc/special.hpp"
#include "nevacc/transforms.hpp"

#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nevacc {

/// Coefficients of a_k = A/k^2 + B/k^3 + C/k^4 + ...
struct AsymptoticTermCoefficients {
    BigReal A;
    BigReal B;
    BigReal C;
};

struct CoefficientEstimates {
    long order = 0;
    std::vector<BigReal> values; // c_0(n), c_1(n), ...
    std::optional<std::vector<BigReal>> limits;
};

/// d_j(n) = (n+1)^j (s_n - sum_{r<j} c_r/(n+1)^r), for n = 0..N.
inline std::vector<BigReal> d_estimator(const PartialSums& s, const std::vector<BigReal>& known, int j)
{
    if (j < 1)
        throw std::invalid_argument("d_j needs j >= 1");
    if (static_cast<int>(known.size()) != j)
        throw std::invalid_argument("d_j needs exactly c_0..c_{j-1}");
    const Precision p = s.precision();
    std::vector<BigReal> out;
    out.reserve(s.size());
    for (long n = 0; n <= s.order(); ++n) {
        BigReal x(make_rational(1, n + 1), p);
        BigReal residual = s[static_cast<std::size_t>(n)];
        BigReal xp(1L, p);
        for (const auto& c : known) {
            residual -= c * xp;
            xp *= x;
        }
        out.push_back(residual * pow(BigReal(n + 1, p), j));
    }
    return out;
}

/// sum_{k=n+1}^inf k^-a = ((-1)^a / (a-1)!) psi^(a-1)(n+1).
inline BigReal tail_sum_oracle(long a, long n, Precision p)
{
    if (a < 2)
        throw DomainError("power-sum tail diverges for a < 2");
    if (n < 0)
        throw std::invalid_argument("tail start must be nonnegative");
    const Precision pw(p.digits() + 5);
    BigReal psi = polygamma(a - 1, BigReal(n + 1, pw), pw);
    psi /= BigReal(factorial(static_cast<unsigned long>(a - 1)), pw);
    if (a % 2 != 0)
        psi = -psi;
    return BigReal(psi, p);
}

/// Three-term large-n expansion of sum_{k>n} a_k (= s_inf - s_n):
///   A/n + (B-A)/(2n^2) + (A - 3B + 2C)/(6n^3).
inline BigReal remainder_expansion(const AsymptoticTermCoefficients& c, long n)
{
    if (n < 1)
        throw std::invalid_argument("remainder expansion needs n >= 1");
    const Precision p = max(max(c.A.precision(), c.B.precision()), c.C.precision());
    const BigReal inv(make_rational(1, n), p);
    BigReal out = c.A * inv;
    out += (c.B - c.A) * inv * inv / 2L;
    out += (c.A - 3L * c.B + 2L * c.C) * inv * inv * inv / 6L;
    return out;
}

enum class FormKind { none, rational, rational_plus_rational_over_pi };

/// x = rational + over_pi / pi, or kind none.
struct RecognizedForm {
    FormKind kind = FormKind::none;
    ExactRational rational;
    ExactRational over_pi;
    BigReal residual{Precision(Precision::kMinDigits)};
    bool refused = false;

    std::string describe() const
    {
        switch (kind) {
        case FormKind::none: return refused ? "(too few digits)" : "(unrecognized)";
        case FormKind::rational: return to_string(rational);
        case FormKind::rational_plus_rational_over_pi: {
            std::string out = rational == 0 ? "" : to_string(rational) + " + ";
            return out + "(" + to_string(over_pi) + ")/pi";
        }
        }
        return "?";
    }
};

/// Last continued-fraction convergent of x with denominator <= max_den.
inline ExactRational best_rational(const BigReal& x, long max_den)
{
    const Precision p = x.precision();
    // (h, k) is the latest convergent, (h_prev, k_prev) the one before
    BigInt h = 1, k = 0, h_prev = 0, k_prev = 1;
    BigReal rem = x;
    ExactRational best = 0;
    const BigReal tiny = pow(BigReal(10L, p), -(p.digits() - 5));
    for (int step = 0; step < 4 * p.digits(); ++step) {
        BigReal fl(p);
        mpfr_floor(fl.raw(), rem.get());
        BigInt a;
        mpfr_get_z(a.get_mpz_t(), fl.get(), MPFR_RNDN);
        BigInt h_next = a * h + h_prev;
        BigInt k_next = a * k + k_prev;
        if (k_next > max_den)
            break;
        h_prev = h;
        k_prev = k;
        h = h_next;
        k = k_next;
        best = make_rational(h, k);
        BigReal frac = rem - fl;
        if (frac <= tiny)
            break;
        rem = 1L / frac;
    }
    return best;
}

/// Searches x = p/q (q <= max_den) and then x = p/q + (r/t)/pi with an
/// exhaustive scan of small rational parts (q <= min(max_den, 60),
/// |p/q| <= 2) and continued-fraction reconstruction of pi*(x - p/q).
/// A match needs residual < 10^-(D-10); D < 40 is refused.
inline RecognizedForm recognize_form(const BigReal& x, long max_den, std::optional<int> accurate_digits = std::nullopt)
{
    const int digits = accurate_digits.value_or(x.precision().digits());
    RecognizedForm out;
    if (digits < 40) {
        out.refused = true;
        return out;
    }
    const Precision p(std::max(x.precision().digits(), digits) + 10);
    const BigReal xv(x, p);
    const BigReal threshold = pow(BigReal(10L, p), -(digits - 10));

    ExactRational q = best_rational(xv, max_den);
    BigReal residual = abs(xv - q);
    if (residual < threshold) {
        out.kind = FormKind::rational;
        out.rational = q;
        out.residual = BigReal(residual, Precision(Precision::kMinDigits + 10));
        return out;
    }

    const BigReal pi = const_pi(p);
    const long rational_den_limit = std::min<long>(max_den, 60);
    for (long den = 1; den <= rational_den_limit; ++den) {
        for (long mag = 0; mag <= 2 * den; ++mag) {
            for (int sgn : {1, -1}) {
                if (mag == 0 && sgn < 0)
                    continue;
                long num = sgn * mag;
                if (std::gcd(num, den) != 1 && !(num == 0 && den == 1))
                    continue;
                if (num == 0 && den != 1)
                    continue;
                ExactRational rat = make_rational(num, den);
                BigReal y = (xv - rat) * pi;
                ExactRational pi_part = best_rational(y, max_den);
                if (pi_part == 0)
                    continue;
                BigReal fit = BigReal(rat, p) + BigReal(pi_part, p) / pi;
                BigReal res = abs(xv - fit);
                if (res < threshold) {
                    out.kind = FormKind::rational_plus_rational_over_pi;
                    out.rational = rat;
                    out.over_pi = pi_part;
                    out.residual = BigReal(res, Precision(Precision::kMinDigits + 10));
                    return out;
                }
            }
        }
    }
    out.residual = BigReal(residual, Precision(Precision::kMinDigits + 10));
    return out;
}

struct BetheAsymptoticsRow {
    long n = 0;
    BigReal difference;   // b_n - b_inf
    BigReal scaled_third; // (b_n - b_inf)(n+1)^3
    BigReal scaled_fourth; // (b_n - b_inf + 4/(3(n+1)^3)) (n+1)^4
};

struct BetheAsymptoticsReport {
    std::vector<BetheAsymptoticsRow> rows;
    /// Sign of the (n+1)^-4 coefficient seen at the largest n (0 if it vanishes).
    int fourth_order_sign = 0;
};

/// Compares b_n - b_inf with -4/(3(n+1)^3) +/- 27/(4(n+1)^4) over [first, last].
inline BetheAsymptoticsReport verify_bethe_asymptotics(const PartialSums& b, const BigReal& b_inf, long first,
                                                       long last)
{
    if (first < 0 || last < first || last > b.order())
        throw std::invalid_argument("n range outside the supplied partial sums");
    const Precision p = b.precision();
    BetheAsymptoticsReport report;
    const ExactRational c3 = make_rational(-4, 3);
    for (long n = first; n <= last; ++n) {
        BigReal diff = b[static_cast<std::size_t>(n)] - b_inf;
        BigReal x(make_rational(1, n + 1), p);
        BigReal scaled3 = diff / pow(x, 3);
        BigReal scaled4 = (diff - BigReal(c3, p) * pow(x, 3)) / pow(x, 4);
        report.rows.push_back({n, diff, scaled3, scaled4});
    }
    const auto& tail = report.rows.back();
    if (!tail.difference.is_zero())
        report.fourth_order_sign = tail.scaled_fourth.sign();
    return report;
}

} // namespace nevacc

#endif // NEVACC_ASYMPTOTICS_HPP
