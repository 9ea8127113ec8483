// Sequence transformations over partial sums s_0..s_n:
//
//   neville_one_step   c_0(k) = sum_i w_{0,i}(k) s_i from exact weights, plus
//                      the subleading coefficients c_j(n) at the top order
//   neville_recursive  the three-term lozenge for abscissas 1/(i+1)
//   wynn_epsilon       Wynn's epsilon table (Shanks / Pade)
//   aitken_iterated    repeated Aitken Delta^2 sweeps
//
// Every method reports estimates T_0..T_n where T_k depends on s_0..s_k only.

#ifndef NEVACC_TRANSFORMS_HPP
#define NEVACC_TRANSFORMS_HPP

#include "nevacc/mpnum.hpp"
#include "nevacc/weights.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nevacc {

/// Raised when the inputs carry too few digits for the requested output.
class PrecisionError : public std::runtime_error {
public:
    PrecisionError(const std::string& what, int required_digits)
        : std::runtime_error(what), required_digits_(required_digits)
    {
    }
    int required_digits() const { return required_digits_; }

private:
    int required_digits_;
};

class PartialSums {
public:
    PartialSums(std::vector<BigReal> values, std::string origin = {})
        : values_(std::move(values)), origin_(std::move(origin))
    {
        if (values_.empty())
            throw std::invalid_argument("partial sums must be nonempty");
        for (const auto& v : values_)
            if (v.precision() != values_.front().precision())
                throw std::invalid_argument("partial sums must share one precision");
    }

    /// Cumulative sums of the given terms.
    static PartialSums from_terms(const std::vector<BigReal>& terms, std::string origin = {})
    {
        if (terms.empty())
            throw std::invalid_argument("need at least one term");
        std::vector<BigReal> sums;
        sums.reserve(terms.size());
        BigReal running(terms.front().precision());
        for (const auto& t : terms) {
            running += t;
            sums.push_back(running);
        }
        return PartialSums(std::move(sums), std::move(origin));
    }

    const std::vector<BigReal>& values() const { return values_; }
    const BigReal& operator[](std::size_t i) const { return values_[i]; }
    std::size_t size() const { return values_.size(); }
    long order() const { return static_cast<long>(values_.size()) - 1; }
    Precision precision() const { return values_.front().precision(); }
    const std::string& origin() const { return origin_; }

    /// The first k+1 sums.
    PartialSums prefix(long k) const
    {
        if (k < 0 || k > order())
            throw std::out_of_range("prefix order out of range");
        return PartialSums(std::vector<BigReal>(values_.begin(), values_.begin() + k + 1), origin_);
    }

private:
    std::vector<BigReal> values_;
    std::string origin_;
};

enum class Method { neville_one_step, neville_recursive, wynn_epsilon, aitken_iterated };

inline std::string_view method_name(Method m)
{
    switch (m) {
    case Method::neville_one_step: return "neville-one-step";
    case Method::neville_recursive: return "neville-recursive";
    case Method::wynn_epsilon: return "wynn-epsilon";
    case Method::aitken_iterated: return "aitken-iterated";
    }
    return "?";
}

inline std::optional<Method> parse_method(std::string_view name)
{
    for (Method m : {Method::neville_one_step, Method::neville_recursive, Method::wynn_epsilon,
                     Method::aitken_iterated})
        if (method_name(m) == name)
            return m;
    return std::nullopt;
}

struct TransformResult {
    Method method = Method::neville_one_step;
    std::vector<BigReal> estimates;
    /// chi[k] = log10|T_k - T_{k+1}|; empty where the two agree to working precision.
    std::vector<std::optional<BigReal>> chi;
    /// c_j(n) at the top order (one-step Neville only).
    std::map<int, BigReal> coefficients;
    /// Estimates carried over from an earlier order because the table saturated.
    std::vector<bool> saturated;
};

/// chi(k) = log10|T_k - T_{k+1}| for k = 0..n-1.
inline std::vector<std::optional<BigReal>> chi_diagnostic(const std::vector<BigReal>& estimates)
{
    std::vector<std::optional<BigReal>> chi;
    if (estimates.size() < 2)
        return chi;
    chi.reserve(estimates.size() - 1);
    for (std::size_t k = 0; k + 1 < estimates.size(); ++k) {
        if (equal_to_working_precision(estimates[k], estimates[k + 1]))
            chi.emplace_back(std::nullopt);
        else
            chi.emplace_back(log10(abs(estimates[k] - estimates[k + 1])));
    }
    return chi;
}

inline std::vector<std::optional<BigReal>> chi_diagnostic(const TransformResult& t)
{
    if (t.estimates.size() < 2)
        throw std::invalid_argument("chi needs at least two estimates");
    return chi_diagnostic(t.estimates);
}

/// Working digits needed for `output_digits` correct digits of c_0..c_{j_max}
/// at order n: D + ceil(log10 max_j Lambda_j(n)) + 15.
inline int required_working_digits(long n, int output_digits, int j_max = 0)
{
    int worst = 0;
    for (int j = 0; j <= j_max && j <= n; ++j)
        worst = std::max(worst, condition_digits(n, j));
    return std::max(output_digits + worst + 15, Precision::kMinDigits);
}

namespace detail {

inline BigReal apply_row(const WeightRow& row, const PartialSums& s)
{
    const Precision p = s.precision();
    BigReal acc(p);
    BigReal w(p);
    for (std::size_t i = 0; i < row.size(); ++i) {
        mpfr_set_q(w.raw(), row[i].get_mpq_t(), MPFR_RNDN);
        w *= s[i];
        acc += w;
    }
    return acc;
}

/// |d| negligible against `scale` at working precision.
inline bool negligible(const BigReal& d, const BigReal& scale)
{
    if (d.is_zero())
        return true;
    BigReal bound = abs(scale);
    long bits = static_cast<long>(max(d.precision(), scale.precision()).bits());
    mpfr_mul_2si(bound.raw(), bound.get(), -(bits - 8), MPFR_RNDN);
    return abs(d) <= bound;
}

inline const BigReal& larger_magnitude(const BigReal& a, const BigReal& b) { return abs(a) > abs(b) ? a : b; }

} // namespace detail

/// Enhanced one-step Neville transformation. When `output_digits` is given the
/// input precision is checked against the working-precision policy.
inline TransformResult neville_one_step(const PartialSums& s, int j_max = 0,
                                        std::optional<int> output_digits = std::nullopt)
{
    const long n = s.order();
    if (j_max < 0 || j_max > n)
        throw std::invalid_argument("j_max must satisfy 0 <= j_max <= n");
    if (j_max > kMaxClosedFormRow)
        throw UnsupportedClosedForm("coefficients beyond c_10 have no closed-form weights");
    if (output_digits) {
        int needed = required_working_digits(n, *output_digits, j_max);
        if (s.precision().digits() < needed)
            throw PrecisionError("order " + std::to_string(n) + " with " + std::to_string(*output_digits) +
                                     " output digits needs inputs at " + std::to_string(needed) +
                                     " working digits, got " + std::to_string(s.precision().digits()),
                                 needed);
    }
    TransformResult result;
    result.method = Method::neville_one_step;
    result.estimates.reserve(s.size());
    for (long k = 0; k <= n; ++k)
        result.estimates.push_back(detail::apply_row(*weights_shared(k, 0), s));
    for (int j = 0; j <= j_max; ++j)
        result.coefficients.emplace(j, detail::apply_row(*weights_shared(n, j), s));
    result.saturated.assign(s.size(), false);
    result.chi = chi_diagnostic(result.estimates);
    return result;
}

/// Recursive Neville lozenge:
///   s^m_i = ((i+1) s^{m-1}_i - (i+1-m) s^{m-1}_{i-1}) / m,  T_m = s^m_m.
inline TransformResult neville_recursive(const PartialSums& s)
{
    const long n = s.order();
    std::vector<BigReal> column = s.values();
    TransformResult result;
    result.method = Method::neville_recursive;
    result.estimates.push_back(column[0]);
    for (long m = 1; m <= n; ++m) {
        for (long i = n; i >= m; --i) {
            auto ui = static_cast<std::size_t>(i);
            BigReal next = column[ui] * (i + 1);
            next -= column[ui - 1] * (i + 1 - m);
            next /= m;
            column[ui] = std::move(next);
        }
        result.estimates.push_back(column[static_cast<std::size_t>(m)]);
    }
    result.saturated.assign(s.size(), false);
    result.chi = chi_diagnostic(result.estimates);
    return result;
}

/// Wynn's epsilon algorithm. T_n is the even-column entry built from the
/// last 2*floor(n/2)+1 sums: eps_{2m}^{(0)} for n = 2m and eps_{2m}^{(1)} for
/// n = 2m+1. Entries whose denominator vanishes are saturated and the
/// previous estimate is carried forward.
inline TransformResult wynn_epsilon(const PartialSums& s)
{
    const std::size_t count = s.size();
    const Precision p = s.precision();
    using Entry = std::optional<BigReal>;

    std::vector<Entry> before(count + 1, Entry(BigReal(p))); // eps_{-1}
    std::vector<Entry> current(s.values().begin(), s.values().end()); // eps_0

    std::vector<Entry> picked(count); // even-column entry for each T_n
    picked[0] = current[0];
    if (count > 1)
        picked[1] = current[1];

    for (std::size_t level = 1; level < count; ++level) {
        std::vector<Entry> next(count - level);
        for (std::size_t m = 0; m + 1 < current.size(); ++m) {
            const Entry& lo = current[m];
            const Entry& hi = current[m + 1];
            const Entry& prev = before[m + 1];
            if (!lo || !hi || !prev)
                continue;
            BigReal diff = *hi - *lo;
            if (detail::negligible(diff, detail::larger_magnitude(*hi, *lo)))
                continue;
            next[m] = *prev + 1L / diff;
        }
        before = std::move(current);
        current = std::move(next);
        if (level % 2 == 0) {
            picked[level] = current[0];
            if (level + 1 < count)
                picked[level + 1] = current.size() > 1 ? current[1] : Entry();
        }
    }

    TransformResult result;
    result.method = Method::wynn_epsilon;
    result.saturated.assign(count, false);
    for (std::size_t k = 0; k < count; ++k) {
        if (picked[k] && picked[k]->is_finite()) {
            result.estimates.push_back(*picked[k]);
        } else {
            result.estimates.push_back(result.estimates.back());
            result.saturated[k] = true;
        }
    }
    result.chi = chi_diagnostic(result.estimates);
    return result;
}

/// Iterated Aitken Delta^2: each sweep maps A_t to
///   A_{t+1}^{(m)} = A_t^{(m)} - (Delta A_t^{(m)})^2 / Delta^2 A_t^{(m)}
/// and shortens the sequence by two. T_n is A_{floor(n/2)}^{(n mod 2)}; when
/// a second difference vanishes the deepest valid level is returned and the
/// estimate is flagged.
inline TransformResult aitken_iterated(const PartialSums& s)
{
    const std::size_t count = s.size();
    using Entry = std::optional<BigReal>;
    std::vector<std::vector<Entry>> levels;
    levels.emplace_back(s.values().begin(), s.values().end());
    while (levels.back().size() >= 3) {
        const auto& a = levels.back();
        std::vector<Entry> next(a.size() - 2);
        for (std::size_t m = 0; m < next.size(); ++m) {
            if (!a[m] || !a[m + 1] || !a[m + 2])
                continue;
            BigReal d0 = *a[m + 1] - *a[m];
            BigReal d1 = *a[m + 2] - *a[m + 1];
            BigReal d2 = d1 - d0;
            const BigReal& scale = detail::larger_magnitude(detail::larger_magnitude(*a[m], *a[m + 1]), *a[m + 2]);
            if (detail::negligible(d2, scale))
                continue;
            next[m] = *a[m] - d0 * d0 / d2;
        }
        levels.push_back(std::move(next));
    }

    TransformResult result;
    result.method = Method::aitken_iterated;
    result.saturated.assign(count, false);
    for (std::size_t n = 0; n < count; ++n) {
        std::size_t depth = n / 2;
        bool found = false;
        for (std::size_t t = depth + 1; t-- > 0;) {
            const Entry& e = levels[t][n - 2 * t];
            if (e && e->is_finite()) {
                result.estimates.push_back(*e);
                result.saturated[n] = t != depth;
                found = true;
                break;
            }
        }
        if (!found) {
            result.estimates.push_back(s[n]);
            result.saturated[n] = true;
        }
    }
    result.chi = chi_diagnostic(result.estimates);
    return result;
}

inline TransformResult transform(Method method, const PartialSums& s)
{
    switch (method) {
    case Method::neville_one_step: return neville_one_step(s);
    case Method::neville_recursive: return neville_recursive(s);
    case Method::wynn_epsilon: return wynn_epsilon(s);
    case Method::aitken_iterated: return aitken_iterated(s);
    }
    throw std::invalid_argument("unknown method");
}

} // namespace nevacc

#endif // NEVACC_TRANSFORMS_HPP
