// Exact one-step Neville weights.
//
// Interpreting partial sums s_0..s_n as samples of a polynomial in
// x_i = 1/(i+1), the coefficients are c_j(n) = sum_i w_{j,i}(n) s_i where
// w_{j,.}(n) is row j of the inverse of M_{ik} = (1/(i+1))^k. Two independent
// routes produce those rows:
//
//   closed form  w_{j,i}(n) = (-1)^(n-i) (i+1)^n / (i! (n-i)!) * P_j(i, n)
//   oracle       exact Gauss-Jordan inversion of M over the rationals
//
// certify_weights() compares them; rows that fail certification are served
// from the oracle.

#ifndef NEVACC_WEIGHTS_HPP
#define NEVACC_WEIGHTS_HPP

#include "nevacc/detail/weight_polynomials.hpp"
#include "nevacc/mpnum.hpp"

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nevacc {

/// Highest coefficient index with a closed-form polynomial.
inline constexpr int kMaxClosedFormRow = 10;

class UnsupportedClosedForm : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

using WeightRow = std::vector<ExactRational>;

enum class WeightSource { closed_form, oracle };

struct WeightTable {
    int order = 0;
    std::map<int, WeightRow> rows;
    WeightSource source = WeightSource::closed_form;
};

namespace detail {

/// Write-once map: concurrent lookups and inserts of identical values are safe.
template <class Key, class Value>
class WriteOnceCache {
public:
    template <class Fn>
    std::shared_ptr<const Value> get_or_compute(const Key& key, Fn&& compute)
    {
        {
            std::shared_lock lock(mutex_);
            if (auto it = entries_.find(key); it != entries_.end())
                return it->second;
        }
        auto value = std::make_shared<const Value>(compute());
        std::unique_lock lock(mutex_);
        auto [it, inserted] = entries_.emplace(key, std::move(value));
        return it->second;
    }

private:
    std::shared_mutex mutex_;
    std::map<Key, std::shared_ptr<const Value>> entries_;
};

inline void check_closed_form_row(int j)
{
    if (j < 0)
        throw std::invalid_argument("coefficient index must be nonnegative");
    if (j > kMaxClosedFormRow)
        throw UnsupportedClosedForm("no closed-form polynomial for row j=" + std::to_string(j) +
                                    " (closed forms cover j <= 10; use oracle_weights)");
}

inline void check_row_defined(long n, int j)
{
    if (n < 0)
        throw std::invalid_argument("order must be nonnegative");
    if (j < 0 || j > n)
        throw std::invalid_argument("row j=" + std::to_string(j) + " is not defined at order n=" +
                                    std::to_string(n));
}

inline bool has_unprinted_sign(int j)
{
    for (const auto& t : kPolynomials[j].terms)
        if (t.sign_unprinted)
            return true;
    return false;
}

/// P_j(i, n) with every unprinted-sign monomial taking `unprinted_sign`.
inline ExactRational evaluate_polynomial(int j, long i, long n, int unprinted_sign)
{
    const PolynomialTable& table = kPolynomials[j];
    BigInt total = 0;
    BigInt ipow, npow, term;
    for (const auto& t : table.terms) {
        mpz_ui_pow_ui(ipow.get_mpz_t(), static_cast<unsigned long>(i), static_cast<unsigned long>(t.i_pow));
        mpz_ui_pow_ui(npow.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(t.n_pow));
        term = BigInt(static_cast<long>(t.coef)) * ipow * npow;
        if (t.sign_unprinted && unprinted_sign < 0)
            total -= term;
        else
            total += term;
    }
    return make_rational(total, BigInt(static_cast<long>(table.divisor)));
}

inline WeightRow closed_form_row(long n, int j, int unprinted_sign)
{
    WeightRow row(static_cast<std::size_t>(n + 1));
    BigInt pow_term;
    for (long i = 0; i <= n; ++i) {
        mpz_ui_pow_ui(pow_term.get_mpz_t(), static_cast<unsigned long>(i + 1), static_cast<unsigned long>(n));
        BigInt denom = factorial(static_cast<unsigned long>(i)) * factorial(static_cast<unsigned long>(n - i));
        ExactRational w = make_rational(pow_term, denom) * evaluate_polynomial(j, i, n, unprinted_sign);
        if ((n - i) % 2 != 0)
            w = -w;
        row[static_cast<std::size_t>(i)] = std::move(w);
    }
    return row;
}

using RationalMatrix = std::vector<std::vector<ExactRational>>;

/// Exact inverse of M_{ik} = (1/(i+1))^k by Gauss-Jordan elimination with
/// partial pivoting on rational magnitude.
inline RationalMatrix invert_vandermonde(long n)
{
    const std::size_t dim = static_cast<std::size_t>(n + 1);
    RationalMatrix a(dim, std::vector<ExactRational>(dim));
    RationalMatrix inv(dim, std::vector<ExactRational>(dim));
    for (std::size_t i = 0; i < dim; ++i) {
        ExactRational x = make_rational(1, static_cast<long>(i + 1));
        ExactRational p = 1;
        for (std::size_t k = 0; k < dim; ++k) {
            a[i][k] = p;
            p *= x;
        }
        inv[i][i] = 1;
    }
    for (std::size_t col = 0; col < dim; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < dim; ++r)
            if (cmp(abs(a[r][col]), abs(a[pivot][col])) > 0)
                pivot = r;
        if (a[pivot][col] == 0)
            throw std::logic_error("singular Vandermonde system");
        std::swap(a[pivot], a[col]);
        std::swap(inv[pivot], inv[col]);
        ExactRational scale = 1 / a[col][col];
        for (std::size_t k = 0; k < dim; ++k) {
            a[col][k] *= scale;
            inv[col][k] *= scale;
        }
        for (std::size_t r = 0; r < dim; ++r) {
            if (r == col || a[r][col] == 0)
                continue;
            ExactRational f = a[r][col];
            for (std::size_t k = 0; k < dim; ++k) {
                if (a[col][k] != 0)
                    a[r][k] -= f * a[col][k];
                if (inv[col][k] != 0)
                    inv[r][k] -= f * inv[col][k];
            }
        }
    }
    return inv;
}

inline WriteOnceCache<long, RationalMatrix>& oracle_cache()
{
    static WriteOnceCache<long, RationalMatrix> cache;
    return cache;
}

inline WriteOnceCache<std::pair<long, int>, WeightRow>& closed_form_cache()
{
    static WriteOnceCache<std::pair<long, int>, WeightRow> cache;
    return cache;
}

inline std::shared_ptr<const RationalMatrix> oracle_inverse(long n)
{
    return oracle_cache().get_or_compute(n, [n] { return invert_vandermonde(n); });
}

/// Sign of the unprinted monomial in row j, decided by the exact inverse:
/// +1 or -1 if exactly one choice reproduces the oracle rows at orders
/// j..j+2, 0 if neither does. Rows without such a monomial report +1.
inline int adjudicated_sign(int j)
{
    static std::array<int, kMaxClosedFormRow + 1> signs{};
    static std::once_flag once;
    std::call_once(once, [] {
        for (int row = 0; row <= kMaxClosedFormRow; ++row) {
            if (!has_unprinted_sign(row)) {
                signs[static_cast<std::size_t>(row)] = 1;
                continue;
            }
            int chosen = 0;
            for (int candidate : {1, -1}) {
                bool all = true;
                for (long n = row; n <= row + 2 && all; ++n)
                    all = closed_form_row(n, row, candidate) == (*oracle_inverse(n))[static_cast<std::size_t>(row)];
                if (all)
                    chosen = chosen == 0 ? candidate : 0;
            }
            signs[static_cast<std::size_t>(row)] = chosen;
        }
    });
    return signs[static_cast<std::size_t>(j)];
}

} // namespace detail

/// Rows whose printed polynomial failed certification and are served by the
/// oracle instead. Populated from certify_weights() runs.
inline constexpr std::array<bool, kMaxClosedFormRow + 1> kOracleRoutedRows{};

/// P_j(i, n) for 0 <= j <= 10, exactly, including its rational prefactor.
inline ExactRational poly_P(int j, long i, long n)
{
    detail::check_closed_form_row(j);
    if (i < 0 || i > n)
        throw std::invalid_argument("poly_P requires 0 <= i <= n");
    int sign = detail::adjudicated_sign(j);
    return detail::evaluate_polynomial(j, i, n, sign == 0 ? 1 : sign);
}

/// Row j of the closed-form weights at order n: c_j(n) = sum_i w[i] * s_i.
inline std::shared_ptr<const WeightRow> closed_form_weights_shared(long n, int j)
{
    detail::check_closed_form_row(j);
    detail::check_row_defined(n, j);
    int sign = detail::adjudicated_sign(j);
    return detail::closed_form_cache().get_or_compute(
        {n, j}, [n, j, sign] { return detail::closed_form_row(n, j, sign == 0 ? 1 : sign); });
}

inline WeightRow closed_form_weights(long n, int j) { return *closed_form_weights_shared(n, j); }

/// Row j of the exact inverse Vandermonde matrix of order n (any j <= n).
inline WeightRow oracle_weights(long n, int j)
{
    detail::check_row_defined(n, j);
    return (*detail::oracle_inverse(n))[static_cast<std::size_t>(j)];
}

inline bool row_uses_oracle(int j)
{
    return j > kMaxClosedFormRow || kOracleRoutedRows[static_cast<std::size_t>(j)] ||
           detail::adjudicated_sign(j) == 0;
}

/// Certified weights: closed form where the row certified, oracle otherwise.
inline std::shared_ptr<const WeightRow> weights_shared(long n, int j)
{
    detail::check_row_defined(n, j);
    if (row_uses_oracle(j)) {
        auto inv = detail::oracle_inverse(n);
        return std::shared_ptr<const WeightRow>(inv, &(*inv)[static_cast<std::size_t>(j)]);
    }
    return closed_form_weights_shared(n, j);
}

inline WeightRow weights(long n, int j) { return *weights_shared(n, j); }

/// Rows 0..j_max at order n, all from the same routing decision per row.
inline WeightTable weight_table(long n, int j_max)
{
    WeightTable table;
    table.order = static_cast<int>(n);
    bool any_oracle = false;
    for (int j = 0; j <= j_max; ++j) {
        table.rows.emplace(j, weights(n, j));
        any_oracle = any_oracle || row_uses_oracle(j);
    }
    table.source = any_oracle ? WeightSource::oracle : WeightSource::closed_form;
    return table;
}

/// Lambda_j(n) = sum_i |w_{j,i}(n)|, the cancellation factor of row j.
inline ExactRational weight_condition(long n, int j)
{
    auto row = weights_shared(n, j);
    ExactRational total = 0;
    for (const auto& w : *row)
        total += abs(w);
    return total;
}

/// ceil(log10 Lambda_j(n)), clamped at zero.
inline int condition_digits(long n, int j)
{
    ExactRational lambda = weight_condition(n, j);
    BigInt q = lambda.get_num() / lambda.get_den();
    if (q == 0)
        return 0;
    // digits of the integer part give an upper bound within one of log10
    std::size_t digits = mpz_sizeinbase(q.get_mpz_t(), 10);
    return static_cast<int>(digits);
}

enum class RowStatus { certified, repaired, corrupted };

struct WeightMismatch {
    long n;
    int j;
    long i;
    ExactRational closed_form;
    ExactRational oracle;
};

struct RowCertification {
    int j = 0;
    RowStatus status = RowStatus::certified;
    std::string note;
    std::vector<WeightMismatch> mismatches;
};

struct CertificationReport {
    long n_max = 0;
    std::vector<RowCertification> rows;

    bool all_resolved() const
    {
        for (const auto& r : rows)
            if (r.status == RowStatus::corrupted)
                return false;
        return true;
    }
};

/// Compares every closed-form row against the exact inverse for all
/// n <= n_max. Rows with an unprinted sign are reported as repaired when
/// the oracle-adjudicated sign certifies.
inline CertificationReport certify_weights(long n_max)
{
    if (n_max < kMaxClosedFormRow)
        throw std::invalid_argument("certification needs n_max >= 10, got " + std::to_string(n_max));
    CertificationReport report;
    report.n_max = n_max;
    for (int j = 0; j <= kMaxClosedFormRow; ++j) {
        RowCertification row;
        row.j = j;
        int sign = detail::adjudicated_sign(j);
        bool ambiguous = detail::has_unprinted_sign(j);
        int used_sign = sign == 0 ? 1 : sign;
        for (long n = j; n <= n_max; ++n) {
            WeightRow closed = detail::closed_form_row(n, j, used_sign);
            const WeightRow& exact = (*detail::oracle_inverse(n))[static_cast<std::size_t>(j)];
            for (long i = 0; i <= n; ++i) {
                const auto idx = static_cast<std::size_t>(i);
                if (closed[idx] != exact[idx])
                    row.mismatches.push_back({n, j, i, closed[idx], exact[idx]});
            }
        }
        if (!row.mismatches.empty() || sign == 0) {
            row.status = RowStatus::corrupted;
            row.note = ambiguous && sign == 0
                           ? "neither sign of the unprinted monomial reproduces the exact inverse; oracle weights used"
                           : "printed polynomial disagrees with the exact inverse; oracle weights used";
        } else if (ambiguous) {
            row.status = RowStatus::repaired;
            std::ostringstream note;
            for (const auto& t : detail::kPolynomials[j].terms)
                if (t.sign_unprinted)
                    note << "unprinted sign of " << t.coef << " i^" << t.i_pow << " n^" << t.n_pow
                         << " resolved as '" << (sign > 0 ? '+' : '-') << "' by the exact inverse";
            row.note = note.str();
        } else if (kOracleRoutedRows[static_cast<std::size_t>(j)]) {
            row.note = "row certifies but is configured to use oracle weights";
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

inline const char* to_string(RowStatus s)
{
    switch (s) {
    case RowStatus::certified: return "certified";
    case RowStatus::repaired: return "repaired";
    case RowStatus::corrupted: return "corrupted";
    }
    return "?";
}

} // namespace nevacc

#endif // NEVACC_WEIGHTS_HPP
