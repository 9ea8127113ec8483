// Concrete input series: the arctan model series, the hydrogen Bethe-logarithm
// Lerch sums, and user-supplied term files.

#ifndef NEVACC_CATALOG_HPP
#define NEVACC_CATALOG_HPP

#include "nevacc/asymptotics.hpp"
#include "nevacc/mpnum.hpp"
#include "nevacc/special.hpp"
#include "nevacc/transforms.hpp"

#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nevacc {

/// Closed form rational + over_pi / pi.
struct ClosedForm {
    ExactRational rational;
    ExactRational over_pi;

    BigReal value(Precision p) const
    {
        BigReal v(rational, p);
        if (over_pi != 0)
            v += BigReal(over_pi, p) / const_pi(p);
        return v;
    }
};

struct SeriesSpec {
    std::string name;
    /// a_k at precision p, for k >= first_index.
    std::function<BigReal(long k, Precision p)> term;
    long first_index = 0;
    /// Published value of the limit and where it comes from.
    std::optional<std::string> known_limit;
    std::string known_limit_source;
    std::map<int, ClosedForm> known_coeffs;
    /// Number of terms available (file-backed series); unlimited when empty.
    std::optional<long> available_terms;
    /// Significant digits carried by the supplied data; unlimited when empty.
    std::optional<int> input_digits;
};

/// Partial sums s_0..s_order of `spec`, re-indexed to start at first_index.
inline PartialSums partial_sums(const SeriesSpec& spec, long order, Precision p)
{
    if (order < 0)
        throw std::invalid_argument("order must be nonnegative");
    if (spec.available_terms && order + 1 > *spec.available_terms)
        throw std::out_of_range("series '" + spec.name + "' supplies only " + std::to_string(*spec.available_terms) +
                                " terms, order " + std::to_string(order) + " needs " + std::to_string(order + 1));
    std::vector<BigReal> terms;
    terms.reserve(static_cast<std::size_t>(order + 1));
    for (long k = 0; k <= order; ++k)
        terms.push_back(BigReal(spec.term(spec.first_index + k, p), p));
    return PartialSums::from_terms(terms, spec.name);
}

/// a_k = 4 / (pi (k+1)^2) * arctan((k+2)/(k+3)),  k >= 0.
inline SeriesSpec model_series()
{
    SeriesSpec spec;
    spec.name = "model";
    spec.first_index = 0;
    spec.term = [](long k, Precision p) {
        const Precision pw(p.digits() + 5);
        BigReal angle = atan(BigReal(make_rational(k + 2, k + 3), pw));
        BigReal t = 4L * angle / const_pi(pw);
        t /= BigReal(BigInt(BigInt(k + 1) * (k + 1)), pw);
        return BigReal(t, p);
    };
    spec.known_limit = "1.31279495382586579196348658390640442738912757477554";
    spec.known_limit_source = "published 50-decimal limit of the model series";
    // c_j from the Euler-Maclaurin expansion of the tail; arctan((k+2)/(k+3)) = pi/4 - arctan(1/(2k+5)).
    spec.known_coeffs = {
        {1, {make_rational(-1, 1), 0}},
        {2, {make_rational(1, 2), make_rational(1, 1)}},
        {3, {make_rational(-1, 6), make_rational(-2, 1)}},
        {4, {0, make_rational(37, 12)}},
        {5, {make_rational(1, 30), make_rational(-131, 30)}},
        {6, {0, make_rational(268, 45)}},
        {7, {make_rational(-1, 42), make_rational(-549, 70)}},
        {8, {0, make_rational(98347, 10080)}},
        {9, {make_rational(1, 30), make_rational(-9253, 840)}},
        {10, {0, make_rational(66011, 6300)}},
    };
    return spec;
}

enum class BetheState { s1, s2, p2 };

inline std::string to_string(BetheState s)
{
    switch (s) {
    case BetheState::s1: return "1S";
    case BetheState::s2: return "2S";
    case BetheState::p2: return "2P";
    }
    return "?";
}

inline std::optional<BetheState> parse_bethe_state(std::string_view label)
{
    if (label == "1S")
        return BetheState::s1;
    if (label == "2S")
        return BetheState::s2;
    if (label == "2P")
        return BetheState::p2;
    return std::nullopt;
}

/// Which printed form of the 1S sum to use. The shifted form starts at k = 0;
/// the other forms start at k = 2 (1S) or k = 3 (2S, 2P).
enum class BetheForm { shifted, standard };

/// Published 100-decimal Bethe logarithms.
inline std::string bethe_reference_value(BetheState state)
{
    switch (state) {
    case BetheState::s1:
        return "2.9841285557654976107597770900137979699751805661700200048159"
               "261392406576623067553286860620133040472249";
    case BetheState::s2:
        return "2.8117698931205635152197427859416361128935514702973241909186"
               "969645324020201188910687017486120283124031";
    case BetheState::p2:
        return "-0.030016708630212902443675710951144063940933044231030466898"
               "5253271944796896225718326244103127079973828";
    }
    return {};
}

namespace detail {

inline BigReal lerch_at(const ExactRational& z, long a, Precision p)
{
    return lerch_phi_transformed({BigReal(z, p), 1, a}, p);
}

} // namespace detail

inline SeriesSpec bethe_series(BetheState state, BetheForm form = BetheForm::standard)
{
    SeriesSpec spec;
    spec.known_limit_source = "published 100-decimal Bethe logarithm minus its constant part";
    switch (state) {
    case BetheState::s1:
        if (form == BetheForm::shifted) {
            spec.name = "bethe-1S-shifted";
            spec.first_index = 0;
            // 16(k+2)/((k+1)^2 (k+3)^2) Phi(-(3+k)/(1+k), 1, 2k+4)
            spec.term = [](long k, Precision p) {
                const Precision pw(p.digits() + 5);
                ExactRational pre = make_rational(BigInt(16 * (k + 2)), BigInt(k + 1) * BigInt(k + 1) *
                                                                          BigInt(k + 3) * BigInt(k + 3));
                BigReal phi = detail::lerch_at(make_rational(-(3 + k), 1 + k), 2 * k + 4, pw);
                return BigReal(phi * pre, p);
            };
        } else {
            spec.name = "bethe-1S";
            spec.first_index = 2;
            // 16k/((k-1)^2 (k+1)^2) Phi((1+k)/(1-k), 1, 2k)
            spec.term = [](long k, Precision p) {
                const Precision pw(p.digits() + 5);
                ExactRational pre =
                    make_rational(BigInt(16 * k), BigInt(k - 1) * BigInt(k - 1) * BigInt(k + 1) * BigInt(k + 1));
                BigReal phi = detail::lerch_at(make_rational(1 + k, 1 - k), 2 * k, pw);
                return BigReal(phi * pre, p);
            };
        }
        spec.known_coeffs = {
            {1, {0, 0}},
            {2, {0, 0}},
            {3, {make_rational(-4, 3), 0}},
            {4, {make_rational(27, 4), 0}},
            {5, {make_rational(-703, 30), 0}},
            {6, {make_rational(3329, 48), 0}},
            {7, {make_rational(-63163, 336), 0}},
            {8, {make_rational(184961, 384), 0}},
            {9, {make_rational(-569323, 480), 0}},
            {10, {make_rational(7256477, 2560), 0}},
        };
        break;
    case BetheState::s2:
        spec.name = "bethe-2S";
        spec.first_index = 3;
        // 1024 k (k-1)(k+1) / ((k-2)^3 (k+2)^3) Phi((2+k)/(2-k), 1, 2k)
        spec.term = [](long k, Precision p) {
            const Precision pw(p.digits() + 5);
            BigInt km2 = k - 2, kp2 = k + 2;
            ExactRational pre = make_rational(BigInt(BigInt(1024) * k * (k - 1) * (k + 1)),
                                              BigInt(km2 * km2 * km2 * kp2 * kp2 * kp2));
            BigReal phi = detail::lerch_at(make_rational(2 + k, 2 - k), 2 * k, pw);
            return BigReal(phi * pre, p);
        };
        break;
    case BetheState::p2:
        spec.name = "bethe-2P";
        spec.first_index = 3;
        // 256 k^3 (11k^2 - 12) / (3 (k-2)^4 (k+2)^4) Phi((2+k)/(2-k), 1, 2k)
        spec.term = [](long k, Precision p) {
            const Precision pw(p.digits() + 5);
            BigInt km2 = k - 2, kp2 = k + 2, kk = k;
            BigInt num = BigInt(256) * kk * kk * kk * (11 * kk * kk - 12);
            BigInt den = 3 * km2 * km2 * km2 * km2 * kp2 * kp2 * kp2 * kp2;
            BigReal phi = detail::lerch_at(make_rational(2 + k, 2 - k), 2 * k, pw);
            return BigReal(phi * make_rational(num, den), p);
        };
        break;
    }
    return spec;
}

/// Closed part of ln k_0: ln k_0 = constant + sum of the Lerch series.
inline BigReal bethe_constant_part(BetheState state, Precision p)
{
    const BigReal ln2 = const_ln2(p);
    const BigReal z2 = const_zeta(2, p);
    switch (state) {
    case BetheState::s1:
        // ln k_0(1S) = 10 ln 2 - 2 zeta(2) - 1 + b_inf
        return 10L * ln2 - 2L * z2 - 1L;
    case BetheState::s2:
        return BigReal(make_rational(-545, 36), p) + ln2 * make_rational(16, 3) - 14L * z2 +
               24L * const_zeta(3, p);
    case BetheState::p2:
        return BigReal(make_rational(-3437, 2916), p) + ln2 * make_rational(3280, 2187) -
               z2 * make_rational(14, 3) + const_zeta(3, p) * make_rational(136, 9) -
               const_zeta(4, p) * make_rational(64, 3);
    }
    throw std::invalid_argument("unknown Bethe state");
}

struct BetheResult {
    BigReal value;
    BigReal series_limit;
    long order = 0;
    int working_digits = 0;
    /// chi at the final order (log10 of the last estimate change).
    std::optional<BigReal> last_chi;
};

inline constexpr int kMaxBetheDigits = 150;
inline constexpr long kBetheStartOrder = 58;
inline constexpr long kBetheMaxOrder = 400;

struct BetheOptions {
    long start_order = kBetheStartOrder;
    long max_order = kBetheMaxOrder;
    /// When set, evaluate at exactly this order without the convergence check.
    std::optional<long> fixed_order;
};

/// ln k_0 for the given state to `digits` decimals. The series limit is the
/// one-step Neville estimate, starting at order 58 and doubling (capped at 400)
/// until two consecutive estimate changes are below 10^-(digits+2).
inline BetheResult bethe_logarithm(BetheState state, int digits, BetheOptions options = {})
{
    if (digits < 1 || digits > kMaxBetheDigits)
        throw std::invalid_argument("Bethe logarithm digits must be in [1, " + std::to_string(kMaxBetheDigits) + "]");
    const SeriesSpec spec = bethe_series(state);
    long order = options.fixed_order.value_or(options.start_order);
    for (;;) {
        const int working = required_working_digits(order, digits + 2);
        const Precision pw(working);
        PartialSums sums = partial_sums(spec, order, pw);
        TransformResult t = neville_one_step(sums, 0, digits + 2);
        const auto& chi = t.chi;
        auto below = [&](const std::optional<BigReal>& c, int d) { return !c || c->to_double() <= -d; };
        bool converged = false;
        if (options.fixed_order) {
            // a fixed order must at least move the last estimate by less than 10^-digits
            if (!chi.empty() && !below(chi.back(), digits))
                throw PrecisionError("Bethe logarithm " + to_string(state) + " at order " + std::to_string(order) +
                                         " is not converged to " + std::to_string(digits) + " digits",
                                     working);
            converged = true;
        } else if (chi.size() >= 2) {
            converged = below(chi[chi.size() - 1], digits + 2) && below(chi[chi.size() - 2], digits + 2);
        }
        if (converged) {
            BetheResult r{BigReal(pw), t.estimates.back(), order, working, chi.empty() ? std::nullopt : chi.back()};
            r.value = bethe_constant_part(state, pw) + t.estimates.back();
            return r;
        }
        if (order >= options.max_order)
            throw PrecisionError("Bethe logarithm " + to_string(state) + " did not converge to " +
                                     std::to_string(digits) + " digits by order " + std::to_string(order),
                                 working);
        order = std::min(order * 2, options.max_order);
    }
}

/// Series read from decimal lines: terms a_0, a_1, ... or, with
/// `lines_are_partial_sums`, the partial sums s_0, s_1, ... directly.
/// Blank lines and lines starting with '#' are skipped.
inline SeriesSpec series_from_lines(std::istream& in, const std::string& name, bool lines_are_partial_sums = false)
{
    std::vector<std::string> values;
    int min_digits = 0;
    std::string line;
    long line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        auto last = line.find_last_not_of(" \t\r");
        std::string text = line.substr(first, last - first + 1);
        try {
            (void)BigReal::parse(text, Precision(Precision::kMinDigits));
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("line " + std::to_string(line_number) + ": not a decimal number: '" + text +
                                        "'");
        }
        int sig = 0;
        bool leading = true;
        for (char c : text) {
            if (c == 'e' || c == 'E')
                break;
            if (c < '0' || c > '9')
                continue;
            if (leading && c == '0')
                continue;
            leading = false;
            ++sig;
        }
        sig = std::max(sig, 1);
        min_digits = values.empty() ? sig : std::min(min_digits, sig);
        values.push_back(text);
    }
    if (values.empty())
        throw std::invalid_argument("no values in series file");
    SeriesSpec spec;
    spec.name = name;
    spec.available_terms = static_cast<long>(values.size());
    spec.input_digits = min_digits;
    spec.term = [values, lines_are_partial_sums](long k, Precision p) {
        if (k < 0 || k >= static_cast<long>(values.size()))
            throw std::out_of_range("term index beyond the supplied data");
        BigReal v = BigReal::parse(values[static_cast<std::size_t>(k)], p);
        if (lines_are_partial_sums && k > 0)
            v -= BigReal::parse(values[static_cast<std::size_t>(k - 1)], p);
        return v;
    };
    return spec;
}

} // namespace nevacc

#endif // NEVACC_CATALOG_HPP
