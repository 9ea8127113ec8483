// CSV rendering of transform runs. Undefined entries are empty fields.

#ifndef NEVACC_REPORT_HPP
#define NEVACC_REPORT_HPP

#include "nevacc/mpnum.hpp"
#include "nevacc/transforms.hpp"

#include <algorithm>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace nevacc {

inline constexpr int kChiDecimals = 3;

inline std::string format_chi(const std::optional<BigReal>& chi)
{
    return chi ? format_fixed(*chi, kChiDecimals) : std::string();
}

/// n,estimate,chi
inline void write_estimates_csv(std::ostream& out, const TransformResult& t, int digits)
{
    out << "n,estimate,chi\n";
    for (std::size_t n = 0; n < t.estimates.size(); ++n) {
        out << n << ',' << to_string(t.estimates[n], digits) << ',';
        if (n < t.chi.size())
            out << format_chi(t.chi[n]);
        out << '\n';
    }
}

/// Whitespace-aligned variant of the estimates table.
inline void write_estimates_plain(std::ostream& out, const TransformResult& t, int digits)
{
    for (std::size_t n = 0; n < t.estimates.size(); ++n) {
        std::string chi = n < t.chi.size() ? format_chi(t.chi[n]) : std::string();
        out << n << "  " << to_string(t.estimates[n], digits);
        if (!chi.empty())
            out << "  chi=" << chi;
        if (n < t.saturated.size() && t.saturated[n])
            out << "  (saturated)";
        out << '\n';
    }
}

/// Aligned chi columns, one per labelled trajectory: n,chi_<label>,...
inline void write_chi_table_csv(std::ostream& out, const std::vector<std::string>& labels,
                                const std::vector<std::vector<std::optional<BigReal>>>& columns)
{
    out << 'n';
    for (const auto& l : labels)
        out << ",chi_" << l;
    out << '\n';
    std::size_t rows = 0;
    for (const auto& c : columns)
        rows = std::max(rows, c.size());
    for (std::size_t n = 0; n < rows; ++n) {
        out << n;
        for (const auto& c : columns)
            out << ',' << (n < c.size() ? format_chi(c[n]) : std::string());
        out << '\n';
    }
}

/// n,inv_n,d_j for n >= 1.
inline void write_trajectory_csv(std::ostream& out, int j, const std::vector<BigReal>& d, int digits)
{
    out << "j,n,inv_n,d_j\n";
    for (std::size_t n = 1; n < d.size(); ++n) {
        BigReal inv(make_rational(1, static_cast<long>(n)), d[n].precision());
        out << j << ',' << n << ',' << to_string(inv, digits) << ',' << to_string(d[n], digits) << '\n';
    }
}

} // namespace nevacc

#endif // NEVACC_REPORT_HPP
