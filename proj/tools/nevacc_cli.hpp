// Command-line front end. run_cli() is kept separate from main() so the test
// suite can drive it with in-memory streams.

#ifndef NEVACC_TOOLS_CLI_HPP
#define NEVACC_TOOLS_CLI_HPP

#include "nevacc/nevacc.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace nevacc::cli {

enum ExitCode : int { ok = 0, certification_failure = 1, usage_error = 2, precision_failure = 3 };

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    std::string series = "model";
    bool partial_sums = false;
    std::vector<std::string> methods;
    long order = 100;
    int digits = 30;
    std::string output;
    std::string format = "csv";
};

inline const std::vector<std::string>& catalog_names()
{
    static const std::vector<std::string> names{"model", "bethe-1S", "bethe-1S-shifted", "bethe-2S", "bethe-2P"};
    return names;
}

inline SeriesSpec resolve_series(const RunConfig& cfg)
{
    if (cfg.series == "model")
        return model_series();
    if (cfg.series == "bethe-1S")
        return bethe_series(BetheState::s1);
    if (cfg.series == "bethe-1S-shifted")
        return bethe_series(BetheState::s1, BetheForm::shifted);
    if (cfg.series == "bethe-2S")
        return bethe_series(BetheState::s2);
    if (cfg.series == "bethe-2P")
        return bethe_series(BetheState::p2);
    std::ifstream in(cfg.series);
    if (!in)
        throw UsageError("unknown series '" + cfg.series + "' (not a catalog name or readable file)");
    try {
        return series_from_lines(in, std::filesystem::path(cfg.series).filename().string(), cfg.partial_sums);
    } catch (const std::invalid_argument& e) {
        throw UsageError(cfg.series + ": " + e.what());
    }
}

/// Partial sums at the working precision the policy asks for; file-backed
/// series must carry enough digits.
inline PartialSums load_sums(const SeriesSpec& spec, long order, int working_digits)
{
    if (spec.input_digits && *spec.input_digits < working_digits)
        throw PrecisionError("series '" + spec.name + "' supplies " + std::to_string(*spec.input_digits) +
                                 " significant digits; order " + std::to_string(order) + " needs " +
                                 std::to_string(working_digits),
                             working_digits);
    try {
        return partial_sums(spec, order, Precision(working_digits));
    } catch (const std::out_of_range& e) {
        throw UsageError(e.what());
    }
}

class OutputTarget {
public:
    OutputTarget(const std::string& path, std::ostream& fallback) : stream_(&fallback)
    {
        if (!path.empty() && path != "-") {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_)
                throw UsageError("cannot open output file '" + path + "'");
            stream_ = file_.get();
        }
    }
    std::ostream& get() { return *stream_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_;
};

inline void check_common(const RunConfig& cfg)
{
    if (cfg.order < 0)
        throw UsageError("--order must be >= 0");
    if (cfg.digits < 1)
        throw UsageError("--digits must be >= 1");
    if (cfg.format != "csv" && cfg.format != "plain")
        throw UsageError("--format must be csv or plain");
}

inline Method method_or_throw(const std::string& name)
{
    auto m = parse_method(name);
    if (!m)
        throw UsageError("unknown method '" + name + "'");
    return *m;
}

inline std::string column_label(Method m)
{
    switch (m) {
    case Method::neville_one_step: return "neville";
    case Method::neville_recursive: return "neville_recursive";
    case Method::wynn_epsilon: return "wynn";
    case Method::aitken_iterated: return "aitken";
    }
    return "?";
}

inline int cmd_accelerate(const RunConfig& cfg, std::ostream& out)
{
    check_common(cfg);
    const Method method = method_or_throw(cfg.methods.empty() ? "neville-one-step" : cfg.methods.front());
    const SeriesSpec spec = resolve_series(cfg);
    const int working = required_working_digits(cfg.order, cfg.digits);
    PartialSums sums = load_sums(spec, cfg.order, working);
    TransformResult t = method == Method::neville_one_step ? neville_one_step(sums, 0, cfg.digits)
                                                           : transform(method, sums);
    OutputTarget target(cfg.output, out);
    if (cfg.format == "csv")
        write_estimates_csv(target.get(), t, cfg.digits);
    else
        write_estimates_plain(target.get(), t, cfg.digits);
    return ok;
}

inline int cmd_compare(const RunConfig& cfg, std::ostream& out)
{
    check_common(cfg);
    std::vector<std::string> names = cfg.methods;
    if (names.empty())
        names = {"neville-one-step", "wynn-epsilon", "aitken-iterated"};
    if (names.size() < 2)
        throw UsageError("compare needs at least two methods");
    std::vector<Method> methods;
    for (const auto& n : names)
        methods.push_back(method_or_throw(n));
    const SeriesSpec spec = resolve_series(cfg);
    const int working = required_working_digits(cfg.order, cfg.digits);
    PartialSums sums = load_sums(spec, cfg.order, working);

    std::vector<std::string> labels{"series"};
    std::vector<std::vector<std::optional<BigReal>>> columns{chi_diagnostic(sums.values())};
    for (Method m : methods) {
        labels.push_back(column_label(m));
        columns.push_back(transform(m, sums).chi);
    }
    OutputTarget target(cfg.output, out);
    write_chi_table_csv(target.get(), labels, columns);
    return ok;
}

struct CoeffsConfig {
    int j_max = 4;
    long max_den = 100000;
    std::string trajectories;
};

inline int cmd_coeffs(const RunConfig& cfg, const CoeffsConfig& cc, std::ostream& out)
{
    check_common(cfg);
    if (cc.j_max < 0)
        throw UsageError("--jmax must be >= 0");
    if (cc.j_max > kMaxClosedFormRow)
        throw UnsupportedClosedForm("--jmax " + std::to_string(cc.j_max) + " exceeds the closed-form rows (max " +
                                    std::to_string(kMaxClosedFormRow) + ")");
    if (cc.j_max > cfg.order)
        throw UsageError("--jmax must not exceed --order");
    const SeriesSpec spec = resolve_series(cfg);
    const int working = required_working_digits(cfg.order, cfg.digits, cc.j_max);
    PartialSums sums = load_sums(spec, cfg.order, working);
    TransformResult t = neville_one_step(sums, cc.j_max, cfg.digits);

    // Accuracy of c_j(n) estimated from the change since order n - 4.
    std::optional<TransformResult> earlier;
    if (cfg.order - 4 >= cc.j_max)
        earlier = neville_one_step(sums.prefix(cfg.order - 4), cc.j_max);

    OutputTarget target(cfg.output, out);
    std::ostream& o = target.get();
    const bool csv = cfg.format == "csv";
    if (csv)
        o << "j,value,accurate_digits,form,residual\n";
    for (const auto& [j, value] : t.coefficients) {
        int accurate = cfg.digits;
        if (earlier) {
            BigReal change = value - earlier->coefficients.at(j);
            if (!change.is_zero())
                accurate = std::min(accurate, std::max(0, static_cast<int>(-log10_abs(change)) - 1));
        }
        RecognizedForm form = recognize_form(value, cc.max_den, accurate);
        std::string residual = form.kind == FormKind::none ? "" : to_string(form.residual, 2);
        if (csv)
            o << j << ',' << to_string(value, cfg.digits) << ',' << accurate << ',' << form.describe() << ','
              << residual << '\n';
        else
            o << "c_" << j << " = " << to_string(value, cfg.digits) << "  [" << form.describe() << "]\n";
    }

    if (!cc.trajectories.empty()) {
        OutputTarget traj(cc.trajectories, out);
        std::vector<BigReal> known;
        for (int j = 1; j <= cc.j_max; ++j) {
            known.push_back(t.coefficients.at(j - 1));
            write_trajectory_csv(traj.get(), j, d_estimator(sums, known, j), std::min(cfg.digits, 20));
        }
    }
    return ok;
}

inline int cmd_bethe(const std::string& label, int digits, std::optional<long> order, std::ostream& out)
{
    auto state = parse_bethe_state(label);
    if (!state)
        throw UsageError("unsupported state '" + label + "' (expected 1S, 2S or 2P)");
    if (digits < 1 || digits > kMaxBetheDigits)
        throw UsageError("--digits must be in [1, " + std::to_string(kMaxBetheDigits) + "]");
    BetheOptions options;
    options.fixed_order = order;
    BetheResult r = bethe_logarithm(*state, digits, options);
    out << format_fixed(r.value, digits) << '\n';
    return ok;
}

struct LerchConfig {
    std::string z;
    long s = 1;
    long a = 1;
    int digits = 30;
    std::string method = "auto";
};

inline int cmd_lerch(const LerchConfig& lc, std::ostream& out)
{
    if (lc.digits < Precision::kMinDigits)
        throw UsageError("--digits must be >= " + std::to_string(Precision::kMinDigits));
    const Precision p(lc.digits);
    ExactRational zq;
    try {
        zq = parse_rational(lc.z);
    } catch (const std::invalid_argument& e) {
        throw UsageError("--z: " + std::string(e.what()));
    }
    LerchArgs args{BigReal(zq, Precision(lc.digits + 10)), lc.s, lc.a};
    BigReal v(p);
    if (lc.method == "auto")
        v = lerch_phi(args, p);
    else if (lc.method == "direct")
        v = lerch_phi_direct(args, p);
    else if (lc.method == "transformed")
        v = lerch_phi_transformed(args, p);
    else
        throw UsageError("--method must be auto, direct or transformed");
    out << to_string_significant(v, lc.digits) << '\n';
    return ok;
}

inline int print_certification(const CertificationReport& report, std::ostream& out);

inline int cmd_verify_weights(long n_max, std::ostream& out)
{
    if (n_max < kMaxClosedFormRow)
        throw UsageError("--n-max must be >= " + std::to_string(kMaxClosedFormRow));
    return print_certification(certify_weights(n_max), out);
}

inline int print_certification(const CertificationReport& report, std::ostream& out)
{
    out << "closed-form weights against the exact Vandermonde inverse, n <= " << report.n_max << '\n';
    for (const auto& row : report.rows) {
        out << "row " << row.j << ": " << to_string(row.status);
        if (!row.mismatches.empty())
            out << " (" << row.mismatches.size() << " mismatching weights, first at n=" << row.mismatches.front().n
                << " i=" << row.mismatches.front().i << ")";
        if (!row.note.empty())
            out << " - " << row.note;
        out << '\n';
    }
    return report.all_resolved() ? ok : certification_failure;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Convergence acceleration of slowly convergent series"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string method;
    auto add_run_options = [&](CLI::App* sub) {
        sub->add_option("--series", cfg.series, "catalog series (" + [] {
            std::string s;
            for (const auto& n : catalog_names())
                s += (s.empty() ? "" : ", ") + n;
            return s;
        }() + ") or a file of decimal terms");
        sub->add_flag("--partial-sums", cfg.partial_sums, "file lines are partial sums, not terms");
        sub->add_option("--order", cfg.order, "transformation order n");
        sub->add_option("--digits", cfg.digits, "output digits");
        sub->add_option("--output,-o", cfg.output, "output path (default stdout)");
        sub->add_option("--format", cfg.format, "csv or plain");
    };

    auto* accelerate = app.add_subcommand("accelerate", "per-order estimates and chi");
    add_run_options(accelerate);
    accelerate->add_option("--method", method, "neville-one-step, neville-recursive, wynn-epsilon, aitken-iterated");

    auto* compare = app.add_subcommand("compare", "chi trajectories of several methods");
    add_run_options(compare);
    compare->add_option("--methods", cfg.methods, "comma-separated methods")->delimiter(',');

    CoeffsConfig cc;
    auto* coeffs = app.add_subcommand("coeffs", "subleading coefficients c_j(n) with recognized forms");
    add_run_options(coeffs);
    coeffs->add_option("--jmax", cc.j_max, "highest coefficient index (<= 10)");
    coeffs->add_option("--max-den", cc.max_den, "largest denominator tried by recognition");
    coeffs->add_option("--trajectories", cc.trajectories, "write d_j(n) trajectories to this path");

    std::string state;
    int bethe_digits = 50;
    std::optional<long> bethe_order;
    auto* bethe = app.add_subcommand("bethe", "hydrogen Bethe logarithm ln k_0");
    bethe->add_option("state", state, "1S, 2S or 2P")->required();
    bethe->add_option("--digits", bethe_digits, "decimals (<= 150)");
    bethe->add_option("--order", bethe_order, "fixed transformation order");

    LerchConfig lc;
    auto* lerch = app.add_subcommand("lerch", "Lerch transcendent Phi(z, s, a)");
    lerch->add_option("--z", lc.z, "argument, decimal or p/q")->required();
    lerch->add_option("--s", lc.s, "integer s >= 1");
    lerch->add_option("--a", lc.a, "integer a >= 1");
    lerch->add_option("--digits", lc.digits, "significant digits");
    lerch->add_option("--method", lc.method, "auto, direct or transformed");

    long n_max = 40;
    auto* verify = app.add_subcommand("verify-weights", "certify closed-form weights against exact inverses");
    verify->add_option("--n-max", n_max, "largest order checked (>= 10)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? ok : usage_error;
    }

    try {
        if (accelerate->parsed()) {
            if (!method.empty())
                cfg.methods = {method};
            return cmd_accelerate(cfg, out);
        }
        if (compare->parsed())
            return cmd_compare(cfg, out);
        if (coeffs->parsed())
            return cmd_coeffs(cfg, cc, out);
        if (bethe->parsed())
            return cmd_bethe(state, bethe_digits, bethe_order, out);
        if (lerch->parsed())
            return cmd_lerch(lc, out);
        if (verify->parsed())
            return cmd_verify_weights(n_max, out);
    } catch (const PrecisionError& e) {
        err << "precision: " << e.what() << " (required working digits: " << e.required_digits() << ")\n";
        return precision_failure;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const std::domain_error& e) {
        err << "domain error: " << e.what() << '\n';
        return usage_error;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    }
    return usage_error;
}

} // namespace nevacc::cli

#endif // NEVACC_TOOLS_CLI_HPP
