// Acceptance run: one PASS/FAIL line per criterion. A FAIL marked "known" is a
// documented mismatch with a printed value and does not change the exit status.

#include "oracles.hpp"

#include "nevacc/nevacc.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace nevacc;

namespace {

struct Outcome {
    bool pass = true;
    bool known = false;
    std::string detail;
};

std::string sci(const BigReal& x) { return to_string_significant(x, 3); }

bool within(const BigReal& a, const BigReal& b, int digits)
{
    return abs(a - b) < oracle::tolerance(digits, a.precision());
}

Outcome model_limit()
{
    const long n = 100;
    const SeriesSpec spec = model_series();
    const Precision p(required_working_digits(n, 50));
    std::string got = format_fixed(neville_one_step(partial_sums(spec, n, p)).estimates.back(), 50);
    Outcome o;
    o.pass = got == *spec.known_limit;
    o.detail = "order 100 gives " + got;
    return o;
}

Outcome model_coefficients()
{
    const long n = 100;
    const SeriesSpec spec = model_series();
    const Precision p(required_working_digits(n, 30, 10));
    TransformResult t = neville_one_step(partial_sums(spec, n, p), 10, 30);
    // closed forms as printed
    const std::map<int, ClosedForm> printed = {
        {1, {-1, 0}},
        {2, {make_rational(1, 2), 1}},
        {3, {make_rational(-1, 6), -2}},
        {4, {0, make_rational(37, 12)}},
        {5, {make_rational(1, 30), make_rational(-131, 30)}},
        {6, {0, make_rational(268, 45)}},
        {7, {make_rational(-1, 42), make_rational(-549, 70)}},
        {8, {0, make_rational(98347, 10000)}},
        {9, {make_rational(-1, 30), make_rational(-9253, 840)}},
        {10, {0, make_rational(66011, 6300)}},
    };
    Outcome o;
    std::ostringstream bad;
    bool all_known = true;
    for (const auto& [j, form] : printed) {
        const int digits = j == 1 ? 20 : j <= 4 ? 15 : 10;
        const BigReal& c = t.coefficients.at(j);
        if (within(c, form.value(p), digits))
            continue;
        o.pass = false;
        const bool derived_ok = within(c, spec.known_coeffs.at(j).value(p), digits);
        all_known = all_known && derived_ok;
        bad << " c_" << j << "(100)=" << to_string_significant(c, 15) << " vs printed "
            << to_string_significant(form.value(p), 15) << (derived_ok ? " (matches derived form)" : "") << ';';
    }
    if (o.pass) {
        o.detail = "c_1..c_10 within tolerance";
    } else {
        o.known = all_known;
        o.detail = "printed forms miss:" + bad.str();
    }
    return o;
}

Outcome chi_comparison()
{
    const long n = 61;
    const SeriesSpec spec = model_series();
    const Precision p(required_working_digits(n, 80));
    PartialSums s = partial_sums(spec, n, p);
    auto chi_n = neville_one_step(s).chi;
    auto chi_w = wynn_epsilon(s).chi;
    auto chi_a = aitken_iterated(s).chi;
    Outcome o;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (long k = 10; k <= 60; ++k) {
        if (!chi_n[static_cast<std::size_t>(k)]) {
            o.pass = false;
            o.detail = "neville chi undefined at " + std::to_string(k);
            return o;
        }
        const double y = chi_n[static_cast<std::size_t>(k)]->to_double();
        sx += k;
        sy += y;
        sxx += double(k) * k;
        sxy += k * y;
        ++count;
    }
    const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    if (!chi_w[60] || !chi_a[60]) {
        o.pass = false;
        o.detail = "wynn or aitken chi undefined at 60";
        return o;
    }
    const double cn = chi_n[60]->to_double(), cw = chi_w[60]->to_double(), ca = chi_a[60]->to_double();
    o.pass = slope >= -1.5 && slope <= -0.6 && cw - cn >= 25 && ca - cn >= 25;
    std::ostringstream d;
    d.precision(4);
    d << "slope " << slope << ", chi(60): neville " << cn << ", wynn " << cw << ", aitken " << ca;
    o.detail = d.str();
    return o;
}

Outcome bethe_logarithms()
{
    Outcome o;
    std::ostringstream d;
    bool only_final_digit = true;
    for (BetheState s : {BetheState::s1, BetheState::s2, BetheState::p2}) {
        BetheResult r = bethe_logarithm(s, 100);
        const std::string got = format_fixed(r.value, 100);
        const std::string want = bethe_reference_value(s);
        d << to_string(s) << " order " << r.order;
        if (got == want) {
            d << " ok; ";
            continue;
        }
        o.pass = false;
        std::size_t at = 0;
        while (at < got.size() && at < want.size() && got[at] == want[at])
            ++at;
        if (at + 1 != want.size() || got.size() != want.size())
            only_final_digit = false;
        d << " differs from position " << at << " (computed ..." << got.substr(at > 10 ? at - 10 : 0) << ", printed ..."
          << want.substr(at > 10 ? at - 10 : 0) << "); ";
    }
    BetheOptions at58;
    at58.fixed_order = 58;
    const std::string s50 = format_fixed(bethe_logarithm(BetheState::s1, 50, at58).value, 50);
    const std::string w50 = bethe_reference_value(BetheState::s1).substr(0, 52);
    if (s50 == w50) {
        d << "1S to 50 digits at order 58 ok";
    } else {
        o.pass = false;
        only_final_digit = false;
        d << "1S at order 58 gives " << s50;
    }
    if (!o.pass)
        o.known = only_final_digit;
    o.detail = d.str();
    return o;
}

Outcome bethe_coefficients()
{
    const long n = 120;
    const int digits = 60;
    const SeriesSpec spec = bethe_series(BetheState::s1, BetheForm::shifted);
    const Precision p(required_working_digits(n, digits, 10));
    PartialSums s = partial_sums(spec, n, p);
    TransformResult top = neville_one_step(s, 10, digits);
    TransformResult lower = neville_one_step(s.prefix(n - 4), 10, digits);
    Outcome o;
    std::ostringstream d;
    for (int j = 3; j <= 10; ++j) {
        const BigReal& c = top.coefficients.at(j);
        const int accurate = std::max(0, static_cast<int>(-log10_abs(c - lower.coefficients.at(j))) - 2);
        RecognizedForm f = recognize_form(c, 100000, accurate);
        const bool ok = f.kind == FormKind::rational && f.rational == spec.known_coeffs.at(j).rational &&
                        f.residual < oracle::tolerance(30, f.residual.precision());
        o.pass = o.pass && ok;
        d << "c_" << j << "=" << f.describe() << " (" << sci(f.residual) << ")" << (j < 10 ? ", " : "");
    }
    o.detail = d.str();
    return o;
}

Outcome weight_certification()
{
    const long n_max = 40;
    CertificationReport report = certify_weights(n_max);
    Outcome o;
    std::ostringstream d;
    for (const auto& row : report.rows) {
        if (row.status == RowStatus::corrupted || !row.mismatches.empty())
            o.pass = false;
        if (row.status == RowStatus::repaired)
            d << "row " << row.j << " repaired; ";
    }
    for (long n = 0; n <= n_max && o.pass; ++n) {
        const int top = static_cast<int>(std::min<long>(n, kMaxClosedFormRow));
        std::vector<ExactRational> x(static_cast<std::size_t>(n + 1));
        for (long i = 0; i <= n; ++i)
            x[static_cast<std::size_t>(i)] = make_rational(1, i + 1);
        for (int j = 0; j <= top && o.pass; ++j) {
            WeightRow w = closed_form_weights(n, j);
            if (w != oracle_weights(n, j)) {
                o.pass = false;
                d << "n=" << n << " j=" << j << " differs from the exact inverse";
                break;
            }
            std::vector<ExactRational> xp(w.size(), ExactRational(1));
            for (int jp = 0; jp <= top; ++jp) {
                ExactRational acc = 0;
                for (std::size_t i = 0; i < w.size(); ++i) {
                    acc += w[i] * xp[i];
                    xp[i] *= x[i];
                }
                if (acc != (j == jp ? 1 : 0)) {
                    o.pass = false;
                    d << "row identity fails at n=" << n << " j=" << j << " j'=" << jp;
                    break;
                }
            }
        }
    }
    if (o.pass)
        d << "n <= 40 exact, row identity exact";
    o.detail = d.str();
    return o;
}

Outcome path_equivalence()
{
    oracle::Generator gen(20240601);
    Outcome o;
    int cases = 0;
    for (long n : {5L, 10L, 20L, 40L}) {
        const Precision p(required_working_digits(n, 20));
        const BigReal tol = oracle::tolerance(p.digits() - condition_digits(n, 0) - 2, p);
        for (int trial = 0; trial < 100; ++trial) {
            PartialSums s(gen.bounded_sequence(static_cast<std::size_t>(n + 1), p));
            BigReal diff = abs(neville_one_step(s).estimates.back() - neville_recursive(s).estimates.back());
            if (!(diff < tol)) {
                o.pass = false;
                o.detail = "n=" + std::to_string(n) + " differs by " + sci(diff);
                return o;
            }
            ++cases;
        }
    }
    o.detail = std::to_string(cases) + " sequences within the condition-number tolerance";
    return o;
}

Outcome shanks_exactness()
{
    oracle::Generator gen(8128);
    const int output = 30;
    const Precision p(output + 15);
    const Precision out(output);
    Outcome o;
    for (int trial = 0; trial < 50; ++trial) {
        ExactRational sigma = gen.uniform(-10, 10);
        ExactRational alpha = gen.nonzero_rational(100, 9);
        ExactRational lambda = gen.uniform(make_rational(1, 10), make_rational(95, 100));
        if (gen.integer(0, 1) == 1)
            lambda = -lambda;
        std::vector<BigReal> v;
        ExactRational power = 1;
        for (int k = 0; k < 3; ++k, power *= lambda)
            v.emplace_back(sigma + alpha * power, p);
        PartialSums s(std::move(v));
        const BigReal target(sigma, out);
        const BigReal ulp = abs(target) * pow(BigReal(2L, out), -(out.bits() - 1));
        BigReal w(wynn_epsilon(s).estimates[2], out);
        BigReal a(aitken_iterated(s).estimates[2], out);
        if (abs(w - target) > 2L * ulp || abs(a - target) > 2L * ulp) {
            o.pass = false;
            o.detail = "sigma=" + to_string(sigma) + " lambda=" + to_string(lambda) + " missed";
            return o;
        }
    }
    o.detail = "50 cases within 2 ulp at 30 digits";
    return o;
}

Outcome lerch_cross_validation()
{
    const int digits = 30;
    const Precision p(digits);
    const Precision fine(digits + 15);
    Outcome o;
    int points = 0;
    BigReal worst(0L, fine);
    for (int iz = 0; iz < 5; ++iz) {
        const ExactRational zq = ExactRational(-3) + make_rational(iz, 2);
        for (long a : {2L, 11L, 20L, 31L, 40L}) {
            BigReal phi(lerch_phi_transformed({BigReal(zq, p), 1, a}, p), fine);
            BigReal exact = oracle::lerch_integral(BigReal(zq, fine), a, fine.digits(), fine);
            BigReal rel = abs(phi - exact) / abs(exact);
            if (rel > worst)
                worst = rel;
            if (!(rel < oracle::tolerance(digits - 1, fine))) {
                o.pass = false;
                o.detail = "z=" + to_string(zq) + " a=" + std::to_string(a) + " relative error " + sci(rel);
                return o;
            }
            const Precision pr(45);
            BigReal z(zq, pr);
            BigReal lhs = lerch_phi({z, 1, a}, pr);
            BigReal rhs = z * lerch_phi({z, 1, a + 1}, pr) + 1L / BigReal(a, pr);
            if (!(abs(lhs - rhs) <= abs(lhs) * oracle::tolerance(pr.digits() - 3, pr))) {
                o.pass = false;
                o.detail = "recurrence fails at z=" + to_string(zq) + " a=" + std::to_string(a);
                return o;
            }
            ++points;
        }
    }
    o.detail = std::to_string(points) + " grid points, worst relative error " + sci(worst);
    return o;
}

Outcome tail_oracle()
{
    const Precision p(50);
    Outcome o;
    for (long a = 2; a <= 6; ++a) {
        const BigReal zeta = oracle::zeta(a, p);
        for (long n = 0; n <= 100; ++n) {
            BigReal total = tail_sum_oracle(a, n, p) + oracle::power_sum(a, n);
            if (!(abs(total - zeta) <= zeta * oracle::tolerance(p.digits() - 3, p))) {
                o.pass = false;
                o.detail = "a=" + std::to_string(a) + " n=" + std::to_string(n) + " off by " + sci(abs(total - zeta));
                return o;
            }
        }
    }
    o.detail = "a=2..6, n=0..100 agree with zeta(a) at 50 digits";
    return o;
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"model series limit", model_limit},
        {"model series coefficients", model_coefficients},
        {"chi trajectories", chi_comparison},
        {"Bethe logarithms", bethe_logarithms},
        {"Bethe rational coefficients", bethe_coefficients},
        {"weight certification", weight_certification},
        {"path equivalence", path_equivalence},
        {"Shanks/Aitken exactness", shanks_exactness},
        {"Lerch cross-validation", lerch_cross_validation},
        {"tail oracle", tail_oracle},
    };
    int unexpected = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::ostringstream t;
        t.precision(3);
        t << secs;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << criteria[i].first
                  << "): " << o.detail << (o.known ? " [known, see notes]" : "") << " [" << t.str() << " s]"
                  << std::endl;
        if (!o.pass && !o.known)
            ++unexpected;
    }
    return unexpected == 0 ? 0 : 1;
}
