#include "hyplab/families.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <mutex>

namespace hyplab {

namespace {

const std::map<std::string_view, Family>& tag_table()
{
    static const std::map<std::string_view, Family> table{
        {"cheb1", Family::chebyshev1}, {"chebyshev1", Family::chebyshev1},
        {"gencheb", Family::gencheb},  {"cosh", Family::cosh},
        {"grinspun", Family::grinspun}, {"km", Family::km},
        {"modkm", Family::modkm},      {"thm32", Family::thm32},
        {"convex", Family::convex},
    };
    return table;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

double lookup(const ParamList& params, std::string_view key, std::string_view family)
{
    for (const auto& [k, v] : params)
        if (k == key)
            return v;
    throw SpecParseError(std::string(family) + ": missing parameter '" + std::string(key) + "'");
}

double lookup_or(const ParamList& params, std::string_view key, double fallback)
{
    for (const auto& [k, v] : params)
        if (k == key)
            return v;
    return fallback;
}

// Shortest form that parses back to the same double.
std::string fmt(double v)
{
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

void require(bool ok, const std::string& message)
{
    if (!ok)
        throw ParameterDomainError(message);
}

} // namespace

double parse_number(std::string_view text)
{
    text = trim(text);
    auto parse_one = [](std::string_view t) {
        t = trim(t);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
            throw SpecParseError("not a number: '" + std::string(t) + "'");
        return v;
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return parse_one(text);
    const double den = parse_one(text.substr(slash + 1));
    if (den == 0.0)
        throw SpecParseError("zero denominator in '" + std::string(text) + "'");
    return parse_one(text.substr(0, slash)) / den;
}

FamilySpec parse_family_spec(std::string_view text)
{
    text = trim(text);
    const auto colon = text.find(':');
    const std::string_view tag = trim(text.substr(0, colon));
    const auto it = tag_table().find(tag);
    if (it == tag_table().end())
        throw SpecParseError("unknown family tag '" + std::string(tag) + "'");

    FamilySpec spec;
    spec.tag = it->second;
    if (colon == std::string_view::npos)
        return spec;

    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const std::string_view item = trim(rest.substr(0, comma));
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        if (item.empty())
            continue;
        const auto eq = item.find('=');
        if (eq == std::string_view::npos)
            throw SpecParseError("expected key=value, got '" + std::string(item) + "'");
        const std::string key(trim(item.substr(0, eq)));
        const double value = parse_number(item.substr(eq + 1));
        if (key == "unchecked") {
            spec.unchecked = value != 0.0;
            continue;
        }
        for (const auto& [k, v] : spec.params)
            if (k == key)
                throw SpecParseError("duplicate parameter '" + key + "'");
        spec.params.emplace_back(key, value);
    }
    return spec;
}

std::string format_family_spec(const FamilySpec& spec)
{
    std::string out(family_tag(spec.tag));
    char sep = ':';
    for (const auto& [k, v] : spec.params) {
        out += sep;
        out += k + "=" + fmt(v);
        sep = ',';
    }
    if (spec.unchecked)
        out += std::string(1, sep) + "unchecked=1";
    return out;
}

CoeffSequence make_family(const FamilySpec& spec)
{
    const auto name = family_tag(spec.tag);
    auto allow = [&](std::initializer_list<std::string_view> keys) {
        for (const auto& [k, v] : spec.params) {
            bool known = false;
            for (auto key : keys)
                known = known || k == key;
            if (!known)
                throw SpecParseError(std::string(name) + ": unknown parameter '" + k + "'");
        }
    };
    const auto& p = spec.params;
    switch (spec.tag) {
    case Family::chebyshev1:
        allow({});
        return chebyshev1();
    case Family::gencheb:
        allow({"alpha", "beta"});
        return generalized_chebyshev(lookup(p, "alpha", name), lookup(p, "beta", name), spec.unchecked);
    case Family::cosh:
        allow({"a"});
        return cosh_family(lookup(p, "a", name));
    case Family::grinspun:
        allow({"c1"});
        return grinspun(lookup(p, "c1", name));
    case Family::km:
        allow({"alpha", "beta"});
        return karlin_mcgregor(lookup(p, "alpha", name), lookup(p, "beta", name), spec.unchecked);
    case Family::modkm:
        allow({"alpha", "beta"});
        return modified_km(lookup(p, "alpha", name), lookup(p, "beta", name), spec.unchecked);
    case Family::thm32:
        allow({});
        return thm32_family();
    case Family::convex: {
        allow({"eps", "s0", "q"});
        const double q = lookup_or(p, "q", 0.5);
        const bool has_eps = lookup_or(p, "eps", -1.0) != -1.0;
        const bool has_s0 = lookup_or(p, "s0", -1.0) != -1.0;
        if (has_eps == has_s0)
            throw SpecParseError("convex: give exactly one of eps or s0");
        if (has_eps)
            return convex_family_for_epsilon(lookup(p, "eps", name), q);
        return convex_family(ConvexSeqSpec::geometric(lookup(p, "s0", name), q));
    }
    case Family::custom:
        break;
    }
    throw UnsupportedFamilyError("make_family: custom sequences have no spec-string form");
}

CoeffSequence make_family(std::string_view text)
{
    return make_family(parse_family_spec(text));
}

CoeffSequence chebyshev1()
{
    return CoeffSequence(Family::chebyshev1, {}, [](int) { return 0.5; }, "Chebyshev polynomials of the first kind");
}

CoeffSequence generalized_chebyshev(double alpha, double beta, bool unchecked)
{
    if (!unchecked)
        require(alpha > -1.0 && beta > -1.0, "gencheb: requires alpha > -1 and beta > -1");
    auto c = [alpha, beta](int n) {
        const int k = (n + 1) / 2;
        return n % 2 == 1 ? (k + beta) / (2 * k + alpha + beta) : k / (2 * k + alpha + beta + 1.0);
    };
    return CoeffSequence(Family::gencheb, {{"alpha", alpha}, {"beta", beta}}, c,
                         "generalized Chebyshev polynomials (alpha=" + fmt(alpha) + ", beta=" + fmt(beta) + ")");
}

CoeffSequence cosh_family(double a)
{
    require(a > 0.0 && std::isfinite(a), "cosh: requires a > 0");
    // cosh(a(n-1)) / (2 cosh(an) cosh a) with the growing exponentials divided out.
    auto c = [a](int n) {
        return std::exp(-a) * (1.0 + std::exp(-2.0 * a * (n - 1))) /
               (2.0 * std::cosh(a) * (1.0 + std::exp(-2.0 * a * n)));
    };
    return CoeffSequence(Family::cosh, {{"a", a}}, c, "cosh family (a=" + fmt(a) + ")");
}

CoeffSequence grinspun(double c1)
{
    require(c1 > 0.0 && c1 < 1.0, "grinspun: requires c1 in (0,1)");
    auto c = [c1](int n) { return n == 1 ? c1 : 0.5; };
    return CoeffSequence(Family::grinspun, {{"c1", c1}}, c, "Grinspun family (c1=" + fmt(c1) + ")");
}

CoeffSequence karlin_mcgregor(double alpha, double beta, bool unchecked)
{
    if (unchecked)
        require(alpha > 1.0 && beta > 1.0, "km: coefficients leave (0,1) unless alpha, beta > 1");
    else
        require(alpha >= 2.0 && beta >= 2.0, "km: requires alpha >= 2 and beta >= 2");
    auto c = [alpha, beta](int n) { return n % 2 == 1 ? 1.0 / alpha : 1.0 / beta; };
    return CoeffSequence(Family::km, {{"alpha", alpha}, {"beta", beta}}, c,
                         "Karlin-McGregor polynomials (alpha=" + fmt(alpha) + ", beta=" + fmt(beta) + ")");
}

CoeffSequence modified_km(double alpha, double beta, bool unchecked)
{
    if (unchecked)
        require(alpha > 1.0 && beta > 1.0, "modkm: formulas need alpha, beta > 1");
    else
        require(alpha >= 2.0 && beta >= 2.0, "modkm: requires alpha >= 2 and beta >= 2");
    const double A = std::sqrt(alpha - 1.0);
    const double B = std::sqrt(beta - 1.0);
    const double D = (alpha - 2.0) * B + (beta - 2.0) * A;
    const double E = A * B - 1.0;
    auto c = [=](int n) {
        const int k = (n + 1) / 2;
        if (n % 2 == 1)
            return B / (A + B) * (1.0 - A * E / (D * k + A + B));
        return A / (A + B) * (1.0 - B * E / (D * k + beta * A));
    };
    return CoeffSequence(Family::modkm, {{"alpha", alpha}, {"beta", beta}}, c,
                         "modified Karlin-McGregor polynomials (alpha=" + fmt(alpha) + ", beta=" + fmt(beta) + ")");
}

CoeffSequence thm32_family()
{
    auto c = [](int n) {
        const double k = (n + 1) / 2;
        return n % 2 == 1 ? (6.0 * k + 4.0) / (9.0 * k + 9.0) : (k + 1.0) / (3.0 * k + 5.0);
    };
    return CoeffSequence(Family::thm32, {}, c, "h(1) = 9/5 family");
}

KMParams km_params(double alpha, double beta)
{
    require(alpha >= 2.0 && beta >= 2.0, "km_params: requires alpha >= 2 and beta >= 2");
    const double A = std::sqrt(alpha - 1.0);
    const double B = std::sqrt(beta - 1.0);
    const double r = std::sqrt(alpha * beta);
    return {alpha, beta, (A + B) / r, std::abs(A - B) / r};
}

double ConvexSeqSpec::lambda(int n) const
{
    if (n < 0)
        throw std::out_of_range("ConvexSeqSpec::lambda: index must be >= 0");
    const int k = n / 2;
    return n % 2 == 0 ? 1.0 - s(k) : s(k + 1) - s(k + 2);
}

double ConvexSeqSpec::gap(int n) const
{
    if (n < 1)
        throw std::out_of_range("ConvexSeqSpec::gap: index must be >= 1");
    const int k = n / 2;
    return n % 2 == 0 ? s(k + 1) : s(k) - s(k + 1) + s(k + 2);
}

ConvexSeqSpec ConvexSeqSpec::geometric(double s0, double q)
{
    require(s0 > 0.0 && s0 < 1.0, "convex: requires s0 in (0,1)");
    require(q > 0.0 && q < 1.0, "convex: requires q in (0,1)");
    return {[s0, q](int k) { return s0 * std::pow(q, k); },
            "geometric s_n = " + fmt(s0) + " * " + fmt(q) + "^n"};
}

void validate_convex(const ConvexSeqSpec& spec, int probe)
{
    for (int k = 0; k <= probe; ++k) {
        const double s0 = spec.s(k), s1 = spec.s(k + 1), s2 = spec.s(k + 2);
        const std::string at = " at n=" + std::to_string(k);
        require(s0 > 0.0 && s0 < 1.0, "convex: s_n outside (0,1)" + at);
        require(s1 < s0, "convex: s not strictly decreasing" + at);
        require(2.0 * s1 <= s0 + s2, "convex: s not convex" + at);
    }
    // lambda_{2k} = 1 - s_k rounds to 1 for large k, so its range follows from s_k in (0,1).
    for (int n = 1; n <= 2 * probe; n += 2) {
        const double l = spec.lambda(n);
        require(l > 0.0 && l < 1.0, "convex: lambda_n outside (0,1) at n=" + std::to_string(n));
    }
    // lambda_{2n-2} + lambda_{2n-1} <= lambda_{2n} is convexity of s; the second
    // condition holds with equality, so only round-off is tested.
    for (int n = 1; n <= probe; ++n) {
        const double slack = spec.lambda(2 * n + 2) - spec.lambda(2 * n - 1) - spec.lambda(2 * n);
        require(slack >= -1e-15, "convex: lambda_{2n-1} + lambda_{2n} > lambda_{2n+2} at n=" + std::to_string(n));
    }
}

namespace {

/**
 * t_n = Q_n(1)/Q_{n-1}(1) - 1, extended on demand:
 * t_1 = s_0/lambda_0, t_{n+1} = (gap_n + lambda_{n-1} t_n/(1+t_n)) / lambda_n.
 * Every term is positive, so c_n = lambda_{n-1}/(1+t_n) and
 * a_n = lambda_n (1+t_{n+1}) keep full relative accuracy even where c_n ~ 1.
 */
class ConvexRatios {
public:
    explicit ConvexRatios(ConvexSeqSpec spec) : spec_(std::move(spec)) {}

    long double t(int n)
    {
        std::lock_guard lock(mutex_);
        if (t_.empty()) {
            t_.push_back(0.0L);
            t_.push_back(static_cast<long double>(spec_.s(0)) / spec_.lambda(0));
        }
        while (static_cast<int>(t_.size()) <= n) {
            const int m = static_cast<int>(t_.size()) - 1;
            const long double tm = t_.back();
            const long double lm = spec_.lambda(m);
            const long double lp = spec_.lambda(m - 1);
            t_.push_back((spec_.gap(m) + lp * tm / (1.0L + tm)) / lm);
        }
        return t_[n];
    }

    const ConvexSeqSpec& spec() const { return spec_; }

private:
    ConvexSeqSpec spec_;
    std::mutex mutex_;
    std::vector<long double> t_;
};

} // namespace

Eigen::VectorXd convex_q_at_one(const ConvexSeqSpec& spec, int N)
{
    ConvexRatios r(spec);
    Eigen::VectorXd q(N + 1);
    long double acc = 1.0L;
    q(0) = 1.0;
    for (int n = 1; n <= N; ++n) {
        acc *= 1.0L + r.t(n);
        q(n) = static_cast<double>(acc);
    }
    return q;
}

CoeffSequence convex_family(const ConvexSeqSpec& spec, ParamList params)
{
    validate_convex(spec);
    auto ratios = std::make_shared<ConvexRatios>(spec);
    auto c = [ratios](int n) {
        return static_cast<double>(ratios->spec().lambda(n - 1) / (1.0L + ratios->t(n)));
    };
    auto a = [ratios](int n) {
        return static_cast<double>(ratios->spec().lambda(n) * (1.0L + ratios->t(n + 1)));
    };
    if (params.empty())
        params = {{"s0", spec.s(0)}, {"q", spec.s(1) / spec.s(0)}};
    return CoeffSequence(Family::convex, std::move(params), c,
                         "convex-sequence family, " + spec.description, a);
}

CoeffSequence convex_family_for_epsilon(double eps, double q)
{
    const double s0 = s0_for_epsilon(eps);
    return convex_family(ConvexSeqSpec::geometric(s0, q), {{"eps", eps}, {"q", q}, {"s0", s0}});
}

bool has_closed_form_haar(Family tag)
{
    return tag != Family::convex && tag != Family::custom;
}

double closed_form_haar(Family tag, const ParamList& params, int n)
{
    if (n < 0)
        throw std::out_of_range("closed_form_haar: index must be >= 0");
    if (!has_closed_form_haar(tag))
        throw UnsupportedFamilyError("closed_form_haar: no closed form for '" + std::string(family_tag(tag)) + "'");
    if (n == 0)
        return 1.0;
    const auto name = family_tag(tag);
    const int k = (n + 1) / 2;
    const bool odd = n % 2 == 1;
    switch (tag) {
    case Family::chebyshev1:
        return 2.0;
    case Family::gencheb: {
        const double al = lookup(params, "alpha", name), be = lookup(params, "beta", name);
        // (al+be+2)_{k-1}/(be+1)_k times the parity-dependent tail
        double h = 1.0 / (be + k);
        for (int j = 0; j < k - 1; ++j)
            h *= (al + be + 2 + j) / (be + 1 + j);
        if (odd) {
            h *= 2 * k + al + be;
            for (int j = 0; j < k - 1; ++j)
                h *= (al + 1 + j) / (j + 1);
        } else {
            h *= 2 * k + al + be + 1;
            for (int j = 0; j < k; ++j)
                h *= (al + 1 + j) / (j + 1);
        }
        return h;
    }
    case Family::cosh: {
        const double ch = std::cosh(lookup(params, "a", name) * n);
        return 2.0 * ch * ch;
    }
    case Family::grinspun: {
        const double c1 = lookup(params, "c1", name);
        return n == 1 ? 1.0 / c1 : 2.0 * (1.0 - c1) / c1;
    }
    case Family::km: {
        const double al = lookup(params, "alpha", name), be = lookup(params, "beta", name);
        if (odd)
            return al * std::pow(al - 1.0, k - 1) * std::pow(be - 1.0, k - 1);
        return be * std::pow(al - 1.0, k) * std::pow(be - 1.0, k - 1);
    }
    case Family::modkm: {
        const double al = lookup(params, "alpha", name), be = lookup(params, "beta", name);
        const double A = std::sqrt(al - 1.0), B = std::sqrt(be - 1.0);
        const double slope = (al - 2.0) / A + (be - 2.0) / B;
        const double base = odd ? slope * (k - 1) + A + B : slope * k + be / B;
        return base * base / be;
    }
    case Family::thm32: {
        const double base = odd ? k / 2.0 + 0.5 : k / 2.0 + 5.0 / 6.0;
        return 1.8 * base * base;
    }
    default:
        break;
    }
    throw UnsupportedFamilyError("closed_form_haar: unsupported family");
}

double closed_form_haar(const CoeffSequence& seq, int n)
{
    return closed_form_haar(seq.family(), seq.params(), n);
}

bool in_V(double alpha, double beta)
{
    if (alpha < beta)
        return false;
    const double a = alpha + beta + 1.0;
    const double b = alpha - beta;
    return a * (a + 5.0) * (a + 3.0) * (a + 3.0) >= (a * a - 7.0 * a - 24.0) * b * b;
}

bool h1_lt_2_region(double alpha, double beta)
{
    return alpha < 3.0 * beta - 2.0 * std::sqrt(2.0 * beta * beta - 2.0 * beta);
}

double beta_for_epsilon(double eps)
{
    require(eps > 0.0 && eps < 1.0, "beta_for_epsilon: requires eps in (0,1)");
    return (2.0 + 2.0 * std::sqrt(1.0 - eps * eps)) / (eps * eps);
}

double s0_for_epsilon(double eps)
{
    require(eps > 0.0 && eps < 1.0, "s0_for_epsilon: requires eps in (0,1)");
    return 1.0 - 1.0 / std::sqrt(1.0 + eps);
}

double chebyshev_u(int n, double y)
{
    if (n < 0)
        return 0.0;
    double prev = 0.0, cur = 1.0;
    for (int k = 0; k < n; ++k) {
        const double next = 2.0 * y * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

OddEvenPair km_special_closed_forms(double beta, int n, double x)
{
    require(beta >= 2.0 && n >= 1, "km_special_closed_forms: requires beta >= 2 and n >= 1");
    const double B = std::sqrt(beta - 1.0);
    const double y = ((2.0 * B + beta) * x * x - beta) / (2.0 * B);
    const double odd = x * (B * chebyshev_u(n - 1, y) - chebyshev_u(n - 2, y)) / (B * n - (n - 1));
    const double even = ((beta - 1.0) * chebyshev_u(n, y) - chebyshev_u(n - 2, y)) / ((beta - 2.0) * n + beta);
    return {odd, even};
}

OddEvenPair km_sieved_closed_forms(double beta, int n, double x)
{
    require(beta >= 2.0 && n >= 1, "km_sieved_closed_forms: requires beta >= 2 and n >= 1");
    const double B = std::sqrt(beta - 1.0);
    const double y = (2.0 * x * x - 1.0) * beta / (2.0 * B);
    const double scale = std::pow(beta - 1.0, 0.5 * n);
    const double odd = x * (B * chebyshev_u(n - 1, y) - chebyshev_u(n - 2, y)) / scale;
    const double even = ((beta - 1.0) / beta * chebyshev_u(n, y) - chebyshev_u(n - 2, y) / beta) / scale;
    return {odd, even};
}

} // namespace hyplab
