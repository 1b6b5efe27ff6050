#include "prodiff/norms.hpp"

#include <cmath>
#include <functional>
#include <string>

namespace prodiff {

namespace {

void require_positive(const Rational& v, const char* what)
{
    if (v <= 0) throw PreconditionError(std::string(what) + " must be > 0, got " + to_string(v));
}

Rational inv_factorial(std::size_t n) { return Rational(1) / Rational(factorial(static_cast<unsigned>(n))); }

// Natural log of |v| for v != 0, robust to huge numerators and denominators.
double log_abs(const Rational& v)
{
    auto log_int = [](const Integer& z) {
        long exp = 0;
        const double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
        return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
    };
    return log_int(v.get_num()) - log_int(v.get_den());
}

}  // namespace

std::string_view to_string(NormKind kind)
{
    switch (kind) {
    case NormKind::exact: return "exact";
    case NormKind::lower_approx: return "lower_approx";
    case NormKind::upper_bound: return "upper_bound";
    }
    return "exact";
}

NormValue w_norm(const FormalDiffeo& gamma, const Rational& sigma, bool finitely_supported)
{
    require_positive(sigma, "sigma");
    Rational sum = 0;
    Rational sigma_power = sigma;  // sigma^{j-1} at j = 2
    for (std::size_t j = 2; j <= gamma.order(); ++j) {
        const Rational a = gamma.coeff(j);
        if (a != 0) sum += abs(a) * sigma_power * inv_factorial(j);
        sigma_power *= sigma;
    }
    return {sum, finitely_supported ? NormKind::exact : NormKind::lower_approx, std::nullopt};
}

Rational field_weight_sum(const FormalVectorField& field, const Rational& s)
{
    Rational sum = 0;
    Rational power = s;
    for (std::size_t j = 1; j <= field.order(); ++j) {
        const Rational p = field.coeff(j);
        if (p != 0) sum += abs(p) * power * inv_factorial(j + 1);
        power *= s;
    }
    return sum;
}

FieldNormBound field_norm_bound(const FormalVectorField& field, const Rational& t)
{
    require_positive(t, "t");
    const Rational lower = field_weight_sum(field, t);
    return {{lower, NormKind::lower_approx, std::nullopt}, {2 * lower, NormKind::upper_bound, std::nullopt}};
}

NormValue operator_norm_trunc(const TriangularOperator& a, const Rational& t, std::size_t max_column)
{
    require_positive(t, "t");
    if (a.dim() == 0 || max_column > a.dim() - 1) {
        throw PreconditionError("column bound " + std::to_string(max_column) + " out of range for dimension " +
                                std::to_string(a.dim()));
    }
    // weight_i = t^i / i!
    std::vector<Rational> weight(a.dim());
    Rational power = 1;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        weight[i] = power * inv_factorial(i);
        power *= t;
    }
    Rational best = 0;
    std::size_t witness = 0;
    for (std::size_t m = 0; m <= max_column; ++m) {
        Rational column = 0;
        for (std::size_t i = m; i < a.dim(); ++i) {
            if (a.at(i, m) != 0) column += abs(a.at(i, m)) * weight[i];
        }
        column /= weight[m];
        if (column > best) {
            best = column;
            witness = m;
        }
    }
    return {best, NormKind::lower_approx, witness};
}

NormValue qn_norm(std::size_t n)
{
    const Integer nf = factorial(static_cast<unsigned>(n));
    const Rational value = make_rational(nf * nf, factorial(static_cast<unsigned>(2 * n)));
    if (n >= 1) {
        // (n!)^2/(2n)! <= 2 sqrt(n) / 4^n, with equality at n = 1; compare squares.
        const Rational lhs = value * value;
        const Rational rhs = Rational(4 * static_cast<unsigned long>(n)) / pow(Rational(16), static_cast<unsigned>(n));
        if (lhs > rhs) throw InvariantError("(n!)^2/(2n)! <= 2 sqrt(n)/2^{2n} failed at n = " + std::to_string(n));
    }
    return {value, NormKind::exact, n};
}

HNormBound h_norm_bound(const FormalDiffeo& gamma)
{
    const std::size_t n = gamma.order();
    const TaylorDecomposition d = taylor_decomposition(gamma, n);
    NormValue computed = operator_norm_trunc(d.h, 1, n);
    NormValue bound{2 * w_norm(gamma, 1).value, NormKind::upper_bound, std::nullopt};
    if (computed.value > bound.value) {
        throw InvariantError("||H|| exceeds 2 sum |a_j|/j!: " + to_string(computed.value) + " > " +
                             to_string(bound.value));
    }
    return {computed, bound};
}

Rational u_combinatorial(std::span<const unsigned> k)
{
    unsigned long weighted = 0;  // s = sum j k_j
    unsigned long count = 0;     // p = sum k_j
    Integer numerator = 1;
    for (std::size_t idx = 0; idx < k.size(); ++idx) {
        const unsigned long j = idx + 1;
        weighted += j * k[idx];
        count += k[idx];
        Integer fj;
        mpz_pow_ui(fj.get_mpz_t(), factorial(static_cast<unsigned>(j + 1)).get_mpz_t(), k[idx]);
        numerator *= fj;
    }
    for (unsigned long f = weighted + 2; f <= weighted + count; ++f) numerator *= f;
    return make_rational(numerator, factorial(static_cast<unsigned>(weighted + 1)));
}

std::vector<std::vector<unsigned>> enumerate_multiplicities(unsigned max_weight)
{
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> k(max_weight, 0);
    // Choose multiplicities from the largest part downwards.
    std::function<void(unsigned, unsigned)> rec = [&](unsigned part, unsigned remaining) {
        if (part == 0) {
            std::vector<unsigned> trimmed = k;
            while (!trimmed.empty() && trimmed.back() == 0) trimmed.pop_back();
            out.push_back(std::move(trimmed));
            return;
        }
        for (unsigned m = 0; m * part <= remaining; ++m) {
            k[part - 1] = m;
            rec(part - 1, remaining - m * part);
        }
        k[part - 1] = 0;
    };
    rec(max_weight, max_weight);
    return out;
}

Rational exp_upper_bound(const Rational& x)
{
    if (x < 0) throw PreconditionError("exp_upper_bound needs x >= 0");
    const Rational xr = round_up_dyadic(x, 64);
    const Rational eps = make_rational(Integer(1), Integer(1) << 80);
    Rational sum = 1;
    Rational term = 1;
    unsigned long k = 0;
    for (;;) {
        ++k;
        term = term * xr / k;
        sum += term;
        // Tail after k: term_{k+1} / (1 - x/(k+2)) once k + 2 > x.
        if (Rational(k + 2) > 2 * xr && term < eps) break;
    }
    const Rational next = term * xr / (k + 1);
    const Rational tail = next / (1 - xr / (k + 2));
    return round_up_dyadic(sum + tail, 64);
}

InversionNormBound inversion_norm_bound(const FormalDiffeo& gamma)
{
    const FormalDiffeo mu = invert_lagrange(gamma);
    Rational partial = 0;
    for (std::size_t n = 2; n <= mu.order(); ++n) {
        const Rational c = mu.coeff(n);
        if (c != 0) partial += abs(c) * inv_factorial(n);
    }
    const Rational exponent = kInversionM * w_norm(gamma, 1).value;
    const Rational cap = kInversionL * exp_upper_bound(exponent);
    if (partial > cap) {
        throw InvariantError("inverse coefficient sum exceeds the exponential cap: " + to_string(partial) +
                             " > " + to_string(cap));
    }
    return {{partial, NormKind::lower_approx, std::nullopt}, {cap, NormKind::upper_bound, std::nullopt}};
}

CoefficientRule parse_coefficient_rule(std::string_view name)
{
    if (name == "geometric") return CoefficientRule::geometric;
    if (name == "factorial") return CoefficientRule::factorial;
    if (name == "subfactorial") return CoefficientRule::subfactorial;
    if (name == "factorial_squared") return CoefficientRule::factorial_squared;
    if (name == "list") return CoefficientRule::list;
    throw ParseError("unknown coefficient rule '" + std::string(name) + "'");
}

std::string_view to_string(CoefficientRule rule)
{
    switch (rule) {
    case CoefficientRule::geometric: return "geometric";
    case CoefficientRule::factorial: return "factorial";
    case CoefficientRule::subfactorial: return "subfactorial";
    case CoefficientRule::factorial_squared: return "factorial_squared";
    case CoefficientRule::list: return "list";
    }
    return "list";
}

std::string_view to_string(MembershipClass c)
{
    switch (c) {
    case MembershipClass::all_sigma: return "all_sigma";
    case MembershipClass::small_sigma: return "small_sigma";
    case MembershipClass::divergent: return "divergent";
    }
    return "divergent";
}

FormalDiffeo coefficient_family(CoefficientRule rule, const Rational& r, std::size_t order,
                                std::span<const Rational> values)
{
    std::vector<Rational> tail(order >= 2 ? order - 1 : 0);
    for (std::size_t j = 2; j <= order; ++j) {
        const Rational rj = pow(r, static_cast<unsigned>(j));
        Rational a;
        switch (rule) {
        case CoefficientRule::geometric: a = rj; break;
        case CoefficientRule::factorial: a = Rational(factorial(static_cast<unsigned>(j))) * rj; break;
        case CoefficientRule::subfactorial: a = Rational(factorial(static_cast<unsigned>(j - 1))) * rj; break;
        case CoefficientRule::factorial_squared: {
            const Integer f = factorial(static_cast<unsigned>(j));
            a = Rational(f * f) * rj;
            break;
        }
        case CoefficientRule::list: a = j - 2 < values.size() ? values[j - 2] : Rational(0); break;
        }
        tail[j - 2] = a;
    }
    return FormalDiffeo(order, std::move(tail));
}

MembershipReport membership_report(CoefficientRule rule, const Rational& r, std::size_t order,
                                   std::span<const Rational> values, std::span<const Rational> sigma_grid)
{
    if (order < 4) throw PreconditionError("membership_report needs order >= 4");
    const FormalDiffeo gamma = coefficient_family(rule, r, order, values);

    std::vector<Rational> grid(sigma_grid.begin(), sigma_grid.end());
    if (grid.empty()) grid = {Rational(1, 4), Rational(1, 2), Rational(1), Rational(2), Rational(4)};

    MembershipReport report{rule, order, {}, {}, MembershipClass::all_sigma, std::nullopt};
    for (const auto& sigma : grid) report.rows.push_back({sigma, w_norm(gamma, sigma).value});

    std::size_t last_nonzero = 0;
    for (std::size_t j = 2; j <= order; ++j) {
        const Rational a = gamma.coeff(j);
        double ind = 0.0;
        if (a != 0) {
            ind = std::exp((log_abs(a) - log_abs(Rational(factorial(static_cast<unsigned>(j))))) /
                           static_cast<double>(j - 1));
            last_nonzero = j;
        }
        report.indicator.emplace_back(j, ind);
    }

    // Sequence vanishing at the end of the window reads as finitely supported.
    if (last_nonzero < order) return report;

    std::size_t mid = (order + 1) / 2;
    while (gamma.coeff(mid) == 0) ++mid;
    const double ind_mid = report.indicator[mid - 2].second;
    const double ind_last = report.indicator[order - 2].second;
    if (ind_last <= 0.75 * ind_mid) {
        report.classification = MembershipClass::all_sigma;
    } else if (ind_last >= (4.0 / 3.0) * ind_mid) {
        report.classification = MembershipClass::divergent;
    } else {
        report.classification = MembershipClass::small_sigma;
        report.sigma_limit = 1.0 / ind_last;
    }
    return report;
}

}  // namespace prodiff
