#include "prodiff/lie.hpp"

#include <string>
#include <vector>

#include "prodiff/triangular.hpp"

namespace prodiff {

FormalVectorField bracket(const FormalVectorField& a, const FormalVectorField& b)
{
    if (a.order() != b.order()) {
        throw PreconditionError("bracket needs equal orders (" + std::to_string(a.order()) + " vs " +
                                std::to_string(b.order()) + ")");
    }
    const std::size_t n = a.order();
    std::vector<Rational> out(n);
    for (std::size_t i = 1; i <= n; ++i) {
        const Rational& ai = a.coeffs()[i - 1];
        if (ai == 0) continue;
        for (std::size_t m = 1; i + m <= n; ++m) {
            const Rational& bm = b.coeffs()[m - 1];
            if (bm == 0 || i == m) continue;
            out[i + m - 1] += (static_cast<long>(m) - static_cast<long>(i)) * ai * bm;
        }
    }
    return FormalVectorField(n, std::move(out));
}

FormalDiffeo exp_field(const FormalVectorField& field)
{
    const std::size_t n = field.order() + 1;
    const TriangularOperator s = rep_field(field, n);
    // exp(S) x = sum_k S^k x / k!, accumulated on the column vector of x.
    std::vector<Rational> term(n + 1), sum(n + 1);
    term[1] = 1;
    sum[1] = 1;
    for (unsigned long k = 1; k <= n; ++k) {
        std::vector<Rational> next(n + 1);
        bool nonzero = false;
        for (std::size_t col = 0; col <= n; ++col) {
            if (term[col] == 0) continue;
            for (std::size_t row = col + 1; row <= n; ++row) {
                if (s.at(row, col) != 0) {
                    next[row] += s.at(row, col) * term[col];
                }
            }
        }
        for (auto& v : next) {
            v /= k;
            nonzero = nonzero || v != 0;
        }
        if (!nonzero) break;
        for (std::size_t i = 0; i <= n; ++i) sum[i] += next[i];
        term = std::move(next);
    }
    return FormalDiffeo::from_series(TruncatedSeries(n, std::move(sum)));
}

namespace {

// Series in x (rows) whose coefficients are polynomials in the flow time s.
using TimeSeries = std::vector<std::vector<Rational>>;

TimeSeries time_mul(const TimeSeries& f, const TimeSeries& g, std::size_t x_order)
{
    TimeSeries out(x_order + 1);
    for (std::size_t i = 0; i < f.size() && i <= x_order; ++i) {
        for (std::size_t j = 0; j < g.size() && i + j <= x_order; ++j) {
            const auto& a = f[i];
            const auto& b = g[j];
            if (a.empty() || b.empty()) continue;
            auto& dst = out[i + j];
            if (dst.size() < a.size() + b.size() - 1) dst.resize(a.size() + b.size() - 1);
            for (std::size_t u = 0; u < a.size(); ++u) {
                if (a[u] == 0) continue;
                for (std::size_t v = 0; v < b.size(); ++v) {
                    if (b[v] != 0) dst[u + v] += a[u] * b[v];
                }
            }
        }
    }
    return out;
}

}  // namespace

FormalDiffeo exp_field_flow(const FormalVectorField& field)
{
    const std::size_t n = field.order() + 1;
    TimeSeries phi(n + 1);
    phi[1] = {Rational(1)};

    // Each Picard step fixes at least one more x-degree of the flow.
    for (std::size_t iter = 1; iter < n; ++iter) {
        TimeSeries velocity(n + 1);
        TimeSeries power = phi;  // phi^{j+1}, starting at j = 1 below
        for (std::size_t j = 1; j + 1 <= n; ++j) {
            power = time_mul(power, phi, n);
            const Rational p = field.coeff(j);
            if (p == 0) continue;
            for (std::size_t d = 0; d <= n; ++d) {
                auto& dst = velocity[d];
                if (dst.size() < power[d].size()) dst.resize(power[d].size());
                for (std::size_t u = 0; u < power[d].size(); ++u) dst[u] += p * power[d][u];
            }
        }
        TimeSeries next(n + 1);
        next[1] = {Rational(1)};
        for (std::size_t d = 2; d <= n; ++d) {
            // integral from 0 to s of sum_u c_u tau^u
            auto& dst = next[d];
            dst.assign(velocity[d].size() + 1, Rational(0));
            for (std::size_t u = 0; u < velocity[d].size(); ++u) {
                dst[u + 1] = velocity[d][u] / static_cast<unsigned long>(u + 1);
            }
        }
        phi = std::move(next);
    }

    std::vector<Rational> coeffs(n + 1);
    for (std::size_t d = 0; d <= n; ++d) {
        for (const auto& c : phi[d]) coeffs[d] += c;  // s = 1
    }
    return FormalDiffeo::from_series(TruncatedSeries(n, std::move(coeffs)));
}

FormalVectorField log_diffeo(const FormalDiffeo& gamma)
{
    const std::size_t n = gamma.order();
    const TriangularOperator log_t = log_unitriangular(rep_T(gamma, n));
    std::vector<Rational> p(n - 1);
    for (std::size_t j = 1; j + 1 <= n; ++j) p[j - 1] = log_t.at(j + 1, 1);
    FormalVectorField field(n - 1, std::move(p));
    if (rep_field(field, n) != log_t) {
        throw InvariantError("logarithm of T(gamma) is not the matrix of a vector field");
    }
    return field;
}

FormalVectorField bch(const FormalVectorField& a, const FormalVectorField& b)
{
    if (a.order() != b.order()) {
        throw PreconditionError("bch needs equal orders (" + std::to_string(a.order()) + " vs " +
                                std::to_string(b.order()) + ")");
    }
    return log_diffeo(compose(exp_field(a), exp_field(b)));
}

}  // namespace prodiff
