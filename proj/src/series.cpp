#include "prodiff/series.hpp"

#include <algorithm>
#include <string>

namespace prodiff {

// ---------------------------------------------------------------------------
// TruncatedSeries

TruncatedSeries::TruncatedSeries(std::size_t order) : coeffs_(order + 1) {}

TruncatedSeries::TruncatedSeries(std::size_t order, std::vector<Rational> coeffs)
    : coeffs_(std::move(coeffs))
{
    if (coeffs_.size() != order + 1) {
        throw PreconditionError("series of order " + std::to_string(order) + " needs " +
                                std::to_string(order + 1) + " coefficients, got " +
                                std::to_string(coeffs_.size()));
    }
}

TruncatedSeries TruncatedSeries::monomial(std::size_t order, std::size_t degree, const Rational& c)
{
    TruncatedSeries s(order);
    if (degree <= order) s.coeffs_[degree] = c;
    return s;
}

Rational TruncatedSeries::coeff(std::size_t degree) const
{
    return degree < coeffs_.size() ? coeffs_[degree] : Rational(0);
}

TruncatedSeries TruncatedSeries::truncate_to(std::size_t order) const
{
    if (order > this->order()) throw PreconditionError("cannot truncate a series to a higher order");
    return TruncatedSeries(order, std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + order + 1));
}

TruncatedSeries series_add(const TruncatedSeries& f, const TruncatedSeries& g)
{
    const std::size_t n = std::min(f.order(), g.order());
    std::vector<Rational> out(n + 1);
    for (std::size_t i = 0; i <= n; ++i) out[i] = f[i] + g[i];
    return TruncatedSeries(n, std::move(out));
}

TruncatedSeries series_sub(const TruncatedSeries& f, const TruncatedSeries& g)
{
    const std::size_t n = std::min(f.order(), g.order());
    std::vector<Rational> out(n + 1);
    for (std::size_t i = 0; i <= n; ++i) out[i] = f[i] - g[i];
    return TruncatedSeries(n, std::move(out));
}

TruncatedSeries series_mul(const TruncatedSeries& f, const TruncatedSeries& g)
{
    const std::size_t n = std::min(f.order(), g.order());
    std::vector<Rational> out(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        if (f[i] == 0) continue;
        for (std::size_t j = 0; i + j <= n; ++j) {
            if (g[j] != 0) out[i + j] += f[i] * g[j];
        }
    }
    return TruncatedSeries(n, std::move(out));
}

TruncatedSeries series_scale(const TruncatedSeries& f, const Rational& c)
{
    std::vector<Rational> out(f.coeffs().begin(), f.coeffs().end());
    for (auto& v : out) v *= c;
    return TruncatedSeries(f.order(), std::move(out));
}

TruncatedSeries substitute(const TruncatedSeries& f, const TruncatedSeries& g)
{
    if (g[0] != 0) throw PreconditionError("substitution needs an inner series without constant term");
    const std::size_t n = std::min(f.order(), g.order());
    const TruncatedSeries inner = g.truncate_to(n);
    // Horner: (((f_n) g + f_{n-1}) g + ...) + f_0
    TruncatedSeries acc = TruncatedSeries::monomial(n, 0, f[n]);
    for (std::size_t k = n; k-- > 0;) {
        acc = series_mul(acc, inner);
        std::vector<Rational> c(acc.coeffs().begin(), acc.coeffs().end());
        c[0] += f[k];
        acc = TruncatedSeries(n, std::move(c));
    }
    return acc;
}

TruncatedSeries reciprocal(const TruncatedSeries& f)
{
    if (f[0] == 0) throw PreconditionError("reciprocal of a series with zero constant term");
    const std::size_t n = f.order();
    std::vector<Rational> r(n + 1);
    const Rational inv0 = 1 / f[0];
    r[0] = inv0;
    for (std::size_t k = 1; k <= n; ++k) {
        Rational acc = 0;
        for (std::size_t i = 1; i <= k; ++i) acc += f[i] * r[k - i];
        r[k] = -acc * inv0;
    }
    return TruncatedSeries(n, std::move(r));
}

// ---------------------------------------------------------------------------
// FormalDiffeo

FormalDiffeo::FormalDiffeo(std::size_t order) : order_(order), tail_(order >= 2 ? order - 1 : 0)
{
    if (order < 1) throw PreconditionError("diffeomorphism order must be >= 1");
}

FormalDiffeo::FormalDiffeo(std::size_t order, std::vector<Rational> tail)
    : order_(order), tail_(std::move(tail))
{
    if (order < 1) throw PreconditionError("diffeomorphism order must be >= 1");
    if (tail_.size() != order - 1) {
        throw PreconditionError("diffeomorphism of order " + std::to_string(order) + " needs " +
                                std::to_string(order - 1) + " coefficients a_2..a_N, got " +
                                std::to_string(tail_.size()));
    }
}

FormalDiffeo FormalDiffeo::from_series(const TruncatedSeries& f)
{
    if (f.order() < 1) throw PreconditionError("diffeomorphism order must be >= 1");
    if (f[0] != 0 || f[1] != 1) {
        throw PreconditionError("series is not of the form x + O(x^2)");
    }
    return FormalDiffeo(f.order(), std::vector<Rational>(f.coeffs().begin() + 2, f.coeffs().end()));
}

Rational FormalDiffeo::coeff(std::size_t j) const
{
    if (j == 0) return 0;
    if (j == 1) return 1;
    return j <= order_ ? tail_[j - 2] : Rational(0);
}

TruncatedSeries FormalDiffeo::as_series() const
{
    std::vector<Rational> c(order_ + 1);
    c[1] = 1;
    std::copy(tail_.begin(), tail_.end(), c.begin() + 2);
    return TruncatedSeries(order_, std::move(c));
}

FormalDiffeo FormalDiffeo::truncate_to(std::size_t order) const
{
    if (order < 1 || order > order_) throw PreconditionError("invalid truncation order for diffeomorphism");
    return FormalDiffeo(order, std::vector<Rational>(tail_.begin(), tail_.begin() + (order - 1)));
}

bool FormalDiffeo::is_identity() const
{
    return std::all_of(tail_.begin(), tail_.end(), [](const Rational& a) { return a == 0; });
}

// ---------------------------------------------------------------------------
// FormalVectorField

FormalVectorField::FormalVectorField(std::size_t order) : coeffs_(order) {}

FormalVectorField::FormalVectorField(std::size_t order, std::vector<Rational> coeffs)
    : coeffs_(std::move(coeffs))
{
    if (coeffs_.size() != order) {
        throw PreconditionError("vector field of order " + std::to_string(order) + " needs " +
                                std::to_string(order) + " coefficients p_1..p_N, got " +
                                std::to_string(coeffs_.size()));
    }
}

FormalVectorField FormalVectorField::basis(std::size_t order, std::size_t j, const Rational& c)
{
    if (j < 1 || j > order) throw PreconditionError("basis index out of range");
    FormalVectorField f(order);
    f.coeffs_[j - 1] = c;
    return f;
}

Rational FormalVectorField::coeff(std::size_t j) const
{
    return (j >= 1 && j <= coeffs_.size()) ? coeffs_[j - 1] : Rational(0);
}

std::size_t FormalVectorField::support_degree() const
{
    for (std::size_t j = coeffs_.size(); j > 0; --j) {
        if (coeffs_[j - 1] != 0) return j;
    }
    return 0;
}

FormalVectorField FormalVectorField::truncate_to(std::size_t order) const
{
    if (order > coeffs_.size()) throw PreconditionError("cannot truncate a field to a higher order");
    return FormalVectorField(order, std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + order));
}

FormalVectorField FormalVectorField::pad_to(std::size_t order) const
{
    if (order < coeffs_.size()) return truncate_to(order);
    std::vector<Rational> c = coeffs_;
    c.resize(order);
    return FormalVectorField(order, std::move(c));
}

bool FormalVectorField::is_zero() const { return support_degree() == 0; }

FormalVectorField field_add(const FormalVectorField& a, const FormalVectorField& b)
{
    const std::size_t n = std::min(a.order(), b.order());
    std::vector<Rational> c(n);
    for (std::size_t j = 1; j <= n; ++j) c[j - 1] = a.coeff(j) + b.coeff(j);
    return FormalVectorField(n, std::move(c));
}

FormalVectorField field_scale(const FormalVectorField& a, const Rational& c)
{
    std::vector<Rational> out(a.coeffs().begin(), a.coeffs().end());
    for (auto& v : out) v *= c;
    return FormalVectorField(a.order(), std::move(out));
}

// ---------------------------------------------------------------------------
// Group operations

FormalDiffeo substitute(const FormalDiffeo& outer, const FormalDiffeo& inner)
{
    if (outer.order() != inner.order()) {
        throw PreconditionError("composition needs equal orders (" + std::to_string(outer.order()) +
                                " vs " + std::to_string(inner.order()) + ")");
    }
    return FormalDiffeo::from_series(substitute(outer.as_series(), inner.as_series()));
}

FormalDiffeo compose(const FormalDiffeo& g1, const FormalDiffeo& g2)
{
    return substitute(g2, g1);
}

FormalDiffeo invert_lagrange(const FormalDiffeo& gamma)
{
    const std::size_t n_max = gamma.order();
    if (n_max < 2) return gamma;
    // gamma(x)/x = 1 + a_2 x + ... + a_N x^{N-1}; only degrees <= N-1 matter.
    std::vector<Rational> q(n_max);
    q[0] = 1;
    for (std::size_t j = 2; j <= n_max; ++j) q[j - 1] = gamma.coeff(j);
    const TruncatedSeries x_over_gamma = reciprocal(TruncatedSeries(n_max - 1, std::move(q)));

    std::vector<Rational> tail(n_max - 1);
    TruncatedSeries power = x_over_gamma;  // (x/gamma)^n, starting at n = 1
    for (std::size_t n = 2; n <= n_max; ++n) {
        power = series_mul(power, x_over_gamma);
        tail[n - 2] = power[n - 1] / static_cast<unsigned long>(n);
    }
    return FormalDiffeo(n_max, std::move(tail));
}

FormalDiffeo invert_recursive(const FormalDiffeo& gamma)
{
    const std::size_t n_max = gamma.order();
    const TruncatedSeries g = gamma.as_series();
    std::vector<Rational> mu(n_max + 1);
    mu[1] = 1;
    // [x^n] gamma(mu) = c_n + (terms in c_2..c_{n-1}); set c_n to cancel them.
    for (std::size_t n = 2; n <= n_max; ++n) {
        const TruncatedSeries partial(n, std::vector<Rational>(mu.begin(), mu.begin() + n + 1));
        const TruncatedSeries image = substitute(g.truncate_to(n), partial);
        mu[n] = -image[n];
    }
    return FormalDiffeo::from_series(TruncatedSeries(n_max, std::move(mu)));
}

FormalDiffeo scale_automorphism(const FormalDiffeo& gamma, const Rational& sigma)
{
    std::vector<Rational> tail(gamma.tail().begin(), gamma.tail().end());
    Rational factor = sigma;  // sigma^{j-1} at j = 2
    for (auto& a : tail) {
        a *= factor;
        factor *= sigma;
    }
    return FormalDiffeo(gamma.order(), std::move(tail));
}

FormalVectorField scale_field(const FormalVectorField& field, const Rational& sigma)
{
    std::vector<Rational> c(field.coeffs().begin(), field.coeffs().end());
    Rational factor = sigma;
    for (auto& p : c) {
        p *= factor;
        factor *= sigma;
    }
    return FormalVectorField(field.order(), std::move(c));
}

}  // namespace prodiff
