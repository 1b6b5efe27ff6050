#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "prodiff/rational.hpp"

namespace prodiff {

/// Dense power series u_0 + u_1 x + ... + u_N x^N, known modulo x^{N+1}.
class TruncatedSeries {
public:
    explicit TruncatedSeries(std::size_t order);
    TruncatedSeries(std::size_t order, std::vector<Rational> coeffs);

    static TruncatedSeries monomial(std::size_t order, std::size_t degree, const Rational& c = 1);

    std::size_t order() const { return coeffs_.size() - 1; }
    const Rational& operator[](std::size_t degree) const { return coeffs_[degree]; }
    /// Coefficient of x^degree, zero past the order.
    Rational coeff(std::size_t degree) const;
    std::span<const Rational> coeffs() const { return coeffs_; }

    TruncatedSeries truncate_to(std::size_t order) const;

    bool operator==(const TruncatedSeries&) const = default;

private:
    std::vector<Rational> coeffs_;
};

TruncatedSeries series_add(const TruncatedSeries& f, const TruncatedSeries& g);
TruncatedSeries series_sub(const TruncatedSeries& f, const TruncatedSeries& g);
TruncatedSeries series_mul(const TruncatedSeries& f, const TruncatedSeries& g);
TruncatedSeries series_scale(const TruncatedSeries& f, const Rational& c);

/// f(g(x)) for g with zero constant term. Result order is min of the orders.
TruncatedSeries substitute(const TruncatedSeries& f, const TruncatedSeries& g);

/// Multiplicative inverse of a series with nonzero constant term.
TruncatedSeries reciprocal(const TruncatedSeries& f);

/// gamma(x) = x + a_2 x^2 + ... + a_N x^N modulo x^{N+1}.
///
/// The linear coefficient is 1 and the constant term is 0 by construction;
/// only a_2..a_N are stored state.
class FormalDiffeo {
public:
    /// The identity x at the given order (order >= 1).
    explicit FormalDiffeo(std::size_t order);
    /// Builds from a_2..a_N; tail.size() must equal order - 1.
    FormalDiffeo(std::size_t order, std::vector<Rational> tail);

    static FormalDiffeo identity(std::size_t order) { return FormalDiffeo(order); }
    /// Requires f_0 = 0 and f_1 = 1.
    static FormalDiffeo from_series(const TruncatedSeries& f);

    std::size_t order() const { return order_; }
    /// a_j for 2 <= j <= order; also answers 0 for j = 0 and 1 for j = 1.
    Rational coeff(std::size_t j) const;
    std::span<const Rational> tail() const { return tail_; }

    TruncatedSeries as_series() const;
    FormalDiffeo truncate_to(std::size_t order) const;
    bool is_identity() const;

    bool operator==(const FormalDiffeo&) const = default;

private:
    std::size_t order_;
    std::vector<Rational> tail_;  // tail_[j - 2] = a_j
};

/// L = sum_{j=1..N} p_j x^{j+1} d/dx, p_j in grading degree j.
class FormalVectorField {
public:
    explicit FormalVectorField(std::size_t order);
    /// coeffs[j - 1] = p_j; coeffs.size() must equal order.
    FormalVectorField(std::size_t order, std::vector<Rational> coeffs);

    /// c * L_j at the given order.
    static FormalVectorField basis(std::size_t order, std::size_t j, const Rational& c = 1);

    std::size_t order() const { return coeffs_.size(); }
    /// p_j for 1 <= j; zero past the order.
    Rational coeff(std::size_t j) const;
    std::span<const Rational> coeffs() const { return coeffs_; }
    /// Largest j with p_j != 0, or 0 for the zero field.
    std::size_t support_degree() const;

    FormalVectorField truncate_to(std::size_t order) const;
    /// Same field with zero coefficients appended up to the new order.
    FormalVectorField pad_to(std::size_t order) const;
    bool is_zero() const;

    bool operator==(const FormalVectorField&) const = default;

private:
    std::vector<Rational> coeffs_;
};

FormalVectorField field_add(const FormalVectorField& a, const FormalVectorField& b);
FormalVectorField field_scale(const FormalVectorField& a, const Rational& c);

/// Group product of the diffeomorphism group, in the order that makes the
/// substitution operator a homomorphism: T(compose(g1, g2)) = T(g1) T(g2).
/// As a series this is g2(g1(x)). Orders must match.
FormalDiffeo compose(const FormalDiffeo& g1, const FormalDiffeo& g2);

/// Plain substitution outer(inner(x)). Orders must match.
FormalDiffeo substitute(const FormalDiffeo& outer, const FormalDiffeo& inner);

/// Compositional inverse via Lagrange inversion:
/// c_n = (1/n) [x^{n-1}] (x / gamma(x))^n.
FormalDiffeo invert_lagrange(const FormalDiffeo& gamma);

/// Compositional inverse by solving gamma(mu(x)) = x one degree at a time.
FormalDiffeo invert_recursive(const FormalDiffeo& gamma);

/// E_sigma: a_j -> sigma^{j-1} a_j, i.e. sigma^{-1} gamma(sigma x).
/// sigma = 0 yields the identity.
FormalDiffeo scale_automorphism(const FormalDiffeo& gamma, const Rational& sigma);

/// p_j -> sigma^j p_j.
FormalVectorField scale_field(const FormalVectorField& field, const Rational& sigma);

}  // namespace prodiff
