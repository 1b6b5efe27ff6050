#pragma once

#include <cstddef>
#include <vector>

#include "prodiff/rational.hpp"
#include "prodiff/series.hpp"

namespace prodiff {

/// Operator on V/x^{dim}V written in the monomial basis 1, x, ..., x^{dim-1}.
///
/// Entry (i, j) is the coefficient of x^i in A x^j, so column j is the image
/// of x^j. Triangular means entry (i, j) = 0 for i < j: operators never lower
/// the degree. The constructors reject anything else.
class TriangularOperator {
public:
    /// Zero operator.
    explicit TriangularOperator(std::size_t dim);
    /// Row-major entries; throws PreconditionError if not triangular.
    TriangularOperator(std::size_t dim, std::vector<Rational> entries);

    static TriangularOperator identity(std::size_t dim);

    std::size_t dim() const { return dim_; }
    const Rational& at(std::size_t row, std::size_t col) const { return entries_[row * dim_ + col]; }
    /// Entry (i, i) is zero for every i as well.
    bool is_strict() const;
    bool is_unitriangular() const;
    bool is_zero() const;

    TriangularOperator& operator+=(const TriangularOperator& other);
    TriangularOperator& operator-=(const TriangularOperator& other);
    TriangularOperator& operator*=(const Rational& c);

    bool operator==(const TriangularOperator&) const = default;

    friend class TriangularBuilder;

private:
    std::size_t dim_;
    std::vector<Rational> entries_;
};

TriangularOperator operator+(TriangularOperator a, const TriangularOperator& b);
TriangularOperator operator-(TriangularOperator a, const TriangularOperator& b);
TriangularOperator operator*(TriangularOperator a, const Rational& c);
TriangularOperator operator*(const TriangularOperator& a, const TriangularOperator& b);
TriangularOperator commutator(const TriangularOperator& a, const TriangularOperator& b);

/// Mutable staging area for building an operator entry by entry.
class TriangularBuilder {
public:
    explicit TriangularBuilder(std::size_t dim) : dim_(dim), entries_(dim * dim) {}
    Rational& at(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }
    TriangularOperator build() &&;

private:
    std::size_t dim_;
    std::vector<Rational> entries_;
};

/// T(gamma) on V/x^{N+1}V: column j holds gamma(x)^j. Requires gamma.order() >= N.
TriangularOperator rep_T(const FormalDiffeo& gamma, std::size_t n);

/// Matrix of sum p_j x^{j+1} d/dx on V/x^{N+1}V: L_j x^m = m x^{m+j}.
/// Only p_1..p_{N-1} reach the truncation, so the field needs order >= N - 1.
TriangularOperator rep_field(const FormalVectorField& field, std::size_t n);

/// exp(S) = sum S^k / k!; S must be strictly triangular.
TriangularOperator exp_strict(const TriangularOperator& s);

/// log(A) = sum (-1)^{k-1} (A - 1)^k / k; A must be unitriangular.
TriangularOperator log_unitriangular(const TriangularOperator& a);

/// The single-column operator Q_n x^n = n! x^{2n}, Q_n x^k = 0 for k != n.
TriangularOperator qn_operator(std::size_t n, std::size_t dim);

/// x^{2n} d^n/dx^n: x^k -> k!/(k-n)! x^{k+n} for k >= n, zero below.
TriangularOperator taylor_operator(std::size_t n, std::size_t dim);

/// Multiplication by h(x) on monomials of degree >= 2, where gamma(x) - x = x^2 h(x).
TriangularOperator h_operator(const FormalDiffeo& gamma, std::size_t n);

struct TaylorDecomposition {
    TriangularOperator h;
    /// terms[n] = x^{2n} d^n/dx^n for n = 0..floor(N/2).
    std::vector<TriangularOperator> terms;
};

/// T(gamma) = sum_n (1/n!) H^n (x^{2n} d^n/dx^n), reassembled and checked
/// against rep_T; a mismatch throws InvariantError.
TaylorDecomposition taylor_decomposition(const FormalDiffeo& gamma, std::size_t n);

/// sum_n (1/n!) H^n terms[n].
TriangularOperator reassemble(const TaylorDecomposition& d);

}  // namespace prodiff
