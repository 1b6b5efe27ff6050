#include "prodiff/triangular.hpp"

#include <algorithm>
#include <string>

namespace prodiff {

namespace {

void require_same_dim(const TriangularOperator& a, const TriangularOperator& b)
{
    if (a.dim() != b.dim()) {
        throw PreconditionError("operator dimensions differ (" + std::to_string(a.dim()) + " vs " +
                                std::to_string(b.dim()) + ")");
    }
}

}  // namespace

TriangularOperator::TriangularOperator(std::size_t dim) : dim_(dim), entries_(dim * dim) {}

TriangularOperator::TriangularOperator(std::size_t dim, std::vector<Rational> entries)
    : dim_(dim), entries_(std::move(entries))
{
    if (entries_.size() != dim_ * dim_) throw PreconditionError("operator entry count does not match dim^2");
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = i + 1; j < dim_; ++j) {
            if (entries_[i * dim_ + j] != 0) {
                throw PreconditionError("operator is not triangular: entry (" + std::to_string(i) + ", " +
                                        std::to_string(j) + ") is nonzero");
            }
        }
    }
}

TriangularOperator TriangularOperator::identity(std::size_t dim)
{
    TriangularOperator id(dim);
    for (std::size_t i = 0; i < dim; ++i) id.entries_[i * dim + i] = 1;
    return id;
}

bool TriangularOperator::is_strict() const
{
    for (std::size_t i = 0; i < dim_; ++i) {
        if (at(i, i) != 0) return false;
    }
    return true;
}

bool TriangularOperator::is_unitriangular() const
{
    for (std::size_t i = 0; i < dim_; ++i) {
        if (at(i, i) != 1) return false;
    }
    return true;
}

bool TriangularOperator::is_zero() const
{
    return std::all_of(entries_.begin(), entries_.end(), [](const Rational& v) { return v == 0; });
}

TriangularOperator& TriangularOperator::operator+=(const TriangularOperator& other)
{
    require_same_dim(*this, other);
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
    return *this;
}

TriangularOperator& TriangularOperator::operator-=(const TriangularOperator& other)
{
    require_same_dim(*this, other);
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
    return *this;
}

TriangularOperator& TriangularOperator::operator*=(const Rational& c)
{
    for (auto& v : entries_) v *= c;
    return *this;
}

TriangularOperator operator+(TriangularOperator a, const TriangularOperator& b) { return a += b; }
TriangularOperator operator-(TriangularOperator a, const TriangularOperator& b) { return a -= b; }
TriangularOperator operator*(TriangularOperator a, const Rational& c) { return a *= c; }

TriangularOperator operator*(const TriangularOperator& a, const TriangularOperator& b)
{
    require_same_dim(a, b);
    const std::size_t n = a.dim();
    TriangularBuilder out(n);
    // Lower-triangular: (AB)_{ij} = sum_{j <= k <= i} A_{ik} B_{kj}.
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = j; k < n; ++k) {
            const Rational& bkj = b.at(k, j);
            if (bkj == 0) continue;
            for (std::size_t i = k; i < n; ++i) {
                const Rational& aik = a.at(i, k);
                if (aik != 0) out.at(i, j) += aik * bkj;
            }
        }
    }
    return std::move(out).build();
}

TriangularOperator commutator(const TriangularOperator& a, const TriangularOperator& b)
{
    return a * b - b * a;
}

TriangularOperator TriangularBuilder::build() &&
{
    return TriangularOperator(dim_, std::move(entries_));
}

TriangularOperator rep_T(const FormalDiffeo& gamma, std::size_t n)
{
    if (gamma.order() < n) {
        throw PreconditionError("rep_T needs a diffeomorphism of order >= " + std::to_string(n) + ", got " +
                                std::to_string(gamma.order()));
    }
    const TruncatedSeries g = gamma.truncate_to(std::max<std::size_t>(n, 1)).as_series();
    TriangularBuilder out(n + 1);
    TruncatedSeries power = TruncatedSeries::monomial(g.order(), 0);
    for (std::size_t j = 0; j <= n; ++j) {
        for (std::size_t i = j; i <= n; ++i) out.at(i, j) = power.coeff(i);
        power = series_mul(power, g);
    }
    return std::move(out).build();
}

TriangularOperator rep_field(const FormalVectorField& field, std::size_t n)
{
    if (n >= 1 && field.order() + 1 < n) {
        throw PreconditionError("rep_field at N = " + std::to_string(n) + " needs a field of order >= " +
                                std::to_string(n - 1) + ", got " + std::to_string(field.order()));
    }
    TriangularBuilder out(n + 1);
    for (std::size_t m = 1; m <= n; ++m) {
        for (std::size_t j = 1; m + j <= n; ++j) {
            const Rational p = field.coeff(j);
            if (p != 0) out.at(m + j, m) = p * static_cast<unsigned long>(m);
        }
    }
    return std::move(out).build();
}

TriangularOperator exp_strict(const TriangularOperator& s)
{
    if (!s.is_strict()) throw PreconditionError("exp_strict needs a strictly triangular operator");
    TriangularOperator result = TriangularOperator::identity(s.dim());
    TriangularOperator term = TriangularOperator::identity(s.dim());
    for (unsigned long k = 1; k <= s.dim(); ++k) {
        term = term * s;
        if (term.is_zero()) break;
        term *= Rational(1, k);
        result += term;
    }
    return result;
}

TriangularOperator log_unitriangular(const TriangularOperator& a)
{
    if (!a.is_unitriangular()) throw PreconditionError("log_unitriangular needs ones on the diagonal");
    const TriangularOperator s = a - TriangularOperator::identity(a.dim());
    TriangularOperator result(a.dim());
    TriangularOperator power = TriangularOperator::identity(a.dim());
    for (unsigned long k = 1; k <= a.dim(); ++k) {
        power = power * s;
        if (power.is_zero()) break;
        Rational c(1, k);
        if (k % 2 == 0) c = -c;
        result += power * c;
    }
    return result;
}

TriangularOperator qn_operator(std::size_t n, std::size_t dim)
{
    TriangularBuilder out(dim);
    if (2 * n < dim) out.at(2 * n, n) = Rational(factorial(static_cast<unsigned>(n)));
    return std::move(out).build();
}

TriangularOperator taylor_operator(std::size_t n, std::size_t dim)
{
    TriangularBuilder out(dim);
    for (std::size_t k = n; k + n < dim; ++k) {
        // k (k-1) ... (k-n+1)
        Integer falling = 1;
        for (std::size_t i = 0; i < n; ++i) falling *= static_cast<unsigned long>(k - i);
        out.at(k + n, k) = Rational(falling);
    }
    return std::move(out).build();
}

TriangularOperator h_operator(const FormalDiffeo& gamma, std::size_t n)
{
    if (gamma.order() < n) throw PreconditionError("h_operator needs a diffeomorphism of order >= N");
    TriangularBuilder out(n + 1);
    // h(x) = a_2 + a_3 x + ...; H x^k = h(x) x^k for k >= 2.
    for (std::size_t k = 2; k <= n; ++k) {
        for (std::size_t j = 2; j + k - 2 <= n; ++j) out.at(j + k - 2, k) = gamma.coeff(j);
    }
    return std::move(out).build();
}

TriangularOperator reassemble(const TaylorDecomposition& d)
{
    const std::size_t dim = d.h.dim();
    TriangularOperator sum(dim);
    TriangularOperator h_power = TriangularOperator::identity(dim);
    for (std::size_t n = 0; n < d.terms.size(); ++n) {
        if (n > 0) h_power = h_power * d.h;
        TriangularOperator term = h_power * d.terms[n];
        term *= Rational(1) / Rational(factorial(static_cast<unsigned>(n)));
        sum += term;
    }
    return sum;
}

TaylorDecomposition taylor_decomposition(const FormalDiffeo& gamma, std::size_t n)
{
    if (gamma.order() < n) {
        throw PreconditionError("taylor_decomposition needs a diffeomorphism of order >= " + std::to_string(n));
    }
    TaylorDecomposition d{h_operator(gamma, n), {}};
    for (std::size_t k = 0; 2 * k <= n; ++k) d.terms.push_back(taylor_operator(k, n + 1));
    if (reassemble(d) != rep_T(gamma, n)) {
        throw InvariantError("Taylor decomposition does not reassemble T(gamma)");
    }
    return d;
}

}  // namespace prodiff
