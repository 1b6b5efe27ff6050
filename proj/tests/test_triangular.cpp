#include <doctest.h>

#include "prodiff/random.hpp"
#include "prodiff/triangular.hpp"

using namespace prodiff;

namespace {

TriangularOperator from_rows(std::size_t dim, std::initializer_list<int> values)
{
    std::vector<Rational> e;
    for (int v : values) e.emplace_back(v);
    return TriangularOperator(dim, e);
}

// Column j of T(gamma) by repeated multiplication of plain coefficient lists.
std::vector<Rational> power_column(const FormalDiffeo& g, std::size_t j, std::size_t n)
{
    std::vector<Rational> p(n + 1);
    p[0] = 1;
    for (std::size_t r = 0; r < j; ++r) {
        std::vector<Rational> next(n + 1);
        for (std::size_t a = 0; a <= n; ++a) {
            for (std::size_t b = 1; a + b <= n; ++b) next[a + b] += p[a] * g.coeff(b);
        }
        p = next;
    }
    return p;
}

}  // namespace

TEST_CASE("constructor rejects entries above the diagonal")
{
    CHECK_NOTHROW(from_rows(2, {1, 0, 3, 1}));
    CHECK_THROWS_AS(from_rows(2, {1, 2, 0, 1}), PreconditionError);
    CHECK_THROWS_AS(TriangularOperator(2, std::vector<Rational>(3)), PreconditionError);
}

TEST_CASE("product and commutator")
{
    const auto a = from_rows(3, {1, 0, 0, 2, 1, 0, 3, 4, 1});
    const auto b = from_rows(3, {2, 0, 0, 1, 3, 0, 0, 1, 5});
    const auto ab = a * b;
    CHECK(ab == from_rows(3, {2, 0, 0, 5, 3, 0, 10, 13, 5}));
    CHECK(commutator(a, a).is_zero());
    CHECK(commutator(a, b) == a * b - b * a);
    CHECK(TriangularOperator::identity(3) * a == a);
    CHECK(a.is_unitriangular());
    CHECK_FALSE(b.is_unitriangular());
    CHECK((a - TriangularOperator::identity(3)).is_strict());
}

TEST_CASE("exp and log of a nilpotent Jordan block")
{
    TriangularBuilder jb(5);
    for (std::size_t i = 1; i < 5; ++i) jb.at(i, i - 1) = 1;
    const TriangularOperator j = std::move(jb).build();
    const TriangularOperator e = exp_strict(j);
    for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t c = 0; c <= i; ++c) CHECK(e.at(i, c) == Rational(1) / Rational(factorial(unsigned(i - c))));
    }
    CHECK(log_unitriangular(e) == j);
    CHECK_THROWS_AS(exp_strict(TriangularOperator::identity(3)), PreconditionError);
    CHECK_THROWS_AS(log_unitriangular(j), PreconditionError);
}

TEST_CASE("rep_T columns are powers of gamma")
{
    RandomSource rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 1 + rng.below(9);
        const FormalDiffeo g = rng.diffeo(n);
        const TriangularOperator t = rep_T(g, n);
        CHECK(t.is_unitriangular());
        for (std::size_t j = 0; j <= n; ++j) {
            const auto col = power_column(g, j, n);
            for (std::size_t i = 0; i <= n; ++i) CHECK(t.at(i, j) == col[i]);
        }
    }
    CHECK_THROWS_AS(rep_T(FormalDiffeo(3), 4), PreconditionError);
}

TEST_CASE("rep_T is a homomorphism for compose")
{
    RandomSource rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + rng.below(8);
        const FormalDiffeo a = rng.diffeo(n), b = rng.diffeo(n);
        CHECK(rep_T(compose(a, b), n) == rep_T(a, n) * rep_T(b, n));
    }
}

TEST_CASE("rep_field entries")
{
    // L_2 x^m = m x^{m+2}
    const TriangularOperator l2 = rep_field(FormalVectorField::basis(4, 2), 5);
    for (std::size_t m = 0; m <= 5; ++m) {
        for (std::size_t i = 0; i <= 5; ++i) {
            CHECK(l2.at(i, m) == (i == m + 2 ? Rational(static_cast<long>(m)) : Rational(0)));
        }
    }
    CHECK(l2.is_strict());
    CHECK_NOTHROW(rep_field(FormalVectorField(3), 4));
    CHECK_THROWS_AS(rep_field(FormalVectorField(2), 4), PreconditionError);
}

TEST_CASE("qn and Taylor operators")
{
    const auto q2 = qn_operator(2, 6);
    CHECK(q2.at(4, 2) == 2);
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < 6; ++i) {
        for (std::size_t j = 0; j < 6; ++j) nonzero += q2.at(i, j) != 0 ? 1 : 0;
    }
    CHECK(nonzero == 1);
    const auto d2 = taylor_operator(2, 7);
    CHECK(d2.at(2, 0) == 0);
    CHECK(d2.at(4, 2) == 2);
    CHECK(d2.at(5, 3) == 6);
    CHECK(d2.at(6, 4) == 12);
    CHECK(taylor_operator(0, 4) == TriangularOperator::identity(4));
}

TEST_CASE("h operator multiplies by (gamma - x)/x^2 from degree 2 on")
{
    std::vector<Rational> tail{3, 5, 0};
    const FormalDiffeo g(4, tail);
    const auto h = h_operator(g, 4);
    CHECK(h.at(0, 0) == 0);
    CHECK(h.at(1, 1) == 0);
    CHECK(h.at(2, 2) == 3);
    CHECK(h.at(3, 2) == 5);
    CHECK(h.at(3, 3) == 3);
    CHECK(h.at(4, 3) == 5);
}

TEST_CASE("Taylor decomposition reassembles T(gamma)")
{
    RandomSource rng(21);
    for (int trial = 0; trial < 15; ++trial) {
        const std::size_t n = 1 + rng.below(12);
        const FormalDiffeo g = rng.diffeo(n);
        const TaylorDecomposition d = taylor_decomposition(g, n);
        CHECK(d.terms.size() == n / 2 + 1);
        CHECK(reassemble(d) == rep_T(g, n));
    }
}
