#include <doctest.h>

#include "prodiff/freealg.hpp"
#include "prodiff/random.hpp"

using namespace prodiff;

namespace {

Word w(std::initializer_list<int> letters)
{
    std::vector<std::uint8_t> l;
    for (int x : letters) l.push_back(static_cast<std::uint8_t>(x));
    return Word(l);
}

PBWMonomial m(std::initializer_list<unsigned> idx) { return PBWMonomial(std::vector<unsigned>(idx)); }

UElement single(std::initializer_list<unsigned> idx, const Rational& c = 1)
{
    UElement u;
    u.add(m(idx), c);
    return u;
}

}  // namespace

TEST_CASE("words and their degrees")
{
    const Word a = w({1, 2, 2});
    CHECK(a.degree() == 5);
    CHECK(a.count(2) == 2);
    CHECK(to_string(a) == "w1w2w2");
    CHECK(to_string(Word{}) == "1");
    CHECK(a * w({1}) == w({1, 2, 2, 1}));
    CHECK_THROWS_AS(w({3}), PreconditionError);
    std::size_t f0 = 1, f1 = 1;
    for (std::size_t k = 0; k <= 15; ++k) {
        CHECK(words_of_degree(k).size() == f0);
        const std::size_t next = f0 + f1;
        f0 = f1;
        f1 = next;
        for (const auto& word : words_of_degree(k)) CHECK(word.degree() == k);
    }
}

TEST_CASE("R norm weights letters separately")
{
    NCPolynomial p = NCPolynomial::word(w({1, 2}), 3);
    p.add(w({2, 2}), -1);
    p.add(w({}), make_rational(1, 2));
    CHECK(r_norm(p, 2, 5).value == 3 * 2 * 5 + 25 + make_rational(1, 2));
    p.add(w({2, 2}), 1);
    CHECK(p.terms().size() == 2);
    CHECK_THROWS_AS(r_norm(p, 0, 1), PreconditionError);
}

TEST_CASE("PBW monomials parse and print")
{
    CHECK(to_string(m({1, 2, 2})) == "(1,2,2)");
    CHECK(to_string(PBWMonomial{}) == "()");
    CHECK(parse_pbw_monomial("(1,1,3)") == m({1, 1, 3}));
    CHECK(parse_pbw_monomial("()") == PBWMonomial{});
    for (const char* bad : {"(2,1)", "(0)", "1,2", "(1,,2)", "(a)", "("}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_pbw_monomial(bad), ParseError);
    }
    CHECK_THROWS_AS(m({3, 1}), PreconditionError);
}

TEST_CASE("straightening small products by hand")
{
    // L2 L1 = L1 L2 - L3
    const UElement l2l1 = pbw_straighten(RawProducts{{{2, 1}, Rational(1)}});
    CHECK(l2l1 == single({1, 2}) - single({3}));
    // L3 L1 = L1 L3 - 2 L4
    CHECK(pbw_straighten(RawProducts{{{3, 1}, Rational(1)}}) == single({1, 3}) - single({4}, 2));
    // L2 L1 L1 = L1 L2 L1 - L3 L1 = L1 L1 L2 - L1 L3 - (L1 L3 - 2 L4)
    const UElement expected = single({1, 1, 2}) - single({1, 3}, 2) + single({4}, 2);
    CHECK(pbw_straighten(RawProducts{{{2, 1, 1}, Rational(1)}}) == expected);
    CHECK(pbw_straighten(RawProducts{{{2, 1, 1}, Rational(1)}}, RewriteStrategy::rightmost) == expected);
    CHECK_THROWS_AS(pbw_straighten(RawProducts{{{0, 1}, Rational(1)}}), PreconditionError);
}

TEST_CASE("straightening is confluent and respects the representation")
{
    RandomSource rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<unsigned> t;
        const std::size_t len = 1 + rng.below(5);
        for (std::size_t i = 0; i < len; ++i) t.push_back(1 + static_cast<unsigned>(rng.below(4)));
        const RawProducts raw{{t, Rational(1)}};
        const UElement left = pbw_straighten(raw, RewriteStrategy::leftmost);
        CHECK(left == pbw_straighten(raw, RewriteStrategy::rightmost));
        TriangularOperator direct = TriangularOperator::identity(14);
        for (unsigned i : t) direct = direct * represent(UElement::basis(i), 14);
        CHECK(represent(left, 14) == direct);
    }
}

TEST_CASE("pi is multiplicative")
{
    RandomSource rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const auto p = rng.polynomial(3, 4), q = rng.polynomial(3, 4);
        CHECK(pi_map(p * q) == pi_map(p) * pi_map(q));
    }
    CHECK(pi_map(w({})) == UElement::unit());
    CHECK(pi_map(w({2, 1})) == single({1, 2}) - single({3}));
}

TEST_CASE("pbw_basis lists partitions")
{
    CHECK(pbw_basis(0).size() == 1);
    CHECK(pbw_basis(4).size() == 5);
    CHECK(pbw_basis(8).size() == 22);
    CHECK(pbw_basis(3) == std::vector<PBWMonomial>{m({1, 1, 1}), m({1, 2}), m({3})});
}

TEST_CASE("quotient norm goldens")
{
    CHECK(q1_norm(UElement::basis(1)).value.value == 1);
    CHECK(q1_norm(UElement::basis(2)).value.value == 1);
    const QNormResult q3 = q1_norm(UElement::basis(3));
    CHECK(q3.value.value == 2);
    CHECK(q3.value.kind == NormKind::exact);
    REQUIRE(q3.certificates.size() == 1);
    // The certificate maps to L_3 and its l1 mass is the value.
    NCPolynomial pre;
    Rational mass = 0;
    for (const auto& [word, c] : q3.certificates[0].combination) {
        pre.add(word, c);
        mass += abs(c);
    }
    CHECK(mass == 2);
    CHECK(pi_map(pre) == UElement::basis(3));
    CHECK(q1_norm(UElement::unit(-3)).value.value == 3);
    CHECK(q1_norm(UElement{}).value.value == 0);
}

TEST_CASE("Q_[1](L_n) sits between 1/(n+1)! and 2^{n-2}/(n-2)!")
{
    for (unsigned n = 1; n <= 8; ++n) {
        const Rational q = q1_norm(UElement::basis(n)).value.value;
        CHECK(q <= ln_upper_bound(n, 1));
        CHECK(q >= Rational(1) / Rational(factorial(n + 1)));
        CHECK(q1_norm_joint(UElement::basis(n)).value.value == q);
    }
}

TEST_CASE("Q_[1] splits over degrees and scales homogeneously")
{
    const UElement u = UElement::basis(1, 3) + single({1, 2}, -2) + UElement::basis(4);
    const Rational parts = 3 + q1_norm(single({1, 2}, -2)).value.value + q1_norm(UElement::basis(4)).value.value;
    CHECK(q1_norm(u).value.value == parts);
    CHECK(q1_norm_joint(u).value.value == parts);
    const Rational t = make_rational(2, 3);
    CHECK(qt_norm(single({1, 2}), t).value.value == pow(t, 3) * q1_norm(single({1, 2})).value.value);
    CHECK(qt_norm(u, t, PivotRule::dantzig).value.value == qt_norm(u, t).value.value);
    CHECK_THROWS_AS(qt_norm(u, 0), PreconditionError);
}

TEST_CASE("upper bound for fields")
{
    const FormalVectorField f(3, {2, -1, 1});
    const Rational t = 3;
    const UpperVectBound ub = q_upper_vect(f, t);
    // t|p1| + 1/4 (|p2| (2t)^2/0! + |p3| (2t)^3/1!)
    CHECK(ub.certified.value == 6 + make_rational(36 + 216, 4));
    CHECK(ub.as_displayed == 2 + make_rational(36 + 216, 4));
    CHECK(ub.certified.kind == NormKind::upper_bound);
    CHECK(ln_upper_bound(1, t) == t);
    CHECK(ln_upper_bound(4, 1) == 2);
}

TEST_CASE("lower bound from the representation on V_t")
{
    const UElement l3 = UElement::basis(3);
    for (const Rational& t : {make_rational(1, 2), Rational(1), Rational(2)}) {
        const LowerVectBound lb = q_lower_vect(l3, t, 20);
        CHECK(lb.scale == t);
        CHECK(lb.contested_scale == t / 2);
        CHECK(lb.represented.kind == NormKind::lower_approx);
        // L_3 on V_t: column m gives t^3 m m!/(m+3)!, largest at m = 1.
        CHECK(lb.represented.value == pow(t, 3) / 24);
        CHECK(lb.represented.value <= qt_norm(l3, lb.scale).value.value);
        CHECK(lb.l2_truncated.value == t * t / 6);
    }
}

TEST_CASE("inclusion report")
{
    const InclusionReport rep = inclusion_check(1, 6);
    CHECK(rep.rows.size() == 6);
    CHECK(rep.violations.empty());
    CHECK(rep.rows[0].q1 == 1);
    CHECK(rep.rows[2].q1 == 2);
    CHECK(rep.rows[0].upper_displayed == 1);
    for (const auto& row : rep.rows) {
        CHECK(row.upper_ok);
        CHECK(row.lower_ok);
    }
    const InclusionReport half = inclusion_check(make_rational(1, 2), 4);
    CHECK(half.rows[1].qt == make_rational(1, 4));
}
