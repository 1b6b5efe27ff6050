#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "prodiff/norms.hpp"
#include "prodiff/rational.hpp"
#include "prodiff/series.hpp"
#include "prodiff/simplex.hpp"
#include "prodiff/triangular.hpp"

namespace prodiff {

/// Monomial w_{i1} w_{i2} ... in the free algebra on w_1 (degree 1) and w_2 (degree 2).
class Word {
public:
    Word() = default;
    /// Letters must be 1 or 2.
    explicit Word(std::vector<std::uint8_t> letters);

    const std::vector<std::uint8_t>& letters() const { return letters_; }
    std::size_t length() const { return letters_.size(); }
    /// Graded degree d1 + 2 d2.
    std::size_t degree() const { return count(1) + 2 * count(2); }
    std::size_t count(std::uint8_t letter) const;

    Word operator*(const Word& other) const;
    auto operator<=>(const Word&) const = default;

private:
    std::vector<std::uint8_t> letters_;
};

/// "w1w2w1"; the empty word prints as "1".
std::string to_string(const Word& w);

/// All words of graded degree k (Fibonacci(k+1) of them), in lexicographic order.
std::vector<Word> words_of_degree(std::size_t k);

/// Finite linear combination of words; zero coefficients are never stored.
class NCPolynomial {
public:
    NCPolynomial() = default;
    static NCPolynomial word(const Word& w, const Rational& c = 1);

    void add(const Word& w, const Rational& c);
    const std::map<Word, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    NCPolynomial operator+(const NCPolynomial& other) const;
    NCPolynomial operator*(const NCPolynomial& other) const;
    bool operator==(const NCPolynomial&) const = default;

private:
    std::map<Word, Rational> terms_;
};

/// R_[t1,t2](sum c_I w^I) = sum |c_I| t1^{d1(I)} t2^{d2(I)}.
NormValue r_norm(const NCPolynomial& p, const Rational& t1, const Rational& t2);

/// Ordered product L_{i1} L_{i2} ... L_{im} with i1 <= i2 <= ... <= im.
class PBWMonomial {
public:
    PBWMonomial() = default;
    /// Throws PreconditionError unless indices are >= 1 and weakly increasing.
    explicit PBWMonomial(std::vector<unsigned> indices);

    const std::vector<unsigned>& indices() const { return indices_; }
    std::size_t degree() const;
    auto operator<=>(const PBWMonomial&) const = default;

private:
    std::vector<unsigned> indices_;
};

/// "(1,2)"; the unit prints as "()".
std::string to_string(const PBWMonomial& m);
PBWMonomial parse_pbw_monomial(const std::string& text);

/// Element of U(vect) in PBW coordinates, split by degree.
class UElement {
public:
    using Component = std::map<PBWMonomial, Rational>;

    UElement() = default;
    static UElement unit(const Rational& c = 1);
    static UElement basis(unsigned n, const Rational& c = 1);
    static UElement from_field(const FormalVectorField& field);

    /// Adds c * m; entries that cancel are erased.
    void add(const PBWMonomial& m, const Rational& c);

    const std::map<std::size_t, Component>& components() const { return components_; }
    UElement component(std::size_t degree) const;
    std::size_t max_degree() const;
    bool is_zero() const { return components_.empty(); }

    UElement operator+(const UElement& other) const;
    UElement operator-(const UElement& other) const;
    UElement operator*(const Rational& c) const;
    /// Product in U(vect): concatenate and straighten.
    UElement operator*(const UElement& other) const;
    bool operator==(const UElement&) const = default;

    /// Degree-n component multiplied by t^n.
    UElement scaled(const Rational& t) const;

private:
    std::map<std::size_t, Component> components_;
};

enum class RewriteStrategy { leftmost, rightmost };

/// Products L_{i1}...L_{im} in arbitrary order, keyed by index tuple.
using RawProducts = std::map<std::vector<unsigned>, Rational>;

/// Rewrites every product into PBW order using
/// L_m L_n -> L_n L_m + (n - m) L_{n+m} for m > n at the inversion the
/// strategy selects.
UElement pbw_straighten(const RawProducts& raw, RewriteStrategy strategy = RewriteStrategy::leftmost);

/// Algebra homomorphism A_2 -> U(vect), w_1 -> L_1, w_2 -> L_2.
UElement pi_map(const NCPolynomial& p);
UElement pi_map(const Word& w);

struct DegreeCertificate {
    std::size_t degree = 0;
    Rational value;
    /// Optimal preimage sum c_I w^I with sum |c_I| = value.
    std::vector<std::pair<Word, Rational>> combination;
};

struct QNormResult {
    NormValue value;
    std::vector<DegreeCertificate> certificates;
};

/// Q_[1](u): per degree k, min sum |c_I| over words of degree k with
/// sum c_I pi(w^I) = u^(k), solved as an exact LP; summed over degrees.
/// Throws PreconditionError if some component is outside the image.
QNormResult q1_norm(const UElement& u, PivotRule rule = PivotRule::bland);

/// Q_[1](u) as one LP over all words of degree <= max_degree(u), without
/// splitting by degree. Slower; used to check that the split is exact.
QNormResult q1_norm_joint(const UElement& u);

/// Ordered monomials of degree d (partitions of d), in increasing order.
std::vector<PBWMonomial> pbw_basis(std::size_t d);

/// Q_[t](u) = Q_[1](E_t u).
QNormResult qt_norm(const UElement& u, const Rational& t, PivotRule rule = PivotRule::bland);

struct UpperVectBound {
    /// t|p_1| + 1/4 sum_{j>1} |p_j| (2t)^j/(j-2)!, valid for every t > 0.
    NormValue certified;
    /// |p_1| + 1/4 sum_{j>1} ..., the bound with the j = 1 term unscaled.
    Rational as_displayed;
};

UpperVectBound q_upper_vect(const FormalVectorField& field, const Rational& t);

/// 2^{n-2} t^n/(n-2)! for n >= 2 and t for n = 1.
Rational ln_upper_bound(std::size_t n, const Rational& t);

struct LowerVectBound {
    /// Truncated operator norm of rho(u) on V_t; Q_[scale](u) >= this value.
    NormValue represented;
    /// Certified s with ||rho(L_1)|| <= s and ||rho(L_2)|| <= s^2.
    Rational scale;
    /// Truncated norms of rho(L_1) and rho(L_2) on the same columns.
    NormValue l1_truncated;
    NormValue l2_truncated;
    /// s under the reading ||L_1||_t = t/2 (diagnostic only).
    Rational contested_scale;
};

/// Matrix of u acting on V/x^{dim}V through L_n -> x^{n+1} d/dx.
TriangularOperator represent(const UElement& u, std::size_t dim);

/// Lower bound for Q_[s](u) from the representation on V_t; columns 0..M,
/// with enough rows that no column entry is lost to truncation.
LowerVectBound q_lower_vect(const UElement& u, const Rational& t, std::size_t max_column);

struct InclusionRow {
    std::size_t n = 0;
    Rational q1;          // Q_[1](L_n)
    Rational qt;          // Q_[t](L_n) = t^n Q_[1](L_n)
    Rational upper;       // ln_upper_bound(n, t)
    Rational upper_displayed;
    Rational w_t;         // ||L_n|| in vect_t: t^n/(n+1)!
    Rational w_2t;        // ||L_n|| in vect_2t
    Rational lower_certificate;  // q_lower_vect(L_n, t, M).represented
    bool upper_ok = true;        // qt <= upper
    bool lower_ok = true;        // qt >= w_t and qt >= lower_certificate
    bool contested_lower_ok = true;  // qt >= w_2t (t/2 reading)
};

struct InclusionReport {
    Rational t;
    std::vector<InclusionRow> rows;
    std::vector<std::string> violations;
};

InclusionReport inclusion_check(const Rational& t, std::size_t nmax, std::size_t columns = 30);

}  // namespace prodiff
