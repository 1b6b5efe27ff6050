#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "prodiff/rational.hpp"
#include "prodiff/series.hpp"
#include "prodiff/triangular.hpp"

namespace prodiff {

enum class NormKind { exact, lower_approx, upper_bound };

std::string_view to_string(NormKind kind);

/// An exact rational norm value together with what it certifies.
///
/// lower_approx means the value is a finite partial sum or a maximum over
/// finitely many columns of a quantity defined by an infinite sum or sup, so
/// the true value is >= this one. upper_bound certifies the true value is <=.
struct NormValue {
    Rational value;
    NormKind kind = NormKind::exact;
    /// Column attaining the maximum, for truncated operator norms.
    std::optional<std::size_t> witness_column;
};

/// sum_{j=2..N} |a_j| sigma^{j-1} / j!. Reported as lower_approx unless the
/// caller declares gamma finitely supported (then the sum is the norm).
NormValue w_norm(const FormalDiffeo& gamma, const Rational& sigma, bool finitely_supported = false);

/// sum_j |p_j| s^j / (j+1)!, the W_s norm of the shifted coefficient sequence.
Rational field_weight_sum(const FormalVectorField& field, const Rational& s);

struct FieldNormBound {
    NormValue lower;
    NormValue upper;
};

/// (sum |p_j| t^j/(j+1)!, 2 sum |p_j| t^j/(j+1)!) bracketing the operator
/// norm of the field on V_t.
FieldNormBound field_norm_bound(const FormalVectorField& field, const Rational& t);

/// max over columns m = 0..M of (m!/t^m) sum_i |A_{im}| t^i / i!: the
/// weighted column-sum norm on V_t, restricted to the first M+1 columns.
NormValue operator_norm_trunc(const TriangularOperator& a, const Rational& t, std::size_t max_column);

/// (n!)^2/(2n)!, the norm of the single-column Q_n.
NormValue qn_norm(std::size_t n);

struct HNormBound {
    NormValue computed;
    NormValue bound;
};

/// Norm of the H operator on V_1 versus 2 sum |a_j|/j!.
HNormBound h_norm_bound(const FormalDiffeo& gamma);

/// U(k_1, k_2, ...) = (s+2)(s+3)...(s+p) prod_j ((j+1)!)^{k_j} / (s+1)!,
/// with s = sum j k_j, p = sum k_j; k[0] is k_1.
Rational u_combinatorial(std::span<const unsigned> k);

/// All tuples (k_1, k_2, ...) with sum j k_j <= max_weight, i.e. partitions
/// of every integer up to max_weight written as multiplicities.
std::vector<std::vector<unsigned>> enumerate_multiplicities(unsigned max_weight);

/// Certified rational upper bound for exp(x), x >= 0.
Rational exp_upper_bound(const Rational& x);

/// Constants of the bound U(k) <= L * M^{sum k}.
inline constexpr unsigned kInversionL = 1;
inline constexpr unsigned kInversionM = 8;

struct InversionNormBound {
    NormValue partial_s;
    NormValue cap;
};

/// partial_s = sum_{n=2..N} |c_n|/n! for the inverse, cap = L exp(M sum |a_j|/j!).
/// Throws InvariantError if partial_s > cap.
InversionNormBound inversion_norm_bound(const FormalDiffeo& gamma);

enum class CoefficientRule { geometric, factorial, subfactorial, factorial_squared, list };

CoefficientRule parse_coefficient_rule(std::string_view name);
std::string_view to_string(CoefficientRule rule);

/// a_j for j = 2..order under a named rule; `list` takes values[j-2] and
/// zero past the list.
FormalDiffeo coefficient_family(CoefficientRule rule, const Rational& r, std::size_t order,
                                std::span<const Rational> values = {});

enum class MembershipClass { all_sigma, small_sigma, divergent };

std::string_view to_string(MembershipClass c);

struct MembershipRow {
    Rational sigma;
    Rational partial_sum;
};

struct MembershipReport {
    CoefficientRule rule;
    std::size_t order;
    std::vector<MembershipRow> rows;
    /// (j, (|a_j|/j!)^{1/(j-1)}) for j = 2..order.
    std::vector<std::pair<std::size_t, double>> indicator;
    MembershipClass classification;
    /// Heuristic radius 1/indicator(order) for the small_sigma class.
    std::optional<double> sigma_limit;
};

/// Root-test diagnostic of membership in W_sigma; heuristic, not a proof.
MembershipReport membership_report(CoefficientRule rule, const Rational& r, std::size_t order,
                                   std::span<const Rational> values = {},
                                   std::span<const Rational> sigma_grid = {});

}  // namespace prodiff
