#pragma once

#include "prodiff/series.hpp"

namespace prodiff {

/// [A, B] extended bilinearly from [L_n, L_m] = (m - n) L_{n+m}; this is the
/// commutator of the operators x^{n+1} d/dx. Orders must match.
FormalVectorField bracket(const FormalVectorField& a, const FormalVectorField& b);

/// Time-one flow of the field, read off from exp(rep_field) applied to x.
///
/// A field of order N (p_1..p_N) determines the diffeomorphism through
/// x^{N+1}, so the result has order N + 1.
FormalDiffeo exp_field(const FormalVectorField& field);

/// Same map computed as the solution of d phi/ds = v(phi), phi(0) = x, by
/// Picard iteration on series whose coefficients are polynomials in s.
FormalDiffeo exp_field_flow(const FormalVectorField& field);

/// Inverse of exp_field: the first column of log T(gamma). A diffeomorphism of
/// order N yields a field of order N - 1. The whole logarithm is checked to be
/// the matrix of a vector field; failure throws InvariantError.
FormalVectorField log_diffeo(const FormalDiffeo& gamma);

/// log(exp(A) exp(B)) with the group product of compose(). Orders must match.
FormalVectorField bch(const FormalVectorField& a, const FormalVectorField& b);

}  // namespace prodiff
