#pragma once

#include "singtheta/expansion.hpp"
#include "singtheta/forms.hpp"
#include "singtheta/lattice.hpp"

namespace singtheta {

/// A(S,T): number of integer matrices X with S[X] = T.  S must be
/// positive definite; T may be of any size and rank.
i64 rep_number(const HalfIntegralForm& s, const HalfIntegralForm& t);

/// Representation count for a rational Gram matrix (a lattice basis over
/// the ambient form) against a rational symmetric target.
i64 rep_number(const LatticeBasis& lattice, const MatQ& target);

/// Number of nonsingular integer W with S[W] = T, both positive definite
/// of the same size.  Zero unless det T / det S is a perfect square.
i64 square_rep_count(const HalfIntegralForm& s, const HalfIntegralForm& t);

/// Truncated theta expansion of degree n: coefficient A(S,T) at every
/// semidefinite T with tr(T) <= trace_bound.  Parallelized over the
/// leading column of the enumeration.
FourierExpansion theta_expansion(const HalfIntegralForm& s, int degree, i64 trace_bound);

/// Serial reference implementation of the same expansion; kept for
/// testing and benchmarked against the parallel kernel.
FourierExpansion theta_expansion_serial(const HalfIntegralForm& s, int degree, i64 trace_bound);

} // namespace singtheta
