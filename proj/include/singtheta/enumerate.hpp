#pragma once

#include <utility>
#include <vector>

#include "singtheta/smallmat.hpp"

namespace singtheta {

/// Exact enumeration of integer vectors by quadratic-form value.
///
/// Q must be symmetric positive definite with integer entries (no parity
/// assumption).  All bounds are handled in exact rational arithmetic, so
/// no vector is ever missed or spuriously reported.
class FormEnumerator {
public:
    explicit FormEnumerator(const Mat64& q);

    /// All x in Z^m with x^T Q x == value, sorted lexicographically.
    std::vector<std::vector<i64>> with_value(i64 value) const;

    /// All (x, x^T Q x) with x^T Q x <= bound, sorted by (value, lex).
    /// Includes the zero vector.
    std::vector<std::pair<std::vector<i64>, i64>> up_to(i64 bound) const;

    int dim() const { return m_; }
    i64 value_of(const std::vector<i64>& x) const;

private:
    template <class Emit>
    void walk(const mpq_class& budget, Emit&& emit) const;

    int m_;
    Mat64 q_;
    std::vector<mpq_class> d_; // diagonal of the LDL^T decomposition
    MatQ u_;                   // unit upper triangular factor
};

} // namespace singtheta
