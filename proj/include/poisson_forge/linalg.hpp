#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "poisson_forge/rational.hpp"

namespace poisson_forge {

using SparseRow = std::map<std::size_t, Rational>;
using IntegerMatrix = std::vector<std::vector<BigInt>>;

// Reduced row echelon form; pivots[r] is the leading column of rows[r], rows
// sorted by pivot, every pivot equal to 1 and alone in its column.
struct Rref {
  std::size_t columns = 0;
  std::vector<SparseRow> rows;
  std::vector<std::size_t> pivots;

  std::size_t rank() const noexcept { return rows.size(); }
};

Rref rref(const std::vector<SparseRow>& rows, std::size_t columns);

// One particular solution of A x = b with every free variable set to 0.
std::optional<std::vector<Rational>> solve(const std::vector<SparseRow>& a, const std::vector<Rational>& b,
                                           std::size_t columns);

// Basis of {x : A x = 0}, one vector per free column (x_free = 1).
std::vector<std::vector<Rational>> nullspace(const std::vector<SparseRow>& a, std::size_t columns);

// Canonical basis of a subspace spanned by the given vectors (rows of their RREF).
std::vector<std::vector<Rational>> canonical_span(const std::vector<std::vector<Rational>>& vectors);

// Row Hermite normal form: positive pivots, entries above a pivot reduced
// into [0, pivot), zero rows dropped.
IntegerMatrix hermite_normal_form(IntegerMatrix rows);

// Basis of {v in Z^n : sum_k v_k m[k][i] = 0 for all i}, saturated and in
// row Hermite normal form.
IntegerMatrix integer_left_kernel(const RationalMatrix& m);

}  // namespace poisson_forge
