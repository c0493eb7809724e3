#include "poisson_forge/linalg.hpp"

#include <algorithm>
#include <utility>

#include "poisson_forge/error.hpp"

namespace poisson_forge {

namespace {

// row -= factor * pivot_row
void axpy(SparseRow& row, const Rational& factor, const SparseRow& pivot_row) {
  for (const auto& [c, v] : pivot_row) {
    auto [it, inserted] = row.try_emplace(c, -factor * v);
    if (!inserted) {
      it->second -= factor * v;
      if (it->second == 0) row.erase(it);
    }
  }
}

}  // namespace

Rref rref(const std::vector<SparseRow>& input, std::size_t columns) {
  std::map<std::size_t, SparseRow> by_pivot;
  for (const auto& original : input) {
    SparseRow row;
    for (const auto& [c, v] : original) {
      if (c >= columns) throw Error(ErrorKind::kInvalidArgument, "column index out of range");
      if (v != 0) row.emplace(c, v);
    }
    std::size_t from = 0;
    auto it = row.end();
    for (;;) {
      it = row.lower_bound(from);
      if (it == row.end()) break;
      auto p = by_pivot.find(it->first);
      if (p == by_pivot.end()) break;
      from = it->first + 1;
      Rational factor = it->second;
      axpy(row, factor, p->second);
    }
    if (it == row.end()) continue;
    // Entries before `it` are all eliminated, so `it` leads.
    Rational lead = it->second;
    for (auto& [c, v] : row) v /= lead;
    by_pivot.emplace(it->first, std::move(row));
  }
  // Back substitution, highest pivot first.
  for (auto p = by_pivot.rbegin(); p != by_pivot.rend(); ++p) {
    for (auto q = by_pivot.begin(); q->first != p->first; ++q) {
      auto hit = q->second.find(p->first);
      if (hit != q->second.end()) {
        Rational factor = hit->second;
        axpy(q->second, factor, p->second);
      }
    }
  }
  Rref out;
  out.columns = columns;
  for (auto& [c, row] : by_pivot) {
    out.pivots.push_back(c);
    out.rows.push_back(std::move(row));
  }
  return out;
}

std::optional<std::vector<Rational>> solve(const std::vector<SparseRow>& a, const std::vector<Rational>& b,
                                           std::size_t columns) {
  if (a.size() != b.size()) throw Error(ErrorKind::kInvalidArgument, "right-hand side has the wrong length");
  std::vector<SparseRow> augmented = a;
  for (std::size_t r = 0; r < a.size(); ++r) {
    if (b[r] != 0) augmented[r][columns] = b[r];
  }
  Rref red = rref(augmented, columns + 1);
  std::vector<Rational> x(columns, Rational(0));
  for (std::size_t r = 0; r < red.rows.size(); ++r) {
    if (red.pivots[r] == columns) return std::nullopt;
    auto it = red.rows[r].find(columns);
    if (it != red.rows[r].end()) x[red.pivots[r]] = it->second;
  }
  return x;
}

std::vector<std::vector<Rational>> nullspace(const std::vector<SparseRow>& a, std::size_t columns) {
  Rref red = rref(a, columns);
  std::vector<bool> is_pivot(columns, false);
  for (std::size_t p : red.pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < columns; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(columns, Rational(0));
    v[f] = 1;
    for (std::size_t r = 0; r < red.rows.size(); ++r) {
      auto it = red.rows[r].find(f);
      if (it != red.rows[r].end()) v[red.pivots[r]] = -it->second;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<std::vector<Rational>> canonical_span(const std::vector<std::vector<Rational>>& vectors) {
  if (vectors.empty()) return {};
  std::size_t n = vectors.front().size();
  std::vector<SparseRow> rows;
  for (const auto& v : vectors) {
    SparseRow r;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] != 0) r.emplace(i, v[i]);
    }
    rows.push_back(std::move(r));
  }
  Rref red = rref(rows, n);
  std::vector<std::vector<Rational>> out;
  for (const auto& r : red.rows) {
    std::vector<Rational> v(n, Rational(0));
    for (const auto& [c, x] : r) v[c] = x;
    out.push_back(std::move(v));
  }
  return out;
}

IntegerMatrix hermite_normal_form(IntegerMatrix rows) {
  if (rows.empty()) return rows;
  const std::size_t n = rows.front().size();
  std::size_t top = 0;
  for (std::size_t c = 0; c < n && top < rows.size(); ++c) {
    // gcd-combine column c of rows top.. into row top
    for (std::size_t r = top + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      BigInt a = rows[top][c], b = rows[r][c], g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      BigInt ag = a / g, bg = b / g;
      for (std::size_t k = 0; k < n; ++k) {
        BigInt x = rows[top][k], y = rows[r][k];
        rows[top][k] = s * x + t * y;
        rows[r][k] = -bg * x + ag * y;
      }
    }
    if (rows[top][c] == 0) continue;
    if (rows[top][c] < 0) {
      for (auto& x : rows[top]) x = -x;
    }
    for (std::size_t r = 0; r < top; ++r) {
      BigInt q;
      mpz_fdiv_q(q.get_mpz_t(), rows[r][c].get_mpz_t(), rows[top][c].get_mpz_t());
      if (q == 0) continue;
      for (std::size_t k = 0; k < n; ++k) rows[r][k] -= q * rows[top][k];
    }
    ++top;
  }
  rows.resize(top);
  return rows;
}

IntegerMatrix integer_left_kernel(const RationalMatrix& m) {
  const std::size_t n = m.size();
  // A[i][k] = m[k][i] scaled to integers row by row; we need A v = 0.
  std::size_t cols_m = n == 0 ? 0 : m.front().size();
  IntegerMatrix a(cols_m, std::vector<BigInt>(n));
  for (std::size_t i = 0; i < cols_m; ++i) {
    BigInt l = 1;
    for (std::size_t k = 0; k < n; ++k) {
      if (m[k].size() != cols_m) throw Error(ErrorKind::kInvalidArgument, "ragged matrix");
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m[k][i].get_den_mpz_t());
    }
    for (std::size_t k = 0; k < n; ++k) a[i][k] = BigInt(m[k][i].get_num() * (l / m[k][i].get_den()));
  }
  IntegerMatrix u(n, std::vector<BigInt>(n, BigInt(0)));
  for (std::size_t k = 0; k < n; ++k) u[k][k] = 1;
  // Column operations on a, mirrored on u, until trailing columns of a vanish.
  std::size_t p = 0;
  for (std::size_t r = 0; r < cols_m && p < n; ++r) {
    for (std::size_t c = p + 1; c < n; ++c) {
      if (a[r][c] == 0) continue;
      BigInt x = a[r][p], y = a[r][c], g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
      BigInt xg = x / g, yg = y / g;
      auto mix = [&](IntegerMatrix& mat) {
        for (auto& row : mat) {
          BigInt cp = row[p], cc = row[c];
          row[p] = s * cp + t * cc;
          row[c] = -yg * cp + xg * cc;
        }
      };
      mix(a);
      mix(u);
    }
    if (a[r][p] != 0) ++p;
  }
  IntegerMatrix basis;
  for (std::size_t c = p; c < n; ++c) {
    std::vector<BigInt> v(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = u[k][c];
    basis.push_back(std::move(v));
  }
  return hermite_normal_form(std::move(basis));
}

}  // namespace poisson_forge
