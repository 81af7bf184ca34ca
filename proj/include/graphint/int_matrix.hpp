#pragma once

// Dense arbitrary-precision integer matrices, Smith normal form and the
// finitely generated abelian groups read off from it.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "graphint/errors.hpp"
#include "graphint/radical.hpp"

namespace graphint {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("IntMatrix: ragged initializer");
      for (long long x : row) data_.emplace_back(x);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<std::string>& row_labels() const noexcept { return row_labels_; }
  const std::vector<std::string>& col_labels() const noexcept { return col_labels_; }
  void set_labels(std::vector<std::string> rows, std::vector<std::string> cols) {
    if ((!rows.empty() && rows.size() != rows_) || (!cols.empty() && cols.size() != cols_))
      throw std::invalid_argument("IntMatrix: label count does not match shape");
    for (const auto* labels : {&rows, &cols}) {
      auto sorted = *labels;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("IntMatrix: duplicate label");
    }
    row_labels_ = std::move(rows);
    col_labels_ = std::move(cols);
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    t.row_labels_ = col_labels_;
    t.col_labels_ = row_labels_;
    return t;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("IntMatrix: shape mismatch in product");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Integer& x = a(i, k);
        if (x == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
      }
    return c;
  }

  /// Entry-wise equality; labels are metadata and do not participate.
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
  }

  // Elementary operations used by the normal form.
  void swap_rows(std::size_t i, std::size_t k) {
    if (i == k) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(i, j), (*this)(k, j));
  }
  void swap_cols(std::size_t j, std::size_t k) {
    if (j == k) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, j), (*this)(i, k));
  }
  /// row_i += q * row_k
  void add_row(std::size_t i, std::size_t k, const Integer& q) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) += q * (*this)(k, j);
  }
  /// col_j += q * col_k
  void add_col(std::size_t j, std::size_t k, const Integer& q) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) += q * (*this)(i, k);
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
  }

  nlohmann::ordered_json to_json() const {
    auto out = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < rows_; ++i) {
      auto row = nlohmann::ordered_json::array();
      for (std::size_t j = 0; j < cols_; ++j) {
        const Integer& x = (*this)(i, j);
        if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
          row.push_back(x.convert_to<long long>());
        else
          row.push_back(x.str());
      }
      out.push_back(std::move(row));
    }
    return out;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Integer> data_;
  std::vector<std::string> row_labels_, col_labels_;
};

/// U * M * W = D with U, W unimodular and D diagonal, d_1 | d_2 | ... | d_r, then zeros.
struct SmithDecomposition {
  IntMatrix U, D, W;

  std::size_t rank() const {
    std::size_t r = 0;
    while (r < std::min(D.rows(), D.cols()) && D(r, r) != 0) ++r;
    return r;
  }
  std::vector<Integer> invariant_factors() const {
    std::vector<Integer> out;
    for (std::size_t i = 0; i < rank(); ++i) out.push_back(D(i, i));
    return out;
  }
};

namespace detail {

/// Position of a nonzero entry of least absolute value in D[t.., t..].
inline std::optional<std::pair<std::size_t, std::size_t>> smallest_entry(const IntMatrix& d, std::size_t t) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  Integer best_abs;
  for (std::size_t i = t; i < d.rows(); ++i)
    for (std::size_t j = t; j < d.cols(); ++j) {
      if (d(i, j) == 0) continue;
      Integer a = abs(d(i, j));
      if (!best || a < best_abs) {
        best = {i, j};
        best_abs = a;
        if (best_abs == 1) return best;
      }
    }
  return best;
}

inline bool smith_form_holds(const IntMatrix& m, const SmithDecomposition& s) {
  if (s.U * m * s.W != s.D) return false;
  const IntMatrix& d = s.D;
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (i != j && d(i, j) != 0) return false;
  std::size_t r = s.rank();
  for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) {
    if (i < r) {
      if (d(i, i) <= 0) return false;
      if (i + 1 < r && d(i + 1, i + 1) % d(i, i) != 0) return false;
    } else if (d(i, i) != 0) {
      return false;
    }
  }
  return true;
}

}  // namespace detail

/// Classic elementary-operation reduction. Each round moves an entry of least
/// absolute value into the pivot, clears its row and column by Euclidean
/// steps, and repairs divisibility by folding an offending row into the pivot
/// row; every repair strictly shrinks |pivot|, so the loop terminates. Inputs
/// here are at most a few dozen rows, so no modular or lattice-reduction
/// tricks are needed to contain coefficient growth.
inline SmithDecomposition smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  SmithDecomposition s{IntMatrix::identity(rows), m, IntMatrix::identity(cols)};
  IntMatrix &U = s.U, &D = s.D, &W = s.W;

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    auto pivot = detail::smallest_entry(D, t);
    if (!pivot) break;
    auto move_to_pivot = [&](std::size_t i, std::size_t j) {
      D.swap_rows(t, i);
      U.swap_rows(t, i);
      D.swap_cols(t, j);
      W.swap_cols(t, j);
    };
    move_to_pivot(pivot->first, pivot->second);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (D(i, t) == 0) continue;
        Integer q = D(i, t) / D(t, t);
        D.add_row(i, t, -q);
        U.add_row(i, t, -q);
        if (D(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (D(t, j) == 0) continue;
        Integer q = D(t, j) / D(t, t);
        D.add_col(j, t, -q);
        W.add_col(j, t, -q);
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) {
        // A nonzero remainder is smaller than the pivot; promote the smallest.
        std::size_t bi = t, bj = t;
        Integer best = abs(D(t, t));
        for (std::size_t i = t + 1; i < rows; ++i)
          if (D(i, t) != 0 && abs(D(i, t)) < best) best = abs(D(i, t)), bi = i, bj = t;
        for (std::size_t j = t + 1; j < cols; ++j)
          if (D(t, j) != 0 && abs(D(t, j)) < best) best = abs(D(t, j)), bi = t, bj = j;
        move_to_pivot(bi, bj);
        continue;
      }
      bool divisible = true;
      for (std::size_t i = t + 1; i < rows && divisible; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (D(i, j) % D(t, t) != 0) {
            D.add_row(t, i, 1);
            U.add_row(t, i, 1);
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (D(t, t) < 0) {
      D.negate_row(t);
      U.negate_row(t);
    }
  }

  if (!detail::smith_form_holds(m, s)) throw OracleMismatch("smith_normal_form: U*M*W != D or D not in normal form");
  return s;
}

/// Finitely generated abelian group Z^rank + Z/d_1 + ... with d_i > 1, d_i | d_{i+1}.
struct AbelianGroup {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;

  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }

  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;

  std::string str() const {
    std::vector<std::string> parts;
    if (free_rank == 1) parts.push_back("Z");
    if (free_rank > 1) parts.push_back("Z^" + std::to_string(free_rank));
    for (const auto& d : torsion) parts.push_back("Z/" + d.str());
    if (parts.empty()) return "0";
    std::string out = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) out += " + " + parts[i];
    return out;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["rank"] = free_rank;
    auto t = nlohmann::ordered_json::array();
    for (const auto& d : torsion) {
      if (d <= std::numeric_limits<long long>::max())
        t.push_back(d.convert_to<long long>());
      else
        t.push_back(d.str());
    }
    j["torsion"] = std::move(t);
    return j;
  }
};

/// Kernel of M : Z^cols -> Z^rows. Subgroups of free groups are free.
inline AbelianGroup kernel_group(const IntMatrix& m) {
  if (m.cols() == 0) return {};
  return AbelianGroup{m.cols() - smith_normal_form(m).rank(), {}};
}

/// Cokernel Z^rows / M Z^cols.
inline AbelianGroup cokernel_group(const IntMatrix& m) {
  if (m.rows() == 0) return {};
  auto s = smith_normal_form(m);
  AbelianGroup g{m.rows() - s.rank(), {}};
  for (const auto& d : s.invariant_factors())
    if (d > 1) g.torsion.push_back(d);
  return g;
}

/// Columns form a Z-basis of the integer kernel lattice {x : M x = 0}.
inline IntMatrix kernel_basis(const IntMatrix& m) {
  auto s = smith_normal_form(m);
  std::size_t r = s.rank();
  IntMatrix basis(m.cols(), m.cols() - r);
  for (std::size_t i = 0; i < m.cols(); ++i)
    for (std::size_t j = r; j < m.cols(); ++j) basis(i, j - r) = s.W(i, j);
  return basis;
}

/// Integer solution X of B X = R for B of full column rank. Throws if some
/// column of R is not an integral combination of the columns of B.
inline IntMatrix solve_integral(const IntMatrix& b, const IntMatrix& r) {
  if (b.rows() != r.rows()) throw std::invalid_argument("solve_integral: shape mismatch");
  auto s = smith_normal_form(b);
  if (s.rank() != b.cols()) throw std::invalid_argument("solve_integral: B lacks full column rank");
  IntMatrix ur = s.U * r;
  IntMatrix y(b.cols(), r.cols());
  for (std::size_t i = 0; i < ur.rows(); ++i)
    for (std::size_t j = 0; j < ur.cols(); ++j) {
      if (i < b.cols()) {
        if (ur(i, j) % s.D(i, i) != 0) throw std::domain_error("solve_integral: no integral solution");
        y(i, j) = ur(i, j) / s.D(i, i);
      } else if (ur(i, j) != 0) {
        throw std::domain_error("solve_integral: no solution");
      }
    }
  return s.W * y;
}

}  // namespace graphint
