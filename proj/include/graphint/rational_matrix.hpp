#pragma once

// Exact rational square matrices indexed by vertex order: A_E and P.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "graphint/graph.hpp"
#include "graphint/radical.hpp"

namespace graphint {

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RationalMatrix identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Rational column_sum(std::size_t j) const {
    Rational s = 0;
    for (std::size_t i = 0; i < rows_; ++i) s += (*this)(i, j);
    return s;
  }

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("RationalMatrix: shape mismatch in product");
    RationalMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }
  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

  /// Entries as exact fraction strings, row-major.
  nlohmann::ordered_json to_json() const {
    auto out = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < rows_; ++i) {
      auto row = nlohmann::ordered_json::array();
      for (std::size_t j = 0; j < cols_; ++j) row.push_back(to_string((*this)(i, j)));
      out.push_back(std::move(row));
    }
    return out;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

/// A(v,w) = number of edges v -> w.
inline RationalMatrix adjacency_matrix(const Graph& g) {
  RationalMatrix a(g.vertex_count(), g.vertex_count());
  for (const auto& e : g.edges()) a(e.src, e.dst) += 1;
  return a;
}

/// P(v,w) = A(v,w) / n_w, with n_w the in-degree of w.
inline RationalMatrix transition_matrix(const Graph& g) {
  RationalMatrix p = adjacency_matrix(g);
  for (std::size_t w = 0; w < g.vertex_count(); ++w) {
    auto n = g.in_degree(static_cast<VertexId>(w));
    if (n == 0) continue;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) p(v, w) /= Rational(static_cast<long long>(n));
  }
  return p;
}

/// Every column sums to exactly 0 or exactly 1.
inline bool is_partially_stochastic(const RationalMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) < 0) throw std::domain_error("is_partially_stochastic: negative entry");
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Rational s = m.column_sum(j);
    if (s != 0 && s != 1) return false;
  }
  return true;
}

inline RationalMatrix matrix_power(const RationalMatrix& m, unsigned n) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix_power: non-square matrix");
  RationalMatrix r = RationalMatrix::identity(m.rows());
  for (unsigned i = 0; i < n; ++i) r = r * m;
  return r;
}

}  // namespace graphint
