/*
 * Copyright 2026 The msrc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "msrc/linalg.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace msrc::linalg {

namespace {

void require_same_field(const Field& a, const Field& b) {
  if (!(a == b)) throw Error(ErrorCode::DimensionMismatch, "operands over different fields");
}

std::string shape(const Mat& a) {
  return std::to_string(a.rows()) + "x" + std::to_string(a.cols());
}

// Reduces m to row echelon form in place (pivot = first nonzero entry at or
// below the current row, lowest row index). Returns the pivot columns.
std::vector<std::size_t> echelon(Mat& m, std::size_t col_limit) {
  const Field& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < col_limit && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && m(piv, col).value == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row) {
      auto a = m.row(piv);
      auto b = m.row(row);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    const Element inv = f.inv(m(row, col));
    for (auto& x : m.row(row)) x = f.mul(x, inv);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row) continue;
      const Element factor = m(r, col);
      if (factor.value == 0) continue;
      auto dst = m.row(r);
      auto src = m.row(row);
      for (std::size_t c = col; c < m.cols(); ++c) {
        if (src[c].value != 0) dst[c] = f.sub(dst[c], f.mul(factor, src[c]));
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

bool Vec::is_zero() const {
  return std::all_of(elems_.begin(), elems_.end(), [](Element e) { return e.value == 0; });
}

Mat Mat::identity(const Field& field, std::size_t n) {
  Mat m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
  return m;
}

Mat Mat::from_rows(const Field& field, const std::vector<std::vector<std::uint32_t>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Mat m(field, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(ErrorCode::DimensionMismatch, "ragged matrix literal");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = field.element(rows[r][c]);
  }
  return m;
}

Mat mat_mul(const Mat& a, const Mat& b) {
  require_same_field(a.field(), b.field());
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "cannot multiply " + shape(a) + " by " + shape(b));
  }
  const Field& f = a.field();
  Mat out(f, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto dst = out.row(i);
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const Element x = a(i, l);
      if (x.value == 0) continue;
      auto src = b.row(l);
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (src[j].value != 0) dst[j] = f.add(dst[j], f.mul(x, src[j]));
      }
    }
  }
  return out;
}

void mat_vec_accumulate(const Mat& a, std::span<const Element> x, std::span<Element> y) {
  if (a.cols() != x.size() || a.rows() != y.size()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix-vector shape mismatch for " + shape(a));
  }
  const Field& f = a.field();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Element acc = y[i];
    auto row = a.row(i);
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (row[j].value != 0 && x[j].value != 0) acc = f.add(acc, f.mul(row[j], x[j]));
    }
    y[i] = acc;
  }
}

Vec mat_vec(const Mat& a, const Vec& x) {
  require_same_field(a.field(), x.field());
  Vec out(a.field(), a.rows());
  mat_vec_accumulate(a, x.elems(), out.elems());
  return out;
}

Mat add(const Mat& a, const Mat& b) {
  require_same_field(a.field(), b.field());
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "cannot add " + shape(a) + " and " + shape(b));
  }
  Mat out = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a.field().add(a(i, j), b(i, j));
  }
  return out;
}

Mat scale(const Mat& a, Element s) {
  Mat out = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (auto& x : out.row(i)) x = a.field().mul(x, s);
  }
  return out;
}

Mat transpose(const Mat& a) {
  Mat out(a.field(), a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  }
  return out;
}

Vec add(const Vec& a, const Vec& b) {
  require_same_field(a.field(), b.field());
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "vector length mismatch");
  Vec out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a.field().add(a[i], b[i]);
  return out;
}

Vec scale(const Vec& a, Element s) {
  Vec out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a.field().mul(a[i], s);
  return out;
}

Vec solve(const Mat& a, const Vec& b) {
  require_same_field(a.field(), b.field());
  if (a.rows() != a.cols() || b.size() != a.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "solve needs a square system, got " + shape(a));
  }
  const std::size_t n = a.rows();
  Mat aug(a.field(), n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    std::copy(a.row(i).begin(), a.row(i).end(), aug.row(i).begin());
    aug(i, n) = b[i];
  }
  if (echelon(aug, n).size() != n) throw Error(ErrorCode::Singular, "singular system");
  Vec x(a.field(), n);
  for (std::size_t i = 0; i < n; ++i) x[i] = aug(i, n);
  return x;
}

Mat inverse(const Mat& a) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "inverse of non-square " + shape(a));
  }
  const std::size_t n = a.rows();
  Mat aug(a.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    std::copy(a.row(i).begin(), a.row(i).end(), aug.row(i).begin());
    aug(i, n + i) = a.field().one();
  }
  if (echelon(aug, n).size() != n) throw Error(ErrorCode::Singular, "singular matrix");
  return extract_block(aug, 0, n, n, n);
}

std::size_t rank(const Mat& a) {
  Mat work = a;
  return echelon(work, work.cols()).size();
}

bool is_nonsingular(const Mat& a) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "non-singularity of non-square " + shape(a));
  }
  return rank(a) == a.rows();
}

Mat assemble_blocks(const std::vector<std::vector<Mat>>& blocks) {
  if (blocks.empty() || blocks.front().empty()) {
    throw Error(ErrorCode::DimensionMismatch, "empty block grid");
  }
  const std::size_t grid_cols = blocks.front().size();
  const Field& f = blocks.front().front().field();
  std::vector<std::size_t> widths(grid_cols);
  for (std::size_t j = 0; j < grid_cols; ++j) widths[j] = blocks.front()[j].cols();
  std::size_t total_rows = 0;
  for (const auto& grid_row : blocks) {
    if (grid_row.size() != grid_cols) throw Error(ErrorCode::DimensionMismatch, "ragged block grid");
    const std::size_t h = grid_row.front().rows();
    for (std::size_t j = 0; j < grid_cols; ++j) {
      require_same_field(f, grid_row[j].field());
      if (grid_row[j].rows() != h || grid_row[j].cols() != widths[j]) {
        throw Error(ErrorCode::DimensionMismatch, "block shapes disagree within the grid");
      }
    }
    total_rows += h;
  }
  std::size_t total_cols = 0;
  for (auto w : widths) total_cols += w;

  Mat out(f, total_rows, total_cols);
  std::size_t row0 = 0;
  for (const auto& grid_row : blocks) {
    std::size_t col0 = 0;
    for (std::size_t j = 0; j < grid_cols; ++j) {
      const Mat& b = grid_row[j];
      for (std::size_t r = 0; r < b.rows(); ++r) {
        std::copy(b.row(r).begin(), b.row(r).end(), out.row(row0 + r).begin() + col0);
      }
      col0 += widths[j];
    }
    row0 += grid_row.front().rows();
  }
  return out;
}

Mat extract_block(const Mat& a, std::size_t row0, std::size_t col0, std::size_t rows,
                  std::size_t cols) {
  if (row0 + rows > a.rows() || col0 + cols > a.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "block outside of " + shape(a));
  }
  Mat out(a.field(), rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    auto src = a.row(row0 + r);
    std::copy(src.begin() + col0, src.begin() + col0 + cols, out.row(r).begin());
  }
  return out;
}

}  // namespace msrc::linalg
