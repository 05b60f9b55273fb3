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
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "msrc/gf.hpp"

namespace msrc::linalg {

using gf::Element;
using gf::Field;

class Vec {
 public:
  Vec(Field field, std::size_t len) : field_(std::move(field)), elems_(len) {}
  Vec(Field field, std::vector<Element> elems)
      : field_(std::move(field)), elems_(std::move(elems)) {}

  const Field& field() const { return field_; }
  std::size_t size() const { return elems_.size(); }
  Element operator[](std::size_t i) const { return elems_[i]; }
  Element& operator[](std::size_t i) { return elems_[i]; }
  std::span<const Element> elems() const { return elems_; }
  std::span<Element> elems() { return elems_; }
  bool is_zero() const;

  friend bool operator==(const Vec& a, const Vec& b) {
    return a.field_ == b.field_ && a.elems_ == b.elems_;
  }

 private:
  Field field_;
  std::vector<Element> elems_;
};

// Dense row-major matrix over one field.
class Mat {
 public:
  Mat(Field field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols) {}

  static Mat identity(const Field& field, std::size_t n);
  // Rows given as nested lists of residues; for tests and small literals.
  static Mat from_rows(const Field& field,
                       const std::vector<std::vector<std::uint32_t>>& rows);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Element operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Element& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::span<const Element> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<Element> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Element> data_;
};

Mat mat_mul(const Mat& a, const Mat& b);
Vec mat_vec(const Mat& a, const Vec& x);
// y += a * x over raw spans; sizes must match a's shape.
void mat_vec_accumulate(const Mat& a, std::span<const Element> x, std::span<Element> y);
Mat add(const Mat& a, const Mat& b);
Mat scale(const Mat& a, Element s);
Mat transpose(const Mat& a);
Vec add(const Vec& a, const Vec& b);
Vec scale(const Vec& a, Element s);

// Unique x with a*x = b; throws Singular when a has no full pivot set.
Vec solve(const Mat& a, const Vec& b);
Mat inverse(const Mat& a);
std::size_t rank(const Mat& a);
bool is_nonsingular(const Mat& a);

// Concatenates a grid of blocks. Heights must agree along a grid row and
// widths along a grid column.
Mat assemble_blocks(const std::vector<std::vector<Mat>>& blocks);
Mat extract_block(const Mat& a, std::size_t row0, std::size_t col0, std::size_t rows,
                  std::size_t cols);

}  // namespace msrc::linalg
