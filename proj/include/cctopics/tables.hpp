// Copyright 2026 The cctopics authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CCTOPICS_TABLES_HPP_
#define CCTOPICS_TABLES_HPP_

#include <cassert>
#include <cstddef>
#include <vector>

namespace cctopics {

// Dense row-major count/probability tables. Deliberately minimal: the
// samplers index them in hot loops, everything else iterates data().

template <typename T>
class Table2 {
 public:
  Table2() = default;
  Table2(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  T& operator()(std::size_t r, std::size_t c) {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }
  const T& operator()(std::size_t r, std::size_t c) const {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }
  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

  friend bool operator==(const Table2&, const Table2&) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

template <typename T>
class Table3 {
 public:
  Table3() = default;
  Table3(std::size_t d0, std::size_t d1, std::size_t d2, T fill = T{})
      : d0_(d0), d1_(d1), d2_(d2), data_(d0 * d1 * d2, fill) {}

  T& operator()(std::size_t i, std::size_t j, std::size_t k) {
    assert(i < d0_ && j < d1_ && k < d2_);
    return data_[(i * d1_ + j) * d2_ + k];
  }
  const T& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    assert(i < d0_ && j < d1_ && k < d2_);
    return data_[(i * d1_ + j) * d2_ + k];
  }

  std::size_t dim0() const { return d0_; }
  std::size_t dim1() const { return d1_; }
  std::size_t dim2() const { return d2_; }
  bool empty() const { return data_.empty(); }
  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

  friend bool operator==(const Table3&, const Table3&) = default;

 private:
  std::size_t d0_ = 0, d1_ = 0, d2_ = 0;
  std::vector<T> data_;
};

}  // namespace cctopics

#endif  // CCTOPICS_TABLES_HPP_
