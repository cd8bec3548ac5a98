#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace page {

// Dense row-major 2D array. rows() is the image height, cols() the width.
template <typename T>
class Array2D {
public:
    Array2D() = default;
    Array2D(int rows, int cols, T fill = T{})
        : rows_(rows),
          cols_(cols),
          data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill) {
        assert(rows >= 0 && cols >= 0);
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    T& operator()(int r, int c) {
        assert(in_bounds(r, c));
        return data_[index(r, c)];
    }
    const T& operator()(int r, int c) const {
        assert(in_bounds(r, c));
        return data_[index(r, c)];
    }

    T* data() { return data_.data(); }
    const T* data() const { return data_.data(); }

    auto begin() { return data_.begin(); }
    auto end() { return data_.end(); }
    auto begin() const { return data_.begin(); }
    auto end() const { return data_.end(); }

    bool same_shape(const Array2D& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

    friend bool operator==(const Array2D&, const Array2D&) = default;

private:
    std::size_t index(int r, int c) const {
        return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) +
               static_cast<std::size_t>(c);
    }
    bool in_bounds(int r, int c) const {
        return r >= 0 && r < rows_ && c >= 0 && c < cols_;
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<T> data_;
};

}  // namespace page
