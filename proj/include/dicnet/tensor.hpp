#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <string>
#include <vector>

#include "dicnet/errors.hpp"

namespace dicnet {

// Dense row-major tensor, rank <= 4. Feature maps are stored CHW.
template <typename T>
class TensorT {
public:
    TensorT() = default;

    explicit TensorT(std::initializer_list<int> shape) { reshape(shape); }
    explicit TensorT(const std::vector<int>& shape) { reshape(shape); }

    void reshape(std::initializer_list<int> shape) {
        reshape(std::vector<int>(shape.begin(), shape.end()));
    }

    void reshape(const std::vector<int>& shape) {
        if (shape.empty() || shape.size() > 4) {
            throw ShapeError("tensor rank must be 1..4, got " + std::to_string(shape.size()));
        }
        rank_ = static_cast<int>(shape.size());
        dims_ = {1, 1, 1, 1};
        size_t n = 1;
        for (int i = 0; i < rank_; ++i) {
            if (shape[i] <= 0) throw ShapeError("tensor dims must be positive");
            dims_[i] = shape[i];
            n *= static_cast<size_t>(shape[i]);
        }
        data_.assign(n, T(0));
    }

    int rank() const { return rank_; }
    int dim(int i) const { return dims_[i]; }
    size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    std::vector<int> shape() const {
        return std::vector<int>(dims_.begin(), dims_.begin() + rank_);
    }

    bool same_shape(const TensorT& o) const { return rank_ == o.rank_ && dims_ == o.dims_; }

    T* data() { return data_.data(); }
    const T* data() const { return data_.data(); }

    T& operator[](size_t i) { return data_[i]; }
    const T& operator[](size_t i) const { return data_[i]; }

    T& at(int i) { return data_[static_cast<size_t>(i)]; }
    T& at(int i, int j) { return data_[static_cast<size_t>(i) * dims_[1] + j]; }
    T& at(int i, int j, int k) {
        return data_[(static_cast<size_t>(i) * dims_[1] + j) * dims_[2] + k];
    }
    T& at(int i, int j, int k, int l) {
        return data_[((static_cast<size_t>(i) * dims_[1] + j) * dims_[2] + k) * dims_[3] + l];
    }
    const T& at(int i) const { return data_[static_cast<size_t>(i)]; }
    const T& at(int i, int j) const { return data_[static_cast<size_t>(i) * dims_[1] + j]; }
    const T& at(int i, int j, int k) const {
        return data_[(static_cast<size_t>(i) * dims_[1] + j) * dims_[2] + k];
    }
    const T& at(int i, int j, int k, int l) const {
        return data_[((static_cast<size_t>(i) * dims_[1] + j) * dims_[2] + k) * dims_[3] + l];
    }

    void fill(T v) { std::fill(data_.begin(), data_.end(), v); }

    bool all_finite() const {
        for (const T& v : data_) {
            if (!std::isfinite(static_cast<double>(v))) return false;
        }
        return true;
    }

    std::string shape_str() const {
        std::string s = "(";
        for (int i = 0; i < rank_; ++i) {
            if (i) s += ",";
            s += std::to_string(dims_[i]);
        }
        return s + ")";
    }

    template <typename U>
    TensorT<U> cast() const {
        TensorT<U> out(shape());
        for (size_t i = 0; i < data_.size(); ++i) out[i] = static_cast<U>(data_[i]);
        return out;
    }

private:
    int rank_ = 0;
    std::array<int, 4> dims_ = {0, 0, 0, 0};
    std::vector<T> data_;
};

using Tensor = TensorT<float>;
using TensorD = TensorT<double>;

}  // namespace dicnet
