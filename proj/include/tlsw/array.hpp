#pragma once

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace tlsw {

/// Dense row-major array indexed by (level, time). Level 1 is the finest
/// scale, i.e. row r holds scale j = -(r + 1).
class ScaleTimeArray {
 public:
  ScaleTimeArray() = default;
  ScaleTimeArray(std::size_t levels, std::size_t length, double fill = 0.0)
      : levels_(levels), length_(length), data_(levels * length, fill) {}

  std::size_t levels() const noexcept { return levels_; }
  std::size_t length() const noexcept { return length_; }
  bool empty() const noexcept { return data_.empty(); }

  /// Row for level 1..levels().
  std::span<double> level(std::size_t lev) {
    assert(lev >= 1 && lev <= levels_);
    return {data_.data() + (lev - 1) * length_, length_};
  }
  std::span<const double> level(std::size_t lev) const {
    assert(lev >= 1 && lev <= levels_);
    return {data_.data() + (lev - 1) * length_, length_};
  }

  double& operator()(std::size_t lev, std::size_t t) { return data_[(lev - 1) * length_ + t]; }
  double operator()(std::size_t lev, std::size_t t) const {
    return data_[(lev - 1) * length_ + t];
  }

  std::span<const double> flat() const noexcept { return data_; }
  std::span<double> flat() noexcept { return data_; }

  friend bool operator==(const ScaleTimeArray&, const ScaleTimeArray&) = default;

 private:
  std::size_t levels_ = 0;
  std::size_t length_ = 0;
  std::vector<double> data_;
};

}  // namespace tlsw
