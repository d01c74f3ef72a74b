#pragma once

#include <string>
#include <vector>

#include "ffl/errors.hpp"

namespace ffl {

// Total self-mapping f: X -> X given as an index table. The fixed-point
// set is derived once at construction.
class SelfMap {
public:
  SelfMap(std::vector<int> image, int n) : image_(std::move(image)) {
    if (static_cast<int>(image_.size()) != n)
      throw ParameterError("self-map table must have exactly " + std::to_string(n) +
                           " entries, got " + std::to_string(image_.size()));
    for (int i = 0; i < n; ++i)
      if (image_[static_cast<size_t>(i)] < 0 || image_[static_cast<size_t>(i)] >= n)
        throw ParameterError("self-map image out of range at index " + std::to_string(i));
    for (int i = 0; i < n; ++i)
      if (image_[static_cast<size_t>(i)] == i) fix_.push_back(i);
  }

  static SelfMap identity(int n) {
    std::vector<int> img(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) img[static_cast<size_t>(i)] = i;
    return SelfMap(std::move(img), n);
  }

  static SelfMap constant(int n, int p) {
    std::vector<int> img(static_cast<size_t>(n), p);
    return SelfMap(std::move(img), n);
  }

  int size() const { return static_cast<int>(image_.size()); }
  int operator()(int i) const { return image_.at(static_cast<size_t>(i)); }
  const std::vector<int>& image() const { return image_; }

  // Fix(f) = { x : f(x) = x }, sorted by index.
  const std::vector<int>& fix_set() const { return fix_; }
  bool is_fixed(int i) const { return image_.at(static_cast<size_t>(i)) == i; }
  bool is_identity() const { return static_cast<int>(fix_.size()) == size(); }

  bool operator==(const SelfMap&) const = default;

private:
  std::vector<int> image_;
  std::vector<int> fix_;
};

}  // namespace ffl
