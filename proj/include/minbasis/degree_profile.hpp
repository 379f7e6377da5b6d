#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "minbasis/errors.hpp"

namespace minbasis {

/// Row-degree bounds d1,...,dm for an m x (m+n) polynomial matrix, together
/// with the derived quantities used by the trimmed Sylvester machinery:
/// d = max di, total = sum di, and the split n*k' = total + t with 0 <= t < n.
class DegreeProfile {
 public:
  DegreeProfile(std::vector<int> degrees, int width)
      : degrees_(std::move(degrees)), width_(width) {
    const int m = static_cast<int>(degrees_.size());
    require(m >= 1, ErrorCode::InvalidProfile, "need at least one row");
    require(width_ > m, ErrorCode::InvalidProfile,
            "width must exceed the row count (n >= 1)");
    for (int d : degrees_)
      require(d >= 0, ErrorCode::InvalidProfile, "row degree bounds must be >= 0");
    require(*std::max_element(degrees_.begin(), degrees_.end()) >= 1,
            ErrorCode::InvalidProfile, "largest row degree bound must be >= 1");
  }

  int rows() const { return static_cast<int>(degrees_.size()); }  // m
  int width() const { return width_; }                            // m + n
  int n() const { return width_ - rows(); }
  int degree(int i) const { return degrees_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& degrees() const { return degrees_; }

  int max_degree() const {  // d
    return *std::max_element(degrees_.begin(), degrees_.end());
  }
  int total_degree() const {  // sum of di
    return std::accumulate(degrees_.begin(), degrees_.end(), 0);
  }
  int k_prime() const { return (total_degree() + n() - 1) / n(); }
  int t() const { return n() * k_prime() - total_degree(); }

  /// Row count of the kth trimmed Sylvester matrix, k*m + sum di.
  int trimmed_rows(int k) const { return k * rows() + total_degree(); }
  /// Column count of the kth (trimmed) Sylvester matrix, k*(m+n).
  int sylvester_cols(int k) const { return k * width_; }

  bool operator==(const DegreeProfile& other) const = default;

  std::string to_string() const {
    std::string s = std::to_string(rows()) + "," + std::to_string(n()) + ":";
    for (int i = 0; i < rows(); ++i) {
      if (i) s += ",";
      s += std::to_string(degrees_[static_cast<std::size_t>(i)]);
    }
    return s;
  }

 private:
  std::vector<int> degrees_;
  int width_;
};

}  // namespace minbasis
