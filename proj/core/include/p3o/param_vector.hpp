#ifndef P3O_PARAM_VECTOR_HPP_
#define P3O_PARAM_VECTOR_HPP_

#include <cmath>
#include <cstddef>
#include <vector>

#include "p3o/error.hpp"

namespace p3o {

/// Flat parameter vector for a policy or value function. Length is fixed at
/// construction; every gradient in the library aligns with it index-for-index.
class ParamVector {
 public:
  ParamVector() = default;

  explicit ParamVector(std::size_t n) : values_(n, 0.0) {}

  explicit ParamVector(std::vector<double> values) : values_(std::move(values)) {
    if (!all_finite()) throw NumericError("ParamVector: non-finite entry");
  }

  static ParamVector zeros(std::size_t n) { return ParamVector(n); }

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  const std::vector<double>& values() const { return values_; }
  double* data() { return values_.data(); }
  const double* data() const { return values_.data(); }

  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  ParamVector& operator+=(const ParamVector& other) {
    check_same_size(other);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
    return *this;
  }

  /// this += alpha * other
  void axpy(double alpha, const ParamVector& other) {
    check_same_size(other);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += alpha * other.values_[i];
  }

  void scale(double alpha) {
    for (double& v : values_) v *= alpha;
  }

  double l2_norm() const {
    double s = 0.0;
    for (double v : values_) s += v * v;
    return std::sqrt(s);
  }

  bool all_finite() const {
    for (double v : values_) {
      if (!std::isfinite(v)) return false;
    }
    return true;
  }

  bool operator==(const ParamVector& other) const { return values_ == other.values_; }

 private:
  void check_same_size(const ParamVector& other) const {
    if (other.values_.size() != values_.size()) {
      throw InputError("ParamVector: length mismatch");
    }
  }

  std::vector<double> values_;
};

inline ParamVector operator+(ParamVector a, const ParamVector& b) {
  a += b;
  return a;
}

inline ParamVector operator*(double alpha, ParamVector v) {
  v.scale(alpha);
  return v;
}

}  // namespace p3o

#endif  // P3O_PARAM_VECTOR_HPP_
