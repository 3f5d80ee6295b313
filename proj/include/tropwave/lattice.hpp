#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "tropwave/scalar.hpp"

namespace tropwave {

/// A point of Z^n; the exponent of a tropical monomial.
class LatticeVector {
 public:
  using Storage = boost::container::small_vector<std::int64_t, 3>;

  LatticeVector() = default;
  explicit LatticeVector(std::size_t n) : coords_(n, 0) {}
  LatticeVector(std::initializer_list<std::int64_t> c) : coords_(c.begin(), c.end()) {}
  explicit LatticeVector(std::span<const std::int64_t> c) : coords_(c.begin(), c.end()) {}

  static LatticeVector zero(std::size_t n) { return LatticeVector(n); }

  std::size_t dim() const { return coords_.size(); }
  std::int64_t operator[](std::size_t i) const { return coords_[i]; }
  std::int64_t& operator[](std::size_t i) { return coords_[i]; }
  std::span<const std::int64_t> coords() const { return {coords_.data(), coords_.size()}; }

  bool is_zero() const;
  /// Exact squared Euclidean norm.
  std::int64_t norm_sq() const;
  /// gcd of the absolute coordinates (0 for the zero vector).
  std::int64_t content() const;
  /// Divides by content(); the zero vector is returned unchanged.
  LatticeVector primitive() const;

  LatticeVector& operator+=(const LatticeVector& o);
  LatticeVector& operator-=(const LatticeVector& o);
  friend LatticeVector operator+(LatticeVector a, const LatticeVector& b) { return a += b; }
  friend LatticeVector operator-(LatticeVector a, const LatticeVector& b) { return a -= b; }
  LatticeVector operator-() const;
  friend LatticeVector operator*(std::int64_t k, LatticeVector v);

  friend bool operator==(const LatticeVector& a, const LatticeVector& b) {
    return a.coords_ == b.coords_;
  }
  /// Lexicographic order.
  friend std::strong_ordering operator<=>(const LatticeVector& a, const LatticeVector& b);

  std::string str() const;

 private:
  Storage coords_;
};

struct LatticeVectorHash {
  std::size_t operator()(const LatticeVector& v) const noexcept;
};

using Point = std::vector<Scalar>;

/// q . z
Scalar dot(const LatticeVector& q, const Point& z);
/// Exact integer dot product.
std::int64_t dot(const LatticeVector& a, const LatticeVector& b);
Point to_point(const LatticeVector& q, NumericMode mode = NumericMode::exact);
std::string point_str(const Point& z);

/// Raised when an enumeration would exceed its configured cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultLatticeCap = 10'000'000;

/// All q in Z^n with |q|^2 <= radius_sq_bound, sorted lexicographically.
/// Throws ResourceError when the count would exceed `cap`.
std::vector<LatticeVector> lattice_ball(const Scalar& radius_sq_bound, std::size_t n,
                                        std::size_t cap = kDefaultLatticeCap);

/// Visits the same set as lattice_ball without materialising it. The visitor
/// sees points in lexicographic order.
void for_each_in_lattice_ball(const Scalar& radius_sq_bound, std::size_t n,
                              const std::function<void(const LatticeVector&)>& visit,
                              std::size_t cap = kDefaultLatticeCap);

/// floor(sqrt(x)) for x >= 0, exact for rationals.
std::int64_t floor_sqrt(const Scalar& x);

}  // namespace tropwave
