#include "tropwave/lattice.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace tropwave {

bool LatticeVector::is_zero() const {
  for (auto c : coords_) {
    if (c != 0) return false;
  }
  return true;
}

std::int64_t LatticeVector::norm_sq() const {
  std::int64_t s = 0;
  for (auto c : coords_) s += c * c;
  return s;
}

std::int64_t LatticeVector::content() const {
  std::int64_t g = 0;
  for (auto c : coords_) g = std::gcd(g, c < 0 ? -c : c);
  return g;
}

LatticeVector LatticeVector::primitive() const {
  const std::int64_t g = content();
  if (g <= 1) return *this;
  LatticeVector r = *this;
  for (auto& c : r.coords_) c /= g;
  return r;
}

LatticeVector& LatticeVector::operator+=(const LatticeVector& o) {
  if (o.dim() != dim()) throw std::invalid_argument("lattice vector dimension mismatch");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

LatticeVector& LatticeVector::operator-=(const LatticeVector& o) {
  if (o.dim() != dim()) throw std::invalid_argument("lattice vector dimension mismatch");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

LatticeVector LatticeVector::operator-() const {
  LatticeVector r = *this;
  for (auto& c : r.coords_) c = -c;
  return r;
}

LatticeVector operator*(std::int64_t k, LatticeVector v) {
  for (auto& c : v.coords_) c *= k;
  return v;
}

std::strong_ordering operator<=>(const LatticeVector& a, const LatticeVector& b) {
  const std::size_t n = std::min(a.dim(), b.dim());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.coords_[i] != b.coords_[i]) return a.coords_[i] <=> b.coords_[i];
  }
  return a.dim() <=> b.dim();
}

std::string LatticeVector::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) os << ',';
    os << coords_[i];
  }
  os << ')';
  return os.str();
}

std::size_t LatticeVectorHash::operator()(const LatticeVector& v) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL ^ v.dim();
  for (auto c : v.coords()) {
    h ^= std::hash<std::int64_t>{}(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

Scalar dot(const LatticeVector& q, const Point& z) {
  if (q.dim() != z.size()) throw std::invalid_argument("dot: dimension mismatch");
  if (z.empty()) return Scalar();
  if (z[0].is_exact()) {
    Rational acc = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (q[i] != 0) acc += z[i].rational() * q[i];
    }
    return Scalar(std::move(acc));
  }
  double acc = 0;
  for (std::size_t i = 0; i < z.size(); ++i) acc += static_cast<double>(q[i]) * z[i].to_double();
  return Scalar::approximate(acc);
}

std::int64_t dot(const LatticeVector& a, const LatticeVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dot: dimension mismatch");
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

Point to_point(const LatticeVector& q, NumericMode mode) {
  Point p;
  p.reserve(q.dim());
  for (auto c : q.coords()) p.push_back(Scalar::from_int(c, mode));
  return p;
}

std::string point_str(const Point& z) {
  std::string s = "(";
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (i) s += ",";
    s += z[i].str();
  }
  return s + ")";
}

std::int64_t floor_sqrt(const Scalar& x) {
  if (x.sign() < 0) throw std::domain_error("floor_sqrt of negative value");
  if (x.is_exact()) {
    const BigInt f = floor(x.rational());
    return boost::multiprecision::sqrt(f).convert_to<std::int64_t>();
  }
  auto r = static_cast<std::int64_t>(std::floor(std::sqrt(x.to_double())));
  const double v = x.to_double();
  while (static_cast<double>(r + 1) * static_cast<double>(r + 1) <= v) ++r;
  while (r > 0 && static_cast<double>(r) * static_cast<double>(r) > v) --r;
  return r;
}

namespace {

// Number of integer points in a ball of radius^2 = r2 in dimension n,
// computed recursively over the first coordinate.
std::size_t count_ball(std::int64_t r2, std::size_t n, std::size_t cap) {
  if (n == 0) return 1;
  const auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(r2)));
  std::int64_t lim = r;
  while ((lim + 1) * (lim + 1) <= r2) ++lim;
  while (lim * lim > r2) --lim;
  if (n == 1) return static_cast<std::size_t>(2 * lim + 1);
  std::size_t total = 0;
  for (std::int64_t x = -lim; x <= lim; ++x) {
    total += count_ball(r2 - x * x, n - 1, cap);
    if (total > cap) return total;
  }
  return total;
}

void visit_ball(std::int64_t r2, std::size_t depth, LatticeVector& cur,
                const std::function<void(const LatticeVector&)>& visit) {
  if (depth == cur.dim()) {
    visit(cur);
    return;
  }
  std::int64_t lim = static_cast<std::int64_t>(std::sqrt(static_cast<double>(r2)));
  while ((lim + 1) * (lim + 1) <= r2) ++lim;
  while (lim * lim > r2) --lim;
  for (std::int64_t x = -lim; x <= lim; ++x) {
    cur[depth] = x;
    visit_ball(r2 - x * x, depth + 1, cur, visit);
  }
  cur[depth] = 0;
}

}  // namespace

void for_each_in_lattice_ball(const Scalar& radius_sq_bound, std::size_t n,
                              const std::function<void(const LatticeVector&)>& visit,
                              std::size_t cap) {
  if (radius_sq_bound.sign() < 0) throw std::invalid_argument("lattice_ball: negative bound");
  if (n == 0) throw std::invalid_argument("lattice_ball: dimension must be >= 1");
  // |q|^2 is an integer, so |q|^2 <= B iff |q|^2 <= floor(B).
  const std::int64_t r2 = radius_sq_bound.is_exact()
                              ? floor(radius_sq_bound.rational()).convert_to<std::int64_t>()
                              : static_cast<std::int64_t>(std::floor(radius_sq_bound.to_double()));
  const std::size_t count = count_ball(r2, n, cap);
  if (count > cap) {
    throw ResourceError("lattice enumeration cap of " + std::to_string(cap) +
                        " points exceeded (radius^2 bound " + radius_sq_bound.str() + ", n=" +
                        std::to_string(n) + ")");
  }
  LatticeVector cur(n);
  visit_ball(r2, 0, cur, visit);
}

std::vector<LatticeVector> lattice_ball(const Scalar& radius_sq_bound, std::size_t n,
                                        std::size_t cap) {
  std::vector<LatticeVector> out;
  for_each_in_lattice_ball(
      radius_sq_bound, n, [&](const LatticeVector& q) { out.push_back(q); }, cap);
  return out;
}

}  // namespace tropwave
