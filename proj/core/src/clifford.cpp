#include "torus/clifford.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>

#include "torus/error.hpp"

namespace torus {

namespace {

constexpr double kPrune = 1e-14;

void check_dim(std::size_t d) {
  if (d == 0) throw Error(Errc::InvalidArgument, "Clifford dimension must be positive");
  if (d > kMaxCliffordDim) {
    throw Error(Errc::DimTooLarge, "Clifford oracle supports d <= " + std::to_string(kMaxCliffordDim));
  }
}

std::string blade_name(Blade b) {
  if (b == 0) return "1";
  std::string s;
  for (std::size_t i = 0; i < 32; ++i)
    if (b & (Blade{1} << i)) s += "e" + std::to_string(i + 1);
  return s;
}

}  // namespace

int blade_product_sign(Blade a, Blade b) {
  // Moving each generator of b left past the larger generators of a.
  int swaps = 0;
  for (Blade rest = b; rest; rest &= rest - 1) {
    const int j = std::countr_zero(rest);
    swaps += std::popcount(a >> (j + 1));
  }
  // Each shared generator contributes e_i^2 = -1.
  swaps += std::popcount(a & b);
  return swaps % 2 ? -1 : 1;
}

CliffordElement::CliffordElement(std::size_t d) : d_(d) { check_dim(d); }

CliffordElement CliffordElement::scalar(std::size_t d, double value) { return blade(d, 0, value); }

CliffordElement CliffordElement::basis_vector(std::size_t d, std::size_t i) {
  if (i >= d) throw Error(Errc::IndexOutOfRange, "basis vector index outside dimension");
  return blade(d, Blade{1} << i);
}

CliffordElement CliffordElement::blade(std::size_t d, Blade b, double value) {
  CliffordElement e(d);
  if (b >> d) throw Error(Errc::IndexOutOfRange, "blade uses generators beyond the dimension");
  e.terms_[b] = value;
  e.prune();
  return e;
}

CliffordElement CliffordElement::vector(const std::vector<double>& v) {
  CliffordElement e(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) e.terms_[Blade{1} << i] = v[i];
  e.prune();
  return e;
}

void CliffordElement::prune() { std::erase_if(terms_, [](const auto& kv) { return std::abs(kv.second) < kPrune; }); }

double CliffordElement::coefficient(Blade b) const {
  auto it = terms_.find(b);
  return it == terms_.end() ? 0.0 : it->second;
}

std::vector<Blade> CliffordElement::support() const {
  std::vector<Blade> out;
  for (const auto& [b, c] : terms_) out.push_back(b);
  return out;
}

bool CliffordElement::is_even() const {
  for (const auto& [b, c] : terms_)
    if (std::popcount(b) % 2) return false;
  return true;
}

bool CliffordElement::is_grade1() const {
  for (const auto& [b, c] : terms_)
    if (std::popcount(b) != 1) return false;
  return true;
}

CliffordElement CliffordElement::reverse() const {
  CliffordElement r(d_);
  for (const auto& [b, c] : terms_) {
    const int k = std::popcount(b);
    r.terms_[b] = ((k * (k - 1) / 2) % 2) ? -c : c;
  }
  return r;
}

std::vector<double> CliffordElement::grade1() const {
  std::vector<double> v(d_, 0.0);
  for (std::size_t i = 0; i < d_; ++i) v[i] = coefficient(Blade{1} << i);
  return v;
}

double CliffordElement::coefficient_norm() const {
  double s = 0;
  for (const auto& [b, c] : terms_) s += c * c;
  return std::sqrt(s);
}

CliffordElement CliffordElement::scaled(double s) const {
  CliffordElement r = *this;
  for (auto& [b, c] : r.terms_) c *= s;
  r.prune();
  return r;
}

std::string CliffordElement::support_string() const {
  std::string s = "[";
  bool first = true;
  for (const auto& [b, c] : terms_) {
    if (!first) s += ",";
    first = false;
    s += blade_name(b);
  }
  return s + "]";
}

CliffordElement operator+(const CliffordElement& a, const CliffordElement& b) {
  if (a.d_ != b.d_) throw Error(Errc::DimMismatch, "Clifford elements of different dimension");
  CliffordElement r = a;
  for (const auto& [bl, c] : b.terms_) r.terms_[bl] += c;
  r.prune();
  return r;
}

CliffordElement operator-(const CliffordElement& a, const CliffordElement& b) { return a + b.scaled(-1.0); }

CliffordElement geom_product(const CliffordElement& a, const CliffordElement& b) {
  if (a.dim() != b.dim()) throw Error(Errc::DimMismatch, "Clifford elements of different dimension");
  CliffordElement r(a.dim());
  for (const auto& [ba, ca] : a.terms_)
    for (const auto& [bb, cb] : b.terms_) r.terms_[ba ^ bb] += blade_product_sign(ba, bb) * ca * cb;
  r.prune();
  return r;
}

CliffordElement operator*(const CliffordElement& a, const CliffordElement& b) { return geom_product(a, b); }

Rotor plane_rotor(std::size_t i, std::size_t j, double theta, std::size_t d) {
  check_dim(d);
  if (!(i < j && j < d)) throw Error(Errc::BadPlane, "rotation plane must satisfy i < j < d");
  const Blade bivector = (Blade{1} << i) | (Blade{1} << j);
  return CliffordElement::scalar(d, std::cos(theta / 2)) + CliffordElement::blade(d, bivector, std::sin(theta / 2));
}

std::vector<double> rotate_vector(const Rotor& r, const std::vector<double>& v) {
  if (v.size() != r.dim()) throw Error(Errc::DimMismatch, "vector length differs from rotor dimension");
  return (r * CliffordElement::vector(v) * r.reverse()).grade1();
}

std::vector<double> rotor_matrix(const Rotor& r) {
  const std::size_t d = r.dim();
  std::vector<double> m(d * d, 0.0);
  for (std::size_t col = 0; col < d; ++col) {
    std::vector<double> e(d, 0.0);
    e[col] = 1.0;
    const auto img = rotate_vector(r, e);
    for (std::size_t row = 0; row < d; ++row) m[row * d + col] = img[row];
  }
  return m;
}

Rotor normalized(const Rotor& r) {
  const double n2 = (r * r.reverse()).scalar_part();
  if (n2 <= 0) internal_error("rotor with non-positive norm");
  return r.scaled(1.0 / std::sqrt(n2));
}

namespace {

void check_loop(const LoopSpec& spec, std::size_t steps) {
  check_dim(spec.d);
  if (steps < 8) throw Error(Errc::InvalidArgument, "steps_per_segment must be at least 8");
  for (const auto& seg : spec.segments) {
    if (seg.multiplier.size() != spec.d) throw Error(Errc::DimMismatch, "segment multiplier has wrong length");
    if (seg.direction != 1 && seg.direction != -1) throw Error(Errc::InvalidArgument, "direction must be +-1");
    for (const auto& p : seg.planes)
      if (!(p.i < p.j && p.j < spec.d)) throw Error(Errc::BadPlane, "rotation plane must satisfy i < j < d");
  }
  if (!spec.closes()) throw Error(Errc::LoopNotClosed, "loop segments do not chain back to the identity");
}

ObstructionClass decide(double scalar) {
  if (std::abs(scalar + 1.0) < kLiftWindow) return ObstructionClass::Generator;
  if (std::abs(scalar - 1.0) < kLiftWindow) return ObstructionClass::Trivial;
  throw Error(Errc::IndeterminateLift, "lifted loop ends at scalar " + std::to_string(scalar) + ", not +-1");
}

}  // namespace

ObstructionClass lift_loop(const LoopSpec& spec, std::size_t steps_per_segment, const TraceSink& trace) {
  check_loop(spec, steps_per_segment);
  Rotor lift = CliffordElement::scalar(spec.d, 1.0);
  const double step_angle = std::numbers::pi / static_cast<double>(steps_per_segment);
  for (std::size_t s = 0; s < spec.segments.size(); ++s) {
    const auto& seg = spec.segments[s];
    const auto planes = seg.planes.size();
    for (std::size_t p = 0; p < planes; ++p) {
      const Rotor inc = plane_rotor(seg.planes[p].i, seg.planes[p].j, seg.direction * step_angle, spec.d);
      for (std::size_t k = 1; k <= steps_per_segment; ++k) {
        lift = lift * inc;
        if (trace) {
          const double t = static_cast<double>(s) + (static_cast<double>(p) + static_cast<double>(k) /
                                                     static_cast<double>(steps_per_segment)) /
                                                        static_cast<double>(planes);
          char buf[96];
          std::snprintf(buf, sizeof buf, "t=%.6f blade-support=", t);
          std::string line = buf + lift.support_string();
          std::snprintf(buf, sizeof buf, " scalar=%.12f", lift.scalar_part());
          trace(line + buf);
        }
      }
      lift = normalized(lift);
    }
  }
  return decide(lift.scalar_part());
}

namespace {

struct Quaternion {
  double w = 1, x = 0, y = 0, z = 0;

  friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z, a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x, a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
  }
};

// Rotation by theta taking local axis p towards local axis q (p < q).
Quaternion local_plane_quaternion(std::size_t p, std::size_t q, double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  if (p == 0 && q == 1) return {c, 0, 0, s};   // about z
  if (p == 1 && q == 2) return {c, s, 0, 0};   // about x
  return {c, 0, -s, 0};                        // x towards z is a negative turn about y
}

}  // namespace

ObstructionClass so3_quaternion_check(const LoopSpec& spec, std::size_t steps_per_segment) {
  if (steps_per_segment < 8) throw Error(Errc::InvalidArgument, "steps_per_segment must be at least 8");
  for (const auto& seg : spec.segments)
    for (const auto& p : seg.planes)
      if (!(p.i < p.j && p.j < spec.d)) throw Error(Errc::BadPlane, "rotation plane must satisfy i < j < d");
  if (!spec.closes()) throw Error(Errc::LoopNotClosed, "loop segments do not chain back to the identity");

  std::set<std::size_t> used;
  for (const auto& seg : spec.segments)
    for (const auto& p : seg.planes) used.insert({p.i, p.j});
  if (used.size() > 3) throw Error(Errc::NotRank3Confined, "rotation planes span more than three coordinates");
  for (std::size_t k = 0; used.size() < 3 && k < spec.d; ++k) used.insert(k);
  if (used.size() < 3) throw Error(Errc::NotRank3Confined, "need at least three coordinates");
  const std::vector<std::size_t> axes(used.begin(), used.end());
  auto local = [&](std::size_t g) {
    return static_cast<std::size_t>(std::find(axes.begin(), axes.end(), g) - axes.begin());
  };

  Quaternion q;
  const double step_angle = std::numbers::pi / static_cast<double>(steps_per_segment);
  for (const auto& seg : spec.segments)
    for (const auto& p : seg.planes) {
      const Quaternion inc = local_plane_quaternion(local(p.i), local(p.j), seg.direction * step_angle);
      for (std::size_t k = 0; k < steps_per_segment; ++k) q = q * inc;
    }
  return decide(q.w);
}

}  // namespace torus
