#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace rspace {

using cd = std::complex<double>;

enum class Field { R, C, H };

inline const char* field_name(Field f) {
  switch (f) {
    case Field::R: return "R";
    case Field::C: return "C";
    case Field::H: return "H";
  }
  return "?";
}

inline Field parse_field(const std::string& s);

// Real dimension of the field.
inline int field_degree(Field f) { return f == Field::R ? 1 : (f == Field::C ? 2 : 4); }

/// A mathematical precondition on the inputs does not hold (e.g. points
/// that are not pairwise opposite).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The input lies outside the domain of the operation (wrong field, a matrix
/// outside the expected group, a non-nilpotent argument, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A post-condition that theory guarantees was violated numerically. Seeing
/// one of these means either a bad model instance or a bug.
class InconsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Field parse_field(const std::string& s) {
  if (s == "R") return Field::R;
  if (s == "C") return Field::C;
  if (s == "H") return Field::H;
  throw DomainError("unknown field '" + s + "'");
}

struct Tolerance {
  double rank_rel = 1e-10;  // singular values below rank_rel * max count as zero
  double eq_abs = 1e-8;     // absolute comparison threshold

  void validate() const {
    if (!(rank_rel > 0) || !(eq_abs > 0)) throw DomainError("tolerances must be strictly positive");
  }
};

/// Element of R, C or H stored as w + x i + y j + z k. Components beyond the
/// field's degree are kept at zero.
struct DivisionScalar {
  Field field = Field::R;
  double w = 0, x = 0, y = 0, z = 0;

  static DivisionScalar real(double v) { return {Field::R, v, 0, 0, 0}; }
  static DivisionScalar complex(cd v) { return {Field::C, v.real(), v.imag(), 0, 0}; }
  static DivisionScalar quaternion(double w, double x, double y, double z) {
    return {Field::H, w, x, y, z};
  }

  // Cayley-Dickson split q = a + b j with a, b complex.
  cd a() const { return {w, x}; }
  cd b() const { return {y, z}; }
  static DivisionScalar from_parts(Field f, cd a, cd b) {
    return {f, a.real(), a.imag(), b.real(), b.imag()};
  }

  double abs() const { return std::sqrt(w * w + x * x + y * y + z * z); }
  bool is_zero(double tol) const { return abs() <= tol; }

  DivisionScalar conj() const { return {field, w, -x, -y, -z}; }

  friend DivisionScalar operator+(const DivisionScalar& p, const DivisionScalar& q) {
    return {wider(p.field, q.field), p.w + q.w, p.x + q.x, p.y + q.y, p.z + q.z};
  }
  friend DivisionScalar operator-(const DivisionScalar& p, const DivisionScalar& q) {
    return {wider(p.field, q.field), p.w - q.w, p.x - q.x, p.y - q.y, p.z - q.z};
  }
  friend DivisionScalar operator*(const DivisionScalar& p, const DivisionScalar& q) {
    return {wider(p.field, q.field),
            p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
            p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
            p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
            p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
  }
  DivisionScalar inverse() const {
    const double n2 = w * w + x * x + y * y + z * z;
    if (n2 == 0) throw DomainError("division by zero scalar");
    DivisionScalar c = conj();
    return {field, c.w / n2, c.x / n2, c.y / n2, c.z / n2};
  }

  static Field wider(Field a, Field b) {
    return static_cast<int>(a) > static_cast<int>(b) ? a : b;
  }
};

}  // namespace rspace
