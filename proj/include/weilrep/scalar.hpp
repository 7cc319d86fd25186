#pragma once

// Scalar backends. The float backend is std::complex<double>. The exact backend is the
// prime field F_P with P = 425675251, where P - 1 = 2 * 3^5 * 5^3 * 7^2 * 11 * 13, so F_P
// contains the roots of unity of every order 2 p^l dividing P - 1; ranks computed over
// F_P of matrices with entries in Z[zeta] are exact (reduction modulo a split prime).

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <numbers>
#include <ostream>

#include "weilrep/ring.hpp"

namespace weilrep {

class ModP {
 public:
  static constexpr std::uint64_t P = 425675251;
  static constexpr std::uint64_t kGenerator = 2;  // primitive root mod P

  constexpr ModP() = default;
  constexpr ModP(long long x)  // NOLINT: implicit, Eigen builds scalars from ints
      : v_(static_cast<std::uint64_t>(x % static_cast<long long>(P) +
                                      (x % static_cast<long long>(P) < 0 ? P : 0))) {}
  constexpr ModP(int x) : ModP(static_cast<long long>(x)) {}  // NOLINT
  constexpr ModP(long x) : ModP(static_cast<long long>(x)) {}  // NOLINT
  constexpr ModP(double x) : ModP(static_cast<long long>(x)) {}  // NOLINT

  constexpr std::uint64_t value() const { return v_; }

  friend constexpr ModP operator+(ModP a, ModP b) { return raw(a.v_ + b.v_ >= P ? a.v_ + b.v_ - P : a.v_ + b.v_); }
  friend constexpr ModP operator-(ModP a, ModP b) { return raw(a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + P - b.v_); }
  friend constexpr ModP operator*(ModP a, ModP b) { return raw(a.v_ * b.v_ % P); }
  friend ModP operator/(ModP a, ModP b) { return a * b.inverse(); }
  constexpr ModP operator-() const { return raw(v_ == 0 ? 0 : P - v_); }
  ModP& operator+=(ModP b) { return *this = *this + b; }
  ModP& operator-=(ModP b) { return *this = *this - b; }
  ModP& operator*=(ModP b) { return *this = *this * b; }
  ModP& operator/=(ModP b) { return *this = *this / b; }
  friend constexpr bool operator==(ModP a, ModP b) { return a.v_ == b.v_; }
  friend constexpr bool operator!=(ModP a, ModP b) { return a.v_ != b.v_; }
  // Arbitrary total order, needed only by generic code paths that compare magnitudes.
  friend constexpr bool operator<(ModP a, ModP b) { return a.v_ < b.v_; }

  static constexpr ModP pow(ModP a, std::uint64_t e) {
    ModP r = raw(1);
    while (e) {
      if (e & 1) r = r * a;
      a = a * a;
      e >>= 1;
    }
    return r;
  }
  ModP inverse() const;
  /// exp(2 pi i k / order) in F_P; order must divide P - 1.
  static ModP root_of_unity(Int k, Int order);
  static bool supports_order(Int order) { return order >= 1 && (P - 1) % order == 0; }

  friend std::ostream& operator<<(std::ostream& os, ModP a) { return os << a.v_; }

 private:
  static constexpr ModP raw(std::uint64_t v) {
    ModP m;
    m.v_ = v;
    return m;
  }
  std::uint64_t v_ = 0;
};

using Complex = std::complex<double>;

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static constexpr const char* name = "float";
  static bool supports_order(Int) { return true; }
  static Complex root(Int k, Int order) {
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(mod(k, order)) /
                               static_cast<double>(order));
  }
  static Complex from_int(Int v) { return Complex(static_cast<double>(v), 0.0); }
  static bool is_zero(const Complex& z, double tol) { return std::abs(z) <= tol; }
};

template <>
struct ScalarTraits<ModP> {
  static constexpr bool exact = true;
  static constexpr const char* name = "exact";
  static bool supports_order(Int order) { return ModP::supports_order(order); }
  static ModP root(Int k, Int order) { return ModP::root_of_unity(k, order); }
  static ModP from_int(Int v) { return ModP(static_cast<long long>(v)); }
  static bool is_zero(const ModP& z, double) { return z == ModP(0); }
};

enum class Backend { Float, Exact };
std::string to_string(Backend b);
Backend parse_backend(const std::string& s);

}  // namespace weilrep

namespace Eigen {

template <>
struct NumTraits<weilrep::ModP> : GenericNumTraits<weilrep::ModP> {
  typedef weilrep::ModP Real;
  typedef weilrep::ModP NonInteger;
  typedef weilrep::ModP Literal;
  typedef weilrep::ModP Nested;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 0,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 4
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline Real highest() { return Real(static_cast<long long>(weilrep::ModP::P - 1)); }
  static inline Real lowest() { return Real(0); }
  static inline int digits10() { return 9; }
};

}  // namespace Eigen
