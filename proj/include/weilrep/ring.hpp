#pragma once

// Arithmetic in R = Z/p^l and in its ramified quadratic extension
// A = R[X]/(X^2 - p, X^(2l-1)), written A = R + R*pi with pi^2 = p.

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace weilrep {

using Int = std::int64_t;

/// Raised for invalid ring parameters or operands outside the canonical range.
class ParamError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Int ipow(Int base, int exp);
bool is_prime(Int v);

/// Least non-negative residue of v modulo m (m >= 1).
inline Int mod(Int v, Int m) {
  Int r = v % m;
  return r < 0 ? r + m : r;
}

/// p-adic valuation of a residue modulo p^cap; the zero residue has valuation cap.
int vp(Int v, Int p, int cap);

struct RingParams {
  Int p = 3;
  int ell = 1;
  int n = 1;

  /// Validates and returns the triple; throws ParamError otherwise.
  static RingParams make(Int p, int ell, int n);

  Int r_size() const { return ipow(p, ell); }       // |R| = p^l
  Int s_modulus() const { return ipow(p, ell - 1); } // modulus of the pi-coordinate
  Int a_size() const { return r_size() * s_modulus(); }
  int nilpotency() const { return 2 * ell - 1; }

  bool operator==(const RingParams&) const = default;
};

std::string to_string(const RingParams& params);

/// Element r + s*pi of A, r mod p^l and s mod p^(l-1). For l = 1 the s part is always 0.
struct AElem {
  Int r = 0;
  Int s = 0;
  auto operator<=>(const AElem&) const = default;
};

/// Exponent e of the phase exp(2 pi i e / p^l).
struct CharExponent {
  Int e = 0;
  auto operator<=>(const CharExponent&) const = default;
};

using RElem = Int;

class Ring {
 public:
  explicit Ring(RingParams params);

  const RingParams& params() const { return params_; }
  Int p() const { return params_.p; }
  int ell() const { return params_.ell; }
  Int r_mod() const { return r_mod_; }
  Int s_mod() const { return s_mod_; }
  std::size_t size() const { return static_cast<std::size_t>(r_mod_ * s_mod_); }

  AElem make(Int r, Int s = 0) const { return {mod(r, r_mod_), mod(s, s_mod_)}; }
  AElem zero() const { return {0, 0}; }
  AElem one() const { return {1 % r_mod_, 0}; }
  /// The uniformizer; equals 0 when l = 1.
  AElem pi() const { return make(0, 1); }

  /// Throws ParamError if a is not a canonical representative for this ring.
  void check(const AElem& a) const;

  AElem add(const AElem& a, const AElem& b) const {
    return {mod(a.r + b.r, r_mod_), mod(a.s + b.s, s_mod_)};
  }
  AElem sub(const AElem& a, const AElem& b) const {
    return {mod(a.r - b.r, r_mod_), mod(a.s - b.s, s_mod_)};
  }
  AElem neg(const AElem& a) const { return {mod(-a.r, r_mod_), mod(-a.s, s_mod_)}; }
  AElem mul(const AElem& a, const AElem& b) const {
    return {mod(a.r * b.r + params_.p * mod(a.s * b.s, s_mod_), r_mod_),
            mod(a.r * b.s + b.r * a.s, s_mod_)};
  }
  AElem scale(Int r, const AElem& a) const {
    return {mod(r * a.r, r_mod_), mod(r * a.s, s_mod_)};
  }
  /// Operand-checked product.
  AElem a_mul(const AElem& a, const AElem& b) const;

  AElem involution(const AElem& a) const { return {a.r, mod(-a.s, s_mod_)}; }
  /// r-part of a * a^*, i.e. r^2 - p s^2.
  Int norm(const AElem& a) const;

  bool is_unit(const AElem& a) const { return a.r % params_.p != 0; }
  AElem inverse(const AElem& a) const;
  Int r_inverse(Int r) const;

  /// k with a in r^k \ r^(k+1); valuation(0) = 2l - 1.
  int valuation(const AElem& a) const;

  AElem mul_pi_pow(const AElem& a, int k) const;
  /// Canonical x with pi^k x = b. Requires valuation(b) >= k.
  AElem div_pi_pow(const AElem& b, int k) const;

  CharExponent lambda_char(Int r) const { return {mod(r, r_mod_)}; }

  std::size_t index(const AElem& a) const {
    return static_cast<std::size_t>(a.r + r_mod_ * a.s);
  }
  AElem from_index(std::size_t i) const {
    return {static_cast<Int>(i) % r_mod_, static_cast<Int>(i) / r_mod_};
  }

  std::vector<AElem> elements() const;
  std::vector<AElem> units() const;
  /// Units of norm 1, in index order (s-major, then r).
  std::vector<AElem> norm_one_group() const;
  /// Elements of r^k = pi^k A.
  std::vector<AElem> ideal(int k) const;
  /// Size of r^k, namely p^(2l-1-k).
  std::size_t ideal_size(int k) const;

  /// Multiplicative order of a unit.
  Int unit_order(const AElem& a) const;
  /// A small generating set of a finite abelian group of units, found greedily.
  std::vector<AElem> unit_generators(const std::vector<AElem>& group) const;

 private:
  RingParams params_;
  Int r_mod_;
  Int s_mod_;
};

}  // namespace weilrep
