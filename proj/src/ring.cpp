#include "weilrep/ring.hpp"

#include <algorithm>
#include <set>

namespace weilrep {

Int ipow(Int base, int exp) {
  Int result = 1;
  for (int i = 0; i < exp; ++i) result *= base;
  return result;
}

bool is_prime(Int v) {
  if (v < 2) return false;
  for (Int d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

int vp(Int v, Int p, int cap) {
  if (v == 0) return cap;
  int k = 0;
  while (k < cap && v % p == 0) {
    v /= p;
    ++k;
  }
  return k;
}

RingParams RingParams::make(Int p, int ell, int n) {
  if (p < 3 || p % 2 == 0 || !is_prime(p))
    throw ParamError("p must be an odd prime, got " + std::to_string(p));
  if (ell < 1) throw ParamError("ell must be >= 1, got " + std::to_string(ell));
  if (n < 1) throw ParamError("n must be >= 1, got " + std::to_string(n));
  return RingParams{p, ell, n};
}

std::string to_string(const RingParams& params) {
  return "p=" + std::to_string(params.p) + ",ell=" + std::to_string(params.ell) +
         ",n=" + std::to_string(params.n);
}

Ring::Ring(RingParams params)
    : params_(RingParams::make(params.p, params.ell, params.n)),
      r_mod_(params_.r_size()),
      s_mod_(params_.s_modulus()) {}

void Ring::check(const AElem& a) const {
  if (a.r < 0 || a.r >= r_mod_ || a.s < 0 || a.s >= s_mod_)
    throw ParamError("element (" + std::to_string(a.r) + "," + std::to_string(a.s) +
                     ") is not a canonical residue for " + to_string(params_));
}

AElem Ring::a_mul(const AElem& a, const AElem& b) const {
  check(a);
  check(b);
  return mul(a, b);
}

Int Ring::norm(const AElem& a) const {
  return mod(a.r * a.r - params_.p * mod(a.s * a.s, s_mod_), r_mod_);
}

Int Ring::r_inverse(Int r) const {
  r = mod(r, r_mod_);
  if (r % params_.p == 0) throw ParamError("not a unit of R: " + std::to_string(r));
  // Extended Euclid.
  Int a = r, b = r_mod_, x0 = 1, x1 = 0;
  while (b != 0) {
    Int q = a / b;
    Int t = a - q * b;
    a = b;
    b = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
  }
  return mod(x0, r_mod_);
}

AElem Ring::inverse(const AElem& a) const {
  // (r + s pi)^-1 = (r - s pi) / (r^2 - p s^2).
  Int ninv = r_inverse(norm(a));
  return mul(involution(a), AElem{ninv, 0});
}

int Ring::valuation(const AElem& a) const {
  const int ell = params_.ell;
  int vr = 2 * vp(a.r, params_.p, ell);
  int vs = 2 * vp(a.s, params_.p, ell - 1) + 1;
  return std::min({vr, vs, 2 * ell - 1});
}

AElem Ring::mul_pi_pow(const AElem& a, int k) const {
  AElem x = a;
  for (int i = 0; i < k; ++i) x = {mod(params_.p * x.s, r_mod_), mod(x.r, s_mod_)};
  return x;
}

AElem Ring::div_pi_pow(const AElem& b, int k) const {
  if (valuation(b) < k)
    throw ParamError("div_pi_pow: element is not divisible by pi^" + std::to_string(k));
  AElem x = b;
  for (int i = 0; i < k; ++i) {
    // pi * (r' + s' pi) = p s' + r' pi, so r' = s (canonical lift), s' = r / p.
    x = {x.s, mod(x.r / params_.p, s_mod_)};
  }
  return x;
}

std::vector<AElem> Ring::elements() const {
  std::vector<AElem> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(from_index(i));
  return out;
}

std::vector<AElem> Ring::units() const {
  std::vector<AElem> out;
  for (std::size_t i = 0; i < size(); ++i) {
    AElem a = from_index(i);
    if (is_unit(a)) out.push_back(a);
  }
  return out;
}

std::vector<AElem> Ring::norm_one_group() const {
  std::vector<AElem> out;
  for (std::size_t i = 0; i < size(); ++i) {
    AElem a = from_index(i);
    if (is_unit(a) && norm(a) == 1 % r_mod_) out.push_back(a);
  }
  return out;
}

std::vector<AElem> Ring::ideal(int k) const {
  std::vector<AElem> out;
  for (std::size_t i = 0; i < size(); ++i) {
    AElem a = from_index(i);
    if (valuation(a) >= k) out.push_back(a);
  }
  return out;
}

std::size_t Ring::ideal_size(int k) const {
  const int m = params_.nilpotency();
  if (k >= m) return 1;
  if (k <= 0) return size();
  return static_cast<std::size_t>(ipow(params_.p, m - k));
}

Int Ring::unit_order(const AElem& a) const {
  if (!is_unit(a)) throw ParamError("unit_order: not a unit");
  Int order = 1;
  AElem x = a;
  while (x != one()) {
    x = mul(x, a);
    ++order;
  }
  return order;
}

std::vector<AElem> Ring::unit_generators(const std::vector<AElem>& group) const {
  std::set<AElem> covered{one()};
  std::vector<AElem> gens;
  while (covered.size() < group.size()) {
    // Add the element of largest order not yet covered, then close up.
    AElem best = one();
    Int best_order = 0;
    for (const AElem& a : group) {
      if (covered.count(a)) continue;
      Int o = unit_order(a);
      if (o > best_order) {
        best_order = o;
        best = a;
      }
    }
    gens.push_back(best);
    std::vector<AElem> frontier(covered.begin(), covered.end());
    while (!frontier.empty()) {
      std::vector<AElem> next;
      for (const AElem& x : frontier)
        for (const AElem& g : gens) {
          AElem y = mul(x, g);
          if (covered.insert(y).second) next.push_back(y);
        }
      frontier = std::move(next);
    }
  }
  return gens;
}

}  // namespace weilrep
