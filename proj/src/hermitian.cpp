#include "weilrep/hermitian.hpp"

#include <algorithm>

namespace weilrep {

HermitianSpace::HermitianSpace(RingParams params) : ring_(params), size_(1) {
  for (int j = 0; j < rank(); ++j) size_ *= ring_.size();
}

HVector HermitianSpace::basis(int j) const {
  if (j < 0 || j >= rank()) throw ParamError("basis index out of range");
  HVector x = zero();
  x.c[j] = ring_.one();
  return x;
}

HVector HermitianSpace::add(const HVector& x, const HVector& y) const {
  if (x.c.size() != y.c.size()) throw ParamError("dimension mismatch");
  HVector z = x;
  for (std::size_t j = 0; j < z.c.size(); ++j) z.c[j] = ring_.add(x.c[j], y.c[j]);
  return z;
}

HVector HermitianSpace::sub(const HVector& x, const HVector& y) const {
  return add(x, neg(y));
}

HVector HermitianSpace::neg(const HVector& x) const {
  HVector z = x;
  for (auto& a : z.c) a = ring_.neg(a);
  return z;
}

HVector HermitianSpace::scale(const AElem& a, const HVector& x) const {
  HVector z = x;
  for (auto& b : z.c) b = ring_.mul(a, b);
  return z;
}

HVector HermitianSpace::scale_r(Int r, const HVector& x) const {
  HVector z = x;
  for (auto& b : z.c) b = ring_.scale(r, b);
  return z;
}

AElem HermitianSpace::herm(const HVector& x, const HVector& y) const {
  if (static_cast<int>(x.c.size()) != rank() || static_cast<int>(y.c.size()) != rank())
    throw ParamError("herm: dimension mismatch");
  AElem acc = ring_.zero();
  const int nn = n();
  for (int i = 0; i < nn; ++i) {
    acc = ring_.add(acc, ring_.mul(ring_.involution(x.c[i]), y.c[nn + i]));
    acc = ring_.sub(acc, ring_.mul(ring_.involution(x.c[nn + i]), y.c[i]));
  }
  return acc;
}

int HermitianSpace::depth(const HVector& x) const {
  int d = params().nilpotency();
  for (const auto& a : x.c) d = std::min(d, ring_.valuation(a));
  return d;
}

std::uint64_t HermitianSpace::index(const HVector& x) const {
  std::uint64_t idx = 0;
  for (int j = rank() - 1; j >= 0; --j) idx = idx * ring_.size() + ring_.index(x.c[j]);
  return idx;
}

HVector HermitianSpace::from_index(std::uint64_t i) const {
  HVector x = zero();
  for (int j = 0; j < rank(); ++j) {
    x.c[j] = ring_.from_index(i % ring_.size());
    i /= ring_.size();
  }
  return x;
}

void HermitianSpace::for_each(
    const std::function<void(std::uint64_t, const HVector&)>& fn) const {
  for (std::uint64_t i = 0; i < size_; ++i) fn(i, from_index(i));
}

std::vector<HVector> HermitianSpace::additive_generators() const {
  std::vector<HVector> gens;
  for (int j = 0; j < rank(); ++j) gens.push_back(basis(j));
  for (int j = 0; j < rank(); ++j) gens.push_back(scale(ring_.pi(), basis(j)));
  return gens;
}

SubmoduleDesc HermitianSpace::ideal_multiple(int k) const {
  if (k < 0) throw ParamError("ideal exponent must be >= 0");
  return {SubmoduleDesc::Kind::IdealMultiple, std::min(k, params().nilpotency())};
}

SubmoduleDesc HermitianSpace::dual_submodule(int i) const {
  if (i < 1 || i > params().ell)
    throw ParamError("dual_submodule: exponent out of range 1..ell");
  return {SubmoduleDesc::Kind::Dual, i};
}

SubmoduleDesc HermitianSpace::perp(const SubmoduleDesc& u) const {
  if (u.kind != SubmoduleDesc::Kind::IdealMultiple)
    throw ParamError("perp: only ideal multiples r^k V are supported");
  return ideal_multiple(params().nilpotency() - u.exponent);
}

SubmoduleDesc HermitianSpace::perp_of(int k) const {
  return {SubmoduleDesc::Kind::PerpOf, std::min(std::max(k, 0), params().nilpotency())};
}

std::vector<HVector> HermitianSpace::module_generators(int k) const {
  std::vector<HVector> gens;
  const AElem pk = ring_.mul_pi_pow(ring_.one(), k);
  const AElem pk1 = ring_.mul_pi_pow(ring_.one(), k + 1);
  for (int j = 0; j < rank(); ++j) gens.push_back(scale(pk, basis(j)));
  for (int j = 0; j < rank(); ++j) gens.push_back(scale(pk1, basis(j)));
  return gens;
}

bool HermitianSpace::contains(const SubmoduleDesc& d, const HVector& x) const {
  switch (d.kind) {
    case SubmoduleDesc::Kind::IdealMultiple:
      return depth(x) >= d.exponent;
    case SubmoduleDesc::Kind::Dual: {
      const Int modulus = ipow(params().p, d.exponent);
      for (const auto& g : additive_generators())
        if (alt_f(x, g) % modulus != 0) return false;
      return true;
    }
    case SubmoduleDesc::Kind::PerpOf:
      for (const auto& g : module_generators(d.exponent))
        if (alt_f(x, g) != 0) return false;
      return true;
  }
  return false;
}

std::uint64_t HermitianSpace::cardinality(const SubmoduleDesc& d) const {
  const int m = params().nilpotency();
  auto ideal_card = [&](int k) {
    std::uint64_t c = 1;
    for (int j = 0; j < rank(); ++j) c *= ring_.ideal_size(k);
    return c;
  };
  switch (d.kind) {
    case SubmoduleDesc::Kind::IdealMultiple:
      return ideal_card(d.exponent);
    case SubmoduleDesc::Kind::Dual:
      return ideal_card(2 * d.exponent - 1);
    case SubmoduleDesc::Kind::PerpOf:
      return ideal_card(m - d.exponent);
  }
  return 0;
}

std::vector<HVector> HermitianSpace::enumerate(const SubmoduleDesc& d,
                                               std::uint64_t threshold) const {
  if (cardinality(d) > threshold)
    throw ParamError("enumerate: submodule too large to materialize");
  if (d.kind != SubmoduleDesc::Kind::IdealMultiple && size_ > threshold * threshold)
    throw ParamError("enumerate: ambient space too large to scan");
  std::vector<HVector> out;
  if (d.kind == SubmoduleDesc::Kind::IdealMultiple) {
    // Direct product of coordinate ideals.
    const auto ideal = ring_.ideal(d.exponent);
    std::vector<std::size_t> pos(rank(), 0);
    while (true) {
      HVector x = zero();
      for (int j = 0; j < rank(); ++j) x.c[j] = ideal[pos[j]];
      out.push_back(std::move(x));
      int j = 0;
      while (j < rank() && ++pos[j] == ideal.size()) pos[j++] = 0;
      if (j == rank()) break;
    }
    return out;
  }
  for (std::uint64_t i = 0; i < size_; ++i) {
    HVector x = from_index(i);
    if (contains(d, x)) out.push_back(std::move(x));
  }
  return out;
}

std::vector<Int> HermitianSpace::mixed(const HVector& x) const {
  std::vector<Int> m(2 * rank());
  for (int j = 0; j < rank(); ++j) {
    m[j] = x.c[j].r;
    m[rank() + j] = x.c[j].s;
  }
  return m;
}

HVector HermitianSpace::from_mixed(const std::vector<Int>& m) const {
  HVector x = zero();
  for (int j = 0; j < rank(); ++j) x.c[j] = ring_.make(m[j], m[rank() + j]);
  return x;
}

}  // namespace weilrep
