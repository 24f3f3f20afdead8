#include "ulmext/oracle/fg_group.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "ulmext/error.hpp"

namespace ulmext::oracle {

namespace {

// Prime-power factorization by trial division; inputs are desk-sized.
std::map<BigInt, std::uint64_t> factor(BigInt n) {
  std::map<BigInt, std::uint64_t> out;
  for (BigInt p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  if (n > 1) ++out[n];
  return out;
}

BigInt power(const BigInt& base, std::uint64_t e) {
  BigInt r = 1;
  for (std::uint64_t i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

FgGroup FgGroup::from_cyclics(const std::vector<BigInt>& orders, std::uint64_t free_rank) {
  FgGroup g;
  g.free_rank_ = free_rank;
  // Per prime, exponents sorted descending; the j-th largest invariant
  // factor collects the j-th largest power of every prime.
  std::map<BigInt, std::vector<std::uint64_t>> powers;
  for (const BigInt& o : orders) {
    BigInt a = abs(o);
    if (a == 0) {
      ++g.free_rank_;
      continue;
    }
    for (const auto& [p, e] : factor(a)) powers[p].push_back(e);
  }
  std::size_t k = 0;
  for (auto& [p, es] : powers) {
    std::sort(es.rbegin(), es.rend());
    k = std::max(k, es.size());
  }
  std::vector<BigInt> inv(k, BigInt(1));
  for (const auto& [p, es] : powers)
    for (std::size_t j = 0; j < es.size(); ++j) inv[k - 1 - j] *= power(p, es[j]);
  g.invariants_ = std::move(inv);
  return g;
}

FgGroup FgGroup::from_presentation(const IntMatrix& relations) {
  SmithForm f = smith_normal_form(relations, 0);
  std::vector<BigInt> orders;
  const std::vector<BigInt> diag = f.diagonal();
  for (std::size_t i = 0; i < relations.rows(); ++i) orders.push_back(i < diag.size() ? diag[i] : BigInt(0));
  FgGroup g = from_cyclics(orders);
  g.presentation_ = relations;
  return g;
}

BigInt FgGroup::order() const {
  if (!is_finite()) throw PreconditionError("order of an infinite group " + to_string());
  BigInt n = 1;
  for (const auto& d : invariants_) n *= d;
  return n;
}

IntMatrix FgGroup::canonical_presentation() const {
  const std::size_t k = invariants_.size();
  return IntMatrix::diagonal(invariants_, k + free_rank_, k);
}

std::string FgGroup::to_string() const {
  if (is_trivial()) return "0";
  std::string s;
  for (const auto& d : invariants_) s += (s.empty() ? "" : " + ") + std::string("Z/") + d.str();
  if (free_rank_ == 1) s += (s.empty() ? "" : " + ") + std::string("Z");
  if (free_rank_ > 1) s += (s.empty() ? "" : " + ") + std::string("Z^") + std::to_string(free_rank_);
  return s;
}

FgGroup fg_hom(const FgGroup& a, const FgGroup& b) {
  std::vector<BigInt> out;
  for (const auto& x : a.invariants())
    for (const auto& y : b.invariants()) out.push_back(gcd(x, y));
  for (std::uint64_t i = 0; i < a.free_rank(); ++i)
    for (const auto& y : b.invariants()) out.push_back(y);
  return FgGroup::from_cyclics(out, a.free_rank() * b.free_rank());
}

FgGroup fg_ext(const FgGroup& a, const FgGroup& b) {
  std::vector<BigInt> out;
  for (const auto& x : a.invariants()) {
    for (const auto& y : b.invariants()) out.push_back(gcd(x, y));
    for (std::uint64_t i = 0; i < b.free_rank(); ++i) out.push_back(x);
  }
  return FgGroup::from_cyclics(out);
}

FgGroup ext_via_presentation(const FgGroup& a, const FgGroup& b) {
  if (!a.presentation()) throw PreconditionError("ext_via_presentation needs a presented group");
  const IntMatrix& rel = *a.presentation();
  if (FgGroup::from_presentation(rel) != a)
    throw PreconditionError("presentation does not match the group " + a.to_string());

  // R is free on r_i = d_i * (column i of U^-1), i < rank.
  SmithForm f = smith_normal_form(rel, kSmithUInv);
  const std::size_t n = rel.rows(), s = f.rank;
  const std::vector<BigInt> d = f.diagonal();
  // Restriction Hom(F,G) -> Hom(R,G) for a cyclic G: theta(e_k) -> theta(r_i).
  IntMatrix q(s, n);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t k = 0; k < n; ++k) q(i, k) = d[i] * f.u_inv(k, i);

  auto cokernel_orders = [&](const IntMatrix& m, std::vector<BigInt>& out) {
    SmithForm g = smith_normal_form(m, 0);
    const std::vector<BigInt> dg = g.diagonal();
    for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(i < dg.size() ? dg[i] : BigInt(0));
  };

  std::vector<BigInt> orders;
  if (s == 0) return FgGroup();
  for (const BigInt& mod : b.invariants()) {
    std::vector<BigInt> diag(s, mod);
    cokernel_orders(q.hconcat(IntMatrix::diagonal(diag, s, s)), orders);
  }
  for (std::uint64_t i = 0; i < b.free_rank(); ++i) cokernel_orders(q, orders);
  return FgGroup::from_cyclics(orders);
}

// ---------------------------------------------------------------------------

FiniteAbelian::FiniteAbelian(std::vector<std::uint64_t> moduli) : moduli_(std::move(moduli)) {
  for (auto m : moduli_) {
    if (m == 0) throw PreconditionError("FiniteAbelian: modulus 0 (infinite cyclic) is not finite");
    order_ *= m;
  }
  strides_.assign(moduli_.size(), 1);
  for (std::size_t i = moduli_.size(); i-- > 1;) strides_[i - 1] = strides_[i] * moduli_[i];
}

std::vector<std::size_t> FiniteAbelian::addition_table() const {
  std::vector<std::size_t> t(order_ * order_);
  for (std::size_t x = 0; x < order_; ++x) {
    const Element ex = element(x);
    for (std::size_t y = 0; y < order_; ++y) t[x * order_ + y] = index(add(ex, element(y)));
  }
  return t;
}

FiniteAbelian FiniteAbelian::of(const FgGroup& g) {
  if (!g.is_finite()) throw PreconditionError("FiniteAbelian of an infinite group");
  std::vector<std::uint64_t> m;
  for (const auto& d : g.invariants()) m.push_back(static_cast<std::uint64_t>(d));
  return FiniteAbelian(std::move(m));
}

FiniteAbelian::Element FiniteAbelian::add(const Element& x, const Element& y) const {
  Element r(moduli_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = (x[i] + y[i]) % moduli_[i];
  return r;
}

FiniteAbelian::Element FiniteAbelian::neg(const Element& x) const {
  Element r(moduli_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = x[i] == 0 ? 0 : moduli_[i] - x[i];
  return r;
}

FiniteAbelian::Element FiniteAbelian::scale(const Element& x, const BigInt& k) const {
  Element r(moduli_.size());
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = static_cast<std::uint64_t>(mod_floor(k * x[i], BigInt(moduli_[i])));
  return r;
}

FiniteAbelian::Element FiniteAbelian::basis(std::size_t i) const {
  Element r = zero();
  r.at(i) = 1 % moduli_[i];
  return r;
}

bool FiniteAbelian::is_zero(const Element& x) const {
  return std::all_of(x.begin(), x.end(), [](std::uint64_t v) { return v == 0; });
}

std::size_t FiniteAbelian::index(const Element& x) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < moduli_.size(); ++i) idx = idx * moduli_[i] + x[i];
  return idx;
}

FiniteAbelian::Element FiniteAbelian::element(std::size_t index) const {
  Element r(moduli_.size());
  for (std::size_t i = moduli_.size(); i-- > 0;) {
    r[i] = index % moduli_[i];
    index /= moduli_[i];
  }
  return r;
}

FiniteAbelian::Element FiniteAbelian::reduce(const std::vector<BigInt>& coords) const {
  if (coords.size() != moduli_.size()) throw PreconditionError("FiniteAbelian::reduce rank mismatch");
  Element r(moduli_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = static_cast<std::uint64_t>(mod_floor(coords[i], BigInt(moduli_[i])));
  return r;
}

std::uint64_t FiniteAbelian::element_order(const Element& x) const {
  std::uint64_t l = 1;
  for (std::size_t i = 0; i < x.size(); ++i) l = std::lcm(l, moduli_[i] / std::gcd(moduli_[i], x[i]));
  return l;
}

FgGroup abelian_invariants_from_table(std::size_t n, const std::vector<std::size_t>& add_table, std::size_t zero) {
  if (add_table.size() != n * n) throw PreconditionError("addition table has the wrong size");
  std::vector<std::uint64_t> orders(n);
  for (std::size_t x = 0; x < n; ++x) {
    std::uint64_t k = 1;
    for (std::size_t y = x; y != zero; y = add_table[y * n + x])
      if (++k > n) throw PreconditionError("addition table is not a group");
    orders[x] = k;
  }
  std::vector<BigInt> cyclics;
  for (const auto& [p_big, top] : factor(BigInt(n))) {
    const auto p = static_cast<std::uint64_t>(p_big);
    // log_p |G[p^k]| = sum_i min(e_i, k)
    std::vector<std::uint64_t> logs{0};
    for (std::uint64_t k = 1, pk = p; k <= top; ++k, pk *= p) {
      std::uint64_t count = 0;
      for (auto o : orders)
        if (pk % o == 0) ++count;
      std::uint64_t lg = 0;
      while (count > 1) {
        count /= p;
        ++lg;
      }
      logs.push_back(lg);
    }
    // at_least[k] = number of cyclic factors with exponent >= k.
    for (std::uint64_t k = 1; k <= top; ++k) {
      const std::uint64_t at_least = logs[k] - logs[k - 1];
      const std::uint64_t next = k < top ? logs[k + 1] - logs[k] : 0;
      for (std::uint64_t j = next; j < at_least; ++j) cyclics.push_back(power(p_big, k));
    }
  }
  return FgGroup::from_cyclics(cyclics);
}

FiniteAbelian::Element apply(const FiniteAbelian& src, const FiniteAbelian& dst, const FiniteHom& f,
                             const FiniteAbelian::Element& x) {
  FiniteAbelian::Element r = dst.zero();
  for (std::size_t i = 0; i < src.rank(); ++i)
    if (x[i] != 0) r = dst.add(r, dst.scale(f.images[i], BigInt(x[i])));
  return r;
}

std::vector<FiniteHom> enumerate_homs(const FiniteAbelian& src, const FiniteAbelian& dst) {
  // The image of a basis vector of order m must be killed by m.
  std::vector<std::vector<FiniteAbelian::Element>> choices(src.rank());
  for (std::size_t i = 0; i < src.rank(); ++i)
    for (std::size_t k = 0; k < dst.order(); ++k) {
      auto y = dst.element(k);
      if (dst.is_zero(dst.scale(y, BigInt(src.moduli()[i])))) choices[i].push_back(std::move(y));
    }
  std::vector<FiniteHom> out;
  FiniteHom cur;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == src.rank()) {
      out.push_back(cur);
      return;
    }
    for (const auto& y : choices[i]) {
      cur.images.push_back(y);
      rec(i + 1);
      cur.images.pop_back();
    }
  };
  rec(0);
  return out;
}

namespace {

// [g_1 ... g_m | diag(moduli)] as a k x (m + k) integer matrix.
IntMatrix relation_block(const FiniteAbelian& ambient, const std::vector<FiniteAbelian::Element>& gens) {
  const std::size_t k = ambient.rank(), m = gens.size();
  IntMatrix out(k, m + k);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < k; ++i) out(i, j) = gens[j].at(i);
  for (std::size_t i = 0; i < k; ++i) out(i, m + i) = ambient.moduli()[i];
  return out;
}

}  // namespace

SubgroupData subgroup_generated(const FiniteAbelian& ambient, const std::vector<FiniteAbelian::Element>& gens) {
  SubgroupData out;
  const std::size_t m = gens.size();
  if (m == 0) return out;
  // Relations among the generators: project the kernel of [G | diag(b)].
  const IntMatrix ker = integer_kernel(relation_block(ambient, gens));
  IntMatrix rel(m, ker.cols());
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t c = 0; c < ker.cols(); ++c) rel(i, c) = ker(i, c);
  SmithForm f = smith_normal_form(rel, kSmithUInv);
  const std::vector<BigInt> d = f.diagonal();
  std::vector<std::uint64_t> moduli;
  for (std::size_t i = 0; i < m; ++i) {
    const BigInt di = i < d.size() ? d[i] : BigInt(0);
    if (di == 0) throw PreconditionError("subgroup of a finite group came out infinite");
    if (di == 1) continue;
    moduli.push_back(static_cast<std::uint64_t>(di));
    FiniteAbelian::Element img = ambient.zero();
    for (std::size_t l = 0; l < m; ++l) img = ambient.add(img, ambient.scale(gens[l], f.u_inv(l, i)));
    out.embedding.images.push_back(std::move(img));
  }
  out.group = FiniteAbelian(moduli);
  std::vector<BigInt> orders(moduli.begin(), moduli.end());
  out.canonical = FgGroup::from_cyclics(orders);
  return out;
}

QuotientData quotient_by(const FiniteAbelian& ambient, const std::vector<FiniteAbelian::Element>& gens) {
  QuotientData out;
  const std::size_t k = ambient.rank();
  SmithForm f = smith_normal_form(relation_block(ambient, gens), kSmithU);
  const std::vector<BigInt> d = f.diagonal();
  std::vector<std::size_t> kept;
  std::vector<std::uint64_t> moduli;
  for (std::size_t i = 0; i < k; ++i) {
    if (d.at(i) == 1) continue;
    kept.push_back(i);
    moduli.push_back(static_cast<std::uint64_t>(d[i]));
  }
  out.group = FiniteAbelian(moduli);
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<BigInt> col;
    for (std::size_t i : kept) col.push_back(f.u(i, j));
    out.projection.images.push_back(out.group.reduce(col));
  }
  std::vector<BigInt> orders(moduli.begin(), moduli.end());
  out.canonical = FgGroup::from_cyclics(orders);
  return out;
}

}  // namespace ulmext::oracle
