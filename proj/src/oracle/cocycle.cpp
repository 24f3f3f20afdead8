#include "ulmext/oracle/cocycle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>

#include "ulmext/error.hpp"

namespace ulmext::oracle {

namespace {

constexpr std::size_t kNoVar = static_cast<std::size_t>(-1);

FiniteAbelian finite_of(const FgGroup& g, const char* what) {
  if (!g.is_finite()) throw PreconditionError(std::string(what) + " must be finite, got " + g.to_string());
  return FiniteAbelian::of(g);
}

// x^-1 mod m for gcd(x, m) = 1.
BigInt mod_inverse(const BigInt& x, const BigInt& m) {
  BigInt r0 = m, r1 = mod_floor(x, m), s0 = 0, s1 = 1;
  while (r1 != 0) {
    BigInt q = r0 / r1;
    BigInt t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  return mod_floor(s0, m);
}

// Everything about the linear algebra that depends on C alone: one variable
// per unordered pair {x, y} of nonzero elements, the cocycle constraint
// matrix in Smith form and the coboundary matrix in Smith form.
struct CData {
  FiniteAbelian group;
  std::size_t n = 0;
  std::vector<std::pair<std::size_t, std::size_t>> vars;
  std::vector<std::size_t> var_of;  // n * n -> variable or kNoVar
  SmithForm constraints;            // V and V^-1
  IntMatrix vinv_coboundary;        // V^-1 * P
  SmithForm coboundary;             // U and V of P

  explicit CData(const FgGroup& c) : group(finite_of(c, "C")), n(group.order()) {
    var_of.assign(n * n, kNoVar);
    for (std::size_t x = 1; x < n; ++x)
      for (std::size_t y = x; y < n; ++y) {
        var_of[x * n + y] = var_of[y * n + x] = vars.size();
        vars.emplace_back(x, y);
      }
    const std::size_t nv = vars.size();
    const std::vector<std::size_t> sum = group.addition_table();
    auto plus = [&](std::size_t x, std::size_t y) { return sum[x * n + y]; };

    std::set<std::vector<std::pair<std::size_t, long>>> rows;
    for (std::size_t x = 1; x < n; ++x)
      for (std::size_t y = 1; y < n; ++y)
        for (std::size_t z = 1; z < n; ++z) {
          std::map<std::size_t, long> row;
          auto term = [&](std::size_t u, std::size_t v, long sign) {
            if (u != 0 && v != 0) row[var_of[u * n + v]] += sign;
          };
          term(y, z, +1);
          term(plus(x, y), z, -1);
          term(x, plus(y, z), +1);
          term(x, y, -1);
          std::vector<std::pair<std::size_t, long>> sparse;
          for (auto [v, k] : row)
            if (k != 0) sparse.emplace_back(v, k);
          // A row and its negative impose the same constraint.
          if (!sparse.empty() && sparse.front().second < 0)
            for (auto& entry : sparse) entry.second = -entry.second;
          if (!sparse.empty()) rows.insert(std::move(sparse));
        }
    IntMatrix m(rows.size(), nv);
    std::size_t r = 0;
    for (const auto& row : rows) {
      for (auto [v, k] : row) m(r, v) = k;
      ++r;
    }
    constraints = smith_normal_form(m, kSmithV | kSmithVInv);

    IntMatrix p(nv, n == 0 ? 0 : n - 1);
    for (std::size_t v = 0; v < nv; ++v) {
      auto [x, y] = vars[v];
      p(v, x - 1) += 1;
      p(v, y - 1) += 1;
      if (std::size_t s = plus(x, y); s != 0) p(v, s - 1) -= 1;
    }
    vinv_coboundary = constraints.v_inv * p;
    coboundary = smith_normal_form(p, kSmithU | kSmithV);
  }
};

std::shared_ptr<const CData> c_data(const FgGroup& c) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const CData>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[c.to_string()];
  if (!slot) slot = std::make_shared<const CData>(c);
  return slot;
}

void check_shape(const Cocycle& c) {
  const std::size_t n = finite_of(c.c, "C").order();
  if (c.table.size() != n * n) throw PreconditionError("cocycle table has the wrong size");
  const std::size_t m = finite_of(c.a, "A").order();
  for (auto v : c.table)
    if (v >= m) throw PreconditionError("cocycle value out of range");
}

}  // namespace

// ---------------------------------------------------------------------------

Cocycle Cocycle::zero(const FgGroup& c, const FgGroup& a) {
  const std::size_t n = finite_of(c, "C").order();
  finite_of(a, "A");
  return Cocycle{c, a, std::vector<std::size_t>(n * n, 0)};
}

std::size_t Cocycle::at(std::size_t x, std::size_t y) const {
  const std::size_t n = FiniteAbelian::of(c).order();
  return table.at(x * n + y);
}

bool is_cocycle(const Cocycle& c) {
  check_shape(c);
  const FiniteAbelian cg = FiniteAbelian::of(c.c), ag = FiniteAbelian::of(c.a);
  const std::size_t n = cg.order(), na = ag.order();
  const std::vector<std::size_t> csum = cg.addition_table(), asum = ag.addition_table();
  const auto& t = c.table;
  for (std::size_t x = 0; x < n; ++x) {
    if (t[x * n] != 0 || t[x] != 0) return false;
    for (std::size_t y = 0; y < n; ++y)
      if (t[x * n + y] != t[y * n + x]) return false;
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        const std::size_t lhs = asum[t[y * n + z] * na + t[x * n + csum[y * n + z]]];
        const std::size_t rhs = asum[t[csum[x * n + y] * n + z] * na + t[x * n + y]];
        if (lhs != rhs) return false;
      }
  return true;
}

Cocycle coboundary(const FgGroup& c, const FgGroup& a, const std::vector<std::size_t>& phi) {
  const FiniteAbelian cg = finite_of(c, "C"), ag = finite_of(a, "A");
  const std::size_t n = cg.order();
  if (phi.size() != n || phi[0] != 0) throw PreconditionError("coboundary needs phi on all of C with phi(0) = 0");
  Cocycle out = Cocycle::zero(c, a);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t s = cg.index(cg.add(cg.element(x), cg.element(y)));
      auto v = ag.add(ag.sub(ag.element(phi[y]), ag.element(phi[s])), ag.element(phi[x]));
      out.table[x * n + y] = ag.index(v);
    }
  return out;
}

Cocycle cocycle_add(const Cocycle& x, const Cocycle& y) {
  if (!(x.c == y.c && x.a == y.a)) throw PreconditionError("cocycle_add on different groups");
  const FiniteAbelian ag = FiniteAbelian::of(x.a);
  Cocycle out = x;
  for (std::size_t i = 0; i < out.table.size(); ++i)
    out.table[i] = ag.index(ag.add(ag.element(x.table[i]), ag.element(y.table[i])));
  return out;
}

Cocycle cocycle_neg(const Cocycle& x) {
  const FiniteAbelian ag = FiniteAbelian::of(x.a);
  Cocycle out = x;
  for (auto& v : out.table) v = ag.index(ag.neg(ag.element(v)));
  return out;
}

// ---------------------------------------------------------------------------

GroupTable GroupTable::from_addition(std::size_t n, std::vector<std::size_t> add) {
  if (add.size() != n * n) throw PreconditionError("addition table has the wrong size");
  GroupTable t;
  t.n = n;
  t.add = std::move(add);
  for (auto v : t.add)
    if (v >= n) throw PreconditionError("addition table value out of range");
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (t.sum(x, y) != t.sum(y, x)) throw PreconditionError("addition table is not commutative");
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (t.sum(t.sum(x, y), z) != t.sum(x, t.sum(y, z))) throw PreconditionError("addition table is not associative");
  std::size_t zero = n;
  for (std::size_t e = 0; e < n && zero == n; ++e) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) ok = t.sum(e, x) == x;
    if (ok) zero = e;
  }
  if (zero == n) throw PreconditionError("addition table has no identity");
  t.zero = zero;
  t.negation.assign(n, n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (t.sum(x, y) == zero) {
        t.negation[x] = y;
        break;
      }
  for (auto v : t.negation)
    if (v == n) throw PreconditionError("addition table has an element without inverse");
  return t;
}

void validate_extension(const ExtensionTable& e) {
  const FiniteAbelian ag = finite_of(e.a, "A"), cg = finite_of(e.c, "C");
  const GroupTable& x = e.x;
  if (x.add.size() != x.n * x.n || x.negation.size() != x.n) throw PreconditionError("extension: malformed middle group");
  if (e.g.size() != ag.order() || e.h.size() != x.n) throw PreconditionError("extension: map tables have the wrong size");
  for (auto v : e.g)
    if (v >= x.n) throw PreconditionError("extension: g value out of range");
  for (auto v : e.h)
    if (v >= cg.order()) throw PreconditionError("extension: h value out of range");
  for (std::size_t a = 0; a < ag.order(); ++a)
    for (std::size_t b = 0; b < ag.order(); ++b)
      if (e.g[ag.index(ag.add(ag.element(a), ag.element(b)))] != x.sum(e.g[a], e.g[b]))
        throw PreconditionError("extension: g is not a homomorphism");
  for (std::size_t u = 0; u < x.n; ++u)
    for (std::size_t v = 0; v < x.n; ++v)
      if (e.h[x.sum(u, v)] != cg.index(cg.add(cg.element(e.h[u]), cg.element(e.h[v]))))
        throw PreconditionError("extension: h is not a homomorphism");
  std::set<std::size_t> image_g(e.g.begin(), e.g.end());
  if (image_g.size() != e.g.size()) throw PreconditionError("extension: g is not injective");
  std::set<std::size_t> image_h(e.h.begin(), e.h.end());
  if (image_h.size() != cg.order()) throw PreconditionError("extension: h is not surjective");
  std::set<std::size_t> kernel_h;
  for (std::size_t u = 0; u < x.n; ++u)
    if (e.h[u] == 0) kernel_h.insert(u);
  if (kernel_h != image_g) throw PreconditionError("extension: image of g differs from kernel of h");
}

ExtensionTable extension_from_cocycle(const Cocycle& c) {
  check_shape(c);
  const FiniteAbelian ag = FiniteAbelian::of(c.a), cg = FiniteAbelian::of(c.c);
  const std::size_t na = ag.order(), nc = cg.order(), n = na * nc;
  for (std::size_t x = 0; x < nc; ++x)
    if (c.table[x * nc] != 0 || c.table[x] != 0) throw PreconditionError("not a cocycle: c(x,0) != 0");
  std::vector<std::size_t> add(n * n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      const std::size_t a = u / nc, x = u % nc, b = v / nc, y = v % nc;
      auto sum_a = ag.add(ag.add(ag.element(a), ag.element(b)), ag.element(c.table[x * nc + y]));
      auto sum_c = cg.add(cg.element(x), cg.element(y));
      add[u * n + v] = ag.index(sum_a) * nc + cg.index(sum_c);
    }
  ExtensionTable e;
  e.a = c.a;
  e.c = c.c;
  try {
    e.x = GroupTable::from_addition(n, std::move(add));
  } catch (const PreconditionError& err) {
    throw PreconditionError(std::string("not a cocycle: twisted ") + err.what());
  }
  for (std::size_t a = 0; a < na; ++a) e.g.push_back(a * nc);
  for (std::size_t u = 0; u < n; ++u) e.h.push_back(u % nc);
  return e;
}

std::vector<std::size_t> canonical_section(const ExtensionTable& e) {
  const std::size_t nc = finite_of(e.c, "C").order();
  std::vector<std::size_t> t(nc, e.x.n);
  for (std::size_t u = e.x.n; u-- > 0;) t[e.h[u]] = u;
  t[0] = e.x.zero;
  return t;
}

Cocycle cocycle_from_extension(const ExtensionTable& e, const std::vector<std::size_t>& section) {
  validate_extension(e);
  const FiniteAbelian cg = FiniteAbelian::of(e.c);
  const std::size_t nc = cg.order();
  if (section.size() != nc) throw PreconditionError("section has the wrong size");
  if (section[0] != e.x.zero) throw PreconditionError("section must send 0 to 0");
  for (std::size_t x = 0; x < nc; ++x)
    if (section[x] >= e.x.n || e.h[section[x]] != x) throw PreconditionError("section is not a right inverse of h");
  std::vector<std::size_t> g_inv(e.x.n, kNoVar);
  for (std::size_t a = 0; a < e.g.size(); ++a) g_inv[e.g[a]] = a;
  Cocycle c = Cocycle::zero(e.c, e.a);
  for (std::size_t x = 0; x < nc; ++x)
    for (std::size_t y = 0; y < nc; ++y) {
      const std::size_t s = cg.index(cg.add(cg.element(x), cg.element(y)));
      const std::size_t u = e.x.sum(e.x.sub(section[y], section[s]), section[x]);
      c.table[x * nc + y] = g_inv[u];
    }
  return c;
}

// ---------------------------------------------------------------------------

struct CocycleGroup::Impl {
  // One cyclic factor Z/a of A. With y = V^-1 x the cocycle condition reads
  // y_i in scale_i * Z/a, and z_i = y_i / scale_i lives in Z/g_i.
  struct Component {
    std::uint64_t modulus = 1;
    std::vector<std::uint64_t> g;
    std::vector<std::uint64_t> scale;
    std::vector<std::size_t> kept;                      // quotient coordinates != Z/1
    std::vector<std::uint64_t> kept_moduli;
    std::vector<std::vector<std::uint64_t>> vinv_mod;   // V^-1 mod a
    std::vector<std::vector<std::uint64_t>> u_kept_mod; // kept rows of U, row k mod its modulus
    std::vector<std::vector<std::uint64_t>> basis_rep;  // variable values of each class generator
  };

  FgGroup c, a;
  FiniteAbelian ag;
  std::shared_ptr<const CData> cd;
  std::vector<Component> comps;
  FiniteAbelian classes;
  FgGroup quotient;
  BigInt z_order = 1;

  std::size_t nv() const { return cd->vars.size(); }

  std::vector<std::uint64_t> values(const Cocycle& co, std::size_t j) const {
    std::vector<std::uint64_t> x(nv());
    for (std::size_t v = 0; v < nv(); ++v) {
      auto [p, q] = cd->vars[v];
      x[v] = ag.coordinate(co.table[p * cd->n + q], j);
    }
    return x;
  }

  // Per-component variable values back into a symmetric table.
  Cocycle assemble(const std::vector<std::vector<std::uint64_t>>& per_comp) const {
    Cocycle out = Cocycle::zero(c, a);
    FiniteAbelian::Element coords(comps.size());
    for (std::size_t v = 0; v < nv(); ++v) {
      for (std::size_t j = 0; j < comps.size(); ++j) coords[j] = per_comp[j][v];
      const std::size_t idx = ag.index(coords);
      auto [p, q] = cd->vars[v];
      out.table[p * cd->n + q] = out.table[q * cd->n + p] = idx;
    }
    return out;
  }
};

CocycleGroup::CocycleGroup(const FgGroup& c, const FgGroup& a) : impl_(std::make_unique<Impl>()) {
  Impl& m = *impl_;
  m.c = c;
  m.a = a;
  m.ag = finite_of(a, "A");
  m.cd = c_data(c);
  const std::size_t nv = m.nv(), ncob = m.cd->vinv_coboundary.cols();
  const std::vector<BigInt> d = m.cd->constraints.diagonal();
  const std::size_t r = m.cd->constraints.rank;
  const IntMatrix& v_mat = m.cd->constraints.v;
  const IntMatrix& vinv = m.cd->constraints.v_inv;
  std::vector<std::uint64_t> class_moduli;
  std::vector<BigInt> class_orders;
  for (const BigInt& mod_big : a.invariants()) {
    Impl::Component comp;
    const auto mod = static_cast<std::uint64_t>(mod_big);
    comp.modulus = mod;
    for (std::size_t i = 0; i < nv; ++i) {
      comp.g.push_back(i < r ? static_cast<std::uint64_t>(gcd(d[i], mod_big)) : mod);
      comp.scale.push_back(mod / comp.g.back());
      m.z_order *= comp.g.back();
    }
    comp.vinv_mod.assign(nv, std::vector<std::uint64_t>(nv));
    for (std::size_t i = 0; i < nv; ++i)
      for (std::size_t k = 0; k < nv; ++k) comp.vinv_mod[i][k] = static_cast<std::uint64_t>(mod_floor(vinv(i, k), mod_big));

    // Coboundaries in z-coordinates, next to the relations g_i z_i = 0.
    IntMatrix block(nv, ncob + nv);
    for (std::size_t i = 0; i < nv; ++i) {
      for (std::size_t col = 0; col < ncob; ++col) {
        const BigInt y = mod_floor(m.cd->vinv_coboundary(i, col), mod_big);
        if (y % comp.scale[i] != 0) throw std::logic_error("coboundary outside the cocycle module");
        block(i, col) = y / comp.scale[i];
      }
      block(i, ncob + i) = comp.g[i];
    }
    // The block presents a module killed by the modulus, so working modulo
    // it loses nothing and keeps the entries small.
    const SmithForm q = smith_normal_form_mod(block, mod_big, kSmithU | kSmithUInv);
    std::vector<BigInt> dq = q.diagonal();
    for (auto& x : dq) x = gcd(x, mod_big);
    for (std::size_t i = 0; i < nv; ++i) {
      if (dq[i] == 1) continue;
      const auto dk = static_cast<std::uint64_t>(dq[i]);
      comp.kept.push_back(i);
      comp.kept_moduli.push_back(dk);
      class_moduli.push_back(dk);
      class_orders.push_back(dq[i]);
      std::vector<std::uint64_t> row(nv);
      for (std::size_t k = 0; k < nv; ++k) row[k] = static_cast<std::uint64_t>(mod_floor(q.u(i, k), dq[i]));
      comp.u_kept_mod.push_back(std::move(row));
      // The class generator: z = column i of U^-1, y = scale * z, x = V y.
      std::vector<BigInt> y(nv);
      for (std::size_t k = 0; k < nv; ++k) y[k] = comp.scale[k] * q.u_inv(k, i);
      std::vector<std::uint64_t> x(nv);
      for (std::size_t v = 0; v < nv; ++v) {
        BigInt acc = 0;
        for (std::size_t k = 0; k < nv; ++k) acc += v_mat(v, k) * y[k];
        x[v] = static_cast<std::uint64_t>(mod_floor(acc, mod_big));
      }
      comp.basis_rep.push_back(std::move(x));
    }
    m.comps.push_back(std::move(comp));
  }
  m.classes = FiniteAbelian(class_moduli);
  m.quotient = FgGroup::from_cyclics(class_orders);
}

CocycleGroup::~CocycleGroup() = default;
CocycleGroup::CocycleGroup(CocycleGroup&&) noexcept = default;
CocycleGroup& CocycleGroup::operator=(CocycleGroup&&) noexcept = default;

const FgGroup& CocycleGroup::c() const { return impl_->c; }
const FgGroup& CocycleGroup::a() const { return impl_->a; }
BigInt CocycleGroup::cocycle_order() const { return impl_->z_order; }
BigInt CocycleGroup::coboundary_order() const { return impl_->z_order / impl_->quotient.order(); }
const FgGroup& CocycleGroup::quotient() const { return impl_->quotient; }
const FiniteAbelian& CocycleGroup::class_group() const { return impl_->classes; }

FiniteAbelian::Element CocycleGroup::class_of(const Cocycle& co) const {
  const Impl& m = *impl_;
  if (!(co.c == m.c && co.a == m.a)) throw PreconditionError("class_of: cocycle over different groups");
  if (!is_cocycle(co)) throw PreconditionError("class_of: not a cocycle");
  FiniteAbelian::Element out;
  const std::size_t nv = m.nv();
  for (std::size_t j = 0; j < m.comps.size(); ++j) {
    const auto& comp = m.comps[j];
    const std::vector<std::uint64_t> x = m.values(co, j);
    std::vector<std::uint64_t> z(nv);
    for (std::size_t i = 0; i < nv; ++i) {
      std::uint64_t y = 0;
      for (std::size_t k = 0; k < nv; ++k) y = (y + comp.vinv_mod[i][k] * x[k]) % comp.modulus;
      if (y % comp.scale[i] != 0) throw std::logic_error("cocycle outside the solution module");
      z[i] = y / comp.scale[i];
    }
    for (std::size_t k = 0; k < comp.kept.size(); ++k) {
      const std::uint64_t dk = comp.kept_moduli[k];
      std::uint64_t w = 0;
      for (std::size_t i = 0; i < nv; ++i) w = (w + comp.u_kept_mod[k][i] * (z[i] % dk)) % dk;
      out.push_back(w);
    }
  }
  return out;
}

Cocycle CocycleGroup::representative(const FiniteAbelian::Element& cls) const {
  const Impl& m = *impl_;
  if (cls.size() != m.classes.rank()) throw PreconditionError("representative: class has the wrong rank");
  std::vector<std::vector<std::uint64_t>> per_comp;
  std::size_t pos = 0;
  for (const auto& comp : m.comps) {
    std::vector<std::uint64_t> x(m.nv(), 0);
    for (std::size_t k = 0; k < comp.kept.size(); ++k, ++pos)
      for (std::size_t v = 0; v < m.nv(); ++v) x[v] = (x[v] + cls[pos] % comp.modulus * comp.basis_rep[k][v]) % comp.modulus;
    per_comp.push_back(std::move(x));
  }
  return m.assemble(per_comp);
}

std::vector<Cocycle> CocycleGroup::cocycle_generators() const {
  const Impl& m = *impl_;
  std::vector<Cocycle> out;
  for (std::size_t j = 0; j < m.comps.size(); ++j) {
    const auto& comp = m.comps[j];
    const BigInt mod = comp.modulus;
    for (std::size_t i = 0; i < m.nv(); ++i) {
      if (comp.g[i] == 1) continue;
      std::vector<std::vector<std::uint64_t>> per_comp(m.comps.size(), std::vector<std::uint64_t>(m.nv(), 0));
      for (std::size_t v = 0; v < m.nv(); ++v)
        per_comp[j][v] = static_cast<std::uint64_t>(mod_floor(comp.scale[i] * m.cd->constraints.v(v, i), mod));
      out.push_back(m.assemble(per_comp));
    }
  }
  return out;
}

std::optional<std::vector<std::size_t>> CocycleGroup::solve_coboundary(const Cocycle& target) const {
  const Impl& m = *impl_;
  if (!(target.c == m.c && target.a == m.a)) throw PreconditionError("solve_coboundary: different groups");
  check_shape(target);
  const SmithForm& f = m.cd->coboundary;
  const std::vector<BigInt> d = f.diagonal();
  const std::size_t nc = m.cd->n, nphi = nc == 0 ? 0 : nc - 1;
  std::vector<std::vector<BigInt>> phi_coords(nc, std::vector<BigInt>(m.comps.size(), BigInt(0)));
  for (std::size_t j = 0; j < m.comps.size(); ++j) {
    const BigInt mod = m.comps[j].modulus;
    const std::vector<std::uint64_t> b = m.values(target, j);
    std::vector<BigInt> w(nphi, BigInt(0));
    for (std::size_t i = 0; i < m.nv(); ++i) {
      BigInt bi = 0;
      for (std::size_t k = 0; k < m.nv(); ++k) bi += f.u(i, k) * b[k];
      bi = mod_floor(bi, mod);
      if (i >= f.rank) {
        if (bi != 0) return std::nullopt;
        continue;
      }
      const BigInt g = gcd(d[i], mod);
      if (bi % g != 0) return std::nullopt;
      const BigInt m2 = mod / g;
      w[i] = m2 == 1 ? BigInt(0) : mod_floor((bi / g) * mod_inverse(d[i] / g, m2), m2);
    }
    for (std::size_t e = 0; e < nphi; ++e) {
      BigInt s = 0;
      for (std::size_t k = 0; k < nphi; ++k) s += f.v(e, k) * w[k];
      phi_coords[e + 1][j] = mod_floor(s, mod);
    }
  }
  std::vector<std::size_t> phi(nc, 0);
  for (std::size_t e = 0; e < nc; ++e) phi[e] = m.ag.index(m.ag.reduce(phi_coords[e]));
  if (coboundary(m.c, m.a, phi) != target) throw std::logic_error("solve_coboundary produced a wrong witness");
  return phi;
}

// ---------------------------------------------------------------------------

namespace {

void check_same_groups(const ExtensionTable& e1, const ExtensionTable& e2) {
  if (!(e1.a == e2.a && e1.c == e2.c)) throw PreconditionError("extensions over different groups");
}

}  // namespace

std::optional<std::vector<std::size_t>> equivalence_witness(const ExtensionTable& e1, const ExtensionTable& e2) {
  check_same_groups(e1, e2);
  const Cocycle c1 = cocycle_from_extension(e1, canonical_section(e1));
  const Cocycle c2 = cocycle_from_extension(e2, canonical_section(e2));
  return CocycleGroup(e1.c, e1.a).solve_coboundary(cocycle_add(c1, cocycle_neg(c2)));
}

bool extensions_equivalent(const ExtensionTable& e1, const ExtensionTable& e2) {
  return equivalence_witness(e1, e2).has_value();
}

bool extensions_equivalent_exhaustive(const ExtensionTable& e1, const ExtensionTable& e2) {
  check_same_groups(e1, e2);
  validate_extension(e1);
  validate_extension(e2);
  const std::size_t n = e1.x.n;
  if (n != e2.x.n) return false;
  if (n > 16) throw PreconditionError("exhaustive equivalence search is limited to |X| <= 16");
  std::vector<std::size_t> forced(n, n);  // psi on g1(A) is fixed by psi g1 = g2
  for (std::size_t a = 0; a < e1.g.size(); ++a) forced[e1.g[a]] = e2.g[a];

  std::vector<std::size_t> psi(n, n);
  std::vector<bool> used(n, false);
  auto consistent = [&](std::size_t u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (psi[v] == n) continue;
      const std::size_t s = e1.x.sum(u, v);
      if (psi[s] != n && psi[s] != e2.x.sum(psi[u], psi[v])) return false;
    }
    return true;
  };
  std::function<bool(std::size_t)> rec = [&](std::size_t u) -> bool {
    if (u == n) return true;
    for (std::size_t w = 0; w < n; ++w) {
      if (used[w] || e2.h[w] != e1.h[u]) continue;
      if (forced[u] != n && forced[u] != w) continue;
      psi[u] = w;
      used[w] = true;
      if (consistent(u) && rec(u + 1)) return true;
      psi[u] = n;
      used[w] = false;
    }
    return false;
  };
  return rec(0);
}

ExtensionTable baer_sum(const ExtensionTable& e1, const ExtensionTable& e2) {
  check_same_groups(e1, e2);
  validate_extension(e1);
  validate_extension(e2);
  const std::size_t n1 = e1.x.n, n2 = e2.x.n;
  std::vector<std::pair<std::size_t, std::size_t>> pullback;
  std::vector<std::size_t> index_of(n1 * n2, kNoVar);
  for (std::size_t u = 0; u < n1; ++u)
    for (std::size_t v = 0; v < n2; ++v)
      if (e1.h[u] == e2.h[v]) {
        index_of[u * n2 + v] = pullback.size();
        pullback.emplace_back(u, v);
      }
  auto plus = [&](std::size_t i, std::size_t j) {
    auto [u1, v1] = pullback[i];
    auto [u2, v2] = pullback[j];
    return index_of[e1.x.sum(u1, u2) * n2 + e2.x.sum(v1, v2)];
  };
  // Antidiagonal {(g1 a, -g2 a)}; each coset is named by its least member.
  std::vector<std::size_t> anti;
  for (std::size_t a = 0; a < e1.g.size(); ++a) anti.push_back(index_of[e1.g[a] * n2 + e2.x.neg(e2.g[a])]);
  std::vector<std::size_t> rep(pullback.size());
  for (std::size_t i = 0; i < pullback.size(); ++i) {
    std::size_t best = i;
    for (auto k : anti) best = std::min(best, plus(i, k));
    rep[i] = best;
  }
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < pullback.size(); ++i)
    if (rep[i] == i) reps.push_back(i);
  std::map<std::size_t, std::size_t> slot;
  for (std::size_t k = 0; k < reps.size(); ++k) slot[reps[k]] = k;
  const std::size_t n = reps.size();
  std::vector<std::size_t> add(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) add[i * n + j] = slot.at(rep[plus(reps[i], reps[j])]);

  ExtensionTable out;
  out.a = e1.a;
  out.c = e1.c;
  out.x = GroupTable::from_addition(n, std::move(add));
  for (std::size_t a = 0; a < e1.g.size(); ++a) out.g.push_back(slot.at(rep[index_of[e1.g[a] * n2 + e2.x.zero]]));
  for (std::size_t k = 0; k < n; ++k) out.h.push_back(e1.h[pullback[reps[k]].first]);
  validate_extension(out);
  return out;
}

ExtensionTable baer_negative(const ExtensionTable& e) {
  const FiniteAbelian ag = finite_of(e.a, "A");
  ExtensionTable out = e;
  for (std::size_t a = 0; a < e.g.size(); ++a) out.g[a] = e.g[ag.index(ag.neg(ag.element(a)))];
  return out;
}

ExtensionTable split_extension(const FgGroup& c, const FgGroup& a) { return extension_from_cocycle(Cocycle::zero(c, a)); }

}  // namespace ulmext::oracle
