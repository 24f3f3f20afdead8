#include "ulmext/oracle/six_term.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "ulmext/error.hpp"
#include "ulmext/oracle/cocycle.hpp"

namespace ulmext::oracle {

ShortExactSequence ses_from_subgroup(const FgGroup& b, const std::vector<FiniteAbelian::Element>& gens) {
  ShortExactSequence s;
  s.b_group = b;
  s.b = FiniteAbelian::of(b);
  SubgroupData sub = subgroup_generated(s.b, gens);
  QuotientData quo = quotient_by(s.b, gens);
  s.a_group = sub.canonical;
  s.a = sub.group;
  s.iota = sub.embedding;
  s.c_group = quo.canonical;
  s.c = quo.group;
  s.pi = quo.projection;
  return s;
}

void validate_ses(const ShortExactSequence& s) {
  std::set<std::size_t> image_iota, kernel_pi, image_pi;
  for (std::size_t i = 0; i < s.a.order(); ++i) image_iota.insert(s.b.index(apply(s.a, s.b, s.iota, s.a.element(i))));
  if (image_iota.size() != s.a.order()) throw PreconditionError("short exact sequence: iota is not injective");
  for (std::size_t i = 0; i < s.b.order(); ++i) {
    const auto y = apply(s.b, s.c, s.pi, s.b.element(i));
    image_pi.insert(s.c.index(y));
    if (s.c.is_zero(y)) kernel_pi.insert(i);
  }
  if (image_pi.size() != s.c.order()) throw PreconditionError("short exact sequence: pi is not surjective");
  if (image_iota != kernel_pi) throw PreconditionError("short exact sequence: image(iota) != kernel(pi)");
}

bool SixTermReport::exact() const {
  return std::all_of(nodes.begin(), nodes.end(), [](const NodeCheck& n) { return n.ok; });
}

namespace {

using Key = std::vector<std::size_t>;

// A finite group listed element by element, with a key per element so that
// images and kernels can be compared as sets.
struct Listed {
  std::vector<Key> elements;
  Key zero;
};

Key hom_key(const FiniteAbelian& src, const FiniteAbelian& dst, const FiniteHom& f) {
  Key k;
  for (std::size_t i = 0; i < src.rank(); ++i) k.push_back(dst.index(f.images[i]));
  return k;
}

Key class_key(const FiniteAbelian& classes, const FiniteAbelian::Element& e) { return {classes.index(e)}; }

NodeCheck exact_at(const std::string& node, const std::vector<Key>& image, const Listed& mid,
                   const std::function<Key(std::size_t)>& next, const Key& next_zero) {
  std::set<Key> img(image.begin(), image.end()), ker;
  for (std::size_t i = 0; i < mid.elements.size(); ++i)
    if (next(i) == next_zero) ker.insert(mid.elements[i]);
  NodeCheck c{node, img == ker, ""};
  c.detail = "|image| = " + std::to_string(img.size()) + ", |kernel| = " + std::to_string(ker.size());
  return c;
}

}  // namespace

SixTermReport six_term_check(const ShortExactSequence& s, const FgGroup& g_group) {
  validate_ses(s);
  const FiniteAbelian g = FiniteAbelian::of(g_group);
  const std::vector<FiniteHom> hom_c = enumerate_homs(s.c, g), hom_b = enumerate_homs(s.b, g), hom_a = enumerate_homs(s.a, g);
  const CocycleGroup ext_c(s.c_group, g_group), ext_b(s.b_group, g_group), ext_a(s.a_group, g_group);

  auto compose = [&](const FiniteAbelian& src, const FiniteAbelian& mid, const FiniteHom& first, const FiniteHom& f) {
    FiniteHom out;
    for (std::size_t i = 0; i < src.rank(); ++i) out.images.push_back(apply(mid, g, f, apply(src, mid, first, src.basis(i))));
    return out;
  };
  auto pi_star = [&](const FiniteHom& f) { return compose(s.b, s.c, s.pi, f); };
  auto iota_star = [&](const FiniteHom& f) { return compose(s.a, s.b, s.iota, f); };

  // Section t : C -> B with t(0) = 0 and the inverse of iota on its image.
  const std::size_t nb = s.b.order(), nc = s.c.order();
  std::vector<std::size_t> t(nc, nb), iota_inv(nb, nb);
  for (std::size_t u = nb; u-- > 0;) t[s.c.index(apply(s.b, s.c, s.pi, s.b.element(u)))] = u;
  t[0] = 0;
  for (std::size_t a = 0; a < s.a.order(); ++a) iota_inv[s.b.index(apply(s.a, s.b, s.iota, s.a.element(a)))] = a;

  auto delta = [&](const FiniteHom& phi) {
    Cocycle co = Cocycle::zero(s.c_group, g_group);
    for (std::size_t x = 0; x < nc; ++x)
      for (std::size_t y = 0; y < nc; ++y) {
        const std::size_t sxy = s.c.index(s.c.add(s.c.element(x), s.c.element(y)));
        const auto u = s.b.add(s.b.sub(s.b.element(t[y]), s.b.element(t[sxy])), s.b.element(t[x]));
        const std::size_t a = iota_inv.at(s.b.index(u));
        if (a == nb) throw std::logic_error("t(y) - t(x+y) + t(x) outside the image of iota");
        co.table[x * nc + y] = g.index(apply(s.a, g, phi, s.a.element(a)));
      }
    return ext_c.class_of(co);
  };
  auto pull_back = [&](const CocycleGroup& src, const FiniteAbelian::Element& cls, const FgGroup& dst_group,
                       const FiniteAbelian& dst, const std::function<std::size_t(std::size_t)>& along) {
    const Cocycle rep = src.representative(cls);
    const std::size_t ns = FiniteAbelian::of(src.c()).order(), nd = dst.order();
    Cocycle out = Cocycle::zero(dst_group, g_group);
    for (std::size_t u = 0; u < nd; ++u)
      for (std::size_t v = 0; v < nd; ++v) out.table[u * nd + v] = rep.table[along(u) * ns + along(v)];
    return out;
  };
  auto pi_idx = [&](std::size_t u) { return s.c.index(apply(s.b, s.c, s.pi, s.b.element(u))); };
  auto iota_idx = [&](std::size_t a) { return s.b.index(apply(s.a, s.b, s.iota, s.a.element(a))); };
  auto ext_pi = [&](const FiniteAbelian::Element& cls) { return ext_b.class_of(pull_back(ext_c, cls, s.b_group, s.b, pi_idx)); };
  auto ext_iota = [&](const FiniteAbelian::Element& cls) { return ext_a.class_of(pull_back(ext_b, cls, s.a_group, s.a, iota_idx)); };

  Listed l_hom_c, l_hom_b, l_hom_a, l_ext_c, l_ext_b, l_ext_a;
  for (const auto& f : hom_c) l_hom_c.elements.push_back(hom_key(s.c, g, f));
  for (const auto& f : hom_b) l_hom_b.elements.push_back(hom_key(s.b, g, f));
  for (const auto& f : hom_a) l_hom_a.elements.push_back(hom_key(s.a, g, f));
  const FiniteAbelian& kc = ext_c.class_group();
  const FiniteAbelian& kb = ext_b.class_group();
  const FiniteAbelian& ka = ext_a.class_group();
  for (std::size_t i = 0; i < kc.order(); ++i) l_ext_c.elements.push_back({i});
  for (std::size_t i = 0; i < kb.order(); ++i) l_ext_b.elements.push_back({i});
  for (std::size_t i = 0; i < ka.order(); ++i) l_ext_a.elements.push_back({i});
  const Key zero_hom_b = hom_key(s.b, g, FiniteHom{std::vector<FiniteAbelian::Element>(s.b.rank(), g.zero())});
  const Key zero_hom_a = hom_key(s.a, g, FiniteHom{std::vector<FiniteAbelian::Element>(s.a.rank(), g.zero())});
  const Key zero_c{0}, zero_b{0}, zero_a{0};

  SixTermReport rep;
  rep.orders = {hom_c.size(), hom_b.size(), hom_a.size(), kc.order(), kb.order(), ka.order()};

  // Hom(C,G): pi* injective.
  {
    std::set<Key> img;
    std::size_t kernel = 0;
    for (const auto& f : hom_c) {
      Key k = hom_key(s.b, g, pi_star(f));
      if (k == zero_hom_b) ++kernel;
      img.insert(std::move(k));
    }
    rep.nodes.push_back({"Hom(C,G)", kernel == 1 && img.size() == hom_c.size(), "|kernel of pi*| = " + std::to_string(kernel)});
  }
  {
    std::vector<Key> image;
    for (const auto& f : hom_c) image.push_back(hom_key(s.b, g, pi_star(f)));
    rep.nodes.push_back(exact_at("Hom(B,G)", image, l_hom_b, [&](std::size_t i) { return hom_key(s.a, g, iota_star(hom_b[i])); }, zero_hom_a));
  }
  {
    std::vector<Key> image;
    for (const auto& f : hom_b) image.push_back(hom_key(s.a, g, iota_star(f)));
    rep.nodes.push_back(exact_at("Hom(A,G)", image, l_hom_a, [&](std::size_t i) { return class_key(kc, delta(hom_a[i])); }, zero_c));
  }
  {
    std::vector<Key> image;
    rep.delta_zero = true;
    for (const auto& f : hom_a) {
      Key k = class_key(kc, delta(f));
      rep.delta_zero = rep.delta_zero && k == zero_c;
      image.push_back(std::move(k));
    }
    rep.nodes.push_back(exact_at("Ext(C,G)", image, l_ext_c, [&](std::size_t i) { return class_key(kb, ext_pi(kc.element(i))); }, zero_b));
  }
  {
    std::vector<Key> image;
    for (std::size_t i = 0; i < kc.order(); ++i) image.push_back(class_key(kb, ext_pi(kc.element(i))));
    rep.nodes.push_back(exact_at("Ext(B,G)", image, l_ext_b, [&](std::size_t i) { return class_key(ka, ext_iota(kb.element(i))); }, zero_a));
  }
  {
    std::set<Key> img;
    for (std::size_t i = 0; i < kb.order(); ++i) img.insert(class_key(ka, ext_iota(kb.element(i))));
    rep.nodes.push_back({"Ext(A,G)", img.size() == ka.order(), "|image| = " + std::to_string(img.size()) + " of " + std::to_string(ka.order())});
  }
  return rep;
}

}  // namespace ulmext::oracle
