#include "eigenray/diagram.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace eigenray {

bool SubRay::operator<(const SubRay& o) const {
  if (dir != o.dir) return dir < o.dir;
  if (base != o.base) return base < o.base;
  return count < o.count;
}

Q Ray::param(const Vec2Q& p) const {
  Vec2Q e = dir.q();
  return dot(p - base, e) / dot(e, e);
}

bool Ray::contains(const Vec2Q& p) const {
  if (det2(dir.q(), p - base) != 0) return false;
  return param(p) >= 0;
}

Z Ray::total_multiplicity() const {
  Z s = 0;
  for (const auto& n : nodes) s += n.multiplicity;
  return s;
}

namespace {

void sort_nodes(Ray& r) {
  std::sort(r.nodes.begin(), r.nodes.end(),
            [&](const Node& a, const Node& b) { return r.param(a.position) < r.param(b.position); });
}

void canonicalize(std::vector<Ray>& rays) {
  for (auto& r : rays) sort_nodes(r);
  std::sort(rays.begin(), rays.end(), [](const Ray& a, const Ray& b) {
    if (a.dir != b.dir) return a.dir < b.dir;
    return a.base < b.base;
  });
}

// Rebases a ray at its first node after the node set changed.
void rebase(Ray& r) {
  Vec2Q old = r.base;
  std::sort(r.nodes.begin(), r.nodes.end(), [&](const Node& a, const Node& b) {
    Vec2Q e = r.dir.q();
    return dot(a.position - old, e) < dot(b.position - old, e);
  });
  r.base = r.nodes.front().position;
}

struct Located {
  int ray = -1;
  int node = -1;
};

Located locate(const std::vector<Ray>& rays, const Vec2Q& p) {
  for (size_t i = 0; i < rays.size(); ++i)
    for (size_t j = 0; j < rays[i].nodes.size(); ++j)
      if (rays[i].nodes[j].position == p) return {static_cast<int>(i), static_cast<int>(j)};
  return {};
}

Located require_node(const EigenrayDiagram& d, const Vec2Q& p) {
  Located l = locate(d.rays(), p);
  if (l.ray < 0) {
    std::ostringstream os;
    os << "no node at " << p;
    throw precondition_error(os.str());
  }
  return l;
}

}  // namespace

EigenrayDiagram::EigenrayDiagram(std::vector<Ray> rays) : rays_(std::move(rays)) { canonicalize(rays_); }

EigenrayDiagram EigenrayDiagram::from_multiset(const std::vector<SubRay>& elems) {
  std::vector<Ray> rays;
  for (const auto& el : elems) {
    if (el.count <= 0) throw precondition_error("multiset element with nonpositive count");
    Ray* home = nullptr;
    for (auto& r : rays)
      if (r.dir == el.dir && det2(r.dir.q(), el.base - r.base) == 0) home = &r;
    if (!home) {
      rays.push_back(Ray{el.base, el.dir, {}});
      home = &rays.back();
    }
    bool merged = false;
    for (auto& n : home->nodes)
      if (n.position == el.base) {
        n.multiplicity += el.count;
        merged = true;
      }
    if (!merged) home->nodes.push_back(Node{el.base, el.count});
    rebase(*home);
  }
  return EigenrayDiagram(std::move(rays));
}

std::vector<SubRay> EigenrayDiagram::multiset() const {
  std::vector<SubRay> out;
  for (const auto& r : rays_)
    for (const auto& n : r.nodes) out.push_back(SubRay{n.position, r.dir, n.multiplicity});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Node> EigenrayDiagram::nodes() const {
  std::vector<Node> out;
  for (const auto& r : rays_)
    for (const auto& n : r.nodes) out.push_back(n);
  return out;
}

int EigenrayDiagram::ray_of_node(const Vec2Q& p) const { return locate(rays_, p).ray; }

const Node* EigenrayDiagram::find_node(const Vec2Q& p) const {
  Located l = locate(rays_, p);
  if (l.ray < 0) return nullptr;
  return &rays_[l.ray].nodes[l.node];
}

RayIntersection intersect_rays(const Vec2Q& b1, const Vec2Z& e1z, const Vec2Q& b2, const Vec2Z& e2z) {
  RayIntersection res;
  Vec2Q e1 = e1z.q(), e2 = e2z.q();
  Q den = det2(e1, e2);
  Vec2Q w = b2 - b1;
  if (den != 0) {
    Q s = det2(w, e2) / den;
    Q t = det2(w, e1) / den;
    if (s >= 0 && t >= 0) {
      res.meets = true;
      res.point = b1 + e1 * s;
    }
    return res;
  }
  if (det2(e1, w) != 0) return res;
  res.colinear = true;
  Q p2 = dot(w, e1);  // position of b2 along e1, relative to b1
  if (dot(e1, e2) > 0) {
    res.meets = true;
    res.point = p2 >= 0 ? b2 : b1;
  } else if (p2 >= 0) {
    res.meets = true;
    res.point = b1;
  }
  return res;
}

bool line_meets_ray(const Vec2Q& b1, const Vec2Z& e1z, const Vec2Q& b2, const Vec2Z& e2z) {
  Vec2Q e1 = e1z.q(), e2 = e2z.q();
  Q den = det2(e1, e2);
  if (den == 0) return det2(e1, b2 - b1) == 0;
  Q t = det2(e1, b1 - b2) / den;
  return t >= 0;
}

ValidationReport validate(const EigenrayDiagram& d) {
  ValidationReport rep;
  auto add = [&](std::string kind, int a, int b, std::string detail) {
    rep.valid = false;
    rep.violations.push_back(Violation{std::move(kind), a, b, std::move(detail)});
  };
  const auto& rays = d.rays();
  for (size_t i = 0; i < rays.size(); ++i) {
    const Ray& r = rays[i];
    int ii = static_cast<int>(i);
    if (!r.dir.is_primitive()) {
      add("non-primitive", ii, -1, "direction is not a primitive integer vector");
      continue;
    }
    if (r.nodes.empty()) add("missing-base", ii, -1, "ray carries no nodes");
    bool has_base = false;
    for (size_t j = 0; j < r.nodes.size(); ++j) {
      const Node& n = r.nodes[j];
      if (n.multiplicity < 1) add("bad-multiplicity", ii, -1, "node multiplicity below 1");
      if (!r.contains(n.position)) add("node-off-ray", ii, -1, "node not on its ray");
      if (n.position == r.base) has_base = true;
      for (size_t k = j + 1; k < r.nodes.size(); ++k)
        if (r.nodes[k].position == n.position) add("duplicate-node", ii, -1, "repeated node position");
    }
    if (!r.nodes.empty() && !has_base) add("missing-base", ii, -1, "ray base is not a node");
  }
  for (size_t i = 0; i < rays.size(); ++i)
    for (size_t j = i + 1; j < rays.size(); ++j) {
      if (!rays[i].dir.is_primitive() || !rays[j].dir.is_primitive()) continue;
      RayIntersection x = intersect_rays(rays[i].base, rays[i].dir, rays[j].base, rays[j].dir);
      if (x.meets) {
        std::ostringstream os;
        os << "rays meet at " << *x.point;
        add(x.colinear ? "overlap" : "cross", static_cast<int>(i), static_cast<int>(j), os.str());
      }
    }
  return rep;
}

Z total_multiplicity(const EigenrayDiagram& d, const Ray& ray) {
  for (const auto& r : d.rays())
    if (r.base == ray.base && r.dir == ray.dir) return r.total_multiplicity();
  throw precondition_error("ray not in diagram");
}

EigenrayDiagram node_removal(const EigenrayDiagram& d, const Vec2Q& node) {
  Located l = require_node(d, node);
  std::vector<Ray> rays = d.rays();
  Ray& r = rays[l.ray];
  Node& n = r.nodes[l.node];
  if (n.multiplicity > 1) {
    n.multiplicity -= 1;
  } else if (r.total_multiplicity() == 1) {
    rays.erase(rays.begin() + l.ray);
  } else {
    r.nodes.erase(r.nodes.begin() + l.node);
    if (node == r.base) rebase(r);
  }
  return EigenrayDiagram(std::move(rays));
}

EigenrayDiagram node_insertion(const EigenrayDiagram& d, const SubRay& elem) {
  std::vector<SubRay> ms = d.multiset();
  ms.push_back(elem);
  return EigenrayDiagram::from_multiset(ms);
}

EigenrayDiagram nodal_slide(const EigenrayDiagram& d, const Vec2Q& node, const Vec2Q& to) {
  Located l = require_node(d, node);
  std::vector<Ray> rays = d.rays();
  Ray& r = rays[l.ray];
  if (det2(r.dir.q(), to - node) != 0) throw precondition_error("slide target is off the line of the ray");
  if (to == node) return d;
  Z m = r.nodes[l.node].multiplicity;
  r.nodes.erase(r.nodes.begin() + l.node);
  bool merged = false;
  for (auto& n : r.nodes)
    if (n.position == to) {
      n.multiplicity += m;
      merged = true;
    }
  if (!merged) r.nodes.push_back(Node{to, m});
  rebase(r);
  EigenrayDiagram out(std::move(rays));
  ValidationReport rep = validate(out);
  if (!rep.valid) throw precondition_error("slide result is not a valid diagram: " + rep.violations.front().detail);
  return out;
}

bool is_mutable(const EigenrayDiagram& d, const Vec2Q& node) {
  Located l = require_node(d, node);
  const auto& rays = d.rays();
  const Ray& r = rays[l.ray];
  if (r.nodes.size() != 1) return false;
  for (size_t k = 0; k < rays.size(); ++k) {
    if (static_cast<int>(k) == l.ray) continue;
    if (line_meets_ray(r.base, r.dir, rays[k].base, rays[k].dir)) return false;
  }
  return true;
}

PLShear branch_shear(const EigenrayDiagram& d, const Vec2Q& node) {
  Located l = require_node(d, node);
  const Ray& r = d.rays()[l.ray];
  return PLShear(node, r.dir, r.nodes[l.node].multiplicity);
}

EigenrayDiagram branch_move(const EigenrayDiagram& d, const Vec2Q& node) {
  if (!is_mutable(d, node)) throw precondition_error("node is not mutable");
  Located l = require_node(d, node);
  PLShear psi = branch_shear(d, node);
  std::vector<Ray> out;
  for (size_t k = 0; k < d.rays().size(); ++k) {
    const Ray& r = d.rays()[k];
    if (static_cast<int>(k) == l.ray) {
      out.push_back(Ray{r.base, -r.dir, r.nodes});
      continue;
    }
    IntegralAffineMap piece = psi.piece_at(r.base);
    Ray img{piece.apply(r.base), piece.apply_vector(r.dir), {}};
    for (const auto& n : r.nodes) img.nodes.push_back(Node{piece.apply(n.position), n.multiplicity});
    out.push_back(std::move(img));
  }
  return EigenrayDiagram(std::move(out));
}

std::optional<Vec2Q> is_exact(const EigenrayDiagram& d) {
  const auto& rays = d.rays();
  if (rays.empty()) return Vec2Q();
  if (rays.size() == 1) return rays[0].base;
  std::optional<Vec2Q> p;
  for (size_t i = 1; i < rays.size() && !p; ++i) {
    Vec2Q e0 = rays[0].dir.q(), ei = rays[i].dir.q();
    Q den = det2(e0, ei);
    if (den == 0) continue;
    Q s = det2(rays[i].base - rays[0].base, ei) / den;
    p = rays[0].base + e0 * s;
  }
  if (!p) p = rays[0].base;  // all parallel: only a common line can work
  for (const auto& r : rays)
    if (det2(r.dir.q(), *p - r.base) != 0) return std::nullopt;
  return p;
}

std::vector<SeedPair> seed_data(const EigenrayDiagram& d) {
  std::vector<SeedPair> out;
  for (const auto& el : d.multiset())
    for (Z c = 0; c < el.count; ++c) out.push_back(SeedPair{el.dir, det2(el.base, el.dir.q())});
  return out;
}

EigenrayDiagram apply_map(const EigenrayDiagram& d, const IntegralAffineMap& m) {
  std::vector<SubRay> img;
  for (const auto& el : d.multiset()) img.push_back(SubRay{m.apply(el.base), m.apply_vector(el.dir), el.count});
  return EigenrayDiagram::from_multiset(img);
}

namespace {

bool maps_onto(const IntegralAffineMap& m, const std::vector<SubRay>& a, const std::vector<SubRay>& b) {
  std::vector<SubRay> img;
  img.reserve(a.size());
  for (const auto& el : a) img.push_back(SubRay{m.apply(el.base), m.apply_vector(el.dir), el.count});
  std::sort(img.begin(), img.end());
  return img == b;
}

// A vector w with det(v, w) = 1.
Vec2Z complement(const Vec2Z& v) {
  Z g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), v.x.get_mpz_t(), v.y.get_mpz_t());
  // s x + t y = 1, and det((x,y),(-t,s)) = x s + y t.
  return {Z(-t), s};
}

}  // namespace

Equivalence affine_equivalent(const EigenrayDiagram& d1, const EigenrayDiagram& d2, long shear_bound) {
  Equivalence res;
  std::vector<SubRay> a = d1.multiset(), b = d2.multiset();
  if (a.size() != b.size()) return res;
  if (a.empty()) {
    res.status = Equivalence::Status::found;
    res.map = IntegralAffineMap::identity();
    return res;
  }
  const SubRay& anchor = a.front();
  const SubRay* other = nullptr;
  for (const auto& el : a)
    if (det2(el.dir, anchor.dir) != 0) {
      other = &el;
      break;
    }
  bool skipped = false;
  auto accept = [&](const Mat2Z& L, const SubRay& target) {
    Z dt = L.det();
    if (dt != 1 && dt != -1) return false;
    IntegralAffineMap m(L, target.base - L * anchor.base);
    if (!maps_onto(m, a, b)) return false;
    res.status = Equivalence::Status::found;
    res.map = m;
    return true;
  };
  for (const auto& tb : b) {
    if (tb.count != anchor.count) continue;
    if (other) {
      const Vec2Z& u = anchor.dir;
      const Vec2Z& v = other->dir;
      Z delta = det2(u, v);
      for (const auto& tc : b) {
        if (tc.count != other->count || det2(tb.dir, tc.dir) == 0) continue;
        // L [u v] = [u' v']  =>  L = [u' v'] adj([u v]) / delta
        const Vec2Z& up = tb.dir;
        const Vec2Z& vp = tc.dir;
        Z n00 = up.x * v.y - vp.x * u.y, n01 = -up.x * v.x + vp.x * u.x;
        Z n10 = up.y * v.y - vp.y * u.y, n11 = -up.y * v.x + vp.y * u.x;
        if (n00 % delta != 0 || n01 % delta != 0 || n10 % delta != 0 || n11 % delta != 0) continue;
        Mat2Z L{Z(n00 / delta), Z(n01 / delta), Z(n10 / delta), Z(n11 / delta)};
        if (accept(L, tb)) return res;
      }
      continue;
    }
    // Every direction is parallel to the anchor: L is fixed up to the stabilizer of the anchor direction.
    const Vec2Z& u = anchor.dir;
    Vec2Z up = complement(u);
    const Vec2Z& w = tb.dir;
    Vec2Z wp = complement(w);
    auto build = [&](int eps, const Z& k) {
      // columns: L u = w, L up = eps wp + k w, expressed back in the standard basis
      Vec2Z img_up{eps * wp.x + k * w.x, eps * wp.y + k * w.y};
      // [u up] has det 1, inverse [[up.y, -up.x], [-u.y, u.x]]
      Mat2Z M{w.x, img_up.x, w.y, img_up.y};
      Mat2Z Inv{up.y, -up.x, -u.y, u.x};
      return M * Inv;
    };
    const SubRay* off = nullptr;
    for (const auto& el : a)
      if (det2(u.q(), el.base - anchor.base) != 0) {
        off = &el;
        break;
      }
    if (!off) {
      for (int eps : {1, -1})
        if (accept(build(eps, 0), tb)) return res;
      continue;
    }
    Vec2Q vq = off->base - anchor.base;
    Q alpha = det2(vq, up.q()), beta = det2(u.q(), vq);
    for (const auto& tg : b) {
      if (tg.count != off->count) continue;
      Vec2Q wq = tg.base - tb.base;
      Q eps_q = det2(w.q(), wq) / beta;
      if (eps_q != 1 && eps_q != -1) continue;
      Q kq = (det2(wq, wp.q()) - alpha) / beta;
      if (kq.get_den() != 1) continue;
      Z k = kq.get_num();
      if (abs(k) > shear_bound) {
        skipped = true;
        continue;
      }
      if (accept(build(eps_q > 0 ? 1 : -1, k), tb)) return res;
    }
  }
  res.status = skipped ? Equivalence::Status::indeterminate : Equivalence::Status::none;
  return res;
}

std::optional<EigenrayDiagram> normalize_weak(const std::vector<SubRay>& input) {
  std::vector<SubRay> elems = input;
  for (size_t guard = 0; guard < 4 * input.size() + 4; ++guard) {
    EigenrayDiagram d = EigenrayDiagram::from_multiset(elems);
    const auto& rays = d.rays();
    int bad = -1;
    for (size_t i = 0; i < rays.size() && bad < 0; ++i)
      for (size_t j = 0; j < rays.size() && bad < 0; ++j) {
        if (i == j) continue;
        RayIntersection x = intersect_rays(rays[i].base, rays[i].dir, rays[j].base, rays[j].dir);
        if (x.meets && !x.colinear) return std::nullopt;
        if (x.meets && x.colinear) bad = static_cast<int>(i);
      }
    if (bad < 0) return d;
    // Flip every node of the offending ray to the opposite direction, one generalized branch move each.
    const Ray flip = rays[bad];
    for (const auto& n : flip.nodes) {
      PLShear psi(n.position, flip.dir, n.multiplicity);
      std::vector<SubRay> next;
      for (const auto& el : elems) {
        bool on_line = det2(flip.dir.q(), el.base - n.position) == 0 && det2(flip.dir, el.dir) == 0;
        if (on_line) {
          if (el.base == n.position && el.dir == flip.dir) {
            next.push_back(SubRay{el.base, -el.dir, el.count});
          } else {
            next.push_back(el);
          }
          continue;
        }
        if (line_meets_ray(n.position, flip.dir, el.base, el.dir)) return std::nullopt;
        IntegralAffineMap piece = psi.piece_at(el.base);
        next.push_back(SubRay{piece.apply(el.base), piece.apply_vector(el.dir), el.count});
      }
      elems = std::move(next);
    }
  }
  return std::nullopt;
}

}  // namespace eigenray
