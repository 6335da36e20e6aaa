#include "eigenray/novikov.hpp"

#include <algorithm>
#include <map>

namespace eigenray {

NovikovElement::NovikovElement(const Q& c) {
  if (c != 0) terms_.push_back({Q(0), c});
}

NovikovElement NovikovElement::monomial(const Q& coeff, const Q& exponent) {
  NovikovElement x;
  if (coeff != 0) x.terms_.push_back({exponent, coeff});
  return x;
}

NovikovElement NovikovElement::from_terms(std::vector<Term> terms) {
  std::map<Q, Q> acc;
  for (auto& [e, c] : terms) acc[e] += c;
  NovikovElement x;
  for (auto& [e, c] : acc)
    if (c != 0) x.terms_.push_back({e, c});
  return x;
}

std::optional<Q> NovikovElement::valuation() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.front().first;
}

Q NovikovElement::coeff(const Q& exponent) const {
  for (const auto& [e, c] : terms_)
    if (e == exponent) return c;
  return 0;
}

NovikovElement NovikovElement::operator+(const NovikovElement& o) const {
  NovikovElement r;
  auto i = terms_.begin(), j = o.terms_.begin();
  while (i != terms_.end() || j != o.terms_.end()) {
    if (j == o.terms_.end() || (i != terms_.end() && i->first < j->first)) {
      r.terms_.push_back(*i++);
    } else if (i == terms_.end() || j->first < i->first) {
      r.terms_.push_back(*j++);
    } else {
      Q c = i->second + j->second;
      if (c != 0) r.terms_.push_back({i->first, c});
      ++i;
      ++j;
    }
  }
  return r;
}

NovikovElement NovikovElement::operator-() const {
  NovikovElement r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

NovikovElement NovikovElement::operator-(const NovikovElement& o) const { return *this + (-o); }

NovikovElement NovikovElement::operator*(const NovikovElement& o) const {
  if (is_zero() || o.is_zero()) return {};
  if (o.terms_.size() == 1) {
    NovikovElement r = *this;
    for (auto& t : r.terms_) {
      t.first += o.terms_[0].first;
      t.second *= o.terms_[0].second;
    }
    return r;
  }
  std::vector<Term> all;
  all.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) all.push_back({a.first + b.first, a.second * b.second});
  return from_terms(std::move(all));
}

NovikovElement NovikovElement::shift(const Q& a) const {
  NovikovElement r = *this;
  for (auto& t : r.terms_) t.first += a;
  return r;
}

NovikovElement NovikovElement::truncate(const Q& cap) const {
  NovikovElement r;
  for (const auto& t : terms_)
    if (t.first < cap) r.terms_.push_back(t);
  return r;
}

NovikovElement NovikovElement::unit_inverse(const Q& cap) const {
  if (is_zero() || terms_.front().first != 0) throw precondition_error("not a unit of the valuation ring");
  Q c0 = terms_.front().second;
  NovikovElement w = *this * NovikovElement(1 / c0) - NovikovElement(1);
  NovikovElement minus_w = (-w).truncate(cap);
  NovikovElement sum(1), power(1);
  while (true) {
    power = (power * minus_w).truncate(cap);
    if (power.is_zero()) break;
    sum += power;
  }
  return (sum * NovikovElement(1 / c0)).truncate(cap);
}

std::ostream& operator<<(std::ostream& os, const NovikovElement& x) {
  if (x.is_zero()) return os << "0";
  bool first = true;
  for (const auto& [e, c] : x.terms()) {
    if (!first) os << " + ";
    first = false;
    os << c.get_str();
    if (e != 0) os << "*T^" << e.get_str();
  }
  return os;
}

NMatrix NMatrix::identity(size_t n) {
  NMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = NovikovElement(1);
  return m;
}

NMatrix NMatrix::diagonal(const std::vector<NovikovElement>& d, size_t rows, size_t cols) {
  NMatrix m(rows, cols);
  for (size_t i = 0; i < d.size() && i < rows && i < cols; ++i) m(i, i) = d[i];
  return m;
}

NMatrix NMatrix::operator*(const NMatrix& o) const {
  if (cols != o.rows) throw precondition_error("matrix shapes do not match");
  NMatrix r(rows, o.cols);
  for (size_t i = 0; i < rows; ++i)
    for (size_t k = 0; k < cols; ++k) {
      const NovikovElement& x = (*this)(i, k);
      if (x.is_zero()) continue;
      for (size_t j = 0; j < o.cols; ++j)
        if (!o(k, j).is_zero()) r(i, j) += x * o(k, j);
    }
  return r;
}

NMatrix NMatrix::operator+(const NMatrix& o) const {
  if (rows != o.rows || cols != o.cols) throw precondition_error("matrix shapes do not match");
  NMatrix r = *this;
  for (size_t i = 0; i < a.size(); ++i) r.a[i] += o.a[i];
  return r;
}

bool NMatrix::is_zero() const {
  return std::all_of(a.begin(), a.end(), [](const NovikovElement& x) { return x.is_zero(); });
}

NMatrix NMatrix::transpose() const {
  NMatrix r(cols, rows);
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) r(j, i) = (*this)(i, j);
  return r;
}

NMatrix NMatrix::truncate(const Q& cap) const {
  NMatrix r = *this;
  for (auto& x : r.a) x = x.truncate(cap);
  return r;
}

NMatrix NMatrix::hcat(const NMatrix& o) const {
  if (rows != o.rows) throw precondition_error("matrix shapes do not match");
  NMatrix r(rows, cols + o.cols);
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < cols; ++j) r(i, j) = (*this)(i, j);
    for (size_t j = 0; j < o.cols; ++j) r(i, cols + j) = o(i, j);
  }
  return r;
}

namespace {

struct SmithWork {
  NMatrix A, U, V;
  bool track;

  void swap_rows(size_t p, size_t q) {
    if (p == q) return;
    for (size_t j = 0; j < A.cols; ++j) std::swap(A(p, j), A(q, j));
    if (track)
      for (size_t j = 0; j < U.cols; ++j) std::swap(U(p, j), U(q, j));
  }
  void swap_cols(size_t p, size_t q) {
    if (p == q) return;
    for (size_t i = 0; i < A.rows; ++i) std::swap(A(i, p), A(i, q));
    if (track)
      for (size_t i = 0; i < V.rows; ++i) std::swap(V(i, p), V(i, q));
  }
  // row_q <- s * row_q - f * row_p
  void row_op(size_t q, const NovikovElement& s, const NovikovElement& f, size_t p) {
    auto upd = [&](NMatrix& M) {
      for (size_t j = 0; j < M.cols; ++j) {
        NovikovElement x = M(q, j);
        if (s != NovikovElement(1)) x = s * x;
        if (!M(p, j).is_zero()) x -= f * M(p, j);
        M(q, j) = std::move(x);
      }
    };
    upd(A);
    if (track) upd(U);
  }
  void col_op(size_t q, const NovikovElement& s, const NovikovElement& f, size_t p) {
    auto upd = [&](NMatrix& M) {
      for (size_t i = 0; i < M.rows; ++i) {
        NovikovElement x = M(i, q);
        if (s != NovikovElement(1)) x = s * x;
        if (!M(i, p).is_zero()) x -= f * M(i, p);
        M(i, q) = std::move(x);
      }
    };
    upd(A);
    if (track) upd(V);
  }
};

SmithForm smith_impl(const NMatrix& m, bool track) {
  SmithWork w{m, track ? NMatrix::identity(m.rows) : NMatrix(), track ? NMatrix::identity(m.cols) : NMatrix(), track};
  SmithForm out;
  size_t n = std::min(m.rows, m.cols);
  for (size_t t = 0; t < n; ++t) {
    size_t bi = 0, bj = 0;
    std::optional<Q> best;
    size_t best_terms = 0;
    for (size_t i = t; i < m.rows; ++i)
      for (size_t j = t; j < m.cols; ++j) {
        const NovikovElement& x = w.A(i, j);
        if (x.is_zero()) continue;
        Q v = *x.valuation();
        if (v < 0) throw precondition_error("matrix entry outside the valuation ring");
        if (!best || v < *best || (v == *best && x.terms().size() < best_terms)) {
          best = v;
          best_terms = x.terms().size();
          bi = i;
          bj = j;
        }
      }
    if (!best) break;
    w.swap_rows(t, bi);
    w.swap_cols(t, bj);
    Q a = *best;
    NovikovElement unit = w.A(t, t).shift(-a);
    bool monomial = unit.terms().size() == 1;
    NovikovElement inv_c = NovikovElement(1 / unit.terms().front().second);
    for (size_t q = t + 1; q < m.rows; ++q) {
      if (w.A(q, t).is_zero()) continue;
      NovikovElement f = w.A(q, t).shift(-a);
      if (monomial)
        w.row_op(q, NovikovElement(1), f * inv_c, t);
      else
        w.row_op(q, unit, f, t);
    }
    for (size_t q = t + 1; q < m.cols; ++q) {
      if (w.A(t, q).is_zero()) continue;
      NovikovElement f = w.A(t, q).shift(-a);
      if (monomial)
        w.col_op(q, NovikovElement(1), f * inv_c, t);
      else
        w.col_op(q, unit, f, t);
    }
    out.exponents.push_back(a);
  }
  if (track) {
    out.U = std::move(w.U);
    out.V = std::move(w.V);
  }
  return out;
}

// Λ^n / ⟨columns of A⟩.
ModuleStructure quotient_structure(const NMatrix& A) {
  std::vector<Q> e = smith_exponents(A);
  ModuleStructure s;
  for (const auto& a : e)
    if (a > 0) s.torsion.push_back(a);
  s.free_rank = A.rows - e.size();
  return s;
}

ModuleStructure tensor_truncation(const ModuleStructure& h, const Q& lambda) {
  ModuleStructure s;
  for (size_t i = 0; i < h.free_rank; ++i) s.torsion.push_back(lambda);
  for (const auto& a : h.torsion) s.torsion.push_back(a < lambda ? a : lambda);
  std::sort(s.torsion.begin(), s.torsion.end());
  return s;
}

NMatrix scaled_identity(size_t n, const NovikovElement& x) {
  NMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = x;
  return m;
}

}  // namespace

SmithForm smith_form(const NMatrix& m) { return smith_impl(m, true); }
std::vector<Q> smith_exponents(const NMatrix& m) { return smith_impl(m, false).exponents; }

Q ModuleStructure::torsion_length() const {
  Q s = 0;
  for (const auto& a : torsion) s += a;
  return s;
}

std::ostream& operator<<(std::ostream& os, const ModuleStructure& s) {
  os << "[";
  for (size_t i = 0; i < s.torsion.size(); ++i) os << (i ? "," : "") << s.torsion[i].get_str();
  return os << "] free " << s.free_rank;
}

FPModule FPModule::from_structure(const ModuleStructure& s) {
  std::vector<NovikovElement> d;
  for (const auto& a : s.torsion) d.push_back(NovikovElement::T(a));
  return FPModule{NMatrix::diagonal(d, s.torsion.size(), s.torsion.size() + s.free_rank)};
}

ModuleStructure FPModule::structure() const {
  std::vector<Q> e = smith_exponents(presentation);
  ModuleStructure s;
  for (const auto& a : e)
    if (a > 0) s.torsion.push_back(a);
  s.free_rank = presentation.cols - e.size();
  return s;
}

Torsion max_torsion(const FPModule& v) {
  ModuleStructure s = v.structure();
  if (s.torsion.empty()) return {};
  return {Torsion::Kind::finite, s.torsion.back()};
}

FPModule tor1(const FPModule& v, const Q& lambda) {
  if (lambda <= 0) throw precondition_error("lambda must be positive");
  ModuleStructure s;
  for (const auto& a : v.structure().torsion) s.torsion.push_back(a < lambda ? a : lambda);
  return FPModule::from_structure(s);
}

NovikovComplex::NovikovComplex(int lowest, std::vector<size_t> ranks, std::vector<NMatrix> d)
    : lowest_(lowest), ranks_(std::move(ranks)), d_(std::move(d)) {
  size_t want = ranks_.empty() ? 0 : ranks_.size() - 1;
  if (d_.size() != want) throw precondition_error("wrong number of differentials");
  for (size_t j = 0; j < d_.size(); ++j)
    if (d_[j].rows != ranks_[j + 1] || d_[j].cols != ranks_[j]) throw precondition_error("differential has wrong shape");
  for (size_t j = 0; j + 1 < d_.size(); ++j)
    if (!(d_[j + 1] * d_[j]).is_zero()) throw precondition_error("d o d is not zero");
}

size_t NovikovComplex::rank(int degree) const {
  if (degree < lowest_ || degree > highest()) return 0;
  return ranks_[degree - lowest_];
}

NMatrix NovikovComplex::differential(int degree) const {
  if (degree >= lowest_ && degree < highest()) return d_[degree - lowest_];
  return NMatrix(rank(degree + 1), rank(degree));
}

ModuleStructure Subquotient::structure() const {
  SmithForm sf = smith_form(K);
  size_t r = sf.exponents.size();
  NMatrix Np = sf.U * N;
  NMatrix R(Np.cols, r);
  for (size_t k = 0; k < Np.cols; ++k) {
    for (size_t j = 0; j < Np.rows; ++j) {
      const NovikovElement& x = Np(j, k);
      if (x.is_zero()) continue;
      if (j >= r || *x.valuation() < sf.exponents[j]) throw precondition_error("N is not contained in K");
      R(k, j) = x.shift(-sf.exponents[j]);
    }
  }
  return FPModule{R}.structure();
}

Subquotient truncated_cycles(const NovikovComplex& c, const Q& lambda, int degree) {
  if (lambda <= 0) throw precondition_error("lambda must be positive");
  size_t n = c.rank(degree);
  SmithForm sf = smith_form(c.differential(degree).truncate(lambda));
  NMatrix cyc(n, n);
  for (size_t j = 0; j < n; ++j) {
    Q s = 0;
    if (j < sf.exponents.size() && sf.exponents[j] < lambda) s = lambda - sf.exponents[j];
    NovikovElement t = NovikovElement::T(s);
    for (size_t i = 0; i < n; ++i) cyc(i, j) = (sf.V(i, j) * t).truncate(lambda);
  }
  NMatrix tl = scaled_identity(n, NovikovElement::T(lambda));
  return Subquotient{n, cyc.hcat(tl), c.differential(degree - 1).truncate(lambda).hcat(tl)};
}

FPModule truncated_homology(const NovikovComplex& c, const Q& lambda, int degree) {
  return FPModule::from_structure(truncated_cycles(c, lambda, degree).structure());
}

FPModule homology(const NovikovComplex& c, int degree) {
  size_t n = c.rank(degree);
  SmithForm sf = smith_form(c.differential(degree));
  size_t r = sf.exponents.size();
  NMatrix cyc(n, n - r);
  for (size_t j = r; j < n; ++j)
    for (size_t i = 0; i < n; ++i) cyc(i, j - r) = sf.V(i, j);
  return FPModule::from_structure(Subquotient{n, cyc, c.differential(degree - 1)}.structure());
}

bool submodule_contains(const NMatrix& big, const NMatrix& small) {
  if (small.is_zero()) return true;
  return quotient_structure(big.hcat(small)) == quotient_structure(big);
}

bool same_submodule(const NMatrix& a, const NMatrix& b) { return submodule_contains(a, b) && submodule_contains(b, a); }

NMatrix image_in(const Subquotient& src, const Subquotient& tgt, const NMatrix& phi) {
  return (phi * src.K).hcat(tgt.N);
}

bool induces_map(const Subquotient& src, const Subquotient& tgt, const NMatrix& phi) {
  if (phi.rows != tgt.ambient || phi.cols != src.ambient) return false;
  return submodule_contains(tgt.K, phi * src.K) && submodule_contains(tgt.N, phi * src.N);
}

bool is_surjective(const Subquotient& src, const Subquotient& tgt, const NMatrix& phi) {
  return submodule_contains(image_in(src, tgt, phi), tgt.K);
}

UCTReport uct_verify(const NovikovComplex& c, const Q& lambda, int degree) {
  UCTReport rep;
  rep.left = tensor_truncation(homology(c, degree).structure(), lambda);
  rep.middle = truncated_homology(c, lambda, degree).structure();
  rep.right = tor1(homology(c, degree + 1), lambda).structure();
  std::vector<Q> both = rep.left.torsion;
  both.insert(both.end(), rep.right.torsion.begin(), rep.right.torsion.end());
  std::sort(both.begin(), both.end());
  rep.exact = rep.middle.free_rank == 0 && rep.left.torsion_length() + rep.right.torsion_length() == rep.middle.torsion_length() &&
              both == rep.middle.torsion;
  return rep;
}

namespace {

void check_system(const InverseSystem& sys) {
  size_t k = sys.modules.size();
  if (sys.lambdas.size() != k || sys.maps.size() + 1 != std::max<size_t>(k, 1))
    throw precondition_error("inconsistent system: sizes differ");
  for (size_t j = 0; j + 1 < k; ++j) {
    if (!(sys.lambdas[j] > sys.lambdas[j + 1])) throw precondition_error("inconsistent system: λ must decrease");
    if (!induces_map(sys.modules[j], sys.modules[j + 1], sys.maps[j]))
      throw precondition_error("inconsistent system: map does not respect the subquotients");
  }
}

NMatrix composite(const InverseSystem& sys, size_t r, size_t s) {
  NMatrix phi = NMatrix::identity(sys.modules[r].ambient);
  for (size_t j = r; j < s; ++j) phi = sys.maps[j] * phi;
  return phi;
}

std::vector<Q> sorted_samples(std::vector<Q> lambdas) {
  for (const auto& l : lambdas)
    if (l <= 0) throw precondition_error("lambda must be positive");
  std::sort(lambdas.begin(), lambdas.end(), [](const Q& a, const Q& b) { return a > b; });
  lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());
  return lambdas;
}

}  // namespace

bool mittag_leffler(const InverseSystem& sys, MLMode mode, const std::optional<Q>& threshold) {
  check_system(sys);
  size_t k = sys.modules.size();
  if (mode == MLMode::Surjective) {
    for (size_t j = 0; j + 1 < k; ++j) {
      if (threshold && !(sys.lambdas[j + 1] > *threshold)) continue;
      if (!is_surjective(sys.modules[j], sys.modules[j + 1], sys.maps[j])) return false;
    }
    return true;
  }
  if (k < 3) throw precondition_error("image stability needs at least three samples");
  for (size_t s = 2; s < k; ++s) {
    const Subquotient& tgt = sys.modules[s];
    if (!same_submodule(image_in(sys.modules[0], tgt, composite(sys, 0, s)),
                        image_in(sys.modules[1], tgt, composite(sys, 1, s))))
      return false;
  }
  return true;
}

Subquotient stable_image(const InverseSystem& sys, size_t s) {
  const Subquotient& tgt = sys.modules.at(s);
  return Subquotient{tgt.ambient, image_in(sys.modules[0], tgt, composite(sys, 0, s)), tgt.N};
}

InverseSystem truncated_system(const NovikovComplex& c, std::vector<Q> lambdas, int degree) {
  InverseSystem sys;
  sys.lambdas = sorted_samples(std::move(lambdas));
  size_t n = c.rank(degree);
  for (size_t j = 0; j < sys.lambdas.size(); ++j) {
    sys.modules.push_back(truncated_cycles(c, sys.lambdas[j], degree));
    if (j > 0) sys.maps.push_back(NMatrix::identity(n));
  }
  return sys;
}

InverseSystem tor1_system(const FPModule& v, std::vector<Q> lambdas) {
  InverseSystem sys;
  sys.lambdas = sorted_samples(std::move(lambdas));
  std::vector<Q> a = v.structure().torsion;
  size_t t = a.size();
  std::vector<NovikovElement> rel;
  for (const auto& x : a) rel.push_back(NovikovElement::T(x));
  NMatrix N = NMatrix::diagonal(rel, t, t);
  for (size_t j = 0; j < sys.lambdas.size(); ++j) {
    const Q& l = sys.lambdas[j];
    std::vector<NovikovElement> gens;
    for (const auto& x : a) gens.push_back(NovikovElement::T(x > l ? x - l : Q(0)));
    sys.modules.push_back(Subquotient{t, NMatrix::diagonal(gens, t, t).hcat(N), N});
    if (j > 0) sys.maps.push_back(scaled_identity(t, NovikovElement::T(sys.lambdas[j - 1] - l)));
  }
  return sys;
}

bool is_chain_map(const NovikovComplex& a, const NovikovComplex& b, const ChainMap& f) {
  if (a.lowest() != b.lowest() || a.ranks().size() != b.ranks().size() || f.f.size() != a.ranks().size()) return false;
  for (size_t j = 0; j < f.f.size(); ++j) {
    int deg = a.lowest() + static_cast<int>(j);
    if (f.f[j].rows != b.rank(deg) || f.f[j].cols != a.rank(deg)) return false;
  }
  for (size_t j = 0; j + 1 < f.f.size(); ++j) {
    int deg = a.lowest() + static_cast<int>(j);
    if (!(b.differential(deg) * f.f[j] == f.f[j + 1] * a.differential(deg))) return false;
  }
  return true;
}

NovikovComplex telescope(const OneRay& r) {
  size_t k = r.complexes.size();
  if (k == 0) return {};
  if (r.maps.size() + 1 != k) throw precondition_error("a ray of k complexes needs k-1 maps");
  const NovikovComplex& c0 = r.complexes[0];
  for (size_t i = 0; i + 1 < k; ++i)
    if (!is_chain_map(r.complexes[i], r.complexes[i + 1], r.maps[i])) throw precondition_error("map is not a chain map");
  int lo = c0.lowest() - 1, hi = c0.highest();
  // Blocks in degree n: C_i[1] (i < k-1) carrying C_i^{n+1}, then C_i (i < k) carrying C_i^n.
  auto shifted_rank = [&](size_t i, int n) { return r.complexes[i].rank(n + 1); };
  auto offsets = [&](int n) {
    std::vector<size_t> off;
    size_t acc = 0;
    for (size_t i = 0; i + 1 < k; ++i) {
      off.push_back(acc);
      acc += shifted_rank(i, n);
    }
    for (size_t i = 0; i < k; ++i) {
      off.push_back(acc);
      acc += r.complexes[i].rank(n);
    }
    off.push_back(acc);
    return off;
  };
  auto place = [](NMatrix& D, size_t r0, size_t c0, const NMatrix& B, const NovikovElement& s) {
    for (size_t i = 0; i < B.rows; ++i)
      for (size_t j = 0; j < B.cols; ++j)
        if (!B(i, j).is_zero()) D(r0 + i, c0 + j) += s * B(i, j);
  };
  std::vector<size_t> ranks;
  std::vector<NMatrix> ds;
  for (int n = lo; n <= hi; ++n) ranks.push_back(offsets(n).back());
  for (int n = lo; n < hi; ++n) {
    auto src = offsets(n), dst = offsets(n + 1);
    NMatrix D(dst.back(), src.back());
    for (size_t i = 0; i + 1 < k; ++i) {
      const NovikovComplex& ci = r.complexes[i];
      place(D, dst[i], src[i], ci.differential(n + 1), NovikovElement(-1));
      place(D, dst[k - 1 + i], src[i], NMatrix::identity(ci.rank(n + 1)), NovikovElement(1));
      int j = n + 1 - ci.lowest();
      if (j >= 0 && j < static_cast<int>(r.maps[i].f.size()))
        place(D, dst[k - 1 + i + 1], src[i], r.maps[i].f[j], NovikovElement(1));
    }
    for (size_t i = 0; i < k; ++i) place(D, dst[k - 1 + i], src[k - 1 + i], r.complexes[i].differential(n), NovikovElement(1));
    ds.push_back(std::move(D));
  }
  return NovikovComplex(lo, ranks, ds);
}

RelVsRedReport rel_vs_red(const OneRay& r, int degree, std::vector<Q> lambdas) {
  lambdas = sorted_samples(std::move(lambdas));
  if (lambdas.size() < 3) throw precondition_error("at least three λ samples are needed");
  NovikovComplex tel = telescope(r);
  RelVsRedReport rep;
  rep.relative = homology(tel, degree).structure();
  InverseSystem sys = truncated_system(tel, lambdas, degree);
  for (size_t j = 0; j < lambdas.size(); ++j) rep.truncated.push_back({lambdas[j], sys.modules[j].structure()});
  rep.ml_prev_degree = mittag_leffler(truncated_system(tel, lambdas, degree - 1), MLMode::ImageStable);
  rep.stable_image_matches = true;
  for (size_t s = 2; s < lambdas.size(); ++s)
    if (!(stable_image(sys, s).structure() == tensor_truncation(rep.relative, lambdas[s]))) rep.stable_image_matches = false;
  rep.comparison_iso = rep.ml_prev_degree && rep.stable_image_matches;
  return rep;
}

}  // namespace eigenray
