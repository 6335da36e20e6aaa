#pragma once

#include "eigenray/rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace eigenray {

// Finite sum of a_i T^{λ_i}, exponents strictly increasing, coefficients nonzero.
// Exponents may be negative (the KS series use that); module code works inside Λ≥0.
class NovikovElement {
 public:
  using Term = std::pair<Q, Q>;  // (exponent, coefficient)

  NovikovElement() = default;
  NovikovElement(const Q& c);  // constant
  static NovikovElement monomial(const Q& coeff, const Q& exponent);
  static NovikovElement T(const Q& exponent) { return monomial(1, exponent); }
  // Terms may come in any order; equal exponents are summed and zeros dropped.
  static NovikovElement from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // Least exponent; nullopt for zero (valuation +∞).
  std::optional<Q> valuation() const;
  Q coeff(const Q& exponent) const;

  NovikovElement operator+(const NovikovElement& o) const;
  NovikovElement operator-(const NovikovElement& o) const;
  NovikovElement operator-() const;
  NovikovElement operator*(const NovikovElement& o) const;
  NovikovElement& operator+=(const NovikovElement& o) { return *this = *this + o; }
  NovikovElement& operator-=(const NovikovElement& o) { return *this = *this - o; }
  bool operator==(const NovikovElement& o) const { return terms_ == o.terms_; }
  bool operator!=(const NovikovElement& o) const { return !(*this == o); }

  // Multiplies by T^a.
  NovikovElement shift(const Q& a) const;
  // Drops every term with exponent >= cap.
  NovikovElement truncate(const Q& cap) const;
  // Inverse modulo T^cap of an element with valuation 0.
  NovikovElement unit_inverse(const Q& cap) const;

 private:
  std::vector<Term> terms_;
};

std::ostream& operator<<(std::ostream& os, const NovikovElement& x);

struct NMatrix {
  size_t rows = 0, cols = 0;
  std::vector<NovikovElement> a;

  NMatrix() = default;
  NMatrix(size_t r, size_t c) : rows(r), cols(c), a(r * c) {}
  static NMatrix identity(size_t n);
  static NMatrix diagonal(const std::vector<NovikovElement>& d, size_t rows, size_t cols);

  NovikovElement& operator()(size_t i, size_t j) { return a[i * cols + j]; }
  const NovikovElement& operator()(size_t i, size_t j) const { return a[i * cols + j]; }
  NMatrix operator*(const NMatrix& o) const;
  NMatrix operator+(const NMatrix& o) const;
  bool operator==(const NMatrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
  bool is_zero() const;
  NMatrix transpose() const;
  NMatrix truncate(const Q& cap) const;
  // Horizontal concatenation [this | o].
  NMatrix hcat(const NMatrix& o) const;
};

struct SmithForm {
  std::vector<Q> exponents;  // a_1 <= ... <= a_r
  NMatrix U, V;              // U * m * V = diag(T^{a_i} * unit, 0...)
};

SmithForm smith_form(const NMatrix& m);
std::vector<Q> smith_exponents(const NMatrix& m);

// ⊕ Λ/T^{a} over `torsion` (all a > 0, sorted) plus Λ^free_rank.
struct ModuleStructure {
  std::vector<Q> torsion;
  size_t free_rank = 0;
  bool operator==(const ModuleStructure& o) const { return torsion == o.torsion && free_rank == o.free_rank; }
  // Sum of torsion exponents; free summands counted separately.
  Q torsion_length() const;
};

std::ostream& operator<<(std::ostream& os, const ModuleStructure& s);

// Cokernel of the presentation: Λ^cols / (row space).
struct FPModule {
  NMatrix presentation;

  static FPModule from_structure(const ModuleStructure& s);
  ModuleStructure structure() const;
  size_t generators() const { return presentation.cols; }
};

struct Torsion {
  enum class Kind { minus_infinity, finite, plus_infinity };
  Kind kind = Kind::minus_infinity;
  Q value;
};

Torsion max_torsion(const FPModule& v);
FPModule tor1(const FPModule& v, const Q& lambda);

// Cochain complex of free modules; d[j] maps degree lowest+j to lowest+j+1 (rows = target rank).
class NovikovComplex {
 public:
  NovikovComplex() = default;
  NovikovComplex(int lowest, std::vector<size_t> ranks, std::vector<NMatrix> d);

  int lowest() const { return lowest_; }
  int highest() const { return lowest_ + static_cast<int>(ranks_.size()) - 1; }
  size_t rank(int degree) const;
  // Differential out of `degree`; a zero matrix of the right shape outside the support.
  NMatrix differential(int degree) const;
  const std::vector<size_t>& ranks() const { return ranks_; }

 private:
  int lowest_ = 0;
  std::vector<size_t> ranks_;
  std::vector<NMatrix> d_;
};

// H^i(C) over Λ≥0.
FPModule homology(const NovikovComplex& c, int degree);

// K/N for submodules N ⊆ K ⊆ Λ^ambient, both given by generating columns.
struct Subquotient {
  size_t ambient = 0;
  NMatrix K, N;

  ModuleStructure structure() const;
};

// The cycles and boundaries of C ⊗ Λ/T^λ in one degree, lifted to Λ^{rank}.
Subquotient truncated_cycles(const NovikovComplex& c, const Q& lambda, int degree);
FPModule truncated_homology(const NovikovComplex& c, const Q& lambda, int degree);

bool submodule_contains(const NMatrix& big, const NMatrix& small);
bool same_submodule(const NMatrix& a, const NMatrix& b);
// Generators of φ(K_src) + N_tgt.
NMatrix image_in(const Subquotient& src, const Subquotient& tgt, const NMatrix& phi);
bool induces_map(const Subquotient& src, const Subquotient& tgt, const NMatrix& phi);
bool is_surjective(const Subquotient& src, const Subquotient& tgt, const NMatrix& phi);

struct UCTReport {
  ModuleStructure left;    // H^i(C) ⊗ Λ/T^λ
  ModuleStructure middle;  // H^i(C ⊗ Λ/T^λ)
  ModuleStructure right;   // Tor¹(H^{i+1}(C), Λ/T^λ)
  bool exact = false;
};
UCTReport uct_verify(const NovikovComplex& c, const Q& lambda, int degree);

// Modules indexed by λ_1 > ... > λ_k; maps[j] : modules[j] -> modules[j+1] in ambient coordinates.
struct InverseSystem {
  std::vector<Q> lambdas;
  std::vector<Subquotient> modules;
  std::vector<NMatrix> maps;
};

enum class MLMode {
  Surjective,    // every map between samples above the threshold is onto
  ImageStable,   // images into each module agree from the two largest samples on
};
// Throws precondition_error when a map does not carry K into K and N into N.
bool mittag_leffler(const InverseSystem& sys, MLMode mode = MLMode::Surjective,
                    const std::optional<Q>& threshold = std::nullopt);

// Image of modules[0] in modules[s] as a subquotient of modules[s].
Subquotient stable_image(const InverseSystem& sys, size_t s);

InverseSystem truncated_system(const NovikovComplex& c, std::vector<Q> lambdas, int degree);

// Tor¹(V, Λ/T^λ') -> Tor¹(V, Λ/T^λ) for λ' >= λ, on the diagonal form of V.
InverseSystem tor1_system(const FPModule& v, std::vector<Q> lambdas);

struct ChainMap {
  std::vector<NMatrix> f;  // f[j] acts in degree lowest + j
};

struct OneRay {
  std::vector<NovikovComplex> complexes;
  std::vector<ChainMap> maps;  // maps[i] : complexes[i] -> complexes[i+1]
};

bool is_chain_map(const NovikovComplex& a, const NovikovComplex& b, const ChainMap& f);
// Finite telescope ⊕_{i<k} C_i[1] ⊕ ⊕_{i<=k} C_i.
NovikovComplex telescope(const OneRay& r);

struct RelVsRedReport {
  ModuleStructure relative;
  std::vector<std::pair<Q, ModuleStructure>> truncated;  // sorted by decreasing λ
  bool ml_prev_degree = false;
  bool stable_image_matches = false;
  bool comparison_iso = false;
};
RelVsRedReport rel_vs_red(const OneRay& r, int degree, std::vector<Q> lambdas);

}  // namespace eigenray
