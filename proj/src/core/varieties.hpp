// Variety specifications and their decidable identity machinery: generating
// laws, verbal-subgroup instance sampling, abelianization, Mal'cev
// coordinates for the free class-2 nilpotent group, the Magnus embedding for
// the free metabelian group, and law verification on finite models.
#pragma once

#include "core/common.hpp"
#include "core/finite_group.hpp"
#include "core/intlinalg.hpp"
#include "core/word.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace agog {

enum class VarietyTag { all, abelian, nilpotent, metabelian, laws };

struct VarietySpec {
  VarietyTag tag = VarietyTag::all;
  int nilpotency_class = 0;     // tag == nilpotent
  std::vector<Word> law_words;  // tag == laws; constant-free

  static VarietySpec All() { return {VarietyTag::all, 0, {}}; }
  static VarietySpec Abelian() { return {VarietyTag::abelian, 0, {}}; }
  static VarietySpec Nilpotent(int c);
  static VarietySpec Metabelian() { return {VarietyTag::metabelian, 0, {}}; }
  static VarietySpec Laws(std::vector<Word> laws);

  std::string describe() const;
};

// generating laws: All -> none; Abelian -> [x1,x2]; Nilpotent(c) -> the
// left-normed commutator [x1,...,x_{c+1}]; Metabelian -> [[x1,x2],[x3,x4]]
std::vector<Word> laws_of(const VarietySpec& v);

// Seeded sample of elements of the verbal subgroup Id_V(X): products of one
// or two law instances under random substitutions over x1..xn with constants
// from g (when given) and image length <= max_len.
std::vector<Word> identity_instance_sample(const VarietySpec& v, int n, const GroupRef& g,
                                           int count, int max_len, uint64_t seed);

// Fixed isomorphism of a finite abelian group onto (+) Z_dj, computed once
// per group from breadth-first generator relations.
class AbelianDecomposition {
public:
  static AbelianDecomposition of(const GroupRef& g);  // NonAbelianCoefficients if not abelian

  const GroupRef& group() const { return group_; }
  const std::vector<Int>& moduli() const { return moduli_; }
  // canonical torsion coordinates of an element, length = moduli count
  const std::vector<Int>& coords(int elem) const { return coords_[elem]; }

private:
  GroupRef group_;
  std::vector<Int> moduli_;
  std::vector<std::vector<Int>> coords_;
};

// Image of a word in G[X]^ab = Z^n (+) G (abelian G): per-variable exponent
// sums plus the torsion coordinates of the constants' product.
struct AbelianImage {
  std::vector<Int> exps;     // length n
  std::vector<Int> torsion;  // length = moduli count (empty without G)

  std::vector<Int> flat() const;  // exps followed by torsion
  bool is_zero() const;
};

AbelianImage abelianize(const Word& w, int n, const AbelianDecomposition* dec);

// Mal'cev coordinates on the free class-2 nilpotent group: w is congruent to
// x1^{a1}...xn^{an} * prod_{i<j} [xi,xj]^{b_ij} modulo the class-2 law, with
// pairs (i,j), i<j, ordered lexicographically.
struct MalcevVector {
  std::vector<Int> a;  // length n
  std::vector<Int> b;  // length n*(n-1)/2

  static int pair_index(int i, int j, int n);  // 1-based i < j
  bool is_zero() const;
};

MalcevVector malcev_normal_form(const Word& w, int n);  // ConstantsNotSupported
MalcevVector class2_mul(const MalcevVector& u, const MalcevVector& v, int n);
MalcevVector class2_inv(const MalcevVector& u, int n);

// Magnus embedding of the free metabelian group: x_i maps to the 2x2 matrix
// [[t_i, u_i], [0, 1]] over Laurent polynomials in t1..tn acting on the free
// module over u1..un; the kernel is the second derived subgroup.
using Monomial = std::vector<Int>;        // exponents of t1..tn
using Laurent = std::map<Monomial, Int>;  // sorted keys, no zero coefficients

struct MagnusMatrix {
  std::vector<Int> expo;        // diagonal monomial t1^{e1}...tn^{en}
  std::vector<Laurent> module;  // top-right entry over basis u1..un

  static MagnusMatrix identity(int n);
  bool is_identity() const;
};

MagnusMatrix magnus_image(const Word& w, int n);  // ConstantsNotSupported

// Decides w in Id_V(X).  Supported: All (any G); Abelian (abelian G);
// Nilpotent(2) and Metabelian (trivial G).  UnsupportedVariety otherwise.
bool identity_member(const Word& w, const VarietySpec& v, const GroupRef& g);

// Law verification on a finite model.  Exhaustive mode enumerates all
// substitutions while |H|^arity <= 10^7 (BudgetExceeded above); sample mode
// draws seeded random substitutions.
struct LawCheck {
  bool ok = true;
  Word law;                        // first violated law when !ok
  std::vector<int> counterexample; // substitution violating it
};

LawCheck satisfies_laws(const GroupRef& h, const VarietySpec& v, bool exhaustive,
                        uint64_t seed = 0, int samples = 2000);

}  // namespace agog
