// Reduced words over the free product of a coefficient group and the free
// group on x1, x2, ...  A word is an alternating syllable sequence with no
// zero-exponent variables, no identity constants, no adjacent constants,
// and no adjacent syllables on the same variable.
#pragma once

#include "core/common.hpp"
#include "core/finite_group.hpp"

#include <optional>
#include <vector>

namespace agog {

struct Syllable {
  int var = 0;   // >= 1: variable index; 0: coefficient letter
  Int exp = 0;   // variable exponent (nonzero in reduced words)
  int elem = 0;  // coefficient element id

  bool is_var() const { return var >= 1; }

  static Syllable variable(int var, Int exp) { return Syllable{var, std::move(exp), 0}; }
  static Syllable constant(int elem) { return Syllable{0, 0, elem}; }

  bool operator==(const Syllable& o) const {
    return var == o.var && exp == o.exp && elem == o.elem;
  }
};

class Word {
public:
  Word() = default;  // identity with no coefficient group
  explicit Word(GroupRef coeff) : coeff_(std::move(coeff)) {}
  Word(GroupRef coeff, std::vector<Syllable> syllables);  // reduces

  static Word variable(GroupRef coeff, int var, Int exp = 1);
  static Word constant(GroupRef coeff, int elem);

  const GroupRef& coeff() const { return coeff_; }
  const std::vector<Syllable>& syllables() const { return syls_; }
  bool is_identity() const { return syls_.empty(); }
  bool has_constants() const;
  int max_var() const;

  // graded length: sum of |exponents| plus one per coefficient letter
  Int length() const;

  Word mul(const Word& other) const;
  Word inv() const;
  Word pow(const Int& k) const;
  Word conj(const Word& by) const;               // this^by = by^-1 * this * by
  static Word commutator(const Word& a, const Word& b);  // a^-1 b^-1 a b

  // substitute x_i -> images[i-1]; images must cover max_var and share context
  Word substitute(const std::vector<Word>& images) const;

  // exponent sum of x_i (image under abelianization of the variable part)
  Int exponent_sum(int var) const;
  // product of all coefficient letters in order of occurrence
  int constant_product() const;

  // evaluate in a model: x_i -> point[i-1], coefficient g -> embed(g).
  // embed.source must match the word's coefficient group (or the word has none).
  int evaluate(const GroupRef& model, const std::vector<int>& point,
               const GEmbedding* embed = nullptr) const;

  bool operator==(const Word& o) const;
  bool operator!=(const Word& o) const { return !(*this == o); }
  // deterministic total order on words sharing a context
  static int compare(const Word& a, const Word& b);

private:
  void push_reduce(const Syllable& s);
  void check_same_context(const Word& other) const;

  GroupRef coeff_;
  std::vector<Syllable> syls_;
};

}  // namespace agog
