#include <doctest.h>

#include "core/finite_group.hpp"
#include "core/word.hpp"

#include <vector>

using namespace agog;

namespace {

// a letter is a single variable step or a single coefficient element
struct Letter {
  int var;   // >= 1 variable, 0 constant
  int dir;   // +1/-1 for variables
  int elem;  // for constants
};

Word letter_word(const GroupRef& g, const Letter& l) {
  return l.var ? Word::variable(g, l.var, l.dir) : Word::constant(g, l.elem);
}

std::vector<Letter> random_letters(Rng& rng, int vars, const GroupRef& g, int len) {
  std::vector<Letter> out;
  for (int i = 0; i < len; ++i) {
    if (g && rng.below(3) == 0) {
      out.push_back({0, 0, 1 + static_cast<int>(rng.below(g->order() - 1))});
    } else {
      out.push_back({1 + static_cast<int>(rng.below(vars)), rng.coin() ? 1 : -1, 0});
    }
  }
  return out;
}

// fold letters into a word over a random bracketing
Word fold_random(Rng& rng, const GroupRef& g, const std::vector<Letter>& letters, size_t lo,
                 size_t hi) {
  if (lo == hi) return Word(g);
  if (hi - lo == 1) return letter_word(g, letters[lo]);
  size_t mid = lo + 1 + rng.below(hi - lo - 1);
  Word left = fold_random(rng, g, letters, lo, mid);
  Word right = fold_random(rng, g, letters, mid, hi);
  return left.mul(right);
}

// direct left-to-right evaluation of a raw letter sequence in the model
int eval_letters(const GroupRef& model, const std::vector<Letter>& letters,
                 const std::vector<int>& point, const GEmbedding* emb) {
  int acc = model->identity();
  for (const Letter& l : letters) {
    int val;
    if (l.var) {
      int b = point[l.var - 1];
      val = l.dir > 0 ? b : model->inverse(b);
    } else {
      val = emb ? emb->apply(l.elem) : l.elem;
    }
    acc = model->mul(acc, val);
  }
  return acc;
}

bool is_reduced(const Word& w) {
  const auto& s = w.syllables();
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i].is_var()) {
      if (s[i].exp == 0) return false;
      if (i + 1 < s.size() && s[i + 1].var == s[i].var) return false;
    } else {
      if (w.coeff() && s[i].elem == w.coeff()->identity()) return false;
      if (i + 1 < s.size() && !s[i + 1].is_var()) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("basic reductions") {
  GroupRef c4 = build_cyclic(4);
  Word x1 = Word::variable(nullptr, 1);
  CHECK(x1.mul(x1.inv()).is_identity());
  CHECK(Word::variable(nullptr, 1, 2).mul(Word::variable(nullptr, 1, -3)) ==
        Word::variable(nullptr, 1, -1));
  CHECK(Word::constant(c4, 1).mul(Word::constant(c4, 2)) == Word::constant(c4, 3));
  CHECK(Word::constant(c4, 1).mul(Word::constant(c4, 3)).is_identity());
  CHECK(Word::constant(c4, 0).is_identity());  // identity letter reduces away
}

TEST_CASE("reduction is confluent: any bracketing gives the same normal form") {
  GroupRef c4 = build_cyclic(4);
  Rng rng(101);
  for (int trial = 0; trial < 300; ++trial) {
    const GroupRef& g = trial % 2 ? c4 : nullptr;
    auto letters = random_letters(rng, 3, g, 1 + static_cast<int>(rng.below(12)));
    Word leftfold(g);
    for (const Letter& l : letters) leftfold = leftfold.mul(letter_word(g, l));
    for (int rep = 0; rep < 3; ++rep) {
      Word other = fold_random(rng, g, letters, 0, letters.size());
      CHECK(leftfold == other);
    }
    CHECK(is_reduced(leftfold));
  }
}

TEST_CASE("alternating reduced shape is preserved by the operations") {
  GroupRef c4 = build_cyclic(4);
  Rng rng(202);
  for (int trial = 0; trial < 200; ++trial) {
    auto la = random_letters(rng, 3, c4, rng.below(8));
    auto lb = random_letters(rng, 3, c4, rng.below(8));
    Word a(c4), b(c4);
    for (const Letter& l : la) a = a.mul(letter_word(c4, l));
    for (const Letter& l : lb) b = b.mul(letter_word(c4, l));
    CHECK(is_reduced(a.mul(b)));
    CHECK(is_reduced(a.inv()));
    CHECK(is_reduced(a.pow(3)));
    CHECK(is_reduced(a.conj(b)));
    CHECK(is_reduced(Word::commutator(a, b)));
  }
}

TEST_CASE("inverse and powers behave like group operations") {
  GroupRef c4 = build_cyclic(4);
  Rng rng(303);
  for (int trial = 0; trial < 100; ++trial) {
    auto la = random_letters(rng, 3, c4, rng.below(8));
    Word a(c4);
    for (const Letter& l : la) a = a.mul(letter_word(c4, l));
    CHECK(a.mul(a.inv()).is_identity());
    CHECK(a.inv().inv() == a);
    Word acc(c4);
    for (int k = 0; k <= 5; ++k) {
      CHECK(a.pow(k) == acc);
      CHECK(a.pow(-k) == acc.inv());
      acc = acc.mul(a);
    }
  }
}

TEST_CASE("conjugation and commutator match their definitions") {
  Word a = Word::variable(nullptr, 1);
  Word b = Word::variable(nullptr, 2);
  CHECK(a.conj(b) == b.inv().mul(a).mul(b));
  CHECK(Word::commutator(a, b) == a.inv().mul(b.inv()).mul(a).mul(b));
  CHECK(Word::commutator(a, a).is_identity());
}

TEST_CASE("evaluation is a homomorphism and factors through reduction") {
  GroupRef c4 = build_cyclic(4);
  GroupRef s3 = build_symmetric(3);
  Rng rng(404);
  for (const GroupRef& model : {c4, s3}) {
    for (int trial = 0; trial < 150; ++trial) {
      const GroupRef& g = trial % 2 ? model : nullptr;
      auto la = random_letters(rng, 3, g, rng.below(10));
      auto lb = random_letters(rng, 3, g, rng.below(10));
      Word a(g), b(g);
      for (const Letter& l : la) a = a.mul(letter_word(g, l));
      for (const Letter& l : lb) b = b.mul(letter_word(g, l));
      std::vector<int> point;
      for (int i = 0; i < 3; ++i) point.push_back(static_cast<int>(rng.below(model->order())));

      // factors through reduction: raw letter evaluation == reduced word evaluation
      CHECK(a.evaluate(model, point) == eval_letters(model, la, point, nullptr));
      // homomorphism
      CHECK(a.mul(b).evaluate(model, point) ==
            model->mul(a.evaluate(model, point), b.evaluate(model, point)));
      CHECK(a.inv().evaluate(model, point) == model->inverse(a.evaluate(model, point)));
    }
  }
}

TEST_CASE("evaluation through an embedding maps coefficients") {
  GroupRef c2 = build_cyclic(2);
  GroupRef c4 = build_cyclic(4);
  GEmbedding emb{c2, c4, {0, 2}};
  Word w = Word::variable(c2, 1, 2).mul(Word::constant(c2, 1));  // x1^2 * g1
  CHECK(w.evaluate(c4, {1}, &emb) == 0);  // 1+1+2 = 4 = 0
  CHECK(w.evaluate(c4, {0}, &emb) == 2);
  // mismatched embedding source
  GEmbedding wrong{c4, c4, {0, 1, 2, 3}};
  CHECK_THROWS_AS(w.evaluate(c4, {0}, &wrong), Error);
  // constants with no embedding need the model to equal the coefficient group
  CHECK_THROWS_AS(w.evaluate(c4, {0}), Error);
  CHECK(w.evaluate(c2, {1}) == 1);  // 1+1+1 = 1 mod 2
}

TEST_CASE("substitution composes with evaluation") {
  GroupRef c4 = build_cyclic(4);
  Rng rng(505);
  for (int trial = 0; trial < 150; ++trial) {
    const GroupRef& g = trial % 2 ? c4 : nullptr;
    auto lw = random_letters(rng, 2, g, 1 + rng.below(6));
    Word w(g);
    for (const Letter& l : lw) w = w.mul(letter_word(g, l));
    std::vector<Word> images;
    for (int i = 0; i < 2; ++i) {
      auto li = random_letters(rng, 3, g, rng.below(5));
      Word im(g);
      for (const Letter& l : li) im = im.mul(letter_word(g, l));
      images.push_back(im);
    }
    std::vector<int> point = {static_cast<int>(rng.below(4)), static_cast<int>(rng.below(4)),
                              static_cast<int>(rng.below(4))};
    std::vector<int> image_point = {images[0].evaluate(c4, point), images[1].evaluate(c4, point)};
    CHECK(w.substitute(images).evaluate(c4, point) == w.evaluate(c4, image_point));
  }
}

TEST_CASE("substitution requires enough images") {
  Word w = Word::variable(nullptr, 3);
  std::vector<Word> two = {Word::variable(nullptr, 1), Word::variable(nullptr, 2)};
  CHECK_THROWS_AS(w.substitute(two), Error);
}

TEST_CASE("exponent sums, constants product, length, max_var") {
  GroupRef c4 = build_cyclic(4);
  // w = x1^2 * g1 * x2^-1 * x1 * g2
  Word w = Word::variable(c4, 1, 2)
               .mul(Word::constant(c4, 1))
               .mul(Word::variable(c4, 2, -1))
               .mul(Word::variable(c4, 1))
               .mul(Word::constant(c4, 2));
  CHECK(w.exponent_sum(1) == 3);
  CHECK(w.exponent_sum(2) == -1);
  CHECK(w.exponent_sum(3) == 0);
  CHECK(w.constant_product() == 3);
  CHECK(w.length() == Int(6));
  CHECK(w.max_var() == 2);
  CHECK(w.has_constants());
  CHECK_FALSE(Word::variable(nullptr, 5).has_constants());
  CHECK(Word::variable(nullptr, 5).max_var() == 5);
}

TEST_CASE("context mixing rules") {
  GroupRef c2 = build_cyclic(2);
  GroupRef s3 = build_symmetric(3);
  Word over_c2 = Word::constant(c2, 1);
  Word over_s3 = Word::constant(s3, 1);
  CHECK_THROWS_AS(over_c2.mul(over_s3), Error);
  // null context adopts the other side's group
  Word plain = Word::variable(nullptr, 1);
  Word mixed = plain.mul(over_c2);
  REQUIRE(mixed.coeff());
  CHECK(mixed.coeff()->same_group(*c2));
  CHECK_THROWS_AS(Word::constant(c2, 5), Error);   // element out of range
  CHECK_THROWS_AS(Word::variable(nullptr, 0), Error);  // bad index
}

TEST_CASE("deterministic word ordering") {
  Word a = Word::variable(nullptr, 1);
  Word b = Word::variable(nullptr, 2);
  CHECK(Word::compare(a, a) == 0);
  CHECK(Word::compare(a, b) != 0);
  CHECK(Word::compare(a, b) == -Word::compare(b, a));
}
