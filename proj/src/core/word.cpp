#include "core/word.hpp"

#include <algorithm>

namespace agog {

namespace {
// hard ceiling on intermediate word sizes (pow can square lengths)
constexpr size_t kSyllableBudget = 1u << 20;

void guard_size(const std::vector<Syllable>& syls) {
  if (syls.size() > kSyllableBudget)
    fail(ErrorCode::budget_exceeded, "word exceeds syllable budget");
}
}  // namespace

Word::Word(GroupRef coeff, std::vector<Syllable> syllables) : coeff_(std::move(coeff)) {
  for (const auto& s : syllables) push_reduce(s);
}

Word Word::variable(GroupRef coeff, int var, Int exp) {
  if (var < 1) fail(ErrorCode::invalid_argument, "variable index must be >= 1");
  Word w(std::move(coeff));
  w.push_reduce(Syllable::variable(var, std::move(exp)));
  return w;
}

Word Word::constant(GroupRef coeff, int elem) {
  if (!coeff) fail(ErrorCode::mismatched_context, "coefficient letter without a coefficient group");
  if (elem < 0 || elem >= coeff->order())
    fail(ErrorCode::unknown_element, "coefficient element id out of range");
  Word w(std::move(coeff));
  w.push_reduce(Syllable::constant(elem));
  return w;
}

void Word::push_reduce(const Syllable& s) {
  if (s.is_var()) {
    if (s.exp == 0) return;
  } else {
    if (!coeff_)
      fail(ErrorCode::mismatched_context, "coefficient letter without a coefficient group");
    if (s.elem < 0 || s.elem >= coeff_->order())
      fail(ErrorCode::unknown_element, "coefficient element id out of range");
    if (s.elem == coeff_->identity()) return;
  }
  if (!syls_.empty()) {
    Syllable& top = syls_.back();
    if (top.is_var() && s.is_var() && top.var == s.var) {
      top.exp += s.exp;
      if (top.exp == 0) syls_.pop_back();
      return;
    }
    if (!top.is_var() && !s.is_var()) {
      top.elem = coeff_->mul(top.elem, s.elem);
      if (top.elem == coeff_->identity()) syls_.pop_back();
      return;
    }
  }
  syls_.push_back(s);
  guard_size(syls_);
}

bool Word::has_constants() const {
  return std::any_of(syls_.begin(), syls_.end(), [](const Syllable& s) { return !s.is_var(); });
}

int Word::max_var() const {
  int m = 0;
  for (const auto& s : syls_)
    if (s.is_var()) m = std::max(m, s.var);
  return m;
}

Int Word::length() const {
  Int total = 0;
  for (const auto& s : syls_) total += s.is_var() ? abs(s.exp) : Int(1);
  return total;
}

void Word::check_same_context(const Word& other) const {
  if (coeff_ && other.coeff_ && !coeff_->same_group(*other.coeff_))
    fail(ErrorCode::mismatched_context, "words have different coefficient groups");
}

Word Word::mul(const Word& other) const {
  check_same_context(other);
  Word out = *this;
  if (!out.coeff_) out.coeff_ = other.coeff_;
  for (const auto& s : other.syls_) out.push_reduce(s);
  return out;
}

Word Word::inv() const {
  Word out(coeff_);
  for (auto it = syls_.rbegin(); it != syls_.rend(); ++it) {
    if (it->is_var())
      out.push_reduce(Syllable::variable(it->var, -it->exp));
    else
      out.push_reduce(Syllable::constant(coeff_->inverse(it->elem)));
  }
  return out;
}

Word Word::pow(const Int& k) const {
  if (k == 0 || is_identity()) return Word(coeff_);
  if (k < 0) return inv().pow(-k);
  if (syls_.size() == 1) {
    const Syllable& s = syls_[0];
    if (s.is_var()) return variable(coeff_, s.var, s.exp * k);
    return constant(coeff_, coeff_->power(s.elem, k));
  }
  Word result(coeff_);
  Word base = *this;
  Int e = k;
  while (e > 0) {
    if ((e & 1) != 0) result = result.mul(base);
    e >>= 1;
    if (e > 0) base = base.mul(base);
  }
  return result;
}

Word Word::conj(const Word& by) const { return by.inv().mul(*this).mul(by); }

Word Word::commutator(const Word& a, const Word& b) {
  return a.inv().mul(b.inv()).mul(a).mul(b);
}

Word Word::substitute(const std::vector<Word>& images) const {
  GroupRef ctx = coeff_;
  for (const auto& img : images) {
    if (!img.coeff()) continue;
    if (!ctx)
      ctx = img.coeff();
    else if (!ctx->same_group(*img.coeff()))
      fail(ErrorCode::mismatched_context, "substitution images have different coefficient groups");
  }
  Word out(ctx);
  for (const auto& s : syls_) {
    if (!s.is_var()) {
      out.push_reduce(s);
      continue;
    }
    if (s.var > static_cast<int>(images.size()))
      fail(ErrorCode::dimension_mismatch, "substitution does not cover all variables");
    out = out.mul(images[s.var - 1].pow(s.exp));
  }
  return out;
}

Int Word::exponent_sum(int var) const {
  Int total = 0;
  for (const auto& s : syls_)
    if (s.is_var() && s.var == var) total += s.exp;
  return total;
}

int Word::constant_product() const {
  if (!coeff_) fail(ErrorCode::mismatched_context, "word has no coefficient group");
  int acc = coeff_->identity();
  for (const auto& s : syls_)
    if (!s.is_var()) acc = coeff_->mul(acc, s.elem);
  return acc;
}

int Word::evaluate(const GroupRef& model, const std::vector<int>& point,
                   const GEmbedding* embed) const {
  if (!model) fail(ErrorCode::invalid_argument, "evaluation needs a model group");
  for (int h : point)
    if (h < 0 || h >= model->order())
      fail(ErrorCode::unknown_element, "point coordinate out of range");
  if (embed) {
    if (!embed->source || !coeff_ || !embed->source->same_group(*coeff_))
      fail(ErrorCode::embedding_mismatch, "embedding source does not match coefficient group");
    if (!embed->target || !embed->target->same_group(*model))
      fail(ErrorCode::embedding_mismatch, "embedding target does not match model group");
  }
  int acc = model->identity();
  for (const auto& s : syls_) {
    if (s.is_var()) {
      if (s.var > static_cast<int>(point.size()))
        fail(ErrorCode::dimension_mismatch, "point has too few coordinates");
      acc = model->mul(acc, model->power(point[s.var - 1], s.exp));
    } else {
      int img;
      if (embed)
        img = embed->apply(s.elem);
      else if (coeff_->same_group(*model))
        img = s.elem;
      else
        fail(ErrorCode::mismatched_context,
             "coefficients live in a different group than the model; provide an embedding");
      acc = model->mul(acc, img);
    }
  }
  return acc;
}

bool Word::operator==(const Word& o) const {
  check_same_context(o);
  return syls_ == o.syls_;
}

int Word::compare(const Word& a, const Word& b) {
  size_t n = std::min(a.syls_.size(), b.syls_.size());
  for (size_t i = 0; i < n; ++i) {
    const Syllable& x = a.syls_[i];
    const Syllable& y = b.syls_[i];
    if (x.var != y.var) return x.var < y.var ? -1 : 1;
    if (x.is_var()) {
      if (x.exp != y.exp) return x.exp < y.exp ? -1 : 1;
    } else {
      if (x.elem != y.elem) return x.elem < y.elem ? -1 : 1;
    }
  }
  if (a.syls_.size() != b.syls_.size()) return a.syls_.size() < b.syls_.size() ? -1 : 1;
  return 0;
}

}  // namespace agog
