#include "core/varieties.hpp"

#include "core/text.hpp"

#include <algorithm>
#include <set>

namespace agog {

namespace {
// magnus module entries gain one monomial per exponent step; cap the growth
constexpr int kMagnusExponentBudget = 4096;
}  // namespace

VarietySpec VarietySpec::Nilpotent(int c) {
  if (c < 1) fail(ErrorCode::invalid_argument, "nilpotency class must be >= 1");
  return {VarietyTag::nilpotent, c, {}};
}

VarietySpec VarietySpec::Laws(std::vector<Word> laws) {
  for (const Word& w : laws)
    if (w.has_constants())
      fail(ErrorCode::invalid_argument, "law words must be constant-free");
  return {VarietyTag::laws, 0, std::move(laws)};
}

std::string VarietySpec::describe() const {
  switch (tag) {
    case VarietyTag::all: return "all";
    case VarietyTag::abelian: return "abelian";
    case VarietyTag::nilpotent: return "nilpotent " + std::to_string(nilpotency_class);
    case VarietyTag::metabelian: return "metabelian";
    case VarietyTag::laws: {
      std::string out = "laws {";
      for (size_t i = 0; i < law_words.size(); ++i) {
        out += (i ? "; " : " ") + word_to_text(law_words[i]);
      }
      return out + " }";
    }
  }
  return "?";
}

std::vector<Word> laws_of(const VarietySpec& v) {
  auto var = [](int i) { return Word::variable(nullptr, i); };
  switch (v.tag) {
    case VarietyTag::all:
      return {};
    case VarietyTag::abelian:
      return {Word::commutator(var(1), var(2))};
    case VarietyTag::nilpotent: {
      Word w = var(1);
      for (int k = 2; k <= v.nilpotency_class + 1; ++k) w = Word::commutator(w, var(k));
      return {w};
    }
    case VarietyTag::metabelian:
      return {Word::commutator(Word::commutator(var(1), var(2)), Word::commutator(var(3), var(4)))};
    case VarietyTag::laws:
      return v.law_words;
  }
  return {};
}

namespace {

Word random_word(Rng& rng, int n, const GroupRef& g, int max_len) {
  Word w(g && g->order() > 1 ? g : nullptr);
  if (max_len < 1) return w;
  int len = static_cast<int>(rng.below(static_cast<uint64_t>(max_len) + 1));
  for (int i = 0; i < len; ++i) {
    bool use_constant = g && g->order() > 1 && rng.below(4) == 0;
    if (use_constant) {
      w = w.mul(Word::constant(g, static_cast<int>(rng.below(g->order()))));
    } else if (n >= 1) {
      int var = 1 + static_cast<int>(rng.below(n));
      w = w.mul(Word::variable(nullptr, var, rng.coin() ? 1 : -1));
    }
  }
  return w;
}

}  // namespace

std::vector<Word> identity_instance_sample(const VarietySpec& v, int n, const GroupRef& g,
                                           int count, int max_len, uint64_t seed) {
  std::vector<Word> laws = laws_of(v);
  if (laws.empty()) return {};
  Rng rng(seed);
  std::vector<Word> out;
  out.reserve(count);
  for (int c = 0; c < count; ++c) {
    int parts = 1 + static_cast<int>(rng.below(2));
    Word w(g && g->order() > 1 ? g : nullptr);
    for (int p = 0; p < parts; ++p) {
      const Word& law = laws[rng.below(laws.size())];
      std::vector<Word> images;
      images.reserve(law.max_var());
      for (int i = 0; i < law.max_var(); ++i) images.push_back(random_word(rng, n, g, max_len));
      w = w.mul(law.substitute(images));
    }
    out.push_back(w);
  }
  return out;
}

AbelianDecomposition AbelianDecomposition::of(const GroupRef& g) {
  if (!g) fail(ErrorCode::invalid_argument, "abelian decomposition of a null group");
  if (!g->is_abelian())
    fail(ErrorCode::nonabelian_coefficients, "coefficient group is not abelian");

  AbelianDecomposition dec;
  dec.group_ = g;
  const int m = g->order();

  // greedy generating set in element-id order
  std::vector<int> gens;
  {
    std::vector<char> in_span(m, 0);
    in_span[g->identity()] = 1;
    int covered = 1;
    for (int e = 0; e < m && covered < m; ++e) {
      if (in_span[e]) continue;
      gens.push_back(e);
      auto cl = subgroup_closure(g, gens, m);
      std::fill(in_span.begin(), in_span.end(), 0);
      covered = cl.group->order();
      for (const auto& tuple : cl.inclusion) in_span[tuple[0]] = 1;
    }
  }
  const int r = static_cast<int>(gens.size());

  // breadth-first exponent words rep[e] over the generators; every edge
  // (e, gen_i) not in the spanning tree yields a relation row
  std::vector<std::vector<Int>> rep(m);
  std::vector<char> seen(m, 0);
  std::vector<int> queue{g->identity()};
  rep[g->identity()] = std::vector<Int>(r, 0);
  seen[g->identity()] = 1;
  std::set<std::vector<Int>> relations;
  for (size_t head = 0; head < queue.size(); ++head) {
    int e = queue[head];
    for (int i = 0; i < r; ++i) {
      int f = g->mul(e, gens[i]);
      std::vector<Int> word = rep[e];
      word[i] += 1;
      if (!seen[f]) {
        seen[f] = 1;
        rep[f] = word;
        queue.push_back(f);
      } else {
        std::vector<Int> rel(r);
        bool zero = true;
        for (int k = 0; k < r; ++k) {
          rel[k] = word[k] - rep[f][k];
          if (rel[k] != 0) zero = false;
        }
        if (!zero) relations.insert(rel);
      }
    }
  }

  IntMatrix rmat(0, r);
  for (const auto& rel : relations) rmat.append_row(rel);
  AugLattice lat(r, {}, rmat);
  FGAbelian k = quotient_presentation(lat);
  if (k.free_rank() != 0)
    fail(ErrorCode::invalid_argument, "abelian decomposition produced a free part");

  dec.moduli_ = k.invariant_factors();
  dec.coords_.resize(m);
  for (int e = 0; e < m; ++e) dec.coords_[e] = k.project(rep[e]);
  return dec;
}

std::vector<Int> AbelianImage::flat() const {
  std::vector<Int> out = exps;
  out.insert(out.end(), torsion.begin(), torsion.end());
  return out;
}

bool AbelianImage::is_zero() const {
  auto zero = [](const std::vector<Int>& v) {
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
  };
  return zero(exps) && zero(torsion);
}

AbelianImage abelianize(const Word& w, int n, const AbelianDecomposition* dec) {
  if (w.max_var() > n) fail(ErrorCode::dimension_mismatch, "word uses variables beyond n");
  AbelianImage img;
  img.exps.resize(n);
  for (int i = 1; i <= n; ++i) img.exps[i - 1] = w.exponent_sum(i);
  if (dec) {
    if (w.coeff() && !dec->group()->same_group(*w.coeff()))
      fail(ErrorCode::mismatched_context, "decomposition group differs from word coefficients");
    int c = w.coeff() ? w.constant_product() : dec->group()->identity();
    img.torsion = dec->coords(c);
  } else if (w.has_constants()) {
    fail(ErrorCode::mismatched_context, "word has coefficients but no decomposition given");
  }
  return img;
}

int MalcevVector::pair_index(int i, int j, int n) {
  if (!(1 <= i && i < j && j <= n)) fail(ErrorCode::invalid_argument, "bad commutator pair");
  return (i - 1) * (2 * n - i) / 2 + (j - i - 1);
}

bool MalcevVector::is_zero() const {
  auto zero = [](const std::vector<Int>& v) {
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
  };
  return zero(a) && zero(b);
}

MalcevVector malcev_normal_form(const Word& w, int n) {
  if (w.has_constants())
    fail(ErrorCode::constants_not_supported, "Mal'cev coordinates need constant-free words");
  if (w.max_var() > n) fail(ErrorCode::dimension_mismatch, "word uses variables beyond n");
  MalcevVector m;
  m.a.assign(n, 0);
  m.b.assign(static_cast<size_t>(n) * (n - 1) / 2, 0);
  for (const Syllable& s : w.syllables()) {
    const int t = s.var;
    // slide x_t^e left past x_beta^{a_beta} for beta > t: each pass
    // contributes [x_t, x_beta]^{-a_beta * e}
    for (int beta = t + 1; beta <= n; ++beta)
      m.b[MalcevVector::pair_index(t, beta, n)] -= m.a[beta - 1] * s.exp;
    m.a[t - 1] += s.exp;
  }
  return m;
}

MalcevVector class2_mul(const MalcevVector& u, const MalcevVector& v, int n) {
  MalcevVector out;
  out.a.resize(n);
  out.b.resize(static_cast<size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i) out.a[i] = u.a[i] + v.a[i];
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      int idx = MalcevVector::pair_index(i, j, n);
      out.b[idx] = u.b[idx] + v.b[idx] - u.a[j - 1] * v.a[i - 1];
    }
  return out;
}

MalcevVector class2_inv(const MalcevVector& u, int n) {
  MalcevVector out;
  out.a.resize(n);
  out.b.resize(static_cast<size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i) out.a[i] = -u.a[i];
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      int idx = MalcevVector::pair_index(i, j, n);
      out.b[idx] = -u.b[idx] - u.a[i - 1] * u.a[j - 1];
    }
  return out;
}

namespace {

void laurent_add_shifted(Laurent& dst, const Laurent& src, const std::vector<Int>& shift,
                         int sign = 1) {
  for (const auto& [mono, coeff] : src) {
    Monomial key(mono.size());
    for (size_t i = 0; i < mono.size(); ++i) key[i] = mono[i] + shift[i];
    Int& slot = dst[key];
    slot += sign * coeff;
    if (slot == 0) dst.erase(key);
  }
}

MagnusMatrix magnus_syllable(int var, const Int& exp, int n) {
  if (abs(exp) > kMagnusExponentBudget)
    fail(ErrorCode::budget_exceeded, "magnus image exponent exceeds budget");
  MagnusMatrix m = MagnusMatrix::identity(n);
  m.expo[var - 1] = exp;
  Laurent& entry = m.module[var - 1];
  Monomial mono(n, 0);
  if (exp > 0) {
    // x^e -> (e*e_i, u_i * (1 + t_i + ... + t_i^{e-1}))
    for (Int k = 0; k < exp; ++k) {
      mono[var - 1] = k;
      entry[mono] = 1;
    }
  } else {
    // x^-e -> (-e*e_i, -u_i * (t_i^{-1} + ... + t_i^{e}))
    for (Int k = exp; k < 0; ++k) {
      mono[var - 1] = k;
      entry[mono] = -1;
    }
  }
  return m;
}

MagnusMatrix magnus_mul(const MagnusMatrix& a, const MagnusMatrix& b, int n) {
  MagnusMatrix out = MagnusMatrix::identity(n);
  for (int i = 0; i < n; ++i) out.expo[i] = a.expo[i] + b.expo[i];
  for (int i = 0; i < n; ++i) {
    laurent_add_shifted(out.module[i], a.module[i], b.expo);
    laurent_add_shifted(out.module[i], b.module[i], std::vector<Int>(n, 0));
  }
  return out;
}

}  // namespace

MagnusMatrix MagnusMatrix::identity(int n) {
  MagnusMatrix m;
  m.expo.assign(n, 0);
  m.module.resize(n);
  return m;
}

bool MagnusMatrix::is_identity() const {
  for (const Int& e : expo)
    if (e != 0) return false;
  for (const Laurent& l : module)
    if (!l.empty()) return false;
  return true;
}

MagnusMatrix magnus_image(const Word& w, int n) {
  if (w.has_constants())
    fail(ErrorCode::constants_not_supported, "Magnus image needs constant-free words");
  if (w.max_var() > n) fail(ErrorCode::dimension_mismatch, "word uses variables beyond n");
  MagnusMatrix acc = MagnusMatrix::identity(n);
  for (const Syllable& s : w.syllables())
    acc = magnus_mul(acc, magnus_syllable(s.var, s.exp, n), n);
  return acc;
}

bool identity_member(const Word& w, const VarietySpec& v, const GroupRef& g) {
  const bool g_trivial = !g || g->order() == 1;
  switch (v.tag) {
    case VarietyTag::all:
      return w.is_identity();
    case VarietyTag::abelian: {
      if (!g_trivial && !g->is_abelian())
        fail(ErrorCode::nonabelian_coefficients,
             "abelian identity membership needs abelian coefficients");
      if (w.has_constants()) {
        AbelianDecomposition dec = AbelianDecomposition::of(w.coeff());
        return abelianize(w, w.max_var(), &dec).is_zero();
      }
      return abelianize(w, w.max_var(), nullptr).is_zero();
    }
    case VarietyTag::nilpotent: {
      if (v.nilpotency_class != 2)
        fail(ErrorCode::unsupported_variety,
             "identity membership implemented for nilpotency class 2 only");
      if (!g_trivial)
        fail(ErrorCode::unsupported_variety,
             "nilpotent identity membership needs trivial coefficients");
      return malcev_normal_form(w, w.max_var()).is_zero();
    }
    case VarietyTag::metabelian: {
      if (!g_trivial)
        fail(ErrorCode::unsupported_variety,
             "metabelian identity membership needs trivial coefficients");
      return magnus_image(w, w.max_var()).is_identity();
    }
    case VarietyTag::laws:
      fail(ErrorCode::unsupported_variety, "no decision procedure for custom law varieties");
  }
  fail(ErrorCode::invalid_argument, "unknown variety tag");
}

LawCheck satisfies_laws(const GroupRef& h, const VarietySpec& v, bool exhaustive, uint64_t seed,
                        int samples) {
  LawCheck result;
  const long long order = h->order();
  for (const Word& law : laws_of(v)) {
    const int arity = law.max_var();
    if (arity == 0) {
      if (!law.is_identity()) {
        result.ok = false;
        result.law = law;
        return result;
      }
      continue;
    }
    std::vector<int> point(arity, 0);
    if (exhaustive) {
      long long total = 1;
      for (int i = 0; i < arity; ++i) {
        total *= order;
        if (total > 10'000'000LL)
          fail(ErrorCode::budget_exceeded, "law check space exceeds exhaustive budget");
      }
      for (long long flat = 0; flat < total; ++flat) {
        long long rest = flat;
        for (int i = arity - 1; i >= 0; --i) {
          point[i] = static_cast<int>(rest % order);
          rest /= order;
        }
        if (law.evaluate(h, point) != h->identity()) {
          result.ok = false;
          result.law = law;
          result.counterexample = point;
          return result;
        }
      }
    } else {
      Rng rng(seed);
      for (int s = 0; s < samples; ++s) {
        for (int i = 0; i < arity; ++i) point[i] = static_cast<int>(rng.below(order));
        if (law.evaluate(h, point) != h->identity()) {
          result.ok = false;
          result.law = law;
          result.counterexample = point;
          return result;
        }
      }
    }
  }
  return result;
}

}  // namespace agog
