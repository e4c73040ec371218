#include "core/geometry.hpp"

#include <algorithm>
#include <map>
#include <thread>

namespace agog {

namespace {

// Effective coefficient embedding into the model: the given lambda, or the
// identity when the coefficient group is the model itself.
std::optional<GEmbedding> effective_embedding(const GroupRef& coeff, const GroupRef& model,
                                              const std::optional<GEmbedding>& lambda) {
  if (!coeff) {
    if (lambda)
      fail(ErrorCode::embedding_mismatch, "an embedding was given but the system has no coefficients");
    return std::nullopt;
  }
  if (lambda) {
    if (!lambda->source || !lambda->source->same_group(*coeff))
      fail(ErrorCode::embedding_mismatch, "embedding source does not match the coefficient group");
    if (!lambda->target || !lambda->target->same_group(*model))
      fail(ErrorCode::embedding_mismatch, "embedding target does not match the model");
    return lambda;
  }
  if (coeff->same_group(*model)) {
    GEmbedding id = GEmbedding::identity_of(coeff);
    id.target = model;
    return id;
  }
  fail(ErrorCode::embedding_mismatch, "coefficient group '" + coeff->name() +
                                          "' is not the model '" + model->name() +
                                          "'; provide an embedding");
}

int pow_int(const FiniteGroup& h, int base, int e) {
  int acc = h.identity();
  while (e > 0) {
    if (e & 1) acc = h.mul(acc, base);
    base = h.mul(base, base);
    e >>= 1;
  }
  return acc;
}

// Word precompiled against a model: variable exponents reduced mod |H|,
// coefficient letters resolved through the embedding.
struct CompiledWord {
  struct Op {
    int var;   // >= 1 variable, 0 constant
    int exp;   // in [0, |H|)
    int elem;  // image in the model when var == 0
  };
  std::vector<Op> ops;

  int eval(const FiniteGroup& h, const std::vector<int>& point) const {
    int acc = h.identity();
    for (const Op& op : ops)
      acc = h.mul(acc, op.var ? pow_int(h, point[op.var - 1], op.exp) : op.elem);
    return acc;
  }
};

CompiledWord compile_word(const Word& w, const GroupRef& model,
                          const std::optional<GEmbedding>& lambda) {
  CompiledWord cw;
  Int m = model->order();
  for (const Syllable& s : w.syllables()) {
    if (s.is_var()) {
      Int r = s.exp % m;
      if (r < 0) r += m;
      cw.ops.push_back({s.var, static_cast<int>(r), 0});
    } else {
      if (!lambda) fail(ErrorCode::mismatched_context, "word uses coefficients but no embedding is in effect");
      cw.ops.push_back({0, 0, lambda->apply(s.elem)});
    }
  }
  return cw;
}

void check_word_fits(const Word& w, const EquationSystem& s) {
  if (w.max_var() > s.vars)
    fail(ErrorCode::dimension_mismatch, "word uses x" + std::to_string(w.max_var()) +
                                            " but the system declares " + std::to_string(s.vars) +
                                            " variables");
  if (w.coeff() && !s.coeff)
    fail(ErrorCode::mismatched_context, "word uses coefficients but the system has none");
  if (w.coeff() && s.coeff && !w.coeff()->same_group(*s.coeff))
    fail(ErrorCode::mismatched_context, "word coefficients are not the system's coefficient group");
}

void validate_system(const EquationSystem& s, const GroupRef& model) {
  if (s.vars < 1 || s.vars > 64) fail(ErrorCode::invalid_argument, "system must declare 1..64 variables");
  if (!model) fail(ErrorCode::invalid_argument, "solving needs a model group");
  for (const Word& w : s.words) check_word_fits(w, s);
}

}  // namespace

AlgebraicSet solve_finite(const EquationSystem& s, const GroupRef& model,
                          const std::optional<GEmbedding>& lambda, long long cap, int workers) {
  validate_system(s, model);
  std::optional<GEmbedding> eff = effective_embedding(s.coeff, model, lambda);

  long long m = model->order();
  long long total = 1;
  for (int i = 0; i < s.vars; ++i) {
    if (total > cap / m)
      fail(ErrorCode::budget_exceeded, "search space |H|^n = " + std::to_string(m) + "^" +
                                           std::to_string(s.vars) + " exceeds cap " +
                                           std::to_string(cap));
    total *= m;
  }

  std::vector<CompiledWord> compiled;
  compiled.reserve(s.words.size());
  for (const Word& w : s.words) compiled.push_back(compile_word(w, model, eff));

  int nw = std::clamp(workers, 1, 64);
  if (static_cast<long long>(nw) > total) nw = static_cast<int>(total);

  std::vector<std::vector<std::vector<int>>> found(nw);
  auto run_range = [&](long long lo, long long hi, std::vector<std::vector<int>>& out) {
    const FiniteGroup& h = *model;
    std::vector<int> point(s.vars, 0);
    long long rest = lo;
    for (int i = s.vars - 1; i >= 0; --i) {
      point[i] = static_cast<int>(rest % m);
      rest /= m;
    }
    for (long long flat = lo; flat < hi; ++flat) {
      bool sat = true;
      for (const CompiledWord& cw : compiled)
        if (cw.eval(h, point) != h.identity()) {
          sat = false;
          break;
        }
      if (sat) out.push_back(point);
      for (int i = s.vars - 1; i >= 0; --i) {
        if (++point[i] < m) break;
        point[i] = 0;
      }
    }
  };

  if (nw == 1) {
    run_range(0, total, found[0]);
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < nw; ++k) {
      long long lo = static_cast<long long>(static_cast<__int128>(total) * k / nw);
      long long hi = static_cast<long long>(static_cast<__int128>(total) * (k + 1) / nw);
      pool.emplace_back(run_range, lo, hi, std::ref(found[k]));
    }
    for (auto& t : pool) t.join();
  }

  AlgebraicSet a;
  a.system = s;
  a.model = model;
  a.lambda = eff;
  for (auto& chunk : found)
    for (auto& p : chunk) a.points.push_back(std::move(p));
  return a;
}

bool radical_member_finite(const Word& w, const AlgebraicSet& a) {
  check_word_fits(w, a.system);
  CompiledWord cw = compile_word(w, a.model, a.lambda);
  const FiniteGroup& h = *a.model;
  for (const auto& p : a.points)
    if (cw.eval(h, p) != h.identity()) return false;
  return true;
}

CoordinateGroupResult coordinate_group(const AlgebraicSet& a, int cap) {
  if (a.empty())
    fail(ErrorCode::empty_algebraic_set,
         "the solution set is empty, so the radical is degenerate and the "
         "coordinate group is undefined");

  TupleGroup tg(a.model, static_cast<int>(a.points.size()));
  CoordinateGroupResult cg;

  for (int i = 0; i < a.system.vars; ++i) {
    TupleGroup::Elem t(a.points.size());
    for (size_t p = 0; p < a.points.size(); ++p) t[p] = a.points[p][i];
    cg.generator_tuples.push_back(std::move(t));
  }
  if (a.system.coeff) {
    for (int e = 0; e < a.system.coeff->order(); ++e) {
      if (e == a.system.coeff->identity()) continue;
      TupleGroup::Elem t(a.points.size(), a.lambda->apply(e));
      cg.constant_diagonals.emplace_back(e, std::move(t));
    }
  }

  std::vector<TupleGroup::Elem> gens = cg.generator_tuples;
  for (const auto& [e, t] : cg.constant_diagonals) gens.push_back(t);
  cg.closure = subgroup_closure(tg, gens, cap, "coordinate-group");

  std::map<TupleGroup::Elem, int> index;
  for (size_t id = 0; id < cg.closure.inclusion.size(); ++id)
    index[cg.closure.inclusion[id]] = static_cast<int>(id);
  for (const auto& t : cg.generator_tuples) cg.generator_ids.push_back(index.at(t));
  for (const auto& [e, t] : cg.constant_diagonals) cg.constant_ids.emplace_back(e, index.at(t));
  return cg;
}

int evaluate_in_coordinate_group(const Word& w, const CoordinateGroupResult& cg) {
  const FiniteGroup& k = *cg.closure.group;
  int acc = k.identity();
  for (const Syllable& s : w.syllables()) {
    if (s.is_var()) {
      if (s.var > static_cast<int>(cg.generator_ids.size()))
        fail(ErrorCode::dimension_mismatch,
             "word uses x" + std::to_string(s.var) + " beyond the coordinate group's variables");
      acc = k.mul(acc, k.power(cg.generator_ids[s.var - 1], s.exp));
    } else {
      int id = -1;
      for (const auto& [e, cid] : cg.constant_ids)
        if (e == s.elem) {
          id = cid;
          break;
        }
      if (id < 0) fail(ErrorCode::unknown_element, "coefficient letter has no diagonal in the coordinate group");
      acc = k.mul(acc, id);
    }
  }
  return acc;
}

std::vector<Word> word_ball(const GroupRef& coeff, int vars, int max_len, size_t limit,
                            bool* truncated) {
  if (truncated) *truncated = false;
  std::vector<Word> out;
  if (limit == 0) {
    if (truncated) *truncated = true;
    return out;
  }
  out.emplace_back(coeff);

  std::vector<Word> frontier = {Word(coeff)};
  for (int len = 1; len <= max_len && !frontier.empty(); ++len) {
    std::vector<Word> next;
    for (const Word& w : frontier) {
      const Syllable* last = w.syllables().empty() ? nullptr : &w.syllables().back();
      auto emit = [&](Word child) {
        if (out.size() >= limit) {
          if (truncated) *truncated = true;
          return false;
        }
        out.push_back(child);
        next.push_back(std::move(child));
        return true;
      };
      for (int i = 1; i <= vars; ++i) {
        for (int dir : {+1, -1}) {
          // appending the opposite sign to the trailing x_i syllable cancels
          if (last && last->var == i && ((last->exp > 0) != (dir > 0))) continue;
          if (!emit(w.mul(Word::variable(coeff, i, dir)))) return out;
        }
      }
      if (coeff && (!last || last->is_var())) {
        for (int e = 0; e < coeff->order(); ++e) {
          if (e == coeff->identity()) continue;
          if (!emit(w.mul(Word::constant(coeff, e)))) return out;
        }
      }
    }
    frontier = std::move(next);
  }
  return out;
}

CompareReport geometric_compare(const AlgebraicSet& a, const AlgebraicSet& b, int max_len,
                                size_t ball_cap) {
  if (a.system.vars != b.system.vars || !same_context(a.system.coeff, b.system.coeff))
    fail(ErrorCode::mismatched_context, "compared solution sets come from different systems");

  bool truncated = false;
  std::vector<Word> ball = word_ball(a.system.coeff, a.system.vars, max_len, ball_cap, &truncated);
  if (truncated)
    fail(ErrorCode::budget_exceeded,
         "word ball of radius " + std::to_string(max_len) + " exceeds cap " +
             std::to_string(ball_cap));

  CompareReport rep;
  rep.ball_size = ball.size();
  for (const Word& w : ball) {
    bool ma = radical_member_finite(w, a);
    bool mb = radical_member_finite(w, b);
    if (ma != mb) rep.disagreements.push_back({w, ma, mb});
  }
  return rep;
}

}  // namespace agog
