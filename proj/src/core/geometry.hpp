// Algebraic geometry over a finite model: solution sets of word systems,
// radical membership by evaluation, coordinate groups as subgroups of a
// tuple power, and ball-bounded comparison of radicals.
#pragma once

#include "core/finite_group.hpp"
#include "core/word.hpp"

#include <optional>
#include <string>
#include <vector>

namespace agog {

struct EquationSystem {
  std::string name = "system";
  int vars = 0;
  GroupRef coeff;  // null when the system has no coefficients
  std::vector<Word> words;
};

// Solution set of the system in H^vars under the coefficient embedding.
// Points are stored in ascending lexicographic order (x1 most significant).
struct AlgebraicSet {
  EquationSystem system;
  GroupRef model;
  std::optional<GEmbedding> lambda;  // effective embedding of the coefficients
  std::vector<std::vector<int>> points;

  bool empty() const { return points.empty(); }
};

// Exhaustive solve over |H|^vars candidate points; BudgetExceeded when the
// search space is larger than cap.  Workers split the odometer range; the
// merged point list is identical for every worker count.
AlgebraicSet solve_finite(const EquationSystem& s, const GroupRef& model,
                          const std::optional<GEmbedding>& lambda,
                          long long cap = 10'000'000, int workers = 1);

// w lies in the radical iff it vanishes on every solution; vacuously true on
// an empty solution set (the degenerate case callers should surface).
bool radical_member_finite(const Word& w, const AlgebraicSet& a);

// Coordinate group: the subgroup of H^{|points|} generated by the coordinate
// tuples of x1..xn followed by the diagonal constants (non-identity elements
// of G in id order).  EmptyAlgebraicSet when there are no solutions.
struct CoordinateGroupResult {
  SubgroupClosure closure;
  std::vector<TupleGroup::Elem> generator_tuples;  // per variable
  std::vector<int> generator_ids;                  // closure ids of those tuples
  std::vector<std::pair<int, TupleGroup::Elem>> constant_diagonals;  // (elem, tuple)
  std::vector<std::pair<int, int>> constant_ids;                     // (elem, closure id)
};

CoordinateGroupResult coordinate_group(const AlgebraicSet& a, int cap = kDefaultOrderCap);

// Evaluate a word inside the coordinate group by its Cayley table
// (x_i -> generator id, g -> diagonal constant id); returns the closure id.
int evaluate_in_coordinate_group(const Word& w, const CoordinateGroupResult& cg);

// All reduced words over the context with graded length <= max_len, in
// breadth-first order (identity first).  Stops at limit words and sets
// *truncated when the ball was cut short.
std::vector<Word> word_ball(const GroupRef& coeff, int vars, int max_len, size_t limit,
                            bool* truncated);

// Radical comparison over a shared word ball; BudgetExceeded when the ball
// does not fit the cap.  Agreement on a ball is evidence, not a proof.
struct CompareItem {
  Word word;
  bool in_first;
  bool in_second;
};

struct CompareReport {
  size_t ball_size = 0;
  std::vector<CompareItem> disagreements;
};

CompareReport geometric_compare(const AlgebraicSet& a, const AlgebraicSet& b, int max_len,
                                size_t ball_cap);

}  // namespace agog
