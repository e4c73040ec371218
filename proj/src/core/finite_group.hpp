// Finite groups as validated Cayley tables, a builder zoo for test models,
// coordinatewise tuple powers, and breadth-first subgroup closure.
#pragma once

#include "core/common.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace agog {

inline constexpr int kDefaultOrderCap = 10080;

class FiniteGroup;
using GroupRef = std::shared_ptr<const FiniteGroup>;

class FiniteGroup {
public:
  // Validates the table as a group: entries in range, unique two-sided
  // identity, inverses, associativity (exhaustive for order <= 128,
  // seeded sample of 200000 triples above that).
  static GroupRef from_table(std::string name, int order, std::vector<int> table,
                             std::vector<std::string> element_names = {});

  int order() const { return order_; }
  int identity() const { return identity_; }
  const std::string& name() const { return name_; }

  int mul(int a, int b) const { return table_[static_cast<size_t>(a) * order_ + b]; }
  int inverse(int a) const { return inverse_[a]; }
  int power(int a, const Int& e) const;
  int element_order(int a) const;

  bool is_abelian() const;
  bool is_trivial() const { return order_ == 1; }

  const std::string& element_name(int a) const { return element_names_[a]; }
  bool same_group(const FiniteGroup& other) const;

private:
  FiniteGroup() = default;
  std::string name_;
  int order_ = 1;
  int identity_ = 0;
  std::vector<int> table_;
  std::vector<int> inverse_;
  std::vector<std::string> element_names_;
};

// shared-pointer comparison used by word/system context checks:
// both trivial-null, same object, or structurally identical tables
bool same_context(const GroupRef& a, const GroupRef& b);

GroupRef build_cyclic(int n, int cap = kDefaultOrderCap);
GroupRef build_dihedral(int n, int cap = kDefaultOrderCap);
GroupRef build_symmetric(int n, int cap = kDefaultOrderCap);  // n <= 5
GroupRef build_heisenberg_mod(int p, int cap = kDefaultOrderCap);  // p prime, order p^3
GroupRef direct_product(const GroupRef& a, const GroupRef& b, int cap = kDefaultOrderCap);

// Heisenberg coordinates (a,b,c) <-> element id; used by the class-2 checks.
int heisenberg_encode(int p, int a, int b, int c);
void heisenberg_decode(int p, int id, int* a, int* b, int* c);

// Embedding lambda: G -> H given by an image table over G's elements.
struct GEmbedding {
  GroupRef source;
  GroupRef target;
  std::vector<int> map;

  static GEmbedding identity_of(GroupRef g);
  int apply(int a) const { return map[a]; }
  // injective homomorphism check; on failure reports the witnessing pair
  bool verify(std::pair<int, int>* bad = nullptr) const;
};

// Direct power of a base group with coordinatewise operations; elements are
// id tuples, never materialized as a Cayley table.
class TupleGroup {
public:
  using Elem = std::vector<int>;

  TupleGroup(GroupRef base, int power) : base_(std::move(base)), power_(power) {
    if (power_ < 1) fail(ErrorCode::invalid_argument, "tuple power must be >= 1");
  }

  const GroupRef& base() const { return base_; }
  int power() const { return power_; }

  Elem identity() const { return Elem(power_, base_->identity()); }
  Elem mul(const Elem& a, const Elem& b) const;
  Elem inv(const Elem& a) const;
  bool is_identity(const Elem& a) const;

private:
  GroupRef base_;
  int power_;
};

// Smallest subgroup of the ambient tuple group containing the generators.
// Element order is breadth-first from the identity with generators applied
// in the given order, so the table and inclusion are deterministic.
struct SubgroupClosure {
  GroupRef group;                            // closure as its own Cayley table
  std::vector<TupleGroup::Elem> inclusion;   // closure id -> ambient element
};

SubgroupClosure subgroup_closure(const TupleGroup& ambient,
                                 const std::vector<TupleGroup::Elem>& generators,
                                 int cap = kDefaultOrderCap,
                                 const std::string& name = "closure");

// Plain-group convenience: generators are single element ids.
SubgroupClosure subgroup_closure(const GroupRef& ambient, const std::vector<int>& generators,
                                 int cap = kDefaultOrderCap, const std::string& name = "closure");

}  // namespace agog
