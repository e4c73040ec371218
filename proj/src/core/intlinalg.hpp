// Exact integer linear algebra: Hermite/Smith normal forms, lattices in
// Z^r (+) (finite torsion part), and finitely generated abelian quotients.
#pragma once

#include "core/common.hpp"

#include <optional>
#include <vector>

namespace agog {

class IntMatrix {
public:
  IntMatrix() : rows_(0), cols_(0) {}
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols) {}

  static IntMatrix identity(int n);
  static IntMatrix from_rows(std::vector<std::vector<Int>> rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Int& at(int r, int c) { return e_[static_cast<size_t>(r) * cols_ + c]; }
  const Int& at(int r, int c) const { return e_[static_cast<size_t>(r) * cols_ + c]; }

  std::vector<Int> row(int r) const;
  void append_row(const std::vector<Int>& row);

  IntMatrix mul(const IntMatrix& other) const;
  bool operator==(const IntMatrix& other) const { return rows_ == other.rows_ && cols_ == other.cols_ && e_ == other.e_; }

private:
  int rows_, cols_;
  std::vector<Int> e_;
};

// Row-style Hermite normal form: h = u * m with u unimodular, h in row
// echelon form, pivots positive, entries above each pivot reduced into
// [0, pivot).  pivot_cols[i] is the column of row i's pivot; rows from
// rank() on are zero.
struct HnfResult {
  IntMatrix h;
  IntMatrix u;
  std::vector<int> pivot_cols;
  int rank() const { return static_cast<int>(pivot_cols.size()); }
};

HnfResult hnf(const IntMatrix& m);

// Smith normal form: d = u * m * v, d diagonal with d1 | d2 | ..., entries
// nonnegative, u and v unimodular.
struct SnfResult {
  IntMatrix d;
  IntMatrix u;
  IntMatrix v;
  std::vector<Int> diagonal() const;
};

SnfResult snf(const IntMatrix& m);

// Solves x * h = v over the integers for an HNF matrix h.  Returns the
// (unique, echelon-determined) coefficient vector over h's rows, or
// nullopt when v is not in the row span.
std::optional<std::vector<Int>> solve_echelon(const HnfResult& hf, const std::vector<Int>& v);

// Basis of the left kernel {x : x * m = 0}, one basis vector per row.
IntMatrix left_kernel(const IntMatrix& m);

// Subgroup of Z^freeRank (+) Z_{d1} (+) ... (+) Z_{ds} spanned by generator
// rows.  Torsion coordinates occupy the last s columns and are read mod the
// moduli; membership and certificates work over the generator rows as given.
class AugLattice {
public:
  AugLattice(int free_rank, std::vector<Int> moduli, IntMatrix generators);

  int free_rank() const { return free_rank_; }
  const std::vector<Int>& moduli() const { return moduli_; }
  const IntMatrix& generators() const { return gens_; }
  int ambient_dim() const { return free_rank_ + static_cast<int>(moduli_.size()); }

  // Generator rows stacked with the moduli rows d_j * e_{r+j}; this is the
  // lattice actually used for exact membership over Z.
  const IntMatrix& augmented() const { return aug_; }
  const HnfResult& augmented_hnf() const { return aug_hnf_; }

  // Certificate c with sum c_i * gen_i == v (exactly on the free part, mod
  // moduli on the torsion part), or nullopt if v is not in the lattice.
  std::optional<std::vector<Int>> member(const std::vector<Int>& v) const;

  // Remainder of v against the augmented HNF basis: canonical coset
  // representative (zero iff member).
  std::vector<Int> reduce(const std::vector<Int>& v) const;

private:
  int free_rank_;
  std::vector<Int> moduli_;
  IntMatrix gens_;
  IntMatrix aug_;
  HnfResult aug_hnf_;
};

// Finitely generated abelian group in invariant-factor form, as a quotient
// of the lattice's ambient Z^r (+) torsion.  Elements are coordinate vectors:
// torsion coordinates first (mod invariant_factors), then free coordinates.
class FGAbelian {
public:
  const std::vector<Int>& invariant_factors() const { return factors_; }
  int free_rank() const { return free_rank_; }
  int coord_dim() const { return static_cast<int>(factors_.size()) + free_rank_; }
  bool is_trivial() const { return factors_.empty() && free_rank_ == 0; }

  // Image of an ambient vector in canonical coordinates.
  std::vector<Int> project(const std::vector<Int>& ambient) const;
  std::vector<Int> zero() const { return std::vector<Int>(coord_dim(), 0); }
  std::vector<Int> add(const std::vector<Int>& a, const std::vector<Int>& b) const;
  std::vector<Int> neg(const std::vector<Int>& a) const;
  std::vector<Int> scale(const std::vector<Int>& a, const Int& k) const;
  bool is_zero(const std::vector<Int>& a) const;

  // Order of the element (0 means infinite).
  Int element_order(const std::vector<Int>& a) const;

  // "Z/2 x Z/6 x Z^2", "Z", "trivial"
  std::string describe() const;

  friend FGAbelian quotient_presentation(const AugLattice& l);

private:
  std::vector<Int> factors_;   // invariant factors >= 2, d1 | d2 | ...
  int free_rank_ = 0;
  int ambient_dim_ = 0;
  IntMatrix v_;                // SNF column transform of the relation matrix
  std::vector<int> torsion_cols_, free_cols_;  // columns of v_ to keep
};

// Canonical decomposition of (Z^r (+) torsion) / L.
FGAbelian quotient_presentation(const AugLattice& l);

}  // namespace agog
