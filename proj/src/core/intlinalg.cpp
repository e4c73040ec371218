#include "core/intlinalg.hpp"

#include <algorithm>
#include <sstream>

namespace agog {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(std::vector<std::vector<Int>> rows) {
  if (rows.empty()) return IntMatrix();
  IntMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows(); ++i) {
    if (rows[i].size() != static_cast<size_t>(m.cols()))
      fail(ErrorCode::dimension_mismatch, "ragged rows in IntMatrix::from_rows");
    for (int j = 0; j < m.cols(); ++j) m.at(i, j) = std::move(rows[i][j]);
  }
  return m;
}

std::vector<Int> IntMatrix::row(int r) const {
  std::vector<Int> out(cols_);
  for (int j = 0; j < cols_; ++j) out[j] = at(r, j);
  return out;
}

void IntMatrix::append_row(const std::vector<Int>& row) {
  if (rows_ == 0 && cols_ == 0) cols_ = static_cast<int>(row.size());
  if (row.size() != static_cast<size_t>(cols_))
    fail(ErrorCode::dimension_mismatch, "append_row width mismatch");
  e_.insert(e_.end(), row.begin(), row.end());
  ++rows_;
}

IntMatrix IntMatrix::mul(const IntMatrix& other) const {
  if (cols_ != other.rows_) fail(ErrorCode::dimension_mismatch, "matrix product shape");
  IntMatrix out(rows_, other.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Int& a = at(i, k);
      if (a == 0) continue;
      for (int j = 0; j < other.cols_; ++j) out.at(i, j) += a * other.at(k, j);
    }
  return out;
}

namespace {

void add_row_multiple(IntMatrix& m, int dst, int src, const Int& q) {
  if (q == 0) return;
  for (int j = 0; j < m.cols(); ++j) m.at(dst, j) += q * m.at(src, j);
}

void swap_rows(IntMatrix& m, int a, int b) {
  if (a == b) return;
  for (int j = 0; j < m.cols(); ++j) std::swap(m.at(a, j), m.at(b, j));
}

void negate_row(IntMatrix& m, int r) {
  for (int j = 0; j < m.cols(); ++j) m.at(r, j) = -m.at(r, j);
}

// floor division (HNF reduction needs remainders in [0, d))
Int floor_div(const Int& a, const Int& d) {
  Int q = a / d, r = a % d;
  if (r != 0 && ((r < 0) != (d < 0))) --q;
  return q;
}

}  // namespace

HnfResult hnf(const IntMatrix& m) {
  HnfResult res{m, IntMatrix::identity(m.rows()), {}};
  IntMatrix& h = res.h;
  IntMatrix& u = res.u;
  int r = 0;
  for (int c = 0; c < h.cols() && r < h.rows(); ++c) {
    // gather the column below r into a single nonzero entry at row r
    while (true) {
      int best = -1;
      for (int i = r; i < h.rows(); ++i) {
        if (h.at(i, c) == 0) continue;
        if (best < 0 || abs(h.at(i, c)) < abs(h.at(best, c))) best = i;
      }
      if (best < 0) break;  // column clear below r
      swap_rows(h, r, best);
      swap_rows(u, r, best);
      bool others = false;
      for (int i = r + 1; i < h.rows(); ++i) {
        if (h.at(i, c) == 0) continue;
        Int q = -floor_div(h.at(i, c), h.at(r, c));
        add_row_multiple(h, i, r, q);
        add_row_multiple(u, i, r, q);
        if (h.at(i, c) != 0) others = true;
      }
      if (!others) break;
    }
    if (h.at(r, c) == 0) continue;
    if (h.at(r, c) < 0) {
      negate_row(h, r);
      negate_row(u, r);
    }
    for (int i = 0; i < r; ++i) {
      Int q = -floor_div(h.at(i, c), h.at(r, c));
      add_row_multiple(h, i, r, q);
      add_row_multiple(u, i, r, q);
    }
    res.pivot_cols.push_back(c);
    ++r;
  }
  return res;
}

namespace {

void add_col_multiple(IntMatrix& m, int dst, int src, const Int& q) {
  if (q == 0) return;
  for (int i = 0; i < m.rows(); ++i) m.at(i, dst) += q * m.at(i, src);
}

void swap_cols(IntMatrix& m, int a, int b) {
  if (a == b) return;
  for (int i = 0; i < m.rows(); ++i) std::swap(m.at(i, a), m.at(i, b));
}

}  // namespace

namespace {

bool has_off_diagonal(const IntMatrix& a) {
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (i != j && a.at(i, j) != 0) return true;
  return false;
}

IntMatrix transpose(const IntMatrix& a) {
  IntMatrix t(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) t.at(j, i) = a.at(i, j);
  return t;
}

}  // namespace

SnfResult snf(const IntMatrix& m) {
  SnfResult res{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
  IntMatrix& d = res.d;
  IntMatrix& u = res.u;
  IntMatrix& v = res.v;

  // Diagonalize by alternating row and column Hermite passes (Kannan-Bachem);
  // HNF's canonical reduction keeps intermediate entries under control, which
  // a naive two-sided Euclid does not.
  int rounds = 0;
  while (has_off_diagonal(d)) {
    if (++rounds > 2000) fail(ErrorCode::too_large, "smith normal form did not converge");
    HnfResult hr = hnf(d);
    d = hr.h;
    u = hr.u.mul(u);
    if (!has_off_diagonal(d)) break;
    HnfResult hc = hnf(transpose(d));
    d = transpose(hc.h);
    v = v.mul(transpose(hc.u));
  }

  // trailing zeros: move zero diagonal entries past all nonzero ones
  const int n = std::min(d.rows(), d.cols());
  for (int i = 0; i < n; ++i) {
    if (d.at(i, i) != 0) continue;
    for (int j = i + 1; j < n; ++j)
      if (d.at(j, j) != 0) {
        swap_rows(d, i, j); swap_rows(u, i, j);
        swap_cols(d, i, j); swap_cols(v, i, j);
        break;
      }
  }

  // divisibility chain: repair adjacent pairs until d1 | d2 | ...; the 2x2
  // block Euclid stays local because all other entries in its rows/cols are 0
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i + 1 < n; ++i) {
      const int j = i + 1;
      if (d.at(i, i) == 0 || d.at(j, j) == 0) continue;
      if (d.at(j, j) % d.at(i, i) == 0) continue;
      changed = true;
      add_row_multiple(d, i, j, 1);
      add_row_multiple(u, i, j, 1);
      while (d.at(i, j) != 0 || d.at(j, i) != 0) {
        if (d.at(i, j) != 0) {
          Int q = -floor_div(d.at(i, j), d.at(i, i));
          add_col_multiple(d, j, i, q);
          add_col_multiple(v, j, i, q);
          if (d.at(i, j) != 0) { swap_cols(d, i, j); swap_cols(v, i, j); }
        }
        if (d.at(j, i) != 0) {
          Int q = -floor_div(d.at(j, i), d.at(i, i));
          add_row_multiple(d, j, i, q);
          add_row_multiple(u, j, i, q);
          if (d.at(j, i) != 0) { swap_rows(d, i, j); swap_rows(u, i, j); }
        }
      }
    }
  }

  for (int i = 0; i < n; ++i)
    if (d.at(i, i) < 0) { negate_row(d, i); negate_row(u, i); }
  return res;
}

std::vector<Int> SnfResult::diagonal() const {
  std::vector<Int> out;
  const int n = std::min(d.rows(), d.cols());
  for (int i = 0; i < n; ++i) out.push_back(d.at(i, i));
  return out;
}

std::optional<std::vector<Int>> solve_echelon(const HnfResult& hf, const std::vector<Int>& v) {
  if (v.size() != static_cast<size_t>(hf.h.cols()))
    fail(ErrorCode::dimension_mismatch, "solve_echelon vector width");
  std::vector<Int> rem = v;
  std::vector<Int> y(hf.h.rows(), 0);
  for (int i = 0; i < hf.rank(); ++i) {
    int c = hf.pivot_cols[i];
    if (rem[c] == 0) continue;
    if (rem[c] % hf.h.at(i, c) != 0) return std::nullopt;
    Int q = rem[c] / hf.h.at(i, c);
    y[i] = q;
    for (int j = 0; j < hf.h.cols(); ++j) rem[j] -= q * hf.h.at(i, j);
  }
  for (const Int& x : rem)
    if (x != 0) return std::nullopt;
  return y;
}

IntMatrix left_kernel(const IntMatrix& m) {
  HnfResult hf = hnf(m);
  IntMatrix out(0, 0);
  for (int i = hf.rank(); i < m.rows(); ++i) out.append_row(hf.u.row(i));
  if (out.rows() == 0) return IntMatrix(0, m.rows());
  return out;
}

AugLattice::AugLattice(int free_rank, std::vector<Int> moduli, IntMatrix generators)
    : free_rank_(free_rank), moduli_(std::move(moduli)), gens_(std::move(generators)) {
  const int dim = ambient_dim();
  for (const Int& d : moduli_)
    if (d < 2) fail(ErrorCode::invalid_argument, "lattice moduli must be >= 2");
  if (gens_.rows() > 0 && gens_.cols() != dim)
    fail(ErrorCode::dimension_mismatch, "lattice generator width");
  if (gens_.rows() == 0) gens_ = IntMatrix(0, dim);
  aug_ = gens_;
  for (size_t j = 0; j < moduli_.size(); ++j) {
    std::vector<Int> row(dim, 0);
    row[free_rank_ + static_cast<int>(j)] = moduli_[j];
    aug_.append_row(row);
  }
  aug_hnf_ = hnf(aug_);
}

std::optional<std::vector<Int>> AugLattice::member(const std::vector<Int>& v) const {
  if (v.size() != static_cast<size_t>(ambient_dim()))
    fail(ErrorCode::dimension_mismatch, "lattice member vector width");
  auto y = solve_echelon(aug_hnf_, v);
  if (!y) return std::nullopt;
  // pull back through the HNF transform; keep only the true generator rows
  std::vector<Int> c(gens_.rows(), 0);
  for (int i = 0; i < aug_.rows(); ++i) {
    if ((*y)[i] == 0) continue;
    for (int k = 0; k < gens_.rows(); ++k) c[k] += (*y)[i] * aug_hnf_.u.at(i, k);
  }
  return c;
}

std::vector<Int> AugLattice::reduce(const std::vector<Int>& v) const {
  std::vector<Int> rem = v;
  for (int i = 0; i < aug_hnf_.rank(); ++i) {
    int c = aug_hnf_.pivot_cols[i];
    Int q = floor_div(rem[c], aug_hnf_.h.at(i, c));
    if (q == 0) continue;
    for (int j = 0; j < aug_hnf_.h.cols(); ++j) rem[j] -= q * aug_hnf_.h.at(i, j);
  }
  return rem;
}

std::vector<Int> FGAbelian::project(const std::vector<Int>& ambient) const {
  if (ambient.size() != static_cast<size_t>(ambient_dim_))
    fail(ErrorCode::dimension_mismatch, "FGAbelian::project vector width");
  std::vector<Int> out;
  out.reserve(coord_dim());
  for (size_t k = 0; k < torsion_cols_.size(); ++k) {
    int col = torsion_cols_[k];
    Int s = 0;
    for (int i = 0; i < ambient_dim_; ++i) s += ambient[i] * v_.at(i, col);
    s %= factors_[k];
    if (s < 0) s += factors_[k];
    out.push_back(s);
  }
  for (int col : free_cols_) {
    Int s = 0;
    for (int i = 0; i < ambient_dim_; ++i) s += ambient[i] * v_.at(i, col);
    out.push_back(s);
  }
  return out;
}

std::vector<Int> FGAbelian::add(const std::vector<Int>& a, const std::vector<Int>& b) const {
  std::vector<Int> out(coord_dim());
  for (int i = 0; i < coord_dim(); ++i) {
    out[i] = a[i] + b[i];
    if (i < static_cast<int>(factors_.size())) {
      out[i] %= factors_[i];
      if (out[i] < 0) out[i] += factors_[i];
    }
  }
  return out;
}

std::vector<Int> FGAbelian::neg(const std::vector<Int>& a) const {
  return scale(a, -1);
}

std::vector<Int> FGAbelian::scale(const std::vector<Int>& a, const Int& k) const {
  std::vector<Int> out(coord_dim());
  for (int i = 0; i < coord_dim(); ++i) {
    out[i] = a[i] * k;
    if (i < static_cast<int>(factors_.size())) {
      out[i] %= factors_[i];
      if (out[i] < 0) out[i] += factors_[i];
    }
  }
  return out;
}

bool FGAbelian::is_zero(const std::vector<Int>& a) const {
  for (const Int& x : a)
    if (x != 0) return false;
  return true;
}

Int FGAbelian::element_order(const std::vector<Int>& a) const {
  for (int i = static_cast<int>(factors_.size()); i < coord_dim(); ++i)
    if (a[i] != 0) return 0;
  Int ord = 1;
  for (size_t i = 0; i < factors_.size(); ++i) {
    Int g = gcd(a[i], factors_[i]);
    Int o = factors_[i] / g;
    ord = ord / gcd(ord, o) * o;
  }
  return ord;
}

std::string FGAbelian::describe() const {
  if (is_trivial()) return "trivial";
  std::ostringstream os;
  bool first = true;
  for (const Int& d : factors_) {
    if (!first) os << " x ";
    os << "Z/" << d;
    first = false;
  }
  if (free_rank_ > 0) {
    if (!first) os << " x ";
    os << "Z";
    if (free_rank_ > 1) os << "^" << free_rank_;
  }
  return os.str();
}

FGAbelian quotient_presentation(const AugLattice& l) {
  FGAbelian k;
  k.ambient_dim_ = l.ambient_dim();
  SnfResult s = snf(l.augmented());
  k.v_ = s.v;
  std::vector<Int> diag = s.diagonal();
  for (int col = 0; col < k.ambient_dim_; ++col) {
    Int d = col < static_cast<int>(diag.size()) ? diag[col] : Int(0);
    if (d == 1) continue;          // killed coordinate
    if (d == 0) k.free_cols_.push_back(col);
    else {
      k.factors_.push_back(d);
      k.torsion_cols_.push_back(col);
    }
  }
  k.free_rank_ = static_cast<int>(k.free_cols_.size());
  return k;
}

}  // namespace agog
