#include "core/finite_group.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>

namespace agog {

namespace {

std::string default_name(int id) { return "e" + std::to_string(id); }

void validate_table(const std::string& name, int order, const std::vector<int>& table,
                    int* identity_out, std::vector<int>* inverse_out) {
  if (order < 1) fail(ErrorCode::invalid_argument, "group order must be >= 1");
  if (table.size() != static_cast<size_t>(order) * order)
    fail(ErrorCode::parse_error, "group '" + name + "': table has wrong size");
  for (int v : table)
    if (v < 0 || v >= order)
      fail(ErrorCode::parse_error, "group '" + name + "': table entry out of range");

  auto at = [&](int a, int b) { return table[static_cast<size_t>(a) * order + b]; };

  int identity = -1;
  for (int e = 0; e < order; ++e) {
    bool ok = true;
    for (int b = 0; b < order && ok; ++b) ok = at(e, b) == b && at(b, e) == b;
    if (ok) {
      identity = e;
      break;
    }
  }
  if (identity < 0) fail(ErrorCode::parse_error, "group '" + name + "': no identity element");

  std::vector<int> inverse(order, -1);
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order; ++b) {
      if (at(a, b) == identity && at(b, a) == identity) {
        inverse[a] = b;
        break;
      }
    }
    if (inverse[a] < 0)
      fail(ErrorCode::parse_error, "group '" + name + "': element has no inverse");
  }

  auto check_assoc = [&](int a, int b, int c) {
    if (at(at(a, b), c) != at(a, at(b, c)))
      fail(ErrorCode::parse_error, "group '" + name + "': multiplication is not associative");
  };
  if (order <= 128) {
    for (int a = 0; a < order; ++a)
      for (int b = 0; b < order; ++b)
        for (int c = 0; c < order; ++c) check_assoc(a, b, c);
  } else {
    Rng rng(0x67726f7570u);  // fixed seed: validation must be deterministic
    for (int i = 0; i < 200000; ++i)
      check_assoc(static_cast<int>(rng.below(order)), static_cast<int>(rng.below(order)),
                  static_cast<int>(rng.below(order)));
  }

  *identity_out = identity;
  *inverse_out = std::move(inverse);
}

}  // namespace

GroupRef FiniteGroup::from_table(std::string name, int order, std::vector<int> table,
                                 std::vector<std::string> element_names) {
  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  g->name_ = std::move(name);
  g->order_ = order;
  g->table_ = std::move(table);
  validate_table(g->name_, order, g->table_, &g->identity_, &g->inverse_);
  if (element_names.empty()) {
    element_names.reserve(order);
    for (int i = 0; i < order; ++i) element_names.push_back(default_name(i));
  }
  if (element_names.size() != static_cast<size_t>(order))
    fail(ErrorCode::parse_error, "group '" + g->name_ + "': wrong number of element names");
  g->element_names_ = std::move(element_names);
  return g;
}

int FiniteGroup::power(int a, const Int& e) const {
  int ord = element_order(a);
  Int r = e % ord;
  if (r < 0) r += ord;
  int steps = static_cast<int>(r);
  int acc = identity_;
  for (int i = 0; i < steps; ++i) acc = mul(acc, a);
  return acc;
}

int FiniteGroup::element_order(int a) const {
  int acc = a;
  int ord = 1;
  while (acc != identity_) {
    acc = mul(acc, a);
    ++ord;
  }
  return ord;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < order_; ++a)
    for (int b = a + 1; b < order_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

bool FiniteGroup::same_group(const FiniteGroup& other) const {
  if (this == &other) return true;
  return order_ == other.order_ && table_ == other.table_;
}

bool same_context(const GroupRef& a, const GroupRef& b) {
  if (!a && !b) return true;
  if (!a || !b) return false;
  return a->same_group(*b);
}

GroupRef build_cyclic(int n, int cap) {
  if (n < 1) fail(ErrorCode::invalid_argument, "cyclic order must be >= 1");
  if (n > cap) fail(ErrorCode::too_large, "cyclic order exceeds cap");
  std::vector<int> table(static_cast<size_t>(n) * n);
  std::vector<std::string> names(n);
  for (int a = 0; a < n; ++a) {
    names[a] = std::to_string(a);
    for (int b = 0; b < n; ++b) table[static_cast<size_t>(a) * n + b] = (a + b) % n;
  }
  return FiniteGroup::from_table("cyclic(" + std::to_string(n) + ")", n, std::move(table),
                                 std::move(names));
}

GroupRef build_dihedral(int n, int cap) {
  if (n < 1) fail(ErrorCode::invalid_argument, "dihedral parameter must be >= 1");
  int m = 2 * n;
  if (m > cap) fail(ErrorCode::too_large, "dihedral order exceeds cap");
  // ids: rotation r^a = a for 0 <= a < n, reflection s r^a = n + a
  auto enc = [&](bool flip, int rot) { return (flip ? n : 0) + ((rot % n) + n) % n; };
  std::vector<int> table(static_cast<size_t>(m) * m);
  std::vector<std::string> names(m);
  for (int x = 0; x < m; ++x) {
    bool fx = x >= n;
    int rx = fx ? x - n : x;
    names[x] = (fx ? "s" : "r") + std::to_string(rx);
    for (int y = 0; y < m; ++y) {
      bool fy = y >= n;
      int ry = fy ? y - n : y;
      // (s^fx r^rx)(s^fy r^ry) = s^(fx+fy) r^(ry + rx * (fy ? -1 : 1))
      int rot = fy ? ry - rx : ry + rx;
      table[static_cast<size_t>(x) * m + y] = enc(fx != fy, rot);
    }
  }
  return FiniteGroup::from_table("dihedral(" + std::to_string(n) + ")", m, std::move(table),
                                 std::move(names));
}

GroupRef build_symmetric(int n, int cap) {
  if (n < 1 || n > 5) fail(ErrorCode::invalid_argument, "symmetric groups supported for 1 <= n <= 5");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  int m = static_cast<int>(perms.size());
  if (m > cap) fail(ErrorCode::too_large, "symmetric order exceeds cap");

  std::map<std::vector<int>, int> rank;
  for (int i = 0; i < m; ++i) rank[perms[i]] = i;

  std::vector<int> table(static_cast<size_t>(m) * m);
  std::vector<std::string> names(m);
  for (int a = 0; a < m; ++a) {
    std::string nm;
    for (int i = 0; i < n; ++i) nm += std::to_string(perms[a][i]);
    names[a] = nm;
    for (int b = 0; b < m; ++b) {
      std::vector<int> comp(n);  // apply a first, then b
      for (int i = 0; i < n; ++i) comp[i] = perms[b][perms[a][i]];
      table[static_cast<size_t>(a) * m + b] = rank.at(comp);
    }
  }
  return FiniteGroup::from_table("symmetric(" + std::to_string(n) + ")", m, std::move(table),
                                 std::move(names));
}

int heisenberg_encode(int p, int a, int b, int c) {
  auto norm = [&](int v) { return ((v % p) + p) % p; };
  return (norm(a) * p + norm(b)) * p + norm(c);
}

void heisenberg_decode(int p, int id, int* a, int* b, int* c) {
  *c = id % p;
  *b = (id / p) % p;
  *a = id / (p * p);
}

GroupRef build_heisenberg_mod(int p, int cap) {
  if (p < 2) fail(ErrorCode::invalid_argument, "heisenberg modulus must be >= 2");
  long long m_ll = static_cast<long long>(p) * p * p;
  if (m_ll > cap) fail(ErrorCode::too_large, "heisenberg order exceeds cap");
  int m = static_cast<int>(m_ll);
  std::vector<int> table(static_cast<size_t>(m) * m);
  std::vector<std::string> names(m);
  for (int x = 0; x < m; ++x) {
    int a, b, c;
    heisenberg_decode(p, x, &a, &b, &c);
    names[x] = "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
    for (int y = 0; y < m; ++y) {
      int a2, b2, c2;
      heisenberg_decode(p, y, &a2, &b2, &c2);
      table[static_cast<size_t>(x) * m + y] =
          heisenberg_encode(p, a + a2, b + b2, c + c2 + a * b2);
    }
  }
  return FiniteGroup::from_table("heisenberg(" + std::to_string(p) + ")", m, std::move(table),
                                 std::move(names));
}

GroupRef direct_product(const GroupRef& a, const GroupRef& b, int cap) {
  if (!a || !b) fail(ErrorCode::invalid_argument, "direct product of null groups");
  long long m_ll = static_cast<long long>(a->order()) * b->order();
  if (m_ll > cap) fail(ErrorCode::too_large, "direct product order exceeds cap");
  int m = static_cast<int>(m_ll);
  int nb = b->order();
  std::vector<int> table(static_cast<size_t>(m) * m);
  std::vector<std::string> names(m);
  for (int x = 0; x < m; ++x) {
    int xa = x / nb, xb = x % nb;
    names[x] = "(" + a->element_name(xa) + "," + b->element_name(xb) + ")";
    for (int y = 0; y < m; ++y) {
      int ya = y / nb, yb = y % nb;
      table[static_cast<size_t>(x) * m + y] = a->mul(xa, ya) * nb + b->mul(xb, yb);
    }
  }
  return FiniteGroup::from_table(a->name() + " x " + b->name(), m, std::move(table),
                                 std::move(names));
}

GEmbedding GEmbedding::identity_of(GroupRef g) {
  GEmbedding e;
  e.source = g;
  e.target = g;
  e.map.resize(g->order());
  for (int i = 0; i < g->order(); ++i) e.map[i] = i;
  return e;
}

bool GEmbedding::verify(std::pair<int, int>* bad) const {
  if (!source || !target || map.size() != static_cast<size_t>(source->order())) {
    if (bad) *bad = {-1, -1};
    return false;
  }
  for (int v : map)
    if (v < 0 || v >= target->order()) {
      if (bad) *bad = {-1, -1};
      return false;
    }
  for (int a = 0; a < source->order(); ++a)
    for (int b = 0; b < source->order(); ++b)
      if (map[source->mul(a, b)] != target->mul(map[a], map[b])) {
        if (bad) *bad = {a, b};
        return false;
      }
  for (int a = 0; a < source->order(); ++a)
    for (int b = a + 1; b < source->order(); ++b)
      if (map[a] == map[b]) {
        if (bad) *bad = {a, b};
        return false;
      }
  return true;
}

TupleGroup::Elem TupleGroup::mul(const Elem& a, const Elem& b) const {
  Elem out(power_);
  for (int i = 0; i < power_; ++i) out[i] = base_->mul(a[i], b[i]);
  return out;
}

TupleGroup::Elem TupleGroup::inv(const Elem& a) const {
  Elem out(power_);
  for (int i = 0; i < power_; ++i) out[i] = base_->inverse(a[i]);
  return out;
}

bool TupleGroup::is_identity(const Elem& a) const {
  for (int v : a)
    if (v != base_->identity()) return false;
  return true;
}

SubgroupClosure subgroup_closure(const TupleGroup& ambient,
                                 const std::vector<TupleGroup::Elem>& generators,
                                 int cap, const std::string& name) {
  for (const auto& g : generators) {
    if (g.size() != static_cast<size_t>(ambient.power()))
      fail(ErrorCode::dimension_mismatch, "generator arity does not match ambient power");
    for (int v : g)
      if (v < 0 || v >= ambient.base()->order())
        fail(ErrorCode::unknown_element, "generator coordinate out of range");
  }

  std::map<TupleGroup::Elem, int> id_of;
  std::vector<TupleGroup::Elem> elems;
  auto intern = [&](const TupleGroup::Elem& e) {
    auto it = id_of.find(e);
    if (it != id_of.end()) return it->second;
    int id = static_cast<int>(elems.size());
    if (id >= cap) fail(ErrorCode::too_large, "subgroup closure exceeds order cap");
    id_of.emplace(e, id);
    elems.push_back(e);
    return id;
  };

  // breadth-first from the identity; a finite set closed under right
  // multiplication by the generators is already a subgroup
  intern(ambient.identity());
  for (size_t head = 0; head < elems.size(); ++head) {
    TupleGroup::Elem cur = elems[head];
    for (const auto& g : generators) intern(ambient.mul(cur, g));
  }

  int m = static_cast<int>(elems.size());
  std::vector<int> table(static_cast<size_t>(m) * m);
  std::vector<std::string> names(m);
  for (int i = 0; i < m; ++i) {
    std::string nm = "(";
    for (size_t k = 0; k < elems[i].size(); ++k) {
      if (k) nm += ",";
      nm += std::to_string(elems[i][k]);
    }
    names[i] = nm + ")";
    for (int j = 0; j < m; ++j) {
      auto it = id_of.find(ambient.mul(elems[i], elems[j]));
      if (it == id_of.end())
        fail(ErrorCode::mismatched_context, "closure is not multiplication-closed");
      table[static_cast<size_t>(i) * m + j] = it->second;
    }
  }

  SubgroupClosure out;
  out.group = FiniteGroup::from_table(name, m, std::move(table), std::move(names));
  out.inclusion = std::move(elems);
  return out;
}

SubgroupClosure subgroup_closure(const GroupRef& ambient, const std::vector<int>& generators,
                                 int cap, const std::string& name) {
  TupleGroup t(ambient, 1);
  std::vector<TupleGroup::Elem> gens;
  gens.reserve(generators.size());
  for (int g : generators) gens.push_back({g});
  return subgroup_closure(t, gens, cap, name);
}

}  // namespace agog
