#include "core/nsatz.hpp"

#include "core/text.hpp"

#include <algorithm>

namespace agog {

namespace {

void check_word_in_system(const Word& w, const EquationSystem& s) {
  if (w.max_var() > s.vars)
    fail(ErrorCode::dimension_mismatch, "word uses x" + std::to_string(w.max_var()) +
                                            " but the system declares " + std::to_string(s.vars) +
                                            " variables");
  if (w.coeff() && !s.coeff)
    fail(ErrorCode::mismatched_context, "word uses coefficients but the system has none");
  if (w.coeff() && s.coeff && !w.coeff()->same_group(*s.coeff))
    fail(ErrorCode::mismatched_context, "word coefficients are not the system's coefficient group");
}

bool trivial_coefficients(const GroupRef& g) { return !g || g->is_trivial(); }

// random conjugators for the containment sample: graded length <= max_len
Word random_conjugator(Rng& rng, int vars, const GroupRef& g, int max_len) {
  Word w(g && g->order() > 1 ? g : nullptr);
  int len = static_cast<int>(rng.below(static_cast<uint64_t>(max_len) + 1));
  for (int i = 0; i < len; ++i) {
    bool use_const = g && g->order() > 1 && rng.below(4) == 0;
    if (use_const) {
      int e = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(g->order()) - 1));
      w = w.mul(Word::constant(g, e));
    } else {
      int v = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(vars)));
      w = w.mul(Word::variable(nullptr, v, rng.coin() ? 1 : -1));
    }
  }
  return w;
}

std::vector<Int> sub_vec(const std::vector<Int>& a, const std::vector<Int>& b) {
  std::vector<Int> out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

std::vector<Int> concat_vec(std::vector<Int> a, const std::vector<Int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

Word expand_certificate_product(const std::vector<CertificateEntry>& entries,
                                const EquationSystem& s) {
  Word e(s.coeff);
  for (const CertificateEntry& c : entries) {
    if (c.index < 0 || c.index >= static_cast<int>(s.words.size()))
      fail(ErrorCode::invalid_argument, "certificate entry references equation " +
                                            std::to_string(c.index) + " of a system with " +
                                            std::to_string(s.words.size()) + " equations");
    if (c.sign != 1 && c.sign != -1)
      fail(ErrorCode::invalid_argument, "certificate entry sign must be +1 or -1");
    e = e.mul(s.words[c.index].pow(c.sign).conj(c.conjugator));
  }
  return e;
}

bool verify_certificate(const Word& w, const VClosureCertificate& cert, const EquationSystem& s,
                        const VarietySpec& v) {
  Word product = expand_certificate_product(cert.entries, s);
  if (!(cert.reconstruction == product.mul(cert.identity_tail))) return false;
  Word remainder = w.mul(cert.reconstruction.inv());
  return identity_member(remainder, v, s.coeff) && identity_member(cert.identity_tail, v, s.coeff);
}

VClosureOracle::VClosureOracle(EquationSystem s, VarietySpec v)
    : s_(std::move(s)), v_(std::move(v)) {
  if (s_.vars < 1 || s_.vars > 64)
    fail(ErrorCode::invalid_argument, "system must declare 1..64 variables");
  for (const Word& w : s_.words) check_word_in_system(w, s_);

  switch (v_.tag) {
    case VarietyTag::abelian:
      if (s_.coeff && !s_.coeff->is_abelian())
        fail(ErrorCode::nonabelian_coefficients,
             "abelian closure needs abelian coefficients, but '" + s_.coeff->name() +
                 "' is nonabelian");
      build_abelian();
      return;
    case VarietyTag::nilpotent:
      if (v_.nilpotency_class == 2 && trivial_coefficients(s_.coeff)) {
        class2_ = true;
        build_class2();
        return;
      }
      fail(ErrorCode::unsupported_variety,
           "closure membership for nilpotent varieties is implemented for class 2 "
           "without coefficients only");
    default:
      fail(ErrorCode::unsupported_variety,
           "closure membership is implemented for the abelian and class-2 varieties; got " +
               v_.describe());
  }
}

void VClosureOracle::build_abelian() {
  const int n = s_.vars;
  std::vector<Int> moduli;
  if (s_.coeff && !s_.coeff->is_trivial()) {
    dec_ = AbelianDecomposition::of(s_.coeff);
    moduli = dec_->moduli();
  }
  IntMatrix gens(0, n + static_cast<int>(moduli.size()));
  for (const Word& w : s_.words)
    gens.append_row(abelianize(w, n, dec_ ? &*dec_ : nullptr).flat());
  lattice_.emplace(n, std::move(moduli), std::move(gens));
}

void VClosureOracle::build_class2() {
  const int n = s_.vars;
  const int pairs = n * (n - 1) / 2;

  amat_ = IntMatrix(0, n);
  for (const Word& w : s_.words) {
    MalcevVector mv = malcev_normal_form(w, n);
    amat_.append_row(mv.a);
    smal_.push_back(std::move(mv));
  }
  ahnf_ = hnf(amat_);

  // Central generators of the closure's intersection with the commutator
  // layer: the commutators [s_t, x_j], plus the products prescribed by a
  // basis of the left kernel of the weight-1 matrix.
  auto add_central = [&](std::vector<CertificateEntry> entries) {
    Word value = expand_certificate_product(entries, s_);
    MalcevVector mv = malcev_normal_form(value, n);
    for (const Int& ai : mv.a)
      if (ai != 0) fail(ErrorCode::invalid_argument, "central generator has weight-1 part");
    central_entries_.push_back(std::move(entries));
    central_vals_.push_back(std::move(mv));
  };

  for (int t = 0; t < static_cast<int>(s_.words.size()); ++t) {
    for (int j = 1; j <= n; ++j) {
      std::vector<CertificateEntry> entries;
      entries.push_back({Word(s_.coeff), t, -1});
      entries.push_back({Word::variable(s_.coeff, j), t, +1});
      add_central(std::move(entries));
    }
  }
  IntMatrix kernel = left_kernel(amat_);
  for (int r = 0; r < kernel.rows(); ++r) {
    std::vector<CertificateEntry> entries;
    for (int t = 0; t < kernel.cols(); ++t) {
      Int k = kernel.at(r, t);
      int sign = k > 0 ? +1 : -1;
      for (Int c = 0; c < abs(k); ++c) entries.push_back({Word(s_.coeff), t, sign});
    }
    add_central(std::move(entries));
  }

  IntMatrix crows(0, pairs);
  for (const MalcevVector& mv : central_vals_) crows.append_row(mv.b);
  clattice_.emplace(pairs, std::vector<Int>{}, std::move(crows));
}

void VClosureOracle::fill_certificate(const Word& w, std::vector<CertificateEntry> entries,
                                      VClosureCertificate* cert) const {
  Word product = expand_certificate_product(entries, s_);
  cert->entries = std::move(entries);
  cert->identity_tail = product.inv().mul(w);
  cert->reconstruction = product.mul(cert->identity_tail);
}

bool VClosureOracle::member(const Word& w, VClosureCertificate* cert) const {
  check_word_in_system(w, s_);
  return class2_ ? member_class2(w, cert) : member_abelian(w, cert);
}

bool VClosureOracle::member_abelian(const Word& w, VClosureCertificate* cert) const {
  if (dec_ && w.coeff() && !dec_->group()->same_group(*w.coeff()))
    fail(ErrorCode::mismatched_context, "word coefficients are not the system's coefficient group");
  std::vector<Int> img = abelianize(w, s_.vars, dec_ ? &*dec_ : nullptr).flat();
  std::optional<std::vector<Int>> c = lattice_->member(img);
  if (!c) return false;
  if (cert) {
    std::vector<CertificateEntry> entries;
    for (size_t i = 0; i < c->size(); ++i) {
      int sign = (*c)[i] > 0 ? +1 : -1;
      for (Int k = 0; k < abs((*c)[i]); ++k)
        entries.push_back({Word(s_.coeff), static_cast<int>(i), sign});
    }
    fill_certificate(w, std::move(entries), cert);
  }
  return true;
}

bool VClosureOracle::member_class2(const Word& w, VClosureCertificate* cert) const {
  const int n = s_.vars;
  MalcevVector mw = malcev_normal_form(w, n);

  std::optional<std::vector<Int>> y = solve_echelon(*ahnf_, mw.a);
  if (!y) return false;
  // coefficients over the equation rows themselves
  std::vector<Int> k(s_.words.size(), 0);
  for (size_t r = 0; r < y->size(); ++r)
    for (size_t t = 0; t < k.size(); ++t) k[t] += (*y)[r] * ahnf_->u.at(static_cast<int>(r), static_cast<int>(t));

  std::vector<CertificateEntry> entries;
  for (size_t t = 0; t < k.size(); ++t) {
    int sign = k[t] > 0 ? +1 : -1;
    for (Int c = 0; c < abs(k[t]); ++c) entries.push_back({Word(s_.coeff), static_cast<int>(t), sign});
  }
  MalcevVector base = malcev_normal_form(expand_certificate_product(entries, s_), n);

  std::optional<std::vector<Int>> gamma = clattice_->member(sub_vec(mw.b, base.b));
  if (!gamma) return false;
  if (cert) {
    for (size_t c = 0; c < gamma->size(); ++c) {
      const std::vector<CertificateEntry>& gen = central_entries_[c];
      bool pos = (*gamma)[c] > 0;
      for (Int rep = 0; rep < abs((*gamma)[c]); ++rep) {
        if (pos) {
          entries.insert(entries.end(), gen.begin(), gen.end());
        } else {
          for (auto it = gen.rbegin(); it != gen.rend(); ++it)
            entries.push_back({it->conjugator, it->index, -it->sign});
        }
      }
    }
    fill_certificate(w, std::move(entries), cert);
  }
  return true;
}

bool VClosureOracle::consistent() const {
  if (class2_) return true;  // no coefficients, so the closure meets G trivially
  if (!dec_) return true;
  const HnfResult& hf = lattice_->augmented_hnf();
  const int n = s_.vars;
  const auto& moduli = lattice_->moduli();
  for (int r = 0; r < hf.rank(); ++r) {
    bool free_zero = true;
    for (int ccol = 0; ccol < n && free_zero; ++ccol)
      if (hf.h.at(r, ccol) != 0) free_zero = false;
    if (!free_zero) continue;
    for (size_t j = 0; j < moduli.size(); ++j)
      if (hf.h.at(r, n + static_cast<int>(j)) % moduli[j] != 0) return false;
  }
  return true;
}

bool vclosure_member(const EquationSystem& s, const VarietySpec& v, const Word& w,
                     VClosureCertificate* cert) {
  return VClosureOracle(s, v).member(w, cert);
}

bool consistency_check(const EquationSystem& s, const VarietySpec& v) {
  if (s.vars < 1 || s.vars > 64)
    fail(ErrorCode::invalid_argument, "system must declare 1..64 variables");
  for (const Word& w : s.words) check_word_in_system(w, s);
  bool gtriv = trivial_coefficients(s.coeff);
  switch (v.tag) {
    case VarietyTag::abelian:
      return VClosureOracle(s, v).consistent();
    case VarietyTag::all:
    case VarietyTag::nilpotent:
    case VarietyTag::metabelian:
      if (gtriv) return true;  // the identity point solves every coefficient-free system
      fail(ErrorCode::unsupported_variety,
           "consistency with nontrivial coefficients is implemented for the abelian variety only");
    case VarietyTag::laws:
      fail(ErrorCode::unsupported_variety,
           "consistency over explicit law lists is not implemented");
  }
  fail(ErrorCode::invalid_argument, "unknown variety tag");
}

WitnessReport witness_construct(const EquationSystem& s, const VarietySpec& v, const Word& f) {
  VClosureOracle oracle(s, v);
  if (!oracle.consistent())
    fail(ErrorCode::inconsistent, "the system is inconsistent over its variety; no witness group exists");
  if (oracle.member(f))
    fail(ErrorCode::not_outside_closure,
         "the word lies in the closure, so every solution maps it to the identity");

  WitnessReport rep;
  const int n = s.vars;

  if (v.tag == VarietyTag::abelian) {
    std::vector<Int> moduli;
    std::optional<AbelianDecomposition> dec;
    if (s.coeff && !s.coeff->is_trivial()) {
      dec = AbelianDecomposition::of(s.coeff);
      moduli = dec->moduli();
    }
    IntMatrix gens(0, n + static_cast<int>(moduli.size()));
    for (const Word& w : s.words) gens.append_row(abelianize(w, n, dec ? &*dec : nullptr).flat());
    AugLattice lat(n, moduli, std::move(gens));
    FGAbelian k = quotient_presentation(lat);
    rep.k_description = k.describe();

    auto coords = [&](const Word& w) {
      return k.project(abelianize(w, n, dec ? &*dec : nullptr).flat());
    };
    for (int i = 1; i <= n; ++i) rep.solution.push_back(coords(Word::variable(s.coeff, i)));
    for (const Word& w : s.words) rep.eq_values.push_back(coords(w));
    rep.ineq_value = coords(f);
    return rep;
  }

  // class-2: coordinates are the abelianization part followed by the
  // canonical central residual against the closure's central lattice
  const int pairs = n * (n - 1) / 2;
  IntMatrix amat(0, n);
  std::vector<MalcevVector> smal;
  for (const Word& w : s.words) {
    MalcevVector mv = malcev_normal_form(w, n);
    amat.append_row(mv.a);
    smal.push_back(std::move(mv));
  }
  AugLattice alat(n, {}, amat);
  HnfResult ahf = hnf(amat);

  // rebuild the central lattice exactly as the oracle does
  IntMatrix crows(0, pairs);
  {
    auto push_b = [&](const Word& value) { crows.append_row(malcev_normal_form(value, n).b); };
    for (size_t t = 0; t < s.words.size(); ++t)
      for (int j = 1; j <= n; ++j)
        push_b(Word::commutator(s.words[t], Word::variable(s.coeff, j)));
    IntMatrix kernel = left_kernel(amat);
    for (int r = 0; r < kernel.rows(); ++r) {
      Word prod(s.coeff);
      for (int t = 0; t < kernel.cols(); ++t) prod = prod.mul(s.words[t].pow(kernel.at(r, t)));
      push_b(prod);
    }
  }
  AugLattice clat(pairs, {}, std::move(crows));
  FGAbelian k1 = quotient_presentation(alat);
  FGAbelian k2 = quotient_presentation(clat);
  rep.k_description = "class2(ab = " + k1.describe() + ", central = " + k2.describe() + ")";

  auto coords = [&](const Word& w) {
    MalcevVector mv = malcev_normal_form(w, n);
    // split off the canonical representative of the weight-1 part, then
    // read the central remainder against the closure's central lattice
    std::vector<Int> ra = alat.reduce(mv.a);
    std::vector<Int> span_part = sub_vec(mv.a, ra);
    std::optional<std::vector<Int>> y = solve_echelon(ahf, span_part);
    if (!y) fail(ErrorCode::invalid_argument, "weight-1 reduction failed");
    Word lift(s.coeff);
    for (size_t t = 0; t < s.words.size(); ++t) {
      Int kc = 0;
      for (size_t r = 0; r < y->size(); ++r)
        kc += (*y)[r] * ahf.u.at(static_cast<int>(r), static_cast<int>(t));
      lift = lift.mul(s.words[t].pow(kc));
    }
    MalcevVector residual = class2_mul(mv, class2_inv(malcev_normal_form(lift, n), n), n);
    return concat_vec(k1.project(mv.a), k2.project(residual.b));
  };
  for (int i = 1; i <= n; ++i) rep.solution.push_back(coords(Word::variable(s.coeff, i)));
  for (const Word& w : s.words) rep.eq_values.push_back(coords(w));
  rep.ineq_value = coords(f);
  return rep;
}

ContainmentReport containment_sample_check(const EquationSystem& s, const VarietySpec& v,
                                           const GroupRef& model,
                                           const std::optional<GEmbedding>& lambda,
                                           long long budget, uint64_t seed, long long solve_cap) {
  LawCheck laws;
  try {
    laws = satisfies_laws(model, v, /*exhaustive=*/true);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::budget_exceeded) throw;
    laws = satisfies_laws(model, v, /*exhaustive=*/false, seed);
  }
  if (!laws.ok)
    fail(ErrorCode::model_not_in_variety, "the model '" + model->name() +
                                              "' violates the variety law " +
                                              word_to_text(laws.law));

  AlgebraicSet a = solve_finite(s, model, lambda, solve_cap, 1);

  ContainmentReport rep;
  rep.points = a.points.size();
  rep.cases = budget;
  Rng rng(seed);
  for (long long c = 0; c < budget; ++c) {
    Word u(s.coeff && s.coeff->order() > 1 ? s.coeff : nullptr);
    if (!s.words.empty()) {
      int conjugates = 1 + static_cast<int>(rng.below(4));
      for (int j = 0; j < conjugates; ++j) {
        int idx = static_cast<int>(rng.below(s.words.size()));
        int sign = rng.coin() ? 1 : -1;
        Word conj = random_conjugator(rng, s.vars, s.coeff, 4);
        u = u.mul(s.words[idx].pow(sign).conj(conj));
      }
    }
    int identity_parts = static_cast<int>(rng.below(3));
    for (const Word& inst :
         identity_instance_sample(v, s.vars, s.coeff, identity_parts, 4, rng.next()))
      u = u.mul(inst);

    const GEmbedding* emb = a.lambda ? &*a.lambda : nullptr;
    for (const auto& p : a.points) {
      int val = u.evaluate(model, p, emb);
      if (val != model->identity()) {
        rep.failures.push_back({u, p, val});
        break;
      }
    }
  }
  return rep;
}

DiscrepancyReport nsatz_finite_discrepancy(const EquationSystem& s, const VarietySpec& v,
                                           const GroupRef& model,
                                           const std::optional<GEmbedding>& lambda, int max_len,
                                           size_t ball_cap, long long solve_cap) {
  VClosureOracle oracle(s, v);
  AlgebraicSet a = solve_finite(s, model, lambda, solve_cap, 1);

  bool truncated = false;
  std::vector<Word> ball = word_ball(s.coeff, s.vars, max_len, ball_cap, &truncated);
  if (truncated)
    fail(ErrorCode::budget_exceeded, "word ball of radius " + std::to_string(max_len) +
                                         " exceeds cap " + std::to_string(ball_cap));

  DiscrepancyReport rep;
  rep.ball_size = ball.size();
  rep.points = a.points.size();
  for (const Word& w : ball)
    if (radical_member_finite(w, a) && !oracle.member(w)) rep.words.push_back(w);
  return rep;
}

}  // namespace agog
