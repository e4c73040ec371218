// The finite-coefficient nullstellensatz machinery: membership in the
// product of the normal closure of S with the verbal subgroup Id_V(X),
// with self-verifying certificates; V-consistency of a system; explicit
// witness groups for non-members; sampled containment of the closure in
// the radical; and ball-bounded discrepancy between the two sides.
#pragma once

#include "core/geometry.hpp"
#include "core/intlinalg.hpp"
#include "core/varieties.hpp"
#include "core/word.hpp"

#include <optional>
#include <string>
#include <vector>

namespace agog {

// Membership certificate: w equals (prod of conjugated equation powers)
// times a word of Id_V(X).  Each entry contributes conjugator^-1 *
// s_index^sign * conjugator to the product, in order.
struct CertificateEntry {
  Word conjugator;
  int index = 0;  // into the system's equation list
  int sign = +1;
};

struct VClosureCertificate {
  std::vector<CertificateEntry> entries;
  Word identity_tail;   // lies in Id_V(X)
  Word reconstruction;  // product of the entries times the tail; equals w
};

Word expand_certificate_product(const std::vector<CertificateEntry>& entries,
                                const EquationSystem& s);

// Re-derives the certificate product from the system, checks the
// reconstruction matches it, and confirms w * reconstruction^-1 and the
// tail both lie in Id_V(X).
bool verify_certificate(const Word& w, const VClosureCertificate& cert,
                        const EquationSystem& s, const VarietySpec& v);

// Decision procedure for w in <S^{G[X]}> * Id_V(X).  Supported varieties:
// Abelian with abelian (or no) coefficients, Nilpotent(2) without
// coefficients.  Built once per (S, V); member() is then cheap.
class VClosureOracle {
public:
  VClosureOracle(EquationSystem s, VarietySpec v);

  const EquationSystem& system() const { return s_; }
  const VarietySpec& variety() const { return v_; }

  bool member(const Word& w, VClosureCertificate* cert = nullptr) const;

  // V-consistency: no equation forces a nontrivial coefficient relation.
  bool consistent() const;

private:
  void build_abelian();
  void build_class2();
  bool member_abelian(const Word& w, VClosureCertificate* cert) const;
  bool member_class2(const Word& w, VClosureCertificate* cert) const;
  void fill_certificate(const Word& w, std::vector<CertificateEntry> entries,
                        VClosureCertificate* cert) const;

  EquationSystem s_;
  VarietySpec v_;
  bool class2_ = false;

  // abelian data: the image lattice of S in Z^n (+) G^ab
  std::optional<AbelianDecomposition> dec_;
  std::optional<AugLattice> lattice_;

  // class-2 data: weight-1 matrix of S and the central lattice
  IntMatrix amat_{0, 0};
  std::optional<HnfResult> ahnf_;
  std::vector<MalcevVector> smal_;
  std::vector<std::vector<CertificateEntry>> central_entries_;  // per central generator
  std::vector<MalcevVector> central_vals_;
  std::optional<AugLattice> clattice_;
};

// Convenience single-shot membership query.
bool vclosure_member(const EquationSystem& s, const VarietySpec& v, const Word& w,
                     VClosureCertificate* cert = nullptr);

// True when the system has a solution in some V-group with coefficients G,
// equivalently when the closure meets G trivially.
bool consistency_check(const EquationSystem& s, const VarietySpec& v);

// Explicit finite-presentation witness that f lies outside the closure:
// the canonical quotient K = F_V(X)/Q with the coordinate solution b,
// which satisfies every equation while f(b) != 1.
struct WitnessReport {
  std::string k_description;
  std::vector<std::vector<Int>> solution;   // coordinates of b_i in K, per variable
  std::vector<std::vector<Int>> eq_values;  // coordinates of w(b), per equation (all zero)
  std::vector<Int> ineq_value;              // coordinates of f(b), nonzero
};

WitnessReport witness_construct(const EquationSystem& s, const VarietySpec& v, const Word& f);

// Seeded sample of closure elements, each evaluated on the whole solution
// set in the model; a failure would falsify the containment.
struct ContainmentFailure {
  Word element;
  std::vector<int> point;
  int value;
};

struct ContainmentReport {
  long long cases = 0;
  size_t points = 0;
  std::vector<ContainmentFailure> failures;
};

ContainmentReport containment_sample_check(const EquationSystem& s, const VarietySpec& v,
                                           const GroupRef& model,
                                           const std::optional<GEmbedding>& lambda,
                                           long long budget, uint64_t seed,
                                           long long solve_cap = 10'000'000);

// Ball-bounded list of radical members outside the closure: the witnesses
// that the finite model fails the nullstellensatz equality.
struct DiscrepancyReport {
  size_t ball_size = 0;
  size_t points = 0;
  std::vector<Word> words;
};

DiscrepancyReport nsatz_finite_discrepancy(const EquationSystem& s, const VarietySpec& v,
                                           const GroupRef& model,
                                           const std::optional<GEmbedding>& lambda, int max_len,
                                           size_t ball_cap, long long solve_cap = 10'000'000);

}  // namespace agog
