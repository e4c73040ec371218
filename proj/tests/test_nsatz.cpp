#include <doctest.h>

#include "core/nsatz.hpp"
#include "core/text.hpp"

#include <set>
#include <string>
#include <vector>

using namespace agog;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::ok;
}

EquationSystem make_system(int vars, const GroupRef& coeff, const std::vector<std::string>& eqs) {
  EquationSystem s;
  s.vars = vars;
  s.coeff = coeff;
  for (const auto& e : eqs) s.words.push_back(parse_word(e, coeff));
  return s;
}

Word rand_word(Rng& rng, int vars, const GroupRef& coeff, int len) {
  Word w(coeff);
  for (int i = 0; i < len; ++i) {
    if (coeff && coeff->order() > 1 && rng.below(3) == 0) {
      w = w.mul(Word::constant(coeff, 1 + static_cast<int>(rng.below(coeff->order() - 1))));
    } else {
      w = w.mul(Word::variable(coeff, 1 + static_cast<int>(rng.below(vars)),
                               rng.coin() ? 1 : -1));
    }
  }
  return w;
}

// A guaranteed closure element: a product of conjugated equations and
// identity instances, assembled without the oracle.
Word random_closure_element(Rng& rng, const EquationSystem& s, const VarietySpec& v) {
  Word w(s.coeff);
  int parts = 1 + static_cast<int>(rng.below(3));
  for (int i = 0; i < parts; ++i) {
    const Word& base = s.words[rng.below(s.words.size())];
    Word c = rand_word(rng, s.vars, s.coeff, static_cast<int>(rng.below(4)));
    Word t = rng.coin() ? base : base.inv();
    w = w.mul(c.inv().mul(t).mul(c));
  }
  for (const Word& inst : identity_instance_sample(v, s.vars, s.coeff,
                                                   static_cast<int>(rng.below(3)), 3, rng.next()))
    w = w.mul(inst);
  return w;
}

// Coordinate moduli recovered from a quotient description such as
// "Z/2 x Z/4 x Z^2"; 0 marks a free coordinate.
std::vector<long long> moduli_of(const std::string& desc) {
  std::vector<long long> out;
  if (desc == "trivial") return out;
  size_t pos = 0;
  while (pos <= desc.size()) {
    size_t end = desc.find(" x ", pos);
    std::string tok = desc.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    if (tok.rfind("Z/", 0) == 0) {
      out.push_back(std::stoll(tok.substr(2)));
    } else if (tok == "Z") {
      out.push_back(0);
    } else if (tok.rfind("Z^", 0) == 0) {
      for (long long i = std::stoll(tok.substr(2)); i > 0; --i) out.push_back(0);
    } else {
      REQUIRE_MESSAGE(false, "unrecognized quotient token: " << tok);
    }
    if (end == std::string::npos) break;
    pos = end + 3;
  }
  return out;
}

// Independent evaluation of a constant-free word at the witness point of an
// abelian witness group: the exponent-weighted sum of the b_i coordinates.
std::vector<Int> abelian_witness_eval(const Word& w, const WitnessReport& rep,
                                      const std::vector<long long>& moduli) {
  std::vector<Int> acc(moduli.size(), 0);
  for (size_t i = 0; i < rep.solution.size(); ++i) {
    Int e = w.exponent_sum(static_cast<int>(i) + 1);
    REQUIRE(rep.solution[i].size() == moduli.size());
    for (size_t j = 0; j < moduli.size(); ++j) acc[j] += e * rep.solution[i][j];
  }
  for (size_t j = 0; j < moduli.size(); ++j)
    if (moduli[j] > 0) acc[j] = ((acc[j] % moduli[j]) + moduli[j]) % moduli[j];
  return acc;
}

bool all_zero(const std::vector<Int>& v) {
  for (const Int& x : v)
    if (x != 0) return false;
  return true;
}

void check_witness_valid(const EquationSystem& s, const VarietySpec&, const Word& f,
                         const WitnessReport& rep, bool recompute) {
  REQUIRE(rep.solution.size() == static_cast<size_t>(s.vars));
  REQUIRE(rep.eq_values.size() == s.words.size());
  for (const auto& v : rep.eq_values) CHECK(all_zero(v));
  CHECK_FALSE(all_zero(rep.ineq_value));
  if (!recompute) return;
  std::vector<long long> moduli = moduli_of(rep.k_description);
  for (size_t j = 0; j < s.words.size(); ++j)
    CHECK(abelian_witness_eval(s.words[j], rep, moduli) == rep.eq_values[j]);
  CHECK(abelian_witness_eval(f, rep, moduli) == rep.ineq_value);
}

}  // namespace

TEST_CASE("abelian closure membership: hand-checked cases") {
  VarietySpec ab = VarietySpec::Abelian();

  EquationSystem sq = make_system(1, nullptr, {"x1^2"});
  VClosureOracle oracle(sq, ab);
  CHECK(oracle.member(parse_word("x1^2", nullptr)));
  CHECK(oracle.member(parse_word("x1^4", nullptr)));
  CHECK(oracle.member(parse_word("x1^-2", nullptr)));
  CHECK(oracle.member(parse_word("1", nullptr)));
  CHECK_FALSE(oracle.member(parse_word("x1", nullptr)));
  CHECK_FALSE(oracle.member(parse_word("x1^3", nullptr)));

  // gcd through combination: 3 - 2 = 1
  EquationSystem gcd = make_system(1, nullptr, {"x1^2", "x1^3"});
  CHECK(vclosure_member(gcd, ab, parse_word("x1", nullptr)));

  // x1*x2 and x1*x2^-1 span an index-2 sublattice of Z^2
  EquationSystem pair = make_system(2, nullptr, {"x1*x2", "x1*x2^-1"});
  VClosureOracle po(pair, ab);
  CHECK_FALSE(po.member(parse_word("x1", nullptr)));
  CHECK_FALSE(po.member(parse_word("x2", nullptr)));
  CHECK(po.member(parse_word("x1^2", nullptr)));
  CHECK(po.member(parse_word("x1*x2", nullptr)));
  // commutators are free: they lie in the verbal subgroup
  CHECK(po.member(parse_word("[x1,x2]", nullptr)));
  CHECK(po.member(parse_word("[x2,x1]*x1^2*[x1,x2^2]", nullptr)));
}

TEST_CASE("abelian membership certificates verify; tampering breaks them") {
  VarietySpec ab = VarietySpec::Abelian();
  EquationSystem pair = make_system(2, nullptr, {"x1*x2", "x1*x2^-1"});
  VClosureOracle oracle(pair, ab);

  Word w = parse_word("x1^2*[x2,x1]", nullptr);
  VClosureCertificate cert;
  REQUIRE(oracle.member(w, &cert));
  CHECK(verify_certificate(w, cert, pair, ab));
  CHECK(cert.reconstruction == w);
  REQUIRE_FALSE(cert.entries.empty());

  // a different word does not match the certificate
  CHECK_FALSE(verify_certificate(parse_word("x1", nullptr), cert, pair, ab));

  // flipped sign, shifted index, corrupted tail, corrupted reconstruction
  VClosureCertificate bad = cert;
  bad.entries[0].sign = -bad.entries[0].sign;
  CHECK_FALSE(verify_certificate(w, bad, pair, ab));

  bad = cert;
  bad.entries[0].index = 1 - bad.entries[0].index;
  CHECK_FALSE(verify_certificate(w, bad, pair, ab));

  bad = cert;
  bad.identity_tail = bad.identity_tail.mul(Word::variable(nullptr, 1));
  CHECK_FALSE(verify_certificate(w, bad, pair, ab));

  bad = cert;
  bad.identity_tail = bad.identity_tail.mul(Word::variable(nullptr, 1));
  bad.reconstruction = expand_certificate_product(bad.entries, pair).mul(bad.identity_tail);
  CHECK_FALSE(verify_certificate(w, bad, pair, ab));
}

TEST_CASE("abelian closure with coefficient torsion") {
  VarietySpec ab = VarietySpec::Abelian();
  GroupRef c2 = build_cyclic(2);
  EquationSystem gsys = make_system(1, c2, {"x1^2*g1"});
  VClosureOracle oracle(gsys, ab);

  CHECK(oracle.member(parse_word("x1^2*g1", c2)));
  CHECK(oracle.member(parse_word("g1*x1^2", c2)));      // abelian reordering
  CHECK(oracle.member(parse_word("x1^2*g1^-1", c2)));   // g1 is an involution
  CHECK(oracle.member(parse_word("x1^4", c2)));         // twice the relation kills g1^2
  CHECK_FALSE(oracle.member(parse_word("x1^2", c2)));   // would force g1 = 1
  CHECK_FALSE(oracle.member(parse_word("g1", c2)));
  CHECK_FALSE(oracle.member(parse_word("x1", c2)));

  VClosureCertificate cert;
  REQUIRE(oracle.member(parse_word("x1^4", c2), &cert));
  CHECK(verify_certificate(parse_word("x1^4", c2), cert, gsys, ab));

  // guards: nonabelian coefficients, unsupported varieties
  EquationSystem bad = make_system(1, build_symmetric(3), {"x1^2*g1"});
  CHECK(code_of([&] { VClosureOracle o(bad, ab); }) == ErrorCode::nonabelian_coefficients);
  CHECK(code_of([&] { VClosureOracle o(gsys, VarietySpec::All()); }) ==
        ErrorCode::unsupported_variety);
  CHECK(code_of([&] { VClosureOracle o(gsys, VarietySpec::Metabelian()); }) ==
        ErrorCode::unsupported_variety);
  CHECK(code_of([&] { VClosureOracle o(gsys, VarietySpec::Nilpotent(2)); }) ==
        ErrorCode::unsupported_variety);  // class 2 needs trivial coefficients
  EquationSystem free2 = make_system(2, nullptr, {"x1^2"});
  CHECK(code_of([&] { VClosureOracle o(free2, VarietySpec::Nilpotent(3)); }) ==
        ErrorCode::unsupported_variety);
}

TEST_CASE("abelian closure: random soundness and validated rejections") {
  VarietySpec ab = VarietySpec::Abelian();
  Rng rng(577);
  std::vector<GroupRef> coeffs = {nullptr, nullptr, build_cyclic(2), build_cyclic(6)};
  int members = 0, rejections = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const GroupRef& g = coeffs[trial % coeffs.size()];
    int vars = 1 + static_cast<int>(rng.below(3));
    EquationSystem s;
    s.vars = vars;
    s.coeff = g;
    int k = 1 + static_cast<int>(rng.below(2));
    for (int i = 0; i < k; ++i)
      s.words.push_back(rand_word(rng, vars, g, 1 + static_cast<int>(rng.below(4))));
    VClosureOracle oracle(s, ab);

    // soundness: assembled closure elements are accepted with valid certificates
    for (int probe = 0; probe < 6; ++probe) {
      Word w = random_closure_element(rng, s, ab);
      VClosureCertificate cert;
      REQUIRE_MESSAGE(oracle.member(w, &cert), "closure element rejected: " << word_to_text(w));
      CHECK(verify_certificate(w, cert, s, ab));
      ++members;
    }

    // completeness at the witness level: rejected words get a separating group
    if (!oracle.consistent()) continue;
    for (int probe = 0; probe < 6; ++probe) {
      Word f = rand_word(rng, vars, g, 1 + static_cast<int>(rng.below(4)));
      VClosureCertificate cert;
      if (oracle.member(f, &cert)) {
        CHECK(verify_certificate(f, cert, s, ab));
        ++members;
      } else {
        WitnessReport rep = witness_construct(s, ab, f);
        // exact recomputation needs constant-free words, i.e. no coefficients
        check_witness_valid(s, ab, f, rep, /*recompute=*/!g);
        ++rejections;
      }
    }
  }
  CHECK(members > 120);
  CHECK(rejections > 60);
}

TEST_CASE("class-2 closure membership and witnesses") {
  VarietySpec n2 = VarietySpec::Nilpotent(2);
  EquationSystem s = make_system(2, nullptr, {"x1^2", "x2^2"});
  VClosureOracle oracle(s, n2);

  CHECK(oracle.member(parse_word("x1^2", nullptr)));
  CHECK(oracle.member(parse_word("x2^-2", nullptr)));
  CHECK(oracle.member(parse_word("[x1,x2]^2", nullptr)));  // = [x1^2, x2] modulo weight 3
  CHECK(oracle.member(parse_word("x2^-1*x1^2*x2", nullptr)));
  CHECK(oracle.member(parse_word("[[x1,x2],x1]", nullptr)));  // weight-3 law instance
  CHECK_FALSE(oracle.member(parse_word("[x1,x2]", nullptr)));
  CHECK_FALSE(oracle.member(parse_word("x1", nullptr)));
  CHECK_FALSE(oracle.member(parse_word("x1*x2", nullptr)));

  VClosureCertificate cert;
  REQUIRE(oracle.member(parse_word("[x1,x2]^2*x1^2", nullptr), &cert));
  CHECK(verify_certificate(parse_word("[x1,x2]^2*x1^2", nullptr), cert, s, n2));
  CHECK_FALSE(verify_certificate(parse_word("[x1,x2]*x1^2", nullptr), cert, s, n2));

  WitnessReport rep = witness_construct(s, n2, parse_word("[x1,x2]", nullptr));
  CHECK(rep.k_description == "class2(ab = Z/2 x Z/2, central = Z/2)");
  check_witness_valid(s, n2, parse_word("[x1,x2]", nullptr), rep, /*recompute=*/false);

  WitnessReport rx = witness_construct(s, n2, parse_word("x1", nullptr));
  check_witness_valid(s, n2, parse_word("x1", nullptr), rx, /*recompute=*/false);
}

TEST_CASE("class-2 closure: random soundness") {
  VarietySpec n2 = VarietySpec::Nilpotent(2);
  Rng rng(991);
  int accepted = 0;
  for (int trial = 0; trial < 40; ++trial) {
    int vars = 2 + static_cast<int>(rng.below(2));
    EquationSystem s;
    s.vars = vars;
    int k = 1 + static_cast<int>(rng.below(2));
    for (int i = 0; i < k; ++i)
      s.words.push_back(rand_word(rng, vars, nullptr, 1 + static_cast<int>(rng.below(4))));
    VClosureOracle oracle(s, n2);
    for (int probe = 0; probe < 5; ++probe) {
      Word w = random_closure_element(rng, s, n2);
      VClosureCertificate cert;
      REQUIRE_MESSAGE(oracle.member(w, &cert), "closure element rejected: " << word_to_text(w));
      CHECK(verify_certificate(w, cert, s, n2));
      ++accepted;
    }
  }
  CHECK(accepted == 200);
}

TEST_CASE("class-2 rejection is confirmed by a Heisenberg projection") {
  // For S = {x1^2, x2^2} the word [x1,x2] is rejected; substituting the
  // standard generators of the mod-2 Heisenberg group sends every equation
  // to the identity but the word to the central element.
  GroupRef heis = build_heisenberg_mod(2);
  std::vector<int> point = {4, 2};  // A = (1,0,0) -> id 4, B = (0,1,0) -> id 2
  EquationSystem s = make_system(2, nullptr, {"x1^2", "x2^2"});
  for (const Word& w : s.words) CHECK(w.evaluate(heis, point) == 0);
  CHECK(parse_word("[x1,x2]", nullptr).evaluate(heis, point) == 1);  // C = (0,0,1)
}

TEST_CASE("variety consistency of coefficient systems") {
  VarietySpec ab = VarietySpec::Abelian();
  GroupRef c2 = build_cyclic(2);

  // x1^2 = g1 is solvable in a larger abelian group even though it has no
  // solution over c2 itself
  CHECK(consistency_check(make_system(1, c2, {"x1^2*g1"}), ab));

  // equations forcing a nontrivial relation on the coefficients
  CHECK_FALSE(consistency_check(make_system(1, c2, {"g1"}), ab));
  CHECK_FALSE(consistency_check(make_system(1, c2, {"x1*g1", "x1"}), ab));
  CHECK_FALSE(consistency_check(make_system(2, c2, {"x1*x2*g1", "x1*x2"}), ab));

  CHECK(consistency_check(make_system(1, c2, {"x1"}), ab));
  CHECK(consistency_check(make_system(1, nullptr, {"x1^2"}), ab));
  CHECK(consistency_check(make_system(2, nullptr, {"x1^2", "x2^2"}), VarietySpec::Nilpotent(2)));

  // coefficient-free systems are consistent in any variety (identity point)
  CHECK(consistency_check(make_system(1, nullptr, {"x1^3"}), VarietySpec::All()));
  CHECK(consistency_check(make_system(1, nullptr, {"x1^3"}), VarietySpec::Metabelian()));
  CHECK(consistency_check(make_system(1, nullptr, {"x1^3"}), VarietySpec::Nilpotent(5)));

  // unsupported combinations are reported, not silently guessed
  CHECK(code_of([&] { consistency_check(make_system(1, c2, {"g1"}), VarietySpec::All()); }) ==
        ErrorCode::unsupported_variety);
  CHECK(code_of([&] {
          consistency_check(make_system(1, nullptr, {"x1"}),
                            VarietySpec::Laws({parse_word("x1^4", nullptr)}));
        }) == ErrorCode::unsupported_variety);
}

TEST_CASE("witness construction refuses members and inconsistent systems") {
  VarietySpec ab = VarietySpec::Abelian();
  GroupRef c2 = build_cyclic(2);
  EquationSystem sq = make_system(1, nullptr, {"x1^2"});
  CHECK(code_of([&] { witness_construct(sq, ab, parse_word("x1^4", nullptr)); }) ==
        ErrorCode::not_outside_closure);
  EquationSystem contra = make_system(1, c2, {"g1"});
  CHECK(code_of([&] { witness_construct(contra, ab, parse_word("x1", c2)); }) ==
        ErrorCode::inconsistent);
  CHECK(code_of([&] { witness_construct(sq, VarietySpec::All(), parse_word("x1", nullptr)); }) ==
        ErrorCode::unsupported_variety);
}

TEST_CASE("sampled containment of the closure in the radical") {
  GroupRef s3 = build_symmetric(3);
  EquationSystem comm = make_system(2, nullptr, {"[x1,x2]"});
  ContainmentReport r =
      containment_sample_check(comm, VarietySpec::All(), s3, std::nullopt, 40, 7);
  CHECK(r.cases == 40);
  CHECK(r.points == 18);
  CHECK(r.failures.empty());

  // runs over every supported variety kind as long as the model satisfies it
  GroupRef c4 = build_cyclic(4);
  GroupRef c2 = build_cyclic(2);
  EquationSystem sq = make_system(1, nullptr, {"x1^2"});
  for (VarietySpec v : {VarietySpec::Abelian(), VarietySpec::Nilpotent(2),
                        VarietySpec::Metabelian(),
                        VarietySpec::Laws({parse_word("x1^4", nullptr)})}) {
    ContainmentReport cr = containment_sample_check(sq, v, c4, std::nullopt, 25, 11);
    CHECK(cr.cases == 25);
    CHECK(cr.failures.empty());
  }

  // coefficient system through an embedding
  GEmbedding emb;
  emb.source = c2;
  emb.target = c4;
  emb.map = {0, 2};
  EquationSystem gsys = make_system(1, c2, {"x1^2*g1"});
  ContainmentReport ce =
      containment_sample_check(gsys, VarietySpec::Abelian(), c4, emb, 30, 3);
  CHECK(ce.points == 2);
  CHECK(ce.failures.empty());

  // model outside the variety is an error, not a vacuous pass
  CHECK(code_of([&] {
          containment_sample_check(sq, VarietySpec::Abelian(), s3, std::nullopt, 10, 0);
        }) == ErrorCode::model_not_in_variety);

  // a fixed seed reproduces the same case count and failure set
  ContainmentReport again =
      containment_sample_check(comm, VarietySpec::All(), s3, std::nullopt, 40, 7);
  CHECK(again.cases == r.cases);
  CHECK(again.failures.size() == r.failures.size());
}

TEST_CASE("ball-bounded discrepancy between radical and closure") {
  VarietySpec ab = VarietySpec::Abelian();
  GroupRef c2 = build_cyclic(2);
  GroupRef c4 = build_cyclic(4);
  EquationSystem empty;
  empty.vars = 1;

  DiscrepancyReport over_c2 = nsatz_finite_discrepancy(empty, ab, c2, std::nullopt, 2, 100000);
  CHECK(over_c2.points == 2);
  CHECK(over_c2.ball_size == 5);
  std::set<std::string> listed;
  for (const Word& w : over_c2.words) listed.insert(word_to_text(w));
  CHECK(listed == std::set<std::string>{"x1^2", "x1^-2"});

  DiscrepancyReport over_c4 = nsatz_finite_discrepancy(empty, ab, c4, std::nullopt, 2, 100000);
  CHECK(over_c4.words.empty());

  // cross-check every listed word and every omitted ball word
  AlgebraicSet a = solve_finite(empty, c2, std::nullopt);
  VClosureOracle oracle(empty, ab);
  bool truncated = false;
  for (const Word& w : word_ball(nullptr, 1, 2, 100000, &truncated)) {
    bool in_radical = radical_member_finite(w, a);
    bool in_closure = oracle.member(w);
    if (in_closure) CHECK(in_radical);  // sampled containment, exact here
    bool should_list = in_radical && !in_closure;
    CHECK(should_list == (listed.count(word_to_text(w)) == 1));
  }

  CHECK(code_of([&] { nsatz_finite_discrepancy(empty, ab, c2, std::nullopt, 6, 3); }) ==
        ErrorCode::budget_exceeded);
}
