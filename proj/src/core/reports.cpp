#include "core/reports.hpp"

#include <sstream>

namespace agog {

namespace {

class ReportBuilder {
public:
  void header(const std::string& key, const std::string& value) {
    out_ << "# " << key << ": " << value << "\n";
  }
  void line(const std::string& s) { out_ << s << "\n"; }
  std::string str() const { return out_.str(); }

private:
  std::ostringstream out_;
};

std::string fmt_point(const std::vector<int>& p) {
  std::string s = "(";
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(p[i]);
  }
  return s + ")";
}

std::string fmt_coords(const std::vector<Int>& c) {
  std::string s = "(";
  for (size_t i = 0; i < c.size(); ++i) {
    if (i) s += ",";
    s += c[i].str();
  }
  return s + ")";
}

std::string system_header(const SystemFile& sys) {
  return sys.name + " | vars " + std::to_string(sys.vars) + " | coeff " +
         (sys.coeff ? sys.coeff->name() : "none") + " | variety " + sys.variety.describe() +
         " | equations " + std::to_string(sys.equations.size());
}

std::string model_header(const GroupRef& g) {
  return g->name() + " | order " + std::to_string(g->order());
}

void require_model(const GroupRef& model) {
  if (!model) fail(ErrorCode::invalid_argument, "this verb needs a model group (--group)");
}

void echo_embedding(ReportBuilder& rb, const char* key, const std::optional<GEmbedding>& emb) {
  if (emb) rb.header(key, emb->source->name() + " -> " + emb->target->name());
}

Word parse_query_word(const std::string& text, const GroupRef& coeff) {
  if (text.empty()) fail(ErrorCode::invalid_argument, "this verb needs a word (--word)");
  return parse_word(text, coeff, "word");
}

}  // namespace

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::ok:
      return 0;
    case ErrorCode::inconsistent:
    case ErrorCode::not_outside_closure:
    case ErrorCode::empty_algebraic_set:
    case ErrorCode::model_not_in_variety:
      return 1;
    case ErrorCode::budget_exceeded:
    case ErrorCode::too_large:
      return 3;
    default:
      return 2;
  }
}

EquationSystem system_of(const SystemFile& sys) {
  return EquationSystem{sys.name, sys.vars, sys.coeff, sys.equations};
}

CmdResult cmd_reduce(const GroupRef& coeff, const std::string& word_text) {
  Word w = parse_query_word(word_text, coeff);
  return {word_to_text(w) + "\n", 0};
}

CmdResult cmd_eval(const GroupRef& model, const GroupRef& coeff,
                   const std::optional<GEmbedding>& emb, const std::string& word_text,
                   const std::vector<int>& point) {
  require_model(model);
  Word w = parse_query_word(word_text, coeff ? coeff : model);
  int val = w.evaluate(model, point, emb ? &*emb : nullptr);
  return {"g" + std::to_string(val) + "\n", 0};
}

CmdResult cmd_solve(const SystemFile& sys, const GroupRef& model,
                    const std::optional<GEmbedding>& emb, const CommonOpts& opts) {
  require_model(model);
  AlgebraicSet a = solve_finite(system_of(sys), model, emb, opts.cap, opts.workers);

  ReportBuilder rb;
  rb.header("verb", "solve");
  rb.header("system", system_header(sys));
  rb.header("model", model_header(model));
  echo_embedding(rb, "embedding", emb);
  rb.header("workers", std::to_string(opts.workers));
  rb.header("cap", std::to_string(opts.cap));
  rb.header("quantity", "V_H(S)");
  for (const auto& p : a.points) rb.line("point " + fmt_point(p));
  rb.line("count " + std::to_string(a.points.size()));
  return {rb.str(), 0};
}

CmdResult cmd_radical(const SystemFile& sys, const GroupRef& model,
                      const std::optional<GEmbedding>& emb, const std::string& word_text,
                      const CommonOpts& opts) {
  require_model(model);
  Word w = parse_query_word(word_text, sys.coeff);
  AlgebraicSet a = solve_finite(system_of(sys), model, emb, opts.cap, opts.workers);
  bool member = radical_member_finite(w, a);

  ReportBuilder rb;
  rb.header("verb", "radical");
  rb.header("system", system_header(sys));
  rb.header("model", model_header(model));
  echo_embedding(rb, "embedding", emb);
  rb.header("word", word_to_text(w));
  rb.header("cap", std::to_string(opts.cap));
  rb.header("quantity", "Rad_H(S)");
  if (a.empty()) rb.line("note degenerate: empty solution set; membership is vacuous");
  rb.line(member ? "verdict MEMBER" : "verdict NOT-MEMBER");
  return {rb.str(), member ? 0 : 1};
}

CmdResult cmd_coordgroup(const SystemFile& sys, const GroupRef& model,
                         const std::optional<GEmbedding>& emb, const CommonOpts& opts) {
  require_model(model);
  AlgebraicSet a = solve_finite(system_of(sys), model, emb, opts.cap, opts.workers);
  int closure_cap = opts.cap > kDefaultOrderCap ? kDefaultOrderCap : static_cast<int>(opts.cap);
  CoordinateGroupResult cg = coordinate_group(a, closure_cap);

  ReportBuilder rb;
  rb.header("verb", "coordgroup");
  rb.header("system", system_header(sys));
  rb.header("model", model_header(model));
  echo_embedding(rb, "embedding", emb);
  rb.header("cap", std::to_string(opts.cap));
  rb.header("quantity", "Gamma_H(S)");
  rb.line("points " + std::to_string(a.points.size()));
  rb.line("order " + std::to_string(cg.closure.group->order()));
  rb.line(std::string("abelian ") + (cg.closure.group->is_abelian() ? "yes" : "no"));
  for (size_t i = 0; i < cg.generator_tuples.size(); ++i)
    rb.line("generator x" + std::to_string(i + 1) + " = " + fmt_point(cg.generator_tuples[i]));
  for (const auto& [e, t] : cg.constant_diagonals)
    rb.line("constant g" + std::to_string(e) + " = " + fmt_point(t));
  return {rb.str(), 0};
}

CmdResult cmd_vclosure(const SystemFile& sys, const std::string& word_text) {
  Word w = parse_query_word(word_text, sys.coeff);
  VClosureOracle oracle(system_of(sys), sys.variety);
  VClosureCertificate cert;
  bool member = oracle.member(w, &cert);
  if (member && !verify_certificate(w, cert, oracle.system(), sys.variety))
    fail(ErrorCode::invalid_argument, "internal error: certificate failed verification");

  ReportBuilder rb;
  rb.header("verb", "vclosure");
  rb.header("system", system_header(sys));
  rb.header("word", word_to_text(w));
  rb.header("quantity", "<S^G[X]> * Id_V(X)");
  if (member) {
    rb.line("verdict MEMBER");
    for (const CertificateEntry& e : cert.entries)
      rb.line("conj " + word_to_text(e.conjugator) + " idx " + std::to_string(e.index) +
              " sign " + (e.sign > 0 ? "+1" : "-1"));
    rb.line("idtail " + word_to_text(cert.identity_tail));
  } else {
    rb.line("verdict NOT-MEMBER");
  }
  return {rb.str(), member ? 0 : 1};
}

CmdResult cmd_consistency(const SystemFile& sys) {
  bool consistent = consistency_check(system_of(sys), sys.variety);

  ReportBuilder rb;
  rb.header("verb", "consistency");
  rb.header("system", system_header(sys));
  rb.header("quantity", "Q meet G");
  rb.line(consistent ? "verdict CONSISTENT" : "verdict INCONSISTENT");
  return {rb.str(), consistent ? 0 : 1};
}

CmdResult cmd_witness(const SystemFile& sys, const std::string& word_text) {
  Word f = parse_query_word(word_text, sys.coeff);
  WitnessReport wit = witness_construct(system_of(sys), sys.variety, f);

  ReportBuilder rb;
  rb.header("verb", "witness");
  rb.header("system", system_header(sys));
  rb.header("word", word_to_text(f));
  rb.header("quantity", "K = F_V(X)/Q separating f");
  rb.line("K = " + wit.k_description);
  for (size_t i = 0; i < wit.solution.size(); ++i)
    rb.line("b" + std::to_string(i + 1) + " = " + fmt_coords(wit.solution[i]));
  for (size_t t = 0; t < wit.eq_values.size(); ++t)
    rb.line("w" + std::to_string(t + 1) + "(b) = " + fmt_coords(wit.eq_values[t]));
  rb.line("f(b) = " + fmt_coords(wit.ineq_value) + " != 0");
  return {rb.str(), 0};
}

CmdResult cmd_verify_containment(const SystemFile& sys, const GroupRef& model,
                                 const std::optional<GEmbedding>& emb, const CommonOpts& opts) {
  require_model(model);
  ContainmentReport rep = containment_sample_check(system_of(sys), sys.variety, model, emb,
                                                   opts.budget, opts.seed, opts.cap);

  ReportBuilder rb;
  rb.header("verb", "verify-containment");
  rb.header("system", system_header(sys));
  rb.header("model", model_header(model));
  echo_embedding(rb, "embedding", emb);
  rb.header("seed", std::to_string(opts.seed));
  rb.header("budget", std::to_string(opts.budget));
  rb.header("cap", std::to_string(opts.cap));
  rb.header("quantity", "<S^G[X]> * Id_V(X) within Rad_H(S)");
  rb.line("points " + std::to_string(rep.points));
  rb.line("cases " + std::to_string(rep.cases));
  for (const ContainmentFailure& f : rep.failures)
    rb.line("failure word " + word_to_text(f.element) + " point " + fmt_point(f.point) +
            " value g" + std::to_string(f.value));
  rb.line("failures " + std::to_string(rep.failures.size()));
  return {rb.str(), rep.failures.empty() ? 0 : 1};
}

CmdResult cmd_compare(const SystemFile& sys, const GroupRef& model,
                      const std::optional<GEmbedding>& emb, const GroupRef& model2,
                      const std::optional<GEmbedding>& emb2, const CommonOpts& opts) {
  require_model(model);
  if (!model2) fail(ErrorCode::invalid_argument, "compare needs a second model group (--group2)");
  AlgebraicSet a = solve_finite(system_of(sys), model, emb, opts.cap, opts.workers);
  AlgebraicSet b = solve_finite(system_of(sys), model2, emb2, opts.cap, opts.workers);
  CompareReport rep =
      geometric_compare(a, b, opts.max_len, static_cast<size_t>(opts.cap));

  ReportBuilder rb;
  rb.header("verb", "compare");
  rb.header("system", system_header(sys));
  rb.header("model", model_header(model));
  rb.header("model2", model_header(model2));
  echo_embedding(rb, "embedding", emb);
  echo_embedding(rb, "embedding2", emb2);
  rb.header("max-len", std::to_string(opts.max_len));
  rb.header("cap", std::to_string(opts.cap));
  rb.header("quantity", "Rad_H(S) vs Rad_H2(S)");
  rb.header("note", "agreement on a ball is evidence, not a proof");
  rb.line("ball " + std::to_string(rep.ball_size));
  for (const CompareItem& d : rep.disagreements)
    rb.line("word " + word_to_text(d.word) + " first " + (d.in_first ? "MEMBER" : "NOT-MEMBER") +
            " second " + (d.in_second ? "MEMBER" : "NOT-MEMBER"));
  rb.line("disagreements " + std::to_string(rep.disagreements.size()));
  return {rb.str(), rep.disagreements.empty() ? 0 : 1};
}

CmdResult cmd_discrepancy(const SystemFile& sys, const GroupRef& model,
                          const std::optional<GEmbedding>& emb, const CommonOpts& opts) {
  require_model(model);
  DiscrepancyReport rep =
      nsatz_finite_discrepancy(system_of(sys), sys.variety, model, emb, opts.max_len,
                               static_cast<size_t>(opts.cap), opts.cap);

  ReportBuilder rb;
  rb.header("verb", "discrepancy");
  rb.header("system", system_header(sys));
  rb.header("model", model_header(model));
  echo_embedding(rb, "embedding", emb);
  rb.header("max-len", std::to_string(opts.max_len));
  rb.header("cap", std::to_string(opts.cap));
  rb.header("quantity", "Rad_H(S) minus <S^G[X]> * Id_V(X)");
  rb.line("ball " + std::to_string(rep.ball_size));
  rb.line("points " + std::to_string(rep.points));
  for (const Word& w : rep.words) rb.line("word " + word_to_text(w));
  rb.line("count " + std::to_string(rep.words.size()));
  return {rb.str(), rep.words.empty() ? 0 : 1};
}

}  // namespace agog
