#include <doctest.h>

#include "core/text.hpp"

#include <string>

using namespace agog;

namespace {

std::string error_message(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

Word rand_word(Rng& rng, int vars, const GroupRef& g, int len) {
  Word w(g);
  for (int i = 0; i < len; ++i) {
    if (g && rng.below(4) == 0) {
      w = w.mul(Word::constant(g, 1 + static_cast<int>(rng.below(g->order() - 1))));
    } else {
      w = w.mul(Word::variable(g, 1 + static_cast<int>(rng.below(vars)),
                               rng.range(1, 3) * (rng.coin() ? 1 : -1)));
    }
  }
  return w;
}

}  // namespace

TEST_CASE("word syntax: commutators, powers, parentheses, identity") {
  GroupRef c4 = build_cyclic(4);
  Word w = parse_word("[x1,x2]^2 * g3 * x1^-1", c4);
  Word x1 = Word::variable(c4, 1), x2 = Word::variable(c4, 2);
  Word expect = Word::commutator(x1, x2).pow(2).mul(Word::constant(c4, 3)).mul(x1.inv());
  CHECK(w == expect);

  CHECK(parse_word("1", nullptr).is_identity());
  CHECK(parse_word("  1  ", nullptr).is_identity());
  CHECK(parse_word("(x1*x2)^-1", nullptr) == x2.inv().mul(x1.inv()).mul(Word(nullptr)));
  CHECK(parse_word("x1^0", nullptr).is_identity());
  CHECK(parse_word("x1^2^3", nullptr) == Word::variable(nullptr, 1, 6));  // left-to-right powers
  CHECK(parse_word("[x1,[x2,x3]]", nullptr) ==
        Word::commutator(Word::variable(nullptr, 1),
                         Word::commutator(Word::variable(nullptr, 2), Word::variable(nullptr, 3))));
  CHECK(parse_word("x12", nullptr).max_var() == 12);
  CHECK(parse_word("g1*g2", c4) == Word::constant(c4, 3));
}

TEST_CASE("word syntax roundtrips through the printer") {
  GroupRef c4 = build_cyclic(4);
  CHECK(word_to_text(Word(nullptr)) == "1");
  CHECK(word_to_text(Word::variable(nullptr, 2, -1)) == "x2^-1");
  CHECK(word_to_text(parse_word("x1^2*g1*x2^-3", c4)) == "x1^2*g1*x2^-3");
  Rng rng(33);
  for (int trial = 0; trial < 200; ++trial) {
    const GroupRef& g = trial % 2 ? c4 : nullptr;
    Word w = rand_word(rng, 3, g, rng.below(8));
    CHECK(parse_word(word_to_text(w), g) == w);
  }
}

TEST_CASE("word syntax errors carry line and column positions") {
  GroupRef c4 = build_cyclic(4);
  CHECK(error_message([] { parse_word("x1**x2", nullptr); }).find("word:1:4") !=
        std::string::npos);
  CHECK(error_message([] { parse_word("x1 x2", nullptr); }).find(":1:4") != std::string::npos);
  CHECK(error_message([] { parse_word("g1", nullptr); }).find("coefficient group") !=
        std::string::npos);
  CHECK(error_message([&] { parse_word("g7", c4); }).find("out of range") != std::string::npos);
  CHECK(error_message([] { parse_word("x0", nullptr); }).find(">= 1") != std::string::npos);
  CHECK(error_message([] { parse_word("12", nullptr); }).find("empty word") != std::string::npos);
  CHECK(error_message([] { parse_word("(x1", nullptr); }).find("')'") != std::string::npos);
  CHECK(error_message([] { parse_word("[x1;x2]", nullptr); }).find("','") != std::string::npos);
  CHECK(error_message([] { parse_word("x1^", nullptr); }).find("exponent") != std::string::npos);
  CHECK(error_message([] { parse_word("", nullptr); }).find("expected a word") !=
        std::string::npos);
  CHECK_THROWS_AS(parse_word("x1^9999999", nullptr), Error);  // exponent size guard
}

TEST_CASE("group files: builtins, declared order, rename") {
  GroupRef g = parse_group_text("# a comment\ngroup c4 order 4\nbuiltin cyclic 4\n", "c4.grp");
  CHECK(g->name() == "c4");
  CHECK(g->order() == 4);
  CHECK(g->mul(3, 2) == 1);

  GroupRef s3 = parse_group_text("group s3 order 6\nbuiltin symmetric 3\n", "s3.grp");
  CHECK_FALSE(s3->is_abelian());

  CHECK(error_message([] {
          parse_group_text("group bad order 5\nbuiltin cyclic 4\n", "bad.grp");
        }).find("declares 5") != std::string::npos);
  CHECK_THROWS_AS(parse_group_text("group g order 4\nbuiltin wedge 4\n", "f.grp"), Error);
  CHECK_THROWS_AS(parse_group_text("group g order 4\n", "f.grp"), Error);
  CHECK_THROWS_AS(parse_group_text("order 4\ngroup g\nbuiltin cyclic 4\n", "f.grp"), Error);
}

TEST_CASE("group files: explicit tables and names") {
  std::string klein =
      "group klein order 4\n"
      "table\n"
      "0 1 2 3\n"
      "1 0 3 2\n"
      "2 3 0 1\n"
      "3 2 1 0\n"
      "names\n"
      "e a b ab\n";
  GroupRef g = parse_group_text(klein, "klein.grp");
  CHECK(g->order() == 4);
  CHECK(g->is_abelian());
  CHECK(g->element_name(0) == "e");
  CHECK(g->element_name(3) == "ab");
  for (int a = 1; a < 4; ++a) CHECK(g->element_order(a) == 2);

  // a table that is not a group is rejected
  CHECK_THROWS_AS(parse_group_text("group bad order 2\ntable\n0 1\n1 1\n", "bad.grp"), Error);
  // short table row
  CHECK_THROWS_AS(parse_group_text("group bad order 2\ntable\n0 1\n1\n", "bad.grp"), Error);
  // wrong names count
  CHECK_THROWS_AS(
      parse_group_text("group k order 2\ntable\n0 1\n1 0\nnames\ne\n", "bad.grp"), Error);
  // trailing garbage
  CHECK_THROWS_AS(
      parse_group_text("group c2 order 2\nbuiltin cyclic 2\nextra stuff\n", "bad.grp"), Error);
}

TEST_CASE("system files: fields, equations, laws clause") {
  GroupRef c2 = parse_group_text("group c2 order 2\nbuiltin cyclic 2\n", "c2.grp");
  auto resolver = [&](const std::string& name) -> GroupRef {
    return name == "c2" ? c2 : nullptr;
  };
  std::string text =
      "# squares over Z/2\n"
      "system gsys\n"
      "vars 2\n"
      "coeff c2\n"
      "variety abelian\n"
      "eq x1^2*g1\n"
      "eq [x1,x2]\n";
  SystemFile sys = parse_system_text(text, "gsys.sys", resolver);
  CHECK(sys.name == "gsys");
  CHECK(sys.vars == 2);
  CHECK(sys.coeff_name == "c2");
  CHECK(sys.coeff == c2);
  CHECK(sys.variety.tag == VarietyTag::abelian);
  REQUIRE(sys.equations.size() == 2);
  CHECK(sys.equations[0] == parse_word("x1^2*g1", c2));

  SystemFile none = parse_system_text(
      "system s\nvars 1\ncoeff none\nvariety nilpotent 2\neq x1^2\n", "s.sys", nullptr);
  CHECK_FALSE(none.coeff);
  CHECK(none.variety.tag == VarietyTag::nilpotent);
  CHECK(none.variety.nilpotency_class == 2);

  SystemFile laws = parse_system_text(
      "system l\nvars 2\ncoeff none\nvariety laws { [x1,x2]; x1^4 }\n", "l.sys", nullptr);
  CHECK(laws.variety.tag == VarietyTag::laws);
  REQUIRE(laws.variety.law_words.size() == 2);
  CHECK(laws.variety.law_words[1] == Word::variable(nullptr, 1, 4));
  CHECK(laws.equations.empty());
}

TEST_CASE("system files: errors") {
  GroupRef c2 = parse_group_text("group c2 order 2\nbuiltin cyclic 2\n", "c2.grp");
  auto resolver = [&](const std::string& name) -> GroupRef {
    return name == "c2" ? c2 : nullptr;
  };
  // unknown coefficient group
  CHECK(error_message([&] {
          parse_system_text("system s\nvars 1\ncoeff c9\nvariety all\n", "s.sys", resolver);
        }).find("not loaded") != std::string::npos);
  // equation uses an undeclared variable
  CHECK(error_message([&] {
          parse_system_text("system s\nvars 1\ncoeff none\nvariety all\neq x2\n", "s.sys",
                            resolver);
        }).find("declares 1") != std::string::npos);
  // word syntax error inside an equation names the file and line
  CHECK(error_message([&] {
          parse_system_text("system s\nvars 1\ncoeff none\nvariety all\neq x1^\n", "s.sys",
                            resolver);
        }).find("s.sys:5") != std::string::npos);
  // missing sections and bad variety
  CHECK_THROWS_AS(parse_system_text("system s\nvars 1\n", "s.sys", resolver), Error);
  CHECK_THROWS_AS(
      parse_system_text("system s\nvars 1\ncoeff none\nvariety weird\n", "s.sys", resolver),
      Error);
  CHECK_THROWS_AS(
      parse_system_text("system s\nvars 1\ncoeff none\nvariety nilpotent\n", "s.sys", resolver),
      Error);
  CHECK_THROWS_AS(
      parse_system_text("system s\nvars 0\ncoeff none\nvariety all\n", "s.sys", resolver), Error);
  // laws with constants are rejected
  CHECK_THROWS_AS(parse_system_text("system s\nvars 1\ncoeff c2\nvariety laws { g1 }\n", "s.sys",
                                    resolver),
                  Error);
}

TEST_CASE("embedding files") {
  GroupRef c2 = build_cyclic(2);
  GroupRef c4 = build_cyclic(4);
  GroupRef c2named = parse_group_text("group c2 order 2\nbuiltin cyclic 2\n", "c2.grp");
  GroupRef c4named = parse_group_text("group c4 order 4\nbuiltin cyclic 4\n", "c4.grp");

  GEmbedding emb = parse_embedding_text("embed c2 into c4\n0 -> 0\n1 -> 2\n", "e.emb", c2named,
                                        c4named);
  CHECK(emb.apply(1) == 2);
  CHECK(emb.verify());

  // header names must match the loaded groups
  CHECK_THROWS_AS(
      parse_embedding_text("embed other into c4\n0 -> 0\n1 -> 2\n", "e.emb", c2named, c4named),
      Error);
  // non-homomorphism
  CHECK_THROWS_AS(
      parse_embedding_text("embed c2 into c4\n0 -> 0\n1 -> 1\n", "e.emb", c2named, c4named),
      Error);
  // duplicate and missing sources
  CHECK_THROWS_AS(
      parse_embedding_text("embed c2 into c4\n0 -> 0\n0 -> 0\n", "e.emb", c2named, c4named),
      Error);
  CHECK_THROWS_AS(parse_embedding_text("embed c2 into c4\n0 -> 0\n", "e.emb", c2named, c4named),
                  Error);
  // range checks
  CHECK_THROWS_AS(
      parse_embedding_text("embed c2 into c4\n0 -> 0\n1 -> 9\n", "e.emb", c2named, c4named),
      Error);
}

TEST_CASE("missing files raise io errors") {
  CHECK_THROWS_AS(read_text_file("/nonexistent/definitely-missing.txt"), Error);
  try {
    read_text_file("/nonexistent/definitely-missing.txt");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::io_error);
  }
}
