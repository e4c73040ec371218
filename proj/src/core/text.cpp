#include "core/text.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace agog {

namespace {

[[noreturn]] void parse_fail(const std::string& where, int line, const std::string& msg) {
  fail(ErrorCode::parse_error, where + ":" + std::to_string(line) + ": " + msg);
}

// ---------------------------------------------------------------------------
// word syntax
// ---------------------------------------------------------------------------

class WordParser {
public:
  WordParser(const std::string& text, GroupRef coeff, std::string where, int line)
      : s_(text), coeff_(std::move(coeff)), where_(std::move(where)), line_(line) {}

  Word parse() {
    Word w = product();
    skip_ws();
    if (pos_ < s_.size()) err(pos_, std::string("unexpected '") + s_[pos_] + "' after word");
    return w;
  }

private:
  [[noreturn]] void err(size_t at, const std::string& msg) {
    fail(ErrorCode::parse_error, where_ + ":" + std::to_string(line_) + ":" +
                                     std::to_string(at + 1) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }

  bool peek_is(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  void expect(char c, const std::string& what) {
    skip_ws();
    if (pos_ >= s_.size()) err(pos_, "expected '" + std::string(1, c) + "' " + what);
    if (s_[pos_] != c)
      err(pos_, "expected '" + std::string(1, c) + "' " + what + ", found '" +
                    std::string(1, s_[pos_]) + "'");
    ++pos_;
  }

  Word product() {
    Word acc = factor();
    while (peek_is('*')) {
      ++pos_;
      acc = acc.mul(factor());
    }
    return acc;
  }

  Word factor() {
    Word base = atom();
    while (peek_is('^')) {
      ++pos_;
      base = base.pow(exponent());
    }
    return base;
  }

  Word atom() {
    skip_ws();
    if (pos_ >= s_.size()) err(pos_, "expected a word");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Word w = product();
      expect(')', "to close '('");
      return w;
    }
    if (c == '[') {
      ++pos_;
      Word a = product();
      expect(',', "between commutator arguments");
      Word b = product();
      expect(']', "to close '['");
      return Word::commutator(a, b);
    }
    if (c == 'x') {
      size_t at = pos_++;
      long long k = index_digits(at, "variable index after 'x'");
      if (k < 1) err(at, "variable index must be >= 1");
      return Word::variable(coeff_, static_cast<int>(k));
    }
    if (c == 'g') {
      size_t at = pos_++;
      long long k = index_digits(at, "element id after 'g'");
      if (!coeff_)
        err(at, "coefficient letter 'g" + std::to_string(k) + "' requires a coefficient group");
      if (k >= coeff_->order())
        err(at, "element id g" + std::to_string(k) + " out of range for group '" +
                    coeff_->name() + "' of order " + std::to_string(coeff_->order()));
      return Word::constant(coeff_, static_cast<int>(k));
    }
    if (c == '1') {
      if (pos_ + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])))
        err(pos_, "unexpected number; '1' denotes the empty word");
      ++pos_;
      return Word(coeff_);
    }
    err(pos_, std::string("unexpected character '") + c + "'");
  }

  // digits immediately following an 'x'/'g' letter (no whitespace between)
  long long index_digits(size_t at, const std::string& what) {
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
      err(at, "expected " + what);
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ - start > 9) err(start, "index too large");
    return std::stoll(s_.substr(start, pos_ - start));
  }

  Int exponent() {
    skip_ws();
    size_t start = pos_;
    if (pos_ < s_.size() && s_[pos_] == '-') ++pos_;
    size_t digits = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == digits) err(start, "expected an integer exponent after '^'");
    if (pos_ - digits > 6) err(start, "exponent too large");
    return Int(s_.substr(start, pos_ - start));
  }

  const std::string& s_;
  size_t pos_ = 0;
  GroupRef coeff_;
  std::string where_;
  int line_;
};

// ---------------------------------------------------------------------------
// line-oriented file scanning
// ---------------------------------------------------------------------------

std::string strip_comment(const std::string& line) {
  auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

struct SourceLine {
  int number;
  std::string text;  // trimmed, comment-free, nonempty
};

std::vector<SourceLine> content_lines(const std::string& content) {
  std::vector<SourceLine> out;
  std::istringstream in(content);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    std::string text = trim(strip_comment(raw));
    if (!text.empty()) out.push_back({number, text});
  }
  return out;
}

std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

long long parse_count(const std::string& tok, const std::string& where, int line,
                      const std::string& what) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos || tok.size() > 9)
    parse_fail(where, line, "expected " + what + ", found '" + tok + "'");
  return std::stoll(tok);
}

// Scanning cursor over the meaningful lines of a file.
struct LineCursor {
  const std::vector<SourceLine>& lines;
  const std::string& where;
  size_t at = 0;

  bool done() const { return at >= lines.size(); }
  const SourceLine& peek() const { return lines[at]; }
  const SourceLine& next() { return lines[at++]; }
  int last_line() const { return lines.empty() ? 1 : lines.back().number; }

  [[noreturn]] void fail_here(const std::string& msg) const {
    parse_fail(where, done() ? last_line() : peek().number, msg);
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// words
// ---------------------------------------------------------------------------

Word parse_word(const std::string& text, const GroupRef& coeff, const std::string& where,
                int line) {
  return WordParser(text, coeff, where, line).parse();
}

std::string word_to_text(const Word& w) {
  if (w.is_identity()) return "1";
  std::string out;
  for (size_t i = 0; i < w.syllables().size(); ++i) {
    const Syllable& s = w.syllables()[i];
    if (i) out += "*";
    if (s.is_var()) {
      out += "x" + std::to_string(s.var);
      if (s.exp != 1) out += "^" + s.exp.str();
    } else {
      out += "g" + std::to_string(s.elem);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// group files
// ---------------------------------------------------------------------------

namespace {

GroupRef rebuild_named(const GroupRef& g, const std::string& name) {
  int m = g->order();
  std::vector<int> table(static_cast<size_t>(m) * m);
  std::vector<std::string> names(m);
  for (int a = 0; a < m; ++a) {
    names[a] = g->element_name(a);
    for (int b = 0; b < m; ++b) table[static_cast<size_t>(a) * m + b] = g->mul(a, b);
  }
  return FiniteGroup::from_table(name, m, std::move(table), std::move(names));
}

GroupRef build_builtin(const std::string& kind, long long param, const std::string& where,
                       int line) {
  int p = static_cast<int>(param);
  if (kind == "cyclic") return build_cyclic(p);
  if (kind == "dihedral") return build_dihedral(p);
  if (kind == "symmetric") return build_symmetric(p);
  if (kind == "heisenberg") return build_heisenberg_mod(p);
  parse_fail(where, line, "unknown builtin group kind '" + kind + "'");
}

}  // namespace

GroupRef parse_group_text(const std::string& content, const std::string& where) {
  auto lines = content_lines(content);
  LineCursor cur{lines, where};

  if (cur.done()) cur.fail_here("expected 'group <name> order <m>'");
  const SourceLine& head = cur.next();
  auto ht = tokens_of(head.text);
  if (ht.size() != 4 || ht[0] != "group" || ht[2] != "order")
    parse_fail(where, head.number, "expected 'group <name> order <m>'");
  std::string name = ht[1];
  long long declared = parse_count(ht[3], where, head.number, "a group order");
  if (declared < 1 || declared > kDefaultOrderCap)
    parse_fail(where, head.number,
               "group order must be between 1 and " + std::to_string(kDefaultOrderCap));

  if (cur.done()) cur.fail_here("expected 'builtin <kind> <param>' or 'table'");
  const SourceLine& body = cur.next();
  auto bt = tokens_of(body.text);

  GroupRef g;
  if (bt.size() == 3 && bt[0] == "builtin") {
    long long param = parse_count(bt[2], where, body.number, "a builtin parameter");
    g = build_builtin(bt[1], param, where, body.number);
    if (g->order() != declared)
      parse_fail(where, body.number,
                 "builtin " + bt[1] + " " + bt[2] + " has order " + std::to_string(g->order()) +
                     ", but the header declares " + std::to_string(declared));
    g = rebuild_named(g, name);
  } else if (bt.size() == 1 && bt[0] == "table") {
    int m = static_cast<int>(declared);
    std::vector<int> table;
    table.reserve(static_cast<size_t>(m) * m);
    for (int r = 0; r < m; ++r) {
      if (cur.done()) cur.fail_here("expected " + std::to_string(m) + " table rows");
      const SourceLine& row = cur.next();
      auto rt = tokens_of(row.text);
      if (static_cast<int>(rt.size()) != m)
        parse_fail(where, row.number,
                   "table row has " + std::to_string(rt.size()) + " entries, expected " +
                       std::to_string(m));
      for (const std::string& tok : rt)
        table.push_back(static_cast<int>(parse_count(tok, where, row.number, "an element id")));
    }
    g = FiniteGroup::from_table(name, m, std::move(table));
  } else {
    parse_fail(where, body.number, "expected 'builtin <kind> <param>' or 'table'");
  }

  // optional names section: m whitespace-separated tokens
  if (!cur.done() && tokens_of(cur.peek().text)[0] == "names") {
    const SourceLine& nl = cur.next();
    auto first = tokens_of(nl.text);
    std::vector<std::string> names(first.begin() + 1, first.end());
    while (static_cast<long long>(names.size()) < declared && !cur.done()) {
      auto more = tokens_of(cur.next().text);
      names.insert(names.end(), more.begin(), more.end());
    }
    if (static_cast<long long>(names.size()) != declared)
      parse_fail(where, nl.number,
                 "names section has " + std::to_string(names.size()) + " entries, expected " +
                     std::to_string(declared));
    int m = g->order();
    std::vector<int> table(static_cast<size_t>(m) * m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) table[static_cast<size_t>(a) * m + b] = g->mul(a, b);
    g = FiniteGroup::from_table(name, m, std::move(table), std::move(names));
  }

  if (!cur.done()) cur.fail_here("unexpected content after group definition");
  return g;
}

GroupRef load_group_file(const std::string& path) {
  return parse_group_text(read_text_file(path), path);
}

// ---------------------------------------------------------------------------
// system files
// ---------------------------------------------------------------------------

namespace {

VarietySpec parse_variety_clause(const std::string& rest, const std::string& where, int line) {
  auto toks = tokens_of(rest);
  if (toks.empty()) parse_fail(where, line, "expected a variety after 'variety'");
  const std::string& kind = toks[0];
  if (kind == "all") {
    if (toks.size() != 1) parse_fail(where, line, "'variety all' takes no arguments");
    return VarietySpec::All();
  }
  if (kind == "abelian") {
    if (toks.size() != 1) parse_fail(where, line, "'variety abelian' takes no arguments");
    return VarietySpec::Abelian();
  }
  if (kind == "metabelian") {
    if (toks.size() != 1) parse_fail(where, line, "'variety metabelian' takes no arguments");
    return VarietySpec::Metabelian();
  }
  if (kind == "nilpotent") {
    if (toks.size() != 2) parse_fail(where, line, "expected 'variety nilpotent <c>'");
    long long c = parse_count(toks[1], where, line, "a nilpotency class");
    if (c < 1 || c > 100) parse_fail(where, line, "nilpotency class must be between 1 and 100");
    return VarietySpec::Nilpotent(static_cast<int>(c));
  }
  if (kind == "laws") {
    size_t open = rest.find('{');
    size_t close = rest.rfind('}');
    if (open == std::string::npos || close == std::string::npos || close < open)
      parse_fail(where, line, "expected 'variety laws { <word>; ... }' on one line");
    if (trim(rest.substr(close + 1)) != "")
      parse_fail(where, line, "unexpected content after '}'");
    std::string inner = rest.substr(open + 1, close - open - 1);
    std::vector<Word> laws;
    size_t start = 0;
    while (start <= inner.size()) {
      size_t semi = inner.find(';', start);
      std::string piece = trim(semi == std::string::npos ? inner.substr(start)
                                                         : inner.substr(start, semi - start));
      if (!piece.empty()) laws.push_back(parse_word(piece, nullptr, where, line));
      if (semi == std::string::npos) break;
      start = semi + 1;
    }
    if (laws.empty()) parse_fail(where, line, "'variety laws' needs at least one law");
    return VarietySpec::Laws(std::move(laws));
  }
  parse_fail(where, line, "unknown variety '" + kind + "'");
}

}  // namespace

SystemFile parse_system_text(const std::string& content, const std::string& where,
                             const GroupResolver& resolver) {
  auto lines = content_lines(content);
  LineCursor cur{lines, where};
  SystemFile sys;

  if (cur.done()) cur.fail_here("expected 'system <name>'");
  {
    const SourceLine& l = cur.next();
    auto t = tokens_of(l.text);
    if (t.size() != 2 || t[0] != "system") parse_fail(where, l.number, "expected 'system <name>'");
    sys.name = t[1];
  }

  if (cur.done()) cur.fail_here("expected 'vars <n>'");
  {
    const SourceLine& l = cur.next();
    auto t = tokens_of(l.text);
    if (t.size() != 2 || t[0] != "vars") parse_fail(where, l.number, "expected 'vars <n>'");
    long long n = parse_count(t[1], where, l.number, "a variable count");
    if (n < 1 || n > 64) parse_fail(where, l.number, "vars must be between 1 and 64");
    sys.vars = static_cast<int>(n);
  }

  if (cur.done()) cur.fail_here("expected 'coeff <group-name>' or 'coeff none'");
  {
    const SourceLine& l = cur.next();
    auto t = tokens_of(l.text);
    if (t.size() != 2 || t[0] != "coeff")
      parse_fail(where, l.number, "expected 'coeff <group-name>' or 'coeff none'");
    if (t[1] != "none") {
      sys.coeff_name = t[1];
      sys.coeff = resolver ? resolver(t[1]) : nullptr;
      if (!sys.coeff)
        parse_fail(where, l.number,
                   "coefficient group '" + t[1] + "' is not loaded; pass its group file");
      if (sys.coeff->name() != t[1])
        parse_fail(where, l.number, "coefficient group '" + t[1] + "' resolved to a group named '" +
                                        sys.coeff->name() + "'");
    }
  }

  if (cur.done()) cur.fail_here("expected 'variety <kind>'");
  {
    const SourceLine& l = cur.next();
    auto t = tokens_of(l.text);
    if (t.empty() || t[0] != "variety") parse_fail(where, l.number, "expected 'variety <kind>'");
    sys.variety = parse_variety_clause(trim(l.text.substr(7)), where, l.number);
  }

  while (!cur.done()) {
    const SourceLine& l = cur.next();
    if (l.text.rfind("eq", 0) != 0 || (l.text.size() > 2 && l.text[2] != ' ' && l.text[2] != '\t'))
      parse_fail(where, l.number, "expected 'eq <word>'");
    std::string body = trim(l.text.substr(2));
    if (body.empty()) parse_fail(where, l.number, "expected a word after 'eq'");
    Word w = parse_word(body, sys.coeff, where, l.number);
    if (w.max_var() > sys.vars)
      parse_fail(where, l.number,
                 "equation uses x" + std::to_string(w.max_var()) + " but the system declares " +
                     std::to_string(sys.vars) + " variables");
    sys.equations.push_back(std::move(w));
  }
  return sys;
}

SystemFile load_system_file(const std::string& path, const GroupResolver& resolver) {
  return parse_system_text(read_text_file(path), path, resolver);
}

// ---------------------------------------------------------------------------
// embedding files
// ---------------------------------------------------------------------------

GEmbedding parse_embedding_text(const std::string& content, const std::string& where,
                                const GroupRef& source, const GroupRef& target) {
  if (!source || !target)
    fail(ErrorCode::invalid_argument, "embedding files need both a source and a target group");
  auto lines = content_lines(content);
  LineCursor cur{lines, where};

  if (cur.done()) cur.fail_here("expected 'embed <G-name> into <H-name>'");
  const SourceLine& head = cur.next();
  auto ht = tokens_of(head.text);
  if (ht.size() != 4 || ht[0] != "embed" || ht[2] != "into")
    parse_fail(where, head.number, "expected 'embed <G-name> into <H-name>'");
  if (ht[1] != source->name())
    fail(ErrorCode::embedding_mismatch, where + ":" + std::to_string(head.number) +
                                            ": embedding source '" + ht[1] +
                                            "' does not match group '" + source->name() + "'");
  if (ht[3] != target->name())
    fail(ErrorCode::embedding_mismatch, where + ":" + std::to_string(head.number) +
                                            ": embedding target '" + ht[3] +
                                            "' does not match group '" + target->name() + "'");

  GEmbedding emb;
  emb.source = source;
  emb.target = target;
  emb.map.assign(source->order(), -1);
  for (int i = 0; i < source->order(); ++i) {
    if (cur.done())
      cur.fail_here("expected " + std::to_string(source->order()) + " lines 'i -> j'");
    const SourceLine& l = cur.next();
    auto t = tokens_of(l.text);
    if (t.size() != 3 || t[1] != "->") parse_fail(where, l.number, "expected '<i> -> <j>'");
    long long a = parse_count(t[0], where, l.number, "a source element id");
    long long b = parse_count(t[2], where, l.number, "a target element id");
    if (a >= source->order())
      parse_fail(where, l.number, "source element " + t[0] + " out of range");
    if (b >= target->order())
      parse_fail(where, l.number, "target element " + t[2] + " out of range");
    if (emb.map[static_cast<size_t>(a)] != -1)
      parse_fail(where, l.number, "source element " + t[0] + " mapped twice");
    emb.map[static_cast<size_t>(a)] = static_cast<int>(b);
  }
  if (!cur.done()) cur.fail_here("unexpected content after embedding lines");
  for (int i = 0; i < source->order(); ++i)
    if (emb.map[i] == -1)
      parse_fail(where, cur.last_line(), "source element " + std::to_string(i) + " has no image");

  std::pair<int, int> bad;
  if (!emb.verify(&bad))
    fail(ErrorCode::embedding_mismatch,
         where + ": not an injective homomorphism (fails on elements " +
             std::to_string(bad.first) + ", " + std::to_string(bad.second) + ")");
  return emb;
}

GEmbedding load_embedding_file(const std::string& path, const GroupRef& source,
                               const GroupRef& target) {
  return parse_embedding_text(read_text_file(path), path, source, target);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io_error, "cannot open file '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  if (in.bad()) fail(ErrorCode::io_error, "cannot read file '" + path + "'");
  return out.str();
}

}  // namespace agog
