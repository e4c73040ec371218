// Text formats: word syntax, group files, system files, embedding files.
// Parse errors carry <where>:<line>:<col> positions; printers emit the
// canonical syntax that the parsers accept.
#pragma once

#include "core/finite_group.hpp"
#include "core/varieties.hpp"
#include "core/word.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace agog {

// Word syntax: `x<k>` variable, `g<k>` constant (k = element id), `^<int>`
// exponent, `*` concatenation, parentheses, `[a,b]` commutator, `1` identity.
Word parse_word(const std::string& text, const GroupRef& coeff,
                const std::string& where = "word", int line = 1);
std::string word_to_text(const Word& w);

// Group file: `group <name> order <m>`, then `builtin <kind> <param>` or
// `table` with m rows of m ids; optional `names` section with m tokens.
GroupRef parse_group_text(const std::string& content, const std::string& where);
GroupRef load_group_file(const std::string& path);

// System file: `system <name>`, `vars <n>`, `coeff <group-name>|none`,
// `variety all|abelian|nilpotent <c>|metabelian|laws { <word>; ... }`,
// then `eq <word>` lines.  The resolver maps the coeff name to a loaded group.
using GroupResolver = std::function<GroupRef(const std::string& name)>;

struct SystemFile {
  std::string name;
  int vars = 0;
  std::string coeff_name;  // empty when coeff is none
  GroupRef coeff;
  VarietySpec variety;
  std::vector<Word> equations;
};

SystemFile parse_system_text(const std::string& content, const std::string& where,
                             const GroupResolver& resolver);
SystemFile load_system_file(const std::string& path, const GroupResolver& resolver);

// Embedding file: `embed <G-name> into <H-name>` then |G| lines `i -> j`.
// The map is checked to be an injective homomorphism.
GEmbedding parse_embedding_text(const std::string& content, const std::string& where,
                                const GroupRef& source, const GroupRef& target);
GEmbedding load_embedding_file(const std::string& path, const GroupRef& source,
                               const GroupRef& target);

std::string read_text_file(const std::string& path);

}  // namespace agog
