// Deterministic plain-text reports for every verb, plus the process exit
// code policy.  Reports echo their inputs in '#' header lines and keep one
// fact per body line so transcripts diff cleanly.
#pragma once

#include "core/geometry.hpp"
#include "core/nsatz.hpp"
#include "core/text.hpp"

#include <optional>
#include <string>
#include <vector>

namespace agog {

struct CommonOpts {
  uint64_t seed = 0;
  long long budget = 200;
  long long cap = 10'000'000;
  int max_len = 3;
  int workers = 1;
};

struct CmdResult {
  std::string text;
  int exit_code = 0;
};

// 0 success; 1 mathematical negative; 2 usage, parse, or input mismatch;
// 3 budget exceeded.
int exit_code_for(ErrorCode c);

EquationSystem system_of(const SystemFile& sys);

CmdResult cmd_reduce(const GroupRef& coeff, const std::string& word_text);
CmdResult cmd_eval(const GroupRef& model, const GroupRef& coeff,
                   const std::optional<GEmbedding>& emb, const std::string& word_text,
                   const std::vector<int>& point);
CmdResult cmd_solve(const SystemFile& sys, const GroupRef& model,
                    const std::optional<GEmbedding>& emb, const CommonOpts& opts);
CmdResult cmd_radical(const SystemFile& sys, const GroupRef& model,
                      const std::optional<GEmbedding>& emb, const std::string& word_text,
                      const CommonOpts& opts);
CmdResult cmd_coordgroup(const SystemFile& sys, const GroupRef& model,
                         const std::optional<GEmbedding>& emb, const CommonOpts& opts);
CmdResult cmd_vclosure(const SystemFile& sys, const std::string& word_text);
CmdResult cmd_consistency(const SystemFile& sys);
CmdResult cmd_witness(const SystemFile& sys, const std::string& word_text);
CmdResult cmd_verify_containment(const SystemFile& sys, const GroupRef& model,
                                 const std::optional<GEmbedding>& emb, const CommonOpts& opts);
CmdResult cmd_compare(const SystemFile& sys, const GroupRef& model,
                      const std::optional<GEmbedding>& emb, const GroupRef& model2,
                      const std::optional<GEmbedding>& emb2, const CommonOpts& opts);
CmdResult cmd_discrepancy(const SystemFile& sys, const GroupRef& model,
                          const std::optional<GEmbedding>& emb, const CommonOpts& opts);

}  // namespace agog
