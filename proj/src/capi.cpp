#include "agog.h"

#include "core/reports.hpp"

#include <cstdlib>
#include <cstring>
#include <string>

using namespace agog;

struct agog_session {
  GroupRef group;
  GroupRef group2;
  GroupRef coeff;
  std::optional<GEmbedding> embed;
  std::optional<GEmbedding> embed2;
  std::optional<SystemFile> system;
  std::string word;
  std::vector<int> point;
  CommonOpts opts;
  std::string error;
};

namespace {

template <typename Fn>
int guarded(agog_session* s, Fn&& fn) {
  if (!s) return 2;
  try {
    int code = fn();
    if (code == 0) s->error.clear();
    return code;
  } catch (const Error& e) {
    s->error = e.what();
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    s->error = e.what();
    return 2;
  }
}

char* copy_out(const std::string& text) {
  char* buf = static_cast<char*>(std::malloc(text.size() + 1));
  if (buf) std::memcpy(buf, text.c_str(), text.size() + 1);
  return buf;
}

const GroupRef& require(const GroupRef& g, const char* what) {
  if (!g) fail(ErrorCode::invalid_argument, std::string("load the ") + what + " group first");
  return g;
}

CmdResult dispatch(agog_session& s, const std::string& verb) {
  const std::optional<SystemFile>& sys = s.system;
  auto need_system = [&]() -> const SystemFile& {
    if (!sys) fail(ErrorCode::invalid_argument, "'" + verb + "' needs a system file (--system)");
    return *sys;
  };

  if (verb == "reduce") return cmd_reduce(s.coeff ? s.coeff : s.group, s.word);
  if (verb == "eval") return cmd_eval(s.group, s.coeff, s.embed, s.word, s.point);
  if (verb == "solve") return cmd_solve(need_system(), s.group, s.embed, s.opts);
  if (verb == "radical") return cmd_radical(need_system(), s.group, s.embed, s.word, s.opts);
  if (verb == "coordgroup") return cmd_coordgroup(need_system(), s.group, s.embed, s.opts);
  if (verb == "vclosure") return cmd_vclosure(need_system(), s.word);
  if (verb == "consistency") return cmd_consistency(need_system());
  if (verb == "witness") return cmd_witness(need_system(), s.word);
  if (verb == "verify-containment")
    return cmd_verify_containment(need_system(), s.group, s.embed, s.opts);
  if (verb == "compare")
    return cmd_compare(need_system(), s.group, s.embed, s.group2, s.embed2, s.opts);
  if (verb == "discrepancy") return cmd_discrepancy(need_system(), s.group, s.embed, s.opts);
  fail(ErrorCode::invalid_argument, "unknown verb '" + verb + "'");
}

}  // namespace

extern "C" {

agog_session* agog_session_new(void) { return new (std::nothrow) agog_session(); }

void agog_session_free(agog_session* s) { delete s; }

int agog_session_load_group(agog_session* s, const char* role, const char* path) {
  return guarded(s, [&]() {
    if (!role || !path) fail(ErrorCode::invalid_argument, "role and path must be given");
    GroupRef g = load_group_file(path);
    std::string r = role;
    if (r == "group") s->group = std::move(g);
    else if (r == "group2") s->group2 = std::move(g);
    else if (r == "coeff") s->coeff = std::move(g);
    else fail(ErrorCode::invalid_argument, "unknown group role '" + r + "'");
    return 0;
  });
}

int agog_session_load_embedding(agog_session* s, const char* role, const char* path) {
  return guarded(s, [&]() {
    if (!role || !path) fail(ErrorCode::invalid_argument, "role and path must be given");
    std::string r = role;
    if (r == "embed") {
      s->embed = load_embedding_file(path, require(s->coeff, "coefficient (--coeff)"),
                                     require(s->group, "model (--group)"));
    } else if (r == "embed2") {
      s->embed2 = load_embedding_file(path, require(s->coeff, "coefficient (--coeff)"),
                                      require(s->group2, "second model (--group2)"));
    } else {
      fail(ErrorCode::invalid_argument, "unknown embedding role '" + r + "'");
    }
    return 0;
  });
}

int agog_session_load_system(agog_session* s, const char* path) {
  return guarded(s, [&]() {
    if (!path) fail(ErrorCode::invalid_argument, "path must be given");
    GroupResolver resolver = [&](const std::string& name) -> GroupRef {
      for (const GroupRef& g : {s->coeff, s->group, s->group2})
        if (g && g->name() == name) return g;
      return nullptr;
    };
    s->system = load_system_file(path, resolver);
    return 0;
  });
}

int agog_session_set_word(agog_session* s, const char* word) {
  return guarded(s, [&]() {
    if (!word) fail(ErrorCode::invalid_argument, "word must be given");
    s->word = word;
    return 0;
  });
}

int agog_session_set_point(agog_session* s, const int* coords, int count) {
  return guarded(s, [&]() {
    if (count < 0 || (count > 0 && !coords))
      fail(ErrorCode::invalid_argument, "point coordinates must be given");
    s->point.assign(coords, coords + count);
    return 0;
  });
}

int agog_session_set_option(agog_session* s, const char* key, long long value) {
  return guarded(s, [&]() {
    if (!key) fail(ErrorCode::invalid_argument, "option key must be given");
    std::string k = key;
    if (k == "seed") {
      s->opts.seed = static_cast<uint64_t>(value);
    } else if (k == "budget") {
      if (value < 0) fail(ErrorCode::invalid_argument, "budget must be >= 0");
      s->opts.budget = value;
    } else if (k == "cap") {
      if (value < 1) fail(ErrorCode::invalid_argument, "cap must be >= 1");
      s->opts.cap = value;
    } else if (k == "max-len") {
      if (value < 0 || value > 1000) fail(ErrorCode::invalid_argument, "max-len must be in 0..1000");
      s->opts.max_len = static_cast<int>(value);
    } else if (k == "workers") {
      if (value < 1 || value > 64) fail(ErrorCode::invalid_argument, "workers must be in 1..64");
      s->opts.workers = static_cast<int>(value);
    } else {
      fail(ErrorCode::invalid_argument, "unknown option '" + k + "'");
    }
    return 0;
  });
}

int agog_session_run(agog_session* s, const char* verb, char** report) {
  if (report) *report = nullptr;
  return guarded(s, [&]() {
    if (!verb) fail(ErrorCode::invalid_argument, "verb must be given");
    CmdResult res = dispatch(*s, verb);
    if (report) {
      *report = copy_out(res.text);
      if (!*report) fail(ErrorCode::too_large, "out of memory copying the report");
    }
    if (res.exit_code == 0) s->error.clear();
    return res.exit_code;
  });
}

const char* agog_session_error(const agog_session* s) {
  return s ? s->error.c_str() : "null session";
}

void agog_buffer_free(char* buf) { std::free(buf); }

}  // extern "C"
