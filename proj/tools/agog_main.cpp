// Command-line front end: flag parsing and file plumbing only; all
// mathematics happens behind the shared library's C interface.
#include "agog.h"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

namespace {

constexpr const char* kVerbs =
    "reduce, eval, solve, radical, coordgroup, vclosure, consistency, "
    "witness, verify-containment, compare, discrepancy";

int parse_point(const std::string& text, std::vector<int>& out) {
  size_t start = 0;
  while (start <= text.size()) {
    size_t comma = text.find(',', start);
    std::string piece =
        comma == std::string::npos ? text.substr(start) : text.substr(start, comma - start);
    if (piece.empty() || piece.find_first_not_of("0123456789") != std::string::npos ||
        piece.size() > 9) {
      std::cerr << "point must be a comma-separated list of element ids, got '" << text << "'\n";
      return 2;
    }
    out.push_back(std::stoi(piece));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return 0;
}

struct SessionDeleter {
  void operator()(agog_session* s) const { agog_session_free(s); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equations over groups: solution sets, radicals, coordinate groups,\n"
               "verbal closures with certificates, and nullstellensatz checks on\n"
               "finite models."};
  app.get_formatter()->column_width(28);

  std::string verb;
  app.add_option("verb", verb, std::string("one of: ") + kVerbs)->required();

  std::string group, group2, coeff, embed, embed2, system, word, point_text, out_path;
  app.add_option("--group", group, "model group file (H)");
  app.add_option("--group2", group2, "second model group file (compare)");
  app.add_option("--coeff", coeff, "coefficient group file (G)");
  app.add_option("--embed", embed, "embedding file: coeff into group");
  app.add_option("--embed2", embed2, "embedding file: coeff into group2");
  app.add_option("--system", system, "equation system file");
  app.add_option("--word", word, "word in the system's free product syntax");
  app.add_option("--point", point_text, "comma-separated element ids, x1 first");
  app.add_option("--out", out_path, "write the report to this file instead of stdout");

  long long seed = 0, budget = 200, cap = 10'000'000, max_len = 3, workers = 1;
  app.add_option("--seed", seed, "RNG seed for sampled checks (default 0)");
  app.add_option("--budget", budget, "sample count for verify-containment (default 200)");
  app.add_option("--cap", cap, "search/ball/closure budget (default 10000000)");
  app.add_option("--max-len", max_len, "word-ball radius for compare/discrepancy (default 3)");
  app.add_option("--workers", workers, "solver threads (default 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::unique_ptr<agog_session, SessionDeleter> session(agog_session_new());
  if (!session) {
    std::cerr << "could not create a session\n";
    return 2;
  }
  agog_session* s = session.get();

  auto step = [&](int rc) {
    if (rc != 0) {
      std::cerr << agog_session_error(s) << "\n";
      std::exit(rc);
    }
  };

  if (!coeff.empty()) step(agog_session_load_group(s, "coeff", coeff.c_str()));
  if (!group.empty()) step(agog_session_load_group(s, "group", group.c_str()));
  if (!group2.empty()) step(agog_session_load_group(s, "group2", group2.c_str()));
  if (!embed.empty()) step(agog_session_load_embedding(s, "embed", embed.c_str()));
  if (!embed2.empty()) step(agog_session_load_embedding(s, "embed2", embed2.c_str()));
  if (!system.empty()) step(agog_session_load_system(s, system.c_str()));
  if (!word.empty()) step(agog_session_set_word(s, word.c_str()));
  if (!point_text.empty()) {
    std::vector<int> coords;
    if (int rc = parse_point(point_text, coords)) return rc;
    step(agog_session_set_point(s, coords.data(), static_cast<int>(coords.size())));
  }
  step(agog_session_set_option(s, "seed", seed));
  step(agog_session_set_option(s, "budget", budget));
  step(agog_session_set_option(s, "cap", cap));
  step(agog_session_set_option(s, "max-len", max_len));
  step(agog_session_set_option(s, "workers", workers));

  char* report = nullptr;
  int rc = agog_session_run(s, verb.c_str(), &report);
  if (report) {
    if (out_path.empty()) {
      std::cout << report;
    } else {
      std::ofstream f(out_path, std::ios::binary);
      if (!f) {
        std::cerr << "cannot write to '" << out_path << "'\n";
        agog_buffer_free(report);
        return 2;
      }
      f << report;
    }
    agog_buffer_free(report);
  } else if (rc != 0) {
    std::cerr << agog_session_error(s) << "\n";
  }
  return rc;
}
