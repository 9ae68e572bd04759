// Golden CLI cases: NAME.cmd holds the argument line and the expected exit
// code, NAME.json the expected standard output. @GOLDEN@ in arguments
// expands to the golden directory.
#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "sketchlab/cli.hpp"

namespace golden {

struct Case {
  std::string name;
  std::vector<std::string> args;
  int exit_code = 0;
  std::string expected;
};

struct Run {
  int exit_code;
  std::string out;
};

inline std::string dir() { return SKETCHLAB_GOLDEN_DIR; }

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::vector<Case> load() {
  std::vector<Case> out;
  for (const auto& e : std::filesystem::directory_iterator(dir())) {
    if (e.path().extension() != ".cmd") continue;
    Case c;
    c.name = e.path().stem().string();
    std::istringstream in(slurp(e.path()));
    std::string line;
    std::getline(in, line);
    std::istringstream words(line);
    for (std::string w; words >> w;) {
      for (auto at = w.find("@GOLDEN@"); at != std::string::npos; at = w.find("@GOLDEN@"))
        w.replace(at, 8, dir());
      c.args.push_back(w);
    }
    in >> c.exit_code;
    auto json = e.path();
    json.replace_extension(".json");
    c.expected = slurp(json);
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const Case& a, const Case& b) { return a.name < b.name; });
  return out;
}

inline Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = sketchlab::run_command(args, out, err);
  return {code, out.str()};
}

inline bool is_models(const Case& c) { return !c.args.empty() && c.args[0] == "models"; }

inline std::vector<std::string> with_workers(std::vector<std::string> args, int k) {
  args.push_back("--workers");
  args.push_back(std::to_string(k));
  return args;
}

}  // namespace golden
