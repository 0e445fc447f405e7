// Prints one PASS/FAIL line per acceptance criterion and exits nonzero on any failure.
// Usage: recordlab_acceptance [path-to-recordlab]

#include "validate.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>
#include <sys/wait.h>
#include <vector>

using namespace recordlab::cli;

namespace {

CriterionResult run_cli_validate(const std::string& exe) {
  CriterionResult r;
  r.id = 11;
  r.title = "recordlab validate";
  auto t0 = std::chrono::steady_clock::now();
  std::string cmd = "\"" + exe + "\" validate 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) {
    r.detail = "could not start " + exe;
    return r;
  }
  std::array<char, 512> buf{};
  long pass_lines = 0;
  std::string last;
  while (std::fgets(buf.data(), buf.size(), p)) {
    std::string line = buf.data();
    if (line.find(" PASS ") != std::string::npos) ++pass_lines;
    if (!line.empty() && line[0] != ' ') last = line;
  }
  int status = pclose(p);
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.pass = code == 0 && pass_lines == kCriterionCount;
  r.detail = "exit " + std::to_string(code) + ", " + std::to_string(pass_lines) + "/" +
             std::to_string(kCriterionCount) + " criteria passed";
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string exe = argc > 1 ? argv[1] : "recordlab";
  ValidateOptions opt;
  std::vector<CriterionResult> rs = run_validation(opt, {}, std::cout);
  rs.push_back(run_cli_validate(exe));
  std::cout << format_line(rs.back()) << '\n';
  int failed = 0;
  for (const CriterionResult& r : rs) failed += r.pass ? 0 : 1;
  std::cout << (failed == 0 ? "acceptance: all 11 criteria passed" : "acceptance: " + std::to_string(failed) + " failed")
            << '\n';
  return failed == 0 ? 0 : 1;
}
