#include "planted/acceptance.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

int main(int argc, char** argv) {
  planted::AcceptanceOptions options;
  options.golden_dir = PLANTED_GOLDEN_DIR;
  std::string suite = "all";
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--jobs" && i + 1 < argc) {
      options.jobs = std::atoi(argv[++i]);
    } else if (arg == "--golden" && i + 1 < argc) {
      options.golden_dir = argv[++i];
    } else {
      suite = arg;
    }
  }
  if (suite == "--write-golden") {
    for (const auto& c : planted::golden_cases()) {
      std::ofstream(options.golden_dir + "/" + c.file, std::ios::binary) << planted::golden_text(c);
      std::printf("wrote %s\n", c.file.c_str());
    }
    return 0;
  }
  int failed = 0;
  for (int id : planted::suite_criteria(suite)) {
    const planted::CriterionResult r = planted::run_criterion(id, options);
    std::printf("%s\n", planted::format_result(r).c_str());
    std::fflush(stdout);
    if (!r.pass) ++failed;
  }
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
