#ifndef FORMTOPICS_TEST_SUPPORT_HPP
#define FORMTOPICS_TEST_SUPPORT_HPP

#include <algorithm>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#ifndef FIXTURE_DIR
#error "FIXTURE_DIR must be defined by the build"
#endif

namespace test_support {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(FIXTURE_DIR) / name;
}

inline std::map<std::string, int> multiset(const std::vector<std::string>& tokens) {
  std::map<std::string, int> out;
  for (const std::string& token : tokens) ++out[token];
  return out;
}

}  // namespace test_support

#endif
