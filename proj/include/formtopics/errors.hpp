#ifndef FORMTOPICS_ERRORS_HPP
#define FORMTOPICS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace formtopics {

/// Raised for bad input data: unparsable files, violated file invariants,
/// unresolvable locators, degenerate corpora. The CLI maps these to exit code 2.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// pick_value: the databank has no pool for the requested topic.
struct NoDatabankEntry : DataError {
  explicit NoDatabankEntry(const std::string& topic)
      : DataError("no databank entry for topic '" + topic + "'"), topic(topic) {}
  std::string topic;
};

/// pick_value: the pool for the topic has been fully consumed.
struct PoolExhausted : DataError {
  explicit PoolExhausted(const std::string& topic)
      : DataError("databank pool exhausted for topic '" + topic + "'"), topic(topic) {}
  std::string topic;
};

}  // namespace formtopics

#endif
