#ifndef FORMTOPICS_EVAL_HPP
#define FORMTOPICS_EVAL_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "formtopics/inference.hpp"

namespace formtopics {

/// Repeated random-split protocol: per (fraction, trial), sample training
/// forms, derive the models and the active rules from them, score every
/// method on the remaining fields.
struct ExperimentConfig {
  std::vector<double> train_fractions = {0.1, 0.2, 0.3, 0.4, 0.5};
  int n_trials = 50;
  std::uint64_t master_seed = 0;
  std::vector<InferenceMethod> methods = {InferenceMethod::nl, InferenceMethod::rb,
                                          InferenceMethod::rb_nl_n, InferenceMethod::rb_nl_m,
                                          InferenceMethod::rb_nl_b};
  double threshold = 0.1;
  int k = 200;  // requested concept count; collapses to the rank when smaller
  int jobs = 1;

  void validate() const;  // fractions strictly in (0,1), n_trials >= 1
};

struct TrialCounts {
  int inferred = 0;        // test fields scored
  int no_match = 0;        // fields no active rule matched
  int multiple_topic = 0;  // fields matched by rules of >= 2 topics
};

struct TrialResult {
  int trial_id = 0;
  double fraction = 0.0;
  std::map<InferenceMethod, double> accuracy;
  TrialCounts counts;
};

struct PairedTTestResult {
  double t_statistic = 0.0;
  int degrees_of_freedom = 0;
  double p_value = 1.0;
  bool exact_separation = false;  // zero spread with a non-zero mean difference
};

/// Every document must carry a page id and a topic in `topics`. Splits are at
/// form (page) granularity. Rules are activated per trial: a rule takes part
/// only when some training field of its topic matches it, mirroring rule sets
/// derived by hand from the training forms.
std::vector<TrialResult> run_split_experiment(const std::vector<Document>& corpus,
                                              const TopicMap& topics,
                                              const std::vector<Rule>& rules,
                                              const ExperimentConfig& cfg);

/// Exact-string-match fraction.
double accuracy(const std::vector<std::string>& predictions, const std::vector<std::string>& gold);

/// Matched-pairs t test on d = xs - ys: t = mean(d) / (sd(d)/sqrt(n)) with the
/// sample (n-1) standard deviation; two-sided p from Student's t with n-1
/// degrees of freedom. All-zero d gives t = 0, p = 1.
PairedTTestResult paired_t_test(const std::vector<double>& xs, const std::vector<double>& ys);

/// Writes accuracy_by_fraction.csv, pvalues.csv, rb_counts.csv and
/// trials_raw.csv under out_dir. Deterministic bytes for a given input.
void emit_reports(const std::vector<TrialResult>& results,
                  const std::vector<InferenceMethod>& methods,
                  const std::filesystem::path& out_dir);

}  // namespace formtopics

#endif
