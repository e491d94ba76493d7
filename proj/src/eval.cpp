#include "formtopics/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <mutex>
#include <thread>

#include "formtopics/errors.hpp"
#include "formtopics/stats.hpp"

namespace formtopics {

namespace {

std::string fmt_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

struct FormSplit {
  std::vector<int> train_docs;
  std::vector<int> test_docs;
};

// Sample n_train form indices without replacement, then partition fields.
FormSplit split_forms(const std::vector<std::vector<int>>& form_docs, std::size_t n_train,
                      RandomSource& rng) {
  std::vector<std::size_t> order(form_docs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (std::size_t i = 0; i < n_train; ++i) {
    std::size_t j = i + rng.below(order.size() - i);
    std::swap(order[i], order[j]);
  }
  std::vector<bool> in_train(form_docs.size(), false);
  for (std::size_t i = 0; i < n_train; ++i) in_train[order[i]] = true;

  FormSplit split;
  for (std::size_t f = 0; f < form_docs.size(); ++f) {
    auto& side = in_train[f] ? split.train_docs : split.test_docs;
    side.insert(side.end(), form_docs[f].begin(), form_docs[f].end());
  }
  std::sort(split.train_docs.begin(), split.train_docs.end());
  std::sort(split.test_docs.begin(), split.test_docs.end());
  return split;
}

TrialResult run_one_trial(const std::vector<Document>& corpus, const TopicMap& topics,
                          const std::vector<Rule>& rules,
                          const std::vector<std::vector<int>>& form_docs,
                          const ExperimentConfig& cfg, std::size_t fraction_index, int trial_id) {
  double fraction = cfg.train_fractions[fraction_index];
  std::size_t n_forms = form_docs.size();
  std::size_t n_train =
      static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n_forms)));
  n_train = std::clamp<std::size_t>(n_train, 1, n_forms - 1);

  RandomSource rng(RandomSource::mix(RandomSource::mix(cfg.master_seed, fraction_index),
                                     static_cast<std::uint64_t>(trial_id)));

  // Degenerate splits (no trainable signal) are resampled, with a cap so a
  // broken corpus cannot loop forever.
  constexpr int kMaxResamples = 100;
  for (int attempt = 0; attempt < kMaxResamples; ++attempt) {
    FormSplit split = split_forms(form_docs, n_train, rng);
    if (split.train_docs.empty() || split.test_docs.empty()) {
      std::cerr << "trial " << trial_id << " fraction " << fraction
                << ": empty split side, resampling\n";
      continue;
    }

    std::vector<Document> train_docs;
    train_docs.reserve(split.train_docs.size());
    for (int doc_id : split.train_docs) train_docs.push_back(corpus[doc_id]);

    Dictionary dict;
    TfIdfModel tfidf;
    LsiModel lsi;
    try {
      dict = build_dictionary(train_docs);
      std::vector<BowVector> bows;
      bows.reserve(train_docs.size());
      for (const Document& doc : train_docs) bows.push_back(to_bow(doc.features, dict));
      tfidf = fit_tfidf(bows, dict);
      std::vector<TfIdfVector> weighted;
      weighted.reserve(bows.size());
      for (const BowVector& bow : bows) weighted.push_back(apply_tfidf(bow, tfidf));
      int k = std::min(cfg.k, default_concept_count(static_cast<int>(train_docs.size()),
                                                    dict.size()));
      lsi = fit_lsi(weighted, dict.size(), std::max(1, k));
    } catch (const DataError& e) {
      std::cerr << "trial " << trial_id << " fraction " << fraction << ": " << e.what()
                << ", resampling\n";
      continue;
    }

    SimilarityIndex index = build_similarity_index(train_docs, topics, dict, tfidf, lsi);

    // A rule is in play when some training field of its topic matches it:
    // the rule set a human would have derived from the training forms.
    std::vector<Rule> active_rules;
    for (const Rule& rule : rules) {
      for (const Document& doc : train_docs) {
        if (topics.at(doc.doc_id) == rule.topic && rule_matches(rule, doc.raw_attributes)) {
          active_rules.push_back(rule);
          break;
        }
      }
    }

    TrialResult result;
    result.trial_id = trial_id;
    result.fraction = fraction;
    result.counts.inferred = static_cast<int>(split.test_docs.size());

    std::vector<std::string> gold;
    std::map<InferenceMethod, std::vector<std::string>> predictions;
    for (InferenceMethod method : cfg.methods) predictions[method] = {};

    for (int doc_id : split.test_docs) {
      const Document& doc = corpus[doc_id];
      gold.push_back(topics.at(doc_id));
      std::set<std::string> candidates = match_rules(doc.raw_attributes, active_rules);
      if (candidates.empty()) ++result.counts.no_match;
      if (candidates.size() >= 2) ++result.counts.multiple_topic;

      for (InferenceMethod method : cfg.methods) {
        InferenceResult inferred;
        switch (method) {
          case InferenceMethod::nl:
            inferred = infer_nl(doc.features, index, cfg.threshold, rng);
            break;
          case InferenceMethod::rb:
            inferred = infer_rb(doc.raw_attributes, active_rules, rng);
            break;
          case InferenceMethod::rb_nl_n:
            inferred = infer_hybrid(doc.features, doc.raw_attributes, active_rules, index,
                                    HybridMode::no_match, cfg.threshold, rng);
            break;
          case InferenceMethod::rb_nl_m:
            inferred = infer_hybrid(doc.features, doc.raw_attributes, active_rules, index,
                                    HybridMode::multiple, cfg.threshold, rng);
            break;
          case InferenceMethod::rb_nl_b:
            inferred = infer_hybrid(doc.features, doc.raw_attributes, active_rules, index,
                                    HybridMode::both, cfg.threshold, rng);
            break;
          case InferenceMethod::random:
            inferred.topic = std::string(kRandomFillTopic);
            inferred.method = InferenceMethod::random;
            break;
        }
        predictions[method].push_back(inferred.topic);
      }
    }

    for (InferenceMethod method : cfg.methods) {
      result.accuracy[method] = accuracy(predictions[method], gold);
    }
    return result;
  }
  throw DataError("run_split_experiment: could not draw a usable split after " +
                  std::to_string(kMaxResamples) + " attempts");
}

}  // namespace

void ExperimentConfig::validate() const {
  for (double fraction : train_fractions) {
    if (!(fraction > 0.0 && fraction < 1.0)) {
      throw DataError("experiment config: train fractions must lie strictly between 0 and 1");
    }
  }
  if (train_fractions.empty()) throw DataError("experiment config: no train fractions");
  if (n_trials < 1) throw DataError("experiment config: n_trials must be >= 1");
  if (methods.empty()) throw DataError("experiment config: no methods configured");
  if (threshold < 0.0) throw DataError("experiment config: threshold must be >= 0");
}

std::vector<TrialResult> run_split_experiment(const std::vector<Document>& corpus,
                                              const TopicMap& topics,
                                              const std::vector<Rule>& rules,
                                              const ExperimentConfig& cfg) {
  cfg.validate();
  if (corpus.empty()) throw DataError("run_split_experiment: empty corpus");
  for (const Document& doc : corpus) {
    if (doc.page_id.empty()) {
      throw DataError("run_split_experiment: doc " + std::to_string(doc.doc_id) +
                      " has no page id");
    }
    auto it = topics.find(doc.doc_id);
    if (it == topics.end() || it->second.empty()) {
      throw DataError("run_split_experiment: doc " + std::to_string(doc.doc_id) +
                      " is unlabeled");
    }
  }

  // Forms in first-appearance order; fields of one form never straddle the split.
  std::vector<std::vector<int>> form_docs;
  std::map<std::string, std::size_t> form_index;
  for (const Document& doc : corpus) {
    auto [it, inserted] = form_index.try_emplace(doc.page_id, form_docs.size());
    if (inserted) form_docs.emplace_back();
    form_docs[it->second].push_back(doc.doc_id);
  }
  if (form_docs.size() < 2) {
    throw DataError("run_split_experiment: need at least 2 forms to split");
  }

  struct Task {
    std::size_t fraction_index;
    int trial_id;
  };
  std::vector<Task> tasks;
  for (std::size_t fi = 0; fi < cfg.train_fractions.size(); ++fi) {
    for (int t = 0; t < cfg.n_trials; ++t) tasks.push_back({fi, t});
  }

  std::vector<TrialResult> results(tasks.size());
  int jobs = std::max(1, cfg.jobs);
  if (jobs == 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      results[i] = run_one_trial(corpus, topics, rules, form_docs, cfg, tasks[i].fraction_index,
                                 tasks[i].trial_id);
    }
  } else {
    // Each trial owns its rng (derived from master_seed), so parallel and
    // serial runs produce identical results.
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    std::atomic<bool> failed{false};
    std::string error_message;
    std::mutex error_mutex;
    for (int w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        while (true) {
          std::size_t i = next.fetch_add(1);
          if (i >= tasks.size() || failed.load()) return;
          try {
            results[i] = run_one_trial(corpus, topics, rules, form_docs, cfg,
                                       tasks[i].fraction_index, tasks[i].trial_id);
          } catch (const std::exception& e) {
            std::lock_guard<std::mutex> lock(error_mutex);
            failed = true;
            error_message = e.what();
            return;
          }
        }
      });
    }
    for (std::thread& worker : workers) worker.join();
    if (failed) throw DataError("run_split_experiment: " + error_message);
  }
  return results;
}

double accuracy(const std::vector<std::string>& predictions, const std::vector<std::string>& gold) {
  if (predictions.size() != gold.size()) {
    throw std::invalid_argument("accuracy: prediction and gold lengths differ");
  }
  if (predictions.empty()) throw std::invalid_argument("accuracy: empty inputs");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    if (predictions[i] == gold[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(predictions.size());
}

PairedTTestResult paired_t_test(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("paired_t_test: length mismatch");
  std::size_t n = xs.size();
  if (n < 2) throw std::invalid_argument("paired_t_test: need at least 2 pairs");

  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean += xs[i] - ys[i];
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double d = xs[i] - ys[i] - mean;
    ss += d * d;
  }
  double sd = std::sqrt(ss / static_cast<double>(n - 1));

  PairedTTestResult result;
  result.degrees_of_freedom = static_cast<int>(n) - 1;
  if (sd == 0.0) {
    if (mean == 0.0) {
      result.t_statistic = 0.0;
      result.p_value = 1.0;
    } else {
      result.t_statistic = mean > 0 ? std::numeric_limits<double>::infinity()
                                    : -std::numeric_limits<double>::infinity();
      result.p_value = 0.0;
      result.exact_separation = true;
    }
    return result;
  }
  result.t_statistic = mean / (sd / std::sqrt(static_cast<double>(n)));
  result.p_value =
      stats::student_t_two_sided_p(result.t_statistic, static_cast<double>(result.degrees_of_freedom));
  return result;
}

void emit_reports(const std::vector<TrialResult>& results,
                  const std::vector<InferenceMethod>& methods,
                  const std::filesystem::path& out_dir) {
  if (results.empty()) throw DataError("emit_reports: no results");
  std::filesystem::create_directories(out_dir);

  std::vector<double> fractions;
  for (const TrialResult& result : results) {
    if (std::find(fractions.begin(), fractions.end(), result.fraction) == fractions.end()) {
      fractions.push_back(result.fraction);
    }
  }
  std::sort(fractions.begin(), fractions.end());

  auto open = [&](const char* name) {
    std::ofstream out(out_dir / name, std::ios::binary);
    if (!out) throw DataError("cannot write " + (out_dir / name).string());
    return out;
  };
  auto trials_at = [&](double fraction) {
    std::vector<const TrialResult*> rows;
    for (const TrialResult& result : results) {
      if (result.fraction == fraction) rows.push_back(&result);
    }
    std::sort(rows.begin(), rows.end(), [](const TrialResult* a, const TrialResult* b) {
      return a->trial_id < b->trial_id;
    });
    return rows;
  };

  {
    auto out = open("trials_raw.csv");
    out << "fraction,trial";
    for (InferenceMethod method : methods) out << ',' << method_name(method);
    out << ",inferred,no_match,multiple_topic\n";
    for (double fraction : fractions) {
      for (const TrialResult* row : trials_at(fraction)) {
        out << fmt_double(fraction) << ',' << row->trial_id;
        for (InferenceMethod method : methods) out << ',' << fmt_double(row->accuracy.at(method));
        out << ',' << row->counts.inferred << ',' << row->counts.no_match << ','
            << row->counts.multiple_topic << '\n';
      }
    }
  }

  {
    auto out = open("accuracy_by_fraction.csv");
    out << "fraction";
    for (InferenceMethod method : methods) out << ',' << method_name(method);
    out << '\n';
    for (double fraction : fractions) {
      auto rows = trials_at(fraction);
      out << fmt_double(fraction);
      for (InferenceMethod method : methods) {
        double sum = 0.0;
        for (const TrialResult* row : rows) sum += row->accuracy.at(method);
        out << ',' << fmt_double(sum / static_cast<double>(rows.size()));
      }
      out << '\n';
    }
  }

  {
    auto out = open("pvalues.csv");
    out << "fraction";
    for (std::size_t i = 0; i < methods.size(); ++i) {
      for (std::size_t j = i + 1; j < methods.size(); ++j) {
        out << ',' << method_name(methods[i]) << " & " << method_name(methods[j]);
      }
    }
    out << '\n';
    for (double fraction : fractions) {
      auto rows = trials_at(fraction);
      out << fmt_double(fraction);
      for (std::size_t i = 0; i < methods.size(); ++i) {
        for (std::size_t j = i + 1; j < methods.size(); ++j) {
          std::vector<double> xs, ys;
          for (const TrialResult* row : rows) {
            xs.push_back(row->accuracy.at(methods[i]));
            ys.push_back(row->accuracy.at(methods[j]));
          }
          if (xs.size() < 2) {
            out << ",";
            continue;
          }
          out << ',' << fmt_double(paired_t_test(xs, ys).p_value);
        }
      }
      out << '\n';
    }
  }

  {
    auto out = open("rb_counts.csv");
    out << "fraction,inferred,no_match,no_match_pct,multiple_topic,multiple_topic_pct\n";
    for (double fraction : fractions) {
      auto rows = trials_at(fraction);
      double inferred = 0.0, no_match = 0.0, multiple = 0.0;
      for (const TrialResult* row : rows) {
        inferred += row->counts.inferred;
        no_match += row->counts.no_match;
        multiple += row->counts.multiple_topic;
      }
      double n = static_cast<double>(rows.size());
      inferred /= n;
      no_match /= n;
      multiple /= n;
      out << fmt_double(fraction) << ',' << fmt_double(inferred) << ',' << fmt_double(no_match)
          << ',' << fmt_double(inferred > 0 ? no_match / inferred : 0.0) << ','
          << fmt_double(multiple) << ',' << fmt_double(inferred > 0 ? multiple / inferred : 0.0)
          << '\n';
    }
  }
}

}  // namespace formtopics
