// formtopics: identify the semantic topics of web-form input fields.
//
// Subcommands: extract, train, label, infer, eval. Exit codes: 0 success,
// 1 usage error, 2 data error.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "formtopics/corpus.hpp"
#include "formtopics/errors.hpp"
#include "formtopics/eval.hpp"
#include "formtopics/extract.hpp"
#include "formtopics/inference.hpp"
#include "formtopics/labeler.hpp"
#include "formtopics/semantic.hpp"

namespace fs = std::filesystem;
using formtopics::DataError;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

// Flat config file; flags override file values, file values override defaults.
struct ConfigFile {
  nlohmann::json values = nlohmann::json::object();

  static ConfigFile load(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot read config " + path.string());
    ConfigFile cfg;
    try {
      in >> cfg.values;
    } catch (const nlohmann::json::parse_error& e) {
      throw DataError(path.string() + ": " + e.what());
    }
    if (!cfg.values.is_object()) throw DataError(path.string() + ": config must be a flat object");
    return cfg;
  }

  template <typename T>
  void fill(const CLI::Option* opt, const std::string& key, T& value) const {
    if (opt != nullptr && opt->count() > 0) return;  // flag wins
    auto it = values.find(key);
    if (it == values.end()) return;
    try {
      value = it->get<T>();
    } catch (const nlohmann::json::exception& e) {
      throw DataError("config key '" + key + "': " + e.what());
    }
  }
};

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

formtopics::ExtractionConfig extraction_config(const ConfigFile& cfg, const CLI::Option* attr_opt,
                                               std::string attrs, const CLI::Option* tag_opt,
                                               std::string tags, const CLI::Option* iter_opt,
                                               int max_iterations, const CLI::Option* stop_opt,
                                               std::string stopwords) {
  formtopics::ExtractionConfig out;
  std::vector<std::string> attr_list = out.attribute_list;
  std::vector<std::string> tag_list = out.tag_list;
  std::vector<std::string> stop_list;
  if (attr_opt && attr_opt->count()) attr_list = split_csv(attrs);
  else cfg.fill(nullptr, "attribute_list", attr_list);
  if (tag_opt && tag_opt->count()) tag_list = split_csv(tags);
  else cfg.fill(nullptr, "tag_list", tag_list);
  cfg.fill(iter_opt, "max_iterations", max_iterations);
  if (stop_opt && stop_opt->count()) stop_list = split_csv(stopwords);
  else cfg.fill(nullptr, "stopwords", stop_list);
  out.attribute_list = std::move(attr_list);
  out.tag_list = std::move(tag_list);
  out.max_iterations = max_iterations;
  out.stopwords = std::set<std::string>(stop_list.begin(), stop_list.end());
  out.validate();
  return out;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<fs::path> expand_html_inputs(const std::vector<std::string>& inputs) {
  std::vector<fs::path> files;
  for (const std::string& input : inputs) {
    fs::path path(input);
    if (fs::is_directory(path)) {
      std::vector<fs::path> found;
      for (const auto& entry : fs::directory_iterator(path)) {
        if (!entry.is_regular_file()) continue;
        auto ext = entry.path().extension().string();
        if (ext == ".html" || ext == ".htm") found.push_back(entry.path());
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else if (fs::exists(path)) {
      files.push_back(path);
    } else {
      throw DataError("no such file or directory: " + input);
    }
  }
  return files;
}

struct TrainedModels {
  formtopics::Dictionary dict;
  formtopics::TfIdfModel tfidf;
  formtopics::LsiModel lsi;
};

TrainedModels train_models(const std::vector<formtopics::Document>& corpus, int k) {
  TrainedModels models;
  models.dict = formtopics::build_dictionary(corpus);
  std::vector<formtopics::BowVector> bows;
  bows.reserve(corpus.size());
  for (const auto& doc : corpus) bows.push_back(formtopics::to_bow(doc.features, models.dict));
  models.tfidf = formtopics::fit_tfidf(bows, models.dict);
  std::vector<formtopics::TfIdfVector> weighted;
  weighted.reserve(bows.size());
  for (const auto& bow : bows) weighted.push_back(formtopics::apply_tfidf(bow, models.tfidf));
  int capped = std::min(k, formtopics::default_concept_count(static_cast<int>(corpus.size()),
                                                             models.dict.size()));
  models.lsi = formtopics::fit_lsi(weighted, models.dict.size(), std::max(1, capped));
  return models;
}

TrainedModels load_models(const fs::path& model_dir) {
  TrainedModels models;
  models.dict = formtopics::load_dictionary(model_dir / "dictionary.json");
  models.tfidf = formtopics::load_tfidf(model_dir / "tfidf.json");
  models.lsi = formtopics::load_lsi_model(model_dir / "model.lsi");
  if (models.tfidf.term_count() != models.dict.size() ||
      models.lsi.term_count() != models.dict.size()) {
    throw DataError(model_dir.string() + ": artifacts disagree on vocabulary size");
  }
  return models;
}

std::string random_fill_string(formtopics::RandomSource& rng) {
  static constexpr char kAlphabet[] = "abcdefghijklmnopqrstuvwxyz0123456789";
  std::string out;
  for (int i = 0; i < 8; ++i) out.push_back(kAlphabet[rng.below(36)]);
  return out;
}

// ---------------------------------------------------------------------------

int cmd_extract(const std::vector<std::string>& inputs, const fs::path& out_path,
                const formtopics::ExtractionConfig& extraction) {
  std::vector<fs::path> files = expand_html_inputs(inputs);
  if (files.empty()) throw DataError("no HTML files among the inputs");

  std::vector<formtopics::Document> corpus;
  if (fs::exists(out_path)) corpus = formtopics::load_corpus(out_path);
  std::size_t before = corpus.size();

  for (const fs::path& file : files) {
    auto page = formtopics::DomDocument::parse(read_file(file));
    auto fields = formtopics::extract_form_fields(page, file.string(), extraction);
    for (auto& [ref, features] : fields) {
      formtopics::Document doc;
      doc.doc_id = static_cast<int>(corpus.size());
      doc.page_id = ref.page_id;
      doc.element_path = ref.element_path;
      doc.raw_attributes = ref.raw_attributes;
      doc.features = std::move(features);
      corpus.push_back(std::move(doc));
    }
  }
  formtopics::save_corpus(corpus, out_path);
  std::cout << "extracted " << (corpus.size() - before) << " field(s) from " << files.size()
            << " page(s); corpus now holds " << corpus.size() << " document(s)\n";
  return kExitOk;
}

int cmd_train(const fs::path& corpus_path, const fs::path& out_dir, int k) {
  auto corpus = formtopics::load_corpus(corpus_path);
  if (corpus.empty()) throw DataError("corpus is empty, nothing to train on");
  TrainedModels models = train_models(corpus, k);
  fs::create_directories(out_dir);
  formtopics::save_dictionary(models.dict, out_dir / "dictionary.json");
  formtopics::save_tfidf(models.tfidf, out_dir / "tfidf.json");
  formtopics::save_lsi_model(models.lsi, out_dir / "model.lsi");
  std::cout << "trained on " << corpus.size() << " document(s): " << models.dict.size()
            << " terms, " << models.lsi.concept_count() << " concepts\n";
  return kExitOk;
}

int cmd_label(const fs::path& corpus_path, const fs::path& model_dir, const fs::path& topics_path,
              const std::string& transcript, const std::string& decisions_out) {
  auto corpus = formtopics::load_corpus(corpus_path);
  formtopics::TopicMap initial;
  if (fs::exists(topics_path)) {
    initial = formtopics::load_topics(topics_path);
    formtopics::validate_topics(initial, corpus);
  }

  formtopics::ClusterMap clusters;
  if (!corpus.empty()) {
    TrainedModels models = load_models(model_dir);
    std::vector<formtopics::ConceptVector> vectors;
    vectors.reserve(corpus.size());
    for (const auto& doc : corpus) {
      auto weights = formtopics::apply_tfidf(formtopics::to_bow(doc.features, models.dict),
                                             models.tfidf);
      vectors.push_back(formtopics::project(weights, models.lsi));
    }
    clusters = formtopics::cluster_by_concept(formtopics::assign_concepts(vectors));
  }

  formtopics::SessionOutcome outcome;
  if (!transcript.empty()) {
    std::ifstream commands(transcript);
    if (!commands) throw DataError("cannot read transcript " + transcript);
    outcome = formtopics::run_labeling_session(corpus, clusters, std::move(initial), commands,
                                               std::cout);
  } else {
    outcome = formtopics::run_labeling_session(corpus, clusters, std::move(initial), std::cin,
                                               std::cout);
  }

  formtopics::save_topics(outcome.topics, topics_path);
  if (!decisions_out.empty()) {
    std::ofstream log(decisions_out);
    if (!log) throw DataError("cannot write " + decisions_out);
    for (const auto& decision : outcome.decisions) {
      log << decision.scope << "\t" << decision.topic << "\n";
    }
  }
  std::cout << (outcome.completed ? "labeled all " : "saved partial topics for ")
            << outcome.topics.size() << " document(s) -> " << topics_path.string() << "\n";
  return kExitOk;
}

int cmd_infer(const fs::path& model_dir, const fs::path& corpus_path, const fs::path& topics_path,
              const std::string& rules_path, const std::string& databank_path,
              const std::string& mode_name, double threshold, std::uint64_t seed,
              const fs::path& input_path, const formtopics::ExtractionConfig& extraction,
              const std::string& out_path) {
  auto mode = formtopics::method_from_name(mode_name);
  if (!mode) throw DataError("unknown mode '" + mode_name + "'");

  std::vector<formtopics::Rule> rules;
  bool needs_rules = *mode != formtopics::InferenceMethod::nl;
  if (!rules_path.empty()) {
    rules = formtopics::load_rules(rules_path);
  } else if (needs_rules) {
    throw DataError("mode '" + mode_name + "' needs --rules");
  }

  formtopics::SimilarityIndex index;
  bool needs_index = *mode != formtopics::InferenceMethod::rb;
  if (needs_index) {
    TrainedModels models = load_models(model_dir);
    auto corpus = formtopics::load_corpus(corpus_path);
    auto topics = formtopics::load_topics(topics_path);
    formtopics::validate_topics(topics, corpus);
    index = formtopics::build_similarity_index(corpus, topics, std::move(models.dict),
                                               std::move(models.tfidf), std::move(models.lsi));
  }

  std::optional<formtopics::DataBank> bank;
  if (!databank_path.empty()) bank = formtopics::DataBank::load(databank_path);

  auto page = formtopics::DomDocument::parse(read_file(input_path));
  auto fields = formtopics::extract_form_fields(page, input_path.string(), extraction);

  formtopics::RandomSource rng(seed);
  std::ostream* out = &std::cout;
  std::ofstream file_out;
  if (!out_path.empty()) {
    file_out.open(out_path, std::ios::binary);
    if (!file_out) throw DataError("cannot write " + out_path);
    out = &file_out;
  }

  for (const auto& [ref, features] : fields) {
    formtopics::InferenceResult result;
    switch (*mode) {
      case formtopics::InferenceMethod::nl:
        result = formtopics::infer_nl(features, index, threshold, rng);
        break;
      case formtopics::InferenceMethod::rb:
        result = formtopics::infer_rb(ref.raw_attributes, rules, rng);
        break;
      case formtopics::InferenceMethod::rb_nl_n:
        result = formtopics::infer_hybrid(features, ref.raw_attributes, rules, index,
                                          formtopics::HybridMode::no_match, threshold, rng);
        break;
      case formtopics::InferenceMethod::rb_nl_m:
        result = formtopics::infer_hybrid(features, ref.raw_attributes, rules, index,
                                          formtopics::HybridMode::multiple, threshold, rng);
        break;
      case formtopics::InferenceMethod::rb_nl_b:
        result = formtopics::infer_hybrid(features, ref.raw_attributes, rules, index,
                                          formtopics::HybridMode::both, threshold, rng);
        break;
      case formtopics::InferenceMethod::random:
        result.topic = std::string(formtopics::kRandomFillTopic);
        result.method = formtopics::InferenceMethod::random;
        break;
    }

    nlohmann::ordered_json line;
    line["page_id"] = ref.page_id;
    line["element_path"] = ref.element_path;
    line["topic"] = result.topic;
    line["method"] = std::string(formtopics::method_name(result.method));
    if (result.vote_taken) line["vote_taken"] = true;
    if (bank) {
      if (result.topic == formtopics::kRandomFillTopic) {
        line["value"] = random_fill_string(rng);
      } else {
        try {
          line["value"] = bank->pick_value(result.topic);
        } catch (const formtopics::NoDatabankEntry&) {
          line["value"] = random_fill_string(rng);  // the random-fill fallback
        }
      }
    }
    *out << line.dump() << '\n';
  }
  return kExitOk;
}

int cmd_eval(const fs::path& corpus_path, const fs::path& topics_path,
             const std::string& rules_path, const std::string& fractions_csv, int trials,
             std::uint64_t seed, const std::string& methods_csv, double threshold, int k, int jobs,
             const fs::path& out_dir) {
  auto corpus = formtopics::load_corpus(corpus_path);
  auto topics = formtopics::load_topics(topics_path);
  formtopics::validate_topics(topics, corpus);
  std::vector<formtopics::Rule> rules;
  if (!rules_path.empty()) rules = formtopics::load_rules(rules_path);

  formtopics::ExperimentConfig cfg;
  cfg.n_trials = trials;
  cfg.master_seed = seed;
  cfg.threshold = threshold;
  cfg.k = k;
  cfg.jobs = jobs;

  if (!fractions_csv.empty()) {
    cfg.train_fractions.clear();
    for (const std::string& item : split_csv(fractions_csv)) {
      double value = 0.0;
      try {
        value = std::stod(item);
      } catch (const std::exception&) {
        throw DataError("bad fraction '" + item + "'");
      }
      if (value > 1.0) value /= 100.0;  // accept "10" for 10%
      cfg.train_fractions.push_back(value);
    }
  }
  if (!methods_csv.empty()) {
    cfg.methods.clear();
    for (const std::string& item : split_csv(methods_csv)) {
      auto method = formtopics::method_from_name(item);
      if (!method) throw DataError("unknown method '" + item + "'");
      cfg.methods.push_back(*method);
    }
  }
  bool wants_rules = std::any_of(cfg.methods.begin(), cfg.methods.end(), [](auto m) {
    return m != formtopics::InferenceMethod::nl && m != formtopics::InferenceMethod::random;
  });
  if (wants_rules && rules.empty()) {
    throw DataError("the configured methods need --rules");
  }

  auto results = formtopics::run_split_experiment(corpus, topics, rules, cfg);
  formtopics::emit_reports(results, cfg.methods, out_dir);

  std::cout << "wrote " << results.size() << " trial rows to " << out_dir.string() << "\n";
  std::cout << "mean accuracy by training fraction:\n";
  std::vector<double> fractions = cfg.train_fractions;
  std::sort(fractions.begin(), fractions.end());
  std::cout << "  fraction";
  for (auto method : cfg.methods) std::cout << '\t' << formtopics::method_name(method);
  std::cout << '\n';
  for (double fraction : fractions) {
    std::cout << "  " << fraction;
    for (auto method : cfg.methods) {
      double sum = 0.0;
      int n = 0;
      for (const auto& row : results) {
        if (row.fraction == fraction) {
          sum += row.accuracy.at(method);
          ++n;
        }
      }
      char buffer[32];
      std::snprintf(buffer, sizeof buffer, "%.4f", n ? sum / n : 0.0);
      std::cout << '\t' << buffer;
    }
    std::cout << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semantic topic identification for web-form input fields"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "flat JSON config file (flags override it)");

  // extract
  auto* extract = app.add_subcommand("extract", "extract feature vectors from HTML pages");
  std::vector<std::string> extract_inputs;
  std::string extract_out = "corpus.jsonl";
  std::string attrs, tags, stopwords;
  int max_iterations = 3;
  extract->add_option("inputs", extract_inputs, "HTML files or directories");
  auto* extract_out_opt = extract->add_option("--out", extract_out, "corpus file to create/append");
  auto* attr_opt = extract->add_option("--attributes", attrs, "comma-separated attribute list");
  auto* tag_opt = extract->add_option("--tags", tags, "comma-separated label tag list");
  auto* iter_opt = extract->add_option("--max-iterations", max_iterations, "label search ascents");
  auto* stop_opt = extract->add_option("--stopwords", stopwords, "comma-separated stopword list");

  // train
  auto* train = app.add_subcommand("train", "build dictionary, tf-idf and LSI artifacts");
  std::string train_corpus = "corpus.jsonl", train_out = "model";
  int train_k = 200;
  auto* train_corpus_opt = train->add_option("--corpus", train_corpus, "corpus file");
  auto* train_out_opt = train->add_option("--out", train_out, "model directory");
  auto* train_k_opt = train->add_option("--k", train_k, "requested concept count");

  // label
  auto* label = app.add_subcommand("label", "interactive (or transcripted) topic labeling");
  std::string label_corpus = "corpus.jsonl", label_model = "model", label_topics = "topics.json";
  std::string transcript, decisions_out;
  auto* label_corpus_opt = label->add_option("--corpus", label_corpus, "corpus file");
  auto* label_model_opt = label->add_option("--model-dir", label_model, "model directory");
  auto* label_topics_opt = label->add_option("--topics", label_topics, "topics file (resumable)");
  label->add_option("--transcript", transcript, "read commands from this file instead of stdin");
  label->add_option("--decisions-out", decisions_out, "write the decision log here");

  // infer
  auto* infer = app.add_subcommand("infer", "infer topics for the fields of a page");
  std::string infer_model = "model", infer_corpus = "corpus.jsonl", infer_topics = "topics.json";
  std::string infer_rules, infer_bank, infer_mode = "nl", infer_out;
  double infer_threshold = 0.1;
  std::uint64_t infer_seed = 0;
  std::string infer_input;
  auto* infer_model_opt = infer->add_option("--model-dir", infer_model, "model directory");
  auto* infer_corpus_opt = infer->add_option("--corpus", infer_corpus, "training corpus");
  auto* infer_topics_opt = infer->add_option("--topics", infer_topics, "training topics");
  auto* infer_rules_opt = infer->add_option("--rules", infer_rules, "rules file");
  auto* infer_bank_opt = infer->add_option("--databank", infer_bank, "databank for fill values");
  auto* infer_mode_opt =
      infer->add_option("--mode", infer_mode, "nl | rb | rb-nl-n | rb-nl-m | rb-nl-b");
  auto* infer_threshold_opt = infer->add_option("--threshold", infer_threshold, "voting threshold");
  auto* infer_seed_opt = infer->add_option("--seed", infer_seed, "rng seed");
  infer->add_option("--input", infer_input, "HTML page to infer")->required();
  infer->add_option("--out", infer_out, "write JSONL results here instead of stdout");
  auto* infer_attr_opt = infer->add_option("--attributes", attrs, "comma-separated attribute list");
  auto* infer_tag_opt = infer->add_option("--tags", tags, "comma-separated label tag list");
  auto* infer_iter_opt =
      infer->add_option("--max-iterations", max_iterations, "label search ascents");
  auto* infer_stop_opt = infer->add_option("--stopwords", stopwords, "comma-separated stopwords");

  // eval
  auto* eval = app.add_subcommand("eval", "repeated random-split evaluation with CSV reports");
  std::string eval_corpus = "corpus.jsonl", eval_topics = "topics.json", eval_rules;
  std::string fractions_csv, methods_csv, eval_out = "reports";
  int eval_trials = 50, eval_k = 200, eval_jobs = 1;
  double eval_threshold = 0.1;
  std::uint64_t eval_seed = 0;
  auto* eval_corpus_opt = eval->add_option("--corpus", eval_corpus, "labeled corpus");
  auto* eval_topics_opt = eval->add_option("--topics", eval_topics, "topic map");
  auto* eval_rules_opt = eval->add_option("--rules", eval_rules, "master rules file");
  eval->add_option("--fractions", fractions_csv, "training fractions, e.g. 10,20,30,40,50");
  auto* eval_trials_opt = eval->add_option("--trials", eval_trials, "trials per fraction");
  auto* eval_seed_opt = eval->add_option("--seed", eval_seed, "master seed");
  eval->add_option("--methods", methods_csv, "subset of NL,RB,RB+NL-n,RB+NL-m,RB+NL-b");
  auto* eval_threshold_opt = eval->add_option("--threshold", eval_threshold, "voting threshold");
  auto* eval_k_opt = eval->add_option("--k", eval_k, "requested concept count");
  auto* eval_jobs_opt = eval->add_option("--jobs", eval_jobs, "parallel trial workers");
  auto* eval_out_opt = eval->add_option("--out", eval_out, "report directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    ConfigFile cfg;
    if (!config_path.empty()) cfg = ConfigFile::load(config_path);

    if (extract->parsed()) {
      cfg.fill(extract_out_opt, "corpus", extract_out);
      auto extraction = extraction_config(cfg, attr_opt, attrs, tag_opt, tags, iter_opt,
                                          max_iterations, stop_opt, stopwords);
      if (extract_inputs.empty()) {
        std::cerr << extract->help() << "\nerror: no input files given\n";
        return kExitUsage;
      }
      return cmd_extract(extract_inputs, extract_out, extraction);
    }
    if (train->parsed()) {
      cfg.fill(train_corpus_opt, "corpus", train_corpus);
      cfg.fill(train_out_opt, "model_dir", train_out);
      cfg.fill(train_k_opt, "k", train_k);
      return cmd_train(train_corpus, train_out, train_k);
    }
    if (label->parsed()) {
      cfg.fill(label_corpus_opt, "corpus", label_corpus);
      cfg.fill(label_model_opt, "model_dir", label_model);
      cfg.fill(label_topics_opt, "topics", label_topics);
      return cmd_label(label_corpus, label_model, label_topics, transcript, decisions_out);
    }
    if (infer->parsed()) {
      cfg.fill(infer_model_opt, "model_dir", infer_model);
      cfg.fill(infer_corpus_opt, "corpus", infer_corpus);
      cfg.fill(infer_topics_opt, "topics", infer_topics);
      cfg.fill(infer_rules_opt, "rules", infer_rules);
      cfg.fill(infer_bank_opt, "databank", infer_bank);
      cfg.fill(infer_mode_opt, "mode", infer_mode);
      cfg.fill(infer_threshold_opt, "threshold", infer_threshold);
      cfg.fill(infer_seed_opt, "seed", infer_seed);
      auto extraction = extraction_config(cfg, infer_attr_opt, attrs, infer_tag_opt, tags,
                                          infer_iter_opt, max_iterations, infer_stop_opt,
                                          stopwords);
      return cmd_infer(infer_model, infer_corpus, infer_topics, infer_rules, infer_bank,
                       infer_mode, infer_threshold, infer_seed, infer_input, extraction,
                       infer_out);
    }
    if (eval->parsed()) {
      cfg.fill(eval_corpus_opt, "corpus", eval_corpus);
      cfg.fill(eval_topics_opt, "topics", eval_topics);
      cfg.fill(eval_rules_opt, "rules", eval_rules);
      cfg.fill(eval_trials_opt, "trials", eval_trials);
      cfg.fill(eval_seed_opt, "seed", eval_seed);
      cfg.fill(eval_threshold_opt, "threshold", eval_threshold);
      cfg.fill(eval_k_opt, "k", eval_k);
      cfg.fill(eval_jobs_opt, "jobs", eval_jobs);
      cfg.fill(eval_out_opt, "out", eval_out);
      return cmd_eval(eval_corpus, eval_topics, eval_rules, fractions_csv, eval_trials, eval_seed,
                      methods_csv, eval_threshold, eval_k, eval_jobs, eval_out);
    }
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
