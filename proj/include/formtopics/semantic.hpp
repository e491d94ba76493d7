#ifndef FORMTOPICS_SEMANTIC_HPP
#define FORMTOPICS_SEMANTIC_HPP

#include <Eigen/Dense>
#include <filesystem>
#include <vector>

#include "formtopics/corpus.hpp"

namespace formtopics {

/// Per-term inverse document frequency, idf[t] = log2(N / n_t).
/// idf is 0 exactly when the term appears in every document.
struct TfIdfModel {
  std::vector<double> idf;

  int term_count() const { return static_cast<int>(idf.size()); }
};

struct TfIdfEntry {
  int term_id;
  double weight;

  bool operator==(const TfIdfEntry&) const = default;
};

/// Sparse tf-idf weights, sorted by term id, L2-normalized (unit norm for any
/// non-empty vector; all-zero products collapse to the empty vector).
using TfIdfVector = std::vector<TfIdfEntry>;

/// Truncated SVD basis of the term-by-document tf-idf matrix: u has
/// orthonormal columns (one per latent concept), s the matching singular
/// values, strictly positive and non-increasing.
struct LsiModel {
  Eigen::MatrixXd u;  // term_count x concept_count
  Eigen::VectorXd s;  // concept_count

  int term_count() const { return static_cast<int>(u.rows()); }
  int concept_count() const { return static_cast<int>(u.cols()); }
};

/// Dense coordinates of one document or query in the latent space. For a
/// unit-norm tf-idf input every coordinate lies in [-1, 1].
using ConceptVector = std::vector<double>;

TfIdfModel fit_tfidf(const std::vector<BowVector>& bows, const Dictionary& dict);

TfIdfVector apply_tfidf(const BowVector& bow, const TfIdfModel& model);

/// Truncated SVD of the matrix whose columns are `docs`. The effective
/// concept count is min(k_requested, rank): zero singular values are dropped.
/// An all-zero matrix signals a degenerate corpus.
LsiModel fit_lsi(const std::vector<TfIdfVector>& docs, int term_count, int k_requested);

/// min(n_docs, n_terms, 200): the default requested concept count.
int default_concept_count(int n_docs, int n_terms);

/// u^T x. The same rule maps training documents and queries, which is what
/// makes their cosines comparable.
ConceptVector project(const TfIdfVector& vec, const LsiModel& model);

/// a.b / (|a||b|), in [-1, 1]. Either vector zero gives 0, so degenerate
/// queries rank nowhere instead of failing.
double cosine_similarity(const ConceptVector& a, const ConceptVector& b);

// model.lsi: "FTLSI\x01\0\0" magic, u64 LE term count, u64 LE concept count,
// then u row-major and s, both as f64 LE.
void save_lsi_model(const LsiModel& model, const std::filesystem::path& path);
LsiModel load_lsi_model(const std::filesystem::path& path);

// tfidf.json: {"idf": [...]} in term-id order.
void save_tfidf(const TfIdfModel& model, const std::filesystem::path& path);
TfIdfModel load_tfidf(const std::filesystem::path& path);

}  // namespace formtopics

#endif
