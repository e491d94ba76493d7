#include "formtopics/semantic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "formtopics/errors.hpp"

namespace formtopics {

namespace {

void write_u64(std::ostream& out, std::uint64_t value) {
  unsigned char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<unsigned char>(value >> (8 * i));
  out.write(reinterpret_cast<const char*>(bytes), 8);
}

std::uint64_t read_u64(std::istream& in) {
  unsigned char bytes[8];
  in.read(reinterpret_cast<char*>(bytes), 8);
  std::uint64_t value = 0;
  for (int i = 0; i < 8; ++i) value |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return value;
}

void write_f64(std::ostream& out, double value) {
  std::uint64_t bits;
  std::memcpy(&bits, &value, sizeof bits);
  write_u64(out, bits);
}

double read_f64(std::istream& in) {
  std::uint64_t bits = read_u64(in);
  double value;
  std::memcpy(&value, &bits, sizeof value);
  return value;
}

constexpr char kLsiMagic[8] = {'F', 'T', 'L', 'S', 'I', '\x01', '\0', '\0'};

static_assert(std::endian::native == std::endian::little,
              "model.lsi readers assume a little-endian host");

}  // namespace

TfIdfModel fit_tfidf(const std::vector<BowVector>& bows, const Dictionary& dict) {
  for (const BowVector& bow : bows) {
    for (const BowEntry& entry : bow) {
      if (entry.term_id < 0 || entry.term_id >= dict.size()) {
        throw std::invalid_argument("fit_tfidf: bow term id outside dictionary");
      }
    }
  }
  TfIdfModel model;
  model.idf.resize(dict.terms.size());
  for (int t = 0; t < dict.size(); ++t) {
    model.idf[t] = std::log2(static_cast<double>(dict.n_docs) / dict.doc_freq[t]);
  }
  return model;
}

TfIdfVector apply_tfidf(const BowVector& bow, const TfIdfModel& model) {
  TfIdfVector vec;
  double norm_sq = 0.0;
  for (const BowEntry& entry : bow) {
    double weight = entry.count * model.idf[entry.term_id];
    if (weight == 0.0) continue;
    vec.push_back({entry.term_id, weight});
    norm_sq += weight * weight;
  }
  if (norm_sq > 0.0) {
    double norm = std::sqrt(norm_sq);
    for (TfIdfEntry& entry : vec) entry.weight /= norm;
  }
  return vec;
}

int default_concept_count(int n_docs, int n_terms) {
  return std::min({n_docs, n_terms, 200});
}

LsiModel fit_lsi(const std::vector<TfIdfVector>& docs, int term_count, int k_requested) {
  if (term_count <= 0) throw std::invalid_argument("fit_lsi: term_count must be positive");
  if (k_requested < 1) throw std::invalid_argument("fit_lsi: k_requested must be >= 1");
  if (docs.empty()) throw DataError("fit_lsi: no documents");

  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(term_count, static_cast<int>(docs.size()));
  bool any_nonzero = false;
  for (int d = 0; d < static_cast<int>(docs.size()); ++d) {
    for (const TfIdfEntry& entry : docs[d]) {
      if (entry.term_id < 0 || entry.term_id >= term_count) {
        throw std::invalid_argument("fit_lsi: term id outside matrix");
      }
      x(entry.term_id, d) = entry.weight;
      any_nonzero = any_nonzero || entry.weight != 0.0;
    }
  }
  if (!any_nonzero) {
    throw DataError("fit_lsi: degenerate corpus, every tf-idf vector is zero");
  }

  Eigen::BDCSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeThinU);
  const Eigen::VectorXd& sv = svd.singularValues();
  double tol = std::max(x.rows(), x.cols()) * std::numeric_limits<double>::epsilon() * sv(0);
  int rank = 0;
  while (rank < sv.size() && sv(rank) > tol) ++rank;
  if (rank == 0) throw DataError("fit_lsi: degenerate corpus, rank zero");

  int k = std::min(k_requested, rank);
  LsiModel model;
  model.u = svd.matrixU().leftCols(k);
  model.s = sv.head(k);
  return model;
}

ConceptVector project(const TfIdfVector& vec, const LsiModel& model) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(model.concept_count());
  for (const TfIdfEntry& entry : vec) {
    if (entry.term_id < 0 || entry.term_id >= model.term_count()) {
      throw std::invalid_argument("project: term id outside model");
    }
    out += entry.weight * model.u.row(entry.term_id).transpose();
  }
  return ConceptVector(out.data(), out.data() + out.size());
}

double cosine_similarity(const ConceptVector& a, const ConceptVector& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("cosine_similarity: length mismatch");
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

void save_lsi_model(const LsiModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out.write(kLsiMagic, sizeof kLsiMagic);
  write_u64(out, static_cast<std::uint64_t>(model.term_count()));
  write_u64(out, static_cast<std::uint64_t>(model.concept_count()));
  for (int row = 0; row < model.term_count(); ++row) {
    for (int col = 0; col < model.concept_count(); ++col) {
      write_f64(out, model.u(row, col));
    }
  }
  for (int i = 0; i < model.concept_count(); ++i) write_f64(out, model.s(i));
  if (!out) throw DataError("write failed for " + path.string());
}

LsiModel load_lsi_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  char magic[8];
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kLsiMagic, sizeof magic) != 0) {
    throw DataError(path.string() + ": not an LSI model file");
  }
  std::uint64_t terms = read_u64(in);
  std::uint64_t concepts = read_u64(in);
  if (!in || terms == 0 || concepts == 0 || concepts > terms || terms > (1u << 24)) {
    throw DataError(path.string() + ": implausible LSI model header");
  }
  LsiModel model;
  model.u.resize(static_cast<int>(terms), static_cast<int>(concepts));
  for (std::uint64_t row = 0; row < terms; ++row) {
    for (std::uint64_t col = 0; col < concepts; ++col) {
      model.u(static_cast<int>(row), static_cast<int>(col)) = read_f64(in);
    }
  }
  model.s.resize(static_cast<int>(concepts));
  for (std::uint64_t i = 0; i < concepts; ++i) model.s(static_cast<int>(i)) = read_f64(in);
  if (!in) throw DataError(path.string() + ": truncated LSI model file");
  return model;
}

void save_tfidf(const TfIdfModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  nlohmann::json obj;
  obj["idf"] = model.idf;
  out << obj.dump() << '\n';
  if (!out) throw DataError("write failed for " + path.string());
}

TfIdfModel load_tfidf(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  nlohmann::json obj;
  try {
    in >> obj;
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  TfIdfModel model;
  try {
    model.idf = obj.at("idf").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  return model;
}

}  // namespace formtopics
