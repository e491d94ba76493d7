// Independent test oracles. Everything here recomputes results from first
// principles (stdlib only) so the checks stay decoupled from the library
// implementations they judge.

#ifndef FORMTOPICS_TEST_ORACLES_HPP
#define FORMTOPICS_TEST_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace oracles {

// --- full symmetric eigensolver (cyclic Jacobi) ----------------------------
// Eigenvalues of a dense symmetric matrix, descending. Used to obtain the
// complete singular spectrum of X through the eigenvalues of X^T X.

inline std::vector<double> symmetric_eigenvalues(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    }
    if (off < 1e-24) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::fabs(a[p][q]) < 1e-300) continue;
        double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> eigenvalues(n);
  for (std::size_t i = 0; i < n; ++i) eigenvalues[i] = a[i][i];
  std::sort(eigenvalues.rbegin(), eigenvalues.rend());
  return eigenvalues;
}

// Full singular values of a term-by-document matrix (rows x cols), descending.
inline std::vector<double> full_singular_values(const std::vector<std::vector<double>>& x) {
  const std::size_t rows = x.size();
  const std::size_t cols = x.empty() ? 0 : x[0].size();
  std::vector<std::vector<double>> gram(cols, std::vector<double>(cols, 0.0));
  for (std::size_t i = 0; i < cols; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      double sum = 0.0;
      for (std::size_t r = 0; r < rows; ++r) sum += x[r][i] * x[r][j];
      gram[i][j] = sum;
    }
  }
  std::vector<double> singulars = symmetric_eigenvalues(std::move(gram));
  for (double& value : singulars) value = std::sqrt(std::max(0.0, value));
  return singulars;
}

// --- Student-t two-sided tail by quadrature ---------------------------------
// With x = sqrt(df) tan(theta) the density integrates over a finite range:
// P(|T| >= |t|) = 2 C sqrt(df) * Integral_{atan(|t|/sqrt(df))}^{pi/2}
// cos(theta)^(df-1) d(theta). Adaptive Simpson keeps the error < ~1e-10.

namespace detail {
inline double simpson(const std::function<double(double)>& f, double a, double b, double fa,
                      double fb, double fm, double eps, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * eps) {
    return left + right + (left + right - whole) / 15.0;
  }
  return simpson(f, a, m, fa, fm, flm, eps / 2.0, depth - 1) +
         simpson(f, m, b, fm, fb, frm, eps / 2.0, depth - 1);
}
}  // namespace detail

inline double student_t_two_sided_p(double t, double df) {
  if (t == 0.0) return 1.0;
  const double pi = std::acos(-1.0);
  double log_c = std::lgamma((df + 1.0) / 2.0) - std::lgamma(df / 2.0) -
                 0.5 * std::log(df * pi);
  double c = std::exp(log_c);
  double lo = std::atan(std::fabs(t) / std::sqrt(df));
  double hi = pi / 2.0;
  auto integrand = [&](double theta) { return std::pow(std::cos(theta), df - 1.0); };
  double fa = integrand(lo), fb = integrand(hi), fm = integrand(0.5 * (lo + hi));
  double integral = detail::simpson(integrand, lo, hi, fa, fb, fm, 1e-12, 40);
  return 2.0 * c * std::sqrt(df) * integral;
}

// --- brute-force nearest neighbor over raw tf-idf ---------------------------
// Token counting, idf (log2) and cosine recomputed from scratch; ties go to
// the lowest document id.

struct BruteDoc {
  int doc_id;
  std::vector<std::string> tokens;
  std::string topic;
};

class BruteForceNn {
 public:
  explicit BruteForceNn(const std::vector<BruteDoc>& train) : train_(train) {
    for (const BruteDoc& doc : train) {
      std::set<std::string> seen(doc.tokens.begin(), doc.tokens.end());
      for (const std::string& token : seen) ++df_[token];
    }
    n_ = train.size();
    for (const BruteDoc& doc : train) vectors_.push_back(tfidf(doc.tokens));
  }

  std::unordered_map<std::string, double> tfidf(const std::vector<std::string>& tokens) const {
    std::unordered_map<std::string, int> counts;
    for (const std::string& token : tokens) {
      if (df_.count(token)) ++counts[token];
    }
    std::unordered_map<std::string, double> vec;
    double norm_sq = 0.0;
    for (const auto& [token, count] : counts) {
      double w = count * std::log2(static_cast<double>(n_) / df_.at(token));
      if (w == 0.0) continue;
      vec[token] = w;
      norm_sq += w * w;
    }
    if (norm_sq > 0.0) {
      double norm = std::sqrt(norm_sq);
      for (auto& [token, w] : vec) w /= norm;
    }
    return vec;
  }

  static double cosine(const std::unordered_map<std::string, double>& a,
                       const std::unordered_map<std::string, double>& b) {
    double dot = 0.0;
    for (const auto& [token, w] : a) {
      auto it = b.find(token);
      if (it != b.end()) dot += w * it->second;
    }
    return dot;  // both sides are unit (or zero) vectors
  }

  // Nearest training document for a query token list.
  const BruteDoc& nearest(const std::vector<std::string>& query_tokens) const {
    auto q = tfidf(query_tokens);
    std::size_t best = 0;
    double best_sim = -2.0;
    for (std::size_t i = 0; i < train_.size(); ++i) {
      double sim = cosine(q, vectors_[i]);
      if (sim > best_sim || (sim == best_sim && train_[i].doc_id < train_[best].doc_id)) {
        best_sim = sim;
        best = i;
      }
    }
    return train_[best];
  }

 private:
  std::vector<BruteDoc> train_;
  std::unordered_map<std::string, int> df_;
  std::vector<std::unordered_map<std::string, double>> vectors_;
  std::size_t n_ = 0;
};

// --- vocabulary partition by shared tokens (union-find) ---------------------

inline std::vector<std::set<int>> vocabulary_partition(const std::vector<BruteDoc>& docs) {
  std::vector<int> parent(docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) parent[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::map<std::string, int> owner;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    for (const std::string& token : docs[i].tokens) {
      auto [it, inserted] = owner.emplace(token, static_cast<int>(i));
      if (!inserted) parent[find(static_cast<int>(i))] = find(it->second);
    }
  }
  std::map<int, std::set<int>> groups;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    groups[find(static_cast<int>(i))].insert(docs[i].doc_id);
  }
  std::vector<std::set<int>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

}  // namespace oracles

#endif
