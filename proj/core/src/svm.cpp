#include "afdforge/svm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace afdforge::model {

namespace {

double sparse_dot(const features::SparseVector& a, const features::SparseVector& b) {
  double sum = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.entries.size() && j < b.entries.size()) {
    if (a.entries[i].first == b.entries[j].first) {
      sum += a.entries[i].second * b.entries[j].second;
      ++i;
      ++j;
    } else if (a.entries[i].first < b.entries[j].first) {
      ++i;
    } else {
      ++j;
    }
  }
  return sum;
}

void axpy(std::vector<double>& dense, double factor, const features::SparseVector& x) {
  for (const auto& [id, v] : x.entries) dense[id] += factor * v;
}

void print_double(std::ostream& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out << buf;
}

}  // namespace

SvmModel train_svm(const std::vector<features::SparseVector>& vectors,
                   const std::vector<int>& labels, std::size_t dim, const SvmOptions& options,
                   SvmTrainStats* stats) {
  const std::size_t n = vectors.size();
  if (n == 0) throw std::runtime_error("train_svm: empty training set");
  if (labels.size() != n) throw std::runtime_error("train_svm: labels/vectors size mismatch");
  if (options.c <= 0.0) throw std::runtime_error("train_svm: C must be positive");
  for (const auto& vec : vectors)
    for (const auto& [id, v] : vec.entries) {
      if (!std::isfinite(v)) throw std::runtime_error("train_svm: non-finite feature value");
      if (id >= dim) throw std::runtime_error("train_svm: feature index out of range");
    }

  const double c = options.c;
  std::vector<double> y(n);
  for (std::size_t t = 0; t < n; ++t) y[t] = labels[t] ? 1.0 : -1.0;

  std::vector<double> alpha(n, 0.0);
  std::vector<double> w(dim, 0.0);
  std::vector<double> self_dot(n);
  for (std::size_t t = 0; t < n; ++t) self_dot[t] = sparse_dot(vectors[t], vectors[t]);

  const std::size_t max_iter =
      options.max_passes ? options.max_passes : std::max<std::size_t>(20000, 200 * n);

  SvmTrainStats local;
  SvmTrainStats& st = stats ? *stats : local;
  st = SvmTrainStats{};

  double m_up = 0.0, m_low = 0.0;
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    // Maximal violating pair over g_t = y_t - w.x_t (feasible bias interval).
    std::size_t best_i = n, best_j = n;
    m_up = -std::numeric_limits<double>::infinity();
    m_low = std::numeric_limits<double>::infinity();
    std::vector<double> wx(n);
    for (std::size_t t = 0; t < n; ++t) {
      wx[t] = vectors[t].dot(w);
      double g = y[t] - wx[t];
      bool in_up = (y[t] > 0 && alpha[t] < c) || (y[t] < 0 && alpha[t] > 0);
      bool in_low = (y[t] < 0 && alpha[t] < c) || (y[t] > 0 && alpha[t] > 0);
      if (in_up && g > m_up) {
        m_up = g;
        best_i = t;
      }
      if (in_low && g < m_low) {
        m_low = g;
        best_j = t;
      }
    }
    st.kkt_gap = m_up - m_low;
    if (best_i == n || best_j == n || st.kkt_gap <= options.tolerance) {
      st.converged = true;
      break;
    }

    const std::size_t i = best_i, j = best_j;
    double eta = self_dot[i] + self_dot[j] - 2.0 * sparse_dot(vectors[i], vectors[j]);
    if (eta < 1e-12) eta = 1e-12;
    double lo, hi;
    if (y[i] != y[j]) {
      lo = std::max(0.0, alpha[j] - alpha[i]);
      hi = std::min(c, c + alpha[j] - alpha[i]);
    } else {
      lo = std::max(0.0, alpha[i] + alpha[j] - c);
      hi = std::min(c, alpha[i] + alpha[j]);
    }
    double e_diff = (wx[i] - y[i]) - (wx[j] - y[j]);
    double aj = alpha[j] + y[j] * e_diff / eta;
    aj = std::clamp(aj, lo, hi);
    double ai = alpha[i] + y[i] * y[j] * (alpha[j] - aj);
    double di = ai - alpha[i], dj = aj - alpha[j];
    if (std::abs(dj) < 1e-15 && std::abs(di) < 1e-15) {
      st.converged = st.kkt_gap <= options.tolerance;
      break;  // numerically stuck at the working precision
    }
    alpha[i] = ai;
    alpha[j] = aj;
    axpy(w, di * y[i], vectors[i]);
    axpy(w, dj * y[j], vectors[j]);
    ++st.iterations;

    double lin = 0.0, quad = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      lin += alpha[t];
      if (alpha[t] != 0.0) quad += alpha[t] * y[t] * vectors[t].dot(w);
    }
    st.objective_trace.push_back(0.5 * quad - lin);
  }

  // Bias from the feasible interval; free support vectors pin it exactly.
  double b;
  if (std::isfinite(m_up) && std::isfinite(m_low)) b = 0.5 * (m_up + m_low);
  else if (std::isfinite(m_up)) b = m_up;
  else if (std::isfinite(m_low)) b = m_low;
  else b = 0.0;

  SvmModel model;
  model.weights = std::move(w);
  model.bias = b;
  model.c = c;
  return model;
}

double svm_score(const SvmModel& model, const features::SparseVector& vec) {
  return vec.dot(model.weights) + model.bias;
}

int svm_predict(const SvmModel& model, const features::SparseVector& vec) {
  return svm_score(model, vec) > 0.0 ? 1 : 0;
}

std::vector<std::pair<std::string, double>> svm_top_terms(const SvmModel& model, std::size_t k,
                                                          int cls) {
  std::vector<std::pair<std::string, double>> ranked;
  for (std::size_t i = 0; i < model.weights.size(); ++i) {
    std::string name = i < model.terms.size() ? model.terms[i] : ("f" + std::to_string(i));
    ranked.emplace_back(std::move(name), model.weights[i]);
  }
  std::stable_sort(ranked.begin(), ranked.end(), [cls](const auto& a, const auto& b) {
    return cls == 1 ? a.second > b.second : a.second < b.second;
  });
  if (k < ranked.size()) ranked.resize(k);
  return ranked;
}

void write_svm_tsv(std::ostream& out, const SvmModel& model) {
  out << "# afdforge-svm 1\n";
  out << "# c\t";
  print_double(out, model.c);
  out << "\n# bias\t";
  print_double(out, model.bias);
  out << '\n';
  for (std::size_t i = 0; i < model.weights.size(); ++i) {
    if (i < model.terms.size()) out << model.terms[i];
    else out << 'f' << i;
    out << '\t';
    print_double(out, model.weights[i]);
    out << '\n';
  }
}

SvmModel read_svm_tsv(std::istream& in) {
  SvmModel model;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream row(line.substr(1));
      std::string key;
      row >> key;
      if (key == "bias") row >> model.bias;
      else if (key == "c") row >> model.c;
      continue;
    }
    std::istringstream row(line);
    std::string term, weight;
    if (!std::getline(row, term, '\t') || !std::getline(row, weight, '\t'))
      throw std::runtime_error("svm model: malformed row: " + line);
    model.terms.push_back(term);
    model.weights.push_back(std::stod(weight));
  }
  return model;
}

}  // namespace afdforge::model
