#include "cmachine/frames.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <json.hpp>

#include "cmachine/error.hpp"
#include "cmachine/hilbert.hpp"

namespace cmachine {

namespace {

using SparseCols = Eigen::SparseMatrix<double>;

// Frame operators up to this size go through a dense symmetric eigensolver.
constexpr Eigen::Index kDenseLimit = 256;
constexpr double kSpanFloor = 1e-12;
constexpr double kPowerTol = 1e-10;
constexpr int kPowerMaxIter = 10000;

[[noreturn]] void not_a_frame() { throw NumericalError("not a frame: A = 0"); }

Eigen::Map<const Eigen::VectorXd> as_eigen(const Signal& f) {
  return {f.entries().data(), static_cast<Eigen::Index>(f.dim())};
}

Signal to_signal(const Eigen::VectorXd& v) {
  return Signal(std::vector<double>(v.data(), v.data() + v.size()));
}

SparseRows rows_from_vectors(const std::vector<Signal>& vectors) {
  if (vectors.empty()) throw InvalidArgument("a frame needs at least one vector");
  const std::size_t n = vectors.front().dim();
  std::vector<Eigen::Triplet<double>> triplets;
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    require_same_dim(vectors.front(), vectors[j]);
    for (std::size_t i = 0; i < n; ++i) {
      if (vectors[j][i] != 0.0) {
        triplets.emplace_back(static_cast<int>(j), static_cast<int>(i), vectors[j][i]);
      }
    }
  }
  SparseRows t(static_cast<Eigen::Index>(vectors.size()), static_cast<Eigen::Index>(n));
  t.setFromTriplets(triplets.begin(), triplets.end());
  return t;
}

Signal row_to_signal(const SparseRows& m, std::size_t j) {
  if (j >= static_cast<std::size_t>(m.rows())) throw InvalidArgument("frame index out of range");
  std::vector<double> v(static_cast<std::size_t>(m.cols()), 0.0);
  for (SparseRows::InnerIterator it(m, static_cast<Eigen::Index>(j)); it; ++it) {
    v[static_cast<std::size_t>(it.col())] = it.value();
  }
  return Signal(std::move(v));
}

std::vector<Signal> rows_to_signals(const SparseRows& m) {
  std::vector<Signal> out;
  out.reserve(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index j = 0; j < m.rows(); ++j) out.push_back(row_to_signal(m, j));
  return out;
}

// Largest eigenvalue of a symmetric positive operator by power iteration.
template <typename Apply>
double dominant_eigenvalue(Apply&& apply, Eigen::Index n) {
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> u(0.5, 1.5);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = u(rng);
  v.normalize();

  double lambda = 0.0;
  for (int it = 0; it < kPowerMaxIter; ++it) {
    Eigen::VectorXd w = apply(v);
    const double next = v.dot(w);
    const double residual = (w - next * v).norm();
    if (residual <= kPowerTol * std::abs(next) ||
        (it > 0 && std::abs(next - lambda) <= kPowerTol * std::abs(next))) {
      return next;
    }
    lambda = next;
    const double wn = w.norm();
    if (wn == 0.0) return 0.0;
    v = w / wn;
  }
  throw NumericalError("power iteration did not converge");
}

FrameBounds bounds_of(const SparseRows& t) {
  const Eigen::Index n = t.cols();
  const SparseCols s = SparseCols(t.transpose()) * SparseCols(t);
  if (n <= kDenseLimit) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd(s),
                                                      Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("eigensolver failed");
    const double a = es.eigenvalues().minCoeff();
    if (!(a > kSpanFloor)) not_a_frame();
    return {a, es.eigenvalues().maxCoeff()};
  }

  Eigen::SimplicialLDLT<SparseCols> ldlt(s);
  if (ldlt.info() != Eigen::Success || !(ldlt.vectorD().minCoeff() > 0.0)) not_a_frame();
  const double b = dominant_eigenvalue([&](const Eigen::VectorXd& v) { return Eigen::VectorXd(s * v); }, n);
  const double inv_a =
      dominant_eigenvalue([&](const Eigen::VectorXd& v) { return Eigen::VectorXd(ldlt.solve(v)); }, n);
  const double a = 1.0 / inv_a;
  if (!(a > kSpanFloor)) not_a_frame();
  return {a, b};
}

SparseRows dual_of(const SparseRows& t, const FrameBounds& b) {
  if (is_tight(b)) return SparseRows(t * (1.0 / b.lower));
  const Eigen::Index n = t.cols();
  const SparseCols s = SparseCols(t.transpose()) * SparseCols(t);
  if (n <= kDenseLimit) {
    Eigen::LDLT<Eigen::MatrixXd> ldlt{Eigen::MatrixXd(s)};
    if (ldlt.info() != Eigen::Success) not_a_frame();
    const Eigen::MatrixXd x = ldlt.solve(Eigen::MatrixXd(t.transpose()));
    return SparseRows(Eigen::MatrixXd(x.transpose()).sparseView(1.0, 0.0));
  }
  Eigen::SimplicialLDLT<SparseCols> ldlt(s);
  if (ldlt.info() != Eigen::Success) not_a_frame();
  const SparseCols rhs(t.transpose());
  const SparseCols x = ldlt.solve(rhs);
  return SparseRows(x.transpose());
}

double sup_abs(const SparseRows& m, const Eigen::VectorXd& d) {
  double best = 0.0;
  for (Eigen::Index j = 0; j < m.outerSize(); ++j) {
    double c = 0.0;
    for (SparseRows::InnerIterator it(m, j); it; ++it) c += it.value() * d[it.col()];
    best = std::max(best, std::abs(c));
  }
  return best;
}

double row_norm_sum(const SparseRows& m) {
  double total = 0.0;
  for (Eigen::Index j = 0; j < m.outerSize(); ++j) {
    double s = 0.0;
    for (SparseRows::InnerIterator it(m, j); it; ++it) s += it.value() * it.value();
    total += std::sqrt(s);
  }
  return total;
}

void check_dim(const Frame& frame, const Signal& f) {
  if (f.dim() != frame.dim()) throw DimensionError(frame.dim(), f.dim());
}

}  // namespace

bool is_tight(const FrameBounds& b) {
  return std::abs(b.lower - b.upper) <= 1e-10 * std::max(b.lower, 1.0);
}

FrameBounds frame_bounds(const std::vector<Signal>& vectors) {
  return bounds_of(rows_from_vectors(vectors));
}

std::vector<Signal> canonical_dual(const std::vector<Signal>& vectors, const FrameBounds& bounds) {
  return rows_to_signals(dual_of(rows_from_vectors(vectors), bounds));
}

// --- Frame -----------------------------------------------------------------

Frame::Frame(const std::vector<Signal>& vectors) : analysis_(rows_from_vectors(vectors)) {
  initialize();
}

Frame::Frame(SparseRows analysis) : analysis_(std::move(analysis)) {
  if (analysis_.rows() == 0 || analysis_.cols() == 0) {
    throw InvalidArgument("a frame needs at least one vector of dimension >= 1");
  }
  analysis_.makeCompressed();
  initialize();
}

void Frame::initialize() {
  bounds_ = bounds_of(analysis_);
  dual_ = dual_of(analysis_, bounds_);
  dual_.makeCompressed();
}

Signal Frame::vector(std::size_t j) const { return row_to_signal(analysis_, j); }
Signal Frame::dual_vector(std::size_t j) const { return row_to_signal(dual_, j); }
std::vector<Signal> Frame::vectors() const { return rows_to_signals(analysis_); }
std::vector<Signal> Frame::dual_vectors() const { return rows_to_signals(dual_); }

double Frame::vector_norm_sum() const { return row_norm_sum(analysis_); }
double Frame::dual_norm_sum() const { return row_norm_sum(dual_); }

Frame Frame::dual_frame() const { return Frame(dual_); }

Frame scaled_pair_frame(std::size_t n, double scale) {
  if (n == 0) throw InvalidArgument("scaled pair frame needs n >= 1");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw InvalidArgument("scale must be positive");
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    triplets.emplace_back(static_cast<int>(2 * i), static_cast<int>(i), 1.0);
    triplets.emplace_back(static_cast<int>(2 * i + 1), static_cast<int>(i), scale);
  }
  SparseRows t(static_cast<Eigen::Index>(2 * n), static_cast<Eigen::Index>(n));
  t.setFromTriplets(triplets.begin(), triplets.end());
  Frame frame(std::move(t));

  const double closed_form = 1.0 + scale * scale;
  const FrameBounds& b = frame.bounds();
  if (std::abs(b.lower - closed_form) > 1e-10 * closed_form ||
      std::abs(b.upper - closed_form) > 1e-10 * closed_form) {
    throw NumericalError("scaled pair frame bounds disagree with 1 + scale^2");
  }
  return frame;
}

std::vector<double> analysis(const Frame& frame, const Signal& f) {
  check_dim(frame, f);
  const Eigen::VectorXd c = frame.analysis_operator() * as_eigen(f);
  return {c.data(), c.data() + c.size()};
}

std::vector<double> dual_analysis(const Frame& frame, const Signal& f) {
  check_dim(frame, f);
  const Eigen::VectorXd c = frame.dual_analysis_operator() * as_eigen(f);
  return {c.data(), c.data() + c.size()};
}

namespace {

Signal synthesize(const SparseRows& family, const std::vector<double>& coefficients) {
  if (coefficients.size() != static_cast<std::size_t>(family.rows())) {
    throw DimensionError(static_cast<std::size_t>(family.rows()), coefficients.size());
  }
  const Eigen::Map<const Eigen::VectorXd> c(coefficients.data(), family.rows());
  return to_signal(family.transpose() * c);
}

}  // namespace

Signal synthesis(const Frame& frame, const std::vector<double>& coefficients) {
  return synthesize(frame.analysis_operator(), coefficients);
}

Signal dual_synthesis(const Frame& frame, const std::vector<double>& coefficients) {
  return synthesize(frame.dual_analysis_operator(), coefficients);
}

DissimilarityReport compare(const Frame& frame, const Signal& f, const Signal& g) {
  check_dim(frame, f);
  check_dim(frame, g);
  const Eigen::VectorXd d = as_eigen(f) - as_eigen(g);
  DissimilarityReport r;
  r.sup_analysis = sup_abs(frame.analysis_operator(), d);
  r.sup_dual = sup_abs(frame.dual_analysis_operator(), d);
  r.delta = std::max(r.sup_analysis, r.sup_dual);
  r.nabla = std::min(r.sup_analysis, r.sup_dual);
  return r;
}

double delta(const Frame& frame, const Signal& f, const Signal& g) {
  return compare(frame, f, g).delta;
}

double nabla(const Frame& frame, const Signal& f, const Signal& g) {
  return compare(frame, f, g).nabla;
}

bool cluster_member(const Frame& frame, const Signal& center, const Signal& f, double epsilon,
                    Measure measure) {
  if (!(epsilon > 0.0)) throw InvalidArgument("cluster radius must be positive");
  switch (measure) {
    case Measure::Norm:
      return norm_ball_member(center, f, epsilon);
    case Measure::Delta:
      return within_radius(delta(frame, f, center), epsilon);
    case Measure::Nabla:
      return within_radius(nabla(frame, f, center), epsilon);
  }
  return false;
}

double norm_bound_factor(const Frame& frame) {
  return std::min(frame.vector_norm_sum(), frame.dual_norm_sum());
}

std::string frame_to_json(const Frame& frame) {
  nlohmann::json j;
  j["dim"] = frame.dim();
  j["vectors"] = nlohmann::json::array();
  for (const Signal& v : frame.vectors()) j["vectors"].push_back(v.values());
  return j.dump();
}

Frame frame_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument(std::string("malformed frame JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("dim") || !j.contains("vectors") ||
      !j["dim"].is_number_unsigned() || !j["vectors"].is_array()) {
    throw InvalidArgument("frame JSON must look like {\"dim\": n, \"vectors\": [[...], ...]}");
  }
  const auto dim = j["dim"].get<std::size_t>();
  std::vector<Signal> vectors;
  for (const auto& row : j["vectors"]) {
    if (!row.is_array()) throw InvalidArgument("frame vectors must be arrays of numbers");
    std::vector<double> v;
    for (const auto& x : row) {
      if (!x.is_number()) throw InvalidArgument("frame vectors must be arrays of numbers");
      v.push_back(x.get<double>());
    }
    if (v.size() != dim) throw DimensionError(dim, v.size());
    vectors.emplace_back(std::move(v));
  }
  return Frame(vectors);
}

}  // namespace cmachine
