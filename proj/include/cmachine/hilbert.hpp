#pragma once

// Inner-product primitives and the projector-based clustering machine.
//
// A clustering machine partitions an orthonormal set {e_k} into M groups.
// Group alpha induces the orthogonal projector Q_alpha = sum_k |e_k><e_k|
// and the score q_alpha(f) = ||Q_alpha f||^2. Scores are read as class
// affinities: a signal living entirely inside one group's span scores
// ||f||^2 there and zero elsewhere.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cmachine/signal.hpp"

namespace cmachine {

inline constexpr double kOrthonormalityTol = 1e-10;
inline constexpr double kCompletenessTol = 1e-8;
/// Relative slack on cluster radii, so points on the boundary stay inside.
inline constexpr double kRadiusTol = 1e-12;

/// value <= radius, up to kRadiusTol.
inline bool within_radius(double value, double radius) {
  return value <= radius * (1.0 + kRadiusTol);
}

double inner(const Signal& f, const Signal& g);

/// ||f|| ||g|| - |<f,g>|. Nonnegative, zero on collinear pairs.
double dissimilarity(const Signal& f, const Signal& g);

/// ||f - g||^2.
double sq_distance(const Signal& f, const Signal& g);

/// ||center - f|| <= radius, up to kRadiusTol.
bool norm_ball_member(const Signal& center, const Signal& f, double radius);

class OrthonormalSet {
 public:
  /// Validates |<e_i,e_j> - delta_ij| <= kOrthonormalityTol and
  /// count <= dim. Throws InvalidArgument otherwise.
  explicit OrthonormalSet(std::vector<Signal> vectors);

  /// e_0..e_{dim-1} of R^dim.
  static OrthonormalSet canonical(std::size_t dim);
  /// The first `count` canonical vectors of R^dim.
  static OrthonormalSet canonical(std::size_t dim, std::size_t count);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return vectors_.size(); }
  const Signal& operator[](std::size_t k) const { return vectors_[k]; }
  const std::vector<Signal>& vectors() const noexcept { return vectors_; }
  bool complete() const noexcept { return vectors_.size() == dim_; }

 private:
  std::vector<Signal> vectors_;
  std::size_t dim_ = 0;
};

struct ScoreVector {
  std::vector<double> scores;
  double total = 0.0;
  double input_norm_sq = 0.0;

  /// q_alpha / sum q. All zeros when the total vanishes.
  std::vector<double> membership() const;
};

class ClusteringMachine {
 public:
  /// `groups` holds 0-based basis indices; they must be nonempty, pairwise
  /// disjoint and cover 0..basis.size()-1. Labels default to "O1".."OM".
  ClusteringMachine(OrthonormalSet basis, std::vector<std::vector<std::size_t>> groups,
                    std::vector<std::string> labels = {});

  std::size_t dim() const noexcept { return basis_.dim(); }
  std::size_t num_outputs() const noexcept { return groups_.size(); }
  const OrthonormalSet& basis() const noexcept { return basis_; }
  const std::vector<std::vector<std::size_t>>& groups() const noexcept { return groups_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// Q_alpha f.
  Signal project(std::size_t alpha, const Signal& f) const;
  /// f - sum_alpha Q_alpha f, the part of f outside span(basis).
  Signal residual(const Signal& f) const;
  ScoreVector scores(const Signal& f) const;

 private:
  OrthonormalSet basis_;
  std::vector<std::vector<std::size_t>> groups_;
  std::vector<std::string> labels_;
};

struct Thresholds {
  double high = 0.9;
  double low = 0.05;
};

namespace verdict {
struct Definite {
  std::size_t output;
};
struct Probable {
  std::size_t output;
  double score;
};
/// Ordered by descending score, then ascending output index.
struct Split {
  std::vector<std::pair<std::size_t, double>> candidates;
};
struct MissingOutput {
  double residual_norm;
};
struct Null {};
}  // namespace verdict

struct Verdict {
  std::variant<verdict::Definite, verdict::Probable, verdict::Split, verdict::MissingOutput,
               verdict::Null>
      kind;
  Thresholds thresholds;
  ScoreVector scores;

  std::string name() const;
};

/// Routes f to one of the decision cases. All thresholds are relative to
/// ||f||^2. Precedence: Definite > Probable > Split > Null > MissingOutput.
Verdict classify(const ClusteringMachine& cm, const Signal& f, Thresholds t = {});

/// Adds the normalized residual of f as a new singleton output group.
/// Returns the enlarged machine and the new basis vector.
std::pair<ClusteringMachine, Signal> extend_machine(const ClusteringMachine& cm, const Signal& f,
                                                    std::optional<std::string> label = {});

}  // namespace cmachine
