#include "cmachine/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cmachine/error.hpp"

namespace cmachine {

namespace {

// Relative floor below which a score counts as zero when routing verdicts.
constexpr double kZeroScoreRel = 1e-10;
constexpr double kResidualFloor = 1e-8;

std::vector<double> subtract_components(std::vector<double> v, const OrthonormalSet& basis) {
  for (const Signal& e : basis.vectors()) {
    const auto ev = e.entries();
    double c = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) c += ev[i] * v[i];
    if (c == 0.0) continue;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * ev[i];
  }
  return v;
}

}  // namespace

double inner(const Signal& f, const Signal& g) {
  require_same_dim(f, g);
  double s = 0.0;
  for (std::size_t i = 0; i < f.dim(); ++i) s += f[i] * g[i];
  return s;
}

double dissimilarity(const Signal& f, const Signal& g) {
  require_same_dim(f, g);
  return f.norm() * g.norm() - std::abs(inner(f, g));
}

double sq_distance(const Signal& f, const Signal& g) {
  require_same_dim(f, g);
  double s = 0.0;
  for (std::size_t i = 0; i < f.dim(); ++i) {
    const double d = f[i] - g[i];
    s += d * d;
  }
  return s;
}

bool norm_ball_member(const Signal& center, const Signal& f, double radius) {
  if (!(radius > 0.0)) throw InvalidArgument("cluster radius must be positive");
  return within_radius(std::sqrt(sq_distance(center, f)), radius);
}

// --- OrthonormalSet --------------------------------------------------------

OrthonormalSet::OrthonormalSet(std::vector<Signal> vectors) : vectors_(std::move(vectors)) {
  if (vectors_.empty()) throw InvalidArgument("orthonormal set must not be empty");
  dim_ = vectors_.front().dim();
  for (const Signal& v : vectors_) require_same_dim(vectors_.front(), v);
  if (vectors_.size() > dim_) {
    throw InvalidArgument("orthonormal set has more vectors than the space dimension");
  }
  for (std::size_t i = 0; i < vectors_.size(); ++i) {
    for (std::size_t j = i; j < vectors_.size(); ++j) {
      const double expected = i == j ? 1.0 : 0.0;
      if (std::abs(inner(vectors_[i], vectors_[j]) - expected) > kOrthonormalityTol) {
        throw InvalidArgument("vectors " + std::to_string(i) + " and " + std::to_string(j) +
                              " violate orthonormality");
      }
    }
  }
}

OrthonormalSet OrthonormalSet::canonical(std::size_t dim) { return canonical(dim, dim); }

OrthonormalSet OrthonormalSet::canonical(std::size_t dim, std::size_t count) {
  std::vector<Signal> v;
  v.reserve(count);
  for (std::size_t k = 0; k < count; ++k) v.push_back(Signal::unit(dim, k));
  return OrthonormalSet(std::move(v));
}

// --- ScoreVector -----------------------------------------------------------

std::vector<double> ScoreVector::membership() const {
  std::vector<double> m(scores.size(), 0.0);
  if (total <= 0.0) return m;
  for (std::size_t a = 0; a < scores.size(); ++a) m[a] = scores[a] / total;
  return m;
}

// --- ClusteringMachine -----------------------------------------------------

ClusteringMachine::ClusteringMachine(OrthonormalSet basis,
                                     std::vector<std::vector<std::size_t>> groups,
                                     std::vector<std::string> labels)
    : basis_(std::move(basis)), groups_(std::move(groups)), labels_(std::move(labels)) {
  if (groups_.empty()) throw InvalidArgument("a clustering machine needs at least one group");
  std::vector<int> seen(basis_.size(), 0);
  for (const auto& g : groups_) {
    if (g.empty()) throw InvalidArgument("output groups must be nonempty");
    for (std::size_t k : g) {
      if (k >= basis_.size()) throw InvalidArgument("group index out of range");
      if (seen[k]++) throw InvalidArgument("output groups overlap at index " + std::to_string(k));
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    throw InvalidArgument("output groups do not cover every basis vector");
  }
  if (labels_.empty()) {
    for (std::size_t a = 0; a < groups_.size(); ++a) labels_.push_back("O" + std::to_string(a + 1));
  } else if (labels_.size() != groups_.size()) {
    throw InvalidArgument("one label per output group is required");
  }
}

Signal ClusteringMachine::project(std::size_t alpha, const Signal& f) const {
  if (f.dim() != dim()) throw DimensionError(dim(), f.dim());
  if (alpha >= groups_.size()) throw InvalidArgument("output index out of range");
  std::vector<double> out(dim(), 0.0);
  for (std::size_t k : groups_[alpha]) {
    const Signal& e = basis_[k];
    const double c = inner(e, f);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += c * e[i];
  }
  return Signal(std::move(out));
}

Signal ClusteringMachine::residual(const Signal& f) const {
  if (f.dim() != dim()) throw DimensionError(dim(), f.dim());
  return Signal(subtract_components(f.values(), basis_));
}

ScoreVector ClusteringMachine::scores(const Signal& f) const {
  if (f.dim() != dim()) throw DimensionError(dim(), f.dim());
  ScoreVector out;
  out.scores.reserve(groups_.size());
  for (const auto& g : groups_) {
    double q = 0.0;
    for (std::size_t k : g) {
      const double c = inner(basis_[k], f);
      q += c * c;
    }
    out.scores.push_back(q);
  }
  out.total = std::accumulate(out.scores.begin(), out.scores.end(), 0.0);
  out.input_norm_sq = f.norm_sq();
  return out;
}

// --- Verdicts --------------------------------------------------------------

std::string Verdict::name() const {
  struct Namer {
    std::string operator()(const verdict::Definite&) const { return "definite"; }
    std::string operator()(const verdict::Probable&) const { return "probable"; }
    std::string operator()(const verdict::Split&) const { return "split"; }
    std::string operator()(const verdict::MissingOutput&) const { return "missing_output"; }
    std::string operator()(const verdict::Null&) const { return "null"; }
  };
  return std::visit(Namer{}, kind);
}

Verdict classify(const ClusteringMachine& cm, const Signal& f, Thresholds t) {
  if (!(t.low > 0.0 && t.low < t.high && t.high <= 1.0)) {
    throw InvalidArgument("thresholds must satisfy 0 < low < high <= 1");
  }
  ScoreVector sv = cm.scores(f);
  const double nf = sv.input_norm_sq;
  if (nf == 0.0) throw InvalidArgument("cannot classify the zero signal");

  const auto& q = sv.scores;
  const std::size_t best =
      static_cast<std::size_t>(std::max_element(q.begin(), q.end()) - q.begin());

  Verdict v{verdict::Null{}, t, sv};
  if (q[best] >= nf * (1.0 - kOrthonormalityTol)) {
    v.kind = verdict::Definite{best};
    return v;
  }
  if (q[best] >= t.high * nf) {
    v.kind = verdict::Probable{best, q[best]};
    return v;
  }

  std::vector<std::pair<std::size_t, double>> nonzero;
  for (std::size_t a = 0; a < q.size(); ++a) {
    if (q[a] > kZeroScoreRel * nf) nonzero.emplace_back(a, q[a]);
  }
  if (nonzero.size() >= 2 && sv.total >= t.high * nf) {
    std::sort(nonzero.begin(), nonzero.end(), [](const auto& x, const auto& y) {
      if (x.second != y.second) return x.second > y.second;
      return x.first < y.first;
    });
    v.kind = verdict::Split{std::move(nonzero)};
    return v;
  }
  if (std::all_of(q.begin(), q.end(), [&](double s) { return s <= t.low * nf; })) {
    return v;  // Null
  }
  v.kind = verdict::MissingOutput{cm.residual(f).norm()};
  return v;
}

std::pair<ClusteringMachine, Signal> extend_machine(const ClusteringMachine& cm, const Signal& f,
                                                    std::optional<std::string> label) {
  if (f.dim() != cm.dim()) throw DimensionError(cm.dim(), f.dim());
  // Two Gram-Schmidt passes keep the new vector orthogonal to working precision.
  std::vector<double> r = subtract_components(f.values(), cm.basis());
  r = subtract_components(std::move(r), cm.basis());
  Signal residual(std::move(r));
  const double rn = residual.norm();
  if (rn <= kResidualFloor) throw InvalidArgument("signal already spanned by the machine");
  Signal e_new = residual * (1.0 / rn);

  std::vector<Signal> vectors = cm.basis().vectors();
  vectors.push_back(e_new);
  auto groups = cm.groups();
  groups.push_back({vectors.size() - 1});
  auto labels = cm.labels();
  labels.push_back(label.value_or("O" + std::to_string(groups.size())));
  return {ClusteringMachine(OrthonormalSet(std::move(vectors)), std::move(groups),
                            std::move(labels)),
          std::move(e_new)};
}

}  // namespace cmachine
