#pragma once

// Finite frames over R^n.
//
// A family {psi_j} is an (A,B)-frame when A||f||^2 <= sum_j <psi_j,f>^2 <=
// B||f||^2 for every f. The optimal bounds are the extreme eigenvalues of
// the frame operator S = sum_j |psi_j><psi_j|, and the canonical dual is
// psi~_j = S^{-1} psi_j, which gives f = sum_j <psi_j,f> psi~_j.
//
// Frames are stored as sparse analysis operators (row j is psi_j) so that
// highly redundant frames over spectra with tens of thousands of bins stay
// cheap.

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "cmachine/signal.hpp"

namespace cmachine {

struct FrameBounds {
  double lower = 0.0;  // A
  double upper = 0.0;  // B
};

/// |A - B| <= 1e-10 * max(A, 1).
bool is_tight(const FrameBounds& b);

using SparseRows = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Optimal frame bounds of a family of vectors. Throws NumericalError with
/// "not a frame: A = 0" when the family does not span.
FrameBounds frame_bounds(const std::vector<Signal>& vectors);

/// Canonical dual family S^{-1} psi_j (psi_j / A for tight frames).
std::vector<Signal> canonical_dual(const std::vector<Signal>& vectors, const FrameBounds& bounds);

class Frame {
 public:
  explicit Frame(const std::vector<Signal>& vectors);
  /// Takes the analysis operator directly, rows are frame vectors.
  explicit Frame(SparseRows analysis);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(analysis_.cols()); }
  std::size_t size() const noexcept { return static_cast<std::size_t>(analysis_.rows()); }
  const FrameBounds& bounds() const noexcept { return bounds_; }
  bool tight() const noexcept { return is_tight(bounds_); }

  Signal vector(std::size_t j) const;
  Signal dual_vector(std::size_t j) const;
  std::vector<Signal> vectors() const;
  std::vector<Signal> dual_vectors() const;

  const SparseRows& analysis_operator() const noexcept { return analysis_; }
  const SparseRows& dual_analysis_operator() const noexcept { return dual_; }

  /// sum_j ||psi_j|| and sum_j ||psi~_j||.
  double vector_norm_sum() const;
  double dual_norm_sum() const;

  /// The canonical dual regarded as a frame in its own right.
  Frame dual_frame() const;

 private:
  void initialize();

  SparseRows analysis_;
  SparseRows dual_;
  FrameBounds bounds_;
};

/// {e_1, s e_1, e_2, s e_2, ..., e_n, s e_n}, tight with A = 1 + s^2.
Frame scaled_pair_frame(std::size_t n, double scale);

/// (<psi_j, f>)_j.
std::vector<double> analysis(const Frame& frame, const Signal& f);
/// (<psi~_j, f>)_j.
std::vector<double> dual_analysis(const Frame& frame, const Signal& f);
/// sum_j c_j psi_j.
Signal synthesis(const Frame& frame, const std::vector<double>& coefficients);
/// sum_j c_j psi~_j.
Signal dual_synthesis(const Frame& frame, const std::vector<double>& coefficients);

struct DissimilarityReport {
  double delta = 0.0;
  double nabla = 0.0;
  double sup_analysis = 0.0;
  double sup_dual = 0.0;
};

DissimilarityReport compare(const Frame& frame, const Signal& f, const Signal& g);
double delta(const Frame& frame, const Signal& f, const Signal& g);
double nabla(const Frame& frame, const Signal& f, const Signal& g);

enum class Measure { Norm, Delta, Nabla };

/// Membership of f in the radius-epsilon neighborhood of `center`.
bool cluster_member(const Frame& frame, const Signal& center, const Signal& f, double epsilon,
                    Measure measure);

/// Delta(f,g) <= eps implies ||f - g|| <= eps * min(sum ||psi_j||, sum ||psi~_j||).
double norm_bound_factor(const Frame& frame);

std::string frame_to_json(const Frame& frame);
/// Parses {"dim": n, "vectors": [[...], ...]}. Duals are always recomputed.
Frame frame_from_json(const std::string& text);

}  // namespace cmachine
