#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace cmachine {

/// Dense real vector of fixed dimension. Every entry is finite and the
/// dimension is at least one; both are checked on construction.
class Signal {
 public:
  explicit Signal(std::vector<double> entries);
  Signal(std::initializer_list<double> entries);

  static Signal zeros(std::size_t dim);
  /// The k-th canonical basis vector (0-based) of R^dim.
  static Signal unit(std::size_t dim, std::size_t k);

  std::size_t dim() const noexcept { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }
  std::span<const double> entries() const noexcept { return entries_; }
  const std::vector<double>& values() const noexcept { return entries_; }

  double norm() const;
  double norm_sq() const;
  /// Unit-norm copy. Throws InvalidArgument for the zero vector.
  Signal normalized() const;

  Signal operator+(const Signal& other) const;
  Signal operator-(const Signal& other) const;
  Signal operator*(double scale) const;
  friend Signal operator*(double scale, const Signal& s) { return s * scale; }

  bool operator==(const Signal&) const = default;

 private:
  std::vector<double> entries_;
};

/// Throws DimensionError unless both signals share a dimension.
void require_same_dim(const Signal& f, const Signal& g);

/// JSON array text, e.g. "[1,0.5,2]".
std::string to_json_array(const Signal& s);
Signal signal_from_json_array(const std::string& text);

/// Single CSV row, e.g. "1,0.5,2".
std::string to_csv_row(const Signal& s);
Signal signal_from_csv_row(const std::string& row);

}  // namespace cmachine
