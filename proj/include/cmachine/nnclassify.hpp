#pragma once

// Binary nearest-neighbour diagnosis.
//
// A query is compared with every labelled record; d0 and d1 are the
// smallest dissimilarities to class 0 and class 1. The query takes the
// label of the closer class. On an exact tie the two minimizing records are
// dropped and the minima recomputed, as often as needed.

#include <cstddef>
#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "cmachine/error.hpp"
#include "cmachine/signal.hpp"

namespace cmachine::nn {

struct LabeledRecord {
  Signal features;
  int label;  // 0 or 1
};

class LabeledDataset {
 public:
  LabeledDataset(std::vector<LabeledRecord> records, std::vector<std::string> feature_names = {});

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return records_.size(); }
  const std::vector<LabeledRecord>& records() const noexcept { return records_; }
  const std::vector<std::string>& feature_names() const noexcept { return feature_names_; }
  std::size_t count(int label) const;

 private:
  std::vector<LabeledRecord> records_;
  std::vector<std::string> feature_names_;
  std::size_t dim_ = 0;
};

class DatasetError : public Error {
 public:
  enum class Kind { Io, Empty, Ragged, NonNumeric, UnknownLabel, OutOfRange };

  /// `row` is the 1-based line number in the file (0 when not tied to a row).
  DatasetError(Kind kind, std::size_t row, const std::string& message)
      : Error(row ? "row " + std::to_string(row) + ": " + message : message),
        kind_(kind),
        row_(row) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t row() const noexcept { return row_; }

 private:
  Kind kind_;
  std::size_t row_;
};

struct LoadOptions {
  /// Reject feature values outside [0, 10] (the symptom-score scale).
  bool range_check = false;
};

/// CSV with a header line; the last column is the 0/1 label.
LabeledDataset parse_dataset(std::istream& in, LoadOptions options = {});
LabeledDataset load_dataset(const std::filesystem::path& path, LoadOptions options = {});

/// Query rows share the training header; a trailing label column is optional
/// and returned in `labels` (-1 where absent).
struct QuerySet {
  std::vector<Signal> queries;
  std::vector<int> labels;
};
QuerySet parse_queries(std::istream& in, std::size_t dim);
QuerySet load_queries(const std::filesystem::path& path, std::size_t dim);

enum class Metric { F, SqNorm };

struct DiagnoseOptions {
  /// Scale query and records to unit norm before comparing. Zero vectors stay zero.
  bool normalize = false;
};

struct Diagnosis {
  int label = 0;
  double d0 = 0.0;
  double d1 = 0.0;
  int tie_rounds = 0;
};

inline constexpr double kTieTolerance = 1e-12;

/// Throws InvalidArgument when a class is empty and NumericalError with
/// "classes exhausted" when tie resolution runs out of records.
Diagnosis diagnose(const LabeledDataset& ds, const Signal& query, Metric metric,
                   DiagnoseOptions options = {});

}  // namespace cmachine::nn
