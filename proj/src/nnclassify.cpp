#include "cmachine/nnclassify.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "cmachine/hilbert.hpp"

namespace cmachine::nn {

namespace {

using Kind = DatasetError::Kind;

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream in(line);
  std::string cell;
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

double parse_number(const std::string& raw, std::size_t row) {
  const std::string cell = trim(raw);
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(cell, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (cell.empty() || used != cell.size() || !std::isfinite(x)) {
    throw DatasetError(Kind::NonNumeric, row, "non-numeric cell '" + cell + "'");
  }
  return x;
}

int parse_label(const std::string& raw, std::size_t row) {
  const std::string cell = trim(raw);
  if (cell == "0") return 0;
  if (cell == "1") return 1;
  throw DatasetError(Kind::UnknownLabel, row, "unknown label '" + cell + "' (expected 0 or 1)");
}

bool blank(const std::string& line) { return trim(line).empty(); }

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

Signal maybe_normalized(const Signal& s, bool normalize) {
  if (!normalize || s.norm() == 0.0) return s;
  return s.normalized();
}

}  // namespace

LabeledDataset::LabeledDataset(std::vector<LabeledRecord> records,
                               std::vector<std::string> feature_names)
    : records_(std::move(records)), feature_names_(std::move(feature_names)) {
  if (records_.empty()) throw InvalidArgument("dataset has no records");
  dim_ = records_.front().features.dim();
  for (const auto& r : records_) {
    require_same_dim(records_.front().features, r.features);
    if (r.label != 0 && r.label != 1) throw InvalidArgument("labels must be 0 or 1");
  }
  if (!feature_names_.empty() && feature_names_.size() != dim_) {
    throw InvalidArgument("one feature name per column is required");
  }
}

std::size_t LabeledDataset::count(int label) const {
  return static_cast<std::size_t>(std::count_if(
      records_.begin(), records_.end(), [&](const LabeledRecord& r) { return r.label == label; }));
}

LabeledDataset parse_dataset(std::istream& in, LoadOptions options) {
  std::string line;
  std::size_t row = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++row;
    line = strip_cr(line);
    if (blank(line)) continue;
    header = split_csv(line);
    break;
  }
  if (header.size() < 2) {
    throw DatasetError(Kind::Empty, row, "dataset needs a header with at least one feature and a label");
  }
  const std::size_t dim = header.size() - 1;

  std::vector<LabeledRecord> records;
  while (std::getline(in, line)) {
    ++row;
    line = strip_cr(line);
    if (blank(line)) continue;
    const auto cells = split_csv(line);
    if (cells.size() != header.size()) {
      throw DatasetError(Kind::Ragged, row,
                         "expected " + std::to_string(header.size()) + " columns, found " +
                             std::to_string(cells.size()));
    }
    std::vector<double> features(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      features[i] = parse_number(cells[i], row);
      if (options.range_check && (features[i] < 0.0 || features[i] > 10.0)) {
        throw DatasetError(Kind::OutOfRange, row,
                           "feature '" + trim(header[i]) + "' outside [0, 10]");
      }
    }
    records.push_back({Signal(std::move(features)), parse_label(cells[dim], row)});
  }
  if (records.empty()) throw DatasetError(Kind::Empty, 0, "dataset has no records");

  std::vector<std::string> names;
  for (std::size_t i = 0; i < dim; ++i) names.push_back(trim(header[i]));
  return LabeledDataset(std::move(records), std::move(names));
}

LabeledDataset load_dataset(const std::filesystem::path& path, LoadOptions options) {
  std::ifstream in(path);
  if (!in) throw DatasetError(Kind::Io, 0, "cannot open " + path.string());
  return parse_dataset(in, options);
}

QuerySet parse_queries(std::istream& in, std::size_t dim) {
  QuerySet out;
  std::string line;
  std::size_t row = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++row;
    line = strip_cr(line);
    if (blank(line)) continue;
    const auto cells = split_csv(line);
    if (!header_seen) {
      header_seen = true;
      if (cells.size() != dim && cells.size() != dim + 1) {
        throw DatasetError(Kind::Ragged, row,
                           "query header has " + std::to_string(cells.size()) +
                               " columns, expected " + std::to_string(dim) + " or " +
                               std::to_string(dim + 1));
      }
      continue;
    }
    if (cells.size() != dim && cells.size() != dim + 1) {
      throw DatasetError(Kind::Ragged, row,
                         "expected " + std::to_string(dim) + " or " + std::to_string(dim + 1) +
                             " columns, found " + std::to_string(cells.size()));
    }
    std::vector<double> features(dim);
    for (std::size_t i = 0; i < dim; ++i) features[i] = parse_number(cells[i], row);
    out.queries.emplace_back(std::move(features));
    out.labels.push_back(cells.size() == dim + 1 ? parse_label(cells[dim], row) : -1);
  }
  if (!header_seen) throw DatasetError(Kind::Empty, 0, "query file is empty");
  return out;
}

QuerySet load_queries(const std::filesystem::path& path, std::size_t dim) {
  std::ifstream in(path);
  if (!in) throw DatasetError(Kind::Io, 0, "cannot open " + path.string());
  return parse_queries(in, dim);
}

Diagnosis diagnose(const LabeledDataset& ds, const Signal& query, Metric metric,
                   DiagnoseOptions options) {
  if (query.dim() != ds.dim()) throw DimensionError(ds.dim(), query.dim());
  if (ds.count(0) == 0 || ds.count(1) == 0) {
    throw InvalidArgument("both classes need at least one record");
  }

  const Signal q = maybe_normalized(query, options.normalize);
  std::vector<double> dist;
  dist.reserve(ds.size());
  for (const auto& r : ds.records()) {
    const Signal x = maybe_normalized(r.features, options.normalize);
    dist.push_back(metric == Metric::F ? dissimilarity(q, x) : sq_distance(q, x));
  }

  std::vector<bool> removed(ds.size(), false);
  Diagnosis d;
  for (;;) {
    constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
    std::size_t best[2] = {kNone, kNone};
    for (std::size_t i = 0; i < ds.size(); ++i) {
      if (removed[i]) continue;
      const int label = ds.records()[i].label;
      if (best[label] == kNone || dist[i] < dist[best[label]]) best[label] = i;
    }
    if (best[0] == kNone || best[1] == kNone) {
      throw NumericalError("classes exhausted while resolving a tie");
    }
    d.d0 = dist[best[0]];
    d.d1 = dist[best[1]];
    if (std::abs(d.d0 - d.d1) > kTieTolerance) {
      d.label = d.d0 < d.d1 ? 0 : 1;
      return d;
    }
    removed[best[0]] = true;
    removed[best[1]] = true;
    ++d.tie_rounds;
  }
}

}  // namespace cmachine::nn
