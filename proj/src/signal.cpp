#include "cmachine/signal.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "cmachine/error.hpp"

namespace cmachine {

namespace {

void validate(const std::vector<double>& entries) {
  if (entries.empty()) throw InvalidArgument("signal must have dimension >= 1");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!std::isfinite(entries[i])) {
      throw InvalidArgument("signal entry " + std::to_string(i) + " is not finite");
    }
  }
}

}  // namespace

Signal::Signal(std::vector<double> entries) : entries_(std::move(entries)) { validate(entries_); }

Signal::Signal(std::initializer_list<double> entries) : entries_(entries) { validate(entries_); }

Signal Signal::zeros(std::size_t dim) { return Signal(std::vector<double>(dim, 0.0)); }

Signal Signal::unit(std::size_t dim, std::size_t k) {
  if (k >= dim) throw InvalidArgument("basis index out of range");
  std::vector<double> v(dim, 0.0);
  v[k] = 1.0;
  return Signal(std::move(v));
}

double Signal::norm_sq() const {
  double s = 0.0;
  for (double x : entries_) s += x * x;
  return s;
}

double Signal::norm() const { return std::sqrt(norm_sq()); }

Signal Signal::normalized() const {
  const double n = norm();
  if (n == 0.0) throw InvalidArgument("cannot normalize the zero signal");
  return *this * (1.0 / n);
}

Signal Signal::operator+(const Signal& other) const {
  require_same_dim(*this, other);
  std::vector<double> out(entries_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += other.entries_[i];
  return Signal(std::move(out));
}

Signal Signal::operator-(const Signal& other) const {
  require_same_dim(*this, other);
  std::vector<double> out(entries_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= other.entries_[i];
  return Signal(std::move(out));
}

Signal Signal::operator*(double scale) const {
  std::vector<double> out(entries_);
  for (double& x : out) x *= scale;
  return Signal(std::move(out));
}

void require_same_dim(const Signal& f, const Signal& g) {
  if (f.dim() != g.dim()) throw DimensionError(f.dim(), g.dim());
}

std::string to_json_array(const Signal& s) { return nlohmann::json(s.values()).dump(); }

Signal signal_from_json_array(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument(std::string("malformed JSON signal: ") + e.what());
  }
  if (!j.is_array()) throw InvalidArgument("JSON signal must be an array of numbers");
  std::vector<double> v;
  v.reserve(j.size());
  for (const auto& x : j) {
    if (!x.is_number()) throw InvalidArgument("JSON signal must be an array of numbers");
    v.push_back(x.get<double>());
  }
  return Signal(std::move(v));
}

std::string to_csv_row(const Signal& s) {
  std::ostringstream out;
  out.precision(17);
  for (std::size_t i = 0; i < s.dim(); ++i) {
    if (i) out << ',';
    out << s[i];
  }
  return out.str();
}

Signal signal_from_csv_row(const std::string& row) {
  std::vector<double> v;
  std::stringstream in(row);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(cell, &used);
    } catch (const std::exception&) {
      throw InvalidArgument("non-numeric CSV cell '" + cell + "'");
    }
    while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
    if (used != cell.size()) throw InvalidArgument("non-numeric CSV cell '" + cell + "'");
    v.push_back(x);
  }
  return Signal(std::move(v));
}

}  // namespace cmachine
