#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "cmachine/error.hpp"
#include "cmachine/hilbert.hpp"
#include "cmachine/nnclassify.hpp"
#include "support/random.hpp"

namespace cmachine::nn {
namespace {

using cmachine::testing::Rng;

LabeledDataset two_points() {
  return LabeledDataset({{Signal{1, 0}, 0}, {Signal{0, 1}, 1}});
}

DatasetError::Kind parse_error(const std::string& csv, LoadOptions options = {}) {
  std::istringstream in(csv);
  try {
    parse_dataset(in, options);
  } catch (const DatasetError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no DatasetError for:\n" << csv;
  return DatasetError::Kind::Io;
}

// Plain 1-NN with squared distance; ties between classes broken by record order.
int brute_force_label(const LabeledDataset& ds, const Signal& q) {
  double best = 1e300;
  int label = -1;
  for (const auto& r : ds.records()) {
    double d = 0;
    for (std::size_t i = 0; i < q.dim(); ++i) d += (q[i] - r.features[i]) * (q[i] - r.features[i]);
    if (d < best) {
      best = d;
      label = r.label;
    }
  }
  return label;
}

TEST(Diagnose, HandWorkedExample) {
  const Diagnosis d = diagnose(two_points(), Signal{0.9, 0.1}, Metric::SqNorm);
  EXPECT_NEAR(d.d0, 0.02, 1e-15);
  EXPECT_NEAR(d.d1, 1.62, 1e-15);
  EXPECT_EQ(d.label, 0);
  EXPECT_EQ(d.tie_rounds, 0);
}

TEST(Diagnose, ExactMatchInClassOne) {
  Rng rng(1);
  std::vector<LabeledRecord> records;
  for (int i = 0; i < 20; ++i) records.push_back({rng.signal(6, 0, 10), i % 2});
  const LabeledDataset ds(records);
  for (const auto& r : ds.records()) {
    if (r.label != 1) continue;
    const Diagnosis d = diagnose(ds, r.features, Metric::SqNorm);
    EXPECT_EQ(d.d1, 0.0);
    EXPECT_EQ(d.label, 1);
  }
}

TEST(Diagnose, SymmetricTieExhaustsClasses) {
  try {
    diagnose(two_points(), Signal{1, 1}.normalized(), Metric::SqNorm);
    FAIL();
  } catch (const NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find("classes exhausted"), std::string::npos);
  }
}

TEST(Diagnose, TieResolvedByNextRecords) {
  const LabeledDataset ds({{Signal{1, 0}, 0}, {Signal{0, 1}, 1}, {Signal{2, 0}, 0}, {Signal{0, 3}, 1}});
  const Diagnosis d = diagnose(ds, Signal{0, 0}, Metric::SqNorm);
  EXPECT_EQ(d.tie_rounds, 1);
  EXPECT_EQ(d.d0, 4.0);
  EXPECT_EQ(d.d1, 9.0);
  EXPECT_EQ(d.label, 0);
}

TEST(Diagnose, FMetricIsScaleBlind) {
  const LabeledDataset ds({{Signal{10, 0}, 0}, {Signal{0.5, 0.5}, 1}});
  const Diagnosis d = diagnose(ds, Signal{0.1, 0}, Metric::F);
  EXPECT_EQ(d.d0, 0.0);
  EXPECT_EQ(d.label, 0);
  EXPECT_EQ(diagnose(ds, Signal{0.1, 0}, Metric::SqNorm).label, 1);
}

TEST(Diagnose, Preconditions) {
  EXPECT_THROW(diagnose(two_points(), Signal{1, 2, 3}, Metric::F), DimensionError);
  const LabeledDataset only_zero({{Signal{1, 0}, 0}, {Signal{2, 0}, 0}});
  EXPECT_THROW(diagnose(only_zero, Signal{1, 1}, Metric::F), InvalidArgument);
}

TEST(Diagnose, MatchesBruteForceOracle) {
  Rng rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<LabeledRecord> records;
    const std::size_t n = 2 + rng.index(100);
    for (std::size_t i = 0; i < n; ++i) records.push_back({rng.signal(35, 0, 10), i < 2 ? static_cast<int>(i) : static_cast<int>(rng.index(2))});
    const LabeledDataset ds(records);
    for (int q = 0; q < 10; ++q) {
      const Signal query = rng.signal(35, 0, 10);
      EXPECT_EQ(diagnose(ds, query, Metric::SqNorm).label, brute_force_label(ds, query));
    }
  }
}

TEST(Diagnose, PermutationInvariant) {
  Rng rng(3);
  std::vector<LabeledRecord> records;
  for (int i = 0; i < 60; ++i) records.push_back({rng.signal(8, 0, 10), i % 2});
  const LabeledDataset ds(records);
  for (int trial = 0; trial < 10; ++trial) {
    std::shuffle(records.begin(), records.end(), rng.engine());
    const LabeledDataset shuffled(records);
    for (int q = 0; q < 10; ++q) {
      const Signal query = rng.signal(8, 0, 10);
      for (Metric m : {Metric::F, Metric::SqNorm}) {
        const Diagnosis a = diagnose(ds, query, m), b = diagnose(shuffled, query, m);
        EXPECT_EQ(a.label, b.label);
        EXPECT_EQ(a.d0, b.d0);
        EXPECT_EQ(a.d1, b.d1);
      }
    }
  }
}

TEST(Diagnose, MetricsAgreeOnNormalizedNonnegativeData) {
  Rng rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<LabeledRecord> records;
    for (int i = 0; i < 40; ++i) records.push_back({rng.signal(10, 0, 1), i % 2});
    const LabeledDataset ds(records);
    const Signal query = rng.signal(10, 0, 1);
    EXPECT_EQ(diagnose(ds, query, Metric::F, {true}).label, diagnose(ds, query, Metric::SqNorm, {true}).label);
  }
}

TEST(Dataset, ParsesHeaderAndRows) {
  std::istringstream in("a,b,label\n1,2,0\n\n3.5, 4 ,1\r\n");
  const LabeledDataset ds = parse_dataset(in);
  EXPECT_EQ(ds.dim(), 2u);
  EXPECT_EQ(ds.size(), 2u);
  EXPECT_EQ(ds.feature_names(), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(ds.records()[1].features, (Signal{3.5, 4}));
  EXPECT_EQ(ds.count(0), 1u);
}

TEST(Dataset, AllZeroSymptomRowAccepted) {
  std::string csv;
  for (int i = 0; i < 35; ++i) csv += "s" + std::to_string(i) + ",";
  csv += "label\n";
  for (int i = 0; i < 35; ++i) csv += "0,";
  csv += "0\n";
  std::istringstream in(csv);
  const LabeledDataset ds = parse_dataset(in, {true});
  EXPECT_EQ(ds.dim(), 35u);
  EXPECT_EQ(ds.records()[0].features, Signal::zeros(35));
}

TEST(Dataset, ErrorKindsCarryRows) {
  EXPECT_EQ(parse_error("a,label\n1,2\n"), DatasetError::Kind::UnknownLabel);
  EXPECT_EQ(parse_error("a,b,label\n1,0\n"), DatasetError::Kind::Ragged);
  EXPECT_EQ(parse_error("a,label\nx,0\n"), DatasetError::Kind::NonNumeric);
  EXPECT_EQ(parse_error("a,label\n1e999,0\n"), DatasetError::Kind::NonNumeric);
  EXPECT_EQ(parse_error("a,label\n"), DatasetError::Kind::Empty);
  EXPECT_EQ(parse_error(""), DatasetError::Kind::Empty);
  EXPECT_EQ(parse_error("a,label\n11,0\n", {true}), DatasetError::Kind::OutOfRange);
  EXPECT_NO_THROW({
    std::istringstream in("a,label\n11,0\n");
    parse_dataset(in);
  });

  std::istringstream in("a,label\n1,0\n2,0\n3,7\n");
  try {
    parse_dataset(in);
    FAIL();
  } catch (const DatasetError& e) {
    EXPECT_EQ(e.row(), 4u);
    EXPECT_EQ(std::string(e.what()).rfind("row 4: ", 0), 0u);
  }
}

TEST(Dataset, MissingFile) {
  try {
    load_dataset("/nonexistent/train.csv");
    FAIL();
  } catch (const DatasetError& e) {
    EXPECT_EQ(e.kind(), DatasetError::Kind::Io);
  }
}

TEST(Queries, OptionalLabelColumn) {
  std::istringstream in("a,b,label\n1,2\n3,4,1\n");
  const QuerySet q = parse_queries(in, 2);
  ASSERT_EQ(q.queries.size(), 2u);
  EXPECT_EQ(q.labels, (std::vector<int>{-1, 1}));
  std::istringstream bad("a,b\n1,2,3,4\n");
  EXPECT_THROW(parse_queries(bad, 2), DatasetError);
}

}  // namespace
}  // namespace cmachine::nn
