#include <gtest/gtest.h>

#include "cmachine/error.hpp"
#include "cmachine/gates.hpp"

namespace cmachine::gates {
namespace {

constexpr GateProjector kAll[] = {GateProjector::XorLow, GateProjector::XorHigh, GateProjector::OrLow,
                                  GateProjector::OrHigh};

TEST(Gates, ProjectorDiagonals) {
  EXPECT_EQ(projector_matrix(GateProjector::XorLow).diagonal(), Eigen::Vector4d(1, 0, 0, 1));
  EXPECT_EQ(projector_matrix(GateProjector::XorHigh).diagonal(), Eigen::Vector4d(0, 1, 1, 0));
  EXPECT_EQ(projector_matrix(GateProjector::OrLow).diagonal(), Eigen::Vector4d(1, 0, 0, 0));
  EXPECT_EQ(projector_matrix(GateProjector::OrHigh).diagonal(), Eigen::Vector4d(0, 1, 1, 1));
  for (GateProjector p : kAll) {
    const Eigen::Matrix4d q = projector_matrix(p);
    EXPECT_TRUE(q.isDiagonal());
    EXPECT_EQ(q * q, q);
  }
}

TEST(Gates, ScoreExamples) {
  EXPECT_EQ(gate_scores(GateKind::Xor, Signal::unit(4, 3)), std::make_pair(1.0, 0.0));
  EXPECT_EQ(gate_scores(GateKind::Or, Signal::unit(4, 0)), std::make_pair(1.0, 0.0));
  const auto [q1, q2] = gate_scores(GateKind::Xor, Signal{0.3, -1.2, 0.5, 2.0}.normalized());
  EXPECT_NEAR(q1 + q2, 1.0, 1e-15);
  EXPECT_THROW(gate_scores(GateKind::Or, Signal{1, 0, 0}), DimensionError);
}

// Scores computed by hand from the diagonals, not through the machine.
TEST(Gates, ScoresMatchDiagonalFormula) {
  const Signal f{0.1, 0.7, -0.4, 0.2};
  const auto [x1, x2] = gate_scores(GateKind::Xor, f);
  EXPECT_DOUBLE_EQ(x1, 0.01 + 0.04);
  EXPECT_DOUBLE_EQ(x2, 0.49 + 0.16);
  const auto [o1, o2] = gate_scores(GateKind::Or, f);
  EXPECT_DOUBLE_EQ(o1, 0.01);
  EXPECT_DOUBLE_EQ(o2, 0.49 + 0.16 + 0.04);
}

TEST(Gates, TruthTableFidelity) {
  for (GateKind kind : {GateKind::Xor, GateKind::Or}) {
    const ClusteringMachine cm = gate_machine(kind);
    EXPECT_EQ(cm.labels(), (std::vector<std::string>{"0", "1"}));
    for (std::size_t j = 0; j < 4; ++j) {
      const int a = static_cast<int>(j >> 1), b = static_cast<int>(j & 1);
      const int expected = kind == GateKind::Xor ? (a ^ b) : (a | b);
      EXPECT_EQ(truth_value(kind, j), expected);
      const auto [q1, q2] = gate_scores(kind, Signal::unit(4, j));
      EXPECT_EQ(expected == 0 ? q1 : q2, 1.0);
      EXPECT_EQ(expected == 0 ? q2 : q1, 0.0);
      const Verdict v = classify(cm, Signal::unit(4, j));
      EXPECT_EQ(std::get<verdict::Definite>(v.kind).output, static_cast<std::size_t>(expected));
    }
  }
  EXPECT_THROW(truth_value(GateKind::Xor, 4), InvalidArgument);
}

TEST(Transport, OrToXor) {
  const TransportMap map;
  EXPECT_EQ(map.transport(Direction::OrToXor, GateProjector::OrLow), GateProjector::XorLow);
  EXPECT_EQ(map.transport(Direction::OrToXor, GateProjector::OrHigh), GateProjector::XorHigh);
  EXPECT_EQ(map.transport(Direction::XorToOr, GateProjector::XorLow), GateProjector::OrLow);
  EXPECT_EQ(map.transport(Direction::XorToOr, GateProjector::XorHigh), GateProjector::OrHigh);
}

TEST(Transport, RoundTrips) {
  const TransportMap map;
  for (GateProjector p : {GateProjector::OrLow, GateProjector::OrHigh}) {
    EXPECT_EQ(map.transport(Direction::XorToOr, map.transport(Direction::OrToXor, p)), p);
  }
  for (GateProjector p : {GateProjector::XorLow, GateProjector::XorHigh}) {
    EXPECT_EQ(map.transport(Direction::OrToXor, map.transport(Direction::XorToOr, p)), p);
  }
}

TEST(Transport, AnnihilatedInputsThrow) {
  const TransportMap map;
  EXPECT_THROW(map.transport(Direction::OrToXor, GateProjector::XorLow), InvalidArgument);
  EXPECT_THROW(map.transport(Direction::XorToOr, GateProjector::OrHigh), InvalidArgument);
}

TEST(Transport, OperatorStructure) {
  const TransportMap map;
  const Eigen::Matrix4d& u = map.u();
  const Eigen::Vector4d p1 = map.phi(GateProjector::XorLow), p2 = map.phi(GateProjector::XorHigh);
  const Eigen::Vector4d p3 = map.phi(GateProjector::OrLow), p4 = map.phi(GateProjector::OrHigh);
  EXPECT_EQ(u * p3, p1);
  EXPECT_EQ(u * p4, p2);
  EXPECT_TRUE((u * p1).isZero());
  EXPECT_TRUE((u * p2).isZero());
  EXPECT_EQ(u.transpose() * u, p3 * p3.transpose() + p4 * p4.transpose());
  EXPECT_EQ(Eigen::FullPivLU<Eigen::Matrix4d>(u).rank(), 2);
  for (GateProjector p : kAll) EXPECT_EQ(map.phi_inverse(map.phi(p)), p);
  EXPECT_THROW(map.phi_inverse(Eigen::Vector4d(1, 1, 0, 0)), InvalidArgument);
}

TEST(Traces, SimilarityObstruction) {
  const TraceObstruction t = similarity_obstruction();
  EXPECT_EQ(t.xor_low, 2.0);
  EXPECT_EQ(t.or_low, 1.0);
  EXPECT_EQ(projector_matrix(GateProjector::XorHigh).trace(), 2.0);
  EXPECT_EQ(projector_matrix(GateProjector::OrHigh).trace(), 3.0);
  EXPECT_EQ(projector_matrix(GateProjector::XorLow).trace() + projector_matrix(GateProjector::XorHigh).trace(),
            projector_matrix(GateProjector::OrLow).trace() + projector_matrix(GateProjector::OrHigh).trace());
  EXPECT_EQ(projector_name(GateProjector::OrLow), "Q~1");
}

}  // namespace
}  // namespace cmachine::gates
