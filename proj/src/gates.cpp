#include "cmachine/gates.hpp"

#include "cmachine/error.hpp"

namespace cmachine::gates {

namespace {

constexpr std::array<GateProjector, 4> kProjectors = {
    GateProjector::XorLow, GateProjector::XorHigh, GateProjector::OrLow, GateProjector::OrHigh};

std::size_t index_of(GateProjector p) { return static_cast<std::size_t>(p); }

}  // namespace

ClusteringMachine gate_machine(GateKind kind) {
  auto basis = OrthonormalSet::canonical(4);
  if (kind == GateKind::Xor) return ClusteringMachine(basis, {{0, 3}, {1, 2}}, {"0", "1"});
  return ClusteringMachine(basis, {{0}, {1, 2, 3}}, {"0", "1"});
}

std::pair<double, double> gate_scores(GateKind kind, const Signal& f) {
  if (f.dim() != 4) throw DimensionError(4, f.dim());
  const ScoreVector s = gate_machine(kind).scores(f);
  return {s.scores[0], s.scores[1]};
}

int truth_value(GateKind kind, std::size_t input) {
  if (input > 3) throw InvalidArgument("gate input index must be in 0..3");
  const int a = static_cast<int>(input >> 1) & 1;
  const int b = static_cast<int>(input) & 1;
  return kind == GateKind::Xor ? (a ^ b) : (a | b);
}

Eigen::Matrix4d projector_matrix(GateProjector p) {
  Eigen::Vector4d diag;
  switch (p) {
    case GateProjector::XorLow: diag << 1, 0, 0, 1; break;
    case GateProjector::XorHigh: diag << 0, 1, 1, 0; break;
    case GateProjector::OrLow: diag << 1, 0, 0, 0; break;
    case GateProjector::OrHigh: diag << 0, 1, 1, 1; break;
  }
  return diag.asDiagonal();
}

std::string projector_name(GateProjector p) {
  switch (p) {
    case GateProjector::XorLow: return "Q1";
    case GateProjector::XorHigh: return "Q2";
    case GateProjector::OrLow: return "Q~1";
    case GateProjector::OrHigh: return "Q~2";
  }
  return "?";
}

TransportMap::TransportMap() {
  for (std::size_t j = 0; j < 4; ++j) phi_[j] = Eigen::Vector4d::Unit(static_cast<Eigen::Index>(j));
  u_ = phi_[0] * phi_[2].transpose() + phi_[1] * phi_[3].transpose();
}

Eigen::Vector4d TransportMap::phi(GateProjector p) const { return phi_[index_of(p)]; }

GateProjector TransportMap::phi_inverse(const Eigen::Vector4d& v) const {
  for (GateProjector p : kProjectors) {
    if ((phi_[index_of(p)] - v).norm() <= 1e-12) return p;
  }
  throw InvalidArgument("vector is not the image of a gate projector");
}

GateProjector TransportMap::transport(Direction d, GateProjector p) const {
  const Eigen::Vector4d image =
      d == Direction::OrToXor ? Eigen::Vector4d(u_ * phi(p)) : Eigen::Vector4d(u_.transpose() * phi(p));
  if (image.norm() <= 1e-12) {
    throw InvalidArgument("projector " + projector_name(p) + " is annihilated by the transport");
  }
  return phi_inverse(image);
}

TraceObstruction similarity_obstruction() {
  return {projector_matrix(GateProjector::XorLow).trace(),
          projector_matrix(GateProjector::OrLow).trace()};
}

}  // namespace cmachine::gates
