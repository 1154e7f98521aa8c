#pragma once

// XOR and OR gates as clustering machines over R^4.
//
// Input I_j is the canonical vector e_j with the bit pairs
// I_1 = (0,0), I_2 = (0,1), I_3 = (1,0), I_4 = (1,1). Output O_1 is the
// gate value 0 and O_2 the gate value 1.

#include <array>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "cmachine/hilbert.hpp"

namespace cmachine::gates {

enum class GateKind { Xor, Or };

ClusteringMachine gate_machine(GateKind kind);

/// (q_1, q_2) for a signal in R^4.
std::pair<double, double> gate_scores(GateKind kind, const Signal& f);

/// Gate truth value (0 or 1) for input index j in 0..3.
int truth_value(GateKind kind, std::size_t input);

/// The four gate projectors: Q_1, Q_2 (XOR) and Q~_1, Q~_2 (OR).
enum class GateProjector { XorLow, XorHigh, OrLow, OrHigh };

Eigen::Matrix4d projector_matrix(GateProjector p);
std::string projector_name(GateProjector p);

enum class Direction { OrToXor, XorToOr };

/// Phi sends Q_1, Q_2, Q~_1, Q~_2 to the canonical phi_1..phi_4 and
/// U = |phi_1><phi_3| + |phi_2><phi_4|.
class TransportMap {
 public:
  TransportMap();

  Eigen::Vector4d phi(GateProjector p) const;
  /// Inverse of phi. Throws InvalidArgument for vectors outside the image.
  GateProjector phi_inverse(const Eigen::Vector4d& v) const;
  const Eigen::Matrix4d& u() const noexcept { return u_; }

  /// OR->XOR applies U after Phi, XOR->OR applies U^dagger. Throws
  /// InvalidArgument when the operator annihilates phi(p).
  GateProjector transport(Direction d, GateProjector p) const;

 private:
  std::array<Eigen::Vector4d, 4> phi_;
  Eigen::Matrix4d u_;
};

struct TraceObstruction {
  double xor_low;  // trace Q_1
  double or_low;   // trace Q~_1
};

/// Similarity transforms preserve traces, and trace Q_1 != trace Q~_1.
TraceObstruction similarity_obstruction();

}  // namespace cmachine::gates
