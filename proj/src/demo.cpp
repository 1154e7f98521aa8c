#include <cmath>

#include "cmachine/cli.hpp"
#include "cmachine/frames.hpp"
#include "cmachine/gates.hpp"
#include "cmachine/hilbert.hpp"
#include "cmachine/tones.hpp"

namespace cmachine::cli {

namespace {

class Collector {
 public:
  void check(std::string name, double expected, double actual, double tolerance) {
    const bool pass = std::abs(expected - actual) <= tolerance;
    checks_.push_back({std::move(name), expected, actual, tolerance, pass});
  }
  void check_flag(std::string name, bool expected, bool actual) {
    check(std::move(name), expected ? 1.0 : 0.0, actual ? 1.0 : 0.0, 0.0);
  }
  std::vector<GoldenCheck> take() { return std::move(checks_); }

 private:
  std::vector<GoldenCheck> checks_;
};

void rgb_checks(Collector& c) {
  const ClusteringMachine rgb(OrthonormalSet::canonical(3), {{0}, {1}, {2}}, {"R", "G", "B"});
  const Signal f_r{0.95, 0.1, 0.1};
  const ScoreVector s = rgb.scores(f_r);
  c.check("rgb: q1(f_R)", 0.9025, s.scores[0], 1e-12);
  c.check("rgb: q2(f_R)", 0.01, s.scores[1], 1e-12);
  c.check("rgb: ||f_R - R||^2", 0.0225, sq_distance(f_r, Signal{1, 0, 0}), 1e-12);

  const Signal p1{0.6, 0, 0.6};
  const Signal p2{0, 0.8, 0.2};
  const Signal f1{0.8, 0.1, 1};
  const Signal f2{0.3, 0.6, 0.1};
  c.check("rgb: ||P1 - f1||^2", 0.21, sq_distance(p1, f1), 1e-12);
  c.check("rgb: F[P1,f1]", 0.01, dissimilarity(p1, f1), 5e-4);
  c.check("rgb: F[P2,f2]", 0.059, dissimilarity(p2, f2), 2e-3);
  c.check("rgb: F[P2,f1]", 0.78, dissimilarity(p2, f1), 1e-2);
}

void frame_checks(Collector& c) {
  const Frame frame = scaled_pair_frame(3, 0.5);
  c.check("frame: A", 1.25, frame.bounds().lower, 1e-10);
  c.check("frame: B", 1.25, frame.bounds().upper, 1e-10);
  c.check("frame: dual psi~_1 / psi_1", 0.8, frame.dual_vector(0)[0], 1e-12);

  const Signal p{1, 2, 3};
  const Signal f{1.1, 2, 3};
  const Signal noised{1.1, 2.1, 3};
  const double eps = 0.1;
  c.check_flag("frame: f in norm ball", true, norm_ball_member(p, f, eps));
  c.check_flag("frame: f_noised in norm ball", false, norm_ball_member(p, noised, eps));
  c.check("frame: Delta(f,P)", 0.1, delta(frame, f, p), 1e-12);
  c.check("frame: Nabla(f,P)", 0.08, nabla(frame, f, p), 1e-12);
  c.check("frame: Delta(f_noised,P)", 0.1, delta(frame, noised, p), 1e-12);
  c.check("frame: Nabla(f_noised,P)", 0.08, nabla(frame, noised, p), 1e-12);
  c.check_flag("frame: f_noised in Delta cluster", true,
               cluster_member(frame, p, noised, eps, Measure::Delta));
  c.check_flag("frame: f_noised in Nabla cluster", true,
               cluster_member(frame, p, noised, eps, Measure::Nabla));
}

void tone_checks(Collector& c) {
  using namespace tones;
  std::vector<double> v(kNumBins);
  for (std::size_t k = 1; k <= kNumBins; ++k) {
    const double x = static_cast<double>(k);
    v[k - 1] = (std::exp(-std::pow((x - 110) / 0.1, 2)) + 2 * std::exp(-std::pow((x - 220) / 0.1, 2)) +
                std::exp(-std::pow((x - 440) / 0.1, 2))) /
               std::sqrt(6.0);
  }
  const Spectrum f{Signal(std::move(v)), true};

  const auto plain = recognize(f, ReferenceToneSet(0), ToneMeasure::F);
  c.check("tone: n_h=0 top fundamental (A3 = 220)", 220, plain.front().tone.fundamental, 0);
  c.check("tone: n_h=0 F at A3", 1.0 - 2.0 / std::sqrt(6.0), plain.front().value, 1e-9);
  const auto harmonic = recognize(f, ReferenceToneSet(2), ToneMeasure::SqNorm);
  c.check("tone: n_h=2 top fundamental (A2 = 110)", 110, harmonic.front().tone.fundamental, 0);
}

void gate_checks(Collector& c) {
  using namespace gates;
  const auto [q1, q2] = gate_scores(GateKind::Xor, Signal::unit(4, 0));
  c.check("gate: XOR q1(e1)", 1.0, q1, 0);
  c.check("gate: XOR q2(e1)", 0.0, q2, 0);
  const TransportMap map;
  c.check_flag("gate: OR->XOR sends Q~1 to Q1", true,
               map.transport(Direction::OrToXor, GateProjector::OrLow) == GateProjector::XorLow);
  c.check_flag("gate: OR->XOR sends Q~2 to Q2", true,
               map.transport(Direction::OrToXor, GateProjector::OrHigh) == GateProjector::XorHigh);
  const TraceObstruction t = similarity_obstruction();
  c.check("gate: trace Q1", 2, t.xor_low, 0);
  c.check("gate: trace Q~1", 1, t.or_low, 0);
}

}  // namespace

std::vector<GoldenCheck> golden_checks() {
  Collector c;
  rgb_checks(c);
  frame_checks(c);
  tone_checks(c);
  gate_checks(c);
  return c.take();
}

}  // namespace cmachine::cli
