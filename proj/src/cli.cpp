#include "cmachine/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cmachine/error.hpp"
#include "cmachine/frames.hpp"
#include "cmachine/gates.hpp"
#include "cmachine/hilbert.hpp"
#include "cmachine/nnclassify.hpp"
#include "cmachine/tones.hpp"
#include "cmachine/wav.hpp"

namespace cmachine::cli {

namespace {

using nlohmann::json;

enum class Format { Json, Table };

struct RunConfig {
  Format format = Format::Json;

  // rgb
  std::string color;
  std::vector<std::string> refs;
  double theta_hi = 0.9;
  double theta_lo = 0.05;

  // tone
  std::string wav_path;
  int harmonics = 2;
  std::string measure = "sqnorm";
  std::size_t noise_bins = 0;
  double noise_amp = 0.1;
  std::optional<std::uint64_t> seed;
  std::size_t top = 48;
  int fundamental = 0;
  std::string tone_name;
  std::string amplitudes = "1";
  std::string out_path;
  bool normalize = false;

  // gate
  std::string gate_kind;
  std::string gate_input;

  // classify
  std::string train_path;
  std::string query_path;
  std::string metric = "F";
  bool range_check = false;

  // frame
  std::string frame_path;
  std::string scaled_pair;
  std::string f_text;
  std::string g_text;
  double epsilon = 0.0;
};

std::vector<double> parse_list(const std::string& text) {
  return signal_from_csv_row(text).values();
}

std::string fmt(double x) {
  std::ostringstream s;
  s << std::setprecision(10) << x;
  return s.str();
}

void print(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

// --- rgb -------------------------------------------------------------------

json verdict_json(const Verdict& v, const ClusteringMachine& cm) {
  json j;
  j["kind"] = v.name();
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, verdict::Definite>) {
          j["output"] = cm.labels()[k.output];
        } else if constexpr (std::is_same_v<K, verdict::Probable>) {
          j["output"] = cm.labels()[k.output];
          j["score"] = k.score;
        } else if constexpr (std::is_same_v<K, verdict::Split>) {
          j["candidates"] = json::array();
          for (const auto& [a, q] : k.candidates) {
            j["candidates"].push_back({{"output", cm.labels()[a]}, {"score", q}});
          }
        } else if constexpr (std::is_same_v<K, verdict::MissingOutput>) {
          j["residual_norm"] = k.residual_norm;
        }
      },
      v.kind);
  j["thresholds"] = {{"high", v.thresholds.high}, {"low", v.thresholds.low}};
  return j;
}

json compare_colors(const Signal& f, const std::vector<std::pair<std::string, Signal>>& refs) {
  json j = json::array();
  for (const auto& [name, p] : refs) {
    j.push_back({{"reference", name},
                 {"point", p.values()},
                 {"sq_distance", sq_distance(p, f)},
                 {"F", dissimilarity(p, f)}});
  }
  return j;
}

int cmd_rgb(const RunConfig& cfg, std::ostream& out) {
  const ClusteringMachine machine(OrthonormalSet::canonical(3), {{0}, {1}, {2}}, {"R", "G", "B"});
  std::vector<std::pair<std::string, Signal>> refs = {
      {"R", Signal{1, 0, 0}}, {"G", Signal{0, 1, 0}}, {"B", Signal{0, 0, 1}}};
  for (const std::string& spec : cfg.refs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) throw InvalidArgument("--ref expects name=r,g,b");
    Signal p(parse_list(spec.substr(eq + 1)));
    if (p.dim() != 3) throw DimensionError(3, p.dim());
    refs.emplace_back(spec.substr(0, eq), std::move(p));
  }

  std::vector<std::pair<std::string, Signal>> inputs;
  if (!cfg.color.empty()) {
    inputs.emplace_back("color", Signal(parse_list(cfg.color)));
  } else {
    // Worked example: a reddish color plus three inputs against two custom references.
    inputs = {{"f_R", Signal{0.95, 0.1, 0.1}},
              {"f1", Signal{0.8, 0.1, 1}},
              {"f2", Signal{0.3, 0.6, 0.1}},
              {"f3", Signal{0.7, 0.8, 1}}};
    if (cfg.refs.empty()) {
      refs.emplace_back("P1", Signal{0.6, 0, 0.6});
      refs.emplace_back("P2", Signal{0, 0.8, 0.2});
    }
  }

  json results = json::array();
  for (const auto& [name, f] : inputs) {
    if (f.dim() != 3) throw DimensionError(3, f.dim());
    const Verdict v = classify(machine, f, {cfg.theta_hi, cfg.theta_lo});
    results.push_back({{"input", name},
                       {"color", f.values()},
                       {"scores", v.scores.scores},
                       {"membership", v.scores.membership()},
                       {"norm_sq", v.scores.input_norm_sq},
                       {"verdict", verdict_json(v, machine)},
                       {"references", compare_colors(f, refs)}});
  }

  if (cfg.format == Format::Json) {
    print(out, results);
    return kOk;
  }
  for (const auto& r : results) {
    out << r["input"].get<std::string>() << "  q=(";
    for (std::size_t a = 0; a < 3; ++a) out << (a ? ", " : "") << fmt(r["scores"][a].get<double>());
    out << ")  verdict=" << r["verdict"]["kind"].get<std::string>() << '\n';
    for (const auto& ref : r["references"]) {
      out << "    " << std::left << std::setw(4) << ref["reference"].get<std::string>()
          << " ||.||^2=" << std::setw(14) << fmt(ref["sq_distance"].get<double>())
          << " F=" << fmt(ref["F"].get<double>()) << '\n';
    }
  }
  return kOk;
}

// --- tone ------------------------------------------------------------------

tones::ToneMeasure measure_or_throw(const std::string& name) {
  const auto m = tones::parse_measure(name);
  if (!m) throw InvalidArgument("unknown measure '" + name + "' (sqnorm, F, delta, nabla)");
  return *m;
}

int cmd_tone_recognize(const RunConfig& cfg, std::ostream& out) {
  using namespace tones;
  const ToneMeasure measure = measure_or_throw(cfg.measure);
  const ReferenceToneSet refs(cfg.harmonics);
  Spectrum spectrum = magnitude_spectrum(load_wav(cfg.wav_path), true);

  json noise = nullptr;
  if (cfg.noise_bins > 0) {
    if (!cfg.seed) throw InvalidArgument("--seed is required when adding noise");
    spectrum = add_spectral_noise(spectrum, cfg.noise_bins, cfg.noise_amp, *cfg.seed);
    noise = {{"bins", cfg.noise_bins}, {"amplitude", cfg.noise_amp}, {"seed", *cfg.seed}};
  }

  std::unique_ptr<Frame> frame;
  if (measure == ToneMeasure::Delta || measure == ToneMeasure::Nabla) {
    frame = std::make_unique<Frame>(scaled_pair_frame(kNumBins, 0.5));
  }
  const auto ranked = recognize(spectrum, refs, measure, frame.get());

  json ranking = json::array();
  for (std::size_t i = 0; i < std::min(cfg.top, ranked.size()); ++i) {
    ranking.push_back({{"tone", ranked[i].tone.name()},
                       {"fundamental", ranked[i].tone.fundamental},
                       {"value", ranked[i].value}});
  }
  const json result = {{"file", cfg.wav_path},
                       {"harmonics", cfg.harmonics},
                       {"measure", measure_name(measure)},
                       {"noise", noise},
                       {"recognized", ranked.front().tone.name()},
                       {"ranking", ranking}};
  if (cfg.format == Format::Json) {
    print(out, result);
    return kOk;
  }
  out << "recognized: " << ranked.front().tone.name() << " (" << measure_name(measure)
      << ", n_h=" << cfg.harmonics << ")\n";
  for (const auto& r : ranking) {
    out << std::left << std::setw(5) << r["tone"].get<std::string>() << std::right << std::setw(6)
        << r["fundamental"].get<int>() << "  " << fmt(r["value"].get<double>()) << '\n';
  }
  return kOk;
}

int cmd_tone_synth(const RunConfig& cfg, std::ostream& out) {
  int k = cfg.fundamental;
  if (!cfg.tone_name.empty()) {
    const auto t = tones::find_tone(cfg.tone_name);
    if (!t) throw InvalidArgument("unknown tone '" + cfg.tone_name + "'");
    k = t->fundamental;
  }
  if (k <= 0) throw InvalidArgument("give either --fundamental or --tone");
  const auto signal = tones::synth_tone(k, parse_list(cfg.amplitudes));
  tones::save_wav(cfg.out_path, signal);
  const json result = {{"file", cfg.out_path}, {"fundamental", k}, {"amplitudes", parse_list(cfg.amplitudes)}};
  if (cfg.format == Format::Json) {
    print(out, result);
  } else {
    out << "wrote " << cfg.out_path << " (fundamental " << k << " Hz)\n";
  }
  return kOk;
}

int cmd_tone_spectrum(const RunConfig& cfg, std::ostream& out) {
  const auto spectrum = tones::magnitude_spectrum(tones::load_wav(cfg.wav_path), cfg.normalize);
  if (cfg.out_path.empty()) {
    tones::write_spectrum_csv(out, spectrum);
    return kOk;
  }
  std::ofstream file(cfg.out_path);
  if (!file) throw Error("cannot write " + cfg.out_path);
  tones::write_spectrum_csv(file, spectrum);
  return kOk;
}

int cmd_tone_table(const RunConfig& cfg, std::ostream& out) {
  const tones::ReferenceToneSet refs(cfg.harmonics);
  json table = json::array();
  for (std::size_t t = 0; t < refs.size(); ++t) {
    const auto& id = refs.tone(t);
    json bins = json::array();
    for (int j = 1; j <= refs.harmonics() + 1; ++j) bins.push_back(j * id.fundamental);
    table.push_back({{"tone", id.name()}, {"fundamental", id.fundamental}, {"bins", bins}});
  }
  if (cfg.format == Format::Json) {
    print(out, table);
    return kOk;
  }
  for (const auto& row : table) {
    out << std::left << std::setw(5) << row["tone"].get<std::string>() << ' ' << row["bins"].dump() << '\n';
  }
  return kOk;
}

// --- gate ------------------------------------------------------------------

int cmd_gate(const RunConfig& cfg, std::ostream& out) {
  using namespace gates;
  std::vector<GateKind> kinds = {GateKind::Xor, GateKind::Or};
  if (cfg.gate_kind == "xor") kinds = {GateKind::Xor};
  else if (cfg.gate_kind == "or") kinds = {GateKind::Or};
  else if (!cfg.gate_kind.empty()) throw InvalidArgument("--kind must be xor or or");

  json result;
  for (GateKind kind : kinds) {
    const std::string name = kind == GateKind::Xor ? "xor" : "or";
    json gate;
    if (!cfg.gate_input.empty()) {
      const Signal f(parse_list(cfg.gate_input));
      const auto [q1, q2] = gate_scores(kind, f);
      gate["input"] = f.values();
      gate["scores"] = {q1, q2};
    } else {
      json table = json::array();
      for (std::size_t j = 0; j < 4; ++j) {
        const auto [q1, q2] = gate_scores(kind, Signal::unit(4, j));
        table.push_back({{"input", "I" + std::to_string(j + 1)},
                         {"bits", {(j >> 1) & 1, j & 1}},
                         {"output", truth_value(kind, j)},
                         {"scores", {q1, q2}}});
      }
      gate["truth_table"] = table;
    }
    result[name] = gate;
  }

  if (cfg.gate_input.empty()) {
    const TransportMap map;
    json transport = json::array();
    for (auto [from, d] : {std::pair{GateProjector::OrLow, Direction::OrToXor},
                           std::pair{GateProjector::OrHigh, Direction::OrToXor},
                           std::pair{GateProjector::XorLow, Direction::XorToOr},
                           std::pair{GateProjector::XorHigh, Direction::XorToOr}}) {
      transport.push_back({{"from", projector_name(from)},
                           {"direction", d == Direction::OrToXor ? "or->xor" : "xor->or"},
                           {"to", projector_name(map.transport(d, from))}});
    }
    const auto t = similarity_obstruction();
    result["transport"] = transport;
    result["traces"] = {{"Q1", t.xor_low}, {"Q~1", t.or_low}};
  }

  if (cfg.format == Format::Json) {
    print(out, result);
    return kOk;
  }
  for (GateKind kind : kinds) {
    const std::string name = kind == GateKind::Xor ? "xor" : "or";
    const json& g = result[name];
    out << name << '\n';
    if (g.contains("truth_table")) {
      for (const auto& row : g["truth_table"]) {
        out << "  " << row["input"].get<std::string>() << ' ' << row["bits"][0] << row["bits"][1]
            << " -> " << row["output"] << "  q=(" << fmt(row["scores"][0].get<double>()) << ", "
            << fmt(row["scores"][1].get<double>()) << ")\n";
      }
    } else {
      out << "  q=(" << fmt(g["scores"][0].get<double>()) << ", " << fmt(g["scores"][1].get<double>())
          << ")\n";
    }
  }
  if (result.contains("transport")) {
    for (const auto& t : result["transport"]) {
      out << t["direction"].get<std::string>() << ": " << t["from"].get<std::string>() << " -> "
          << t["to"].get<std::string>() << '\n';
    }
    out << "trace Q1 = " << result["traces"]["Q1"] << ", trace Q~1 = " << result["traces"]["Q~1"]
        << '\n';
  }
  return kOk;
}

// --- classify --------------------------------------------------------------

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
  nn::Metric metric;
  if (cfg.metric == "F") metric = nn::Metric::F;
  else if (cfg.metric == "sqnorm") metric = nn::Metric::SqNorm;
  else throw InvalidArgument("--metric must be F or sqnorm");

  const auto ds = nn::load_dataset(cfg.train_path, {cfg.range_check});
  const auto queries = nn::load_queries(cfg.query_path, ds.dim());
  for (std::size_t i = 0; i < queries.queries.size(); ++i) {
    const auto d = nn::diagnose(ds, queries.queries[i], metric, {cfg.normalize});
    if (cfg.format == Format::Json) {
      json line = {{"query", i + 1}, {"label", d.label}, {"d0", d.d0}, {"d1", d.d1},
                   {"tie_rounds", d.tie_rounds}};
      if (queries.labels[i] >= 0) line["expected"] = queries.labels[i];
      out << line.dump() << '\n';
    } else {
      out << "query " << i + 1 << ": label=" << d.label << " d0=" << fmt(d.d0) << " d1=" << fmt(d.d1)
          << " tie_rounds=" << d.tie_rounds << '\n';
    }
  }
  return kOk;
}

// --- frame -----------------------------------------------------------------

Frame frame_for(const RunConfig& cfg, std::size_t dim) {
  if (!cfg.frame_path.empty()) {
    std::ifstream in(cfg.frame_path);
    if (!in) throw Error("cannot open " + cfg.frame_path);
    std::stringstream text;
    text << in.rdbuf();
    return frame_from_json(text.str());
  }
  if (!cfg.scaled_pair.empty()) {
    const auto p = parse_list(cfg.scaled_pair);
    if (p.size() != 2 || p[0] < 1 || p[0] != std::floor(p[0])) {
      throw InvalidArgument("--scaled-pair expects n,scale");
    }
    return scaled_pair_frame(static_cast<std::size_t>(p[0]), p[1]);
  }
  if (dim == 0) throw InvalidArgument("give --frame, --scaled-pair or a signal to size the default frame");
  return scaled_pair_frame(dim, 0.5);
}

json frame_info_json(const Frame& frame, bool with_vectors) {
  json j = {{"dim", frame.dim()},
            {"size", frame.size()},
            {"bounds", {{"A", frame.bounds().lower}, {"B", frame.bounds().upper}}},
            {"tight", frame.tight()},
            {"norm_sum", frame.vector_norm_sum()},
            {"dual_norm_sum", frame.dual_norm_sum()},
            {"norm_bound_factor", norm_bound_factor(frame)}};
  if (with_vectors) {
    j["vectors"] = json::array();
    j["dual_vectors"] = json::array();
    for (const Signal& v : frame.vectors()) j["vectors"].push_back(v.values());
    for (const Signal& v : frame.dual_vectors()) j["dual_vectors"].push_back(v.values());
  }
  return j;
}

int cmd_frame_info(const RunConfig& cfg, std::ostream& out) {
  const Frame frame = frame_for(cfg, 0);
  const json j = frame_info_json(frame, frame.size() <= 64);
  if (cfg.format == Format::Json) {
    print(out, j);
    return kOk;
  }
  out << "dim " << frame.dim() << ", " << frame.size() << " vectors\n"
      << "A = " << fmt(frame.bounds().lower) << ", B = " << fmt(frame.bounds().upper)
      << (frame.tight() ? " (tight)" : "") << '\n'
      << "sum ||psi_j|| = " << fmt(frame.vector_norm_sum())
      << ", sum ||dual psi_j|| = " << fmt(frame.dual_norm_sum()) << '\n';
  return kOk;
}

int cmd_frame_compare(const RunConfig& cfg, std::ostream& out) {
  const Signal f(parse_list(cfg.f_text));
  const Signal g(parse_list(cfg.g_text));
  require_same_dim(f, g);
  const Frame frame = frame_for(cfg, f.dim());
  const DissimilarityReport r = compare(frame, f, g);
  json j = {{"delta", r.delta},
            {"nabla", r.nabla},
            {"sup_analysis", r.sup_analysis},
            {"sup_dual", r.sup_dual},
            {"norm", std::sqrt(sq_distance(f, g))},
            {"frame", frame_info_json(frame, false)}};
  if (cfg.epsilon > 0.0) {
    j["epsilon"] = cfg.epsilon;
    j["member"] = {{"norm", cluster_member(frame, g, f, cfg.epsilon, Measure::Norm)},
                   {"delta", cluster_member(frame, g, f, cfg.epsilon, Measure::Delta)},
                   {"nabla", cluster_member(frame, g, f, cfg.epsilon, Measure::Nabla)}};
  }
  if (cfg.format == Format::Json) {
    print(out, j);
    return kOk;
  }
  out << "delta = " << fmt(r.delta) << "\nnabla = " << fmt(r.nabla)
      << "\nnorm  = " << fmt(j["norm"].get<double>()) << '\n';
  if (j.contains("member")) {
    out << "member(norm, delta, nabla) = " << j["member"]["norm"] << ", " << j["member"]["delta"]
        << ", " << j["member"]["nabla"] << '\n';
  }
  return kOk;
}

// --- demo ------------------------------------------------------------------

int cmd_demo(const RunConfig& cfg, std::ostream& out) {
  const auto checks = golden_checks();
  bool all = true;
  json j = json::array();
  for (const auto& c : checks) {
    all = all && c.pass;
    j.push_back({{"name", c.name},
                 {"expected", c.expected},
                 {"actual", c.actual},
                 {"tolerance", c.tolerance},
                 {"pass", c.pass}});
  }
  if (cfg.format == Format::Json) {
    print(out, {{"checks", j}, {"all_pass", all}});
  } else {
    for (const auto& c : checks) {
      out << (c.pass ? "PASS  " : "FAIL  ") << std::left << std::setw(44) << c.name
          << " expected " << fmt(c.expected) << ", got " << fmt(c.actual) << '\n';
    }
    out << (all ? "all checks passed" : "some checks FAILED") << '\n';
  }
  return all ? kOk : kFailure;
}

void report_error(std::ostream& err, const std::string& kind, const std::string& message) {
  err << json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Projector-based clustering machine: signal classification with orthogonal "
               "projectors and finite frames",
               "cmachine"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "table"}))
      ->capture_default_str();

  auto* rgb = app.add_subcommand("rgb", "Score colors against the R, G, B clustering machine");
  rgb->add_option("--color", cfg.color, "Color as r,g,b (omit for the worked example)");
  rgb->add_option("--ref", cfg.refs, "Extra reference point name=r,g,b (repeatable)");
  rgb->add_option("--theta-hi", cfg.theta_hi, "High score threshold")->capture_default_str();
  rgb->add_option("--theta-lo", cfg.theta_lo, "Low score threshold")->capture_default_str();

  auto* tone = app.add_subcommand("tone", "Tone recognition from one-second WAV clips");
  tone->require_subcommand(1);
  tone->fallthrough();
  auto* recognize = tone->add_subcommand("recognize", "Rank the 48 reference tones for a WAV file");
  recognize->add_option("file", cfg.wav_path, "PCM16 WAV at 44100 Hz")->required();
  recognize->add_option("--harmonics", cfg.harmonics, "Harmonics n_h per reference tone")
      ->capture_default_str();
  recognize->add_option("--measure", cfg.measure, "sqnorm, F, delta or nabla")
      ->check(CLI::IsMember({"sqnorm", "F", "delta", "nabla"}))
      ->capture_default_str();
  recognize->add_option("--noise-bins", cfg.noise_bins, "Add uniform noise to bins 1..K");
  recognize->add_option("--noise-amp", cfg.noise_amp, "Noise amplitude")->capture_default_str();
  recognize->add_option("--seed", cfg.seed, "Noise seed");
  recognize->add_option("--top", cfg.top, "Number of ranked tones to print")->capture_default_str();

  auto* synth = tone->add_subcommand("synth", "Write a synthetic harmonic tone as WAV");
  synth->add_option("--fundamental", cfg.fundamental, "Fundamental in Hz");
  synth->add_option("--tone", cfg.tone_name, "Tone name such as A2");
  synth->add_option("--amplitudes", cfg.amplitudes, "Harmonic amplitudes a1,a2,...")
      ->capture_default_str();
  synth->add_option("--out", cfg.out_path, "Output WAV path")->required();

  auto* spectrum = tone->add_subcommand("spectrum", "Export the magnitude spectrum as CSV");
  spectrum->add_option("file", cfg.wav_path, "PCM16 WAV at 44100 Hz")->required();
  spectrum->add_flag("--normalize", cfg.normalize, "Scale to unit norm");
  spectrum->add_option("--out", cfg.out_path, "CSV path (default: stdout)");

  auto* table = tone->add_subcommand("table", "List the reference tones and their bins");
  table->add_option("--harmonics", cfg.harmonics, "Harmonics n_h")->capture_default_str();

  auto* gate = app.add_subcommand("gate", "XOR/OR clustering machines and the transport map");
  gate->add_option("--kind", cfg.gate_kind, "xor or or (default: both)");
  gate->add_option("--input", cfg.gate_input, "Signal a,b,c,d to score");

  auto* classify_cmd = app.add_subcommand("classify", "Nearest-neighbour binary diagnosis");
  classify_cmd->add_option("--train", cfg.train_path, "Labelled training CSV")->required();
  classify_cmd->add_option("--query", cfg.query_path, "Query CSV")->required();
  classify_cmd->add_option("--metric", cfg.metric, "F or sqnorm")
      ->check(CLI::IsMember({"F", "sqnorm"}))
      ->capture_default_str();
  classify_cmd->add_flag("--normalize", cfg.normalize, "Compare unit-norm vectors");
  classify_cmd->add_flag("--range-check", cfg.range_check, "Reject features outside [0, 10]");

  auto* frame = app.add_subcommand("frame", "Frame bounds, duals and frame dissimilarities");
  frame->require_subcommand(1);
  frame->fallthrough();
  auto* info = frame->add_subcommand("info", "Bounds and canonical dual of a frame");
  auto* compare_cmd = frame->add_subcommand("compare", "Delta and Nabla between two signals");
  for (auto* sub : {info, compare_cmd}) {
    sub->add_option("--frame", cfg.frame_path, "Frame JSON {\"dim\": n, \"vectors\": [...]}");
    sub->add_option("--scaled-pair", cfg.scaled_pair, "Scaled pair frame n,scale");
  }
  compare_cmd->add_option("--f", cfg.f_text, "Signal f as comma list")->required();
  compare_cmd->add_option("--g", cfg.g_text, "Reference g as comma list")->required();
  compare_cmd->add_option("--epsilon", cfg.epsilon, "Cluster radius for membership tests");

  auto* demo = app.add_subcommand("demo", "Reproduce the worked examples and check them");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }
  cfg.format = format == "table" ? Format::Table : Format::Json;

  try {
    if (rgb->parsed()) return cmd_rgb(cfg, out);
    if (recognize->parsed()) return cmd_tone_recognize(cfg, out);
    if (synth->parsed()) return cmd_tone_synth(cfg, out);
    if (spectrum->parsed()) return cmd_tone_spectrum(cfg, out);
    if (table->parsed()) return cmd_tone_table(cfg, out);
    if (gate->parsed()) return cmd_gate(cfg, out);
    if (classify_cmd->parsed()) return cmd_classify(cfg, out);
    if (info->parsed()) return cmd_frame_info(cfg, out);
    if (compare_cmd->parsed()) return cmd_frame_compare(cfg, out);
    if (demo->parsed()) return cmd_demo(cfg, out);
  } catch (const tones::WavError& e) {
    report_error(err, "wav", e.what());
    return kFailure;
  } catch (const nn::DatasetError& e) {
    report_error(err, "dataset", e.what());
    return kFailure;
  } catch (const DimensionError& e) {
    report_error(err, "dimension", e.what());
    return kFailure;
  } catch (const InvalidArgument& e) {
    report_error(err, "invalid_argument", e.what());
    return kFailure;
  } catch (const Error& e) {
    report_error(err, "error", e.what());
    return kFailure;
  } catch (const std::exception& e) {
    report_error(err, "internal", e.what());
    return kFailure;
  }
  err << app.help();
  return kUsage;
}

}  // namespace cmachine::cli
