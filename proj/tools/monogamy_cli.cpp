#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "monogamy/bounds.hpp"
#include "monogamy/errors.hpp"
#include "monogamy/game.hpp"
#include "monogamy/io.hpp"
#include "monogamy/posver.hpp"
#include "monogamy/qkd.hpp"
#include "monogamy/random.hpp"
#include "monogamy/seesaw.hpp"
#include "monogamy/uncertainty.hpp"

using namespace monogamy;

namespace {

constexpr std::uint64_t kUrStream = 0x0c4ec;

struct Globals {
  std::string format;
  std::string output;
  std::uint64_t seed = 0;
  bool deterministic = false;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string num(std::uint64_t v) { return std::to_string(v); }
std::string flag(bool b) { return b ? "true" : "false"; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

// Parses "a..b", "a,b,c" or a single value.
std::vector<std::uint64_t> parse_n_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  const auto to_u64 = [&](const std::string& s) -> std::uint64_t {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--n", "not a number: " + s);
    }
    if (used != s.size() || !(v >= 1.0) || v != std::floor(v) || v > 1e18) {
      throw CLI::ValidationError("--n", "expected a positive integer, got " + s);
    }
    return static_cast<std::uint64_t>(v);
  };
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const auto lo = to_u64(text.substr(0, dots)), hi = to_u64(text.substr(dots + 2));
    if (hi < lo || hi - lo > 100000) throw CLI::ValidationError("--n", "bad range " + text);
    for (auto n = lo; n <= hi; ++n) out.push_back(n);
    return out;
  }
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(to_u64(item));
  if (out.empty()) throw CLI::ValidationError("--n", "empty list");
  return out;
}

MonogamyGame load_game(const std::string& name) {
  if (name == "bb84") return bb84_game();
  const Json j = read_json_file(name);
  return game_from_json(j.contains("game") ? j.at("game") : j);
}

class Emitter {
 public:
  Emitter(const Globals& g, std::string command, Json params, bool stochastic)
      : g_(g), command_(std::move(command)), params_(std::move(params)), stochastic_(stochastic) {}

  void table(const Table& t, const Json& result, const std::string& fallback_format = "json") const {
    if (format(fallback_format) == "json") {
      write(envelope(result).dump(2) + "\n");
      return;
    }
    std::string out;
    if (stochastic_) out += "# seed=" + std::to_string(g_.seed) + "\n";
    for (std::size_t i = 0; i < t.header.size(); ++i) out += (i ? "," : "") + t.header[i];
    out += "\n";
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_field(row[i]);
      out += "\n";
    }
    write(out);
  }

 private:
  std::string format(const std::string& fallback) const { return g_.format.empty() ? fallback : g_.format; }

  Json envelope(const Json& result) const {
    Json j{{"command", command_}, {"params", params_}};
    if (stochastic_) j["seed"] = g_.seed;
    if (!g_.deterministic) j["timestamp"] = utc_now();
    j["result"] = result;
    return j;
  }

  void write(const std::string& text) const {
    if (g_.output.empty() || g_.output == "-") {
      std::cout << text;
      std::cout.flush();
      return;
    }
    std::ofstream f(g_.output, std::ios::binary);
    if (!f) throw Error("cannot open output file " + g_.output);
    f << text;
  }

  const Globals& g_;
  std::string command_;
  Json params_;
  bool stochastic_;
};

// ---------------------------------------------------------------- bounds

struct BoundsArgs {
  std::string game = "bb84";
  std::string n = "1";
  double gamma = 0.0;
  double gamma_prime = 0.0;
  bool same_string = false;
};

void run_bounds(const Globals& g, const BoundsArgs& a) {
  const auto ns = parse_n_list(a.n);
  const bool bb84 = a.game == "bb84";
  const MonogamyGame game = load_game(a.game);
  const double c = bb84 ? 0.5 : overlap(game);
  const bool imperfect = a.gamma > 0.0 || a.gamma_prime > 0.0;
  Table t{{"n", "value", "vacuous", "formula"}, {}};
  Json rows = Json::array();
  for (auto n : ns) {
    BoundReport r;
    if (a.same_string) {
      r = same_string_bound(c, game.theta_count(), n, a.gamma);
    } else if (imperfect) {
      r = imperfect_guessing_bound(c, game.theta_count(), n, a.gamma, a.gamma_prime);
    } else if (bb84) {
      r = bb84_parallel_value(n);
    } else {
      r = general_upper_bound(c, game.theta_count(), 1.0, n);
    }
    t.rows.push_back({num(n), num(r.value), flag(r.vacuous), r.formula});
    rows.push_back(to_json(r));
  }
  Json params{{"game", a.game}, {"n", a.n}, {"gamma", a.gamma}, {"gamma_prime", a.gamma_prime},
              {"same_string", a.same_string}};
  Emitter(g, "bounds", params, false).table(t, {{"overlap", c}, {"rows", rows}}, "csv");
}

// ---------------------------------------------------------------- seesaw

struct SeesawArgs {
  std::string game = "bb84";
  std::size_t n = 1;
  std::size_t restarts = 20;
  std::size_t max_iters = 200;
  double tol = 1e-10;
  std::size_t bob_dim = 1;
  std::size_t charlie_dim = 1;
  bool free_form = false;
};

void run_seesaw(const Globals& g, const SeesawArgs& a) {
  const MonogamyGame game = game_power(load_game(a.game), a.n);
  SeesawConfig cfg;
  cfg.seed = g.seed;
  cfg.restarts = a.restarts;
  cfg.max_iters = a.max_iters;
  cfg.tol = a.tol;
  cfg.bob_dim = a.bob_dim;
  cfg.charlie_dim = a.charlie_dim;
  cfg.product_init = !a.free_form;
  const auto r = seesaw(game, cfg);
  Table t{{"iteration", "value"}, {}};
  for (std::size_t i = 0; i < r.trajectory.size(); ++i) t.rows.push_back({num(i), num(r.trajectory[i])});
  Json params{{"game", a.game},           {"n", a.n},         {"restarts", a.restarts},
              {"max_iters", a.max_iters}, {"tol", a.tol},     {"bob_dim", a.bob_dim},
              {"charlie_dim", a.charlie_dim}, {"product_init", cfg.product_init}};
  Emitter(g, "seesaw", params, true).table(t, to_json(r, game.thetas));
}

// ---------------------------------------------------------------- qkd

struct QkdArgs {
  std::uint64_t n = 0;
  std::uint64_t t = 0;
  std::string s = "auto";
  std::uint64_t ell = 0;
  double gamma = 0.0;
  double epsilon = 0.0;
};

std::uint64_t resolve_s(const std::string& s, std::uint64_t n, std::uint64_t t, double gamma, double eps) {
  if (s == "auto") return auto_syndrome_length(n, t, gamma, eps);
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    throw CLI::ValidationError("--s", "expected 'auto' or a non-negative integer");
  }
  if (used != s.size()) throw CLI::ValidationError("--s", "expected 'auto' or a non-negative integer");
  return v;
}

Json qkd_params(const QkdParams& p) {
  return {{"n", p.n}, {"t", p.t}, {"s", p.s}, {"ell", p.ell}, {"gamma", p.gamma}, {"epsilon", p.epsilon}};
}

void run_qkd_delta(const Globals& g, const QkdArgs& a) {
  const QkdParams p{a.n, a.t, resolve_s(a.s, a.n, a.t, a.gamma, a.epsilon), a.ell, a.gamma, a.epsilon};
  const auto r = security_delta(p);
  Table t{{"n", "t", "s", "ell", "gamma", "epsilon", "delta", "sampling_term", "pa_term", "log2_pa_term",
           "vacuous"},
          {{num(p.n), num(p.t), num(p.s), num(p.ell), num(p.gamma), num(p.epsilon), num(r.delta),
            num(r.sampling_term), num(r.pa_term), num(r.log2_pa_term), flag(r.vacuous)}}};
  Emitter(g, "qkd-delta", qkd_params(p), false).table(t, to_json(r));
}

struct KeylenArgs {
  std::string n;
  std::string t = "auto";
  std::string s = "auto";
  double gamma = 0.0;
  double epsilon = 0.0;
  double delta = 1e-9;
};

void run_qkd_keylen(const Globals& g, const KeylenArgs& a) {
  const auto ns = parse_n_list(a.n);
  Table t{{"n", "t", "s", "status", "ell", "rate", "sampling_term"}, {}};
  Json rows = Json::array();
  for (auto n : ns) {
    const std::uint64_t tt =
        a.t == "auto" ? static_cast<std::uint64_t>(std::floor(std::cbrt(static_cast<double>(n) * n) + 1e-9))
                      : resolve_s(a.t, n, 1, 0.0, 0.0);
    const std::uint64_t s = resolve_s(a.s, n, tt, a.gamma, a.epsilon);
    const auto r = max_key_length(n, tt, s, a.gamma, a.epsilon, a.delta);
    const double rate = static_cast<double>(r.ell) / static_cast<double>(n);
    t.rows.push_back({num(n), num(tt), num(s), to_string(r.status), num(r.ell), num(rate), num(r.sampling_term)});
    Json row = to_json(r);
    row["n"] = n;
    row["t"] = tt;
    row["s"] = s;
    row["rate"] = rate;
    rows.push_back(row);
  }
  Json params{{"n", a.n}, {"t", a.t}, {"s", a.s}, {"gamma", a.gamma}, {"epsilon", a.epsilon}, {"delta", a.delta}};
  Emitter(g, "qkd-keylen", params, false).table(t, {{"rows", rows}}, "csv");
}

struct SimArgs {
  QkdArgs q;
  double noise = 0.0;
  std::string device;
  std::size_t trials = 1000;
};

void run_qkd_sim(const Globals& g, const SimArgs& a) {
  const QkdParams p{a.q.n, a.q.t, resolve_s(a.q.s, a.q.n, a.q.t, a.q.gamma, a.q.epsilon), a.q.ell, a.q.gamma,
                    a.q.epsilon};
  DeviceModel device = NoisyChannel{a.noise};
  if (!a.device.empty()) {
    const Json j = read_json_file(a.device);
    const auto labels = game_power(bb84_game(), p.n).thetas;
    device = QuantumDevice{strategy_from_json(j.contains("strategy") ? j.at("strategy") : j, labels)};
  }
  const auto st = run_eqkd_trials(p, device, a.trials, g.seed);
  Table t{{"trials", "aborts", "completed", "decode_failures", "key_matches", "hoeffding_violations", "abort_rate",
           "key_match_rate", "hoeffding_rate", "hoeffding_bound"},
          {{num(st.trials), num(st.aborts), num(st.completed), num(st.decode_failures), num(st.key_matches),
            num(st.hoeffding_violations), num(st.abort_rate), num(st.key_match_rate), num(st.hoeffding_rate),
            num(st.hoeffding_bound)}}};
  Json params = qkd_params(p);
  params["noise"] = a.noise;
  params["trials"] = a.trials;
  params["device"] = a.device.empty() ? Json("noisy-channel") : Json(a.device);
  Emitter(g, "qkd-sim", params, true).table(t, to_json(st));
}

// ---------------------------------------------------------------- posver

struct PosverArgs {
  std::string mode = "bound";
  std::string n = "1";
  std::optional<double> log2_d;
  double gamma = 0.0;
  double gamma_prime = 0.0;
  std::string prover = "breidbart";
  double flip_prob = 0.0;
  std::optional<double> a0, a1;
  double location = 1.0;
  std::size_t trials = 100000;
  std::string scenario;
  double v0 = 0.0, v1 = 2.0, pos = 1.0;
};

void run_posver(const Globals& g, const PosverArgs& a) {
  const auto ns = parse_n_list(a.n);
  if (a.mode == "bound") {
    Table t{{"n", "soundness_bound", "entangled_bound", "entangled_vacuous", "noisy_bound"}, {}};
    Json rows = Json::array();
    for (auto n : ns) {
      const double sb = soundness_bound(n);
      const double noisy = noisy_soundness_bound(n, a.gamma, a.gamma_prime);
      Json row{{"n", n}, {"soundness_bound", sb}, {"noisy_bound", noisy}};
      std::string ent = "", vac = "";
      if (a.log2_d) {
        const auto e = entangled_soundness_bound(n, std::exp2(*a.log2_d));
        row["entangled_bound"] = e.value;
        row["entangled_vacuous"] = e.vacuous;
        ent = num(e.value);
        vac = flag(e.vacuous);
      }
      t.rows.push_back({num(n), num(sb), ent, vac, num(noisy)});
      rows.push_back(row);
    }
    Json params{{"mode", a.mode}, {"n", a.n}, {"gamma", a.gamma}, {"gamma_prime", a.gamma_prime}};
    if (a.log2_d) params["log2_d"] = *a.log2_d;
    Emitter(g, "posver", params, false)
        .table(t, {{"max_entanglement_rate", max_entanglement_rate()}, {"rows", rows}});
    return;
  }

  const TimingScenario sc = a.scenario.empty() ? TimingScenario{a.v0, a.v1, a.pos}
                                               : scenario_from_json(read_json_file(a.scenario));
  ProverModel prover;
  if (a.prover == "honest") {
    prover = HonestProver{a.flip_prob};
  } else if (a.prover == "breidbart") {
    prover = BreidbartPair{a.a0, a.a1};
  } else {
    prover = SingleAdversary{a.location};
  }
  Table t{{"n", "trials", "accepted", "acceptance_rate", "standard_error", "soundness_bound"}, {}};
  Json rows = Json::array();
  for (auto n : ns) {
    const auto st = run_pv_trials(sc, n, prover, a.trials, derive_seed(g.seed, 0, n));
    t.rows.push_back({num(n), num(st.trials), num(st.accepted), num(st.acceptance_rate), num(st.standard_error),
                      num(st.bound)});
    Json row = to_json(st);
    row["n"] = n;
    rows.push_back(row);
  }
  Json params{{"mode", a.mode},
              {"n", a.n},
              {"prover", a.prover},
              {"trials", a.trials},
              {"scenario", {{"v0", sc.v0}, {"v1", sc.v1}, {"pos", sc.pos}}}};
  if (a.prover == "honest") params["flip_prob"] = a.flip_prob;
  if (a.prover == "single") params["location"] = a.location;
  if (a.a0) params["a0"] = *a.a0;
  if (a.a1) params["a1"] = *a.a1;
  Emitter(g, "posver", params, true).table(t, {{"rows", rows}});
}

// ---------------------------------------------------------------- ur-check

struct UrArgs {
  std::string fixture;
  std::size_t random = 0;
};

void run_ur_check(const Globals& g, const UrArgs& a) {
  if (a.fixture.empty() == (a.random == 0)) {
    throw CLI::ValidationError("ur-check", "give exactly one of --fixture or --random");
  }
  std::vector<UrReport> reports;
  if (!a.fixture.empty()) {
    const auto f = ur_fixture_from_json(read_json_file(a.fixture));
    reports.push_back(check_uncertainty_relation(f.rho, f.dims, f.f0, f.f1));
  } else {
    for (std::size_t i = 0; i < a.random; ++i) {
      Rng rng = make_rng(derive_seed(g.seed, kUrStream, i));
      const ComplexMatrix rho = random_density(8, rng);
      const auto f0 = random_binary_povm(2, rng);
      const auto f1 = random_binary_povm(2, rng);
      reports.push_back(check_uncertainty_relation(rho, {2, 2, 2}, f0, f1));
    }
  }
  Table t{{"index", "c", "pguess_b", "pguess_c", "sum", "bound", "hmin_b", "hmin_c", "entropy_bound", "satisfied"},
          {}};
  Json rows = Json::array();
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    t.rows.push_back({num(i), num(r.c), num(r.pguess_b), num(r.pguess_c), num(r.sum), num(r.bound), num(r.hmin_b),
                      num(r.hmin_c), num(r.entropy_bound), flag(r.satisfied)});
    rows.push_back(to_json(r));
  }
  Json params = a.fixture.empty() ? Json{{"random", a.random}} : Json{{"fixture", a.fixture}};
  Emitter(g, "ur-check", params, a.fixture.empty()).table(t, {{"rows", rows}});
}

// ---------------------------------------------------------------- fixtures

void run_fixtures_validate(const Globals& g, const std::vector<std::string>& paths) {
  Table t{{"path", "kind", "valid", "error"}, {}};
  Json rows = Json::array();
  bool all_valid = true;
  for (const auto& path : paths) {
    Json row{{"path", path}};
    try {
      const auto kind = validate_fixture(read_json_file(path));
      row["kind"] = kind;
      row["valid"] = true;
      t.rows.push_back({path, kind, "true", ""});
    } catch (const Error& e) {
      all_valid = false;
      row["kind"] = nullptr;
      row["valid"] = false;
      row["error"] = e.what();
      t.rows.push_back({path, "", "false", e.what()});
      std::cerr << "error: " << e.what() << "\n";
    }
    rows.push_back(row);
  }
  Emitter(g, "fixtures validate", {{"paths", paths}}, false).table(t, {{"rows", rows}});
  if (!all_valid) throw ValidationError("fixtures validate: invalid fixture(s)");
}

void add_qkd_options(CLI::App* sub, QkdArgs& q, bool with_ell) {
  sub->add_option("--n", q.n, "Number of rounds")->required();
  sub->add_option("--t", q.t, "Sample size")->required();
  sub->add_option("--s", q.s, "Syndrome length, or 'auto' for ceil((n-t) h(gamma+eps))")->capture_default_str();
  if (with_ell) sub->add_option("--ell", q.ell, "Key length")->required();
  sub->add_option("--gamma", q.gamma, "Abort threshold")->required();
  sub->add_option("--epsilon", q.epsilon, "Sampling slack")->required();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monogamy-of-entanglement games lab"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--output,-o", g.output, "Output file (default stdout)");
  app.add_option("--seed", g.seed, "Base seed for every random draw")->capture_default_str();
  app.add_flag("--deterministic", g.deterministic, "Suppress the timestamp");

  BoundsArgs bounds;
  auto* s_bounds = app.add_subcommand("bounds", "Closed-form winning-probability bounds");
  s_bounds->add_option("--game", bounds.game, "bb84 or a game fixture path")->capture_default_str();
  s_bounds->add_option("--n", bounds.n, "Rounds: N, A..B or a comma list")->capture_default_str();
  s_bounds->add_option("--gamma", bounds.gamma, "Bob's allowed error fraction");
  s_bounds->add_option("--gamma-prime", bounds.gamma_prime, "Charlie's allowed error fraction");
  s_bounds->add_flag("--same-string", bounds.same_string, "Charlie must name Bob's string");

  SeesawArgs ss;
  auto* s_seesaw = app.add_subcommand("seesaw", "Alternating optimization lower bound");
  s_seesaw->add_option("--game", ss.game, "bb84 or a game fixture path")->capture_default_str();
  s_seesaw->add_option("--n", ss.n, "Parallel repetitions")->check(CLI::Range(1, 8))->capture_default_str();
  s_seesaw->add_option("--restarts", ss.restarts)->capture_default_str();
  s_seesaw->add_option("--max-iters", ss.max_iters)->capture_default_str();
  s_seesaw->add_option("--tol", ss.tol)->capture_default_str();
  s_seesaw->add_option("--bob-dim", ss.bob_dim)->capture_default_str();
  s_seesaw->add_option("--charlie-dim", ss.charlie_dim)->capture_default_str();
  s_seesaw->add_flag("--free-form", ss.free_form, "Skip product initialization");

  QkdArgs qd;
  auto* s_delta = app.add_subcommand("qkd-delta", "Finite-key security parameter");
  add_qkd_options(s_delta, qd, true);

  KeylenArgs kl;
  auto* s_keylen = app.add_subcommand("qkd-keylen", "Largest key length for a target delta");
  s_keylen->add_option("--n", kl.n, "Rounds: N, A..B or a comma list")->required();
  s_keylen->add_option("--t", kl.t, "Sample size, or 'auto' for floor(n^(2/3))")->capture_default_str();
  s_keylen->add_option("--s", kl.s, "Syndrome length or 'auto'")->capture_default_str();
  s_keylen->add_option("--gamma", kl.gamma)->required();
  s_keylen->add_option("--epsilon", kl.epsilon)->required();
  s_keylen->add_option("--delta", kl.delta, "Target security parameter")->capture_default_str();

  SimArgs sim;
  auto* s_sim = app.add_subcommand("qkd-sim", "Monte Carlo E-QKD runs");
  add_qkd_options(s_sim, sim.q, true);
  s_sim->add_option("--noise", sim.noise, "Bit-flip probability of Bob's device")->capture_default_str();
  s_sim->add_option("--device", sim.device, "Strategy fixture for a quantum device (n <= 5)");
  s_sim->add_option("--trials", sim.trials)->check(CLI::PositiveNumber)->capture_default_str();

  PosverArgs pv;
  auto* s_pv = app.add_subcommand("posver", "Position-verification bounds and simulation");
  s_pv->add_option("--mode", pv.mode)->check(CLI::IsMember({"bound", "simulate"}))->capture_default_str();
  s_pv->add_option("--n", pv.n, "Rounds: N, A..B or a comma list")->capture_default_str();
  s_pv->add_option("--log2-d", pv.log2_d, "log2 of the adversaries' shared dimension");
  s_pv->add_option("--gamma", pv.gamma);
  s_pv->add_option("--gamma-prime", pv.gamma_prime);
  s_pv->add_option("--prover", pv.prover)
      ->check(CLI::IsMember({"honest", "breidbart", "single"}))
      ->capture_default_str();
  s_pv->add_option("--flip-prob", pv.flip_prob);
  s_pv->add_option("--a0", pv.a0);
  s_pv->add_option("--a1", pv.a1);
  s_pv->add_option("--location", pv.location);
  s_pv->add_option("--trials", pv.trials)->check(CLI::PositiveNumber)->capture_default_str();
  s_pv->add_option("--scenario", pv.scenario, "Scenario fixture path");
  s_pv->add_option("--v0", pv.v0);
  s_pv->add_option("--v1", pv.v1);
  s_pv->add_option("--pos", pv.pos);

  UrArgs ur;
  auto* s_ur = app.add_subcommand("ur-check", "Check the tripartite uncertainty relation");
  s_ur->add_option("--fixture", ur.fixture, "Fixture of kind ur");
  s_ur->add_option("--random", ur.random, "Number of random 2x2x2 instances");

  std::vector<std::string> fixture_paths;
  auto* s_fix = app.add_subcommand("fixtures", "Fixture utilities");
  s_fix->require_subcommand(1);
  auto* s_validate = s_fix->add_subcommand("validate", "Check fixture files");
  s_validate->add_option("paths", fixture_paths)->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (s_bounds->parsed()) run_bounds(g, bounds);
    if (s_seesaw->parsed()) run_seesaw(g, ss);
    if (s_delta->parsed()) run_qkd_delta(g, qd);
    if (s_keylen->parsed()) run_qkd_keylen(g, kl);
    if (s_sim->parsed()) run_qkd_sim(g, sim);
    if (s_pv->parsed()) run_posver(g, pv);
    if (s_ur->parsed()) run_ur_check(g, ur);
    if (s_validate->parsed()) run_fixtures_validate(g, fixture_paths);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
