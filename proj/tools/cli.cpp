#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "antistoch/canon_prop.hpp"
#include "antistoch/covercode.hpp"
#include "antistoch/degseq_prop.hpp"
#include "antistoch/error.hpp"
#include "antistoch/graph.hpp"
#include "antistoch/lowerbound.hpp"

namespace antistoch::cli {

namespace {

using json = nlohmann::ordered_json;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream outf(path, std::ios::binary | std::ios::trunc);
  if (!outf) throw IoError("cannot open '" + path + "' for writing");
  outf << content;
  if (!outf) throw IoError("failed writing '" + path + "'");
}

json stat_value(const StatValue& v) {
  return std::visit([](auto x) { return json(x); }, v);
}

json schedule_json(const KSchedule& s) {
  json rows = json::array();
  for (const auto& [threshold, k] : s.entries()) rows.push_back({threshold, k});
  return rows;
}

json slot_json(const std::optional<EdgeSlot>& e) {
  if (!e) return nullptr;
  return json::array({e->u, e->v});
}

template <class T>
json opt_json(const std::optional<T>& v) {
  if (!v) return nullptr;
  return json(*v);
}

// Flags shared across subcommands; each subcommand registers only what it uses.
struct Flags {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::uint64_t trials = 0;
  unsigned k = 0;
  unsigned m = 0;
  std::size_t len = 0;
  std::string in;
  std::string out;
  std::string schedule;
  std::string word;
  std::string experiment;
  std::size_t down_len = 0;
  std::size_t up_len = 0;
  unsigned jobs = 1;
  unsigned part = 1;
  double z = 1.96;
  bool csv = false;
  bool fallback = false;
  bool check = false;
  bool flip = false;
  bool density = false;
};

struct Registered {
  CLI::Option* k = nullptr;
  CLI::Option* m = nullptr;
  CLI::Option* schedule = nullptr;
  CLI::Option* down_len = nullptr;
  CLI::Option* up_len = nullptr;
  CLI::Option* n = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* in = nullptr;
  CLI::Option* word = nullptr;
};

std::optional<KSchedule> load_schedule(const Flags& f, const Registered& reg) {
  if (reg.schedule && reg.schedule->count() > 0) return KSchedule::parse(read_file(f.schedule));
  return std::nullopt;
}

unsigned pick_k(std::size_t n, const Flags& f, const Registered& reg, const std::optional<KSchedule>& schedule) {
  if (reg.k && reg.k->count() > 0) {
    check_modulus(f.k);
    return f.k;
  }
  return choose_k(n, schedule ? *schedule : KSchedule::defaults());
}

ACodes pick_codes(const DegreeWindow& w, const Flags& f, const Registered& reg) {
  const std::size_t down = (reg.down_len && reg.down_len->count() > 0) ? f.down_len : w.delta1;
  const std::size_t up = (reg.up_len && reg.up_len->count() > 0) ? f.up_len : w.delta2;
  if (down != w.delta1 || up != w.delta2) {
    throw InputError("code length override does not match the degree window (" + std::to_string(w.delta1) + ", " +
                     std::to_string(w.delta2) + ")");
  }
  return ACodes::for_window(w);
}

json window_json(const DegreeWindow& w) {
  return {{"n", w.n}, {"bound", w.bound}, {"d_lo", w.lo}, {"d_hi", w.hi},
          {"mid", w.mid}, {"delta1", w.delta1}, {"delta2", w.delta2}};
}

json profile_json(const DegreeProfile& p, const ACodes& codes) {
  return {{"down", p.down.to_string()},
          {"up", p.up.to_string()},
          {"z", p.z},
          {"z_mod4", p.z_mod4()},
          {"down_member", codes.down.contains(p.down)},
          {"up_member", codes.up.contains(p.up)}};
}

int cmd_gen(const Flags& f, std::ostream& out) {
  const Graph g = random_graph(f.n, {f.seed, f.stream});
  write_file(f.out, serialize(g));
  json doc = {{"command", "gen"},
              {"n", f.n},
              {"seed", f.seed},
              {"stream", f.stream},
              {"edges", g.edge_count()},
              {"config", {{"n", f.n}, {"seed", f.seed}, {"stream", f.stream}, {"out", f.out}}}};
  out << doc.dump(2) << "\n";
  return kOk;
}

json qk_decision_json(const QkDecision& d) {
  return {{"in_qk", d.in_qk},
          {"resolved", d.resolved},
          {"w_size", d.w_size},
          {"code_len", d.word ? json(d.word->length()) : json(nullptr)},
          {"code_order", d.word ? json(build_code(d.word->length()).order()) : json(nullptr)},
          {"code_member", opt_json(d.code_member)}};
}

int cmd_decide_qk(const Flags& f, const Registered& reg, std::ostream& out) {
  const Graph g = parse(read_file(f.in));
  const auto schedule = load_schedule(f, reg);
  const unsigned k = pick_k(g.order(), f, reg, schedule);
  const QkDecision d = decide_qk(g, k);
  json doc = {{"command", "decide-qk"}, {"n", g.order()}, {"k", k}};
  const json fields = qk_decision_json(d);
  for (const auto& [key, value] : fields.items()) doc[key] = value;
  doc["config"] = {{"in", f.in},
                   {"k", k},
                   {"schedule", schedule ? schedule_json(*schedule) : schedule_json(KSchedule::defaults())}};
  out << doc.dump(2) << "\n";
  return kOk;
}

int cmd_attack_qk(const Flags& f, const Registered& reg, std::ostream& out) {
  const Graph g = parse(read_file(f.in));
  const auto schedule = load_schedule(f, reg);
  const unsigned k = pick_k(g.order(), f, reg, schedule);
  const AttackResult r = adversary_qk(g, k, {f.fallback});
  if (!f.out.empty()) write_file(f.out, serialize(r.graph));
  json doc = {{"command", "attack-qk"},
              {"n", g.order()},
              {"k", k},
              {"success", r.outcome.success},
              {"reason", std::string(to_string(r.outcome.reason))},
              {"flipped", slot_json(r.outcome.flipped)},
              {"slot_distance", slot_distance(g, r.graph)},
              {"output_in_qk", decide_qk(r.graph, k).in_qk}};
  doc["config"] = {{"in", f.in},
                   {"out", f.out},
                   {"k", k},
                   {"fallback_exhaustive", f.fallback},
                   {"schedule", schedule ? schedule_json(*schedule) : schedule_json(KSchedule::defaults())}};
  out << doc.dump(2) << "\n";
  return kOk;
}

int cmd_decide_deg(const Flags& f, const Registered& reg, std::ostream& out) {
  const Graph g = parse(read_file(f.in));
  const DegreeProfile p = profile(g);
  const ACodes codes = pick_codes(p.win, f, reg);
  json doc = {{"command", "decide-deg"}, {"n", g.order()}, {"in_a", decide_a(p, codes)}};
  doc["window"] = window_json(p.win);
  doc["profile"] = profile_json(p, codes);
  doc["config"] = {{"in", f.in}, {"codes_down_len", codes.down.length()}, {"codes_up_len", codes.up.length()}};
  out << doc.dump(2) << "\n";
  return kOk;
}

int cmd_attack_deg(const Flags& f, const Registered& reg, std::ostream& out) {
  const Graph g = parse(read_file(f.in));
  const DegreeWindow w = window(g.order());
  const ACodes codes = pick_codes(w, f, reg);
  const DegreeAttackResult r = adversary_a(g, codes);
  if (!f.out.empty()) write_file(f.out, serialize(r.graph));
  const char* action = r.action == AAction::add ? "add" : (r.action == AAction::remove ? "delete" : "none");
  json doc = {{"command", "attack-deg"},
              {"n", g.order()},
              {"success", r.outcome.success},
              {"reason", std::string(to_string(r.outcome.reason))},
              {"action", action},
              {"flipped", slot_json(r.outcome.flipped)},
              {"slot_distance", slot_distance(g, r.graph)},
              {"output_in_a", decide_a(profile(r.graph), codes)}};
  doc["config"] = {{"in", f.in},
                   {"out", f.out},
                   {"codes_down_len", codes.down.length()},
                   {"codes_up_len", codes.up.length()}};
  out << doc.dump(2) << "\n";
  return kOk;
}

int cmd_code(const Flags& f, const Registered& reg, std::ostream& out) {
  const int modes = int(f.check) + int(f.flip) + int(f.density);
  if (modes != 1) throw InputError("code needs exactly one of --check, --flip, --density");
  std::size_t len = f.len;
  Word word;
  if (f.flip) {
    if (!reg.word || reg.word->count() == 0) throw InputError("code --flip needs --word");
    word = Word::from_string(f.word);
    len = word.length();
  }
  const ExtendedHammingCode code(len);
  json doc = {{"command", "code"},
              {"len", len},
              {"order", code.order()},
              {"hamming_len", code.hamming_len()},
              {"density", code.density()}};
  if (f.check) {
    doc["mode"] = "check";
    doc["covering"] = verify_covering(code);
    doc["codewords"] = count_codewords(code);
  } else if (f.density) {
    doc["mode"] = "density";
    doc["log2_size"] = code.log2_size();
  } else {
    doc["mode"] = "flip";
    doc["word"] = word.to_string();
    doc["member"] = code.contains(word);
    const auto t = code.flip_to_code(word);
    doc["flip_index"] = opt_json(t);
    Word fixed = word;
    if (t) fixed.flip(*t);
    doc["flipped_word"] = fixed.to_string();
  }
  doc["config"] = {{"len", len}, {"word", f.flip ? json(f.word) : json(nullptr)}};
  out << doc.dump(2) << "\n";
  return kOk;
}

int cmd_stats(const Flags& f, const Registered& reg, std::ostream& out) {
  Graph g;
  json config;
  if (reg.in->count() > 0) {
    g = parse(read_file(f.in));
    config = {{"in", f.in}};
  } else {
    if (reg.n->count() == 0) throw InputError("stats needs --in or --n");
    g = random_graph(f.n, {f.seed, f.stream});
    config = {{"n", f.n}, {"seed", f.seed}, {"stream", f.stream}};
  }
  const ThresholdSet t = ThresholdSet::of(g.order());
  const SeqStats s = SeqStats::of(g);
  const auto classes = classify_degrees(s, t);
  std::size_t deg_good = 0, deg_very = 0, deg_bad = 0, v_good = 0, v_very = 0;
  for (std::size_t y = 0; y < classes.size(); ++y) {
    if (s.counts[y] == 0) continue;
    switch (classes[y]) {
      case DegreeClass::very_good:
        ++deg_very;
        v_very += s.counts[y];
        v_good += s.counts[y];
        break;
      case DegreeClass::good:
        ++deg_good;
        v_good += s.counts[y];
        break;
      case DegreeClass::bad:
        ++deg_bad;
        break;
    }
  }
  const auto p = check_P_conditions(s, t);
  const auto parts = check_degree_range(g, t);
  json log_g = nullptr;
  try {
    log_g = log_g_estimate(s);
  } catch (const DomainError&) {
  }
  json doc = {{"command", "stats"},
              {"n", g.order()},
              {"thresholds", {{"zeta1", t.zeta1}, {"zeta2", t.zeta2}, {"a", t.a}, {"b", t.b}, {"c", t.c}}},
              {"mean", s.mean},
              {"mu", s.mu},
              {"gamma", s.gamma},
              {"log_p", log_p(s)},
              {"log_g", log_g},
              {"P", json::array({p[0], p[1], p[2], p[3]})},
              {"degree_range", json::array({parts[0], parts[1], parts[2], parts[3], parts[4]})},
              {"classification",
               {{"present_degrees_very_good", deg_very},
                {"present_degrees_good_only", deg_good},
                {"present_degrees_bad", deg_bad},
                {"vertices_good", v_good},
                {"vertices_very_good", v_very},
                {"vertices_not_very_good", g.order() - v_very}}},
              {"config", config}};
  out << doc.dump(2) << "\n";
  return kOk;
}

int cmd_simulate(const Flags& f, const Registered& reg, std::ostream& out) {
  ExperimentConfig cfg;
  cfg.experiment = parse_experiment(f.experiment);
  cfg.n = f.n;
  cfg.trials = f.trials;
  cfg.seed = f.seed;
  cfg.jobs = f.jobs;
  if (reg.k->count() > 0) cfg.k = f.k;
  if (reg.m->count() > 0) cfg.m = f.m;
  cfg.schedule = load_schedule(f, reg);
  if (reg.down_len->count() > 0) cfg.down_len = f.down_len;
  if (reg.up_len->count() > 0) cfg.up_len = f.up_len;
  cfg.part = f.part;
  cfg.exhaustive_fallback = f.fallback;
  cfg.z = f.z;
  const EstimateResult r = run_experiment(cfg);
  if (f.csv) {
    out << to_csv(r);
  } else {
    out << to_json(r).dump(2) << "\n";
  }
  return kOk;
}

std::string csv_escape(const std::string& s) {
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace

json to_json(const EstimateResult& r) {
  const auto& c = r.config;
  json doc;
  doc["experiment"] = std::string(to_string(c.experiment));
  doc["n"] = c.n;
  doc["k"] = opt_json(r.k);
  doc["m"] = opt_json(r.m);
  doc["trials"] = r.trials;
  doc["seed"] = c.seed;
  doc["successes"] = r.successes;
  doc["frequency"] = r.frequency;
  doc["ci_low"] = r.ci_low;
  doc["ci_high"] = r.ci_high;
  doc["elapsed_s"] = r.elapsed_s;
  doc["notes"] = r.notes;
  json cfg;
  cfg["experiment"] = std::string(to_string(c.experiment));
  cfg["n"] = c.n;
  cfg["trials"] = c.trials;
  cfg["seed"] = c.seed;
  cfg["k"] = opt_json(c.k);
  cfg["m"] = opt_json(c.m);
  cfg["schedule"] = c.schedule ? schedule_json(*c.schedule) : schedule_json(KSchedule::defaults());
  cfg["codes_down_len"] = opt_json(c.down_len);
  cfg["codes_up_len"] = opt_json(c.up_len);
  cfg["part"] = c.part;
  cfg["fallback_exhaustive"] = c.exhaustive_fallback;
  cfg["z"] = c.z;
  doc["config"] = cfg;
  json extras = json::object();
  for (const auto& [key, value] : r.extras) extras[key] = stat_value(value);
  doc["extras"] = extras;
  return doc;
}

std::string to_csv(const EstimateResult& r) {
  std::ostringstream os;
  os.precision(17);
  os << "experiment,n,k,m,trials,seed,successes,frequency,ci_low,ci_high,elapsed_s,notes\n";
  os << to_string(r.config.experiment) << ',' << r.config.n << ',' << (r.k ? std::to_string(*r.k) : "") << ','
     << (r.m ? std::to_string(*r.m) : "") << ',' << r.trials << ',' << r.config.seed << ',' << r.successes << ','
     << r.frequency << ',' << r.ci_low << ',' << r.ci_high << ',' << r.elapsed_s << ',' << csv_escape(r.notes)
     << '\n';
  return os.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Anti-stochastic graph properties: codes, decisions, attacks and Monte Carlo checks", "antistoch"};
  app.require_subcommand(1);
  Flags f;
  std::map<std::string, Registered> reg;

  auto* gen = app.add_subcommand("gen", "Sample G(n,1/2) and write an ASGRAPH file");
  gen->add_option("--n", f.n, "vertex count")->required()->check(CLI::PositiveNumber);
  gen->add_option("--seed", f.seed, "64-bit seed");
  gen->add_option("--stream", f.stream, "stream index");
  gen->add_option("--out", f.out, "output path")->required();

  auto add_qk_flags = [&](CLI::App* sub) {
    auto& r = reg[sub->get_name()];
    r.in = sub->add_option("--in", f.in, "input ASGRAPH file")->required();
    r.k = sub->add_option("--k", f.k, "modulus (odd, > 11, not divisible by 11)");
    r.schedule = sub->add_option("--schedule", f.schedule, "k schedule file (two columns: N_k k)");
  };
  auto* decide_qk_cmd = app.add_subcommand("decide-qk", "Decide the canonical-relabeling property Q_k");
  add_qk_flags(decide_qk_cmd);
  auto* attack_qk_cmd = app.add_subcommand("attack-qk", "Run the single-flip adversary for Q_k");
  add_qk_flags(attack_qk_cmd);
  attack_qk_cmd->add_option("--out", f.out, "output ASGRAPH file");
  attack_qk_cmd->add_flag("--fallback-exhaustive", f.fallback, "try every slot after a failed code flip (small n)");

  auto add_deg_flags = [&](CLI::App* sub) {
    auto& r = reg[sub->get_name()];
    r.in = sub->add_option("--in", f.in, "input ASGRAPH file")->required();
    r.down_len = sub->add_option("--codes-down-len", f.down_len, "lower parity code length (must match window)");
    r.up_len = sub->add_option("--codes-up-len", f.up_len, "upper parity code length (must match window)");
  };
  auto* decide_deg_cmd = app.add_subcommand("decide-deg", "Decide the degree-sequence property A");
  add_deg_flags(decide_deg_cmd);
  auto* attack_deg_cmd = app.add_subcommand("attack-deg", "Run the add-or-delete adversary for A");
  add_deg_flags(attack_deg_cmd);
  attack_deg_cmd->add_option("--out", f.out, "output ASGRAPH file");

  auto* code_cmd = app.add_subcommand("code", "Expanded Hamming covering code utilities");
  code_cmd->add_option("--len", f.len, "code length N");
  code_cmd->add_flag("--check", f.check, "exhaustively verify the covering radius (N <= 24)");
  code_cmd->add_flag("--flip", f.flip, "report the flip index bringing --word into the code");
  code_cmd->add_flag("--density", f.density, "report the code density");
  reg["code"].word = code_cmd->add_option("--word", f.word, "word as a 0/1 string");

  auto* sim = app.add_subcommand("simulate", "Run a seeded Monte Carlo experiment");
  {
    auto& r = reg["simulate"];
    sim->add_option("--experiment", f.experiment,
                    "prob_qk|prob_a|attack_qk|attack_a|mod_uniformity|parity_uniformity|degree_range|resolution_rate")
        ->required();
    sim->add_option("--n", f.n, "vertex count")->required();
    sim->add_option("--trials", f.trials, "number of trials")->required();
    sim->add_option("--seed", f.seed, "64-bit seed");
    r.k = sim->add_option("--k", f.k, "Q_k modulus");
    r.m = sim->add_option("--m", f.m, "residue modulus for mod_uniformity");
    r.schedule = sim->add_option("--schedule", f.schedule, "k schedule file");
    r.down_len = sim->add_option("--codes-down-len", f.down_len, "lower parity code length");
    r.up_len = sim->add_option("--codes-up-len", f.up_len, "upper parity code length");
    sim->add_option("--jobs", f.jobs, "worker threads (results do not depend on it)");
    sim->add_option("--part", f.part, "degree_range statement counted as success (1..5)");
    sim->add_option("--z", f.z, "Wilson interval z");
    sim->add_flag("--csv", f.csv, "emit CSV instead of JSON");
    sim->add_flag("--fallback-exhaustive", f.fallback, "exhaustive fallback for attack_qk (small n)");
  }

  auto* stats = app.add_subcommand("stats", "Degree-frequency condition checks and classification report");
  {
    auto& r = reg["stats"];
    r.in = stats->add_option("--in", f.in, "input ASGRAPH file");
    r.n = stats->add_option("--n", f.n, "sample G(n,1/2) instead of reading a file");
    stats->add_option("--seed", f.seed, "64-bit seed");
    stats->add_option("--stream", f.stream, "stream index");
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << "\n";
    return kIoError;
  }

  try {
    if (gen->parsed()) return cmd_gen(f, out);
    if (decide_qk_cmd->parsed()) return cmd_decide_qk(f, reg["decide-qk"], out);
    if (attack_qk_cmd->parsed()) return cmd_attack_qk(f, reg["attack-qk"], out);
    if (decide_deg_cmd->parsed()) return cmd_decide_deg(f, reg["decide-deg"], out);
    if (attack_deg_cmd->parsed()) return cmd_attack_deg(f, reg["attack-deg"], out);
    if (code_cmd->parsed()) return cmd_code(f, reg["code"], out);
    if (sim->parsed()) return cmd_simulate(f, reg["simulate"], out);
    if (stats->parsed()) return cmd_stats(f, reg["stats"], out);
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << "\n";
    return kIoError;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kIoError;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kDomainError;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kDomainError;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << "\n";
    return kDomainError;
  }
  err << "error: no subcommand\n";
  return kIoError;
}

}  // namespace antistoch::cli
