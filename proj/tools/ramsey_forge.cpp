// Command-line front end: parse structures and class specs, run completions,
// envelope/type computations, G builds, audits, and degree-bound reports;
// emit JSON and DOT.
//
// Exit codes: 0 success, 1 domain obstruction (a legitimate answer), 2 input
// error, 3 capacity error, 4 spec-validity alarm (violated hypothesis).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ramseyforge/bigramsey.hpp"
#include "ramseyforge/json_io.hpp"

namespace {

using namespace ramseyforge;

constexpr int kExitOk = 0;
constexpr int kExitObstruction = 1;
constexpr int kExitInput = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitAlarm = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw InputError("'" + path + "': " + e.what());
  }
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw InputError("cannot write '" + out_path + "'");
  out << content;
}

void emit(const std::string& out_path, const json& report) {
  emit(out_path, report.dump(2) + "\n");
}

json report_header(const std::string& command) {
  return {{"tool", "ramsey-forge"}, {"command", command}, {"prng", "mt19937_64"}};
}

std::int64_t default_cap() {
  if (const char* env = std::getenv("RAMSEY_FORGE_CAP")) {
    try {
      return std::stoll(env);
    } catch (...) {
      throw InputError("RAMSEY_FORGE_CAP is not an integer");
    }
  }
  return 20000;
}

json cycle_to_json(const Structure& host, const Cycle& c) {
  json names = json::array();
  for (int v : c.vertices) names.push_back(host.vertex_name(v));
  return names;
}

json word_tokens(const Word& w) {
  json out = json::array();
  for (int l : w) out.push_back(l);
  return out;
}

struct Options {
  std::string spec_path, in_path, out_path, format = "json";
  int n = 3, lmax = 6, k = 1, bound = 4, trials = 0, alphabet = 2, colours = 2;
  std::uint64_t seed = 0;
  std::int64_t cap = -1;  // -1: use RAMSEY_FORGE_CAP or the default
  bool rename = false;

  std::int64_t effective_cap() const { return cap >= 0 ? cap : default_cap(); }
  ClassSpec load_spec() const {
    if (spec_path.empty()) throw InputError("--spec is required");
    return spec_from_json(read_json(spec_path));
  }
  Structure load_structure() const {
    if (in_path.empty()) throw InputError("--in is required");
    return structure_from_json(read_json(in_path));
  }
};

int cmd_complete(const Options& o) {
  ClassSpec spec = o.load_spec();
  Structure a = o.load_structure();
  CompletionResult r = complete(a, spec);
  json rep = report_header("complete");
  if (const auto* c = std::get_if<Completed>(&r)) {
    rep["outcome"] = "completed";
    rep["result"] = structure_to_json(c->result);
    if (o.format == "dot") emit(o.out_path, to_dot(c->result));
    else emit(o.out_path, rep);
    return kExitOk;
  }
  if (const auto* bp = std::get_if<BadPair>(&r)) {
    rep["outcome"] = "bad_pair";
    rep["substructure"] = structure_to_json(bp->substructure);
    emit(o.out_path, rep);
    return kExitObstruction;
  }
  if (const auto* bc = std::get_if<BadCycle>(&r)) {
    rep["outcome"] = "bad_cycle";
    rep["cycle"] = cycle_to_json(a, bc->cycle);
    rep["substructure"] = structure_to_json(bc->substructure);
    emit(o.out_path, rep);
    return kExitObstruction;
  }
  rep["outcome"] = "search_exhausted";
  emit(o.out_path, rep);
  return kExitAlarm;
}

int cmd_cycles(const Options& o) {
  Structure a = o.load_structure();
  json rep = report_header("cycles");
  rep["lmax"] = o.lmax;
  json cycles = json::array();
  for (const Cycle& c : induced_cycles(a, o.lmax)) cycles.push_back(cycle_to_json(a, c));
  rep["count"] = cycles.size();
  rep["cycles"] = std::move(cycles);
  emit(o.out_path, rep);
  return kExitOk;
}

int cmd_envelope(const Options& o) {
  if (o.in_path.empty()) throw InputError("--in is required");
  json j = read_json(o.in_path);
  if (!j.contains("alphabet") || !j.contains("words"))
    throw InputError("envelope input: need {\"alphabet\", \"words\"}");
  auto alphabet = j.at("alphabet").get<std::vector<std::string>>();
  WordSet s;
  for (const auto& wj : j.at("words")) {
    PlainWord w;
    for (const auto& tok : wj) {
      auto t = tok.get<std::string>();
      auto it = std::find(alphabet.begin(), alphabet.end(), t);
      if (it == alphabet.end()) throw InputError("unknown letter token '" + t + "'");
      w.push_back(static_cast<int>(it - alphabet.begin()));
    }
    s.insert(std::move(w));
  }
  EnvelopeResult res = minimal_envelope(s, alphabet);
  json rep = report_header("envelope");
  rep["envelope"] = res.envelope.str();
  rep["d"] = res.d;
  json type = json::array();
  for (const auto& u : res.type) {
    json uw = json::array();
    for (int l : u) uw.push_back(alphabet.at(l));
    type.push_back(std::move(uw));
  }
  rep["type"] = std::move(type);
  emit(o.out_path, rep);
  return kExitOk;
}

int cmd_types(const Options& o) {
  TypeCatalog cat = enumerate_types(o.alphabet, o.k, o.bound, o.rename,
                                    o.effective_cap() * 250);
  json rep = report_header("types");
  rep["alphabet_size"] = cat.alphabet_size;
  rep["k"] = cat.set_size;
  rep["bound"] = cat.length_bound;
  rep["count"] = cat.types.size();
  rep["counts_per_bound"] = cat.counts_per_bound;
  rep["stabilized"] = cat.stabilized;
  emit(o.out_path, rep);
  return kExitOk;
}

int cmd_gbuild(const Options& o) {
  ClassSpec spec = o.load_spec();
  GTruncation g = g_truncation(spec, o.n, o.effective_cap());
  if (o.format == "dot") {
    emit(o.out_path, to_dot(g.structure, "truncation"));
    return kExitOk;
  }
  json rep = report_header("gbuild");
  rep["n"] = g.n;
  json sig = json::array();
  for (const auto& l : g.sig) sig.push_back(structure_to_json(l));
  rep["sigma"] = std::move(sig);
  rep["structure"] = structure_to_json(g.structure);
  emit(o.out_path, rep);
  return kExitOk;
}

int cmd_gaudit(const Options& o) {
  ClassSpec spec = o.load_spec();
  CycleAuditReport r = g_cycle_audit(spec, o.n, o.lmax, o.effective_cap());
  json rep = report_header("gaudit");
  rep["n"] = r.n;
  rep["lmax"] = r.lmax;
  rep["truncation_vertices"] = r.truncation_vertices;
  rep["cycles_checked"] = r.cycles_checked;
  rep["uncompletable_cycles"] = r.uncompletable_cycles;
  rep["device_failures"] = r.device_failures;
  rep["failing_cycles"] = r.failing_cycles;
  emit(o.out_path, rep);
  return (r.uncompletable_cycles || r.device_failures) ? kExitAlarm : kExitOk;
}

int cmd_phi(const Options& o) {
  ClassSpec spec = o.load_spec();
  Structure a = o.load_structure();
  PhiMap map = phi(a, spec);
  bool ok = verify_phi(map, spec);
  json rep = report_header("phi");
  json sig = json::array();
  for (const auto& l : sigma(spec)) sig.push_back(structure_to_json(l));
  rep["sigma"] = std::move(sig);
  json words = json::array();
  for (const auto& w : map.words) words.push_back(word_tokens(w));
  rep["words"] = std::move(words);
  rep["k_prime"] = structure_to_json(map.k_prime);
  rep["verified"] = ok;
  emit(o.out_path, rep);
  return ok ? kExitOk : kExitAlarm;
}

int cmd_transport(const Options& o) {
  ClassSpec spec = o.load_spec();
  if (o.in_path.empty()) throw InputError("--in is required (parameter word file)");
  ParamWord w = ParamWord::parse(read_file(o.in_path), {});
  TransportReport r = transport_check(spec, w, o.n, o.trials, o.seed,
                                      o.effective_cap());
  json rep = report_header("transport");
  rep["seed"] = o.seed;
  rep["word"] = w.str();
  rep["n"] = o.n;
  rep["trials"] = o.trials;
  rep["pairs_checked"] = r.pairs_checked;
  rep["violations"] = r.violations;
  rep["violation_details"] = r.violation_details;
  emit(o.out_path, rep);
  return r.violations ? kExitAlarm : kExitOk;
}

int cmd_degree_bound(const Options& o) {
  ClassSpec spec = o.load_spec();
  Structure a = o.load_structure();
  DegreeBoundReport r = degree_upper_bound(a, spec, o.n, o.effective_cap());
  json rep = report_header("degree-bound");
  rep["n"] = r.n;
  rep["subset_size"] = r.subset_size;
  rep["counts_per_level"] = r.counts_per_level;
  rep["bound"] = r.bound();
  rep["stabilized"] = r.stabilized;
  json types = json::array();
  for (const auto& t : r.types) {
    json tj = json::array();
    for (const auto& u : t) tj.push_back(word_tokens(u));
    types.push_back(std::move(tj));
  }
  rep["types"] = std::move(types);
  emit(o.out_path, rep);
  return kExitOk;
}

int cmd_hj_search(const Options& o) {
  MonoReport r = monochromatic_search(o.alphabet, o.k, o.colours, o.n);
  json rep = report_header("hj-search");
  rep["sigma"] = r.sigma;
  rep["k"] = r.k;
  rep["colours"] = r.colours;
  rep["n"] = r.n;
  rep["every_colouring_has_witness"] = r.every_colouring_has_witness;
  rep["colourings_checked"] = r.colourings_checked;
  rep["objects"] = r.objects;
  rep["defeating_colouring"] = r.defeating_colouring;
  rep["minimal_n"] = r.minimal_n;
  emit(o.out_path, rep);
  return kExitOk;
}

int cmd_audit_spec(const Options& o) {
  ClassSpec spec = o.load_spec();
  int trials = o.trials > 0 ? o.trials : 1000;
  AuditReport r = hypothesis_audit(spec, trials, std::max(1, o.n), o.seed);
  json rep = report_header("audit-spec");
  rep["seed"] = r.seed;
  rep["trials"] = r.trials;
  rep["completed"] = r.completed_count;
  rep["obstructed"] = r.obstructed_count;
  rep["failures"] = r.failure_count;
  json fails = json::array();
  for (const auto& t : r.failures)
    fails.push_back({{"trial", t.index}, {"vertices", t.vertices},
                     {"detail", t.detail}});
  rep["failing_trials"] = std::move(fails);
  emit(o.out_path, rep);
  return r.failure_count ? kExitAlarm : kExitOk;
}

int cmd_irreducibilize(const Options& o) {
  ClassSpec spec = o.load_spec();
  Structure a = o.load_structure();
  if (a.lang() != spec.lang()) throw InputError("irreducibilize: language mismatch");
  for (int u = 0; u < a.size(); ++u)
    for (int v = u + 1; v < a.size(); ++v) {
      if (a.adjacent(u, v)) continue;
      auto opts = detail::compatible_letters(spec, a, u, v);
      if (opts.empty())
        throw InputError("irreducibilize: no allowed letter fits pair (" +
                         a.vertex_name(u) + ", " + a.vertex_name(v) + ")");
      detail::place_letter(a, spec.letters()[opts.front()], u, v);
    }
  if (o.format == "dot") {
    emit(o.out_path, to_dot(a));
    return kExitOk;
  }
  json rep = report_header("irreducibilize");
  rep["result"] = structure_to_json(a);
  emit(o.out_path, rep);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ramsey-forge: completions, parameter words, and word-structure audits"};
  app.require_subcommand(1);

  Options o;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--spec", o.spec_path, "class spec JSON file");
    cmd->add_option("--in", o.in_path, "input file");
    cmd->add_option("--out", o.out_path, "output file (default: stdout)");
    cmd->add_option("--n", o.n, "size / length bound");
    cmd->add_option("--lmax", o.lmax, "maximum cycle length");
    cmd->add_option("--k", o.k, "set size / parameter count");
    cmd->add_option("--bound", o.bound, "word length bound");
    cmd->add_option("--trials", o.trials, "number of random trials (0: exhaustive)");
    cmd->add_option("--seed", o.seed, "PRNG seed");
    cmd->add_option("--cap", o.cap, "resource cap (overrides RAMSEY_FORGE_CAP)");
    cmd->add_option("--format", o.format, "output format: json|dot")
        ->check(CLI::IsMember({"json", "dot"}));
    cmd->add_option("--alphabet", o.alphabet, "alphabet size");
    cmd->add_option("--colours", o.colours, "number of colours");
    cmd->add_flag("--rename", o.rename, "canonical letter renaming of types");
    return cmd;
  };

  struct Entry { const char* name; const char* help; int (*run)(const Options&); };
  const Entry entries[] = {
      {"complete", "complete a partial structure against a class spec", cmd_complete},
      {"cycles", "enumerate induced cycles of a structure", cmd_cycles},
      {"envelope", "minimal envelope and embedding type of a word set", cmd_envelope},
      {"types", "catalogue embedding types of k-sets of words", cmd_types},
      {"gbuild", "build a finite truncation of the word structure G", cmd_gbuild},
      {"gaudit", "check all induced cycles of a truncation complete", cmd_gaudit},
      {"phi", "embed a finite fragment into G and verify it", cmd_phi},
      {"transport", "check substitution preserves pair structures", cmd_transport},
      {"degree-bound", "count embedding types of copies of A in G", cmd_degree_bound},
      {"hj-search", "finite monochromatic-line search", cmd_hj_search},
      {"audit-spec", "randomized audit of the completion hypothesis", cmd_audit_spec},
      {"irreducibilize", "fill non-adjacent pairs with a default letter",
       cmd_irreducibilize},
  };
  for (const auto& e : entries) add_common(app.add_subcommand(e.name, e.help));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitInput;
  }

  try {
    for (const auto& e : entries)
      if (app.get_subcommand(e.name)->parsed()) return e.run(o);
    return kExitInput;
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const SpecError& e) {
    std::cerr << "spec-validity alarm: " << e.what() << "\n";
    return kExitAlarm;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  }
}
