// zslab: subset sums, zero-sum constants and structure of incomplete
// sequences over F_p^d.
//
// Exit codes: 0 ok, 2 parse, 3 input/domain/precondition, 4 budget or
// interrupted search, 5 internal, 1 anything else.

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "zslab/constants.hpp"
#include "zslab/error.hpp"
#include "zslab/extremal.hpp"
#include "zslab/report.hpp"
#include "zslab/seqfile.hpp"
#include "zslab/structure.hpp"
#include "zslab/sumset.hpp"

using namespace zslab;
using report::Envelope;
using report::Json;
using report::Status;

namespace {

std::atomic<bool> g_stop{false};

extern "C" void on_signal(int) { g_stop.store(true); }

struct Global {
  bool json = false;
  bool no_timing = false;
  std::uint64_t seed = 20240611;
};

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse: return 2;
    case ErrorKind::Input:
    case ErrorKind::Domain:
    case ErrorKind::Precondition: return 3;
    case ErrorKind::Budget: return 4;
    case ErrorKind::Internal: return 5;
  }
  return 1;
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

Envelope envelope(std::string command, Json spec) {
  Envelope e;
  e.command = std::move(command);
  e.spec = std::move(spec);
  return e;
}

int emit(const Global& g, Envelope& e, const Timer& t, int code = 0) {
  if (!g.no_timing) e.seconds = t.seconds();
  if (g.no_timing) e.nodes.reset();
  if (g.json) {
    std::cout << report::envelope_json(e).dump(2) << '\n';
  } else {
    std::cout << report::render_text(e);
  }
  return code;
}

Json set_dump(const IndicatorSet& s, const std::string& out) {
  const std::vector<Element> xs = s.elements();
  if (out == "coords") return report::elements_json(s.spec(), xs);
  Json idx = Json::array();
  for (Element x : xs) idx.push_back(x.index);
  return idx;
}

// sumset -------------------------------------------------------------------

struct SumsetArgs {
  std::string file;
  std::optional<std::uint64_t> m;
  std::string out = "indices";
};

int run_sumset(const Global& g, const SumsetArgs& a) {
  Timer t;
  ElementSequence seq = read_sequence_file(a.file);
  if (seq.empty()) throw InputError("empty sequence");
  Envelope e = envelope("sumset", report::spec_json(seq.spec()));
  e.parameters = Json{{"file", a.file}, {"out", a.out}};
  IndicatorSet s(seq.spec());
  if (a.m) {
    e.parameters["exact_m"] = *a.m;
    s = subsums_exact(seq, *a.m);
    e.result = Json{{"kind", "restricted"}, {"m", *a.m}};
  } else {
    s = subsums_all(seq);
    e.result = Json{{"kind", "all-subsums"}};
  }
  e.result["length"] = seq.length();
  e.result["size"] = s.size();
  e.result["full"] = s.is_full();
  e.result["elements"] = set_dump(s, a.out);
  return emit(g, e, t);
}

// check --------------------------------------------------------------------

struct CheckArgs {
  std::string file;
  std::optional<std::uint64_t> m;
};

int run_check(const Global& g, const CheckArgs& a) {
  Timer t;
  ElementSequence seq = read_sequence_file(a.file);
  Envelope e = envelope("check", report::spec_json(seq.spec()));
  e.parameters = Json{{"file", a.file}};
  e.result = Json{{"length", seq.length()},
                  {"zero_sum_free", is_zero_sum_free(seq)},
                  {"incomplete", seq.empty() ? true : is_incomplete(seq)}};
  if (a.m) {
    e.parameters["m"] = *a.m;
    e.result["m_incomplete"] = is_m_incomplete(seq, *a.m);
  }
  return emit(g, e, t);
}

// decompose ----------------------------------------------------------------

struct DecomposeArgs {
  std::string file;
  DecompositionParams params;
  std::optional<double> epsilon;
  std::optional<double> cutoff;
};

int run_decompose(const Global& g, DecomposeArgs a) {
  Timer t;
  ElementSequence seq = read_sequence_file(a.file);
  a.params.epsilon = a.epsilon;
  a.params.norm_cutoff = a.cutoff;
  const DecompositionParams& pr = a.params;
  Envelope e = envelope("decompose", report::spec_json(seq.spec()));
  e.parameters = Json{{"file", a.file}, {"alpha", pr.alpha}, {"beta", pr.beta}, {"delta", pr.delta}, {"W", pr.w}};
  if (pr.epsilon) e.parameters["epsilon"] = *pr.epsilon;
  if (pr.norm_cutoff) e.parameters["norm_cutoff"] = *pr.norm_cutoff;

  DecomposeResult r = decompose(seq, pr);
  if (auto* d = std::get_if<Decomposition>(&r)) {
    VerificationReport v = verify_decomposition(seq, *d, pr);
    e.result = report::decomposition_json(*d);
    e.result["verification"] = report::verification_json(v);
    for (const auto& c : v.clauses) e.checks[c.name] = c.passed;
    e.status = v.passed() ? Status::Exact : Status::Inconclusive;
    if (!v.passed()) return emit(g, e, t, 5);
  } else if (auto* c = std::get_if<CompletenessWitness>(&r)) {
    e.result = report::completeness_json(*c);
    e.checks["m_at_most_beta_p"] = static_cast<double>(c->m) <= pr.beta * seq.spec().p();
    e.checks["m_A_is_whole_group"] = subsums_exact(seq, c->m).is_full();
    e.status = Status::Exact;
    if (!e.checks["m_A_is_whole_group"].get<bool>()) return emit(g, e, t, 5);
  } else {
    e.result = report::inconclusive_json(std::get<Inconclusive>(r));
    e.status = Status::Inconclusive;
  }
  return emit(g, e, t);
}

// olson / davenport --------------------------------------------------------

struct SearchArgs {
  std::uint64_t p = 0;
  std::uint32_t d = 1;
  std::uint64_t budget = 0;
  std::string checkpoint;
  std::string resume;
  unsigned threads = 1;
  std::uint32_t split_depth = 2;
  std::string symmetry = "auto";
  bool shuffle = false;
};

int run_search_cmd(const Global& g, const SearchArgs& a, SearchMode mode) {
  Timer t;
  const GroupSpec spec = GroupSpec::make(a.p, a.d);
  SearchOptions o;
  o.budget = a.budget;
  o.threads = a.threads;
  o.split_depth = a.split_depth;
  o.stop = &g_stop;
  o.checkpoint_path = a.checkpoint.empty() ? a.resume : a.checkpoint;
  if (a.symmetry == "on") o.symmetry = true;
  if (a.symmetry == "off") o.symmetry = false;
  if (a.shuffle) o.order_seed = g.seed;

  SearchResult r = a.resume.empty() ? (mode == SearchMode::Olson ? max_zero_sum_free_set(spec, o)
                                                                 : longest_zero_sum_free_sequence(spec, o))
                                    : resume_search(spec, mode, a.resume, o);
  const std::uint64_t value = r.best_size + 1;
  Envelope e = envelope(mode == SearchMode::Olson ? "olson" : "davenport", report::spec_json(spec));
  e.parameters = Json{{"budget", a.budget}, {"threads", a.threads}, {"symmetry", a.symmetry}, {"shuffle", a.shuffle}};
  if (!a.resume.empty()) e.parameters["resume"] = a.resume;
  e.result = report::search_json(r);
  e.result["constant"] = value;
  e.result["constant_is"] = r.exhausted ? "exact" : "lower-bound";
  e.checks["witness_zero_sum_free"] = is_zero_sum_free(r.witness);
  if (mode == SearchMode::Davenport) {
    const std::uint64_t formula = std::uint64_t{a.d} * (a.p - 1) + 1;
    e.result["formula_d_p_minus_1_plus_1"] = formula;
    if (r.exhausted) e.checks["matches_formula"] = value == formula;
  } else if (a.d == 1) {
    const double hz = std::ceil(std::sqrt(2.0 * a.p) + 5.0 * std::log(static_cast<double>(a.p)));
    e.result["reference_sqrt2p_plus_5logp"] = hz;
    if (r.exhausted) e.checks["within_reference_bound"] = static_cast<double>(value) <= hz;
  } else {
    e.result["reference_2_sqrt_order"] = 2.0 * std::sqrt(static_cast<double>(spec.order()));
  }
  e.status = r.exhausted ? Status::Exact : Status::Bound;
  e.nodes = r.nodes;
  return emit(g, e, t, r.exhausted ? 0 : 4);
}

// extremal -----------------------------------------------------------------

struct ExtremalArgs {
  std::uint32_t p = 0;
  int variant = 1;
  std::optional<std::uint64_t> ol_p;
  std::optional<std::uint32_t> stacked_d;
  std::uint64_t budget = 0;
  double gamma = 1.0;
  std::uint32_t b = 1;
  std::string file1, file2;
};

std::uint64_t olson_of_line(std::uint32_t p) {
  return max_zero_sum_free_set(GroupSpec::make(p, 1)).best_size + 1;
}

int run_construct(const Global& g, const ExtremalArgs& a) {
  Timer t;
  const std::uint64_t ol = a.ol_p.value_or(olson_of_line(a.p));
  if (a.stacked_d) {
    const std::uint32_t d = *a.stacked_d;
    if (d < 2) throw InputError("--stacked needs d >= 2");
    // Lower witness: an exhaustive maximum zero-sum-free set one dimension down.
    SearchOptions o;
    o.symmetry = true;
    SearchResult lower = max_zero_sum_free_set(GroupSpec::make(a.p, d - 1), o);
    StackedConstruction s = construct_stacked(a.p, d, lower.witness);
    Envelope e = envelope("extremal construct", report::spec_json(s.set.spec()));
    e.parameters = Json{{"p", a.p}, {"stacked_d", d}};
    e.result = report::stacked_json(s);
    e.checks["zero_sum_free"] = s.verified;
    e.checks["size"] = s.set.length() == s.expected_size;
    e.nodes = lower.nodes;
    return emit(g, e, t);
  }
  GrtConstruction c = construct_grt_config(a.p, a.variant, ol);
  Envelope e = envelope("extremal construct", report::spec_json(c.set.spec()));
  e.parameters = Json{{"p", a.p}, {"variant", a.variant}, {"ol_p", ol}};
  e.result = report::grt_json(c);
  e.checks["zero_sum_free"] = c.verified;
  e.checks["size"] = c.set.length() == c.expected_size;
  return emit(g, e, t);
}

int run_classify(const Global& g, const ExtremalArgs& a) {
  Timer t;
  Classification c = classify_max_zero_sum_free_F_p2(a.p, a.budget);
  Envelope e = envelope("extremal classify", report::spec_json(GroupSpec::make(a.p, 2)));
  e.parameters = Json{{"p", a.p}, {"budget", a.budget}};
  e.result = report::classification_json(c);
  e.status = c.exhausted ? Status::Exact : Status::Bound;
  e.nodes = c.nodes;
  return emit(g, e, t, c.exhausted ? 0 : 4);
}

int run_olson3(const Global& g, const ExtremalArgs& a) {
  Timer t;
  Olson3Report r = olson3_experiment(a.p, a.gamma, a.budget);
  Envelope e = envelope("extremal olson3", report::spec_json(GroupSpec::make(a.p, 3)));
  e.parameters = Json{{"p", a.p}, {"gamma", a.gamma}, {"budget", a.budget}};
  e.result = report::olson3_json(r);
  e.status = r.ol3.exact && r.ol2.exact ? Status::Exact : Status::Bound;
  e.nodes = r.ol1.search.nodes + r.ol2.search.nodes + r.ol3.search.nodes;
  return emit(g, e, t);
}

int run_lines(const Global& g, const ExtremalArgs& a) {
  Timer t;
  ElementSequence b1 = read_sequence_file(a.file1);
  ElementSequence b2 = read_sequence_file(a.file2);
  const bool covers = check_adding_lines(b1, b2, a.b);
  Envelope e = envelope("extremal lines", report::spec_json(b1.spec()));
  e.parameters = Json{{"b", a.b}, {"file1", a.file1}, {"file2", a.file2}};
  e.result = Json{{"size1", b1.length()}, {"size2", b2.length()}, {"covers_y_axis", covers}};
  return emit(g, e, t);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subset sums, zero-sum constants and incomplete-sequence structure over F_p^d"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_flag("--json", g.json, "Emit the JSON report envelope");
  app.add_flag("--no-timing", g.no_timing, "Omit timings and node counts (byte-stable output)");
  app.add_option("--seed", g.seed, "Seed for every randomized choice")->capture_default_str();

  SumsetArgs sa;
  auto* sumset_cmd = app.add_subcommand("sumset", "S_A, or m*A with --exact-m");
  sumset_cmd->add_option("file", sa.file, "Sequence file")->required();
  sumset_cmd->add_option("--exact-m,-m", sa.m, "Restrict to subsequences of exactly M elements");
  sumset_cmd->add_option("--out", sa.out, "Set dump format")->check(CLI::IsMember({"indices", "coords"}));

  CheckArgs ca;
  auto* check_cmd = app.add_subcommand("check", "zero-sum-free / incomplete / m-incomplete");
  check_cmd->add_option("file", ca.file, "Sequence file")->required();
  check_cmd->add_option("--m", ca.m, "Also test m-incompleteness");

  DecomposeArgs da;
  auto* dec_cmd = app.add_subcommand("decompose", "Structure of an incomplete sequence");
  dec_cmd->add_option("file", da.file, "Sequence file")->required();
  dec_cmd->add_option("--alpha", da.params.alpha)->capture_default_str();
  dec_cmd->add_option("--beta", da.params.beta)->capture_default_str();
  dec_cmd->add_option("--delta", da.params.delta)->capture_default_str();
  dec_cmd->add_option("--W", da.params.w)->capture_default_str();
  dec_cmd->add_option("--epsilon", da.epsilon, "Block ratio (default: searched from alpha/2)");
  dec_cmd->add_option("--cutoff", da.cutoff, "Exceptional norm cutoff (default: 2/epsilon)");

  SearchArgs oa, va;
  auto add_search = [&](const char* name, const char* help, SearchArgs& s) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("--p", s.p, "Prime")->required();
    c->add_option("--d", s.d, "Dimension")->capture_default_str();
    c->add_option("--budget", s.budget, "Node budget, 0 = unlimited")->capture_default_str();
    c->add_option("--checkpoint", s.checkpoint, "Checkpoint file to write");
    c->add_option("--resume", s.resume, "Checkpoint file to resume from");
    c->add_option("--threads", s.threads)->capture_default_str()->check(CLI::PositiveNumber);
    c->add_option("--split-depth", s.split_depth)->capture_default_str();
    c->add_option("--symmetry", s.symmetry)->check(CLI::IsMember({"auto", "on", "off"}))->capture_default_str();
    c->add_flag("--shuffle", s.shuffle, "Branch in a seeded random order");
    return c;
  };
  auto* olson_cmd = add_search("olson", "Olson constant by exhaustive set search", oa);
  auto* dav_cmd = add_search("davenport", "Davenport constant by exhaustive sequence search", va);

  ExtremalArgs ea;
  auto* ext = app.add_subcommand("extremal", "Extremal constructions and experiments");
  ext->require_subcommand(1);
  auto* construct = ext->add_subcommand("construct", "Build and verify an extremal zero-sum-free set");
  construct->add_option("--p", ea.p)->required();
  construct->add_option("--variant", ea.variant)->check(CLI::IsMember({1, 2}))->capture_default_str();
  construct->add_option("--ol-p", ea.ol_p, "OL(F_p); computed when omitted");
  construct->add_option("--stacked", ea.stacked_d, "Stacked construction in dimension D instead");
  auto* classify = ext->add_subcommand("classify", "Maximum zero-sum-free sets of F_p^2 up to GL(2,p)");
  classify->add_option("--p", ea.p)->required();
  classify->add_option("--budget", ea.budget)->capture_default_str();
  auto* olson3 = ext->add_subcommand("olson3", "OL(F_p^3) against (2+gamma)p and p + OL(F_p^2) - 1");
  olson3->add_option("--p", ea.p)->required();
  olson3->add_option("--gamma", ea.gamma)->capture_default_str();
  olson3->add_option("--budget", ea.budget)->capture_default_str();
  auto* lines = ext->add_subcommand("lines", "Does B1 + B2 cover the y-axis?");
  lines->add_option("--b", ea.b)->required();
  lines->add_option("file1", ea.file1)->required();
  lines->add_option("file2", ea.file2)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  try {
    if (*sumset_cmd) return run_sumset(g, sa);
    if (*check_cmd) return run_check(g, ca);
    if (*dec_cmd) return run_decompose(g, da);
    if (*olson_cmd) return run_search_cmd(g, oa, SearchMode::Olson);
    if (*dav_cmd) return run_search_cmd(g, va, SearchMode::Davenport);
    if (*construct) return run_construct(g, ea);
    if (*classify) return run_classify(g, ea);
    if (*olson3) return run_olson3(g, ea);
    if (*lines) return run_lines(g, ea);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
