#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "extremal/ekrshift.hpp"
#include "extremal/hallflow.hpp"
#include "extremal/matching.hpp"
#include "extremal/nonneg.hpp"
#include "extremal/setcore.hpp"

namespace extremal::cli {

namespace {

using nlohmann::json;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read '" + path + "'");
  return ss.str();
}

json big(const BigInt& v) {
  if (v >= 0 && v <= std::numeric_limits<std::uint64_t>::max()) return v.convert_to<std::uint64_t>();
  return v.str();
}

json sets(const std::vector<Subset>& v) {
  json out = json::array();
  for (const auto& s : v) out.push_back(s.str());
  return out;
}

json sets(const SetFamily& f) { return sets(f.members()); }

json one_based(const std::vector<int>& v) {
  json out = json::array();
  for (int i : v) out.push_back(i + 1);
  return out;
}

json sequence_json(const NumberSequence& s) {
  json values = json::array();
  for (const auto& v : s.values()) values.push_back(format_rational(v));
  return {{"n", s.n()}, {"k", s.k()}, {"values", values}};
}

json pairs_json(const SubsetGraph& sg, const Matching& m) {
  json out = json::array();
  for (auto [u, v] : m.pairs) {
    out.push_back({sg.left[static_cast<std::size_t>(u)].str(), sg.right[static_cast<std::size_t>(v)].str()});
  }
  return out;
}

json unsaturated_json(const std::vector<Subset>& left, const std::vector<Subset>& right) {
  json out = json::array();
  for (const auto& s : left) out.push_back({{"side", "A"}, {"set", s.str()}});
  for (const auto& s : right) out.push_back({{"side", "B"}, {"set", s.str()}});
  return out;
}

// What a command hands back to the dispatcher.
struct Outcome {
  json result;
  int code = kOk;
  // Plain-text rendering; when empty the result is listed key by key.
  std::string text;
};

json verdict_json(const TheoremVerdict& v) {
  json out = {
      {"theorem", v.t == 0 ? 1 : 2},
      {"pass", v.pass},
      {"n", v.n},
      {"k", v.k},
      {"seed", v.seed},
      {"trials", v.trials},
      {"trials_run", v.trials_run},
      {"max_count", v.max_count},
      {"bound", big(v.bound)},
      {"extremal_count", v.extremal_count},
      {"extremal_tight", v.extremal_tight},
      {"violations", v.violations},
      {"refined_violations", v.refined_violations},
      {"sampling_failed", v.sampling_failed},
      {"message", v.message},
      {"counterexample", v.counterexample ? sequence_json(*v.counterexample) : json(nullptr)},
  };
  if (v.t != 0) out["t"] = v.t;
  return out;
}

Outcome do_bound(int n, int k, int t) {
  BigInt value = t > 0 ? bound_refined(n, k, t) : bound_main(n, k);
  json r = {{"n", n}, {"k", k}, {"value", big(value)}};
  if (t > 0) r["t"] = t;
  return {r, kOk, value.str() + "\n"};
}

Outcome do_verify(int theorem, int n, int k, int t, std::uint64_t trials, std::uint64_t seed) {
  if (theorem == 3) {
    auto oracle = max_family_oracle(n, k);
    BigInt closed = bound_main(n, k) - 1;
    const bool pass = BigInt(oracle.maximum) == closed;
    json r = {{"theorem", 3},        {"pass", pass},           {"n", n},
              {"k", k},              {"maximum", oracle.maximum}, {"closed_form", big(closed)},
              {"witness", sets(oracle.witness)}, {"nodes", oracle.nodes}};
    return {r, pass ? kOk : kViolation, {}};
  }
  TheoremVerdict v = theorem == 1 ? verify_theorem1(n, k, trials, seed) : verify_theorem2(n, k, t, trials, seed);
  int code = v.pass ? kOk : (v.sampling_failed && v.violations == 0 && v.refined_violations == 0 &&
                                     v.extremal_tight
                                 ? kInconclusive
                                 : kViolation);
  return {verdict_json(v), code, {}};
}

Outcome do_count(const std::string& path, bool with_family, bool structure) {
  auto s = NumberSequence::parse(read_file(path));
  json r = {{"n", s.n()}, {"k", s.k()}, {"constraint", constraint_holds(s)}};
  if (!constraint_holds(s)) {
    throw std::invalid_argument("sequence violates the size-" + std::to_string(s.k()) + " negativity constraint");
  }
  auto report = enumerate_nonneg(s, {.with_family = with_family, .parallel = true});
  r["count"] = report.count;
  r["t"] = report.t;
  r["bound"] = big(report.bound);
  r["tight"] = report.tight;
  if (s.k() < s.n() && report.t >= 1) r["refined_bound"] = big(bound_refined(s.n(), s.k(), report.t));
  if (with_family) r["family"] = sets(*report.family);
  if (structure) {
    auto st = classify_nonneg_structure(s);
    r["structure"] = {{"certified", st.certified},
                      {"complete", st.complete},
                      {"lead", st.lead},
                      {"zero_block", st.zero_block.str()},
                      {"negatives", st.negatives.str()},
                      {"witness", st.witness ? json(st.witness->str()) : json(nullptr)}};
  }
  return {r, kOk, {}};
}

Outcome do_disjointness(int m, int r, bool dump, bool hall, const std::string& rule) {
  DisjointnessGraphSpec spec{m, r};
  auto sg = build_disjointness_graph(spec);
  auto res = find_perfect_matching(spec);
  json out = {{"m", m},
              {"r", r},
              {"vertices_per_side", sg.left.size()},
              {"edges", sg.graph.edge_count()},
              {"saturated", res.perfect},
              {"matching_size", res.matching.size()},
              {"unsaturated", unsaturated_json(res.unsaturated_left, res.unsaturated_right)},
              {"pairs", pairs_json(sg, res.matching)}};
  if (hall) {
    auto rep = verify_corollary_hall_blocks(spec);
    json checks = json::array();
    for (const auto& c : rep.inequalities) {
      checks.push_back({{"description", c.description},
                        {"lhs", big(c.lhs)},
                        {"rhs", big(c.rhs)},
                        {"holds", c.holds},
                        {"neighborhood_matches", c.neighborhood_matches}});
    }
    out["hall"] = {{"regime", rep.regime},
                   {"biregular", rep.biregular},
                   {"reduced_holds", rep.reduced.holds},
                   {"violating", rep.reduced.violating ? one_based(*rep.reduced.violating) : json(nullptr)},
                   {"inequalities", checks},
                   {"holds", rep.holds}};
  }
  if (!rule.empty()) {
    if (rule != "complement") throw std::invalid_argument("unknown candidate rule '" + rule + "'");
    auto rep = validate_candidate_rule(spec, complement_rule(m));
    out["rule"] = {{"name", rule}, {"perfect", rep.perfect}, {"message", rep.message}};
  }
  std::string text;
  if (dump) {
    std::ostringstream os;
    os << "m=" << m << " r=" << r << " saturated=" << (res.perfect ? "true" : "false") << '\n';
    for (auto [u, v] : res.matching.pairs) {
      os << sg.left[static_cast<std::size_t>(u)].str() << " -> " << sg.right[static_cast<std::size_t>(v)].str() << '\n';
    }
    for (const auto& s : res.unsaturated_left) os << "unsaturated A " << s.str() << '\n';
    for (const auto& s : res.unsaturated_right) os << "unsaturated B " << s.str() << '\n';
    text = os.str();
  }
  return {out, kOk, text};
}

Outcome do_gi(int n, int k, int t, std::uint64_t pair, const std::string& sequence_path) {
  GiGraphSpec spec{n, k, t, pair};
  auto sg = build_gi_graph(spec);
  auto res = near_perfect_matching_gi(spec);
  json out = {{"n", n},
              {"k", k},
              {"t", t},
              {"pair", {{"A", spec.a_root().str()}, {"B", spec.b_root().str()}}},
              {"vertices_per_side", sg.left.size()},
              {"saturated", res.only_roots_unsaturated},
              {"matching_size", res.matching.size()},
              {"unsaturated", unsaturated_json(res.unsaturated_left, res.unsaturated_right)},
              {"pairs", pairs_json(sg, res.matching)}};
  int code = res.only_roots_unsaturated ? kOk : kViolation;
  if (!sequence_path.empty()) {
    auto s = NumberSequence::parse(read_file(sequence_path));
    auto pc = count_cap_per_pair(spec, s);
    out["count"] = {{"count", pc.count},
                    {"cap", big(pc.cap)},
                    {"within_cap", pc.within_cap},
                    {"certificate_ok", pc.certificate_ok}};
    if (!pc.within_cap || !pc.certificate_ok) code = kViolation;
  }
  return {out, code, {}};
}

Outcome do_hall(const std::string& path) {
  auto g = PartitionedBipartiteGraph::parse(read_file(path));
  auto bireg = validate_biregular(g);
  if (!bireg.valid) throw std::invalid_argument("graph is not bi-regular: " + bireg.message);
  auto h = reduce(g);
  json out = {{"k", h.k()}, {"l", h.l()}, {"biregular", true}};
  if (g.a_total() != g.b_total()) {
    throw std::invalid_argument("sides have different sizes (" + std::to_string(g.a_total()) + " vs " +
                                std::to_string(g.b_total()) + ")");
  }
  auto tr = solve_transportation(h);
  out["feasible"] = tr.feasible;
  out["flow"] = tr.flow;
  if (tr.plan) {
    json rows = json::array();
    for (const auto& row : tr.plan->d) {
      json jr = json::array();
      for (const auto& v : row) jr.push_back(numerator(v).convert_to<std::int64_t>());
      rows.push_back(jr);
    }
    out["plan"] = rows;
  }
  if (tr.cut) out["cut"] = {{"U1", one_based(tr.cut->a_blocks)}, {"U2", one_based(tr.cut->b_blocks)}};
  if (h.k() <= kMaxHallBlocks && h.l() <= 64) {
    auto hv = reduced_hall_condition(h);
    out["hall"] = {{"holds", hv.holds}, {"violating", hv.violating ? one_based(*hv.violating) : json(nullptr)}};
  }
  return {out, kOk, {}};
}

Outcome do_shift(const std::string& path, int k, int n) {
  const std::string text = read_file(path);
  if (n == 0) {
    // Smallest ground set holding every listed element.
    auto probe = SetFamily::parse(text, kMaxGround);
    for (const auto& s : probe) {
      auto e = s.elements();
      if (!e.empty()) n = std::max(n, e.back());
    }
    n = std::max(n, k);
  }
  BoundedFamily f(SetFamily::parse(text, n), k);
  auto before = has_property(f);
  auto up = to_upset(f);
  auto after = has_property(up.family);
  json log = json::array();
  for (const auto& step : up.log) log.push_back({{"element", step.element}, {"changed", step.changed}});
  json out = {{"n", n},
              {"k", k},
              {"size", f.size()},
              {"property_before", before.holds},
              {"property_after", after.holds},
              {"upset", sets(up.family.family())},
              {"upset_size", up.family.size()},
              {"is_upset", is_upset(up.family)},
              {"passes", up.passes},
              {"log", log},
              {"intersecting_check", to_string(upset_is_intersecting(up.family))}};
  const bool bad = up.family.size() != f.size() || (before.holds && !after.holds) ||
                   (before.holds && k <= n - 1 && upset_is_intersecting(up.family) != UpsetCheck::Intersecting);
  return {out, bad ? kViolation : kOk, {}};
}

Outcome do_oracle(int n, int k) {
  auto oracle = max_family_oracle(n, k);
  BigInt closed = bound_main(n, k) - 1;
  json out = {{"n", n},
              {"k", k},
              {"maximum", oracle.maximum},
              {"closed_form", big(closed)},
              {"matches", BigInt(oracle.maximum) == closed},
              {"witness", sets(oracle.witness)},
              {"nodes", oracle.nodes}};
  return {out, BigInt(oracle.maximum) == closed ? kOk : kViolation, {}};
}

void print_text(std::ostream& out, const json& result) {
  for (const auto& [key, value] : result.items()) {
    out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact checks for nonnegative-subset bounds, weighted Hall matchings and shifting", "extremal"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));

  int n = 0;
  int k = 0;
  int t = 0;
  int m = 0;
  int r = 0;
  int theorem = 0;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
  std::uint64_t pair = 1;
  std::string path;
  std::string sequence_path;
  std::string rule;
  bool flag_a = false;
  bool flag_b = false;

  auto* bound = app.add_subcommand("bound", "Print the upper bound for (n, k[, t])");
  bound->add_option("--n", n)->required();
  bound->add_option("--k", k)->required();
  bound->add_option("--t", t, "Number of nonnegative values (refined bound)");

  auto* verify = app.add_subcommand("verify", "Seeded verification of one theorem");
  verify->add_option("--theorem", theorem)->required()->check(CLI::IsMember({1, 2, 3}));
  verify->add_option("--n", n)->required();
  verify->add_option("--k", k)->required();
  verify->add_option("--t", t);
  verify->add_option("--trials", trials);
  verify->add_option("--seed", seed);

  auto* count = app.add_subcommand("count", "Count nonnegative subsets of a sequence file");
  count->add_option("--sequence", path)->required();
  count->add_flag("--family", flag_a, "Include every nonnegative index set");
  count->add_flag("--structure", flag_b, "Check the extremal family shape");

  auto* matching = app.add_subcommand("matching", "Matchings in disjointness and G_i graphs");
  matching->require_subcommand(1);
  auto* disjoint = matching->add_subcommand("disjointness", "Perfect matching on subsets of [m] of size 1..r");
  disjoint->add_option("--m", m)->required();
  disjoint->add_option("--r", r)->required();
  disjoint->add_flag("--dump", flag_a, "Print the matching one pair per line");
  disjoint->add_flag("--hall", flag_b, "Include the blocked Hall-condition checks");
  disjoint->add_option("--rule", rule, "Validate a candidate matching rule (complement)");
  auto* gi = matching->add_subcommand("gi", "Near-perfect matching on G_i");
  gi->add_option("--n", n)->required();
  gi->add_option("--k", k)->required();
  gi->add_option("--t", t)->required();
  gi->add_option("--pair", pair, "Bitmask of A_i over [t] (bit 0 is element 1)")->required();
  gi->add_option("--sequence", sequence_path, "Sequence file for the per-pair count");

  auto* hall = app.add_subcommand("hall", "Weighted Hall decision on a blocked graph");
  hall->require_subcommand(1);
  auto* decide = hall->add_subcommand("decide", "Solve the transportation system");
  decide->add_option("--graph", path)->required();

  auto* ekr = app.add_subcommand("ekr", "Shifting and the maximum-family oracle");
  ekr->require_subcommand(1);
  auto* shift = ekr->add_subcommand("shift", "Push a family up to an upset");
  shift->add_option("--family", path)->required();
  shift->add_option("--k", k)->required();
  shift->add_option("--n", n, "Ground set size (default: largest element, at least k)");
  auto* oracle = ekr->add_subcommand("oracle", "Exact maximum family size by search");
  oracle->add_option("--n", n)->required();
  oracle->add_option("--k", k)->required();

  const bool json_requested = [&] {
    for (std::size_t i = 0; i + 1 < args.size(); ++i) {
      if (args[i] == "--format" && args[i + 1] == "text") return false;
    }
    return std::find(args.begin(), args.end(), "--format=text") == args.end();
  }();

  std::string command;
  auto fail = [&](int code, const std::string& message) {
    if (json_requested) {
      json env = {{"schema", 1}, {"ok", false}, {"error", message}};
      if (!command.empty()) env["command"] = command;
      out << env.dump(2) << '\n';
    }
    err << "error: " << message << '\n';
    return code;
  };

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    return fail(kUsage, e.what());
  }

  Outcome outcome;
  try {
    if (bound->parsed()) {
      command = "bound";
      outcome = do_bound(n, k, t);
    } else if (verify->parsed()) {
      command = "verify";
      if (theorem == 2 && t == 0) throw std::invalid_argument("theorem 2 needs --t");
      outcome = do_verify(theorem, n, k, t, trials, seed);
    } else if (count->parsed()) {
      command = "count";
      outcome = do_count(path, flag_a, flag_b);
    } else if (disjoint->parsed()) {
      command = "matching disjointness";
      outcome = do_disjointness(m, r, flag_a, flag_b, rule);
    } else if (gi->parsed()) {
      command = "matching gi";
      outcome = do_gi(n, k, t, pair, sequence_path);
    } else if (decide->parsed()) {
      command = "hall decide";
      outcome = do_hall(path);
    } else if (shift->parsed()) {
      command = "ekr shift";
      outcome = do_shift(path, k, n);
    } else if (oracle->parsed()) {
      command = "ekr oracle";
      outcome = do_oracle(n, k);
    }
  } catch (const IoError& e) {
    return fail(kIo, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(kUsage, e.what());
  } catch (const std::exception& e) {
    return fail(kViolation, e.what());
  }

  if (format == "json") {
    json env = {{"schema", 1}, {"ok", outcome.code == kOk}, {"command", command}, {"result", outcome.result}};
    out << env.dump(2) << '\n';
  } else if (!outcome.text.empty()) {
    out << outcome.text;
  } else {
    print_text(out, outcome.result);
  }
  return outcome.code;
}

}  // namespace extremal::cli
