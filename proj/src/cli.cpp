#include "zeta/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "zeta/compositions.hpp"
#include "zeta/defect2.hpp"
#include "zeta/errors.hpp"
#include "zeta/lpoly.hpp"
#include "zeta/parapermanent.hpp"
#include "zeta/report.hpp"

namespace zeta::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr int kMaxCliCompositionOrder = 30;

struct CommonOptions {
  std::string format = "json";
  unsigned threads = default_threads();
};

InvalidArgument param_error(const std::string& flag, const std::string& what) {
  return InvalidArgument(flag + ": " + what);
}

BigInt parse_param(const std::string& flag, const std::string& text) {
  try {
    return parse_bigint(text);
  } catch (const InvalidArgument& e) {
    throw param_error(flag, e.what());
  }
}

std::vector<BigInt> parse_list(const std::string& flag, const std::vector<std::string>& items) {
  std::vector<BigInt> out;
  out.reserve(items.size());
  for (const auto& s : items) out.push_back(parse_param(flag, s));
  return out;
}

BigInt validated_q(const std::string& text, bool check_prime_power) {
  BigInt q = parse_param("--q", text);
  if (q < 2) throw param_error("--q", "must be >= 2, got " + q.get_str());
  if (check_prime_power && !is_prime_power(q)) {
    throw param_error("--q", q.get_str() + " is not a prime power (pass --no-validate to skip this check)");
  }
  return q;
}

void validate_common(const CommonOptions& c) {
  if (c.threads == 0) throw param_error("--threads", "must be >= 1");
}

void add_common(CLI::App* cmd, CommonOptions& c, std::vector<std::string> formats) {
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember(std::move(formats)))
      ->capture_default_str();
  cmd->add_option("--threads", c.threads, "Worker threads for composition sums")->capture_default_str();
}

std::vector<BigInt> require_integral(const std::vector<BigRational>& a, const SSequence& s, const char* method) {
  std::vector<BigInt> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_integer()) {
      Json state = {{"method", method}, {"q", s.q().get_str()}, {"S", report::to_json(s.values())}};
      Json coeffs = Json::array();
      for (const auto& x : a) coeffs.push_back(x.to_string());
      state["coeffs"] = coeffs;
      throw ConsistencyError(std::string(method) + ": coefficient a" + std::to_string(i) + " = " +
                                 a[i].to_string() + " is not an integer",
                             state.dump());
    }
    out.push_back(a[i].num_ref());
  }
  return out;
}

// ---------------------------------------------------------------------------
// lpoly / classnumber

struct CoefficientRun {
  std::vector<std::string> methods;
  std::vector<BigInt> head;  // a_0..a_g
  bool agree = true;
};

CoefficientRun run_methods(const SSequence& s, const std::string& method, unsigned threads) {
  if ((method == "compositions" || method == "all") && s.genus() > kMaxCompositionGenus) {
    throw param_error("--method", method + " enumerates 2^(g-1) terms and is limited to g <= " +
                                      std::to_string(kMaxCompositionGenus));
  }
  CoefficientRun run;
  std::vector<std::pair<std::string, std::vector<BigRational>>> results;
  if (method == "recurrence" || method == "all") {
    const auto a = coeffs_by_recurrence(s);
    results.emplace_back("recurrence", std::vector<BigRational>(a.begin(), a.end()));
  }
  if (method == "pper" || method == "all") results.emplace_back("pper", coeffs_by_parapermanent(s));
  if (method == "compositions" || method == "all") {
    results.emplace_back("compositions", coeffs_by_compositions(s, threads));
  }
  for (const auto& [name, values] : results) {
    run.methods.push_back(name);
    if (values != results.front().second) run.agree = false;
  }
  if (!run.agree) {
    Json state = {{"q", s.q().get_str()}, {"S", report::to_json(s.values())}};
    for (const auto& [name, values] : results) {
      Json v = Json::array();
      for (const auto& x : values) v.push_back(x.to_string());
      state[name] = v;
    }
    throw ConsistencyError("coefficient methods disagree", state.dump());
  }
  run.head = require_integral(results.front().second, s, results.front().first.c_str());
  return run;
}

void warn_weil(const SSequence& s, std::ostream& err) {
  if (!s.within_weil_bound()) {
    err << "warning: some |S_r| exceeds 2g*q^(r/2); the counts cannot come from a curve of genus "
        << s.genus() << "\n";
  }
}

void emit_lpoly(const LPolynomial& l, const BigInt& h, const CoefficientRun& run, std::optional<bool> oracle,
                const std::string& format, std::ostream& out) {
  if (format == "json") {
    Json j = {{"q", l.q.get_str()}, {"g", l.g}, {"coeffs", report::to_json(l.coeffs)}, {"h", h.get_str()}};
    j["methods"] = run.methods;
    j["methods_agree"] = run.agree;
    if (oracle) j["oracle_agree"] = *oracle;
    out << j.dump(2) << "\n";
  } else if (format == "csv") {
    out << "i,a_i\n";
    for (std::size_t i = 0; i < l.coeffs.size(); ++i) out << i << ',' << l.coeffs[i].get_str() << '\n';
  } else {
    out << "L(t) over F_" << l.q.get_str() << ", g=" << l.g << "\n";
    for (std::size_t i = 0; i < l.coeffs.size(); ++i) {
      out << "  a" << std::left << std::setw(4) << i << std::right << l.coeffs[i].get_str() << "\n";
    }
    out << "h = L(1) = " << h.get_str() << "\n";
    out << "methods: ";
    for (std::size_t i = 0; i < run.methods.size(); ++i) out << (i ? ", " : "") << run.methods[i];
    out << (run.agree ? " (agree)" : " (DISAGREE)") << "\n";
  }
}

struct LpolyArgs {
  CommonOptions common;
  std::string q;
  std::vector<std::string> counts;
  std::vector<std::string> traces;
  std::string method = "recurrence";
  bool no_validate = false;
};

SSequence sequence_from_args(const LpolyArgs& a, const BigInt& q, std::ostream& err,
                             std::optional<TraceData>& traces_out) {
  if (!a.counts.empty() && !a.traces.empty()) {
    throw param_error("--counts/--traces", "give exactly one of the two");
  }
  if (!a.traces.empty()) {
    std::vector<BigInt> t = parse_list("--traces", a.traces);
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t[i] * t[i] > 4 * q) {
        throw param_error("--traces", "t" + std::to_string(i + 1) + "=" + t[i].get_str() +
                                          " violates t^2 <= 4q");
      }
    }
    traces_out.emplace(q, std::move(t));
    return s_from_traces(*traces_out);
  }
  if (a.counts.empty()) throw param_error("--counts", "at least one point count is required");
  const std::vector<BigInt> n = parse_list("--counts", a.counts);
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (n[i] < 0) throw param_error("--counts", "N" + std::to_string(i + 1) + " is negative");
  }
  SSequence s = s_from_counts(q, n);
  warn_weil(s, err);
  return s;
}

int do_lpoly(const LpolyArgs& a, std::ostream& out, std::ostream& err) {
  validate_common(a.common);
  const BigInt q = validated_q(a.q, !a.no_validate);
  std::optional<TraceData> td;
  const SSequence s = sequence_from_args(a, q, err, td);
  const CoefficientRun run = run_methods(s, a.method, a.common.threads);
  const LPolynomial l = complete(run.head, q, s.genus());
  std::optional<bool> oracle;
  if (td) oracle = oracle_expand(*td) == l;
  if (oracle && !*oracle) {
    Json state = {{"q", q.get_str()},
                  {"traces", report::to_json(td->traces())},
                  {"coeffs", report::to_json(l.coeffs)},
                  {"expanded", report::to_json(oracle_expand(*td).coeffs)}};
    throw ConsistencyError("coefficients disagree with the expanded root product", state.dump());
  }
  emit_lpoly(l, class_number(l), run, oracle, a.common.format, out);
  return kExitOk;
}

int do_classnumber(const LpolyArgs& a, std::ostream& out, std::ostream& err) {
  validate_common(a.common);
  const BigInt q = validated_q(a.q, !a.no_validate);
  std::optional<TraceData> td;
  const SSequence s = sequence_from_args(a, q, err, td);
  if (s.genus() > kMaxCompositionGenus) {
    throw param_error("--counts/--traces", "the composition-sum class number formula is limited to g <= " +
                                               std::to_string(kMaxCompositionGenus));
  }
  const LPolynomial l = complete(coeffs_by_recurrence(s), q, s.genus());
  const BigInt h = class_number(l);
  const BigInt h_formula = class_number_formula(s, a.common.threads);
  if (h != h_formula) {
    Json state = {{"q", q.get_str()},
                  {"S", report::to_json(s.values())},
                  {"h", h.get_str()},
                  {"h_formula", h_formula.get_str()}};
    throw ConsistencyError("class number routes disagree", state.dump());
  }
  if (a.common.format == "json") {
    Json j = {{"q", q.get_str()},
              {"g", s.genus()},
              {"h", h.get_str()},
              {"h_formula", h_formula.get_str()},
              {"coeffs", report::to_json(l.coeffs)},
              {"routes_agree", true}};
    out << j.dump(2) << "\n";
  } else if (a.common.format == "csv") {
    out << "q,g,h,h_formula\n" << q.get_str() << ',' << s.genus() << ',' << h.get_str() << ','
        << h_formula.get_str() << '\n';
  } else {
    out << "h = L(1) = " << h.get_str() << "\nh (composition formula) = " << h_formula.get_str() << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// defect2

struct Defect2Args {
  CommonOptions common;
  int g = 0;
  int max_n = 0;
  std::string theta = "both";
};

int do_defect2(const Defect2Args& a, std::ostream& out) {
  validate_common(a.common);
  if (a.g < 1) throw param_error("--g", "must be >= 1");
  const int max_n = a.max_n == 0 ? a.g : a.max_n;
  if (max_n < 1 || max_n > a.g) throw param_error("--max-n", "must lie in [1, g=" + std::to_string(a.g) + "]");
  if (max_n > kMaxDefect2Order) {
    throw param_error(a.max_n == 0 ? "--g" : "--max-n",
                      "composition sums are limited to n <= " + std::to_string(kMaxDefect2Order) +
                          (a.max_n == 0 ? "; pass a smaller --max-n" : ""));
  }
  const ThetaSelection sel = a.theta == "pi4"    ? ThetaSelection::pi_4
                             : a.theta == "3pi4" ? ThetaSelection::three_pi_4
                                                 : ThetaSelection::both;
  const Defect2Report rep = analyze(a.g, max_n, sel, a.common.threads);
  if (a.common.format == "json") {
    out << report::to_json(rep).dump(2) << "\n";
  } else if (a.common.format == "csv") {
    out << report::to_csv(rep);
  } else {
    out << report::to_table(rep);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// compositions

struct CompositionArgs {
  CommonOptions common;
  int n = -1;
};

int do_compositions(const CompositionArgs& a, std::ostream& out) {
  if (a.n < 0 || a.n > kMaxCliCompositionOrder) {
    throw param_error("--n", "must lie in [0, " + std::to_string(kMaxCliCompositionOrder) + "]");
  }
  const auto range = enumerate(a.n);
  if (a.common.format == "json") {
    out << "[";
    bool first = true;
    for (auto it = range.begin(); it != range.end(); ++it) {
      out << (first ? "\n  " : ",\n  ") << Json{{"index", it.index()}, {"parts", it->parts()}}.dump();
      first = false;
    }
    out << "\n]\n";
  } else if (a.common.format == "csv") {
    out << "index,parts\n";
    for (auto it = range.begin(); it != range.end(); ++it) {
      out << it.index() << ',';
      for (std::size_t s = 0; s < it->size(); ++s) out << (s ? "+" : "") << it->parts()[s];
      out << '\n';
    }
  } else {
    for (auto it = range.begin(); it != range.end(); ++it) {
      out << std::setw(10) << it.index() << "  (";
      for (std::size_t s = 0; s < it->size(); ++s) out << (s ? "," : "") << it->parts()[s];
      out << ")\n";
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// pper

struct PperArgs {
  CommonOptions common;
  std::string file;
};

BigRational entry_from_json(const Json& v, int i, int j) {
  try {
    if (v.is_string()) return BigRational::parse(v.get<std::string>());
    if (v.is_number_integer()) return BigRational(v.get<long long>());
  } catch (const InvalidArgument& e) {
    throw param_error("--file", "entry (" + std::to_string(i) + "," + std::to_string(j) + "): " + e.what());
  }
  throw param_error("--file", "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                  ") must be an integer or a \"p/q\" string");
}

int do_pper(const PperArgs& a, std::ostream& out) {
  validate_common(a.common);
  std::ifstream in(a.file);
  if (!in) throw param_error("--file", "cannot open '" + a.file + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw param_error("--file", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("order") || !doc["order"].is_number_integer() || !doc.contains("rows") ||
      !doc["rows"].is_array()) {
    throw param_error("--file", "expected {\"order\": n, \"rows\": [[...], ...]}");
  }
  const int order = doc["order"].get<int>();
  if (order < 0 || order > kMaxCliCompositionOrder) {
    throw param_error("--file", "order must lie in [0, " + std::to_string(kMaxCliCompositionOrder) + "]");
  }
  if (doc["rows"].size() != static_cast<std::size_t>(order)) {
    throw param_error("--file", "order is " + std::to_string(order) + " but " +
                                    std::to_string(doc["rows"].size()) + " rows were given");
  }
  std::vector<std::vector<BigRational>> rows;
  for (int i = 1; i <= order; ++i) {
    const Json& row = doc["rows"][static_cast<std::size_t>(i - 1)];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(i)) {
      throw param_error("--file", "row " + std::to_string(i) + " must have " + std::to_string(i) + " entries");
    }
    std::vector<BigRational> r;
    for (int j = 1; j <= i; ++j) r.push_back(entry_from_json(row[static_cast<std::size_t>(j - 1)], i, j));
    rows.push_back(std::move(r));
  }
  const auto b = TriangularMatrix<BigRational>::from_rows(rows);
  const BigRational by_comp = pper_by_compositions(b, a.common.threads);
  const BigRational by_row = pper_by_last_row(b);
  if (by_comp != by_row) {
    Json state = {{"order", order}, {"compositions", by_comp.to_string()}, {"last_row", by_row.to_string()}};
    throw ConsistencyError("parapermanent evaluators disagree", state.dump());
  }
  if (a.common.format == "json") {
    Json j = {{"order", order},
              {"pper_compositions", by_comp.to_string()},
              {"pper_last_row", by_row.to_string()},
              {"agree", true}};
    out << j.dump(2) << "\n";
  } else if (a.common.format == "csv") {
    out << "method,value\ncompositions," << by_comp.to_string() << "\nlast_row," << by_row.to_string() << "\n";
  } else {
    out << "pper (compositions) = " << by_comp.to_string() << "\npper (last row)     = " << by_row.to_string()
        << "\n";
  }
  return kExitOk;
}

bool known_command(const std::vector<std::string>& args) {
  if (args.empty()) return false;
  const std::string& c = args[0];
  if (c == "-h" || c == "--help" || c == "classnumber" || c == "compositions" || c == "pper") return true;
  auto nested = [&](std::initializer_list<const char*> names) {
    if (args.size() < 2) return true;  // let the parser report the missing subcommand
    const std::string& s = args[1];
    if (!s.empty() && s[0] == '-') return true;
    return std::any_of(names.begin(), names.end(), [&](const char* n) { return s == n; });
  };
  if (c == "lpoly") return nested({"from-counts", "from-traces"});
  if (c == "defect2") return nested({"analyze"});
  return false;
}

}  // namespace

std::string usage() {
  return "usage: zeta-lpoly <command> [options]\n"
         "\n"
         "commands:\n"
         "  lpoly from-counts --q Q --counts N1,...,Ng [--method recurrence|pper|compositions|all]\n"
         "  lpoly from-traces --q Q --traces t1,...,tg [--method ...]\n"
         "  classnumber       --q Q (--counts N1,...,Ng | --traces t1,...,tg)\n"
         "  defect2 analyze   --g G [--max-n N] [--theta pi4|3pi4|both]\n"
         "  compositions      --n N\n"
         "  pper              --file matrix.json\n"
         "\n"
         "common options: --format json|csv|table, --threads T, --no-validate (skip the prime-power check on q)\n";
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (!known_command(args)) {
    err << (args.empty() ? "missing command\n" : "unknown command '" + args[0] + "'\n") << usage();
    return kExitUsage;
  }

  CLI::App app{"Exact L-polynomial coefficients of function fields over finite fields", "zeta-lpoly"};
  app.require_subcommand(1);
  const std::vector<std::string> all_formats{"json", "csv", "table"};

  LpolyArgs lp_counts, lp_traces, cn;
  auto* lpoly = app.add_subcommand("lpoly", "L-polynomial coefficients");
  lpoly->require_subcommand(1);
  auto setup_lpoly = [&](CLI::App* cmd, LpolyArgs& a, bool counts, bool traces) {
    cmd->add_option("--q", a.q, "Size of the constant field")->required();
    if (counts) cmd->add_option("--counts", a.counts, "N_1,...,N_g")->delimiter(',');
    if (traces) cmd->add_option("--traces", a.traces, "t_1,...,t_g (alpha_i + conj(alpha_i))")->delimiter(',');
    cmd->add_flag("--no-validate", a.no_validate, "Skip the prime-power check on q");
    add_common(cmd, a.common, all_formats);
  };
  auto* from_counts = lpoly->add_subcommand("from-counts", "Coefficients from point counts");
  setup_lpoly(from_counts, lp_counts, true, false);
  from_counts->get_option("--counts")->required();
  from_counts->add_option("--method", lp_counts.method)
      ->check(CLI::IsMember({"recurrence", "pper", "compositions", "all"}))
      ->capture_default_str();
  auto* from_traces = lpoly->add_subcommand("from-traces", "Coefficients from reciprocal-root traces");
  setup_lpoly(from_traces, lp_traces, false, true);
  from_traces->get_option("--traces")->required();
  from_traces->add_option("--method", lp_traces.method)
      ->check(CLI::IsMember({"recurrence", "pper", "compositions", "all"}))
      ->capture_default_str();

  auto* classnumber = app.add_subcommand("classnumber", "Class number by L(1) and by the composition formula");
  setup_lpoly(classnumber, cn, true, true);

  Defect2Args d2;
  auto* defect2 = app.add_subcommand("defect2", "Defect-2 curves over F_2");
  defect2->require_subcommand(1);
  auto* analyze_cmd = defect2->add_subcommand("analyze", "Coefficient, sign-count and symmetry report");
  analyze_cmd->add_option("--g", d2.g, "Genus")->required();
  analyze_cmd->add_option("--max-n", d2.max_n, "Largest n to analyze (default: g)");
  analyze_cmd->add_option("--theta", d2.theta)->check(CLI::IsMember({"pi4", "3pi4", "both"}))->capture_default_str();
  add_common(analyze_cmd, d2.common, all_formats);

  CompositionArgs comp;
  auto* compositions = app.add_subcommand("compositions", "List the compositions of n with their indices");
  compositions->add_option("--n", comp.n, "Integer to decompose")->required();
  add_common(compositions, comp.common, all_formats);

  PperArgs pp;
  auto* pper = app.add_subcommand("pper", "Parapermanent of a triangular matrix from a JSON file");
  pper->add_option("--file", pp.file, "JSON {\"order\": n, \"rows\": [[...], ...]}")->required();
  add_common(pper, pp.common, all_formats);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << e.what() << "\n";
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }

  try {
    if (from_counts->parsed()) return do_lpoly(lp_counts, out, err);
    if (from_traces->parsed()) return do_lpoly(lp_traces, out, err);
    if (classnumber->parsed()) return do_classnumber(cn, out, err);
    if (analyze_cmd->parsed()) return do_defect2(d2, out);
    if (compositions->parsed()) return do_compositions(comp, out);
    if (pper->parsed()) return do_pper(pp, out);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const ConsistencyError& e) {
    err << "inconsistent: " << e.what() << "\n";
    Json report = {{"error", e.what()}};
    report["state"] = Json::parse(e.state(), nullptr, false);
    out << report.dump(2) << "\n";
    return kExitInconsistent;
  }
  err << usage();
  return kExitUsage;
}

}  // namespace zeta::cli
