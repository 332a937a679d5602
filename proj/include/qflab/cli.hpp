#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qflab/arith.hpp"
#include "qflab/error.hpp"
#include "qflab/forms.hpp"
#include "qflab/fourier.hpp"
#include "qflab/io.hpp"
#include "qflab/lattice.hpp"
#include "qflab/sieve.hpp"
#include "qflab/verify.hpp"

namespace qflab::cli {

/// Bad invocation. exit_code is 2, or 0 for --help (message holds the text).
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what, int exit_code = 2) : std::runtime_error(what), code_(exit_code) {}
  int exit_code() const noexcept { return code_; }

 private:
  int code_;
};

struct CommandPlan {
  std::string subcommand;
  std::string action;
  std::map<std::string, std::string> params;
  std::optional<std::string> output;
  io::Format format = io::Format::json;
};

namespace detail {

struct ActionSpec {
  std::string name;
  std::string help;
  std::vector<std::pair<std::string, std::string>> options;  // key, description
  std::vector<std::string> flags;                            // boolean switches
};

struct GroupSpec {
  std::string name;
  std::string help;
  std::vector<ActionSpec> actions;
};

inline const std::vector<GroupSpec>& command_table() {
  static const std::vector<GroupSpec> table = {
      {"forms",
       "binary quadratic forms",
       {
           {"reduce", "reduce a form", {{"form", "a,b,c"}}, {}},
           {"enumerate", "reduced primitive forms of discriminant -D", {{"D", "D >= 3, D = 0 or 3 mod 4"}}, {}},
           {"classnum", "class number by enumeration and by L(1, chi)", {{"D", "D >= 3"}}, {}},
       }},
      {"repr",
       "representation counts and lattice sums",
       {
           {"rf", "r_f(n)", {{"form", "a,b,c"}, {"n", "n >= 0"}}, {}},
           {"congruence-sum", "sum over n <= x with l | n of r_f(n)", {{"form", "a,b,c"}, {"ell", "l >= 1"}, {"x", "x >= 0"}}, {}},
           {"error-scaling",
            "congruence-sum errors over a grid",
            {{"form", "a,b,c"}, {"ell", "l >= 1"}, {"grid", "start:stop:points:log|lin"}},
            {}},
           {"poisson-check", "both sides of the lattice Poisson identity", {{"form", "a,b,c"}, {"ell", "l >= 1"}, {"t", "t > 0"}}, {}},
       }},
      {"sieve",
       "sieve bounds and represented primes",
       {
           {"bound", "Selberg upper bound", {{"form", "a,b,c"}, {"x", "x"}, {"y", "0 < y <= x"}, {"z", "z >= 2"}}, {}},
           {"pif", "primes <= x represented by f", {{"form", "a,b,c"}, {"x", "x >= 0"}}, {}},
           {"gaps", "normalised gaps between represented primes", {{"form", "a,b,c"}, {"X", "scan limit"}}, {"all"}},
           {"bt-constants",
            "Brun-Titchmarsh leading constants",
            {{"form", "a,b,c (reduced)"},
             {"x", "x"},
             {"y", "1 < y <= x"},
             {"variant", "theorem2-case1|theorem2-case2|theoremA"},
             {"eps", "epsilon"}},
            {}},
       }},
      {"fourier",
       "Fourier optimisation",
       {
           {"eval", "F(x) and F^(t)", {{"coeffs", "a1,...,an"}, {"lambda", "(0, 1.2]"}, {"x", "point"}, {"t", "frequency"}}, {}},
           {"report",
            "functionals and gap constant",
            {{"coeffs", "a1,...,an"},
             {"lambda", "(0, 1.2]"},
             {"poly", "p0,...,pn for P(x) exp(-pi x^2)"},
             {"A", "A >= 1"},
             {"alpha", "alpha >= 0"},
             {"delta", "1/2 or 1"},
             {"class-number", "h(-D) >= 1"}},
            {}},
           {"search", "greedy coefficient search", {{"A", "A >= 1"}, {"terms", "1..5"}, {"budget", "sweeps per seed"}}, {}},
           {"tables", "published parameter rows with recomputed lower bounds", {}, {"published"}},
       }},
      {"verify", "acceptance checks", {{"fast", "quick suite", {}, {}}, {"full", "complete suite", {}, {}}}},
  };
  return table;
}

inline const ActionSpec& find_action(const std::string& group, const std::string& action) {
  for (const auto& g : command_table())
    if (g.name == group)
      for (const auto& a : g.actions)
        if (a.name == action) return a;
  throw UsageError("unknown command '" + group + " " + action + "'");
}

inline std::string config_value(const nlohmann::json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number()) {
    std::ostringstream s;
    s << std::setprecision(17) << v.get<double>();
    return s.str();
  }
  if (key == "grid" && v.is_object()) {
    for (const auto& [k, _] : v.items())
      if (k != "start" && k != "stop" && k != "points" && k != "log")
        throw UsageError("config: unknown grid key '" + k + "'");
    std::ostringstream s;
    s << std::setprecision(17) << v.at("start").get<double>() << ':' << v.at("stop").get<double>() << ':'
      << v.at("points").get<std::int64_t>() << ':' << (v.value("log", true) ? "log" : "lin");
    return s.str();
  }
  if (v.is_array()) {
    std::string out;
    for (const auto& e : v) out += (out.empty() ? "" : ",") + config_value(e, key);
    return out;
  }
  throw UsageError("config: unsupported value for '" + key + "'");
}

/// Typed access to plan parameters; every failure names the flag.
class Args {
 public:
  explicit Args(const CommandPlan& p) : p_(p) {}

  bool has(const std::string& k) const { return p_.params.count(k) > 0; }

  const std::string& raw(const std::string& k) const {
    const auto it = p_.params.find(k);
    if (it == p_.params.end()) throw UsageError("missing required option --" + k);
    return it->second;
  }

  double real(const std::string& k) const { return parse_real(k, raw(k)); }
  double real_or(const std::string& k, double fallback) const { return has(k) ? real(k) : fallback; }

  std::int64_t integer(const std::string& k) const {
    const double v = real(k);
    if (v != std::floor(v) || std::abs(v) > 9e15) fail(k, "expected an integer");
    return static_cast<std::int64_t>(v);
  }
  std::int64_t integer_or(const std::string& k, std::int64_t fallback) const { return has(k) ? integer(k) : fallback; }

  bool flag(const std::string& k) const { return has(k) && raw(k) != "false"; }

  std::vector<double> reals(const std::string& k) const {
    std::vector<double> out;
    std::stringstream ss(raw(k));
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_real(k, item));
    if (out.empty()) fail(k, "expected a comma-separated list");
    return out;
  }

  QuadraticForm form(const std::string& k = "form") const {
    const auto v = reals(k);
    if (v.size() != 3) fail(k, "expected a,b,c");
    for (double x : v)
      if (x != std::floor(x) || std::abs(x) > 3e9) fail(k, "coefficients must be integers of moderate size");
    try {
      return QuadraticForm(static_cast<std::int64_t>(v[0]), static_cast<std::int64_t>(v[1]),
                           static_cast<std::int64_t>(v[2]));
    } catch (const Error& e) {
      fail(k, e.what());
    }
  }

  std::vector<double> grid(const std::string& k = "grid") const {
    std::vector<std::string> parts;
    std::stringstream ss(raw(k));
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 4) fail(k, "expected start:stop:points:log|lin");
    const double start = parse_real(k, parts[0]), stop = parse_real(k, parts[1]);
    const double points = parse_real(k, parts[2]);
    if (points != std::floor(points) || points < 1 || points > 1e6) fail(k, "points must be a positive integer");
    bool log;
    if (parts[3] == "log" || parts[3] == "true" || parts[3] == "1")
      log = true;
    else if (parts[3] == "lin" || parts[3] == "false" || parts[3] == "0")
      log = false;
    else
      fail(k, "last field must be log or lin");
    if (!(stop > start) && points > 1) fail(k, "stop must exceed start");
    try {
      return make_grid(start, stop, static_cast<int>(points), log);
    } catch (const Error& e) {
      fail(k, e.what());
    }
  }

  [[noreturn]] static void fail(const std::string& k, const std::string& why) {
    throw UsageError("invalid value for --" + k + ": " + why);
  }

 private:
  static double parse_real(const std::string& k, const std::string& s) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      fail(k, "'" + s + "' is not a number");
    }
    if (used != s.size() || !std::isfinite(v)) fail(k, "'" + s + "' is not a finite number");
    return v;
  }

  const CommandPlan& p_;
};

inline void require(bool ok, const std::string& key, const std::string& why) {
  if (!ok) Args::fail(key, why);
}

inline io::Record form_fields(io::Record r, const QuadraticForm& f) {
  return r.add("a", f.a()).add("b", f.b()).add("c", f.c());
}

inline io::Record report_record(const FunctionalReport& rep) {
  io::Record r;
  r.add("A", rep.A)
      .add("f_at_zero", rep.f_at_zero)
      .add("l1_norm", rep.l1_norm)
      .add("l1_tail_bound", rep.l1_tail_bound)
      .add("tail_pos", rep.tail_pos)
      .add("tail_abs", rep.tail_abs)
      .add("j_plus", rep.j_plus)
      .add("j_abs", rep.j_abs);
  return r;
}

using Job = std::function<std::vector<io::Record>()>;

/// Checks every parameter of the plan and returns the bound computation.
inline Job prepare(const CommandPlan& plan) {
  const Args args(plan);
  const std::string key = plan.subcommand + " " + plan.action;

  if (key == "forms reduce") {
    const auto f = args.form();
    return [f] {
      const auto g = reduce(f);
      io::Record r = form_fields({}, f);
      r.add("D", f.D()).add("reduced_a", g.a()).add("reduced_b", g.b()).add("reduced_c", g.c()).add("was_reduced",
                                                                                                    is_reduced(f));
      return std::vector<io::Record>{r};
    };
  }
  if (key == "forms enumerate" || key == "forms classnum") {
    const auto D = args.integer("D");
    require(is_valid_discriminant(D), "D", "need D >= 3 with D = 0 or 3 (mod 4)");
    if (plan.action == "enumerate")
      return [D] {
        std::vector<io::Record> rows;
        for (const auto& f : enumerate_reduced_forms(D).forms) rows.push_back(form_fields(io::Record().add("D", D), f));
        return rows;
      };
    return [D] {
      io::Record r;
      const bool fundamental = is_fundamental(D);
      r.add("D", D).add("h", class_number(D)).add("w", unit_count(D)).add("fundamental", fundamental);
      r.add("h_via_L", fundamental ? class_number_via_L(D) : std::int64_t{-1});
      return std::vector<io::Record>{r};
    };
  }
  if (key == "repr rf") {
    const auto f = args.form();
    const auto n = args.integer("n");
    require(n >= 0, "n", "need n >= 0");
    return [f, n] { return std::vector<io::Record>{form_fields({}, f).add("n", n).add("rf", rf(f, n))}; };
  }
  if (key == "repr congruence-sum") {
    const auto f = args.form();
    const auto ell = args.integer("ell");
    const double x = args.real("x");
    require(ell >= 1, "ell", "need l >= 1");
    require(x >= 0, "x", "need x >= 0");
    return [f, ell, x] {
      const auto r = congruence_sum(f, ell, x);
      return std::vector<io::Record>{form_fields({}, f)
                                         .add("ell", ell)
                                         .add("x", x)
                                         .add("exact", r.exact_sum)
                                         .add("main", r.main_term)
                                         .add("error", r.error)};
    };
  }
  if (key == "repr error-scaling") {
    const auto f = args.form();
    const auto ell = args.integer("ell");
    require(ell >= 1, "ell", "need l >= 1");
    const auto grid = args.grid();
    require(grid.front() >= 0, "grid", "x values must be >= 0");
    return [f, ell, grid] {
      const auto rep = error_scaling_report(f, ell, grid);
      std::vector<io::Record> rows;
      for (const auto& row : rep.rows)
        rows.push_back(io::Record()
                           .add("x", row.x)
                           .add("exact", row.exact)
                           .add("main", row.main)
                           .add("error", row.error)
                           .add("normalized_third", row.normalized_third)
                           .add("normalized_half", row.normalized_half));
      if (rep.slope) std::cerr << "slope=" << std::setprecision(17) << *rep.slope << '\n';
      return rows;
    };
  }
  if (key == "repr poisson-check") {
    const auto f = args.form();
    const auto ell = args.integer("ell");
    const double t = args.real("t");
    require(ell >= 1, "ell", "need l >= 1");
    require(t > 0, "t", "need t > 0");
    return [f, ell, t] {
      const auto pc = poisson_identity_check(f, ell, t);
      return std::vector<io::Record>{form_fields({}, f)
                                         .add("ell", ell)
                                         .add("t", t)
                                         .add("lhs", pc.lhs)
                                         .add("rhs", pc.rhs)
                                         .add("relative_gap", pc.relative_gap())
                                         .add("lhs_tail_bound", pc.lhs_tail_bound)
                                         .add("rhs_tail_bound", pc.rhs_tail_bound)};
    };
  }
  if (key == "sieve bound") {
    const auto f = args.form();
    const double x = args.real("x"), y = args.real("y"), z = args.real("z");
    require(y > 0, "y", "need y > 0");
    require(x - y >= 0, "x", "need x >= y");
    require(z >= 2, "z", "need z >= 2");
    return [f, x, y, z] {
      const auto b = sieve_upper_bound(f, x, y, z);
      return std::vector<io::Record>{io::Record()
                                         .add("x", x)
                                         .add("y", y)
                                         .add("z", z)
                                         .add("main", b.main)
                                         .add("error_sum", b.error_sum)
                                         .add("bound", b.bound)
                                         .add("exact", sieved_sum_exact(f, x, y, z))};
    };
  }
  if (key == "sieve pif") {
    const auto f = args.form();
    const double x = args.real("x");
    require(x >= 0 && x <= static_cast<double>(kMarkingBudget), "x", "need 0 <= x <= 2e9");
    return [f, x] { return std::vector<io::Record>{form_fields({}, f).add("x", x).add("pi_f", pi_f(f, x))}; };
  }
  if (key == "sieve gaps") {
    const auto f = args.form();
    const double X = args.real("X");
    require(X >= 2 && X <= static_cast<double>(kMarkingBudget), "X", "need 2 <= X <= 2e9");
    const bool all = args.flag("all");
    return [f, X, all] {
      const auto scan = prime_gap_scan(f, X);
      auto rec = [](const PrimeGapRecord& g) {
        return io::Record()
            .add("p_n", g.p_n)
            .add("p_next", g.p_next)
            .add("gap", g.gap())
            .add("normalized", g.normalized_gap);
      };
      std::vector<io::Record> rows;
      if (all)
        for (const auto& g : scan.records) rows.push_back(rec(g));
      else if (scan.max_record)
        rows.push_back(rec(*scan.max_record));
      return rows;
    };
  }
  if (key == "sieve bt-constants") {
    const auto f = args.form();
    require(is_reduced(f), "form", "form must be reduced");
    const double x = args.real("x"), y = args.real("y");
    require(y > 1, "y", "need y > 1");
    require(x >= y, "x", "need x >= y");
    const auto& name = args.raw("variant");
    BtVariant variant;
    if (name == "theorem2-case1")
      variant = BtVariant::theorem2_case1;
    else if (name == "theorem2-case2")
      variant = BtVariant::theorem2_case2;
    else if (name == "theoremA")
      variant = BtVariant::theoremA;
    else
      Args::fail("variant", "expected theorem2-case1, theorem2-case2 or theoremA");
    const double eps = args.real_or("eps", variant == BtVariant::theorem2_case2 ? 0.0 : 0.01);
    if (variant == BtVariant::theorem2_case1) require(eps > 0 && eps < 1.0 / 20, "eps", "need 0 < eps < 1/20");
    if (variant == BtVariant::theoremA) require(eps > 0, "eps", "need eps > 0");
    return [f, x, y, variant, eps, name] {
      const auto c = bt_theoretical_bound(f, x, y, variant, eps);
      return std::vector<io::Record>{form_fields({}, f)
                                         .add("x", x)
                                         .add("y", y)
                                         .add("variant", name)
                                         .add("eps", eps)
                                         .add("theta", c.theta)
                                         .add("constant", c.constant)
                                         .add("range_ok", c.range_ok)};
    };
  }
  if (key == "fourier eval") {
    const auto coeffs = args.reals("coeffs");
    const double lambda = args.real_or("lambda", 1.0);
    require(lambda > 0 && lambda <= 1.2, "lambda", "need 0 < lambda <= 1.2");
    require(std::any_of(coeffs.begin(), coeffs.end(), [](double a) { return a != 0.0; }), "coeffs",
            "at least one coefficient must be nonzero");
    require(args.has("x") || args.has("t"), "x", "give --x, --t or both");
    const std::optional<double> x = args.has("x") ? std::optional(args.real("x")) : std::nullopt;
    const std::optional<double> t = args.has("t") ? std::optional(args.real("t")) : std::nullopt;
    return [coeffs, lambda, x, t] {
      const BandlimitedFn fn(coeffs, lambda);
      io::Record r;
      r.add("lambda", lambda);
      if (x) r.add("x", *x).add("F", fn(*x));
      if (t) r.add("t", *t).add("F_hat", fn.hat(*t));
      return std::vector<io::Record>{r};
    };
  }
  if (key == "fourier report") {
    const double A = args.real_or("A", 28.0);
    require(A >= 1, "A", "need A >= 1");
    const bool gauss = args.has("poly");
    require(gauss != args.has("coeffs"), "coeffs", "give exactly one of --coeffs and --poly");
    if (gauss) require(!args.has("lambda"), "lambda", "not used with --poly");
    const auto values = args.reals(gauss ? "poly" : "coeffs");
    require(std::any_of(values.begin(), values.end(), [](double a) { return a != 0.0; }), gauss ? "poly" : "coeffs",
            "must not vanish identically");
    const double lambda = args.real_or("lambda", 1.0);
    require(lambda > 0 && lambda <= 1.2, "lambda", "need 0 < lambda <= 1.2");
    const double alpha = args.real_or("alpha", 0.0);
    require(alpha >= 0, "alpha", "need alpha >= 0");
    const double delta = args.real_or("delta", 0.5);
    require(delta == 0.5 || delta == 1.0, "delta", "must be 0.5 or 1");
    const auto h = args.integer_or("class-number", 1);
    require(h >= 1, "class-number", "need h >= 1");
    return [=] {
      const auto rep = gauss ? gauss_poly_report(GaussPolyFn(values), A)
                             : functional_report(BandlimitedFn(values, lambda), A);
      io::Record r = report_record(rep);
      const bool admissible = rep.f_at_zero - A * rep.tail_pos > 0;
      r.add("ratio", admissible ? rep.ratio() : std::numeric_limits<double>::quiet_NaN());
      r.add("gap_constant", admissible ? gap_constant(rep, alpha, delta, h) : std::numeric_limits<double>::quiet_NaN());
      return std::vector<io::Record>{r};
    };
  }
  if (key == "fourier search") {
    const double A = args.real("A");
    require(A >= 1, "A", "need A >= 1");
    const auto terms = args.integer_or("terms", 3);
    require(terms >= 1 && terms <= 5, "terms", "need 1 <= terms <= 5");
    const auto budget = args.integer_or("budget", 400);
    require(budget >= 1 && budget <= 100000, "budget", "need 1 <= budget <= 100000");
    return [A, terms, budget] {
      SearchOptions opt;
      opt.budget = static_cast<int>(budget);
      const auto res = greedy_search(A, static_cast<int>(terms), opt);
      io::Record r;
      r.add("A", A);
      for (std::size_t i = 0; i < res.fn.coeffs().size(); ++i)
        r.add("a" + std::to_string(i + 1), res.fn.coeffs()[i]);
      r.add("lambda", res.fn.lambda())
          .add("j_plus", res.report.j_plus)
          .add("j_abs", res.report.j_abs)
          .add("sweeps", res.sweeps)
          .add("evaluations", res.evaluations)
          .add("budget_exhausted", res.budget_exhausted);
      return std::vector<io::Record>{r};
    };
  }
  if (key == "fourier tables") {
    const bool published = args.flag("published");
    return [published] {
      const auto& rows = published_rows();
      const auto values = parallel_map<double>(rows.size(), [&](std::size_t i) {
        if (published) return rows[i].c_plus;
        const auto& row = rows[i];
        return functional_report(BandlimitedFn({row.coeffs.begin(), row.coeffs.end()}, row.lambda), row.A).j_plus;
      });
      std::vector<io::Record> out;
      for (std::size_t i = 0; i < rows.size(); ++i)
        out.push_back(io::Record()
                          .add("A", rows[i].A)
                          .add("c_plus_lower", values[i])
                          .add("a1", rows[i].coeffs[0])
                          .add("a2", rows[i].coeffs[1])
                          .add("a3", rows[i].coeffs[2])
                          .add("lambda", rows[i].lambda));
      return out;
    };
  }
  if (plan.subcommand == "verify") return [] { return std::vector<io::Record>{}; };
  throw UsageError("unknown command '" + key + "'");
}

}  // namespace detail

/// Parses argv (without the program name) into a validated plan.
inline CommandPlan parse_invocation(const std::vector<std::string>& argv) {
  CLI::App app{"qflab: quadratic forms, lattice sums, sieve bounds and Fourier optimisation", "qflab"};
  app.require_subcommand(1);
  std::map<std::string, std::map<std::string, std::string>> values;  // "group action" -> key -> value
  std::map<std::string, std::string> out, format, config;
  std::map<std::string, std::set<std::string>> flags_seen;
  std::vector<std::pair<std::string, CLI::App*>> leaves;
  std::map<std::string, std::vector<std::pair<std::string, CLI::Option*>>> opts;
  std::map<std::string, std::vector<std::pair<std::string, CLI::Option*>>> flag_opts;

  for (const auto& g : detail::command_table()) {
    auto* group = app.add_subcommand(g.name, g.help);
    group->require_subcommand(1);
    for (const auto& a : g.actions) {
      const std::string id = g.name + " " + a.name;
      auto* leaf = group->add_subcommand(a.name, a.help);
      for (const auto& [k, desc] : a.options) opts[id].emplace_back(k, leaf->add_option("--" + k, values[id][k], desc));
      for (const auto& k : a.flags) flag_opts[id].emplace_back(k, leaf->add_flag("--" + k, "switch"));
      leaf->add_option("--out", out[id], "output path (default stdout)");
      leaf->add_option("--format", format[id], "json or csv")->check(CLI::IsMember({"json", "csv"}));
      leaf->add_option("--config", config[id], "JSON file with option values");
      leaves.emplace_back(id, leaf);
    }
  }

  std::vector<std::string> reversed(argv.rbegin(), argv.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw UsageError(app.help(), 0);
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  CommandPlan plan;
  std::string id;
  for (const auto& [lid, leaf] : leaves)
    if (leaf->parsed()) id = lid;
  if (id.empty()) throw UsageError("missing command");
  plan.subcommand = id.substr(0, id.find(' '));
  plan.action = id.substr(id.find(' ') + 1);
  for (const auto& [k, opt] : opts[id])
    if (opt->count() > 0) plan.params[k] = values[id][k];
  for (const auto& [k, opt] : flag_opts[id])
    if (opt->count() > 0) plan.params[k] = "true";
  if (!out[id].empty()) plan.output = out[id];
  if (format[id] == "csv") plan.format = io::Format::csv;

  if (!config[id].empty()) {
    std::ifstream in(config[id]);
    if (!in) throw UsageError("invalid value for --config: cannot open '" + config[id] + "'");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(std::string("invalid value for --config: ") + e.what());
    }
    if (!j.is_object()) throw UsageError("invalid value for --config: expected a JSON object");
    const auto& spec = detail::find_action(plan.subcommand, plan.action);
    for (const auto& [k, v] : j.items()) {
      const bool known = std::any_of(spec.options.begin(), spec.options.end(), [&](const auto& o) { return o.first == k; }) ||
                         std::find(spec.flags.begin(), spec.flags.end(), k) != spec.flags.end();
      if (!known) throw UsageError("unknown config key '" + k + "' for '" + id + "'");
      if (!plan.params.count(k)) plan.params[k] = detail::config_value(v, k);
    }
  }
  (void)detail::prepare(plan);
  return plan;
}

/// Runs a plan. Returns the process exit status: 0 on success, 1 on a
/// runtime failure or a failed verification.
inline int execute(const CommandPlan& plan, std::ostream& out, std::ostream& err) {
  std::ofstream file;
  std::ostream* os = &out;
  if (plan.output) {
    file.open(*plan.output);
    if (!file) {
      err << "error: cannot open " << *plan.output << " for writing\n";
      return 1;
    }
    os = &file;
  }
  try {
    if (plan.subcommand == "verify") {
      const auto suite = plan.action == "full" ? verify::Suite::full : verify::Suite::fast;
      bool ok = true;
      int failed = 0;
      const auto results = verify::run_suite(suite, [&](const verify::CheckResult& r) {
        *os << verify::format_line(r) << std::endl;
        if (!r.pass) ++failed;
      });
      for (const auto& r : results) ok = ok && r.pass;
      *os << (ok ? "all checks passed" : std::to_string(failed) + " check(s) failed") << std::endl;
      return ok ? 0 : 1;
    }
    const auto rows = detail::prepare(plan)();
    io::write(*os, rows, plan.format);
    return 0;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

inline int run(const std::vector<std::string>& argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CommandPlan plan;
  try {
    plan = parse_invocation(argv);
  } catch (const UsageError& e) {
    (e.exit_code() == 0 ? out : err) << e.what() << (e.exit_code() == 0 ? "" : "\nRun with --help for usage.") << '\n';
    return e.exit_code();
  }
  return execute(plan, out, err);
}

}  // namespace qflab::cli
