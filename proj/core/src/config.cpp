#include "saddle/config.hpp"

#include "saddle/error.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>

namespace saddle {

namespace pt = boost::property_tree;

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

/// Splits on commas that are not nested inside parentheses.
std::vector<std::string> split_top_level(std::string_view text) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || (text[i] == ',' && depth == 0)) {
      std::string item = trim(text.substr(start, i - start));
      if (!item.empty()) out.push_back(std::move(item));
      start = i + 1;
    } else if (text[i] == '(') {
      ++depth;
    } else if (text[i] == ')') {
      --depth;
    }
  }
  return out;
}

double to_double(const std::string& where, const std::string& text) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
    throw InputError(fmt::format("{}: expected a number, got '{}'", where, text));
  return value;
}

int to_int(const std::string& where, const std::string& text) {
  const std::string t = trim(text);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
    throw InputError(fmt::format("{}: expected an integer, got '{}'", where, text));
  return value;
}

bool to_bool(const std::string& where, const std::string& text) {
  const std::string t = lower(trim(text));
  if (t == "on" || t == "true" || t == "yes" || t == "1") return true;
  if (t == "off" || t == "false" || t == "no" || t == "0") return false;
  throw InputError(fmt::format("{}: expected on/off, got '{}'", where, text));
}

/// One INI section with typed lookups; rejects keys it was not asked about.
class Section {
 public:
  Section(std::string name, const pt::ptree* tree) : name_(std::move(name)), tree_(tree) {}

  std::optional<std::string> raw(const std::string& key) {
    seen_.insert(key);
    if (!tree_) return std::nullopt;
    auto it = tree_->find(key);
    if (it == tree_->not_found()) return std::nullopt;
    return trim(it->second.data());
  }
  std::string where(const std::string& key) const { return fmt::format("[{}] {}", name_, key); }

  void get(const std::string& key, double& out) {
    if (auto v = raw(key)) out = to_double(where(key), *v);
  }
  void get(const std::string& key, int& out) {
    if (auto v = raw(key)) out = to_int(where(key), *v);
  }
  void get(const std::string& key, bool& out) {
    if (auto v = raw(key)) out = to_bool(where(key), *v);
  }
  void get(const std::string& key, std::string& out) {
    if (auto v = raw(key)) out = *v;
  }

  void reject_unknown() const {
    if (!tree_) return;
    for (const auto& [key, value] : *tree_)
      if (!seen_.contains(key)) throw InputError(fmt::format("[{}]: unknown key '{}'", name_, key));
  }

 private:
  std::string name_;
  const pt::ptree* tree_;
  std::set<std::string> seen_;
};

class Ini {
 public:
  explicit Ini(const std::filesystem::path& path) {
    try {
      pt::read_ini(path.string(), tree_);
    } catch (const pt::ini_parser_error& e) {
      throw InputError(fmt::format("cannot read config: {}", e.what()));
    }
  }

  Section section(const std::string& name) {
    used_.insert(name);
    auto it = tree_.find(name);
    return Section(name, it == tree_.not_found() ? nullptr : &it->second);
  }

  std::vector<std::string> sections_with_prefix(const std::string& prefix) const {
    std::vector<std::string> out;
    for (const auto& [name, value] : tree_)
      if (name.rfind(prefix, 0) == 0) out.push_back(name);
    return out;
  }

  void reject_unknown() const {
    for (const auto& [name, value] : tree_) {
      if (value.empty() && !value.data().empty())
        throw InputError(fmt::format("key '{}' appears outside any section", name));
      if (!used_.contains(name)) throw InputError(fmt::format("unknown section [{}]", name));
    }
  }

 private:
  pt::ptree tree_;
  std::set<std::string> used_;
};

ProblemConfig read_problem(Ini& ini) {
  ProblemConfig p;
  Section s = ini.section("problem");
  std::string kind = "dirichlet";
  s.get("kind", kind);
  kind = lower(kind);
  if (kind == "dirichlet")
    p.kind = ProblemKind::Dirichlet;
  else if (kind == "neumann")
    p.kind = ProblemKind::Neumann;
  else
    throw InputError(fmt::format("[problem] kind: expected dirichlet or neumann, got '{}'", kind));
  s.get("dim", p.dim);
  if (p.dim != 1 && p.dim != 2) throw InputError(fmt::format("[problem] dim: expected 1 or 2, got {}", p.dim));
  if (p.dim == 1) p.x_lo = 0.0;
  s.get("x_lo", p.x_lo);
  s.get("x_hi", p.x_hi);
  s.get("y_lo", p.y_lo);
  s.get("y_hi", p.y_hi);
  s.get("n", p.n);
  s.get("ell", p.power.ell);
  s.get("gamma", p.power.gamma);
  s.get("a", p.a);
  s.reject_unknown();
  if (p.kind == ProblemKind::Neumann && p.dim != 2) throw InputError("[problem] the Neumann problem needs dim = 2");
  if (!(p.power.gamma > 1.0)) throw InputError(fmt::format("[problem] gamma must exceed 1, got {}", p.power.gamma));
  if (!(p.power.ell >= 0.0)) throw InputError(fmt::format("[problem] ell must be nonnegative, got {}", p.power.ell));
  if (!(p.a > 0.0)) throw InputError(fmt::format("[problem] a must be positive, got {}", p.a));
  p.grid();  // validates bounds and n
  return p;
}

void read_rule(Section& s, SolverConfig& cfg, bool allow_name) {
  if (allow_name) {
    std::string name = to_string(cfg.rule);
    s.get("name", name);
    name = lower(name);
    if (name == "exact")
      cfg.rule = StepRule::Exact;
    else if (name == "armijo")
      cfg.rule = StepRule::Armijo;
    else if (name == "zh")
      cfg.rule = StepRule::ZH;
    else if (name == "gll")
      cfg.rule = StepRule::GLL;
    else
      throw InputError(fmt::format("{}: expected exact, armijo, zh or gll, got '{}'", s.where("name"), name));
  }
  s.get("sigma", cfg.params.sigma);
  s.get("rho", cfg.params.rho);
  s.get("M", cfg.params.M);
  s.get("eta", cfg.params.eta);
  s.get("lambda_min", cfg.params.lambda_min);
  s.get("lambda_max", cfg.params.lambda_max);
  s.get("lambda0", cfg.params.lambda0);
  s.get("m_max", cfg.params.m_max);
}

TrialSource parse_trial(const std::string& where, const std::string& text) {
  static const std::map<std::string, TrialSource> names = {
      {"fixed", TrialSource::Fixed}, {"bb1", TrialSource::BB1},   {"bb2", TrialSource::BB2},
      {"pbb1", TrialSource::PBB1},   {"pbb2", TrialSource::PBB2}, {"abb", TrialSource::ABB},
      {"apbb", TrialSource::APBB}};
  auto it = names.find(lower(trim(text)));
  if (it == names.end())
    throw InputError(fmt::format("{}: expected fixed, bb1, bb2, pbb1, pbb2, abb or apbb, got '{}'", where, text));
  return it->second;
}

void read_stopping(Ini& ini, SolverConfig& cfg) {
  Section s = ini.section("stopping");
  s.get("grad_tol", cfg.grad_tol);
  s.get("residual_tol", cfg.residual_tol);
  s.get("max_iter", cfg.max_iterations);
  s.get("delta_floor", cfg.delta_floor);
  s.get("inner_max_iter", cfg.peak.max_iterations);
  s.reject_unknown();
}

InitialConfig read_initial(Section& s) {
  InitialConfig init;
  s.get("positive", init.positive);
  s.get("negative", init.negative);
  s.get("rho0", init.rho0);
  return init;
}

void validate(const SolverConfig& cfg, const std::string& where) {
  try {
    cfg.validate();
  } catch (const InputError& e) {
    throw InputError(fmt::format("{}: {}", where, e.what()));
  }
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& text) {
  std::filesystem::path p(text);
  return p.is_absolute() ? p : base.parent_path() / p;
}

}  // namespace

GridSpec ProblemConfig::grid() const {
  return dim == 1 ? GridSpec::interval(x_lo, x_hi, n) : GridSpec::rectangle(x_lo, x_hi, y_lo, y_hi, n, n);
}

Problem ProblemConfig::build() const {
  return kind == ProblemKind::Dirichlet ? Problem::dirichlet(grid(), power) : Problem::neumann(grid(), a, power);
}

IndicatorSpec InitialConfig::indicator(ProblemKind kind) const {
  if (kind == ProblemKind::Neumann) return BoundaryIndicator{BoundaryDensity::parse(rho0)};
  Region pos = Region::parse(positive);
  Region neg = lower(trim(negative)) == "rest" ? Region::complement(pos) : Region::parse(negative);
  return RegionIndicator{std::move(pos), std::move(neg)};
}

Method parse_method(const std::string& text, const SolverConfig& base) {
  const std::string t = trim(text);
  const auto open = t.find('(');
  const std::string name = lower(trim(t.substr(0, open)));
  Method m{t, base};
  SolverConfig& cfg = m.solver;
  cfg.trial = TrialSource::Fixed;
  if (name == "exact")
    cfg.rule = StepRule::Exact;
  else if (name == "armijo")
    cfg.rule = StepRule::Armijo;
  else if (name == "zh")
    cfg.rule = StepRule::ZH;
  else if (name == "gll")
    cfg.rule = StepRule::GLL;
  else {
    cfg.trial = parse_trial(fmt::format("method '{}'", t), name);
    cfg.rule = StepRule::ZH;
  }
  if (open != std::string::npos) {
    if (t.back() != ')') throw InputError(fmt::format("method '{}': missing ')'", t));
    for (const std::string& option : split_top_level(t.substr(open + 1, t.size() - open - 2))) {
      const auto eq = option.find('=');
      if (eq == std::string::npos) throw InputError(fmt::format("method '{}': expected key=value, got '{}'", t, option));
      const std::string key = trim(option.substr(0, eq)), value = trim(option.substr(eq + 1));
      const std::string where = fmt::format("method '{}' option {}", t, key);
      if (key == "rule") {
        const std::string r = lower(value);
        if (r == "armijo") cfg.rule = StepRule::Armijo;
        else if (r == "zh") cfg.rule = StepRule::ZH;
        else if (r == "gll") cfg.rule = StepRule::GLL;
        else if (r == "exact") cfg.rule = StepRule::Exact;
        else throw InputError(fmt::format("{}: unknown rule '{}'", where, value));
      } else if (key == "sigma") cfg.params.sigma = to_double(where, value);
      else if (key == "rho") cfg.params.rho = to_double(where, value);
      else if (key == "M") cfg.params.M = to_int(where, value);
      else if (key == "eta") cfg.params.eta = to_double(where, value);
      else if (key == "lambda_min") cfg.params.lambda_min = to_double(where, value);
      else if (key == "lambda_max") cfg.params.lambda_max = to_double(where, value);
      else if (key == "lambda0") cfg.params.lambda0 = to_double(where, value);
      else throw InputError(fmt::format("method '{}': unknown option '{}'", t, key));
    }
  }
  validate(cfg, fmt::format("method '{}'", t));
  return m;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  Ini ini(path);
  RunConfig cfg;
  cfg.source = path;
  cfg.problem = read_problem(ini);

  Section support = ini.section("support");
  std::string files;
  support.get("files", files);
  support.reject_unknown();
  for (const std::string& f : split_top_level(files)) cfg.support.push_back(resolve(path, f));

  Section initial = ini.section("initial");
  cfg.initial = read_initial(initial);
  initial.reject_unknown();

  Section rule = ini.section("rule");
  read_rule(rule, cfg.solver, true);
  rule.reject_unknown();

  Section trial = ini.section("trial");
  std::string source = "fixed";
  trial.get("source", source);
  trial.reject_unknown();
  cfg.solver.trial = parse_trial(trial.where("source"), source);

  read_stopping(ini, cfg.solver);

  Section output = ini.section("output");
  std::string dir = "out";
  output.get("directory", dir);
  output.get("timings", cfg.solver.record_time);
  output.reject_unknown();
  cfg.output = resolve(path, dir);

  ini.reject_unknown();
  validate(cfg.solver, "[rule]");
  // Surface region and density syntax errors before any solve starts.
  cfg.initial.indicator(cfg.problem.kind);
  return cfg;
}

CompareConfig load_compare_config(const std::filesystem::path& path) {
  Ini ini(path);
  CompareConfig cfg;
  cfg.source = path;
  cfg.problem = read_problem(ini);

  Section rule = ini.section("rule");
  read_rule(rule, cfg.base, false);
  rule.reject_unknown();
  read_stopping(ini, cfg.base);

  Section compare = ini.section("compare");
  std::string methods = "armijo", output = "compare.csv";
  compare.get("methods", methods);
  compare.get("reference_method", cfg.reference_method);
  compare.get("jobs", cfg.jobs);
  compare.get("output", output);
  compare.get("timings", cfg.base.record_time);
  compare.reject_unknown();
  cfg.output = resolve(path, output);
  if (cfg.jobs < 1) throw InputError(fmt::format("[compare] jobs must be at least 1, got {}", cfg.jobs));
  for (const std::string& m : split_top_level(methods)) cfg.methods.push_back(parse_method(m, cfg.base));
  if (cfg.methods.empty()) throw InputError("[compare] methods: no methods listed");
  parse_method(cfg.reference_method, cfg.base);

  std::set<std::string> names;
  for (const std::string& section_name : ini.sections_with_prefix("target:")) {
    Section s = ini.section(section_name);
    CompareTarget target;
    target.name = trim(section_name.substr(7));
    if (target.name.empty()) throw InputError(fmt::format("[{}]: empty target name", section_name));
    std::string support;
    s.get("support", support);
    for (const std::string& ref : split_top_level(support)) {
      SupportRef r{ref};
      if (r.is_target()) {
        if (!names.contains(r.target()))
          throw InputError(fmt::format("[{}] support: '{}' must name an earlier target", section_name, ref));
      } else {
        r.text = resolve(path, ref).string();
      }
      target.support.push_back(std::move(r));
    }
    target.initial = read_initial(s);
    s.reject_unknown();
    target.initial.indicator(cfg.problem.kind);
    names.insert(target.name);
    cfg.targets.push_back(std::move(target));
  }
  if (cfg.targets.empty()) throw InputError("compare config lists no [target:NAME] sections");
  ini.reject_unknown();
  return cfg;
}

}  // namespace saddle
