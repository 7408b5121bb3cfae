#include "chaoslab/cli_runner.hpp"

#include <cctype>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "chaoslab/systems.hpp"
#include "chaoslab/text.hpp"

namespace chaoslab {

namespace {

[[noreturn]] void config_error(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::config_parse, field + ": " + what);
}

const Json& require(const Json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) config_error(path + "." + key, "missing");
  return *it;
}

void only_keys(const Json& obj, std::initializer_list<const char*> keys, const std::string& path) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : keys) known = known || it.key() == k;
    if (!known) config_error(path + "." + it.key(), "unknown field");
  }
}

std::string as_string(const Json& v, const std::string& path) {
  if (!v.is_string()) config_error(path, "expected a string");
  return v.get<std::string>();
}

std::int64_t as_int(const Json& v, const std::string& path, std::int64_t min) {
  if (!v.is_number_integer()) config_error(path, "expected an integer");
  auto x = v.get<std::int64_t>();
  if (x < min) config_error(path, "must be >= " + std::to_string(min));
  return x;
}

Rat as_rat(const Json& v, const std::string& path) {
  if (v.is_number_integer()) return Rat(v.get<long>());
  if (!v.is_string()) config_error(path, "expected a rational written \"num/den\"");
  try {
    return parse_rat(v.get<std::string>());
  } catch (const Error& e) {
    config_error(path, e.what());
  }
}

Rat positive_rat(const Json& v, const std::string& path) {
  Rat r = as_rat(v, path);
  if (sgn(r) <= 0) config_error(path, "must be positive");
  return r;
}

std::string param_text(const Json& v, const std::string& path) {
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  return to_string(as_rat(v, path));
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

const std::map<std::string, std::vector<std::size_t>>& param_counts() {
  static const std::map<std::string, std::vector<std::size_t>> m{
      {"shift", {1}},  {"anosov", {2, 4}}, {"linked_twist", {2}}, {"disk", {2}},
      {"affine", {2}}, {"translation", {1}}};
  return m;
}

struct RawSystem {
  std::string kind;
  std::vector<std::string> params;
  std::vector<std::string> children;
  bool countable = false;
  std::string path;
};

std::string resolve_spec(const std::string& name, const std::map<std::string, RawSystem>& raw,
                         std::set<std::string>& visiting) {
  const RawSystem& r = raw.at(name);
  if (!visiting.insert(name).second) config_error(r.path, "system refers to itself");
  std::string spec;
  if (param_counts().count(r.kind)) {
    spec = r.kind + "(" + join(r.params, ",") + ")";
  } else {
    std::vector<std::string> kids;
    for (std::size_t i = 0; i < r.children.size(); ++i) {
      const std::string field = r.path + (r.kind == "identity" ? ".child" : ".children[" + std::to_string(i) + "]");
      auto it = raw.find(r.children[i]);
      if (it == raw.end()) config_error(field, "unknown system '" + r.children[i] + "'");
      if (r.kind == "product" && it->second.kind == "product")
        config_error(field, "nested products are not supported");
      kids.push_back(resolve_spec(r.children[i], raw, visiting));
    }
    const std::string head = r.kind == "identity" ? "identity" : (r.countable ? "cycle" : "product");
    spec = head + "(" + join(kids, ",") + ")";
  }
  visiting.erase(name);
  return spec;
}

SearchBudget parse_budget(const Json& v, const std::string& path) {
  SearchBudget b;
  if (!v.is_object()) config_error(path, "expected an object");
  only_keys(v, {"word_len_max", "samples", "max_states", "orbit_budget"}, path);
  if (v.contains("word_len_max")) b.word_len_max = as_int(v["word_len_max"], path + ".word_len_max", 0);
  if (v.contains("samples")) b.samples = as_int(v["samples"], path + ".samples", 0);
  if (v.contains("max_states")) b.max_states = as_int(v["max_states"], path + ".max_states", 1);
  if (v.contains("orbit_budget")) b.orbit_budget = as_int(v["orbit_budget"], path + ".orbit_budget", 0);
  try {
    check_budget(b);
  } catch (const Error& e) {
    config_error(path, e.what());
  }
  return b;
}

std::pair<std::string, Rat> parse_ball(const Json& v, const std::string& path) {
  if (!v.is_object()) config_error(path, "expected {center, radius}");
  only_keys(v, {"center", "radius"}, path);
  return {as_string(require(v, "center", path), path + ".center"),
          positive_rat(require(v, "radius", path), path + ".radius")};
}

const std::set<std::string>& check_kinds() {
  static const std::set<std::string> k{"chaos_check",  "dense_orbit",  "closed_orbit_density",
                                       "sensitivity",  "transitivity", "finite_orbit",
                                       "equicontinuity"};
  return k;
}

std::string default_expect(const std::string& kind) {
  if (kind == "chaos_check") return "PASS";
  if (kind == "closed_orbit_density" || kind == "sensitivity") return "CERTIFIED_BOUND";
  return "FOUND";
}

std::string file_stem(const std::string& id) {
  std::string out;
  for (char c : id) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
  return out;
}

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Output of one check before it is placed into the report.
struct CheckOutcome {
  Json entry;
  bool met = false;
  std::string orbit_csv;
  std::string plot_csv;
  double seconds = 0;
};

std::string claims_plot_csv(const System& sys, const std::vector<Claim>& claims, const Rat& tol) {
  std::string out = "index,kind,bound,dist_lo,dist_hi,coords\n";
  for (std::size_t i = 0; i < claims.size(); ++i) {
    const Claim& c = claims[i];
    out += std::to_string(i) + ',' + to_string(c.kind) + ',' + fmt_double(c.bound.get_d()) + ',';
    if (c.kind == Claim::Kind::less || c.kind == Claim::Kind::at_least) {
      ExactDist d = sys.dist(sys.act(c.word_a, c.a), sys.act(c.word_b, c.b), tol);
      out += fmt_double(d.lo().get_d()) + ',' + fmt_double(d.hi().get_d()) + ',';
    } else {
      out += ",,";
    }
    std::string coords;
    for (double v : sys.render(sys.act(c.word_a, c.a))) coords += (coords.empty() ? "" : " ") + fmt_double(v);
    out += coords + '\n';
  }
  return out;
}

Json budget_json(const SearchBudget& b) {
  return Json{{"word_len_max", b.word_len_max},
              {"samples", b.samples},
              {"max_states", b.max_states},
              {"orbit_budget", b.orbit_budget}};
}

Json chaos_summary(const ChaosReport& r) {
  Json j{{"system", r.system},
         {"pass", r.pass},
         {"dense", to_string(r.dense.status)},
         {"closed", to_string(r.closed.status)},
         {"sensitivity", r.sensitivity_skipped ? "SKIPPED" : to_string(r.sensitivity.status)}};
  return j;
}

CheckOutcome run_check(const CheckConfig& c, const System& sys, std::uint64_t seed, unsigned jobs,
                       const Rat& tol) {
  CheckOutcome out;
  Json& e = out.entry;
  e["id"] = c.id;
  e["check"] = c.kind;
  e["system"] = c.system;
  e["spec"] = sys.name();
  std::string status;
  try {
    if (c.kind == "chaos_check") {
      ChaosReport r = chaos_check(sys, *c.eps, c.probes, c.budget, seed, jobs);
      status = r.pass ? "PASS" : "FAIL";
      e["property"] = "chaos";
      e["status"] = status;
      e["expect"] = c.expect;
      e["seed"] = seed;
      e["eps"] = to_string(*c.eps);
      e["budgets"] = budget_json(c.budget);
      Json parts;
      parts["dense"] = to_json(r.dense, c.budget);
      parts["closed"] = to_json(r.closed, c.budget);
      parts["sensitivity"] = r.sensitivity_skipped ? Json(nullptr) : to_json(r.sensitivity, c.budget);
      e["parts"] = std::move(parts);
      if (r.factors_consistent) {
        Json fs = Json::array();
        for (const auto& f : r.factors) fs.push_back(chaos_summary(f));
        e["factors"] = std::move(fs);
        e["factors_consistent"] = *r.factors_consistent;
      }
      std::vector<Claim> all = r.dense.certificate;
      all.insert(all.end(), r.closed.certificate.begin(), r.closed.certificate.end());
      all.insert(all.end(), r.sensitivity.certificate.begin(), r.sensitivity.certificate.end());
      out.plot_csv = claims_plot_csv(sys, all, tol);
    } else {
      WitnessReport r;
      if (c.kind == "dense_orbit") {
        r = dense_orbit_check(sys, *c.eps, c.probes, c.budget, seed, jobs);
      } else if (c.kind == "closed_orbit_density") {
        r = closed_orbit_density(sys, *c.eps, c.probes, c.budget, seed, jobs);
      } else if (c.kind == "sensitivity") {
        r = sensitivity_lower_bound(sys, *c.delta, c.eps_list, c.probes, c.budget, seed, jobs);
      } else if (c.kind == "transitivity") {
        Ball u{sys.parse_point(c.ball_u->first), c.ball_u->second};
        Ball v{sys.parse_point(c.ball_v->first), c.ball_v->second};
        r = transitivity_witness(sys, u, v, c.budget, seed);
      } else if (c.kind == "finite_orbit") {
        Point x = sys.parse_point(*c.point);
        r = is_finite_orbit(sys, x, c.budget.orbit_budget);
        r.seed = seed;
        if (r.status == Status::found) {
          out.orbit_csv = orbit_csv(sys, x, static_cast<std::int64_t>(r.points.size()));
          std::string rows = "index,coords\n";
          for (std::size_t i = 0; i < r.points.size(); ++i) {
            std::string coords;
            for (double v : sys.render(r.points[i])) coords += (coords.empty() ? "" : " ") + fmt_double(v);
            rows += std::to_string(i) + ',' + coords + '\n';
          }
          out.plot_csv = rows;
        }
      } else if (c.kind == "equicontinuity") {
        auto cands = equicontinuity_candidates(sys, c.n, c.budget.word_len_max, c.probes, seed, jobs);
        r.property = "equicontinuity";
        r.status = cands.empty() ? Status::exhausted : Status::found;
        r.probes = c.probes;
        r.successes = static_cast<std::int64_t>(cands.size());
        r.points = std::move(cands);
        r.seed = seed;
        r.note = "n = " + std::to_string(c.n);
      }
      status = to_string(r.status);
      Json body = to_json(r, c.budget);
      for (auto it = body.begin(); it != body.end(); ++it) e[it.key()] = it.value();
      e["expect"] = c.expect;
      if (c.kind == "equicontinuity") {
        Json pts = Json::array();
        for (const auto& p : r.points) pts.push_back(to_string(p));
        e["candidates"] = std::move(pts);
      }
      if (out.plot_csv.empty()) out.plot_csv = claims_plot_csv(sys, r.certificate, tol);
    }
  } catch (const Error& err) {
    status = "ERROR";
    e["status"] = status;
    e["expect"] = c.expect;
    e["seed"] = seed;
    e["error"] = err.what();
  }
  out.met = status == c.expect;
  e["met"] = out.met;
  return out;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  if (!f) throw Error(ErrorCode::invalid_argument, "cannot write " + p.string());
  f << text;
}

std::int64_t recheck_certificate(const System& sys, const Json& cert, const std::string& where,
                                 std::ostream& err) {
  std::int64_t failures = 0;
  for (std::size_t i = 0; i < cert.size(); ++i) {
    const Json& j = cert[i];
    bool ok = false;
    try {
      Claim c{parse_claim_kind(j.at("kind").get<std::string>()),
              parse_group_word(j.at("word_a").get<std::string>(), sys.rank()),
              sys.parse_point(j.at("a").get<std::string>()),
              parse_group_word(j.at("word_b").get<std::string>(), sys.rank()),
              sys.parse_point(j.at("b").get<std::string>()),
              parse_rat(j.value("bound", std::string("0"))),
              j.value("size", std::int64_t{0}),
              ExactDist{}};
      ok = recheck(sys, c);
    } catch (const std::exception& e) {
      err << where << ".certificate[" << i << "]: " << e.what() << '\n';
    }
    if (!ok) {
      err << where << ".certificate[" << i << "] does not re-check\n";
      ++failures;
    }
  }
  return failures;
}

}  // namespace

ExperimentConfig parse_config(const Json& doc) {
  if (!doc.is_object()) config_error("$", "config must be a JSON object");
  only_keys(doc, {"seed", "output", "systems", "checks"}, "$");
  ExperimentConfig cfg;
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned() && !doc["seed"].is_number_integer())
      config_error("seed", "expected a non-negative integer");
    cfg.seed = static_cast<std::uint64_t>(as_int(doc["seed"], "seed", 0));
  }
  if (doc.contains("output")) cfg.output = as_string(doc["output"], "output");

  std::map<std::string, RawSystem> raw;
  std::vector<std::string> order;
  const Json& systems = doc.contains("systems") ? doc["systems"] : Json::array();
  if (!systems.is_array()) config_error("systems", "expected an array");
  for (std::size_t i = 0; i < systems.size(); ++i) {
    const std::string path = "systems[" + std::to_string(i) + "]";
    const Json& s = systems[i];
    if (!s.is_object()) config_error(path, "expected an object");
    only_keys(s, {"name", "kind", "params", "child", "children", "weights", "countable"}, path);
    std::string name = as_string(require(s, "name", path), path + ".name");
    if (raw.count(name)) config_error(path + ".name", "duplicate system name '" + name + "'");
    RawSystem r;
    r.path = path;
    r.kind = as_string(require(s, "kind", path), path + ".kind");
    if (auto pc = param_counts().find(r.kind); pc != param_counts().end()) {
      const Json& params = require(s, "params", path);
      if (!params.is_array()) config_error(path + ".params", "expected an array");
      bool ok = false;
      for (std::size_t n : pc->second) ok = ok || params.size() == n;
      if (!ok) config_error(path + ".params", "wrong number of parameters for " + r.kind);
      for (std::size_t k = 0; k < params.size(); ++k)
        r.params.push_back(param_text(params[k], path + ".params[" + std::to_string(k) + "]"));
    } else if (r.kind == "identity") {
      r.children.push_back(as_string(require(s, "child", path), path + ".child"));
    } else if (r.kind == "product") {
      const Json& kids = require(s, "children", path);
      if (!kids.is_array() || kids.empty()) config_error(path + ".children", "expected a non-empty array");
      for (std::size_t k = 0; k < kids.size(); ++k)
        r.children.push_back(as_string(kids[k], path + ".children[" + std::to_string(k) + "]"));
      if (s.contains("countable")) {
        if (!s["countable"].is_boolean()) config_error(path + ".countable", "expected a boolean");
        r.countable = s["countable"].get<bool>();
      }
      if (s.contains("weights")) {
        const Json& w = s["weights"];
        if (!w.is_array() || w.size() != kids.size())
          config_error(path + ".weights", "expected one weight per child");
        for (std::size_t k = 0; k < w.size(); ++k)
          if (as_rat(w[k], path + ".weights[" + std::to_string(k) + "]") !=
              pow2(-static_cast<std::int64_t>(k + 1)))
            config_error(path + ".weights[" + std::to_string(k) + "]",
                         "only the weights 1/2^i are supported");
      }
    } else {
      config_error(path + ".kind", "unknown system kind '" + r.kind + "'");
    }
    raw.emplace(name, std::move(r));
    order.push_back(name);
  }
  for (const auto& name : order) {
    std::set<std::string> visiting;
    cfg.systems.push_back({name, raw.at(name).kind, resolve_spec(name, raw, visiting)});
  }

  const Json& checks = doc.contains("checks") ? doc["checks"] : Json::array();
  if (!checks.is_array()) config_error("checks", "expected an array");
  std::set<std::string> ids;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const std::string path = "checks[" + std::to_string(i) + "]";
    const Json& j = checks[i];
    if (!j.is_object()) config_error(path, "expected an object");
    only_keys(j, {"id", "check", "system", "eps", "delta", "probes", "n", "budget", "point",
                  "ball_u", "ball_v", "expect"},
              path);
    CheckConfig c;
    c.kind = as_string(require(j, "check", path), path + ".check");
    if (!check_kinds().count(c.kind)) config_error(path + ".check", "unknown check '" + c.kind + "'");
    c.id = j.contains("id") ? as_string(j["id"], path + ".id") : std::to_string(i) + "-" + c.kind;
    if (!ids.insert(c.id).second) config_error(path + ".id", "duplicate check id '" + c.id + "'");
    c.system = as_string(require(j, "system", path), path + ".system");
    if (!raw.count(c.system)) config_error(path + ".system", "unknown system '" + c.system + "'");
    if (j.contains("probes")) c.probes = as_int(j["probes"], path + ".probes", 1);
    if (j.contains("budget")) c.budget = parse_budget(j["budget"], path + ".budget");
    c.expect = j.contains("expect") ? as_string(j["expect"], path + ".expect") : default_expect(c.kind);
    if (c.kind == "chaos_check") {
      if (c.expect != "PASS" && c.expect != "FAIL") config_error(path + ".expect", "must be PASS or FAIL");
    } else {
      try {
        parse_status(c.expect);
      } catch (const Error&) {
        config_error(path + ".expect", "must be FOUND, CERTIFIED_BOUND or EXHAUSTED");
      }
    }
    if (c.kind == "chaos_check" || c.kind == "dense_orbit" || c.kind == "closed_orbit_density")
      c.eps = positive_rat(require(j, "eps", path), path + ".eps");
    if (c.kind == "sensitivity") {
      c.delta = positive_rat(require(j, "delta", path), path + ".delta");
      const Json& eps = require(j, "eps", path);
      if (eps.is_array()) {
        if (eps.empty()) config_error(path + ".eps", "expected at least one radius");
        for (std::size_t k = 0; k < eps.size(); ++k)
          c.eps_list.push_back(positive_rat(eps[k], path + ".eps[" + std::to_string(k) + "]"));
      } else {
        c.eps_list.push_back(positive_rat(eps, path + ".eps"));
      }
    }
    if (c.kind == "transitivity") {
      c.ball_u = parse_ball(require(j, "ball_u", path), path + ".ball_u");
      c.ball_v = parse_ball(require(j, "ball_v", path), path + ".ball_v");
    }
    if (c.kind == "finite_orbit") c.point = as_string(require(j, "point", path), path + ".point");
    if (c.kind == "equicontinuity") c.n = as_int(require(j, "n", path), path + ".n", 1);
    cfg.checks.push_back(std::move(c));
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::config_parse, path.string() + ": cannot read file");
  Json doc;
  try {
    doc = Json::parse(f);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::config_parse, path.string() + ": " + e.what());
  }
  try {
    return parse_config(doc);
  } catch (const Error& e) {
    std::string msg = e.what();
    const std::string prefix = std::string(to_string(ErrorCode::config_parse)) + ": ";
    if (msg.rfind(prefix, 0) == 0) msg.erase(0, prefix.size());
    throw Error(ErrorCode::config_parse, path.string() + ": " + msg);
  }
}

std::vector<SystemHandle> build_systems(const ExperimentConfig& cfg) {
  std::vector<SystemHandle> out;
  std::string problems;
  for (std::size_t i = 0; i < cfg.systems.size(); ++i) {
    try {
      out.push_back(make_system(cfg.systems[i].spec));
    } catch (const Error& e) {
      out.push_back(nullptr);
      problems += "\n  systems[" + std::to_string(i) + "] '" + cfg.systems[i].name + "' (" +
                  cfg.systems[i].spec + "): " + e.what();
    }
  }
  if (!problems.empty()) throw Error(ErrorCode::constructor_precondition, "invalid systems:" + problems);
  return out;
}

Json to_json(const Claim& c) {
  Json j{{"kind", to_string(c.kind)},
         {"word_a", to_string(c.word_a)},
         {"a", to_string(c.a)},
         {"word_b", to_string(c.word_b)},
         {"b", to_string(c.b)}};
  if (c.kind == Claim::Kind::orbit) {
    j["size"] = c.size;
  } else if (c.kind != Claim::Kind::equal) {
    j["bound"] = to_string(c.bound);
    j["observed"] = to_string(c.observed);
  }
  return j;
}

Json to_json(const WitnessReport& r, const SearchBudget& budget) {
  Json j;
  j["property"] = r.property;
  j["status"] = to_string(r.status);
  j["seed"] = r.seed;
  j["witness"] = r.witness ? Json(to_string(*r.witness)) : Json(nullptr);
  j["probes"] = r.probes;
  j["successes"] = r.successes;
  j["budgets"] = budget_json(budget);
  j["timings"] = Json(r.budget_used);
  if (!r.note.empty()) j["note"] = r.note;
  Json cert = Json::array();
  for (const auto& c : r.certificate) cert.push_back(to_json(c));
  j["certificate"] = std::move(cert);
  return j;
}

RunResult run_experiment(const ExperimentConfig& cfg, const RunOptions& opts) {
  const auto systems = build_systems(cfg);
  std::map<std::string, SystemHandle> by_name;
  for (std::size_t i = 0; i < systems.size(); ++i) by_name[cfg.systems[i].name] = systems[i];
  const std::uint64_t seed = opts.seed.value_or(cfg.seed);
  const unsigned jobs = std::max(1u, opts.jobs);
  const std::size_t n = cfg.checks.size();
  const unsigned outer = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(n, 1)));
  const unsigned inner = std::max(1u, jobs / outer);

  std::vector<CheckOutcome> outcomes(n);
  parallel_for(n, outer, [&](std::size_t i) {
    const auto t0 = std::chrono::steady_clock::now();
    const CheckConfig& c = cfg.checks[i];
    outcomes[i] = run_check(c, *by_name.at(c.system), derive_seed(seed, i), inner, opts.tol);
    outcomes[i].seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  });

  RunResult res;
  res.all_met = true;
  Json sys_json = Json::array();
  for (const auto& s : cfg.systems) sys_json.push_back(Json{{"name", s.name}, {"spec", s.spec}});
  Json check_json = Json::array();
  Json timing_json = Json::array();
  double total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    res.all_met = res.all_met && outcomes[i].met;
    const std::string stem = file_stem(cfg.checks[i].id);
    if (!outcomes[i].orbit_csv.empty()) res.files.emplace_back("orbits/" + stem + ".csv", outcomes[i].orbit_csv);
    if (!outcomes[i].plot_csv.empty()) res.files.emplace_back("plotdata/" + stem + ".csv", outcomes[i].plot_csv);
    check_json.push_back(outcomes[i].entry);
    timing_json.push_back(Json{{"id", cfg.checks[i].id}, {"seconds", outcomes[i].seconds}});
    total += outcomes[i].seconds;
  }
  res.report["seed"] = seed;
  res.report["systems"] = std::move(sys_json);
  res.report["checks"] = std::move(check_json);
  res.report["pass"] = res.all_met;
  res.timings["checks"] = std::move(timing_json);
  res.timings["total_seconds"] = total;
  res.timings["jobs"] = jobs;
  return res;
}

int run_command(const std::filesystem::path& config_path, const RunOptions& opts, std::ostream& out,
                std::ostream& err) {
  ExperimentConfig cfg;
  RunResult res;
  try {
    cfg = load_config(config_path);
    res = run_experiment(cfg, opts);
  } catch (const Error& e) {
    err << e.what() << '\n';
    return 2;
  }
  std::filesystem::path dir = opts.output.value_or(std::filesystem::path(cfg.output));
  try {
    for (const auto& [rel, text] : res.files) write_file(dir / rel, text);
  } catch (const Error& e) {
    err << e.what() << '\n';
    return 2;
  }
  if (opts.recheck) res.recheck_failures = recheck_report(res.report, err);
  write_file(dir / "report.json", res.report.dump(2) + "\n");
  write_file(dir / "timings.json", res.timings.dump(2) + "\n");
  out << summarize_report(res.report);
  if (opts.recheck) out << "recheck: " << res.recheck_failures << " failing claims\n";
  return res.all_met && res.recheck_failures == 0 ? 0 : 1;
}

std::int64_t recheck_report(const Json& report, std::ostream& err) {
  std::int64_t failures = 0;
  const Json& checks = report.at("checks");
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const Json& e = checks[i];
    const std::string where = "checks[" + std::to_string(i) + "]";
    if (!e.contains("spec")) continue;
    SystemHandle sys;
    try {
      sys = make_system(e["spec"].get<std::string>());
    } catch (const Error& ex) {
      err << where << ": " << ex.what() << '\n';
      ++failures;
      continue;
    }
    if (e.contains("certificate")) failures += recheck_certificate(*sys, e["certificate"], where, err);
    if (e.contains("parts"))
      for (auto it = e["parts"].begin(); it != e["parts"].end(); ++it)
        if (it.value().is_object())
          failures += recheck_certificate(*sys, it.value()["certificate"], where + ".parts." + it.key(), err);
  }
  return failures;
}

std::string summarize_report(const Json& report) {
  std::ostringstream out;
  const Json& checks = report.at("checks");
  out << "seed " << report.value("seed", std::uint64_t{0}) << ", " << checks.size() << " checks\n";
  for (const auto& e : checks) {
    out << (e.value("met", false) ? "  ok    " : "  MISS  ") << e.value("id", std::string()) << "  "
        << e.value("check", std::string()) << " on " << e.value("spec", std::string()) << ": "
        << e.value("status", std::string()) << " (expected " << e.value("expect", std::string()) << ")";
    if (e.value("probes", 0) > 0) out << ", " << e["successes"] << "/" << e["probes"] << " probes";
    if (e.contains("certificate")) out << ", " << e["certificate"].size() << " claims";
    if (e.contains("factors_consistent")) out << ", factors consistent: " << e["factors_consistent"];
    if (e.contains("error")) out << "\n        " << e["error"].get<std::string>();
    out << '\n';
  }
  out << (report.value("pass", false) ? "PASS" : "FAIL") << '\n';
  return out.str();
}

std::string orbit_csv(const System& sys, const Point& x, std::int64_t steps) {
  if (steps < 0) throw Error(ErrorCode::invalid_argument, "steps must be >= 0");
  const GroupWord g = GroupWord::single(sys.rank(), 1, FreeWord::power(0, 1));
  const bool torus = x.holds<TorusPoint>();
  std::string out = torus ? "step,x_num,x_den,y_num,y_den\n" : "step,point\n";
  Point p = x;
  for (std::int64_t s = 0; s <= steps; ++s) {
    if (torus) {
      const auto& t = p.as<TorusPoint>();
      out += std::to_string(s) + ',' + t.x().get_num().get_str() + ',' + t.x().get_den().get_str() +
             ',' + t.y().get_num().get_str() + ',' + t.y().get_den().get_str() + '\n';
    } else {
      out += std::to_string(s) + ",\"" + to_string(p) + "\"\n";
    }
    if (s < steps) p = sys.act(g, p);
  }
  return out;
}

}  // namespace chaoslab
