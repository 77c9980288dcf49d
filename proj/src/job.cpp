#include <flagbord/job.hpp>
#include <flagbord/expr.hpp>
#include <flagbord/oracle.hpp>

#include <algorithm>
#include <regex>
#include <set>
#include <sstream>

namespace flagbord {

using nlohmann::json;

namespace {

std::string join_issues(const std::vector<JobIssue>& issues) {
  std::string out;
  for (const auto& i : issues) out += (out.empty() ? "" : "\n") + i.path + ": " + i.message;
  return out;
}

const std::set<std::string> kTasks{"flag", "principal", "coinv", "fgl", "oracle"};
const std::set<std::string> kChecks{"flag", "principal", "coinv", "fgl"};
const std::regex kIdentifier("[A-Za-z_][A-Za-z0-9_]*");
const std::regex kReservedName("(x|b)[0-9]+|t|u|v|w");
const std::regex kSigma("sigma([1-9][0-9]*)");
constexpr int kMaxTruncation = 12;

class Parser {
 public:
  std::vector<JobIssue> issues;

  void fail(const std::string& path, const std::string& message) { issues.push_back({path, message}); }

  void only_fields(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
    for (const auto& [key, value] : obj.items())
      if (!allowed.count(key)) fail(path + "." + key, "unknown field");
  }

  std::optional<std::string> string_field(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.contains(key)) return std::nullopt;
    const auto& v = obj.at(key);
    if (!v.is_string()) {
      fail(path + "." + key, "expected a string");
      return std::nullopt;
    }
    return v.get<std::string>();
  }

  std::optional<int> int_value(const json& v, const std::string& path) {
    if (!v.is_number_integer()) {
      fail(path, "expected an integer");
      return std::nullopt;
    }
    auto x = v.get<long long>();
    if (x < -1000000 || x > 1000000) {
      fail(path, "integer out of range");
      return std::nullopt;
    }
    return static_cast<int>(x);
  }

  std::optional<int> int_field(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.contains(key)) return std::nullopt;
    return int_value(obj.at(key), path + "." + key);
  }

  // Parses `text` on `table`; records a failure and returns nullopt on error.
  std::optional<Polynomial> expression(const std::string& text, const TablePtr& table, const std::string& path) {
    try {
      return parse_polynomial(text, table);
    } catch (const Error& e) {
      fail(path, e.what());
      return std::nullopt;
    }
  }
};

std::string degree_text(const Polynomial& p) {
  auto d = p.degree();
  return d ? std::to_string(*d) : std::string("mixed");
}

}  // namespace

JobError::JobError(std::vector<JobIssue> issues) : ValidationError(join_issues(issues)), issues_(std::move(issues)) {}

JobError::JobError(std::string path, std::string message)
    : JobError(std::vector<JobIssue>{{std::move(path), std::move(message)}}) {}

Job parse_job(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw JobError("$", std::string("malformed JSON: ") + e.what());
  }
  return parse_job(doc);
}

Job parse_job(const json& doc) {
  Parser p;
  Job job;
  if (!doc.is_object()) throw JobError("$", "a job must be a JSON object");
  p.only_fields(doc, "$",
                {"task", "check", "mode", "truncation_degree", "group", "parabolic", "base", "generating_characters",
                 "convention", "format"});

  if (auto task = p.string_field(doc, "task", "$")) {
    if (kTasks.count(*task)) job.task = *task;
    else p.fail("$.task", "unknown task '" + *task + "' (expected flag, principal, coinv, fgl or oracle)");
  } else if (!doc.contains("task")) {
    p.fail("$.task", "missing required field");
  }
  if (auto check = p.string_field(doc, "check", "$")) {
    if (!kChecks.count(*check)) p.fail("$.check", "unknown check '" + *check + "' (expected flag, principal, coinv or fgl)");
    else if (job.task != "oracle") p.fail("$.check", "only oracle jobs take a check");
    else job.check = *check;
  } else if (job.task == "oracle" && !doc.contains("check")) {
    p.fail("$.check", "oracle jobs need a check (flag, principal, coinv or fgl)");
  }
  if (auto mode = p.string_field(doc, "mode", "$")) {
    try {
      job.mode = parse_mode(*mode);
    } catch (const Error& e) {
      p.fail("$.mode", e.what());
    }
  }
  bool truncation_ok = true;
  if (auto d = p.int_field(doc, "truncation_degree", "$")) {
    if (*d < 1 || *d > kMaxTruncation) {
      p.fail("$.truncation_degree", "must lie in 1.." + std::to_string(kMaxTruncation) + ", got " + std::to_string(*d));
      truncation_ok = false;
    } else {
      job.truncation = *d;
    }
  } else if (doc.contains("truncation_degree")) {
    truncation_ok = false;
  }
  if (auto c = p.string_field(doc, "convention", "$")) {
    try {
      job.convention = parse_convention(*c);
    } catch (const Error& e) {
      p.fail("$.convention", e.what());
    }
  }
  if (auto f = p.string_field(doc, "format", "$")) {
    if (*f == "json" || *f == "text") job.format = *f;
    else p.fail("$.format", "unknown format '" + *f + "' (expected json or text)");
  }

  const std::string& task = job.effective_task();

  // group
  std::optional<RootDatum> datum;
  std::optional<InvariantSet> invariants;
  if (doc.contains("group")) {
    const auto& g = doc.at("group");
    if (task != "flag" && task != "coinv") p.fail("$.group", "only flag and coinv jobs take a group");
    if (!g.is_object()) {
      p.fail("$.group", "expected an object");
    } else {
      p.only_fields(g, "$.group", {"type", "rank"});
      auto type = p.string_field(g, "type", "$.group");
      auto rank = p.int_field(g, "rank", "$.group");
      if (!g.contains("type")) p.fail("$.group.type", "missing required field");
      if (!g.contains("rank")) p.fail("$.group.rank", "missing required field");
      std::optional<RootType> t;
      if (type) {
        try {
          t = parse_root_type(*type);
        } catch (const Error& e) {
          p.fail("$.group.type", e.what());
        }
      }
      if (t && rank) {
        try {
          datum = build_root_datum(*t, *rank);
          invariants = fundamental_invariants(*datum);
          job.group = GroupSpec{*t, *rank};
        } catch (const Error& e) {
          p.fail("$.group.rank", e.what());
        }
      }
    }
  } else if (task == "flag" || task == "coinv") {
    p.fail("$.group", "missing required field for " + task + " jobs");
  }

  if (doc.contains("parabolic")) {
    const auto& par = doc.at("parabolic");
    if (!par.is_array()) {
      p.fail("$.parabolic", "expected an array of simple-root indices");
    } else {
      std::set<int> seen;
      for (std::size_t i = 0; i < par.size(); ++i) {
        std::string path = "$.parabolic[" + std::to_string(i) + "]";
        auto idx = p.int_value(par[i], path);
        if (!idx) continue;
        if (datum && (*idx < 1 || *idx > static_cast<int>(datum->simple_count()))) {
          p.fail(path, "simple-root index " + std::to_string(*idx) + " outside 1.." +
                           std::to_string(datum->simple_count()));
          continue;
        }
        if (!seen.insert(*idx).second) {
          p.fail(path, "duplicate index " + std::to_string(*idx));
          continue;
        }
        job.parabolic.push_back(*idx);
      }
      if (!job.parabolic.empty() && !doc.contains("group")) p.fail("$.parabolic", "a parabolic needs a group");
    }
  }

  // base
  if (doc.contains("base")) {
    const auto& b = doc.at("base");
    if (!b.is_object()) {
      p.fail("$.base", "expected an object");
    } else {
      BaseSpec base;
      p.only_fields(b, "$.base", {"name", "generators", "relations", "char_classes", "characters"});
      if (auto name = p.string_field(b, "name", "$.base")) {
        if (name->empty()) p.fail("$.base.name", "must not be empty");
        else base.name = *name;
      }
      bool generators_ok = true;
      if (b.contains("generators")) {
        const auto& gens = b.at("generators");
        if (!gens.is_array()) {
          p.fail("$.base.generators", "expected an array");
          generators_ok = false;
        } else {
          std::set<std::string> names;
          for (std::size_t i = 0; i < gens.size(); ++i) {
            std::string path = "$.base.generators[" + std::to_string(i) + "]";
            const auto& g = gens[i];
            if (!g.is_object()) {
              p.fail(path, "expected an object {name, degree, weight?}");
              generators_ok = false;
              continue;
            }
            std::size_t before = p.issues.size();
            p.only_fields(g, path, {"name", "degree", "weight"});
            Generator gen;
            auto name = p.string_field(g, "name", path);
            if (!g.contains("name")) p.fail(path + ".name", "missing required field");
            if (name) {
              if (!std::regex_match(*name, kIdentifier)) p.fail(path + ".name", "'" + *name + "' is not an identifier");
              else if (std::regex_match(*name, kReservedName)) p.fail(path + ".name", "'" + *name + "' is reserved");
              else if (!names.insert(*name).second) p.fail(path + ".name", "duplicate generator '" + *name + "'");
              gen.name = *name;
            }
            auto degree = p.int_field(g, "degree", path);
            if (!g.contains("degree")) p.fail(path + ".degree", "missing required field");
            if (degree) {
              if (*degree < 1) p.fail(path + ".degree", "base generators need degree >= 1, got " + std::to_string(*degree));
              gen.degree = *degree;
            }
            if (auto weight = p.int_field(g, "weight", path)) {
              if (*weight < 0) p.fail(path + ".weight", "weight labels are non-negative");
              gen.weight = *weight;
            }
            if (p.issues.size() != before) generators_ok = false;
            base.generators.push_back(gen);
          }
        }
      }

      TablePtr table;
      if (generators_ok && truncation_ok) {
        std::vector<VariableTable::Variable> vars;
        for (const auto& g : base.generators) vars.push_back({g.name, g.degree, false, g.weight});
        if (job.mode == Mode::cobordism)
          for (const auto& v : CoefficientRing::lazard(job.truncation).generators) vars.push_back(v);
        table = make_table(std::move(vars));
      }

      auto string_list = [&](const char* key, std::vector<std::string>& out, bool homogeneous) {
        if (!b.contains(key)) return;
        std::string base_path = std::string("$.base.") + key;
        const auto& arr = b.at(key);
        if (!arr.is_array()) {
          p.fail(base_path, "expected an array of expressions");
          return;
        }
        for (std::size_t i = 0; i < arr.size(); ++i) {
          std::string path = base_path + "[" + std::to_string(i) + "]";
          if (!arr[i].is_string()) {
            p.fail(path, "expected a string");
            continue;
          }
          out.push_back(arr[i].get<std::string>());
          if (!table) continue;
          auto poly = p.expression(out.back(), table, path);
          if (poly && homogeneous && !poly->is_zero() && (!poly->is_homogeneous() || !poly->aux()))
            p.fail(path, "relation '" + out.back() + "' is not homogeneous");
        }
      };
      string_list("relations", base.relations, true);

      if (b.contains("char_classes")) {
        const auto& cc = b.at("char_classes");
        if (task != "flag") p.fail("$.base.char_classes", "only flag jobs take characteristic classes");
        if (!cc.is_object()) {
          p.fail("$.base.char_classes", "expected an object {sigma1: expr, ...}");
        } else {
          for (const auto& [key, value] : cc.items()) {
            std::string path = "$.base.char_classes." + key;
            std::smatch m;
            if (!std::regex_match(key, m, kSigma)) {
              p.fail(path, "keys are sigma1..sigmar");
              continue;
            }
            std::size_t index = std::stoul(m[1].str());
            if (invariants && index > invariants->sigmas.size()) {
              p.fail(path, "the group has only " + std::to_string(invariants->sigmas.size()) + " fundamental invariants");
              continue;
            }
            if (!value.is_string()) {
              p.fail(path, "expected a string");
              continue;
            }
            base.char_classes[key] = value.get<std::string>();
            if (!table) continue;
            auto poly = p.expression(value.get<std::string>(), table, path);
            if (!poly || !invariants || poly->is_zero()) continue;
            int want = invariants->degrees[index - 1];
            auto d = poly->degree();
            if (!d || *d != want)
              p.fail(path, key + " has degree " + std::to_string(want) + " but '" + value.get<std::string>() +
                               "' has degree " + degree_text(*poly));
            else if (poly->aux() != 0)
              p.fail(path, "characteristic classes must have weight label 0");
          }
        }
      }
      if (b.contains("characters")) {
        const auto& ch = b.at("characters");
        if (task != "principal") p.fail("$.base.characters", "only principal jobs take characters");
        if (!ch.is_object()) {
          p.fail("$.base.characters", "expected an object {name: expr, ...}");
        } else {
          for (const auto& [key, value] : ch.items()) {
            std::string path = "$.base.characters." + key;
            if (!value.is_string()) {
              p.fail(path, "expected a string");
              continue;
            }
            base.characters[key] = value.get<std::string>();
            if (!table) continue;
            auto poly = p.expression(value.get<std::string>(), table, path);
            if (!poly || poly->is_zero()) continue;
            auto d = poly->degree();
            if (!d || *d != 1)
              p.fail(path, "first Chern class '" + value.get<std::string>() + "' has degree " + degree_text(*poly) +
                               ", expected 1");
            else if (poly->aux() != 0)
              p.fail(path, "first Chern classes must have weight label 0");
          }
        }
      }
      job.base = std::move(base);
    }
  } else if (task == "principal") {
    p.fail("$.base", "missing required field for principal jobs");
  }

  if (doc.contains("generating_characters")) {
    const auto& gc = doc.at("generating_characters");
    if (task != "principal") p.fail("$.generating_characters", "only principal jobs take generating characters");
    if (!gc.is_array()) {
      p.fail("$.generating_characters", "expected an array of integer vectors");
    } else {
      std::size_t r = job.base ? job.base->characters.size() : 0;
      for (std::size_t i = 0; i < gc.size(); ++i) {
        std::string path = "$.generating_characters[" + std::to_string(i) + "]";
        if (!gc[i].is_array()) {
          p.fail(path, "expected an array of integers");
          continue;
        }
        std::vector<int> chi;
        for (std::size_t j = 0; j < gc[i].size(); ++j)
          if (auto v = p.int_value(gc[i][j], path + "[" + std::to_string(j) + "]")) chi.push_back(*v);
        if (chi.size() != r)
          p.fail(path, "has " + std::to_string(chi.size()) + " coordinates but " + std::to_string(r) +
                           " basis characters are given");
        job.generating_characters.push_back(std::move(chi));
      }
    }
  }

  if (!p.issues.empty()) throw JobError(std::move(p.issues));
  return job;
}

json serialize_job(const Job& job) {
  json out;
  out["task"] = job.task;
  if (job.check) out["check"] = *job.check;
  out["mode"] = to_string(job.mode);
  out["truncation_degree"] = job.truncation;
  if (job.group) out["group"] = {{"type", to_string(job.group->type)}, {"rank", job.group->rank}};
  out["parabolic"] = job.parabolic;
  if (job.base) {
    json b;
    b["name"] = job.base->name;
    b["generators"] = json::array();
    for (const auto& g : job.base->generators) {
      json gen{{"name", g.name}, {"degree", g.degree}};
      if (g.weight != 0) gen["weight"] = g.weight;
      b["generators"].push_back(gen);
    }
    b["relations"] = job.base->relations;
    if (!job.base->char_classes.empty()) b["char_classes"] = job.base->char_classes;
    if (!job.base->characters.empty()) b["characters"] = job.base->characters;
    out["base"] = b;
  }
  if (!job.generating_characters.empty()) out["generating_characters"] = job.generating_characters;
  out["convention"] = to_string(job.convention);
  out["format"] = job.format;
  return out;
}

// ---------------------------------------------------------------------------
// Running jobs

namespace {

std::string profile_text(const std::map<int, long>& ranks) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [d, r] : ranks) {
    if (r == 0) continue;
    out << (first ? "" : " ") << d << ':' << r;
    first = false;
  }
  return first ? "(none)" : out.str();
}

std::map<int, long> nonzero(const std::map<int, long>& ranks) {
  std::map<int, long> out;
  for (const auto& [d, r] : ranks)
    if (r != 0) out.emplace(d, r);
  return out;
}

json profile_json(const std::map<int, long>& ranks) {
  json out = json::array();
  for (const auto& [d, r] : ranks)
    if (r != 0) out.push_back({{"degree", d}, {"rank", r}});
  return out;
}

RingPresentation build_base(const Job& job) {
  if (!job.base) return point_base(job.mode, job.truncation);
  return make_base(job.base->name, job.base->generators, job.base->relations, job.mode, job.truncation);
}

GroupData group_of(const Job& job) { return make_group_data(job.group->type, job.group->rank); }

CharacteristicMap cmap_of(const Job& job, const RingPresentation& base, const GroupData& group) {
  CharacteristicMap cmap;
  for (std::size_t i = 0; i < group.invariants.sigmas.size(); ++i) {
    std::string key = "sigma" + std::to_string(i + 1);
    if (job.base && job.base->char_classes.count(key))
      cmap.values.push_back(parse_polynomial(job.base->char_classes.at(key), base.table));
    else
      cmap.values.emplace_back(base.table);
  }
  return cmap;
}

PrincipalBundleSpec principal_spec_of(const Job& job) {
  PrincipalBundleSpec spec{build_base(job), {}, {}};
  for (const auto& [name, expr] : job.base->characters)
    spec.character_classes.emplace_back(name, parse_polynomial(expr, spec.base.table));
  for (const auto& chi : job.generating_characters) spec.generating_characters.push_back({chi});
  return spec;
}

json presentation_json(const RingPresentation& pres) {
  json out;
  out["name"] = pres.name;
  out["mode"] = to_string(pres.mode);
  out["truncation_degree"] = pres.truncation;
  out["generators"] = json::array();
  for (const auto& g : pres.generators) {
    json gen{{"name", g.name}, {"degree", g.degree}};
    if (g.weight != 0) gen["weight"] = g.weight;
    out["generators"].push_back(gen);
  }
  out["relations"] = json::array();
  for (const auto& r : pres.relations)
    if (!r.is_zero()) out["relations"].push_back(r.to_string());
  out["ranks"] = profile_json(pres.ranks);
  out["total_rank"] = pres.total_rank();
  if (pres.has_aux()) {
    json bi = json::array();
    for (const auto& [key, r] : pres.bigraded_ranks)
      if (r != 0) bi.push_back({{"degree", key.first}, {"weight", key.second}, {"rank", r}});
    out["bigraded_ranks"] = bi;
  }
  if (pres.basis) {
    json elements = json::array();
    for (std::size_t i = 0; i < pres.basis->size(); ++i)
      elements.push_back({{"degree", pres.basis->degrees[i]}, {"element", pres.basis->elements[i].to_string()}});
    out["basis"] = {{"over", pres.basis->over}, {"rank", pres.basis->size()}, {"elements", elements}};
  }
  if (!pres.identities.empty()) {
    json ids = json::array();
    for (const auto& id : pres.identities)
      ids.push_back({{"label", id.label}, {"expression", id.expression.to_string()}, {"reduces_to_zero", id.reduces_to_zero}});
    out["identities"] = ids;
  }
  out["metadata"] = pres.metadata;
  return out;
}

std::string presentation_text(const RingPresentation& pres) {
  std::ostringstream out;
  out << pres.name << " (" << to_string(pres.mode) << " mode, truncation " << pres.truncation;
  if (pres.metadata.count("convention")) out << ", convention " << pres.metadata.at("convention");
  out << ")\n";
  out << "generators:";
  if (pres.generators.empty()) out << " (none)";
  for (const auto& g : pres.generators) {
    out << ' ' << g.name << '[' << g.degree;
    if (g.weight) out << ',' << g.weight;
    out << ']';
  }
  out << "\nrelations:\n";
  bool any = false;
  for (const auto& r : pres.relations)
    if (!r.is_zero()) {
      out << "  " << r.to_string() << '\n';
      any = true;
    }
  if (!any) out << "  (none)\n";
  out << "ranks: " << profile_text(pres.ranks) << "\ntotal rank: " << pres.total_rank() << '\n';
  if (pres.has_aux()) {
    out << "bigraded ranks:";
    for (const auto& [key, r] : pres.bigraded_ranks)
      if (r) out << " (" << key.first << ',' << key.second << "):" << r;
    out << '\n';
  }
  if (pres.basis) {
    out << "free basis over " << pres.basis->over << " (" << pres.basis->size() << "):";
    for (std::size_t i = 0; i < pres.basis->size(); ++i)
      out << (i ? ", " : " ") << pres.basis->elements[i].to_string();
    out << '\n';
  }
  for (const auto& id : pres.identities)
    out << "identity " << id.label << ": " << id.expression.to_string() << (id.reduces_to_zero ? " = 0" : " != 0")
        << '\n';
  if (pres.metadata.count("structure")) out << "note: " << pres.metadata.at("structure") << '\n';
  if (pres.metadata.count("tensor_decomposition"))
    out << "decomposition: " << pres.metadata.at("tensor_decomposition") << '\n';
  return out.str();
}

Report run_fgl(const Job& job) {
  FormalGroupLaw fgl = job.mode == Mode::cobordism ? universal_fgl(job.truncation) : additive_fgl(job.truncation);
  auto residuals = fgl_axiom_residuals(fgl);
  json result;
  result["coefficient_ring"] = to_string(fgl.ring.kind);
  result["law"] = fgl.law.to_string();
  if (fgl.log) result["log"] = fgl.log->to_string();
  if (fgl.exp) result["exp"] = fgl.exp->to_string();
  json coeffs = json::array();
  for (int n = 2; n <= job.truncation; ++n)
    for (int i = 1; i < n; ++i) {
      Polynomial a = fgl.coefficient(i, n - i);
      coeffs.push_back({{"i", i}, {"j", n - i}, {"value", a.to_string()}});
    }
  result["coefficients"] = coeffs;
  result["axioms"] = {{"unit", residuals.unit.to_string()},
                      {"commutativity", residuals.commutativity.to_string()},
                      {"associativity", residuals.associativity.to_string()},
                      {"ok", residuals.all_zero()}};

  std::ostringstream text;
  text << "formal group law (" << to_string(job.mode) << " mode, truncation " << job.truncation << ", "
       << to_string(fgl.ring.kind) << " coefficients)\n";
  text << "F(u,v) = " << fgl.law.to_string() << '\n';
  if (fgl.log) text << "log(t) = " << fgl.log->to_string() << '\n';
  if (fgl.exp) text << "exp(t) = " << fgl.exp->to_string() << '\n';
  text << "axioms: unit " << residuals.unit.to_string() << ", commutativity " << residuals.commutativity.to_string()
       << ", associativity " << residuals.associativity.to_string() << (residuals.all_zero() ? " (OK)" : " (FAILED)")
       << '\n';
  return {json{{"result", result}}, text.str(), residuals.all_zero() ? 0 : 2};
}

Report run_coinv(const Job& job) {
  GroupData group = group_of(job);
  const auto& lambda = *group.lambda;
  auto coeffs = poincare_coefficients(lambda);
  poincare_polynomial(lambda);  // throws on a mismatch with the product formula

  json result;
  result["group"] = to_string(group.datum->type) + std::to_string(group.datum->rank);
  result["weyl_order"] = group.weyl.size();
  result["positive_roots"] = group.datum->positive_roots.size();
  result["top_degree"] = lambda.top_degree();
  result["dimension"] = lambda.dimension();
  result["dimensions"] = lambda.dimensions();
  result["poincare"] = format_univariate(coeffs);
  json inv = json::array();
  for (std::size_t i = 0; i < group.invariants.sigmas.size(); ++i)
    inv.push_back({{"degree", group.invariants.degrees[i]}, {"polynomial", group.invariants.sigmas[i].to_string()}});
  result["invariants"] = inv;
  json basis = json::array();
  for (int d = 0; d <= lambda.top_degree(); ++d) {
    json ms = json::array();
    for (const auto& e : lambda.basis(d)) ms.push_back(monomial_to_string(*lambda.table(), e));
    basis.push_back({{"degree", d}, {"monomials", ms}});
  }
  result["basis"] = basis;
  result["top_class"] = monomial_to_string(*lambda.table(), lambda.top_monomial());
  json dets = json::array();
  std::ostringstream dets_text;
  for (int d = 0; d <= lambda.top_degree(); ++d) {
    auto pm = pairing_matrix(lambda, d);
    dets.push_back({{"degree", d}, {"determinant", to_string(pm.determinant)}});
    dets_text << (d ? " " : "") << d << ':' << to_string(pm.determinant);
  }
  result["pairing_determinants"] = dets;

  std::ostringstream text;
  text << "coinvariant algebra of " << result["group"].get<std::string>() << " (|W| = " << group.weyl.size() << ")\n";
  text << "invariants:";
  for (std::size_t i = 0; i < group.invariants.sigmas.size(); ++i)
    text << (i ? ", " : " ") << group.invariants.sigmas[i].to_string();
  text << "\ndim: " << lambda.dimension() << "\ntop degree: " << lambda.top_degree() << "\nPoincare: "
       << format_univariate(coeffs) << '\n';
  for (int d = 0; d <= lambda.top_degree(); ++d) {
    text << "basis " << d << ':';
    for (const auto& e : lambda.basis(d)) text << ' ' << monomial_to_string(*lambda.table(), e);
    text << '\n';
  }
  text << "top class: " << monomial_to_string(*lambda.table(), lambda.top_monomial()) << '\n';
  text << "pairing determinants: " << dets_text.str() << '\n';

  if (!job.parabolic.empty()) {
    WeylGroup wp = parabolic_weyl(*group.datum, job.parabolic);
    std::vector<std::size_t> dims;
    std::size_t total = 0;
    for (const auto& [d, classes] : w_invariants(lambda, wp)) {
      dims.push_back(classes.size());
      total += classes.size();
    }
    result["parabolic"] = {{"subset", job.parabolic}, {"order", wp.size()}, {"invariant_dimensions", dims},
                           {"invariant_dimension", total}};
    std::vector<long> as_long(dims.begin(), dims.end());
    text << "W_P order: " << wp.size() << "\ninvariant Poincare: " << format_univariate(as_long)
         << "\ninvariant dim: " << total << '\n';
  }
  return {json{{"result", result}}, text.str(), 0};
}

Report run_flag(const Job& job) {
  GroupData group = group_of(job);
  RingPresentation base = build_base(job);
  CharacteristicMap cmap = cmap_of(job, base, group);
  RingPresentation pres = flag_bundle_ring(base, cmap, group, job.parabolic, {job.mode, job.truncation, job.convention});
  RankReport check = verify_rank(pres, base, group, job.parabolic, false);

  json checks = json::array();
  for (const auto& c : check.checks)
    checks.push_back({{"name", c.name}, {"expected", c.expected}, {"actual", c.actual}, {"ok", c.ok()}});
  json result;
  result["presentation"] = presentation_json(pres);
  result["base"] = presentation_json(base);
  result["rank_check"] = {{"weyl_quotient", check.weyl_quotient},
                          {"invariant_dimension", check.invariant_dimension},
                          {"declared", check.declared},
                          {"checks", checks},
                          {"ok", check.ok()}};
  bool identities_ok = std::all_of(pres.identities.begin(), pres.identities.end(),
                                    [](const Identity& id) { return id.reduces_to_zero; });

  std::ostringstream text;
  text << presentation_text(pres);
  text << "base " << base.name << " ranks: " << profile_text(base.ranks) << '\n';
  text << "rank check: |W|/|W_P| " << check.weyl_quotient << ", dim Lambda^W_P " << check.invariant_dimension
       << ", declared " << check.declared << (check.ok() ? ", OK" : ", MISMATCH") << '\n';
  for (const auto& c : check.checks)
    if (!c.ok()) text << "  " << c.name << ": expected " << c.expected << ", got " << c.actual << '\n';
  return {json{{"result", result}}, text.str(), check.ok() && identities_ok ? 0 : 2};
}

Report run_principal(const Job& job) {
  PrincipalBundleSpec spec = principal_spec_of(job);
  RingPresentation pres = principal_bundle_ring(spec, job.mode, job.truncation);
  json result;
  result["presentation"] = presentation_json(pres);
  result["base"] = presentation_json(spec.base);
  std::ostringstream text;
  text << presentation_text(pres);
  text << "base " << spec.base.name << " ranks: " << profile_text(spec.base.ranks) << '\n';
  return {json{{"result", result}}, text.str(), 0};
}

// ---------------------------------------------------------------------------
// Oracle

struct OracleCheck {
  std::string name;
  std::string main;
  std::string oracle;
  bool ok() const { return main == oracle; }
};

template <typename T>
std::string list_text(const std::vector<T>& v) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  out << ')';
  return out.str();
}

std::vector<OracleCheck> oracle_coinv(const Job& job) {
  GroupData group = group_of(job);
  const auto& lambda = *group.lambda;
  int n = lambda.top_degree();
  std::vector<OracleCheck> out;
  out.push_back({"order", std::to_string(group.weyl.size()),
                 std::to_string(expected_weyl_order(group.datum->type, group.datum->rank))});
  auto kernel = kernel_dimensions(group.invariants, n + 1);
  long kernel_total = 0;
  for (long d : kernel) kernel_total += d;
  out.push_back({"dim", std::to_string(lambda.dimension()), std::to_string(kernel_total)});
  std::vector<long> main_dims;
  for (auto d : lambda.dimensions()) main_dims.push_back(static_cast<long>(d));
  main_dims.push_back(0);
  out.push_back({"dims by degree (kernel)", list_text(main_dims), list_text(kernel)});
  out.push_back({"dims by degree (Molien)", list_text(main_dims), list_text(molien_dimensions(group.weyl, n + 1))});
  out.push_back({"top degree", std::to_string(n),
                 std::to_string(expected_positive_roots(group.datum->type, group.datum->rank))});
  out.push_back({"Poincare", format_univariate(poincare_coefficients(lambda)),
                 format_univariate(poincare_product(group.invariants.degrees))});
  if (!job.parabolic.empty()) {
    long dim = 0;
    for (const auto& [d, classes] : w_invariants(lambda, parabolic_weyl(*group.datum, job.parabolic)))
      dim += static_cast<long>(classes.size());
    out.push_back({"rank", std::to_string(dim), std::to_string(rank_by_weyl_quotient(*group.datum, job.parabolic))});
  }
  return out;
}

std::vector<OracleCheck> oracle_fgl(const Job& job) {
  int d = job.truncation;
  std::vector<OracleCheck> out;
  auto solved = lazard_coefficients_by_constraints(d);
  if (job.mode == Mode::cobordism) {
    FormalGroupLaw fgl = universal_fgl(d);
    for (const auto& [ij, value] : solved)
      out.push_back({"a_" + std::to_string(ij.first) + std::to_string(ij.second),
                     fgl.coefficient(ij.first, ij.second).to_string(), value.to_string()});
    out.push_back({"exp", fgl.exp->to_string(), exp_by_lagrange_inversion(d).to_string()});
    auto r = fgl_axiom_residuals(fgl);
    out.push_back({"unit residual", r.unit.to_string(), "0"});
    out.push_back({"commutativity residual", r.commutativity.to_string(), "0"});
    out.push_back({"associativity residual", r.associativity.to_string(), "0"});
  } else {
    FormalGroupLaw fgl = additive_fgl(d);
    for (const auto& [ij, value] : solved) {
      Substitution zero;
      for (const auto& v : value.table()->variables())
        zero.emplace(v.name, v.coefficient ? Polynomial(value.table()) : Polynomial::variable(value.table(), v.name));
      out.push_back({"a_" + std::to_string(ij.first) + std::to_string(ij.second),
                     fgl.coefficient(ij.first, ij.second).to_string(), poly_substitute(value, zero).to_string()});
    }
    auto r = fgl_axiom_residuals(fgl);
    out.push_back({"associativity residual", r.associativity.to_string(), "0"});
  }
  return out;
}

std::vector<OracleCheck> oracle_flag(const Job& job) {
  GroupData group = group_of(job);
  RingPresentation base = build_base(job);
  CharacteristicMap cmap = cmap_of(job, base, group);
  FlagOptions options{job.mode, job.truncation, job.convention};
  RingPresentation pres = flag_bundle_ring(base, cmap, group, job.parabolic, options);
  std::vector<OracleCheck> out;
  std::string declared = std::to_string(pres.basis->size());
  out.push_back({"rank", declared, std::to_string(rank_by_weyl_quotient(*group.datum, job.parabolic))});
  long averaged = 0;
  for (const auto& [d, classes] : w_invariants(*group.lambda, parabolic_weyl(*group.datum, job.parabolic)))
    averaged += static_cast<long>(classes.size());
  out.push_back({"rank (averaging)", declared, std::to_string(averaged)});
  for (const auto& id : pres.identities)
    out.push_back({"identity " + id.label, id.reduces_to_zero ? "0" : id.expression.to_string(), "0"});
  if (job.mode == Mode::chow) {
    if (group.datum->type == RootType::GL)
      out.push_back({"ranks (block presentation)", profile_text(pres.ranks),
                     profile_text(gl_partial_flag_ranks(base, cmap, group.datum->rank, job.parabolic, job.truncation))});
  } else {
    Job chow = job;
    chow.mode = Mode::chow;
    RingPresentation chow_base = build_base(chow);
    RingPresentation chow_pres =
        flag_bundle_ring(chow_base, cmap_of(chow, chow_base, group), group, job.parabolic, {Mode::chow, job.truncation, job.convention});
    out.push_back({"ranks at b = 0", profile_text(specialize_lazard(pres).ranks), profile_text(chow_pres.ranks)});
    out.push_back({"ranks (L tensor Chow)", profile_text(pres.ranks),
                   profile_text(tensor_with_lazard(nonzero(chow_pres.ranks), job.truncation))});
  }
  return out;
}

std::vector<OracleCheck> oracle_principal(const Job& job) {
  PrincipalBundleSpec spec = principal_spec_of(job);
  RingPresentation pres = principal_bundle_ring(spec, job.mode, job.truncation);
  auto local = principal_ranks_by_localization(spec);
  long total = 0;
  for (const auto& [d, r] : local) total += r;
  return {{"ranks", profile_text(pres.ranks), profile_text(local)},
          {"total rank", std::to_string(pres.total_rank()), std::to_string(total)}};
}

}  // namespace

Report run_oracle(const Job& job) {
  if (!job.check) throw ParameterError("oracle jobs need a check");
  std::vector<OracleCheck> checks;
  const std::string& c = *job.check;
  if (c == "coinv") checks = oracle_coinv(job);
  else if (c == "fgl") checks = oracle_fgl(job);
  else if (c == "flag") checks = oracle_flag(job);
  else if (c == "principal") checks = oracle_principal(job);
  else throw ParameterError("unknown check '" + c + "'");

  bool ok = true;
  json list = json::array();
  std::ostringstream text;
  text << "oracle: " << c << '\n';
  for (const auto& ch : checks) {
    ok &= ch.ok();
    list.push_back({{"name", ch.name}, {"main", ch.main}, {"oracle", ch.oracle}, {"ok", ch.ok()}});
    text << ch.name << ": main " << ch.main << ", oracle " << ch.oracle << (ch.ok() ? ", OK" : ", MISMATCH") << '\n';
  }
  return {json{{"oracle", {{"check", c}, {"checks", list}, {"ok", ok}}}}, text.str(), ok ? 0 : 2};
}

Report run_job(const Job& job) {
  Report report;
  if (job.task == "oracle") report = run_oracle(job);
  else if (job.task == "fgl") report = run_fgl(job);
  else if (job.task == "coinv") report = run_coinv(job);
  else if (job.task == "flag") report = run_flag(job);
  else if (job.task == "principal") report = run_principal(job);
  else throw ParameterError("unknown task '" + job.task + "'");
  report.json["job"] = serialize_job(job);
  report.json["status"] = report.exit_code == 0 ? "ok" : "consistency failure";
  return report;
}

std::string render(const Report& report, const std::string& format) {
  if (format == "json") return report.json.dump(2) + "\n";
  return report.text;
}

}  // namespace flagbord
