// flagbord: batch front end for flag-bundle and principal-bundle presentations.

#include <flagbord/job.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using nlohmann::json;

namespace {

enum Exit { kOk = 0, kValidation = 1, kConsistency = 2, kInternal = 3 };

// "NAME:DEG" or "NAME:DEG:WEIGHT"
json parse_generator(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream in(spec);
  for (std::string part; std::getline(in, part, ':');) parts.push_back(part);
  if (parts.size() < 2 || parts.size() > 3)
    throw flagbord::JobError("--gen", "expected NAME:DEGREE[:WEIGHT], got '" + spec + "'");
  json g{{"name", parts[0]}};
  try {
    g["degree"] = std::stoi(parts[1]);
    if (parts.size() == 3) g["weight"] = std::stoi(parts[2]);
  } catch (const std::exception&) {
    throw flagbord::JobError("--gen", "non-integer degree or weight in '" + spec + "'");
  }
  return g;
}

std::pair<std::string, std::string> split_assignment(const std::string& flag, const std::string& spec) {
  auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0)
    throw flagbord::JobError(flag, "expected NAME=EXPR, got '" + spec + "'");
  return {spec.substr(0, eq), spec.substr(eq + 1)};
}

void print_issues(const flagbord::JobError& e, const std::string& format) {
  if (format == "json") {
    json errors = json::array();
    for (const auto& i : e.issues()) errors.push_back({{"path", i.path}, {"message", i.message}});
    std::cout << json{{"status", "validation error"}, {"errors", errors}}.dump(2) << '\n';
  }
  for (const auto& i : e.issues()) std::cerr << "error: " << i.path << ": " << i.message << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Presentations of cobordism and Chow rings of flag bundles and principal bundles"};
  app.set_version_flag("--version", "flagbord 1.0.0");

  std::string task;
  std::string job_file;
  std::string format;
  std::string mode;
  std::string group;
  std::string convention;
  std::string check;
  std::string base_name;
  int truncate = 0;
  int rank = 0;
  std::vector<int> parabolic;
  std::vector<std::string> gens, rels, classes, characters, generating;

  app.add_option("task", task, "flag | principal | coinv | fgl | oracle")
      ->required()
      ->check(CLI::IsMember({"flag", "principal", "coinv", "fgl", "oracle"}));
  app.add_option("--job", job_file, "JSON job file")->check(CLI::ExistingFile);
  app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--truncate", truncate, "truncation degree D");
  app.add_option("--mode", mode, "cobordism or chow")->check(CLI::IsMember({"cobordism", "chow"}));
  app.add_option("--group", group, "GL, A, B, C, D or G2");
  app.add_option("--rank", rank, "rank of the group");
  app.add_option("--parabolic", parabolic, "simple-root indices of the parabolic")->delimiter(',');
  app.add_option("--base-name", base_name, "name of the base ring");
  app.add_option("--gen", gens, "base generator NAME:DEGREE[:WEIGHT] (repeatable)");
  app.add_option("--rel", rels, "base relation (repeatable)");
  app.add_option("--class", classes, "characteristic class sigmaI=EXPR (repeatable)");
  app.add_option("--character", characters, "first Chern class of a basis character NAME=EXPR (repeatable)");
  app.add_option("--generating-character", generating, "generating character as comma-separated integers");
  app.add_option("--convention", convention, "roots or dual")->check(CLI::IsMember({"roots", "dual"}));
  app.add_option("--check", check, "task recomputed by an oracle job");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  std::string out_format = format.empty() ? "text" : format;
  try {
    json doc = json::object();
    if (!job_file.empty()) {
      std::ifstream in(job_file);
      std::stringstream buffer;
      buffer << in.rdbuf();
      try {
        doc = json::parse(buffer.str());
      } catch (const json::parse_error& e) {
        throw flagbord::JobError("$", std::string("malformed JSON in ") + job_file + ": " + e.what());
      }
      if (!doc.is_object()) throw flagbord::JobError("$", "a job must be a JSON object");
      if (doc.contains("task") && doc["task"] != task)
        throw flagbord::JobError("$.task", "job file declares task " + doc["task"].dump() + " but '" + task +
                                                 "' was requested");
      if (format.empty() && doc.contains("format") && doc["format"].is_string())
        out_format = doc["format"].get<std::string>();
    }
    doc["task"] = task;
    if (!format.empty()) doc["format"] = format;
    if (!mode.empty()) doc["mode"] = mode;
    if (app.count("--truncate")) doc["truncation_degree"] = truncate;
    if (!convention.empty()) doc["convention"] = convention;
    if (!check.empty()) doc["check"] = check;
    if (!group.empty() || app.count("--rank")) {
      json g = json::object();
      if (!group.empty()) g["type"] = group;
      if (app.count("--rank")) g["rank"] = rank;
      doc["group"] = g;
    }
    if (app.count("--parabolic")) doc["parabolic"] = parabolic;
    bool inline_base = !base_name.empty() || !gens.empty() || !rels.empty() || !classes.empty() || !characters.empty();
    if (inline_base) {
      json& b = doc["base"];
      if (!b.is_object()) b = json::object();
      if (!base_name.empty()) b["name"] = base_name;
      for (const auto& g : gens) b["generators"].push_back(parse_generator(g));
      for (const auto& r : rels) b["relations"].push_back(r);
      for (const auto& c : classes) {
        auto [k, v] = split_assignment("--class", c);
        b["char_classes"][k] = v;
      }
      for (const auto& c : characters) {
        auto [k, v] = split_assignment("--character", c);
        b["characters"][k] = v;
      }
    }
    for (const auto& g : generating) {
      json chi = json::array();
      std::stringstream in(g);
      for (std::string part; std::getline(in, part, ',');) {
        try {
          chi.push_back(std::stoi(part));
        } catch (const std::exception&) {
          throw flagbord::JobError("--generating-character", "non-integer entry in '" + g + "'");
        }
      }
      doc["generating_characters"].push_back(chi);
    }

    flagbord::Job job = flagbord::parse_job(doc);
    out_format = job.format;
    flagbord::Report report = flagbord::run_job(job);
    std::cout << flagbord::render(report, out_format);
    return report.exit_code == 0 ? kOk : kConsistency;
  } catch (const flagbord::JobError& e) {
    print_issues(e, out_format);
    return kValidation;
  } catch (const flagbord::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const flagbord::ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const flagbord::ConsistencyError& e) {
    std::cerr << "consistency failure: " << e.what() << '\n';
    return kConsistency;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}
