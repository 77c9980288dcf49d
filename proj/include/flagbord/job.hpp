#pragma once

#include <flagbord/bundle.hpp>

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace flagbord {

struct JobIssue {
  std::string path;  // JSON path, e.g. "$.base.generators[0].degree"
  std::string message;

  bool operator==(const JobIssue&) const = default;
};

// Every validation problem of a job at once.
class JobError : public ValidationError {
 public:
  explicit JobError(std::vector<JobIssue> issues);
  JobError(std::string path, std::string message);
  const std::vector<JobIssue>& issues() const { return issues_; }

 private:
  std::vector<JobIssue> issues_;
};

struct GroupSpec {
  RootType type = RootType::GL;
  int rank = 1;

  bool operator==(const GroupSpec&) const = default;
};

struct BaseSpec {
  std::string name = "X";
  std::vector<Generator> generators;
  std::vector<std::string> relations;
  // sigma1..sigmar -> expression; missing entries are 0.
  std::map<std::string, std::string> char_classes;
  // character name -> first Chern class; basis characters in key order.
  std::map<std::string, std::string> characters;

  bool operator==(const BaseSpec&) const = default;
};

struct Job {
  std::string task;                  // flag | principal | coinv | fgl | oracle
  std::optional<std::string> check;  // oracle jobs: the task to recompute
  Mode mode = Mode::chow;
  int truncation = 6;
  std::optional<GroupSpec> group;
  std::vector<int> parabolic;
  std::optional<BaseSpec> base;
  std::vector<std::vector<int>> generating_characters;
  ChernConvention convention = ChernConvention::roots;
  std::string format = "text";

  // The task whose computation the job describes (check for oracle jobs).
  const std::string& effective_task() const { return task == "oracle" && check ? *check : task; }

  bool operator==(const Job&) const = default;
};

// Strict parsing: unknown fields, wrong types, unparsable expressions and
// degree mismatches are all collected into one JobError.
Job parse_job(const nlohmann::json& document);
Job parse_job(std::string_view text);
nlohmann::json serialize_job(const Job& job);

struct Report {
  nlohmann::json json;
  std::string text;
  int exit_code = 0;  // 0 ok, 2 consistency failure
};

// Runs the job (dispatching oracle jobs to run_oracle). Errors from inner
// modules propagate as exceptions.
Report run_job(const Job& job);
Report run_oracle(const Job& job);

std::string render(const Report& report, const std::string& format);

}  // namespace flagbord
