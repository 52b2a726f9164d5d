// Copyright 2026 The orsched Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "service.h"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <stop_token>
#include <thread>
#include <vector>

#include "generator.h"
#include "httplib.h"
#include "json_io.h"
#include "rescheduler.h"
#include "solver.h"
#include "status.h"
#include "verifier.h"

namespace orsched {

Instance ApplyBedQuota(Instance instance, int percent) {
  if (percent < 0 || percent > 100) {
    throw Error(ErrorCode::kInvalidArgument, "bed quota must lie in [0, 100]");
  }
  for (BedAvailability& b : instance.beds) {
    b.available = static_cast<int>(static_cast<int64_t>(b.available) * percent / 100);
  }
  return instance;
}

namespace {

namespace fs = std::filesystem;

// Failure that maps to an HTTP status.
struct HttpError {
  int status;
  std::string code;
  std::string message;
  Json extra = Json::object();
};

int StatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotFound:
      return 404;
    case ErrorCode::kIo:
    case ErrorCode::kInternal:
      return 500;
    default:
      return 400;
  }
}

std::string NowUtc() {
  const std::time_t now = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void Reply(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void ReplyError(httplib::Response& res, const HttpError& e) {
  Json body = {{"error", {{"code", e.code}, {"message", e.message}}}};
  for (auto& [k, v] : e.extra.items()) body[k] = v;
  Reply(res, e.status, body);
}

Json ParseBody(const httplib::Request& req) {
  try {
    return Json::parse(req.body);
  } catch (const nlohmann::json::exception& e) {
    throw HttpError{400, std::string(ErrorCodeName(ErrorCode::kParse)),
                    e.what()};
  }
}

// Scenario documents: {id, name, horizon, created_at, spec}.
class ScenarioStore {
 public:
  explicit ScenarioStore(fs::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir_.string());
    for (const char* name : {"A", "B", "C"}) {
      const std::string id = std::string("preset-") + name;
      if (!fs::exists(PathOf(id))) {
        ScenarioSpec spec = ScenarioPreset(name);
        Json doc = {{"id", id},
                    {"name", "Scenario " + std::string(name)},
                    {"horizon", 5},
                    {"created_at", NowUtc()},
                    {"spec", ScenarioSpecToJson(spec)}};
        WriteJsonFile(PathOf(id).string(), doc);
      }
    }
    for (const auto& entry : fs::directory_iterator(dir_)) {
      const std::string stem = entry.path().stem().string();
      if (entry.path().extension() == ".json" && stem.rfind("sc-", 0) == 0) {
        next_ = std::max(next_, std::atoi(stem.c_str() + 3) + 1);
      }
    }
  }

  Json Save(const Json& scenario) {
    std::lock_guard lock(mu_);
    const std::string id = "sc-" + std::to_string(next_++);
    Json doc = scenario;
    doc["id"] = id;
    doc["created_at"] = NowUtc();
    WriteJsonFile(PathOf(id).string(), doc);
    return doc;
  }

  std::optional<Json> Get(const std::string& id) {
    std::lock_guard lock(mu_);
    if (!ValidId(id) || !fs::exists(PathOf(id))) return std::nullopt;
    return ReadJsonFile(PathOf(id).string());
  }

  Json List() {
    std::lock_guard lock(mu_);
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir_)) {
      if (entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    Json list = Json::array();
    for (const fs::path& file : files) {
      const Json doc = ReadJsonFile(file.string());
      list.push_back({{"id", doc.at("id")},
                      {"name", doc.at("name")},
                      {"horizon", doc.at("horizon")},
                      {"created_at", doc.at("created_at")}});
    }
    return list;
  }

 private:
  static bool ValidId(const std::string& id) {
    return !id.empty() && std::all_of(id.begin(), id.end(), [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '-';
    });
  }
  fs::path PathOf(const std::string& id) const { return dir_ / (id + ".json"); }

  fs::path dir_;
  std::mutex mu_;
  int next_ = 1;
};

// Checks a submitted scenario and returns its stored form (without id).
Json NormalizeScenario(const Json& body) {
  if (!body.is_object() || !body.contains("scenario")) {
    throw HttpError{400, "invalid-argument", "body must hold a \"scenario\""};
  }
  const Json& in = body.at("scenario");
  ScenarioSpec spec;
  try {
    if (in.contains("spec")) {
      spec = ScenarioSpecFromJson(in.at("spec"));
    } else {
      spec = ScenarioPreset(in.value("based_on", "A"));
    }
  } catch (const Error& e) {
    throw HttpError{400, std::string(ErrorCodeName(e.code())), e.what()};
  }
  const std::string name = in.value("name", spec.name);
  const int horizon = in.value("horizon", 5);
  std::vector<std::string> problems;
  if (name.empty()) problems.push_back("name must not be empty");
  if (horizon < 1) problems.push_back("horizon must be >= 1");
  if (spec.sessions_per_day < 1 || spec.session_minutes < 1) {
    problems.push_back("sessions must be positive");
  }
  for (const SpecialtyGenParams& p : spec.specialty_params) {
    const std::string tag = "specialty " + std::to_string(p.specialty) + ": ";
    if (p.specialty < 1) problems.push_back(tag + "id must be >= 1");
    if (p.registrations_per_5day < 0 || p.or_count < 0) {
      problems.push_back(tag + "counts must be >= 0");
    }
    if (p.surgery_mean <= 0 || p.los_mean < 0 || p.icu_mean < 0 ||
        p.surgery_std < 0 || p.los_std < 0 || p.icu_std < 0) {
      problems.push_back(tag + "means must be positive and deviations >= 0");
    }
    if (p.icu_fraction < 0 || p.icu_fraction > 1) {
      problems.push_back(tag + "icu_fraction must lie in [0, 1]");
    }
    if (p.admit_advance < 0) problems.push_back(tag + "admit_advance < 0");
  }
  for (const BedAvailability& b : spec.bed_table) {
    if (b.available < 0 || b.day < 1 || b.ward < 0) {
      problems.push_back("bed table entries must be non-negative");
      break;
    }
  }
  if (!problems.empty()) {
    throw HttpError{400, "invalid-argument", problems.front(),
                    {{"problems", problems}}};
  }
  spec.name = name;
  return {{"name", name}, {"horizon", horizon}, {"spec", ScenarioSpecToJson(spec)}};
}

enum class JobState { kQueued, kRunning, kDone, kFailed };

const char* JobStateName(JobState state) {
  switch (state) {
    case JobState::kQueued:
      return "queued";
    case JobState::kRunning:
      return "running";
    case JobState::kDone:
      return "done";
    case JobState::kFailed:
      return "failed";
  }
  return "failed";
}

struct JobSpec {
  std::string kind;
  Instance declared;  // before the quota
  Instance instance;  // solved
  int quota = 100;
  std::optional<std::string> scenario_id;
  std::optional<uint64_t> generation_seed;
  SolverConfig config;
  std::optional<Schedule> old_schedule;
  Json disruption;
};

struct Job {
  std::string id;
  JobSpec spec;

  std::mutex mu;
  JobState state = JobState::kQueued;
  std::vector<Json> incumbents;
  std::vector<Schedule> incumbent_schedules;
  Json result;
  Json error;

  std::stop_source stop;
  std::jthread worker;
};

Json OccupancySeries(const Instance& declared, const Instance& quota_applied,
                     const std::vector<OccupancyCell>& prior,
                     const std::vector<OccupancyCell>& fresh, int day_offset) {
  const InstanceIndex declared_index(declared);
  const InstanceIndex quota_index(quota_applied);
  std::map<std::pair<int, int>, int> prior_by_cell;
  for (const OccupancyCell& c : prior) {
    prior_by_cell[{c.ward, c.day}] = c.occupied;
  }
  Json series = Json::array();
  for (const OccupancyCell& c : fresh) {
    const int day = c.day + day_offset;
    series.push_back(
        {{"ward", c.ward},
         {"day", day},
         {"occupied_prior", prior_by_cell[{c.ward, day}]},
         {"occupied_new", c.occupied},
         {"available", declared_index.Beds(c.ward, day).value_or(0)},
         {"quota", quota_index.Beds(c.ward, day).value_or(0)}});
  }
  return series;
}

void RunSolve(Job& job) {
  const JobSpec& spec = job.spec;
  SolverConfig config = spec.config;
  config.stop = job.stop.get_token();
  const auto sink = [&](const Incumbent& inc) {
    const Metrics metrics = ComputeMetrics(spec.instance, inc.schedule);
    std::lock_guard lock(job.mu);
    const int index = static_cast<int>(job.incumbents.size());
    job.incumbents.push_back(
        {{"index", index},
         {"objective", ObjectiveToJson(inc.objective)},
         {"metrics", MetricsToJson(metrics)},
         {"elapsed", inc.elapsed},
         {"schedule_ref",
          "/jobs/" + job.id + "/incumbents/" + std::to_string(index)}});
    job.incumbent_schedules.push_back(inc.schedule);
  };
  const SolveOutcome outcome = Solve(spec.instance, config, sink);
  const Metrics metrics = ComputeMetrics(spec.instance, outcome.best_schedule);
  Json result = SolveOutcomeToJson(outcome);
  result["metrics"] = MetricsToJson(metrics);
  result["occupancy"] =
      OccupancySeries(spec.declared, spec.instance, {},
                      OccupancyGrid(spec.instance, outcome.best_schedule), 0);
  std::lock_guard lock(job.mu);
  job.result = std::move(result);
}

void RunReschedule(Job& job) {
  const JobSpec& spec = job.spec;
  SolverConfig config = spec.config;
  config.stop = job.stop.get_token();

  RescheduleRequest request;
  request.instance = spec.instance;
  if (spec.old_schedule) {
    request.old_schedule = *spec.old_schedule;
  } else {
    SolverConfig baseline = config;
    baseline.emit_incumbents = false;
    request.old_schedule = Solve(spec.instance, baseline).best_schedule;
  }
  DisruptionFromJson(spec.disruption, request);
  const ResidualProblem problem = BuildResidualProblem(request);

  const auto sink = [&](const RescheduleIncumbent& inc) {
    std::lock_guard lock(job.mu);
    const int index = static_cast<int>(job.incumbents.size());
    job.incumbents.push_back(
        {{"index", index},
         {"objective", RescheduleObjectiveToJson(inc.objective)},
         {"elapsed", inc.elapsed},
         {"schedule_ref",
          "/jobs/" + job.id + "/incumbents/" + std::to_string(index)}});
    job.incumbent_schedules.push_back(inc.schedule);
  };
  const RescheduleOutcome outcome = Reschedule(request, config, sink);

  // Beds already taken by executed and untouched stays, per original day.
  Instance prior_free = spec.instance;
  prior_free.beds.clear();
  for (const BedAvailability& b : problem.instance.beds) {
    prior_free.beds.push_back({b.ward, b.day + problem.day_offset, b.available});
  }
  const InstanceIndex quota_index(spec.instance);
  std::vector<OccupancyCell> prior;
  for (const BedAvailability& b : prior_free.beds) {
    prior.push_back({b.ward, b.day,
                     quota_index.Beds(b.ward, b.day).value_or(0) - b.available,
                     0});
  }
  Schedule residual;
  const std::set<int> candidates(problem.candidates.begin(),
                                 problem.candidates.end());
  for (Assignment a : outcome.new_schedule.assignments) {
    if (candidates.count(a.registration_id)) {
      a.day -= problem.day_offset;
      residual.assignments.push_back(a);
    }
  }
  Json result = RescheduleOutcomeToJson(outcome);
  result["old_schedule"] = ScheduleToJson(request.old_schedule);
  result["postponed"] = request.postponed;
  result["occupancy"] =
      OccupancySeries(spec.declared, spec.instance, prior,
                      OccupancyGrid(problem.instance, residual),
                      problem.day_offset);
  std::lock_guard lock(job.mu);
  job.result = std::move(result);
}

void RunJob(Job& job) {
  {
    std::lock_guard lock(job.mu);
    if (job.stop.stop_requested()) {
      job.state = JobState::kFailed;
      job.error = {{"code", "cancelled"}, {"message", "cancelled before start"}};
      return;
    }
    job.state = JobState::kRunning;
  }
  Json error;
  try {
    if (job.spec.kind == "solve") {
      RunSolve(job);
    } else {
      RunReschedule(job);
    }
  } catch (const Error& e) {
    error = {{"code", std::string(ErrorCodeName(e.code()))}, {"message", e.what()}};
  } catch (const std::exception& e) {
    error = {{"code", "internal"}, {"message", e.what()}};
  }
  std::lock_guard lock(job.mu);
  if (error.is_null()) {
    job.state = JobState::kDone;
  } else {
    job.state = JobState::kFailed;
    job.error = std::move(error);
  }
}

}  // namespace

struct Service::Impl {
  explicit Impl(ServiceOptions opts)
      : options(std::move(opts)),
        store(fs::path(options.store_dir) / "scenarios") {
    Routes();
  }

  ~Impl() {
    server.stop();
    std::vector<std::shared_ptr<Job>> all;
    {
      std::lock_guard lock(mu);
      for (auto& [id, job] : jobs) all.push_back(job);
    }
    for (auto& job : all) job->stop.request_stop();
    for (auto& job : all) {
      if (job->worker.joinable()) job->worker.join();
    }
  }

  template <typename F>
  httplib::Server::Handler Wrap(F body) {
    return [body](const httplib::Request& req, httplib::Response& res) {
      try {
        body(req, res);
      } catch (const HttpError& e) {
        ReplyError(res, e);
      } catch (const Error& e) {
        ReplyError(res, {StatusFor(e.code()), std::string(ErrorCodeName(e.code())),
                         e.what()});
      } catch (const std::exception& e) {
        ReplyError(res, {500, "internal", e.what()});
      }
    };
  }

  std::shared_ptr<Job> FindJob(const std::string& id) {
    std::lock_guard lock(mu);
    auto it = jobs.find(id);
    if (it == jobs.end()) {
      throw HttpError{404, "not-found", "unknown job " + id};
    }
    return it->second;
  }

  JobSpec ParseJob(const Json& body) {
    if (!body.is_object()) {
      throw HttpError{400, "invalid-argument", "body must be an object"};
    }
    JobSpec spec;
    spec.kind = body.value("kind", "");
    if (spec.kind != "solve" && spec.kind != "reschedule") {
      throw HttpError{400, "invalid-argument",
                      "kind must be \"solve\" or \"reschedule\""};
    }
    const Json config = body.value("config", Json::object());
    try {
      spec.config.time_limit = config.value("time_limit", 60.0);
      spec.config.iteration_limit = config.value("iterations", int64_t{0});
      spec.config.seed = config.value("seed", uint64_t{1});
      spec.config.max_stall_iterations =
          config.value("max_stall", spec.config.max_stall_iterations);
      spec.quota = config.value("bed_quota", 100);
    } catch (const nlohmann::json::exception& e) {
      throw HttpError{400, "invalid-argument", e.what()};
    }
    if (spec.config.time_limit <= 0 || spec.config.iteration_limit < 0 ||
        spec.config.max_stall_iterations < 1) {
      throw HttpError{400, "invalid-argument", "invalid solver budget"};
    }
    if (spec.quota < 0 || spec.quota > 100) {
      throw HttpError{400, "invalid-argument", "bed_quota must lie in [0, 100]"};
    }

    if (body.contains("instance")) {
      spec.declared = InstanceFromJson(body.at("instance"));
      const ValidationReport report = ValidateInstance(spec.declared);
      if (!report.ok()) {
        throw HttpError{400, "invalid-instance", report.issues.front().detail,
                        {{"validation", ValidationReportToJson(report)}}};
      }
    } else if (body.contains("scenario_id")) {
      const std::string id = body.at("scenario_id").get<std::string>();
      const std::optional<Json> doc = store.Get(id);
      if (!doc) throw HttpError{404, "not-found", "unknown scenario " + id};
      const uint64_t seed = body.value("seed", uint64_t{1});
      spec.scenario_id = id;
      spec.generation_seed = seed;
      spec.declared = GenerateInstance(ScenarioSpecFromJson(doc->at("spec")),
                                       body.value("days", doc->at("horizon").get<int>()),
                                       seed);
    } else {
      throw HttpError{400, "invalid-argument",
                      "either \"instance\" or \"scenario_id\" is required"};
    }
    spec.instance = ApplyBedQuota(spec.declared, spec.quota);

    if (spec.kind == "reschedule") {
      if (!body.contains("disruption")) {
        throw HttpError{400, "invalid-argument", "\"disruption\" is required"};
      }
      spec.disruption = body.at("disruption");
      if (!spec.disruption.contains("postponed") &&
          !spec.disruption.contains("postponed_count")) {
        throw HttpError{400, "invalid-argument",
                        "disruption needs \"postponed\" or \"postponed_count\""};
      }
      if (body.contains("old_schedule")) {
        spec.old_schedule = ScheduleFromJson(body.at("old_schedule"));
      }
    }
    return spec;
  }

  Json JobView(Job& job, size_t since) {
    std::lock_guard lock(job.mu);
    Json delta = Json::array();
    for (size_t i = since; i < job.incumbents.size(); ++i) {
      delta.push_back(job.incumbents[i]);
    }
    Json view = {{"id", job.id},
                 {"kind", job.spec.kind},
                 {"state", JobStateName(job.state)},
                 {"incumbents", delta},
                 {"incumbent_count", job.incumbents.size()},
                 {"error", job.error}};
    if (job.spec.scenario_id) {
      view["scenario_id"] = *job.spec.scenario_id;
      view["generation_seed"] = *job.spec.generation_seed;
    }
    return view;
  }

  void Routes() {
    server.set_pre_routing_handler(
        [this](const httplib::Request& req, httplib::Response& res) {
          if (options.token.empty() ||
              req.get_header_value("Authorization") == "Bearer " + options.token) {
            return httplib::Server::HandlerResponse::Unhandled;
          }
          ReplyError(res, {401, "unauthorized", "missing or wrong bearer token"});
          return httplib::Server::HandlerResponse::Handled;
        });

    server.Post("/scenarios", Wrap([this](const httplib::Request& req,
                                          httplib::Response& res) {
      const Json doc = store.Save(NormalizeScenario(ParseBody(req)));
      Reply(res, 201, {{"id", doc.at("id")}, {"scenario", doc}});
    }));
    server.Get("/scenarios", Wrap([this](const httplib::Request&,
                                         httplib::Response& res) {
      Reply(res, 200, {{"scenarios", store.List()}});
    }));
    server.Get(R"(/scenarios/([A-Za-z0-9\-]+))",
               Wrap([this](const httplib::Request& req, httplib::Response& res) {
                 const std::string id = req.matches[1];
                 const std::optional<Json> doc = store.Get(id);
                 if (!doc) throw HttpError{404, "not-found", "unknown scenario " + id};
                 Reply(res, 200, {{"scenario", *doc}});
               }));

    server.Post("/jobs", Wrap([this](const httplib::Request& req,
                                     httplib::Response& res) {
      JobSpec spec = ParseJob(ParseBody(req));
      auto job = std::make_shared<Job>();
      job->spec = std::move(spec);
      {
        std::lock_guard lock(mu);
        job->id = "job-" + std::to_string(++job_counter);
        jobs[job->id] = job;
      }
      job->worker = std::jthread([job] { RunJob(*job); });
      Reply(res, 202, {{"id", job->id}, {"state", "queued"}});
    }));
    server.Get(R"(/jobs/([A-Za-z0-9\-]+))",
               Wrap([this](const httplib::Request& req, httplib::Response& res) {
                 auto job = FindJob(req.matches[1]);
                 size_t since = 0;
                 if (req.has_param("since")) {
                   const std::string text = req.get_param_value("since");
                   char* end = nullptr;
                   const long long value = std::strtoll(text.c_str(), &end, 10);
                   if (text.empty() || *end != '\0' || value < 0) {
                     throw HttpError{400, "invalid-argument",
                                     "since must be a non-negative integer"};
                   }
                   since = static_cast<size_t>(value);
                 }
                 Reply(res, 200, JobView(*job, since));
               }));
    server.Get(R"(/jobs/([A-Za-z0-9\-]+)/incumbents/(\d+))",
               Wrap([this](const httplib::Request& req, httplib::Response& res) {
                 auto job = FindJob(req.matches[1]);
                 const size_t index = std::stoul(req.matches[2]);
                 std::lock_guard lock(job->mu);
                 if (index >= job->incumbent_schedules.size()) {
                   throw HttpError{404, "not-found", "unknown incumbent"};
                 }
                 Reply(res, 200,
                       {{"incumbent", job->incumbents[index]},
                        {"schedule", ScheduleToJson(job->incumbent_schedules[index])}});
               }));
    server.Get(R"(/jobs/([A-Za-z0-9\-]+)/results)",
               Wrap([this](const httplib::Request& req, httplib::Response& res) {
                 auto job = FindJob(req.matches[1]);
                 std::lock_guard lock(job->mu);
                 if (job->state == JobState::kFailed) {
                   throw HttpError{409, job->error.at("code").get<std::string>(),
                                   job->error.at("message").get<std::string>()};
                 }
                 if (job->state != JobState::kDone) {
                   throw HttpError{409, "not-ready",
                                   std::string("job is ") + JobStateName(job->state)};
                 }
                 Json body = job->result;
                 body["id"] = job->id;
                 body["kind"] = job->spec.kind;
                 body["instance"] = InstanceToJson(job->spec.instance);
                 Reply(res, 200, body);
               }));
    server.Delete(R"(/jobs/([A-Za-z0-9\-]+))",
                  Wrap([this](const httplib::Request& req, httplib::Response& res) {
                    auto job = FindJob(req.matches[1]);
                    job->stop.request_stop();
                    std::lock_guard lock(job->mu);
                    Reply(res, 202, {{"id", job->id},
                                     {"state", JobStateName(job->state)},
                                     {"cancel_requested", true}});
                  }));
  }

  ServiceOptions options;
  ScenarioStore store;
  httplib::Server server;
  std::mutex mu;
  std::map<std::string, std::shared_ptr<Job>> jobs;
  int job_counter = 0;
};

Service::Service(ServiceOptions options)
    : impl_(std::make_unique<Impl>(std::move(options))) {}

Service::~Service() = default;

int Service::BindToAnyPort(const std::string& host) {
  return impl_->server.bind_to_any_port(host);
}

bool Service::Bind(const std::string& host, int port) {
  return impl_->server.bind_to_port(host, port);
}

bool Service::Listen() { return impl_->server.listen_after_bind(); }

void Service::Stop() { impl_->server.stop(); }

}  // namespace orsched
