#include "seqspace/job.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "seqspace/duals.hpp"
#include "seqspace/errors.hpp"
#include "seqspace/expr.hpp"
#include "seqspace/matclass.hpp"
#include "seqspace/spaces.hpp"
#include "seqspace/verify.hpp"
#include "seqspace/version.hpp"

namespace seqspace {
namespace {

using nlohmann::json;

// Evidence doubles are rendered as strings with 17 significant digits so
// report bodies are byte-stable and lose no precision.
std::string evidence(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

json verdict_json(const Verdict& v) {
  json j;
  j["outcome"] = to_string(v.outcome);
  j["horizon"] = v.horizon;
  j["witnesses"] = v.witnesses;
  j["oscillation"] = evidence(v.oscillation);
  if (v.limit) j["limit"] = evidence(*v.limit);
  j["note"] = v.note;
  return j;
}

json conditions_json(const std::map<std::string, Verdict>& conditions) {
  json j = json::object();
  for (const auto& [key, verdict] : conditions) j[key] = verdict_json(verdict);
  return j;
}

json rational_prefix(const Sequence& s, std::int64_t count) {
  json values = json::array();
  for (std::int64_t k = 0; k < count; ++k)
    values.push_back(to_fraction_string(s(k)));
  return values;
}

struct Defaults {
  std::int64_t horizon = 2000;
  std::int64_t window = 50;
  double tol = 1e-9;
  std::int64_t max_cols = 15;
  std::int64_t columns = 25;
  std::int64_t prefix = 10;
};

struct TaskOutcome {
  json result;
  std::vector<Outcome> verdicts;  // outcomes that drive the exit code
  bool error = false;
};

class JobRunner {
 public:
  JobRunner(const json& job, const RunOptions& options)
      : job_(job), options_(options) {
    load_defaults();
    const json& weights = require_field(job_, "weights", "job");
    weights_.emplace(sequence_from_expr(field_string(weights, "u")),
                     sequence_from_expr(field_string(weights, "v")));
  }

  TaskOutcome run_task(const json& task) {
    const std::string op = field_string(task, "op");
    if (op == "forward_transform") return forward(task);
    if (op == "inverse_transform") return inverse(task);
    if (op == "norm") return norm_task(task);
    if (op == "membership") return membership_task(task);
    if (op == "basis_vector") return basis_task(task);
    if (op == "expand") return expand_task(task);
    if (op == "partial_sum_residual") return residual_task(task);
    if (op == "ad_probe") return ad_probe_task(task);
    if (op == "limit_probe") return limit_probe_task(task);
    if (op == "check_alpha") return check_alpha_task(task);
    if (op == "check_beta") return check_beta_task(task);
    if (op == "check_gamma") return check_gamma_task(task);
    if (op == "classify_into_linf") return classify_task(task, false);
    if (op == "classify_into_c") return classify_task(task, true);
    if (op == "toeplitz_condition") return toeplitz_task(task);
    throw DomainError("unknown op '" + op + "'");
  }

 private:
  static const json& require_field(const json& j, const char* name,
                                   const char* where) {
    auto it = j.find(name);
    if (it == j.end())
      throw DomainError(std::string("missing field '") + name + "' in " + where);
    return *it;
  }

  static std::string field_string(const json& j, const char* name) {
    const json& f = require_field(j, name, "task");
    if (!f.is_string())
      throw DomainError(std::string("field '") + name + "' must be a string");
    return f.get<std::string>();
  }

  void load_defaults() {
    if (auto it = job_.find("defaults"); it != job_.end()) {
      defaults_.horizon = it->value("horizon", defaults_.horizon);
      defaults_.window = it->value("window", defaults_.window);
      defaults_.tol = it->value("tol", defaults_.tol);
      defaults_.max_cols = it->value("max_cols", defaults_.max_cols);
      defaults_.columns = it->value("columns", defaults_.columns);
      defaults_.prefix = it->value("prefix", defaults_.prefix);
    }
    // Precedence: task parameter > CLI flag > job defaults > environment.
    if (const char* env = std::getenv("SEQSPACE_HORIZON");
        env != nullptr && job_.find("defaults") == job_.end())
      defaults_.horizon = std::strtoll(env, nullptr, 10);
    if (options_.horizon) defaults_.horizon = *options_.horizon;
    if (options_.tol) defaults_.tol = *options_.tol;
  }

  std::int64_t horizon_of(const json& task) const {
    return task.value("horizon", defaults_.horizon);
  }

  ProbeParams probe_params(const json& task) const {
    ProbeParams p;
    p.horizon = horizon_of(task);
    p.window = task.value("window", defaults_.window);
    p.tol = task.value("tol", defaults_.tol);
    return p;
  }

  ConditionParams condition_params(const json& task, double default_tol) const {
    ConditionParams p;
    p.horizon = horizon_of(task);
    p.window = task.value("window", defaults_.window);
    p.tol = task.value("tol", default_tol);
    p.columns = task.value("columns", defaults_.columns);
    return p;
  }

  Sequence sequence_arg(const json& task, const char* name) const {
    return sequence_from_expr(field_string(task, name));
  }

  TaskOutcome forward(const json& task) {
    TaskOutcome out;
    Sequence y = forward_transform(*weights_, sequence_arg(task, "x"));
    out.result["values"] =
        rational_prefix(y, task.value("prefix", defaults_.prefix));
    return out;
  }

  TaskOutcome inverse(const json& task) {
    TaskOutcome out;
    Sequence x = inverse_transform(*weights_, sequence_arg(task, "y"));
    out.result["values"] =
        rational_prefix(x, task.value("prefix", defaults_.prefix));
    return out;
  }

  TaskOutcome norm_task(const json& task) {
    TaskOutcome out;
    NormResult r = norm(*weights_, sequence_arg(task, "x"), horizon_of(task));
    out.result["value"] = to_fraction_string(r.value);
    out.result["argmax"] = r.argmax;
    out.result["verdict"] = verdict_json(r.tail);
    out.verdicts.push_back(r.tail.outcome);
    return out;
  }

  TaskOutcome membership_task(const json& task) {
    TaskOutcome out;
    SpaceId space{space_base_from_string(field_string(task, "space")), weights_};
    Verdict v = membership(*weights_, sequence_arg(task, "x"), space,
                           probe_params(task));
    out.result["space"] = to_string(space.base);
    out.result["verdict"] = verdict_json(v);
    out.verdicts.push_back(v.outcome);
    return out;
  }

  TaskOutcome basis_task(const json& task) {
    TaskOutcome out;
    const std::int64_t k = require_field(task, "k", "task").get<std::int64_t>();
    out.result["values"] = rational_prefix(
        basis_vector(*weights_, k), task.value("prefix", defaults_.prefix));
    return out;
  }

  TaskOutcome expand_task(const json& task) {
    TaskOutcome out;
    SpaceId space{space_base_from_string(field_string(task, "space")), weights_};
    BasisExpansion e = expand(*weights_, sequence_arg(task, "x"), space,
                              probe_params(task));
    out.result["coefficients"] = rational_prefix(
        e.coefficients, task.value("prefix", defaults_.prefix));
    if (e.limit_value) {
      out.result["limit"] = to_fraction_string(*e.limit_value);
      out.result["limit_exact"] = e.limit_exact;
    }
    if (e.limit_verdict) {
      out.result["verdict"] = verdict_json(*e.limit_verdict);
      out.verdicts.push_back(e.limit_verdict->outcome);
    }
    return out;
  }

  TaskOutcome residual_task(const json& task) {
    TaskOutcome out;
    const std::int64_t m = task.value("m", std::int64_t{0});
    Rational r = partial_sum_residual(*weights_, sequence_arg(task, "x"), m,
                                      horizon_of(task));
    out.result["m"] = m;
    out.result["value"] = to_fraction_string(r);
    return out;
  }

  TaskOutcome ad_probe_task(const json& task) {
    TaskOutcome out;
    const std::int64_t m = task.value("m", std::int64_t{0});
    Rational r =
        ad_probe(*weights_, sequence_arg(task, "x"), m, horizon_of(task));
    out.result["m"] = m;
    out.result["value"] = to_fraction_string(r);
    out.result["hypothesis_note"] =
        "density evidence additionally requires the weight sequence u itself "
        "to lie in the weighted null space; this probe does not check that";
    return out;
  }

  TaskOutcome limit_probe_task(const json& task) {
    TaskOutcome out;
    Verdict v = limit_probe(sequence_arg(task, "x"), probe_params(task));
    out.result["verdict"] = verdict_json(v);
    out.verdicts.push_back(v.outcome);
    return out;
  }

  json dual_report_json(const DualCheckReport& report) const {
    json j;
    j["kind"] = to_string(report.kind);
    if (report.kind == DualKind::beta) j["base"] = to_string(report.base);
    j["conditions"] = conditions_json(report.conditions);
    j["overall"] = verdict_json(report.overall);
    if (report.subset_sup) j["subset_sup"] = evidence(*report.subset_sup);
    if (!report.column_limits.empty()) {
      json limits = json::array();
      for (double v : report.column_limits) limits.push_back(evidence(v));
      j["column_limits"] = limits;
    }
    if (report.behavioral) {
      j["behavioral"] = verdict_json(*report.behavioral);
      j["behavioral_flag"] = report.behavioral_flag;
    }
    return j;
  }

  TaskOutcome check_alpha_task(const json& task) {
    TaskOutcome out;
    ConditionParams params = condition_params(task, 1e-9);
    if (params.horizon == defaults_.horizon && !task.contains("horizon"))
      params.horizon = 400;  // subset enumeration scans all rows densely
    const std::int64_t max_cols = task.value("max_cols", defaults_.max_cols);
    DualCheckReport report =
        check_alpha(*weights_, sequence_arg(task, "a"), max_cols, params);
    out.result = dual_report_json(report);
    out.verdicts.push_back(report.overall.outcome);
    return out;
  }

  TaskOutcome check_beta_task(const json& task) {
    TaskOutcome out;
    DualCheckReport report =
        check_beta(*weights_, sequence_arg(task, "a"),
                   space_base_from_string(field_string(task, "base")),
                   condition_params(task, 1e-9));
    out.result = dual_report_json(report);
    out.verdicts.push_back(report.overall.outcome);
    return out;
  }

  TaskOutcome check_gamma_task(const json& task) {
    TaskOutcome out;
    DualCheckReport report = check_gamma(*weights_, sequence_arg(task, "a"),
                                         condition_params(task, 1e-9));
    out.result = dual_report_json(report);
    out.verdicts.push_back(report.overall.outcome);
    return out;
  }

  TaskOutcome classify_task(const json& task, bool into_c) {
    TaskOutcome out;
    InfiniteMatrix a = matrix_from_text(field_string(task, "matrix"));
    ConditionParams params = condition_params(task, 1e-6);
    ClassificationReport report =
        into_c ? classify_into_c(a, *weights_, params)
               : classify_into_linf(a, *weights_, params);
    json j;
    j["target"] = to_string(report.target);
    j["matrix"] = a.descriptor();
    j["conditions"] = conditions_json(report.conditions);
    j["overall"] = verdict_json(report.overall);
    j["approximate_tail"] = report.approximate_tail;
    if (report.alpha) j["alpha"] = evidence(*report.alpha);
    if (!report.alpha_head.empty()) {
      json limits = json::array();
      for (double v : report.alpha_head) limits.push_back(evidence(v));
      j["alpha_head"] = limits;
    }
    if (report.behavioral) {
      j["behavioral"] = verdict_json(*report.behavioral);
      j["behavioral_flag"] = report.behavioral_flag;
    }
    out.result = std::move(j);
    out.verdicts.push_back(report.overall.outcome);
    return out;
  }

  TaskOutcome toeplitz_task(const json& task) {
    TaskOutcome out;
    InfiniteMatrix a = matrix_from_text(field_string(task, "matrix"));
    ToeplitzCondition which =
        toeplitz_condition_from_string(field_string(task, "which"));
    Verdict v = toeplitz_condition(a, which, condition_params(task, 1e-6));
    out.result["which"] = to_string(which);
    out.result["matrix"] = a.descriptor();
    out.result["verdict"] = verdict_json(v);
    out.verdicts.push_back(v.outcome);
    return out;
  }

  json job_;
  RunOptions options_;
  Defaults defaults_;
  std::optional<Weights> weights_;
};

RunResult finish_report(json report, json timing, int exit_code,
                        const RunOptions& options) {
  RunResult result;
  result.exit_code = exit_code;
  result.body_json = report.dump(2) + "\n";
  report["timing"] = std::move(timing);
  result.report_json = report.dump(2) + "\n";
  if (options.out_path) {
    std::ofstream out(*options.out_path);
    out << result.report_json;
  }
  return result;
}

}  // namespace

RunResult run_job_text(const std::string& text, const RunOptions& options) {
  json report;
  report["schema"] = kReportSchema;
  report["version"] = kToolVersion;

  json job;
  try {
    job = json::parse(text);
  } catch (const std::exception& e) {
    report["error"] = std::string("job file is not valid JSON: ") + e.what();
    return finish_report(std::move(report), json::object(), 1, options);
  }

  const auto started = std::chrono::steady_clock::now();
  json results = json::array();
  json per_task_ms = json::array();
  int error_count = 0, fails = 0, inconclusive = 0, holds = 0;

  try {
    if (job.contains("schema") && job["schema"] != kJobSchema)
      throw DomainError("unsupported job schema");
    JobRunner runner(job, options);
    const json& tasks = job.contains("tasks") ? job["tasks"] : json::array();
    std::int64_t index = 0;
    for (const json& task : tasks) {
      json entry;
      entry["task"] = index;
      entry["op"] = task.is_object() && task.contains("op") ? task["op"] : "";
      const auto task_started = std::chrono::steady_clock::now();
      try {
        TaskOutcome outcome = runner.run_task(task);
        entry["status"] = "ok";
        entry["result"] = std::move(outcome.result);
        for (Outcome o : outcome.verdicts) {
          if (o == Outcome::Fails) ++fails;
          else if (o == Outcome::Inconclusive) ++inconclusive;
          else ++holds;
        }
      } catch (const std::exception& e) {
        entry["status"] = "error";
        entry["error"] = e.what();
        ++error_count;
      }
      const auto task_ended = std::chrono::steady_clock::now();
      per_task_ms.push_back(
          std::chrono::duration<double, std::milli>(task_ended - task_started)
              .count());
      results.push_back(std::move(entry));
      ++index;
    }
    report["job"] = job;
  } catch (const std::exception& e) {
    report["error"] = e.what();
    ++error_count;
  }

  report["results"] = results;
  if (options.seed) report["seed"] = *options.seed;

  int exit_code = 0;
  if (error_count > 0) exit_code = 1;
  else if (fails > 0) exit_code = 2;
  else if (inconclusive > 0) exit_code = 3;
  report["summary"] = {{"holds", holds},
                       {"fails", fails},
                       {"inconclusive", inconclusive},
                       {"errors", error_count},
                       {"exit_code", exit_code}};

  const auto ended = std::chrono::steady_clock::now();
  json timing;
  timing["total_ms"] =
      std::chrono::duration<double, std::milli>(ended - started).count();
  timing["per_task_ms"] = std::move(per_task_ms);
  return finish_report(std::move(report), std::move(timing), exit_code, options);
}

RunResult run_job_file(const std::string& path, const RunOptions& options) {
  std::ifstream in(path);
  if (!in) {
    json report;
    report["schema"] = kReportSchema;
    report["version"] = kToolVersion;
    report["error"] = "cannot read job file: " + path;
    return finish_report(std::move(report), json::object(), 1, options);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return run_job_text(buffer.str(), options);
}

RunResult run_verify(const RunOptions& options) {
  const auto started = std::chrono::steady_clock::now();
  VerifyOptions vopts;
  if (options.seed) vopts.seed = *options.seed;
  VerifyResult verified = verify_suite(vopts);

  json report;
  report["schema"] = kVerifySchema;
  report["version"] = kToolVersion;
  report["seed"] = verified.seed;
  report["draw_digest"] = verified.draw_digest;
  json oracles = json::array();
  for (const auto& oracle : verified.oracles)
    oracles.push_back({{"name", oracle.name},
                       {"passed", oracle.passed},
                       {"failed", oracle.failed}});
  report["oracles"] = std::move(oracles);
  const int exit_code = verified.total_failed() == 0 ? 0 : 2;
  report["summary"] = {{"passed", verified.total_passed()},
                       {"failed", verified.total_failed()},
                       {"exit_code", exit_code}};

  const auto ended = std::chrono::steady_clock::now();
  json timing;
  timing["total_ms"] =
      std::chrono::duration<double, std::milli>(ended - started).count();
  return finish_report(std::move(report), std::move(timing), exit_code, options);
}

std::string strip_timing(const std::string& report_json) {
  json report = json::parse(report_json);
  report.erase("timing");
  return report.dump(2) + "\n";
}

}  // namespace seqspace
