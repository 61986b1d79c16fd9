// Copyright 2026 The sandmine authors
//
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

#include "harness.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "error.hpp"
#include "static_analysis.hpp"

namespace fs = std::filesystem;

namespace sandmine {

namespace {

std::string format_double(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(field);
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  fields.push_back(field);
  return fields;
}

bool parse_bool(const std::string& text, const std::string& where) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw Error(ErrorKind::Syntax, "bad boolean '" + text + "' in " + where);
}

nlohmann::json config_json(const ExperimentConfig& config) {
  return {
      {"tools", config.tools},
      {"budget", config.budget},
      {"repetitions", config.repetitions},
      {"disable_static", config.disable_static},
      {"seed", config.seed},
      {"output_format", config.output_format},
      {"step_limit", config.limits.step_limit},
  };
}

std::string report_extension(const std::string& format) {
  if (format == "json") return "json";
  if (format == "csv") return "csv";
  return "md";
}

}  // namespace

DatasetLoad load_dataset_lenient(const std::string& dir) {
  DatasetLoad out;
  if (!fs::is_directory(dir)) {
    throw Error(ErrorKind::Dataset, "'" + dir + "' is not a directory");
  }
  std::vector<std::string> pair_ids;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_directory()) pair_ids.push_back(entry.path().filename().string());
  }
  std::sort(pair_ids.begin(), pair_ids.end());
  for (const auto& pair_id : pair_ids) {
    fs::path base = fs::path(dir) / pair_id;
    if (!fs::exists(base / "benign.app") && !fs::exists(base / "malign.app")) {
      out.warnings.push_back("skipping '" + pair_id + "': no .app files");
      continue;
    }
    try {
      out.pairs.push_back(load_pair(dir, pair_id));
    } catch (const std::exception& e) {
      out.skipped.emplace_back(pair_id, e.what());
    }
  }
  if (out.pairs.empty() && out.skipped.empty()) {
    out.warnings.push_back("dataset directory '" + dir + "' contains no pairs");
  }
  return out;
}

void write_observations_csv(const std::string& path,
                            const std::vector<Observation>& observations) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path + "'");
  out << "tool,repetition,static_enabled,pair_id,detected\n";
  for (const auto& obs : observations) {
    out << obs.tool << ',' << obs.repetition << ','
        << (obs.static_enabled ? "true" : "false") << ',' << obs.pair_id << ','
        << (obs.detected ? "true" : "false") << '\n';
  }
}

std::vector<Observation> read_observations_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorKind::Syntax, "'" + path + "' is empty");
  }
  const std::string expected = "tool,repetition,static_enabled,pair_id,detected";
  if (line != expected && line != expected + "\r") {
    throw Error(ErrorKind::Syntax,
                "'" + path + "' has an unexpected header (want '" + expected +
                    "')");
  }
  std::vector<Observation> observations;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    auto fields = split_csv_line(line);
    if (fields.size() != 5) {
      throw Error(ErrorKind::Syntax,
                  "expected 5 fields, got " + std::to_string(fields.size()),
                  lineno);
    }
    Observation obs;
    obs.tool = fields[0];
    try {
      obs.repetition = std::stoi(fields[1]);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Syntax, "bad repetition '" + fields[1] + "'",
                  lineno);
    }
    obs.static_enabled = parse_bool(fields[2], "static_enabled");
    obs.pair_id = fields[3];
    obs.detected = parse_bool(fields[4], "detected");
    observations.push_back(std::move(obs));
  }
  return observations;
}

nlohmann::json summary_json(const RunResult& result) {
  nlohmann::json skipped = nlohmann::json::array();
  for (const auto& [pair_id, reason] : result.skipped) {
    skipped.push_back({{"pair_id", pair_id}, {"reason", reason}});
  }
  nlohmann::json summary{
      {"config", config_json(result.config)},
      {"pair_ids", result.pair_ids},
      {"skipped", skipped},
      {"union_wos", result.union_wos},
  };
  if (!result.config.disable_static) summary["union_ws"] = result.union_ws;
  nlohmann::json counts;
  auto wos_counts = count_detections(result.union_wos);
  auto ws_counts = count_detections(result.union_ws);
  for (const auto& tool : result.config.tools) {
    nlohmann::json entry{{"wos", wos_counts.count(tool) ? wos_counts[tool] : 0}};
    if (!result.config.disable_static) {
      entry["ws"] = ws_counts.count(tool) ? ws_counts[tool] : 0;
    }
    counts[tool] = entry;
  }
  summary["counts"] = counts;
  return summary;
}

nlohmann::json run_experiment_to_dir(const std::vector<AppPair>& dataset,
                                     const DatasetLoad* load_info,
                                     const SensitiveCatalog& catalog,
                                     const ExperimentConfig& config,
                                     const std::string& out_dir) {
  RunResult result = run_experiment(dataset, catalog, config, /*keep_traces=*/true);
  if (load_info) {
    for (const auto& skip : load_info->skipped) result.skipped.push_back(skip);
  }

  fs::create_directories(fs::path(out_dir) / "traces");
  write_text_file((fs::path(out_dir) / "config.json").string(),
                  config_json(config).dump(2) + "\n");
  write_observations_csv((fs::path(out_dir) / "observations.csv").string(),
                         result.observations);
  {
    // Union verdicts with the offending APIs that tripped each detection.
    std::ofstream out((fs::path(out_dir) / "verdicts.csv").string(),
                      std::ios::binary);
    out << "tool,static_enabled,pair_id,detected,offending\n";
    for (const auto& v : result.union_verdicts) {
      out << v.tool << ',' << (v.with_static ? "true" : "false") << ','
          << v.pair_id << ',' << (v.detected ? "true" : "false") << ',';
      bool first = true;
      for (const auto& api : v.offending) {
        if (!first) out << ';';
        out << api;
        first = false;
      }
      out << '\n';
    }
  }
  for (const auto& trace : result.traces) {
    std::string name = trace.app_id + "__" + strategy_name(trace.strategy.kind) +
                       "__r" + std::to_string(trace.repetition) + ".json";
    write_text_file((fs::path(out_dir) / "traces" / name).string(),
                    trace_to_json(trace) + "\n");
  }
  nlohmann::json summary = summary_json(result);
  write_text_file((fs::path(out_dir) / "summary.json").string(),
                  summary.dump(2) + "\n");
  std::string report = render_report(summary, std::nullopt, config.output_format);
  write_text_file((fs::path(out_dir) /
                   ("report." + report_extension(config.output_format)))
                      .string(),
                  report);
  return summary;
}

nlohmann::json taint_dataset_to_dir(const std::vector<AppPair>& dataset,
                                    const SensitiveCatalog& catalog,
                                    const std::string& out_dir) {
  fs::create_directories(fs::path(out_dir) / "flows");

  std::vector<const AppPair*> pairs;
  for (const auto& pair : dataset) pairs.push_back(&pair);
  std::sort(pairs.begin(), pairs.end(),
            [](const AppPair* a, const AppPair* b) {
              return a->pair_id < b->pair_id;
            });

  std::ofstream verdicts((fs::path(out_dir) / "taint_verdicts.csv").string(),
                         std::ios::binary);
  verdicts << "pair_id,s1,s2,s3,detected\n";
  std::ofstream timings((fs::path(out_dir) / "timings.csv").string(),
                        std::ios::binary);
  timings << "pair_id,benign_ms,malign_ms\n";

  std::vector<Observation> observations;
  nlohmann::json detected_by_taint = nlohmann::json::object();
  nlohmann::json detected_by_static = nlohmann::json::object();
  nlohmann::json flow_counts = nlohmann::json::object();
  int taint_total = 0, static_total = 0;

  for (const AppPair* pair : pairs) {
    auto timed_analysis = [&](const AppModel& app) {
      auto start = std::chrono::steady_clock::now();
      FlowSet flows = analyze_taint(app, catalog);
      auto stop = std::chrono::steady_clock::now();
      double ms = std::chrono::duration<double, std::milli>(stop - start).count();
      return std::make_pair(std::move(flows), ms);
    };
    auto [s1, benign_ms] = timed_analysis(pair->benign);
    auto [s2, malign_ms] = timed_analysis(pair->malign);

    TaintVerdict verdict;
    verdict.pair_id = pair->pair_id;
    verdict.s1 = std::move(s1);
    verdict.s2 = std::move(s2);
    auto trusted = verdict.s1.pairs();
    for (const auto& p : verdict.s2.pairs()) {
      if (!trusted.count(p)) verdict.s3.insert(p);
    }
    verdict.detected = !verdict.s3.empty();

    // The static-only detector on the same pair, for the side-by-side
    // regression of the two static approaches.
    auto benign_static = static_sensitive_set(pair->benign, catalog);
    auto malign_static = static_sensitive_set(pair->malign, catalog);
    bool static_detected = false;
    for (const auto& api : malign_static.apis) {
      if (!benign_static.apis.count(api)) {
        static_detected = true;
        break;
      }
    }

    write_text_file(
        (fs::path(out_dir) / "flows" / (pair->benign.id + ".json")).string(),
        flowset_to_json(verdict.s1) + "\n");
    write_text_file(
        (fs::path(out_dir) / "flows" / (pair->malign.id + ".json")).string(),
        flowset_to_json(verdict.s2) + "\n");
    verdicts << pair->pair_id << ',' << verdict.s1.flows.size() << ','
             << verdict.s2.flows.size() << ',' << verdict.s3.size() << ','
             << (verdict.detected ? "true" : "false") << '\n';
    timings << pair->pair_id << ',' << format_double(benign_ms, 3) << ','
            << format_double(malign_ms, 3) << '\n';

    observations.push_back({"static", 1, true, pair->pair_id, static_detected});
    observations.push_back({"taint", 1, true, pair->pair_id, verdict.detected});
    detected_by_taint[pair->pair_id] = verdict.detected;
    detected_by_static[pair->pair_id] = static_detected;
    flow_counts[pair->pair_id] = {{"s1", verdict.s1.flows.size()},
                                  {"s2", verdict.s2.flows.size()},
                                  {"s3", verdict.s3.size()}};
    taint_total += verdict.detected ? 1 : 0;
    static_total += static_detected ? 1 : 0;
  }

  write_observations_csv(
      (fs::path(out_dir) / "taint_observations.csv").string(), observations);

  nlohmann::json summary{
      {"pairs", pairs.size()},
      {"detected_by_taint", detected_by_taint},
      {"detected_by_static", detected_by_static},
      {"flow_counts", flow_counts},
      {"taint_detected_count", taint_total},
      {"static_detected_count", static_total},
  };
  write_text_file((fs::path(out_dir) / "taint_summary.json").string(),
                  summary.dump(2) + "\n");
  return summary;
}

namespace {

struct ToolRow {
  std::string tool;
  std::optional<long long> ws;
  long long wos = 0;
};

std::vector<ToolRow> tool_rows(const nlohmann::json& summary) {
  std::vector<ToolRow> rows;
  for (const auto& [tool, entry] : summary.at("counts").items()) {
    ToolRow row;
    row.tool = tool;
    row.wos = entry.at("wos").get<long long>();
    if (entry.contains("ws")) row.ws = entry.at("ws").get<long long>();
    rows.push_back(std::move(row));
  }
  // Paper-style ordering: by WS count descending, then by name.
  std::sort(rows.begin(), rows.end(), [](const ToolRow& a, const ToolRow& b) {
    long long ka = a.ws ? *a.ws : a.wos;
    long long kb = b.ws ? *b.ws : b.wos;
    if (ka != kb) return ka > kb;
    return a.tool < b.tool;
  });
  return rows;
}

VerdictTable verdict_table(const nlohmann::json& table) {
  VerdictTable out;
  for (const auto& [tool, by_pair] : table.items()) {
    for (const auto& [pair_id, detected] : by_pair.items()) {
      out[tool][pair_id] = detected.get<bool>();
    }
  }
  return out;
}

std::map<std::string, std::set<std::string>> detected_sets(
    const nlohmann::json& table) {
  std::map<std::string, std::set<std::string>> out;
  for (const auto& [tool, by_pair] : table.items()) {
    auto& this_tool = out[tool];
    for (const auto& [pair_id, detected] : by_pair.items()) {
      if (detected.get<bool>()) this_tool.insert(pair_id);
    }
  }
  return out;
}

std::set<std::string> taint_detected_set(const nlohmann::json& taint_summary) {
  std::set<std::string> out;
  for (const auto& [pair_id, detected] :
       taint_summary.at("detected_by_taint").items()) {
    if (detected.get<bool>()) out.insert(pair_id);
  }
  return out;
}

void render_combined_markdown(std::ostream& out, const std::string& label,
                              const nlohmann::json& table,
                              const std::set<std::string>& by_taint) {
  auto combined = combine_detectors(detected_sets(table), by_taint);
  out << "### Combined detectors (" << label << ")\n\n";
  out << "| Tool | Sandbox | Taint | Combined | Increase |\n";
  out << "| --- | ---: | ---: | ---: | ---: |\n";
  for (const auto& [tool, c] : combined) {
    out << "| " << tool << " | " << c.tool_alone << " | " << c.taint_alone
        << " | " << c.combined << " | " << c.increase << " |\n";
  }
  out << "\n";
}

std::string render_markdown(const nlohmann::json& summary,
                            const std::optional<nlohmann::json>& taint_summary) {
  std::ostringstream out;
  const auto& config = summary.at("config");
  bool has_ws = summary.contains("union_ws");

  out << "# Experiment report\n\n";
  out << "- pairs analyzed: " << summary.at("pair_ids").size()
      << " (skipped: " << summary.at("skipped").size() << ")\n";
  out << "- budget: " << config.at("budget").get<int>()
      << " events, repetitions: " << config.at("repetitions").get<int>()
      << ", base seed: " << config.at("seed").get<std::uint64_t>() << "\n";
  out << "- static component: " << (has_ws ? "enabled" : "disabled") << "\n\n";

  out << "## Detection counts (union of repetitions)\n\n";
  if (has_ws) {
    out << "| Tool | Exec. (WS) | Exec. (WOS) | Impact (%) |\n";
    out << "| --- | ---: | ---: | ---: |\n";
    for (const auto& row : tool_rows(summary)) {
      out << "| " << row.tool << " | " << *row.ws << " | " << row.wos << " | "
          << format_impact(impact(*row.ws, row.wos)) << " |\n";
    }
  } else {
    out << "| Tool | Exec. (WOS) |\n";
    out << "| --- | ---: |\n";
    for (const auto& row : tool_rows(summary)) {
      out << "| " << row.tool << " | " << row.wos << " |\n";
    }
  }
  out << "\n";

  auto wos_table = verdict_table(summary.at("union_wos"));
  if (!wos_table.empty() && !wos_table.begin()->second.empty()) {
    auto overlap = overlap_report(wos_table);
    out << "## Sandbox overlap (WOS, union of repetitions)\n\n";
    out << "| Detected by exactly | Pairs |\n";
    out << "| --- | ---: |\n";
    for (const auto& [tools, count] : overlap.regions) {
      out << "| ";
      for (std::size_t i = 0; i < tools.size(); ++i) {
        if (i) out << " + ";
        out << tools[i];
      }
      out << " | " << count << " |\n";
    }
    out << "| (none) | " << overlap.detected_by_none << " |\n\n";
    out << "- detected by at least one: " << overlap.detected_by_any << "\n";
    out << "- total pairs: " << overlap.total_pairs << "\n\n";
  }

  if (taint_summary) {
    out << "## Taint differencing\n\n";
    out << "- pairs detected by taint differencing: "
        << taint_summary->at("taint_detected_count").get<int>() << "\n";
    out << "- pairs detected by the static-only sandbox: "
        << taint_summary->at("static_detected_count").get<int>() << "\n\n";
    auto by_taint = taint_detected_set(*taint_summary);
    if (has_ws) {
      render_combined_markdown(out, "WS", summary.at("union_ws"), by_taint);
    }
    render_combined_markdown(out, "WOS", summary.at("union_wos"), by_taint);
  }
  return out.str();
}

std::string render_csv(const nlohmann::json& summary) {
  bool has_ws = summary.contains("union_ws");
  std::ostringstream out;
  out << (has_ws ? "tool,exec_ws,exec_wos,impact\n" : "tool,exec_wos\n");
  for (const auto& row : tool_rows(summary)) {
    if (has_ws) {
      out << row.tool << ',' << *row.ws << ',' << row.wos << ','
          << format_impact(impact(*row.ws, row.wos)) << '\n';
    } else {
      out << row.tool << ',' << row.wos << '\n';
    }
  }
  return out.str();
}

nlohmann::json report_json(const nlohmann::json& summary,
                           const std::optional<nlohmann::json>& taint_summary) {
  nlohmann::json rows = nlohmann::json::array();
  bool has_ws = summary.contains("union_ws");
  for (const auto& row : tool_rows(summary)) {
    nlohmann::json entry{{"tool", row.tool}, {"exec_wos", row.wos}};
    if (has_ws) {
      entry["exec_ws"] = *row.ws;
      auto value = impact(*row.ws, row.wos);
      entry["impact"] = value ? nlohmann::json(format_impact(value))
                              : nlohmann::json(nullptr);
    }
    rows.push_back(std::move(entry));
  }
  nlohmann::json report{{"detections", rows},
                        {"pairs", summary.at("pair_ids").size()},
                        {"skipped", summary.at("skipped").size()}};

  auto wos_table = verdict_table(summary.at("union_wos"));
  if (!wos_table.empty() && !wos_table.begin()->second.empty()) {
    auto overlap = overlap_report(wos_table);
    nlohmann::json regions = nlohmann::json::array();
    for (const auto& [tools, count] : overlap.regions) {
      regions.push_back({{"tools", tools}, {"pairs", count}});
    }
    report["overlap_wos"] = {{"regions", regions},
                             {"detected_by_any", overlap.detected_by_any},
                             {"detected_by_none", overlap.detected_by_none},
                             {"total_pairs", overlap.total_pairs}};
  }

  if (taint_summary) {
    report["taint"] = *taint_summary;
    auto by_taint = taint_detected_set(*taint_summary);
    auto render_combined = [&](const nlohmann::json& table) {
      nlohmann::json out = nlohmann::json::object();
      for (const auto& [tool, c] :
           combine_detectors(detected_sets(table), by_taint)) {
        out[tool] = {{"tool_alone", c.tool_alone},
                     {"taint_alone", c.taint_alone},
                     {"combined", c.combined},
                     {"increase", c.increase}};
      }
      return out;
    };
    if (has_ws) report["combined_ws"] = render_combined(summary.at("union_ws"));
    report["combined_wos"] = render_combined(summary.at("union_wos"));
  }
  return report;
}

}  // namespace

std::string render_report(const nlohmann::json& summary,
                          const std::optional<nlohmann::json>& taint_summary,
                          const std::string& format) {
  if (format == "markdown") return render_markdown(summary, taint_summary);
  if (format == "csv") return render_csv(summary);
  if (format == "json") return report_json(summary, taint_summary).dump(2) + "\n";
  throw Error(ErrorKind::InvalidArgument,
              "unknown output format '" + format +
                  "' (expected csv, json or markdown)");
}

std::string render_report_from_dirs(const std::string& results_dir,
                                    const std::optional<std::string>& taint_dir,
                                    const std::string& format) {
  nlohmann::json summary =
      load_json_file((fs::path(results_dir) / "summary.json").string());
  std::optional<nlohmann::json> taint_summary;
  if (taint_dir) {
    taint_summary =
        load_json_file((fs::path(*taint_dir) / "taint_summary.json").string());
  }
  return render_report(summary, taint_summary, format);
}

std::string render_regression(const RegressionFit& fit,
                              const std::string& format) {
  if (format == "json") {
    nlohmann::json terms = nlohmann::json::array();
    for (std::size_t i = 0; i < fit.names.size(); ++i) {
      terms.push_back({{"term", fit.names[i]},
                       {"estimate", fit.coefficients[i]},
                       {"std_error", fit.std_errors[i]},
                       {"p_value", fit.p_values[i]},
                       {"ci_low", fit.ci_low[i]},
                       {"ci_high", fit.ci_high[i]}});
    }
    nlohmann::json j{{"terms", terms},
                     {"aic", fit.aic},
                     {"n_obs", fit.n_obs},
                     {"log_likelihood", fit.log_likelihood},
                     {"converged", fit.converged},
                     {"separation_warning", fit.separation_warning}};
    return j.dump(2) + "\n";
  }

  std::ostringstream out;
  if (format == "csv") {
    out << "term,estimate,std_error,p_value,ci_low,ci_high\n";
    for (std::size_t i = 0; i < fit.names.size(); ++i) {
      out << fit.names[i] << ',' << format_double(fit.coefficients[i], 4) << ','
          << format_double(fit.std_errors[i], 4) << ','
          << format_double(fit.p_values[i], 4) << ','
          << format_double(fit.ci_low[i], 3) << ','
          << format_double(fit.ci_high[i], 3) << '\n';
    }
    return out.str();
  }

  out << "| Term | Estimate | p-value | C.I. (95%) |\n";
  out << "| --- | ---: | ---: | --- |\n";
  for (std::size_t i = 0; i < fit.names.size(); ++i) {
    out << "| " << fit.names[i] << " | "
        << format_double(fit.coefficients[i], 4) << " | "
        << format_double(fit.p_values[i], 4) << " | ("
        << format_double(fit.ci_low[i], 3) << ", "
        << format_double(fit.ci_high[i], 3) << ") |\n";
  }
  out << "\n";
  out << "- AIC: " << format_double(fit.aic, 2) << "\n";
  out << "- observations: " << fit.n_obs << "\n";
  out << "- converged: " << (fit.converged ? "yes" : "no") << " ("
      << fit.iterations << " iterations)\n";
  if (fit.separation_warning) {
    out << "- WARNING: perfect separation, estimates do not converge\n";
  }
  return out.str();
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Syntax, "'" + path + "': " + e.what());
  }
  return j;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path + "'");
  out << text;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace sandmine
