// encounter-net: command line front end for the encnet library.
//
// Subcommands cover the full pipeline: raw sighting logs -> sessions ->
// encounter traces -> aggregate metrics / temporal metrics / tail fits,
// plus the growth simulator and the diffusion emulator. Every command
// writes a <primary-output>.manifest.json recording inputs, outputs and
// parameters (no timestamps, so reruns are byte-identical).

#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "encnet/encnet.hpp"

namespace {

using nlohmann::json;

std::string g_stage = "startup";

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw encnet::error("cannot open input file: " + path);
  return in;
}

template <class Fn>
void write_file(const std::string& path, Fn&& fn) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw encnet::error("cannot open output file: " + path);
  fn(out);
  out.flush();
  if (!out) throw encnet::error("failed while writing: " + path);
}

void write_json_file(const std::string& path, const json& j) {
  write_file(path, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
}

// threads are deliberately absent: they do not affect any output byte.
void write_manifest(const std::string& command, const json& parameters,
                    const std::vector<std::string>& inputs,
                    const std::vector<std::string>& outputs) {
  json m;
  m["command"] = command;
  m["version"] = encnet::version;
  m["parameters"] = parameters;
  m["inputs"] = inputs;
  m["outputs"] = outputs;
  write_json_file(outputs.front() + ".manifest.json", m);
}

std::vector<encnet::Sighting> load_sightings(const std::string& path) {
  auto in = open_input(path);
  try {
    return encnet::parse_sightings(in);
  } catch (const encnet::parse_error& e) {
    throw encnet::error(path + ": " + e.what());
  }
}

std::vector<encnet::Session> load_sessions(const std::string& path) {
  auto in = open_input(path);
  try {
    return encnet::read_sessions(in);
  } catch (const encnet::parse_error& e) {
    throw encnet::error(path + ": " + e.what());
  }
}

encnet::TemporalTrace load_trace(const std::string& path) {
  auto in = open_input(path);
  try {
    return encnet::read_trace(in);
  } catch (const encnet::parse_error& e) {
    throw encnet::error(path + ": " + e.what());
  }
}

encnet::DiffusionModel parse_model(const std::string& name) {
  if (name == "si") return encnet::DiffusionModel::si;
  if (name == "sis") return encnet::DiffusionModel::sis;
  throw encnet::argument_error("unknown model: " + name);
}

encnet::RemovalPolicy parse_policy(const std::string& name) {
  if (name == "briefest") return encnet::RemovalPolicy::briefest;
  if (name == "most_persistent") return encnet::RemovalPolicy::most_persistent;
  throw encnet::argument_error("unknown policy: " + name);
}

encnet::FitMethod parse_method(const std::string& name) {
  if (name == "ccdf_ls") return encnet::FitMethod::ccdf_ls;
  if (name == "mle") return encnet::FitMethod::mle;
  throw encnet::argument_error("unknown method: " + name);
}

// ---- ingest ---------------------------------------------------------------

struct IngestOpts {
  std::string input;
  std::string output;
};

void run_ingest(const IngestOpts& o) {
  g_stage = "ingest";
  std::vector<encnet::Sighting> sightings = load_sightings(o.input);
  std::sort(sightings.begin(), sightings.end(),
            [](const encnet::Sighting& x, const encnet::Sighting& y) {
              return std::tie(x.device_id, x.scanner_id, x.time) <
                     std::tie(y.device_id, y.scanner_id, y.time);
            });
  sightings.erase(std::unique(sightings.begin(), sightings.end()), sightings.end());

  std::set<std::string> devices, scanners;
  for (const encnet::Sighting& s : sightings) {
    devices.insert(s.device_id);
    scanners.insert(s.scanner_id);
  }
  write_file(o.output, [&](std::ostream& os) { encnet::write_sightings(os, sightings); });
  write_manifest("ingest", json::object(), {o.input}, {o.output});
  std::cout << "ingest: " << sightings.size() << " sightings, " << devices.size()
            << " devices, " << scanners.size() << " scanners -> " << o.output << '\n';
}

// ---- sessions -------------------------------------------------------------

struct SessionsOpts {
  std::string input;
  std::string output;
  encnet::Seconds gap = 300;
  encnet::Seconds scan_period = 60;
};

void run_sessions(const SessionsOpts& o) {
  g_stage = "sessions";
  const std::vector<encnet::Sighting> sightings = load_sightings(o.input);
  const std::vector<encnet::Session> sessions =
      encnet::sessionize(sightings, o.gap, o.scan_period);
  write_file(o.output, [&](std::ostream& os) { encnet::write_sessions(os, sessions); });
  write_manifest("sessions", json{{"gap", o.gap}, {"scan_period", o.scan_period}}, {o.input},
                 {o.output});
  std::cout << "sessions: " << sessions.size() << " sessions from " << sightings.size()
            << " sightings -> " << o.output << '\n';
}

// ---- encounters -----------------------------------------------------------

struct EncountersOpts {
  std::string sightings;
  std::string sessions;
  std::string output;
  encnet::Seconds gap = 300;
  encnet::Seconds scan_period = 60;
  encnet::Seconds merge_gap = 0;
};

void run_encounters(const EncountersOpts& o) {
  g_stage = "encounters";
  if (o.sightings.empty() == o.sessions.empty())
    throw encnet::argument_error("give exactly one of --sightings and --sessions");

  std::vector<encnet::Session> sessions;
  json params{{"merge_gap", o.merge_gap}};
  std::string input;
  if (!o.sightings.empty()) {
    input = o.sightings;
    sessions = encnet::sessionize(load_sightings(o.sightings), o.gap, o.scan_period);
    params["gap"] = o.gap;
    params["scan_period"] = o.scan_period;
  } else {
    input = o.sessions;
    sessions = load_sessions(o.sessions);
  }

  const encnet::TemporalTrace trace = encnet::build_encounters(sessions, o.merge_gap);
  write_file(o.output, [&](std::ostream& os) { encnet::write_trace(os, trace); });
  write_manifest("encounters", params, {input}, {o.output});
  std::cout << "encounters: " << trace.encounters.size() << " encounters, "
            << trace.devices.size() << " devices -> " << o.output << '\n';
}

// ---- metrics --------------------------------------------------------------

struct MetricsOpts {
  std::string trace;
  std::string output;
  std::string degree_output;
  int threads = 0;
};

void run_metrics(const MetricsOpts& o) {
  g_stage = "metrics";
  const encnet::TemporalTrace trace = load_trace(o.trace);
  const encnet::AggregateGraph graph = encnet::aggregate(trace);
  const int threads = encnet::resolve_threads(o.threads);
  const encnet::StructuralSummary summary = encnet::summarize(graph, threads);

  write_json_file(o.output, encnet::summary_json(summary));
  std::vector<std::string> outputs{o.output};
  if (!o.degree_output.empty()) {
    const encnet::DegreeProfile profile = encnet::degree_profile(graph, threads);
    write_file(o.degree_output,
               [&](std::ostream& os) { encnet::write_degree_profile(os, profile); });
    outputs.push_back(o.degree_output);
  }
  write_manifest("metrics", json::object(), {o.trace}, outputs);
  std::cout << "metrics: size=" << summary.size << " edges=" << summary.edges
            << " core=" << summary.core << " k=" << summary.avg_degree
            << " lambda_max=" << summary.diameter << " lambda=" << summary.avg_path_length
            << " C=" << summary.avg_clustering << " -> " << o.output << '\n';
}

// ---- temporal -------------------------------------------------------------

struct TemporalOpts {
  std::string sessions;
  std::string trace;
  std::string nodes_output;
  std::string links_output;
};

void run_temporal(const TemporalOpts& o) {
  g_stage = "temporal";
  if (o.sessions.empty() && o.trace.empty())
    throw encnet::argument_error("give --sessions and/or --trace");
  if (!o.sessions.empty() && o.nodes_output.empty())
    throw encnet::argument_error("--sessions requires --nodes-output");
  if (!o.trace.empty() && o.links_output.empty())
    throw encnet::argument_error("--trace requires --links-output");

  std::vector<std::string> inputs, outputs;
  std::size_t n_nodes = 0, n_links = 0;
  if (!o.sessions.empty()) {
    const std::vector<encnet::NodeTemporalStats> stats = encnet::node_stats(load_sessions(o.sessions));
    n_nodes = stats.size();
    write_file(o.nodes_output, [&](std::ostream& os) { encnet::write_node_stats(os, stats); });
    inputs.push_back(o.sessions);
    outputs.push_back(o.nodes_output);
  }
  if (!o.trace.empty()) {
    const std::vector<encnet::LinkTemporalStats> stats = encnet::link_stats(load_trace(o.trace));
    n_links = stats.size();
    write_file(o.links_output, [&](std::ostream& os) { encnet::write_link_stats(os, stats); });
    inputs.push_back(o.trace);
    outputs.push_back(o.links_output);
  }
  write_manifest("temporal", json::object(), inputs, outputs);
  std::cout << "temporal: " << n_nodes << " node rows, " << n_links << " link rows\n";
}

// ---- fit ------------------------------------------------------------------

struct FitOpts {
  std::string input;
  std::string column;
  std::string count_column;
  std::string method = "ccdf_ls";
  double xmin = 0.0;  // 0 = auto (smallest positive sample)
  std::string output;
  std::string ccdf_output;
};

void run_fit(const FitOpts& o) {
  g_stage = "fit";
  auto in = open_input(o.input);
  std::vector<double> samples;
  try {
    samples = encnet::read_samples_csv(in, o.column, o.count_column);
  } catch (const encnet::parse_error& e) {
    throw encnet::error(o.input + ": " + e.what());
  }

  const std::optional<double> xmin =
      o.xmin > 0.0 ? std::optional<double>(o.xmin) : std::nullopt;
  const encnet::PowerLawFit fit = encnet::fit(samples, xmin, parse_method(o.method));

  write_json_file(o.output, encnet::fit_json(fit));
  std::vector<std::string> outputs{o.output};
  if (!o.ccdf_output.empty()) {
    std::vector<double> tail;
    for (double s : samples)
      if (s >= fit.xmin) tail.push_back(s);
    const encnet::Ccdf c = encnet::ccdf(tail);
    write_file(o.ccdf_output, [&](std::ostream& os) { encnet::write_ccdf(os, c); });
    outputs.push_back(o.ccdf_output);
  }
  json params{{"column", o.column}, {"method", o.method}};
  if (!o.count_column.empty()) params["count_column"] = o.count_column;
  if (xmin) params["xmin"] = *xmin;
  write_manifest("fit", params, {o.input}, outputs);
  std::cout << "fit: alpha_minus_1=" << fit.alpha_minus_1 << " fit_quality=" << fit.fit_quality
            << " n_tail=" << fit.n_tail << " -> " << o.output << '\n';
}

// ---- growth ---------------------------------------------------------------

struct GrowthOpts {
  std::string config;
  std::string trace_output;
  std::string summary_output;
  std::string degree_output;
  // command line overrides; negative = not set
  std::int64_t population = -1;
  std::int64_t steps = -1;
  double freq_exponent = -1.0;
  double presence_exponent = -1.0;
  double freq_scale = -1.0;
  double presence_scale = -1.0;
  std::int64_t step_seconds = -1;
  std::int64_t seed = -1;
  int threads = 0;
};

void run_growth(const GrowthOpts& o) {
  g_stage = "growth";
  encnet::GrowthConfig config;
  std::vector<std::string> inputs;
  if (!o.config.empty()) {
    auto in = open_input(o.config);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw encnet::error(o.config + ": " + e.what());
    }
    config = encnet::growth_config_from_json(j);
    inputs.push_back(o.config);
  }
  if (o.population >= 0) config.population = o.population;
  if (o.steps >= 0) config.steps = o.steps;
  if (o.freq_exponent >= 0.0) config.freq_exponent = o.freq_exponent;
  if (o.presence_exponent >= 0.0) config.presence_exponent = o.presence_exponent;
  if (o.freq_scale >= 0.0) config.freq_scale = o.freq_scale;
  if (o.presence_scale >= 0.0) config.presence_scale = o.presence_scale;
  if (o.step_seconds >= 0) config.step_seconds = o.step_seconds;
  if (o.seed >= 0) config.seed = static_cast<std::uint64_t>(o.seed);

  const encnet::GrowthResult result = encnet::simulate(config);
  write_file(o.trace_output, [&](std::ostream& os) { encnet::write_trace(os, result.trace); });
  std::vector<std::string> outputs{o.trace_output};

  const int threads = encnet::resolve_threads(o.threads);
  if (!o.summary_output.empty()) {
    write_json_file(o.summary_output,
                    encnet::summary_json(encnet::summarize(result.graph, threads)));
    outputs.push_back(o.summary_output);
  }
  if (!o.degree_output.empty()) {
    const encnet::DegreeProfile profile = encnet::degree_profile(result.graph, threads);
    write_file(o.degree_output,
               [&](std::ostream& os) { encnet::write_degree_profile(os, profile); });
    outputs.push_back(o.degree_output);
  }
  write_manifest("growth", encnet::growth_config_json(config), inputs, outputs);
  std::cout << "growth: " << result.trace.encounters.size() << " encounters, "
            << result.graph.edges.size() << " edges -> " << o.trace_output << '\n';
}

// ---- emulate --------------------------------------------------------------

struct EmulateOpts {
  std::string trace;
  std::string model = "si";
  encnet::Seconds expiry = 0;
  double transmission_rate = 1.0;
  std::string injection_device;
  encnet::Seconds injection_time = 0;
  bool has_injection_time = false;
  std::int64_t sample = 0;
  std::int64_t seed = 1;
  std::string output;
  std::string curves_output;
  int threads = 0;
};

void run_emulate(const EmulateOpts& o) {
  g_stage = "emulate";
  const encnet::TemporalTrace trace = load_trace(o.trace);
  encnet::EmulationConfig cfg;
  cfg.model = parse_model(o.model);
  cfg.expiry = o.expiry;
  cfg.transmission_rate = o.transmission_rate;
  cfg.sample = o.sample;
  cfg.seed = static_cast<std::uint64_t>(o.seed);
  cfg.threads = encnet::resolve_threads(o.threads);
  cfg.collect_curves = !o.curves_output.empty();

  json params{{"model", o.model},
              {"transmission_rate", o.transmission_rate},
              {"sample", o.sample},
              {"seed", o.seed}};
  if (cfg.model == encnet::DiffusionModel::sis) params["expiry"] = o.expiry;

  if (o.injection_device.empty() != !o.has_injection_time)
    throw encnet::argument_error("--injection-device and --injection-time go together");

  std::vector<std::string> outputs{o.output};
  if (!o.injection_device.empty()) {
    cfg.collect_curves = true;  // single replays are cheap; always keep the curve
    const encnet::Injection injection{o.injection_device, o.injection_time};
    const encnet::ReplayResult result = encnet::replay(trace, cfg, injection);
    json j;
    j["model"] = o.model;
    j["injection_device"] = injection.device;
    j["injection_time"] = injection.time;
    j["total_infected"] = result.total_infected;
    if (result.extinction_time) j["extinction_time"] = *result.extinction_time;
    write_json_file(o.output, j);
    if (!o.curves_output.empty()) {
      const std::vector<encnet::InjectionRun> runs{{injection, result}};
      write_file(o.curves_output, [&](std::ostream& os) { encnet::write_curves(os, runs); });
      outputs.push_back(o.curves_output);
    }
    params["injection_device"] = injection.device;
    params["injection_time"] = injection.time;
    write_manifest("emulate", params, {o.trace}, outputs);
    std::cout << "emulate: reach=" << result.total_infected << " -> " << o.output << '\n';
    return;
  }

  const std::vector<encnet::InjectionRun> runs = encnet::exhaustive_sweep(trace, cfg);
  const encnet::SweepSummary summary = encnet::summarize_sweep(runs);
  json j = encnet::sweep_summary_json(summary);
  j["model"] = o.model;
  write_json_file(o.output, j);
  if (!o.curves_output.empty()) {
    write_file(o.curves_output, [&](std::ostream& os) { encnet::write_curves(os, runs); });
    outputs.push_back(o.curves_output);
  }
  write_manifest("emulate", params, {o.trace}, outputs);
  std::cout << "emulate: " << summary.injections
            << " injections, mean_final_reach=" << summary.mean_final_reach;
  if (summary.median_extinction_time)
    std::cout << ", median_extinction_time=" << *summary.median_extinction_time;
  std::cout << " -> " << o.output << '\n';
}

// ---- remove ---------------------------------------------------------------

struct RemoveOpts {
  std::string trace;
  std::string policy = "briefest";
  std::vector<double> fractions;
  std::string model = "si";
  encnet::Seconds expiry = 0;
  double transmission_rate = 1.0;
  std::int64_t sample = 0;
  std::int64_t seed = 1;
  std::string output;
  std::string filtered_output;
  std::string curves_output;
  int threads = 0;
};

void run_remove(const RemoveOpts& o) {
  g_stage = "remove";
  const encnet::TemporalTrace trace = load_trace(o.trace);

  // Plain filtering mode: one fraction, write the filtered trace, no replay.
  if (!o.filtered_output.empty()) {
    if (o.fractions.size() != 1)
      throw encnet::argument_error("--filtered-output needs exactly one --fractions value");
    const encnet::TemporalTrace filtered =
        encnet::remove_encounters(trace, o.fractions.front(), parse_policy(o.policy));
    write_file(o.filtered_output,
               [&](std::ostream& os) { encnet::write_trace(os, filtered); });
    write_manifest("remove",
                   json{{"policy", o.policy}, {"fractions", o.fractions}}, {o.trace},
                   {o.filtered_output});
    std::cout << "remove: kept " << filtered.encounters.size() << " of "
              << trace.encounters.size() << " encounters -> " << o.filtered_output << '\n';
    return;
  }

  if (o.output.empty()) throw encnet::argument_error("give --output or --filtered-output");
  if (o.fractions.empty()) throw encnet::argument_error("give at least one --fractions value");

  encnet::EmulationConfig cfg;
  cfg.model = parse_model(o.model);
  cfg.expiry = o.expiry;
  cfg.transmission_rate = o.transmission_rate;
  cfg.sample = o.sample;
  cfg.seed = static_cast<std::uint64_t>(o.seed);
  cfg.threads = encnet::resolve_threads(o.threads);
  cfg.collect_curves = !o.curves_output.empty();

  const std::vector<encnet::RemovalOutcome> outcomes =
      encnet::removal_experiment(trace, o.fractions, parse_policy(o.policy), cfg);

  write_json_file(o.output, encnet::removal_outcomes_json(outcomes));
  std::vector<std::string> outputs{o.output};
  if (!o.curves_output.empty()) {
    std::vector<std::pair<double, std::vector<encnet::InjectionRun>>> by_fraction;
    by_fraction.reserve(outcomes.size());
    for (const encnet::RemovalOutcome& oc : outcomes)
      by_fraction.emplace_back(oc.fraction, oc.runs);
    write_file(o.curves_output,
               [&](std::ostream& os) { encnet::write_removal_curves(os, by_fraction); });
    outputs.push_back(o.curves_output);
  }

  json params{{"policy", o.policy},
              {"fractions", o.fractions},
              {"model", o.model},
              {"transmission_rate", o.transmission_rate},
              {"sample", o.sample},
              {"seed", o.seed}};
  if (cfg.model == encnet::DiffusionModel::sis) params["expiry"] = o.expiry;
  write_manifest("remove", params, {o.trace}, outputs);
  std::cout << "remove: " << o.fractions.size() << " fractions -> " << o.output << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Temporal encounter network toolkit"};
  app.set_version_flag("--version", encnet::version);
  app.require_subcommand(1);

  IngestOpts ingest_opts;
  CLI::App* ingest = app.add_subcommand("ingest", "Normalize a raw sighting log");
  ingest->add_option("--input", ingest_opts.input, "Sighting CSV: device_id,scanner_id,time")
      ->required();
  ingest->add_option("--output", ingest_opts.output, "Normalized sighting CSV")->required();
  ingest->callback([&] { run_ingest(ingest_opts); });

  SessionsOpts sessions_opts;
  CLI::App* sessions = app.add_subcommand("sessions", "Merge sightings into visit sessions");
  sessions->add_option("--input", sessions_opts.input, "Sighting CSV")->required();
  sessions->add_option("--output", sessions_opts.output, "Session CSV")->required();
  sessions->add_option("--gap", sessions_opts.gap, "Max gap between sightings of one session (s)")
      ->check(CLI::PositiveNumber);
  sessions
      ->add_option("--scan-period", sessions_opts.scan_period,
                   "Presence implied by one sighting (s)")
      ->check(CLI::PositiveNumber);
  sessions->callback([&] { run_sessions(sessions_opts); });

  EncountersOpts encounters_opts;
  CLI::App* encounters =
      app.add_subcommand("encounters", "Derive pairwise encounters from session overlaps");
  encounters->add_option("--sightings", encounters_opts.sightings,
                         "Sighting CSV (sessionized first)");
  encounters->add_option("--sessions", encounters_opts.sessions, "Session CSV");
  encounters->add_option("--output", encounters_opts.output, "Encounter trace file")->required();
  encounters->add_option("--gap", encounters_opts.gap, "Sessionization gap (s)")
      ->check(CLI::PositiveNumber);
  encounters->add_option("--scan-period", encounters_opts.scan_period, "Scan period (s)")
      ->check(CLI::PositiveNumber);
  encounters
      ->add_option("--merge-gap", encounters_opts.merge_gap,
                   "Merge same-pair encounters this close (s)")
      ->check(CLI::NonNegativeNumber);
  encounters->callback([&] { run_encounters(encounters_opts); });

  MetricsOpts metrics_opts;
  CLI::App* metrics = app.add_subcommand("metrics", "Aggregate-graph structural metrics");
  metrics->add_option("--trace", metrics_opts.trace, "Encounter trace file")->required();
  metrics->add_option("--output", metrics_opts.output, "Summary JSON")->required();
  metrics->add_option("--degree-output", metrics_opts.degree_output,
                      "Degree distribution CSV (k,count,C_k)");
  metrics->add_option("--threads", metrics_opts.threads,
                      "Worker threads (0 = ENCOUNTER_NET_THREADS or hardware)");
  metrics->callback([&] { run_metrics(metrics_opts); });

  TemporalOpts temporal_opts;
  CLI::App* temporal = app.add_subcommand("temporal", "Per-node and per-link temporal metrics");
  temporal->add_option("--sessions", temporal_opts.sessions, "Session CSV (for node stats)");
  temporal->add_option("--trace", temporal_opts.trace, "Encounter trace (for link stats)");
  temporal->add_option("--nodes-output", temporal_opts.nodes_output, "Node CSV: device_id,n_p,n_f");
  temporal->add_option("--links-output", temporal_opts.links_output, "Link CSV: a,b,l_p,l_f");
  temporal->callback([&] { run_temporal(temporal_opts); });

  FitOpts fit_opts;
  CLI::App* fit = app.add_subcommand("fit", "Fit a power-law tail to a sample column");
  fit->add_option("--input", fit_opts.input, "CSV with a header row")->required();
  fit->add_option("--column", fit_opts.column, "Value column name")->required();
  fit->add_option("--count-column", fit_opts.count_column,
                  "Optional count column (pre-binned data)");
  fit->add_option("--method", fit_opts.method, "ccdf_ls or mle")
      ->check(CLI::IsMember({"ccdf_ls", "mle"}));
  fit->add_option("--xmin", fit_opts.xmin, "Tail cutoff (default: smallest positive sample)")
      ->check(CLI::NonNegativeNumber);
  fit->add_option("--output", fit_opts.output, "Fit JSON")->required();
  fit->add_option("--ccdf-output", fit_opts.ccdf_output, "Tail CCDF CSV (x,p)");
  fit->callback([&] { run_fit(fit_opts); });

  GrowthOpts growth_opts;
  CLI::App* growth = app.add_subcommand("growth", "Availability-driven growth simulation");
  growth->add_option("--config", growth_opts.config, "Growth config JSON");
  growth->add_option("--trace-output", growth_opts.trace_output, "Simulated encounter trace")
      ->required();
  growth->add_option("--summary-output", growth_opts.summary_output,
                     "Structural summary JSON of the simulated graph");
  growth->add_option("--degree-output", growth_opts.degree_output, "Degree distribution CSV");
  growth->add_option("--population", growth_opts.population, "Node count");
  growth->add_option("--steps", growth_opts.steps, "Simulation steps");
  growth->add_option("--freq-exponent", growth_opts.freq_exponent, "Activation tail exponent");
  growth->add_option("--presence-exponent", growth_opts.presence_exponent,
                     "Presence tail exponent");
  growth->add_option("--freq-scale", growth_opts.freq_scale, "Activation probability scale");
  growth->add_option("--presence-scale", growth_opts.presence_scale, "Presence factor scale");
  growth->add_option("--step-seconds", growth_opts.step_seconds, "Seconds per step");
  growth->add_option("--seed", growth_opts.seed, "Random seed");
  growth->add_option("--threads", growth_opts.threads, "Worker threads for the summary");
  growth->callback([&] { run_growth(growth_opts); });

  EmulateOpts emulate_opts;
  CLI::App* emulate = app.add_subcommand("emulate", "Replay si/sis diffusion over a trace");
  emulate->add_option("--trace", emulate_opts.trace, "Encounter trace file")->required();
  emulate->add_option("--model", emulate_opts.model, "si or sis")
      ->check(CLI::IsMember({"si", "sis"}));
  emulate->add_option("--expiry", emulate_opts.expiry, "sis infection lifetime (s)");
  emulate->add_option("--transmission-rate", emulate_opts.transmission_rate,
                      "Per-encounter transmission probability in (0,1]");
  emulate->add_option("--injection-device", emulate_opts.injection_device,
                      "Single-injection mode: device id");
  emulate->add_option("--injection-time", emulate_opts.injection_time,
                      "Single-injection mode: start time");
  emulate->add_option("--sample", emulate_opts.sample,
                      "Sweep: cap injections at this many (0 = all)")
      ->check(CLI::NonNegativeNumber);
  emulate->add_option("--seed", emulate_opts.seed,
                      "Subsampling seed, also drives sub-1 transmission draws");
  emulate->add_option("--output", emulate_opts.output, "Result JSON")->required();
  emulate->add_option("--curves-output", emulate_opts.curves_output, "Infection curve CSV");
  emulate->add_option("--threads", emulate_opts.threads, "Worker threads");
  emulate->callback([&] {
    emulate_opts.has_injection_time = emulate->count("--injection-time") > 0;
    run_emulate(emulate_opts);
  });

  RemoveOpts remove_opts;
  CLI::App* remove = app.add_subcommand(
      "remove", "Remove encounters by duration rank, optionally replaying diffusion");
  remove->add_option("--trace", remove_opts.trace, "Encounter trace file")->required();
  remove->add_option("--policy", remove_opts.policy, "briefest or most_persistent")
      ->check(CLI::IsMember({"briefest", "most_persistent"}));
  remove
      ->add_option("--fractions", remove_opts.fractions,
                   "Removal fractions in [0,1], comma separated")
      ->delimiter(',')
      ->required();
  remove->add_option("--model", remove_opts.model, "si or sis")
      ->check(CLI::IsMember({"si", "sis"}));
  remove->add_option("--expiry", remove_opts.expiry, "sis infection lifetime (s)");
  remove->add_option("--transmission-rate", remove_opts.transmission_rate,
                     "Per-encounter transmission probability in (0,1]");
  remove->add_option("--sample", remove_opts.sample, "Cap injections (0 = all)")
      ->check(CLI::NonNegativeNumber);
  remove->add_option("--seed", remove_opts.seed, "Subsampling seed");
  remove->add_option("--output", remove_opts.output, "Per-fraction outcome JSON");
  remove->add_option("--filtered-output", remove_opts.filtered_output,
                     "Write the filtered trace instead of replaying");
  remove->add_option("--curves-output", remove_opts.curves_output, "Infection curve CSV");
  remove->add_option("--threads", remove_opts.threads, "Worker threads");
  remove->callback([&] { run_remove(remove_opts); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const encnet::argument_error& e) {
    std::cerr << "encounter-net " << g_stage << ": " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "encounter-net " << g_stage << ": " << e.what() << '\n';
    return 1;
  }
  return 0;
}
