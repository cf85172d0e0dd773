// Copyright 2026 The Kappanet Authors.
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

// Command-line entry point: parse -> run -> structured report.
//
// Reports are JSON with a stable field order; identical inputs produce
// byte-identical reports unless --timings adds wall-clock fields.  Network
// inputs default to stdin so commands compose in pipelines:
//
//   kappanet gen and --n 22 --eps 0.1 | kappanet abstract --eps 0.1 \
//     | kappanet predict

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "kappanet/abstraction.hpp"
#include "kappanet/completeness.hpp"
#include "kappanet/errors.hpp"
#include "kappanet/experiment.hpp"
#include "kappanet/json_io.hpp"
#include "kappanet/oracle.hpp"
#include "kappanet/predict.hpp"
#include "kappanet/probinfer.hpp"
#include "kappanet/scomplete.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace kappanet;

constexpr int kExitValidation = 2;
constexpr int kExitCap = 3;

struct LoadedFile {
  std::string path;
  std::string digest;
  std::string content;
};

std::string fnv1a_digest(const std::string& bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char byte : bytes) {
    hash ^= byte;
    hash *= 0x100000001b3ull;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(hash));
  return buffer;
}

LoadedFile slurp(const std::string& path) {
  LoadedFile file;
  file.path = path;
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    file.content = buffer.str();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    file.content = buffer.str();
  }
  file.digest = fnv1a_digest(file.content);
  return file;
}

json input_record(const LoadedFile& file) {
  json record;
  record["path"] = file.path;
  record["digest"] = file.digest;
  return record;
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + out_path + "'");
  out << text;
}

// Shared state assembled by the subcommand handlers.
struct Report {
  json body;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  explicit Report(const std::string& command) { body["command"] = command; }

  void finish(bool timings, const std::string& out_path) {
    if (timings) {
      body["elapsed_sec"] =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    write_output(body.dump(2) + "\n", out_path);
  }
};

json plsets_to_json(const PlausibleSetMap& plsets, const NetworkStructure& structure) {
  json result = json::object();
  for (const auto& [name, values] : plsets.named(structure)) {
    result[name] = values;
  }
  return result;
}

json believed_to_json(const PlausibleSetMap& plsets, const NetworkStructure& structure) {
  json result = json::object();
  for (const auto& [name, value] : believed_nodes(plsets, structure)) {
    result[name] = value;
  }
  return result;
}

KappaNetwork require_kappa(AnyNetwork net) {
  if (KappaNetwork* kappa = std::get_if<KappaNetwork>(&net)) return std::move(*kappa);
  throw ValidationError("this command needs a kappa-quantified network");
}

ProbNetwork require_prob(AnyNetwork net) {
  if (ProbNetwork* prob = std::get_if<ProbNetwork>(&net)) return std::move(*prob);
  throw ValidationError("this command needs a probability-quantified network");
}

std::map<std::string, std::string> load_assignment(const std::string& path, json& inputs,
                                                   const char* label) {
  if (path.empty()) return {};
  LoadedFile file = slurp(path);
  inputs[label] = input_record(file);
  return parse_assignment(file.content);
}

std::string trace_csv(const std::vector<TraceRow>& trace) {
  std::ostringstream out;
  out.precision(12);
  out << "step,lower,upper,elapsed_sec\n";
  for (const TraceRow& row : trace) {
    out << row.step << ',' << row.lower << ',' << row.upper << ',' << row.elapsed_sec << '\n';
  }
  return out.str();
}

json bounds_to_json(const AnytimeBounds& bounds) {
  json result;
  result["lower"] = bounds.lower;
  result["upper"] = bounds.upper;
  result["processed"] = bounds.processed;
  result["residual"] = bounds.residual;
  return result;
}

json lm_to_json(const LossOfMass& lm) {
  json per = json::object();
  for (const auto& [name, lost] : lm.per_variable) per[name] = lost;
  json result;
  result["average"] = lm.average;
  result["per_variable"] = std::move(per);
  return result;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inference for causal networks ranked with order-of-magnitude probabilities"};
  app.require_subcommand(1);

  bool timings = false;
  std::uint64_t world_cap = OracleOptions{}.max_worlds;
  app.add_flag("--timings", timings, "Include wall-clock fields in reports");
  app.add_option("--cap", world_cap, "Joint-space enumeration guard (worlds)");

  // predict
  auto* cmd_predict = app.add_subcommand("predict", "Plausible values per node in one sweep");
  std::string predict_net = "-", predict_evidence, predict_actions, predict_out;
  cmd_predict->add_option("--net", predict_net, "Network file (default stdin)");
  cmd_predict->add_option("--evidence", predict_evidence, "Evidence JSON map (roots only)");
  cmd_predict->add_option("--actions", predict_actions, "Action JSON map");
  cmd_predict->add_option("-o,--out", predict_out, "Report path (default stdout)");

  // scomplete
  auto* cmd_scomplete = app.add_subcommand("scomplete", "Stratified completion of the sweep");
  std::string sc_net = "-", sc_evidence, sc_actions, sc_out;
  std::uint64_t cs_cap = ScompleteOptions{}.cs_instantiation_cap;
  cmd_scomplete->add_option("--net", sc_net, "Network file (default stdin)");
  cmd_scomplete->add_option("--evidence", sc_evidence, "Evidence JSON map (roots only)");
  cmd_scomplete->add_option("--actions", sc_actions, "Action JSON map");
  cmd_scomplete->add_option("--cs-cap", cs_cap, "Blocking-set instantiation cap");
  cmd_scomplete->add_option("-o,--out", sc_out, "Report path (default stdout)");

  // check
  auto* cmd_check = app.add_subcommand("check", "Structural completeness certificate");
  std::string check_net = "-", check_believed, check_out;
  cmd_check->add_option("--net", check_net, "Network file (default stdin)");
  cmd_check->add_option("--believed", check_believed,
                        "JSON array of believed variables (default: from a sweep)");
  cmd_check->add_option("-o,--out", check_out, "Report path (default stdout)");

  // abstract
  auto* cmd_abstract = app.add_subcommand("abstract", "Rank abstraction of a probability network");
  std::string abs_net = "-", abs_out;
  double abs_eps = 0.1;
  cmd_abstract->add_option("--net", abs_net, "Probability network file (default stdin)");
  cmd_abstract->add_option("--eps", abs_eps, "Stratification parameter in (0,1)")->required();
  cmd_abstract->add_option("-o,--out", abs_out, "Output network path (default stdout)");

  // gen
  auto* cmd_gen = app.add_subcommand("gen", "Error-analysis network generators");
  std::string gen_kind, gen_out;
  int gen_n = 1;
  double gen_eps = 0.1;
  cmd_gen->add_option("kind", gen_kind, "chain | and")
      ->required()
      ->check(CLI::IsMember({"chain", "and"}));
  cmd_gen->add_option("--n", gen_n, "Chain length / AND fan-in")->required();
  cmd_gen->add_option("--eps", gen_eps, "Quantification parameter in (0,1)")->required();
  cmd_gen->add_option("-o,--out", gen_out, "Output network path (default stdout)");

  // oracle
  auto* cmd_oracle = app.add_subcommand("oracle", "Exact rank semantics by enumeration");
  std::string oracle_mode = "plset", oracle_net = "-", oracle_given, oracle_assign, oracle_var,
              oracle_world, oracle_out;
  cmd_oracle->add_option("mode", oracle_mode, "plset | kappa | joint")
      ->check(CLI::IsMember({"plset", "kappa", "joint"}));
  cmd_oracle->add_option("--net", oracle_net, "Network file (default stdin)");
  cmd_oracle->add_option("--given", oracle_given, "Conditioning assignment \"var=val[,...]\"");
  cmd_oracle->add_option("--assign", oracle_assign, "Event assignment \"var=val[,...]\"");
  cmd_oracle->add_option("--var", oracle_var, "Restrict plset output to one variable");
  cmd_oracle->add_option("--world", oracle_world, "World JSON map (joint mode)");
  cmd_oracle->add_option("-o,--out", oracle_out, "Report path (default stdout)");

  // infer
  auto* cmd_infer = app.add_subcommand("infer", "Probabilistic inference");
  std::string infer_mode, infer_net = "-", infer_query, infer_evidence, infer_trace, infer_out;
  double infer_eps = 0.1;
  std::uint64_t infer_budget = 0;
  std::string infer_strategy = "none";
  cmd_infer->add_option("mode", infer_mode, "exact | bounded | search")
      ->required()
      ->check(CLI::IsMember({"exact", "bounded", "search"}));
  cmd_infer->add_option("--net", infer_net, "Probability network file (default stdin)");
  cmd_infer->add_option("--query", infer_query, "Target conjunction \"var=val[,var=val]\"")
      ->required();
  cmd_infer->add_option("--evidence", infer_evidence, "Evidence JSON map");
  cmd_infer->add_option("--eps", infer_eps, "Pruning parameter in (0,1)");
  cmd_infer->add_option("--budget", infer_budget, "Max subproblems (0 = unbounded)");
  cmd_infer->add_option("--strategy", infer_strategy, "Search pruning: none|preprune|lookahead")
      ->check(CLI::IsMember({"none", "preprune", "lookahead"}));
  std::string infer_cutset;
  cmd_infer->add_option("--cutset", infer_cutset,
                        "Comma-separated conditioning set (default: heuristic)");
  cmd_infer->add_option("--trace", infer_trace, "Write the anytime trace CSV here");
  cmd_infer->add_option("-o,--out", infer_out, "Report path (default stdout)");

  // experiment
  auto* cmd_experiment = app.add_subcommand("experiment", "eps-versus-lost-mass study");
  std::string exp_config = "-", exp_out;
  std::optional<std::uint64_t> exp_seed;
  cmd_experiment->add_option("--config", exp_config, "Config JSON (default stdin)");
  cmd_experiment->add_option("--seed", exp_seed, "Override the config seed");
  cmd_experiment->add_option("-o,--out", exp_out, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);

    OracleOptions oracle_options;
    oracle_options.max_worlds = world_cap;

    if (*cmd_predict) {
      Report report("predict");
      LoadedFile net_file = slurp(predict_net);
      json inputs;
      inputs["net"] = input_record(net_file);
      Evidence evidence = load_assignment(predict_evidence, inputs, "evidence");
      ActionSet actions = load_assignment(predict_actions, inputs, "actions");
      report.body["inputs"] = std::move(inputs);

      KappaNetwork net = require_kappa(parse_network(net_file.content));
      PredictResult result = predict(net, evidence, actions);
      const KappaNetwork modified = apply_actions(net, actions);
      const NetworkStructure& structure = modified.structure();

      json results;
      results["plausible_sets"] = plsets_to_json(result.plsets, structure);
      results["believed"] = believed_to_json(result.plsets, structure);
      results["provenance"] = "approximate";
      report.body["results"] = std::move(results);
      json counters;
      counters["table_lookups"] = result.ops.table_lookups;
      counters["edge_visits"] = result.ops.edge_visits;
      report.body["counters"] = std::move(counters);
      report.finish(timings, predict_out);
    } else if (*cmd_scomplete) {
      Report report("scomplete");
      LoadedFile net_file = slurp(sc_net);
      json inputs;
      inputs["net"] = input_record(net_file);
      Evidence evidence = load_assignment(sc_evidence, inputs, "evidence");
      ActionSet actions = load_assignment(sc_actions, inputs, "actions");
      report.body["inputs"] = std::move(inputs);

      KappaNetwork net = require_kappa(parse_network(net_file.content));
      ScompleteOptions options;
      options.cs_instantiation_cap = cs_cap;
      ScompleteResult result = scomplete(net, evidence, actions, options);
      const KappaNetwork modified = apply_actions(net, actions);
      const NetworkStructure& structure = modified.structure();

      json results;
      results["plausible_sets"] = plsets_to_json(result.plsets, structure);
      results["believed"] = believed_to_json(result.plsets, structure);
      results["provenance"] = result.plsets.provenance() == Provenance::complete_certified
                                  ? "complete-certified"
                                  : "approximate";
      results["stages"] = result.stages.size();
      results["capped"] = result.capped;
      report.body["results"] = std::move(results);
      report.finish(timings, sc_out);
    } else if (*cmd_check) {
      Report report("check");
      LoadedFile net_file = slurp(check_net);
      json inputs;
      inputs["net"] = input_record(net_file);

      KappaNetwork net = require_kappa(parse_network(net_file.content));
      std::vector<std::string> believed;
      if (!check_believed.empty()) {
        LoadedFile file = slurp(check_believed);
        inputs["believed"] = input_record(file);
        std::istringstream in(file.content);
        believed = parse_name_list(in);
      } else {
        PredictResult result = predict(net);
        for (const auto& [name, value] : believed_nodes(result.plsets, net.structure())) {
          believed.push_back(name);
        }
      }
      report.body["inputs"] = std::move(inputs);

      CompletenessCertificate cert = check_complete(net.structure(), believed);
      json results;
      results["verdict"] = cert.complete ? "complete" : "possibly-incomplete";
      results["believed"] = believed;
      if (!cert.complete) results["witness_cycle"] = cert.witness_cycle;
      results["definite"] = is_definite(net);
      report.body["results"] = std::move(results);
      json counters;
      counters["edge_visits"] = cert.edge_visits;
      report.body["counters"] = std::move(counters);
      report.finish(timings, check_out);
    } else if (*cmd_abstract) {
      LoadedFile net_file = slurp(abs_net);
      ProbNetwork net = require_prob(parse_network(net_file.content));
      AbstractionResult result = epsilon_omp(net, Epsilon(abs_eps));
      for (const RowShift& shift : result.shifted_rows) {
        std::cerr << "note: row " << shift.row << " of table '" << shift.child
                  << "' shifted down by " << shift.shift << " to restore a zero minimum\n";
      }
      write_output(serialize_network(result.network), abs_out);
    } else if (*cmd_gen) {
      ProbNetwork net = gen_kind == "chain" ? generate_chain(gen_n, Epsilon(gen_eps))
                                            : generate_and(gen_n, Epsilon(gen_eps));
      write_output(serialize_network(net), gen_out);
    } else if (*cmd_oracle) {
      Report report("oracle " + oracle_mode);
      LoadedFile net_file = slurp(oracle_net);
      json inputs;
      inputs["net"] = input_record(net_file);
      report.body["inputs"] = std::move(inputs);
      KappaNetwork net = require_kappa(parse_network(net_file.content));

      auto to_map = [](const std::string& text) {
        std::map<std::string, std::string> map;
        if (text.empty()) return map;
        for (const auto& [name, value] : parse_query(text).target) map[name] = value;
        return map;
      };

      json results;
      if (oracle_mode == "plset") {
        std::map<std::string, std::string> given = to_map(oracle_given);
        PlausibleSetMap plsets = exact_plausible_sets(net, given, oracle_options);
        json sets = plsets_to_json(plsets, net.structure());
        if (!oracle_var.empty()) {
          net.structure().require_variable(oracle_var);
          json narrowed = json::object();
          narrowed[oracle_var] = sets[oracle_var];
          sets = std::move(narrowed);
        }
        results["plausible_sets"] = std::move(sets);
      } else if (oracle_mode == "kappa") {
        if (oracle_assign.empty()) throw ValidationError("kappa mode needs --assign");
        Kappa k = marginal_kappa(net, to_map(oracle_assign), to_map(oracle_given),
                                 oracle_options);
        results["kappa"] = k.is_infinite() ? json("inf") : json(k.value());
      } else {
        if (oracle_world.empty()) throw ValidationError("joint mode needs --world");
        LoadedFile file = slurp(oracle_world);
        Kappa k = joint_kappa(net, parse_assignment(file.content));
        results["kappa"] = k.is_infinite() ? json("inf") : json(k.value());
      }
      report.body["results"] = std::move(results);
      report.finish(timings, oracle_out);
    } else if (*cmd_infer) {
      Report report("infer " + infer_mode);
      LoadedFile net_file = slurp(infer_net);
      json inputs;
      inputs["net"] = input_record(net_file);
      Query query = parse_query(infer_query);
      query.evidence = load_assignment(infer_evidence, inputs, "evidence");
      report.body["inputs"] = std::move(inputs);
      report.body["query"] = infer_query;

      ProbNetwork net = require_prob(parse_network(net_file.content));
      BudgetOptions budget;
      if (infer_budget > 0) budget.max_subproblems = infer_budget;

      json results;
      if (infer_mode == "exact") {
        results["probability"] = exact_query(net, query, oracle_options);
      } else if (infer_mode == "bounded") {
        std::optional<std::vector<std::string>> cutset;
        if (!infer_cutset.empty()) {
          cutset.emplace();
          std::size_t pos = 0;
          while (pos <= infer_cutset.size()) {
            std::size_t comma = infer_cutset.find(',', pos);
            cutset->push_back(infer_cutset.substr(
                pos, comma == std::string::npos ? std::string::npos : comma - pos));
            if (comma == std::string::npos) break;
            pos = comma + 1;
          }
        }
        BoundedConditioningResult result =
            bounded_conditioning(net, query, Epsilon(infer_eps), budget, oracle_options, cutset);
        results["bounds"] = bounds_to_json(result.bounds);
        results["lm"] = lm_to_json(result.lm);
        results["cutset"] = result.cutset;
        std::uint64_t pruned = 0;
        for (const CutsetInstance& instance : result.instances) {
          if (instance.status == InstanceStatus::pruned) ++pruned;
        }
        results["instances_total"] = result.instances.size();
        results["instances_pruned"] = pruned;
        results["warnings"] = result.warnings;
        if (!infer_trace.empty()) write_output(trace_csv(result.trace), infer_trace);
      } else {
        SearchStrategy strategy = infer_strategy == "none"       ? SearchStrategy::none
                                  : infer_strategy == "preprune" ? SearchStrategy::preprune
                                                                 : SearchStrategy::lookahead;
        PooleSearchResult result =
            poole_search(net, query, Epsilon(infer_eps), budget, strategy);
        results["bounds"] = bounds_to_json(result.bounds);
        json stats;
        stats["expansions"] = result.stats.expansions;
        stats["leaves"] = result.stats.leaves;
        stats["pruned_values"] = result.stats.pruned_values;
        stats["pruned_nodes"] = result.stats.pruned_nodes;
        stats["pruned_mass"] = result.stats.pruned_mass;
        results["stats"] = std::move(stats);
        results["warnings"] = result.warnings;
        if (!infer_trace.empty()) write_output(trace_csv(result.trace), infer_trace);
      }
      report.body["results"] = std::move(results);
      report.finish(timings, infer_out);
    } else if (*cmd_experiment) {
      LoadedFile config_file = slurp(exp_config);
      std::istringstream in(config_file.content);
      ExperimentConfig config = parse_experiment_config(in);
      if (exp_seed) config.seed = *exp_seed;
      write_output(experiment_csv(run_experiment(config)), exp_out);
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 1;
  } catch (const CapExceededError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}
