// Copyright 2026 The ctx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ctx/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <memory>
#include <sstream>

#include "ctx/composition.hpp"
#include "ctx/document.hpp"
#include "ctx/error.hpp"
#include "ctx/monotone.hpp"
#include "ctx/nc_model.hpp"
#include "ctx/quantum.hpp"
#include "ctx/sampling.hpp"
#include "ctx/simulability.hpp"

namespace ctx {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DocumentError("cannot read file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Re-raises a document error with the file name in front of its message.
[[noreturn]] void rethrow_with_path(const std::string& path, const DocumentError& e) {
  std::string msg = e.what();
  const std::string prefix = "document error: ";
  if (msg.rfind(prefix, 0) == 0) msg.erase(0, prefix.size());
  throw DocumentError(path + ": " + msg);
}

Scenario read_scenario(const std::string& path) {
  try {
    return load_scenario(read_file(path));
  } catch (const DocumentError& e) {
    rethrow_with_path(path, e);
  }
}

Behavior read_behavior(const std::string& path) {
  try {
    return load_behavior(read_file(path));
  } catch (const DocumentError& e) {
    rethrow_with_path(path, e);
  }
}

FreeOperation read_operation(const std::string& path) {
  try {
    return load_free_operation(read_file(path));
  } catch (const DocumentError& e) {
    rethrow_with_path(path, e);
  }
}

/// Rejects behaviors that fail validation, naming the first violation.
void require_valid(const Scenario& s, const Behavior& b, double tol) {
  b.require_shape(s);
  const ValidationReport r = validate_behavior(s, b, tol);
  if (!r.ok()) {
    throw InvalidArgument("behavior is not valid in the scenario: " + r.violations.front().constraint + " " +
                          r.violations.front().location);
  }
}

void require_valid(const Scenario& s, double tol) {
  const ValidationReport r = validate_scenario(s, tol);
  if (!r.ok()) {
    throw InvalidArgument("scenario is not valid: " + r.violations.front().constraint + " " +
                          r.violations.front().location);
  }
}

Json model_json(const NcModel& m) {
  Json j;
  Json states = Json::array();
  for (const auto& l : m.ontic_states) states.push_back(l.responses);
  j["ontic_states"] = std::move(states);
  j["mus"] = m.mus;
  return j;
}

Json verdict_json(const NcVerdict& v) {
  Json j;
  j["contextual"] = v.contextual;
  if (v.contextual) {
    j["violated"] = v.violated_label();
    if (v.violated_inequality) j["violation"] = v.violation;
    if (v.certificate) {
      Json c;
      c["eq"] = v.certificate->eq;
      c["ineq"] = v.certificate->ineq;
      c["upper"] = v.certificate->upper;
      j["certificate"] = std::move(c);
    }
  } else {
    j["model"] = model_json(*v.model);
  }
  return j;
}

Json witness_json(const SimulationWitness& w) {
  Json j;
  j["q_M"] = w.q_M;
  j["q_O"] = w.q_O;
  j["residual"] = w.residual;
  j["target_independent"] = w.target_independent;
  j["verbatim"] = w.verbatim;
  return j;
}

std::vector<std::string> word_names(const std::vector<Generator>& word) {
  std::vector<std::string> out;
  for (Generator g : word) out.emplace_back(to_string(g));
  return out;
}

struct Globals {
  double tolerance = kDefaultTolerance;
  std::string format = "json";
  std::string output;
  std::uint64_t seed = 0;
};

struct Result {
  Json json;
  std::string summary;
};

using Handler = std::function<Result()>;

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Prepare-and-measure contextuality toolkit", "ctx"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--tolerance", g.tolerance, "Absolute tolerance for probability checks")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--format", g.format, "Output format; text adds a summary on stderr")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--output", g.output, "Write the JSON result to FILE instead of stdout");
  app.add_option("--seed", g.seed, "Seed for randomized commands");

  Handler handler;
  std::string scenario_path, behavior_path, scenario2_path, behavior2_path, op_path, sim_path, target_path;
  std::vector<std::size_t> keep;
  std::size_t n = 1;
  bool list = false;

  auto* validate = app.add_subcommand("validate", "Validate a scenario and optionally a behavior");
  validate->add_option("--scenario", scenario_path)->required();
  validate->add_option("--behavior", behavior_path);
  validate->callback([&] {
    handler = [&] {
      const Scenario s = read_scenario(scenario_path);
      Result r;
      const ValidationReport rs = validate_scenario(s, g.tolerance);
      r.json["scenario"] = to_json(rs);
      bool ok = rs.ok();
      if (!behavior_path.empty()) {
        const Behavior b = read_behavior(behavior_path);
        const ValidationReport rb = validate_behavior(s, b, g.tolerance);
        r.json["behavior"] = to_json(rb);
        ok = ok && rb.ok();
      }
      r.json["ok"] = ok;
      r.summary = ok ? "valid" : "invalid";
      return r;
    };
  });

  auto* check = app.add_subcommand("check", "Decide noncontextuality of a behavior");
  check->add_option("--scenario", scenario_path)->required();
  check->add_option("--behavior", behavior_path)->required();
  check->callback([&] {
    handler = [&] {
      const Scenario s = read_scenario(scenario_path);
      const Behavior b = read_behavior(behavior_path);
      require_valid(s, g.tolerance);
      require_valid(s, b, g.tolerance);
      const NcVerdict v = is_noncontextual(s, b, g.tolerance);
      Result r{verdict_json(v), v.contextual ? "contextual (" + v.violated_label() + ")" : "noncontextual"};
      return r;
    };
  });

  auto* distance = app.add_subcommand("distance", "l1-contextuality distance of a behavior");
  distance->add_option("--scenario", scenario_path)->required();
  distance->add_option("--behavior", behavior_path)->required();
  distance->callback([&] {
    handler = [&] {
      const Scenario s = read_scenario(scenario_path);
      const Behavior b = read_behavior(behavior_path);
      require_valid(s, g.tolerance);
      require_valid(s, b, g.tolerance);
      const L1Projection p = l1_projection(s, b);
      Result r;
      r.json["d"] = p.distance;
      r.json["nearest"] = to_json(p.nearest);
      r.summary = "d = " + std::to_string(p.distance);
      return r;
    };
  });

  auto* apply = app.add_subcommand("apply", "Apply a free operation");
  apply->add_option("--scenario", scenario_path)->required();
  apply->add_option("--behavior", behavior_path)->required();
  apply->add_option("--operation", op_path)->required();
  apply->callback([&] {
    handler = [&] {
      const Scenario s = read_scenario(scenario_path);
      const Behavior b = read_behavior(behavior_path);
      const FreeOperation t = read_operation(op_path);
      require_valid(s, g.tolerance);
      require_valid(s, b, g.tolerance);
      const ValidationReport rt = validate_free_operation(t, g.tolerance);
      if (!rt.ok()) throw InvalidArgument("free operation is not stochastic: " + rt.violations.front().constraint + " " + rt.violations.front().location);
      const TransportReport tr = transport_equivalences(t, s);
      const Transformed res = apply_free_operation(t, s, b);
      Result r;
      r.json["scenario"] = to_json(res.scenario);
      r.json["behavior"] = to_json(res.behavior);
      Json transport = Json::array();
      for (const auto& e : tr.prep) transport.push_back({{"kind", "prep"}, {"source", e.source}, {"status", to_string(e.status)}});
      for (const auto& e : tr.meas) transport.push_back({{"kind", "meas"}, {"source", e.source}, {"status", to_string(e.status)}});
      r.json["transport"] = std::move(transport);
      r.summary = "applied; " + std::to_string(res.scenario.prep_equivs.size()) + " prep equivalences carried";
      return r;
    };
  });

  auto* erase = app.add_subcommand("erase", "Discard all measurements except --keep");
  erase->add_option("--scenario", scenario_path)->required();
  erase->add_option("--behavior", behavior_path)->required();
  erase->add_option("--keep", keep, "Measurement indices to keep")->required()->delimiter(',');
  erase->callback([&] {
    handler = [&] {
      const Scenario s = read_scenario(scenario_path);
      const Behavior b = read_behavior(behavior_path);
      require_valid(s, g.tolerance);
      require_valid(s, b, g.tolerance);
      const Transformed res = erase_measurements(s, b, keep);
      Result r;
      r.json["scenario"] = to_json(res.scenario);
      r.json["behavior"] = to_json(res.behavior);
      r.summary = "kept " + std::to_string(keep.size()) + " measurements";
      return r;
    };
  });

  auto* compose = app.add_subcommand("compose", "Compose two scenarios (and behaviors) with the block sum");
  compose->add_option("--scenario", scenario_path)->required();
  compose->add_option("--scenario2", scenario2_path)->required();
  auto* b1 = compose->add_option("--behavior", behavior_path);
  auto* b2 = compose->add_option("--behavior2", behavior2_path);
  b1->needs(b2);
  b2->needs(b1);
  compose->callback([&] {
    handler = [&] {
      const Scenario s1 = read_scenario(scenario_path);
      const Scenario s2 = read_scenario(scenario2_path);
      require_valid(s1, g.tolerance);
      require_valid(s2, g.tolerance);
      Result r;
      const Scenario s = compose_scenarios(s1, s2);
      r.json["scenario"] = to_json(s);
      r.summary = "composed scenario (" + std::to_string(s.n_preps) + ", " + std::to_string(s.n_meas) + ", " +
                  std::to_string(s.n_outcomes) + ")";
      if (!behavior_path.empty()) {
        const Behavior x1 = read_behavior(behavior_path);
        const Behavior x2 = read_behavior(behavior2_path);
        require_valid(s1, x1, g.tolerance);
        require_valid(s2, x2, g.tolerance);
        r.json["behavior"] = to_json(compose_behaviors(x1, x2));
      }
      return r;
    };
  });

  auto* power = app.add_subcommand("power", "n-fold block sum of a scenario (and behavior)");
  power->add_option("--scenario", scenario_path)->required();
  power->add_option("--behavior", behavior_path);
  power->add_option("-n,--n", n, "Number of copies")->required()->check(CLI::PositiveNumber);
  power->callback([&] {
    handler = [&] {
      const Scenario s = read_scenario(scenario_path);
      require_valid(s, g.tolerance);
      Result r;
      const Scenario p = power_scenario(s, n);
      r.json["scenario"] = to_json(p);
      if (!behavior_path.empty()) {
        const Behavior b = read_behavior(behavior_path);
        require_valid(s, b, g.tolerance);
        r.json["behavior"] = to_json(power_behavior(b, n));
      }
      r.summary = "power " + std::to_string(n);
      return r;
    };
  });

  auto* simulate = app.add_subcommand("simulate", "Find a classical simulation of --target by --simulating");
  simulate->add_option("--simulating", sim_path)->required();
  simulate->add_option("--target", target_path)->required();
  simulate->add_option("--preps-scenario", scenario_path, "Scenario of the shared preparations (optional)");
  simulate->callback([&] {
    handler = [&] {
      const Behavior bn = read_behavior(sim_path);
      const Behavior bm = read_behavior(target_path);
      const SimulationResult res = find_simulation(bn, bm);
      Result r;
      r.json["feasible"] = res.feasible;
      if (res.witness) {
        r.json["witness"] = witness_json(*res.witness);
        if (res.witness->target_independent) {
          r.json["free_operation"] = to_json(simulation_to_free_operation(*res.witness, bn.n_preps()));
        } else {
          Json chain = Json::array();
          for (const auto& t : simulation_to_free_operations(*res.witness, bn.n_preps())) chain.push_back(to_json(t));
          r.json["free_operations"] = std::move(chain);
        }
      } else {
        r.json["infeasible_targets"] = res.infeasible_targets;
      }
      r.summary = res.feasible ? "simulable" : "not simulable";
      return r;
    };
  });

  auto* secondary = app.add_subcommand("secondary", "Secondary preparations restoring the equivalences");
  secondary->add_option("--scenario", scenario_path)->required();
  secondary->add_option("--behavior", behavior_path)->required();
  secondary->callback([&] {
    handler = [&] {
      const Scenario s = read_scenario(scenario_path);
      const Behavior b = read_behavior(behavior_path);
      require_valid(s, g.tolerance);
      b.require_shape(s);
      const SecondaryResult res = secondary_procedures(s, b, g.tolerance);
      Result r;
      r.json["weights"] = res.operation.q_P;
      r.json["objective"] = res.objective;
      r.json["behavior"] = to_json(res.behavior);
      r.json["free_operation"] = to_json(res.operation);
      r.summary = "max total-variation change " + std::to_string(res.objective);
      return r;
    };
  });

  auto* vertices = app.add_subcommand("vertices", "Enumerate behavior-polytope vertices");
  vertices->add_option("--scenario", scenario_path)->required();
  vertices->add_flag("--list", list, "Include every vertex and its verdict");
  vertices->callback([&] {
    handler = [&] {
      const Scenario s = read_scenario(scenario_path);
      require_valid(s, g.tolerance);
      const std::vector<Behavior> vs = enumerate_behavior_vertices(s);
      std::size_t ctx_count = 0;
      Json listing = Json::array();
      for (const auto& v : vs) {
        const NcVerdict verdict = is_noncontextual(s, v, g.tolerance);
        ctx_count += verdict.contextual ? 1 : 0;
        if (list) {
          Json o;
          o["behavior"] = v.to_nested();
          o["contextual"] = verdict.contextual;
          if (verdict.contextual) o["violated"] = verdict.violated_label();
          listing.push_back(std::move(o));
        }
      }
      Result r;
      r.json["count"] = vs.size();
      r.json["contextual"] = ctx_count;
      if (list) r.json["vertices"] = std::move(listing);
      r.summary = std::to_string(vs.size()) + " vertices, " + std::to_string(ctx_count) + " contextual";
      return r;
    };
  });

  auto* demo = app.add_subcommand("quantum-demo", "Canonical qubit realization of the simplest scenario");
  demo->callback([&] {
    handler = [&] {
      const Scenario s = make_simplest_scenario();
      const QuantumRealization q = canonical_simplest_realization();
      const Behavior b = behavior_from_quantum(q);
      const InequalitySet h = simplest_scenario_inequalities();
      const std::vector<double> vals = evaluate_inequalities(h, b);
      const NcVerdict v = is_noncontextual(s, b, g.tolerance);
      Result r;
      r.json["realization"] = to_json(q);
      r.json["equivalences"] = to_json(verify_quantum_equivalences(q, s));
      r.json["behavior"] = to_json(b);
      Json hs;
      for (std::size_t f = 0; f < h.n_nontrivial; ++f) hs[h.functionals[f].label] = vals[f];
      r.json["inequalities"] = std::move(hs);
      r.json["contextual"] = v.contextual;
      r.json["violated"] = v.violated_label();
      r.json["d"] = l1_distance(s, b);
      r.summary = "canonical behavior: " + std::string(v.contextual ? "contextual, " : "noncontextual, ") +
                  v.violated_label() + " = " + std::to_string(v.violation);
      return r;
    };
  });

  auto* witness = app.add_subcommand("witness", "Quantum violations of every facet of the n-fold simplest scenario");
  witness->add_option("-n,--n", n, "Number of blocks")->required()->check(CLI::PositiveNumber);
  witness->callback([&] {
    handler = [&] {
      const std::vector<FacetWitness> ws = witness_all_facets(n);
      Result r;
      Json facets = Json::array();
      double worst = kInf;
      for (const auto& w : ws) {
        Json o;
        o["id"] = w.facet_id;
        o["violation"] = w.violation;
        o["word"] = word_names(w.word);
        o["behavior"] = w.behavior.to_nested();
        facets.push_back(std::move(o));
        worst = std::min(worst, w.violation);
      }
      r.json["facets"] = std::move(facets);
      r.json["min_violation"] = worst;
      r.summary = std::to_string(ws.size()) + " facets witnessed, min violation " + std::to_string(worst);
      return r;
    };
  });

  auto* cloning = app.add_subcommand("cloning", "Build the cloning scenario and its three-block decomposition");
  cloning->callback([&] {
    handler = [&] {
      const CloningScenario c = cloning_scenario();
      Rng rng(g.seed);
      const Scenario b6 = make_si_family_scenario(6);
      std::vector<Behavior> blocks;
      Json block_verdicts = Json::array();
      bool all_nc = true;
      for (std::size_t blk = 0; blk < 3; ++blk) {
        blocks.push_back(random_behavior(b6, rng));
        const bool ctx_block = is_noncontextual(b6, blocks.back(), g.tolerance).contextual;
        block_verdicts.push_back(ctx_block);
        all_nc = all_nc && !ctx_block;
      }
      const Behavior joint = cloning_behavior(c, blocks);
      const bool joint_ctx = is_noncontextual(c.scenario, joint, g.tolerance).contextual;
      Result r;
      r.json["scenario"] = to_json(c.scenario);
      r.json["decomposition"] = to_json(c.decomposition);
      r.json["verified"] = verify_decomposition(c);
      Json sample;
      sample["seed"] = g.seed;
      sample["block_contextual"] = std::move(block_verdicts);
      sample["joint_contextual"] = joint_ctx;
      sample["agrees"] = joint_ctx == !all_nc;
      r.json["sample"] = std::move(sample);
      r.summary = "cloning scenario (12, 6, 2); decomposition " +
                  std::string(verify_decomposition(c) ? "verified" : "FAILED");
      return r;
    };
  });

  std::vector<std::string> argv_store{"ctx"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    std::ostringstream sink;
    app.exit(e, sink, err);
    err << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return kExitInvalidInput;
  }

  try {
    const Result r = handler();
    const std::string text = r.json.dump() + "\n";
    if (g.output.empty()) {
      out << text;
    } else {
      std::ofstream f(g.output, std::ios::binary);
      if (!f) throw DocumentError("cannot write '" + g.output + "'");
      f << text;
    }
    if (g.format == "text") err << r.summary << "\n";
    return kExitOk;
  } catch (const NumericalFailure& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumericalFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitNumericalFailure;
  }
}

}  // namespace ctx
