// Copyright 2026 The collapsesim Authors
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

#include "collapsesim/cli/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "collapsesim/entangle.hpp"
#include "collapsesim/entropy.hpp"
#include "collapsesim/interferometer.hpp"
#include "collapsesim/optics.hpp"
#include "collapsesim/protocol.hpp"
#include "collapsesim/stats.hpp"

namespace collapsesim::cli {

namespace {

std::vector<double> radians(const Json& degrees) {
  std::vector<double> out;
  for (const auto& d : degrees) out.push_back(degrees_to_radians(d.get<double>()));
  return out;
}

double rad(const Json& degrees) { return degrees_to_radians(degrees.get<double>()); }

std::uint64_t count(const Json& v) { return v.get<std::uint64_t>(); }

std::string outcome_name(Outcome o) { return o == Outcome::kAligned ? "aligned" : "orthogonal"; }

double sigma(double p, std::uint64_t n) { return std::sqrt(p * (1.0 - p) / static_cast<double>(n)); }

ExperimentOutput run_malus(const RunConfig& cfg, const Execution& exec) {
  const Json& p = cfg.parameters;
  const std::string mode = p["mode"];
  const bool analytic = mode != "mc";
  const bool mc = mode != "analytic";
  const std::uint64_t n = count(p["n"]);
  const optics::Source source = optics::Source::parse(p["source"]);
  const optics::LightBeam beam =
      source.is_natural() ? optics::natural_light() : optics::linearly_polarized(source.angle());

  ExperimentOutput out;
  out.results["source"] = source.label();
  out.results["mode"] = mode;
  if (mc) out.results["n"] = n;

  if (!p["sweep"].get<bool>()) {
    const std::vector<double> axes = radians(p["axes_deg"]);
    // The analytic intensities also serve as the Monte Carlo reference.
    const optics::AnalyticCascade an = optics::cascade_analytic(beam, axes);
    std::optional<optics::McCascade> sim;
    if (mc) sim = optics::cascade_mc(n, axes, source, cfg.seed, exec);
    out.table.columns = {"stage", "axis_deg", "analytic_intensity", "mc_count", "mc_fraction", "mc_sigma", "mc_z"};
    Json stages = Json::array();
    for (std::size_t k = 0; k < axes.size(); ++k) {
      Json s;
      s["stage"] = k + 1;
      s["axis_deg"] = p["axes_deg"][k];
      s["analytic_intensity"] = analytic ? Json(an.stage_intensity[k]) : Json();
      if (sim) {
        const double ref = an.stage_intensity[k];
        s["mc_count"] = sim->stage_counts[k];
        s["mc_fraction"] = sim->fraction(k);
        s["mc_sigma"] = sigma(ref, n);
        s["mc_z"] = binomial_z(sim->stage_counts[k], n, ref);
      } else {
        s["mc_count"] = s["mc_fraction"] = s["mc_sigma"] = s["mc_z"] = Json();
      }
      out.table.rows.push_back({s["stage"], s["axis_deg"], s["analytic_intensity"], s["mc_count"], s["mc_fraction"],
                                s["mc_sigma"], s["mc_z"]});
      stages.push_back(std::move(s));
    }
    out.results["stages"] = stages;
    out.summary["final_analytic_intensity"] = analytic ? Json(an.stage_intensity.back()) : Json();
    out.summary["final_mc_fraction"] = sim ? Json(sim->fraction(axes.size() - 1)) : Json();
    return out;
  }

  const double first = p["axes_deg"].front().get<double>();
  const double last = p["axes_deg"].back().get<double>();
  const double from = p["sweep_from_deg"];
  const double to = p["sweep_to_deg"];
  const double step = p["sweep_step_deg"];
  const auto rows = static_cast<std::uint64_t>(std::floor((to - from) / step + 1e-9)) + 1;
  out.results["family_deg"] = Json::array({first, "theta", last});
  out.table.columns = {"theta_deg", "analytic_final", "mc_count", "mc_fraction"};
  Json sweep = Json::array();
  double best = -1.0;
  double best_theta = from;
  for (std::uint64_t r = 0; r < rows; ++r) {
    const double theta = from + step * static_cast<double>(r);
    const std::vector<double> axes = {degrees_to_radians(first), degrees_to_radians(theta), degrees_to_radians(last)};
    const double final_intensity = optics::cascade_analytic(beam, axes).stage_intensity.back();
    Json row;
    row["theta_deg"] = theta;
    row["analytic_final"] = analytic ? Json(final_intensity) : Json();
    if (mc) {
      const optics::McCascade sim = optics::cascade_mc(n, axes, source, derive_seed(cfg.seed, r), exec);
      row["mc_count"] = sim.stage_counts.back();
      row["mc_fraction"] = sim.fraction(2);
    } else {
      row["mc_count"] = row["mc_fraction"] = Json();
    }
    if (final_intensity > best) {
      best = final_intensity;
      best_theta = theta;
    }
    out.table.rows.push_back({row["theta_deg"], row["analytic_final"], row["mc_count"], row["mc_fraction"]});
    sweep.push_back(std::move(row));
  }
  out.results["sweep"] = sweep;
  out.summary["argmax_theta_deg"] = best_theta;
  out.summary["max_final_intensity"] = best;
  return out;
}

ExperimentOutput run_entropy(const RunConfig& cfg) {
  const Json& p = cfg.parameters;
  const MeasurementBasis basis(rad(p["basis_deg"]));
  const double phase = rad(p["phase_deg"]);
  ExperimentOutput out;
  out.table.columns = {"alpha_sq", "phase_deg", "basis_deg", "before_bits", "after_bits", "delta_bits", "outcome"};
  Json rows = Json::array();
  double max_after = 0.0;
  std::uint64_t i = 0;
  for (const auto& a : p["alpha_sq"]) {
    const double alpha_sq = a.get<double>();
    const Qubit state({std::sqrt(alpha_sq), std::polar(std::sqrt(1.0 - alpha_sq), phase)});
    RngStream rng(cfg.seed, domain_stream(StreamDomain::kGeneral, i++));
    const EntropyReport r = collapse_entropy_report(state, basis, rng);
    Json row;
    row["alpha_sq"] = alpha_sq;
    row["phase_deg"] = p["phase_deg"];
    row["basis_deg"] = p["basis_deg"];
    row["before_bits"] = r.before_bits;
    row["after_bits"] = r.after_bits;
    row["delta_bits"] = r.delta_bits;
    row["outcome"] = outcome_name(r.outcome);
    max_after = std::max(max_after, r.after_bits);
    out.table.rows.push_back({row["alpha_sq"], row["phase_deg"], row["basis_deg"], row["before_bits"],
                              row["after_bits"], row["delta_bits"], row["outcome"]});
    rows.push_back(std::move(row));
  }
  out.results["reports"] = rows;
  out.summary["rows"] = rows.size();
  out.summary["max_after_bits"] = max_after;
  return out;
}

ExperimentOutput run_bell(const RunConfig& cfg, const Execution& exec) {
  const Json& p = cfg.parameters;
  const entangle::PairKind kind = entangle::parse_pair_kind(p["state"]);
  const entangle::PairState pair = entangle::make_pair(kind);
  const double alice_deg = p["alice_deg"];
  const std::uint64_t n = count(p["n"]);

  ExperimentOutput out;
  out.results["state"] = entangle::to_string(kind);
  out.table.columns = {"delta_deg", "alice_deg", "bob_deg", "e_analytic", "e_mc", "std_err", "n", "z"};
  Json sweep = Json::array();
  std::uint64_t i = 0;
  for (const auto& d : p["deltas_deg"]) {
    const double bob_deg = alice_deg + d.get<double>();
    const double ta = degrees_to_radians(alice_deg);
    const double tb = degrees_to_radians(bob_deg);
    const double e = entangle::analytic_correlation(pair, ta, tb);
    const entangle::CorrelationStats c = entangle::correlation(pair, ta, tb, n, derive_seed(cfg.seed, ++i), exec);
    Json row;
    row["delta_deg"] = d;
    row["alice_deg"] = alice_deg;
    row["bob_deg"] = bob_deg;
    row["e_analytic"] = e;
    row["e_mc"] = c.e_value;
    row["std_err"] = c.std_err;
    row["n"] = c.n;
    row["z"] = c.std_err > 0 ? Json((c.e_value - e) / c.std_err) : Json();
    out.table.rows.push_back(
        {row["delta_deg"], row["alice_deg"], row["bob_deg"], row["e_analytic"], row["e_mc"], row["std_err"], row["n"], row["z"]});
    sweep.push_back(std::move(row));
  }
  out.results["correlation"] = sweep;

  const std::vector<double> c = radians(p["chsh_deg"]);
  const entangle::ChshSettings settings{c[0], c[1], c[2], c[3]};
  const entangle::ChshResult r = entangle::chsh(pair, settings, count(p["chsh_n"]), cfg.seed, exec);
  const double s_analytic = entangle::analytic_chsh(pair, settings);
  Json chsh;
  chsh["settings_deg"] = {{"a", p["chsh_deg"][0]}, {"a_prime", p["chsh_deg"][1]}, {"b", p["chsh_deg"][2]},
                          {"b_prime", p["chsh_deg"][3]}};
  chsh["n_per_setting"] = p["chsh_n"];
  chsh["s"] = r.s;
  chsh["std_err"] = r.std_err;
  chsh["s_analytic"] = s_analytic;
  chsh["classical_bound"] = 2.0;
  chsh["sigma_above_classical"] = (r.s - 2.0) / r.std_err;
  Json terms = Json::array();
  for (const auto& t : r.terms) terms.push_back({{"e", t.e_value}, {"std_err", t.std_err}, {"n", t.n}});
  chsh["terms"] = terms;
  out.results["chsh"] = chsh;
  out.summary["chsh_s"] = r.s;
  out.summary["chsh_std_err"] = r.std_err;
  out.summary["chsh_s_analytic"] = s_analytic;
  return out;
}

struct BobTally {
  std::uint64_t aligned = 0;
};

ExperimentOutput run_nosignal(const RunConfig& cfg, const Execution& exec) {
  const Json& p = cfg.parameters;
  const entangle::PairKind kind = entangle::parse_pair_kind(p["state"]);
  const entangle::PairState pair = entangle::make_pair(kind);
  const std::vector<double> bases = radians(p["alice_bases_deg"]);
  const MeasurementBasis bob(rad(p["bob_basis_deg"]));
  const std::uint64_t n = count(p["n"]);

  const double max_td = entangle::no_signaling_check(bases, pair);
  // Alice measures first; Bob then measures his conditional photon.
  const std::vector<BobTally> tallies = map_blocks<BobTally>(bases.size(), exec, [&](std::size_t i) {
    RngStream rng(cfg.seed, domain_stream(StreamDomain::kNoSignal, i));
    const MeasurementBasis alice(bases[i]);
    BobTally t;
    for (std::uint64_t k = 0; k < n; ++k) {
      const entangle::AliceMeasurement a = entangle::measure_A(pair, alice, rng);
      t.aligned += collapse(a.state_b, bob, rng).outcome == Outcome::kAligned;
    }
    return t;
  });

  ExperimentOutput out;
  out.results["state"] = entangle::to_string(kind);
  out.results["bob_basis_deg"] = p["bob_basis_deg"];
  out.results["max_trace_distance"] = max_td;
  out.table.columns = {"alice_deg", "trace_distance_to_first", "bob_p0_analytic", "bob_aligned", "n", "bob_p0_mc", "z"};
  const Density2 first = entangle::bob_unconditional_state(pair, MeasurementBasis(bases.front()));
  Json rows = Json::array();
  double max_abs_z = 0.0;
  for (std::size_t i = 0; i < bases.size(); ++i) {
    const Density2 rho = entangle::bob_unconditional_state(pair, MeasurementBasis(bases[i]));
    const double p0 = rho.expectation(bob.aligned());
    const double z = binomial_z(tallies[i].aligned, n, p0);
    max_abs_z = std::max(max_abs_z, std::abs(z));
    Json row;
    row["alice_deg"] = p["alice_bases_deg"][i];
    row["trace_distance_to_first"] = trace_distance(rho, first);
    row["bob_p0_analytic"] = p0;
    row["bob_aligned"] = tallies[i].aligned;
    row["n"] = n;
    row["bob_p0_mc"] = static_cast<double>(tallies[i].aligned) / static_cast<double>(n);
    row["z"] = z;
    out.table.rows.push_back({row["alice_deg"], row["trace_distance_to_first"], row["bob_p0_analytic"],
                              row["bob_aligned"], row["n"], row["bob_p0_mc"], row["z"]});
    rows.push_back(std::move(row));
  }
  out.results["per_basis"] = rows;
  out.summary["max_trace_distance"] = max_td;
  out.summary["max_abs_z"] = max_abs_z;
  return out;
}

ExperimentOutput run_protocol(const RunConfig& cfg, const Execution& exec) {
  const Json& p = cfg.parameters;
  protocol::EncodingRule rule;
  rule.basis_for_one = rad(p["rule_one_deg"]);
  rule.basis_for_zero = rad(p["rule_zero_deg"]);
  const protocol::ReceiverStrategy strategy = protocol::ReceiverStrategy::parse(p["strategy"]);
  const protocol::TransmissionReport r =
      protocol::run_protocol(count(p["n_bits"]), rule, strategy, cfg.seed, exec, count(p["shuffles"]));

  ExperimentOutput out;
  Json& j = out.results;
  j["n_bits"] = r.n_bits;
  j["pairs_per_bit"] = r.pairs_per_bit;
  j["strategy"] = r.strategy;
  j["receiver_model"] = r.counterfactual ? "counterfactual: reads the collapse basis of a single photon, which no "
                                           "physical measurement can do"
                                         : "standard: projective measurements on the received photons only";
  j["counterfactual"] = r.counterfactual;
  j["rule"] = {{"basis_for_one_deg", p["rule_one_deg"]}, {"basis_for_zero_deg", p["rule_zero_deg"]}};
  j["ber"] = r.ber;
  j["mi"] = {{"bits", r.mi.mi_bits},         {"ci95", Json::array({r.mi.ci95.lo, r.mi.ci95.hi})},
             {"std_err", r.mi.std_err},      {"null_q95", r.mi.null_q95},
             {"p_value", r.mi.p_value},      {"shuffles", r.mi.n_shuffles}};
  j["ties"] = r.ties;
  j["raw_counts"] = {{"bit0", Json::array({r.raw_counts[0][0], r.raw_counts[0][1]})},
                     {"bit1", Json::array({r.raw_counts[1][0], r.raw_counts[1][1]})}};
  j["raw_outcome_z"] = r.raw_outcome_z;
  j["rng_algorithm"] = r.rng_algorithm;
  j["seed"] = r.seed;

  out.table.columns = {"n_bits", "pairs_per_bit", "strategy", "counterfactual", "ber", "mi_bits", "mi_ci_lo",
                       "mi_ci_hi", "mi_p_value", "ties", "raw_outcome_z"};
  out.table.rows.push_back({r.n_bits, r.pairs_per_bit, r.strategy, r.counterfactual, r.ber, r.mi.mi_bits,
                            r.mi.ci95.lo, r.mi.ci95.hi, r.mi.p_value, r.ties, r.raw_outcome_z});
  out.summary["strategy"] = r.strategy;
  out.summary["counterfactual"] = r.counterfactual;
  out.summary["ber"] = r.ber;
  out.summary["mi_bits"] = r.mi.mi_bits;
  out.summary["mi_ci95"] = Json::array({r.mi.ci95.lo, r.mi.ci95.hi});
  return out;
}

Json timing_json(const mzi::TimingComparison& t) {
  auto counts = [](const mzi::DetectorCounts& c) {
    return Json{{"n", c.n}, {"d0", c.d0}, {"d1", c.d1}, {"d0_fraction", c.d0_fraction()}};
  };
  return Json{{"branch", t.branch == mzi::SecondSplitter::kPresent ? "present" : "absent"},
              {"analytic_d0", t.analytic_d0},
              {"delayed", counts(t.delayed)},
              {"fixed", counts(t.fixed)},
              {"z", t.z},
              {"consistent", t.consistent}};
}

ExperimentOutput run_mzi(const RunConfig& cfg, const Execution& exec) {
  using mzi::ChoicePolicy;
  using mzi::SecondSplitter;
  const Json& p = cfg.parameters;
  const std::uint64_t n = count(p["n"]);

  ExperimentOutput out;
  out.table.columns = {"phase_deg", "closed_d0_analytic", "closed_d0", "closed_n", "closed_z",
                       "open_d0_analytic", "open_d0", "open_n", "open_z"};
  Json fringe = Json::array();
  double max_abs_z = 0.0;
  std::uint64_t k = 0;
  for (const auto& d : p["phases_deg"]) {
    const double phase = degrees_to_radians(d.get<double>());
    const mzi::MziStats closed =
        mzi::run_mzi({phase, SecondSplitter::kPresent, ChoicePolicy::fixed()}, n, derive_seed(cfg.seed, 2 * k), exec);
    const mzi::MziStats open =
        mzi::run_mzi({phase, SecondSplitter::kAbsent, ChoicePolicy::fixed()}, n, derive_seed(cfg.seed, 2 * k + 1), exec);
    ++k;
    const double pc = mzi::detection_probabilities(phase, SecondSplitter::kPresent).p0;
    const double po = mzi::detection_probabilities(phase, SecondSplitter::kAbsent).p0;
    const double zc = binomial_z(closed.count_d0, n, pc);
    const double zo = binomial_z(open.count_d0, n, po);
    max_abs_z = std::max({max_abs_z, std::abs(zc), std::abs(zo)});
    Json row;
    row["phase_deg"] = d;
    row["closed_d0_analytic"] = pc;
    row["closed_d0"] = closed.count_d0;
    row["closed_n"] = closed.n;
    row["closed_z"] = zc;
    row["open_d0_analytic"] = po;
    row["open_d0"] = open.count_d0;
    row["open_n"] = open.n;
    row["open_z"] = zo;
    std::vector<Json> cells;
    for (const auto& c : out.table.columns) cells.push_back(row[c]);
    out.table.rows.push_back(std::move(cells));
    fringe.push_back(std::move(row));
  }
  out.results["fringe"] = fringe;

  const double tphase = rad(p["timing_phase_deg"]);
  const mzi::MziConfig delayed{tphase, SecondSplitter::kPresent, ChoicePolicy::delayed_random(p["p_present"])};
  const std::uint64_t tn = count(p["timing_n"]);
  const std::uint64_t tseed = derive_seed(cfg.seed, 1u << 20);
  const auto closed = mzi::choice_timing_invariance(delayed, {tphase, SecondSplitter::kPresent, ChoicePolicy::fixed()},
                                                    tn, tseed, exec);
  const auto open = mzi::choice_timing_invariance(delayed, {tphase, SecondSplitter::kAbsent, ChoicePolicy::fixed()},
                                                  tn, tseed, exec);
  out.results["timing"] = {{"phase_deg", p["timing_phase_deg"]},
                           {"p_present", p["p_present"]},
                           {"n", tn},
                           {"comparisons", Json::array({timing_json(closed), timing_json(open)})}};
  out.summary["max_abs_fringe_z"] = max_abs_z;
  out.summary["timing_z"] = Json::array({closed.z, open.z});
  out.summary["timing_consistent"] = closed.consistent && open.consistent;
  return out;
}

}  // namespace

ExperimentOutput run_experiment(const RunConfig& cfg) {
  const Execution exec{cfg.workers};
  switch (cfg.experiment) {
    case Experiment::kMalus: return run_malus(cfg, exec);
    case Experiment::kEntropy: return run_entropy(cfg);
    case Experiment::kBell: return run_bell(cfg, exec);
    case Experiment::kNoSignal: return run_nosignal(cfg, exec);
    case Experiment::kProtocol: return run_protocol(cfg, exec);
    case Experiment::kMzi: return run_mzi(cfg, exec);
  }
  throw std::logic_error("unknown experiment");
}

std::string csv_cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return v.dump();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::isnan(d)) return "nan";
    if (std::isinf(d)) return d > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", d);
    return buf;
  }
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace collapsesim::cli
