#include "circuitlab/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <nlohmann/json.hpp>
#include <numbers>
#include <numeric>

#include "circuitlab/analysis.hpp"
#include "circuitlab/circuit.hpp"
#include "circuitlab/cutgraph.hpp"
#include "circuitlab/dprm.hpp"
#include "circuitlab/heisenberg.hpp"
#include "circuitlab/membrane.hpp"
#include "circuitlab/monitored.hpp"
#include "circuitlab/result_table.hpp"
#include "circuitlab/sff.hpp"
#include "circuitlab/statevector.hpp"
#include "circuitlab/strings.hpp"
#include "circuitlab/sweep.hpp"
#include "circuitlab/svg.hpp"
#include "circuitlab/tableau.hpp"
#include "circuitlab/u1.hpp"

namespace circuitlab {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kVersion = "circuitlab 0.1.0";

const std::vector<std::string> kStdColumns = {"x",    "y", "yerr", "n_samples",
                                              "L",    "p", "seed"};

struct Emitter {
  const ExperimentContext& ctx;
  std::string name;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  void write(ResultTable& table, json& summary,
             const std::vector<SvgSeries>& svg_series,
             const SvgPlotOptions& svg_opts) const {
    table.set_meta("config_hash", ctx.config.hash_hex());
    table.set_meta("seed", std::to_string(ctx.seed));
    table.set_meta("version", kVersion);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    json meta;
    meta["experiment"] = name;
    meta["config_hash"] = ctx.config.hash_hex();
    meta["seed"] = ctx.seed;
    meta["version"] = kVersion;
    meta["threads"] = ctx.threads;
    meta["wall_time_s"] = wall;
    json full;
    full["meta"] = meta;
    full["summary"] = summary;
    const std::string base = ctx.out_dir + "/" + name;
    table.write_csv(base + ".csv");
    write_file_atomic(base + ".summary.json", full.dump(2) + "\n");
    if (!svg_series.empty())
      write_file_atomic(base + ".svg", render_svg_plot(svg_series, svg_opts));
  }
};

std::string fmtd(double v) { return ResultTable::fmt(v); }
std::string fmtl(long v) { return ResultTable::fmt(v); }

// ---------------------------------------------------------------- experiments

void exp_entanglement_growth(const ExperimentContext& ctx) {
  const Config& c = ctx.config;
  const int L = static_cast<int>(c.get_int("L", 12));
  const int depth = static_cast<int>(c.get_int("depth", 2 * L));
  const int realizations = static_cast<int>(c.get_int("realizations", 100));
  if (L < 4 || L > 16) throw config_error("entanglement-growth: L must be 4..16");
  if (depth < 1 || realizations < 2)
    throw config_error("entanglement-growth: bad depth/realizations");
  Emitter em{ctx, "entanglement-growth"};
  std::vector<std::vector<double>> slots(static_cast<std::size_t>(realizations));
  run_parallel(realizations, ctx.threads, [&](long i) {
    RngStream rng = cell_stream(ctx.seed, "entanglement-growth", 0,
                                static_cast<std::uint64_t>(i));
    Circuit circ = build_brickwork(L, depth, Boundary::open, GateSpec::haar(2), rng);
    PureState st = state_all_up(L);
    const TrajectoryRecord rec = run_circuit(st, circ, rng, 1);
    slots[static_cast<std::size_t>(i)] = rec.half_entropy;
  });
  ResultTable table(kStdColumns);
  SvgSeries series;
  series.label = "S_{L/2}(t)";
  std::vector<double> ts, means;
  for (int t = 1; t <= depth; ++t) {
    RunningStat st;
    for (const auto& s : slots) st.add(s[static_cast<std::size_t>(t - 1)]);
    table.add_row({fmtd(t), fmtd(st.mean()), fmtd(st.sem()), fmtl(st.n()),
                   fmtl(L), fmtd(0.0), ResultTable::fmt(ctx.seed)});
    series.x.push_back(t);
    series.y.push_back(st.mean());
    series.yerr.push_back(st.sem());
    ts.push_back(t);
    means.push_back(st.mean());
  }
  // Early-time growth rate in nats per layer.
  const int t_lin = std::max(2, L / 4);
  double slope = 0;
  {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int t = 1; t <= t_lin; ++t) {
      sx += t;
      sy += means[static_cast<std::size_t>(t - 1)];
      sxx += static_cast<double>(t) * t;
      sxy += t * means[static_cast<std::size_t>(t - 1)];
    }
    slope = (t_lin * sxy - sx * sy) / (t_lin * sxx - sx * sx);
  }
  json summary;
  summary["L"] = L;
  summary["depth"] = depth;
  summary["realizations"] = realizations;
  summary["growth_rate_nats_per_layer"] = slope;
  summary["growth_window_layers"] = t_lin;
  summary["saturation_nats"] = means.back();
  summary["max_possible_nats"] = (L / 2) * std::log(2.0);
  em.write(table, summary, {series},
           {"half-chain entanglement growth", "t (layers)", "S (nats)"});
}

void exp_page_check(const ExperimentContext& ctx) {
  const Config& c = ctx.config;
  const int L = static_cast<int>(c.get_int("L", 14));
  const int depth = static_cast<int>(c.get_int("depth", 4 * L));
  const int realizations = static_cast<int>(c.get_int("realizations", 400));
  if (L < 4 || L > 16 || L % 2 != 0)
    throw config_error("page-check: L must be even, 4..16");
  Emitter em{ctx, "page-check"};
  std::vector<double> purity(static_cast<std::size_t>(realizations));
  std::vector<int> half(static_cast<std::size_t>(L / 2));
  std::iota(half.begin(), half.end(), 0);
  run_parallel(realizations, ctx.threads, [&](long i) {
    RngStream rng =
        cell_stream(ctx.seed, "page-check", 0, static_cast<std::uint64_t>(i));
    Circuit circ = build_brickwork(L, depth, Boundary::open, GateSpec::haar(2), rng);
    PureState st = state_all_up(L);
    run_circuit(st, circ, rng);
    purity[static_cast<std::size_t>(i)] = region_purity(st, half);
  });
  ResultTable table(kStdColumns);
  RunningStat st;
  for (int i = 0; i < realizations; ++i) {
    st.add(purity[static_cast<std::size_t>(i)]);
    table.add_row({fmtl(i), fmtd(purity[static_cast<std::size_t>(i)]), fmtd(0.0),
                   fmtl(1), fmtl(L), fmtd(0.0), ResultTable::fmt(ctx.seed)});
  }
  const double annealed = -std::log(st.mean());
  const double da = std::pow(2.0, L / 2);
  const double lubkin = -std::log((da + da) / (da * da + 1.0));
  const double catalan_form = (L / 2) * std::log(2.0) - std::log(2.0);
  json summary;
  summary["L"] = L;
  summary["depth"] = depth;
  summary["realizations"] = realizations;
  summary["mean_purity"] = st.mean();
  summary["mean_purity_sem"] = st.sem();
  summary["annealed_renyi2_nats"] = annealed;
  summary["lubkin_target_nats"] = lubkin;
  summary["catalan_form_nats"] = catalan_form;
  summary["relative_deviation_vs_catalan"] =
      std::abs(annealed - catalan_form) / catalan_form;
  em.write(table, summary, {}, {});
}

void exp_mipt_scan(const ExperimentContext& ctx) {
  const Config& c = ctx.config;
  const std::vector<long> Ls = c.get_int_list("L", {{64, 128, 256}});
  const std::vector<double> ps =
      c.get_double_list("p", {{0.10, 0.12, 0.14, 0.16, 0.18, 0.20, 0.22, 0.24}});
  const double depth_factor = c.get_double("depth_factor", 2.0);
  const int realizations = static_cast<int>(c.get_int("realizations", 300));
  const bool do_collapse = c.get_bool("collapse", false);
  for (long L : Ls)
    if (L < 8 || L % 4 != 0)
      throw config_error("mipt-scan: each L must be a multiple of 4, >= 8");
  for (double p : ps)
    if (!(p >= 0 && p <= 1)) throw config_error("mipt-scan: p must be in [0,1]");
  if (realizations < 4) throw config_error("mipt-scan: too few realizations");
  Emitter em{ctx, "mipt-scan"};
  const long cells = static_cast<long>(Ls.size() * ps.size());
  std::vector<std::vector<double>> slots(
      static_cast<std::size_t>(cells),
      std::vector<double>(static_cast<std::size_t>(realizations), 0.0));
  run_parallel(cells * realizations, ctx.threads, [&](long task) {
    const long cell = task / realizations;
    const long r = task % realizations;
    const int L = static_cast<int>(Ls[static_cast<std::size_t>(cell / ps.size())]);
    const double p = ps[static_cast<std::size_t>(cell % ps.size())];
    RngStream rng = cell_stream(ctx.seed, "mipt-scan",
                                static_cast<std::uint64_t>(cell),
                                static_cast<std::uint64_t>(r));
    Tableau tab = Tableau::all_up(L);
    const int depth = static_cast<int>(std::lround(depth_factor * L));
    run_hybrid(tab, depth, p, rng, HybridOpts{Boundary::periodic, depth, false, false});
    slots[static_cast<std::size_t>(cell)][static_cast<std::size_t>(r)] =
        tripartite_mi_bits(tab);
  });
  ResultTable table(kStdColumns);
  std::vector<Series> curves;
  std::vector<SvgSeries> svg;
  for (std::size_t li = 0; li < Ls.size(); ++li) {
    Series s;
    s.meta["L"] = static_cast<double>(Ls[li]);
    SvgSeries sv;
    sv.label = "L=" + std::to_string(Ls[li]);
    for (std::size_t pi = 0; pi < ps.size(); ++pi) {
      const long cell = static_cast<long>(li * ps.size() + pi);
      RunningStat st;
      for (double v : slots[static_cast<std::size_t>(cell)]) st.add(v);
      table.add_row({fmtd(ps[pi]), fmtd(st.mean()), fmtd(st.sem()), fmtl(st.n()),
                     fmtl(Ls[li]), fmtd(ps[pi]), ResultTable::fmt(ctx.seed)});
      s.push(ps[pi], st.mean(), st.sem(), st.n());
      sv.x.push_back(ps[pi]);
      sv.y.push_back(st.mean());
      sv.yerr.push_back(st.sem());
    }
    curves.push_back(std::move(s));
    svg.push_back(std::move(sv));
  }
  json summary;
  summary["L"] = json::array();
  for (long L : Ls) summary["L"].push_back(L);
  summary["realizations"] = realizations;
  try {
    const CrossingResult cr = crossing_finder(curves);
    summary["p_c_crossing"] = cr.location;
    summary["p_c_error"] = cr.error;
    summary["pairwise_crossings"] = cr.pairwise;
  } catch (const std::invalid_argument& e) {
    summary["p_c_crossing_error_message"] = e.what();
  }
  if (do_collapse) {
    std::vector<double> pcg, nug;
    for (double pc = ps.front(); pc <= ps.back() + 1e-9; pc += 0.005)
      pcg.push_back(pc);
    for (double nu = 0.7; nu <= 2.2001; nu += 0.05) nug.push_back(nu);
    const CollapseResult col = collapse_scan(curves, pcg, nug);
    summary["collapse_p_c"] = col.p_c;
    summary["collapse_nu"] = col.nu;
    summary["collapse_objective"] = col.objective;
  }
  em.write(table, summary, svg,
           {"tripartite mutual information", "p", "TMI (bits)"});
}

void exp_purification(const ExperimentContext& ctx) {
  const Config& c = ctx.config;
  const int L = static_cast<int>(c.get_int("L", 64));
  const std::vector<double> ps = c.get_double_list("p", {{0.05, 0.40}});
  const double depth_factor = c.get_double("depth_factor", 4.0);
  const int realizations = static_cast<int>(c.get_int("realizations", 200));
  if (L < 4 || L % 2 != 0) throw config_error("purification: L must be even >= 4");
  Emitter em{ctx, "purification"};
  const int depth = static_cast<int>(std::lround(depth_factor * L));
  const int every = std::max(1, L / 8);
  const long cells = static_cast<long>(ps.size());
  struct Slot {
    std::vector<double> series;
    bool pure_at_end = false;
  };
  std::vector<std::vector<Slot>> slots(
      static_cast<std::size_t>(cells),
      std::vector<Slot>(static_cast<std::size_t>(realizations)));
  run_parallel(cells * realizations, ctx.threads, [&](long task) {
    const long cell = task / realizations;
    const long r = task % realizations;
    const double p = ps[static_cast<std::size_t>(cell)];
    RngStream rng = cell_stream(ctx.seed, "purification",
                                static_cast<std::uint64_t>(cell),
                                static_cast<std::uint64_t>(r));
    Tableau tab = Tableau::maximally_mixed(L);
    HybridOpts opts;
    opts.boundary = Boundary::periodic;
    opts.checkpoint_every = every;
    opts.record_purification = true;
    const MonitoredRunResult res = run_hybrid(tab, depth, p, rng, opts);
    Slot s;
    s.series = res.purification_bits;
    s.pure_at_end = tab.purification_entropy_bits() == 0;
    slots[static_cast<std::size_t>(cell)][static_cast<std::size_t>(r)] = s;
  });
  ResultTable table(kStdColumns);
  std::vector<SvgSeries> svg;
  json per_p = json::array();
  for (std::size_t pi = 0; pi < ps.size(); ++pi) {
    const auto& cell = slots[pi];
    const std::size_t npts = cell.front().series.size();
    SvgSeries sv;
    sv.label = "p=" + fmtd(ps[pi]);
    double final_mean = 0;
    long pure_count = 0;
    for (std::size_t t = 0; t < npts; ++t) {
      RunningStat st;
      for (const auto& s : cell) st.add(s.series[t] / L);
      const double tval = std::min<double>((t + 1.0) * every, depth);
      table.add_row({fmtd(tval), fmtd(st.mean()), fmtd(st.sem()), fmtl(st.n()),
                     fmtl(L), fmtd(ps[pi]), ResultTable::fmt(ctx.seed)});
      sv.x.push_back(tval);
      sv.y.push_back(st.mean());
      sv.yerr.push_back(st.sem());
      if (t + 1 == npts) final_mean = st.mean();
    }
    for (const auto& s : cell) pure_count += s.pure_at_end;
    json jp;
    jp["p"] = ps[pi];
    jp["final_entropy_density_bits"] = final_mean;
    jp["fraction_pure_at_end"] =
        static_cast<double>(pure_count) / realizations;
    per_p.push_back(jp);
    svg.push_back(std::move(sv));
  }
  json summary;
  summary["L"] = L;
  summary["depth"] = depth;
  summary["realizations"] = realizations;
  summary["per_p"] = per_p;
  em.write(table, summary, svg,
           {"purification of the maximally mixed state", "t (layers)",
            "S/L (bits per site)"});
}

void exp_reference_qubit(const ExperimentContext& ctx) {
  const Config& c = ctx.config;
  const int L = static_cast<int>(c.get_int("L", 128));
  const std::vector<double> ps = c.get_double_list("p", {{0.10, 0.30}});
  const double depth_factor = c.get_double("depth_factor", 2.0);
  const int realizations = static_cast<int>(c.get_int("realizations", 200));
  if (L < 4 || L % 2 != 0)
    throw config_error("reference-qubit: L must be even >= 4");
  Emitter em{ctx, "reference-qubit"};
  const int depth = static_cast<int>(std::lround(depth_factor * L));
  const int every = std::max(1, L / 8);
  const long cells = static_cast<long>(ps.size());
  std::vector<std::vector<std::vector<double>>> slots(
      static_cast<std::size_t>(cells),
      std::vector<std::vector<double>>(static_cast<std::size_t>(realizations)));
  run_parallel(cells * realizations, ctx.threads, [&](long task) {
    const long cell = task / realizations;
    const long r = task % realizations;
    RngStream rng = cell_stream(ctx.seed, "reference-qubit",
                                static_cast<std::uint64_t>(cell),
                                static_cast<std::uint64_t>(r));
    const ReferenceQubitResult res = reference_qubit_run(
        L, ps[static_cast<std::size_t>(cell)], depth, rng, every);
    slots[static_cast<std::size_t>(cell)][static_cast<std::size_t>(r)] =
        res.ancilla_entropy_bits;
  });
  ResultTable table(kStdColumns);
  std::vector<SvgSeries> svg;
  json per_p = json::array();
  for (std::size_t pi = 0; pi < ps.size(); ++pi) {
    const auto& cell = slots[pi];
    const std::size_t npts = cell.front().size();
    SvgSeries sv;
    sv.label = "p=" + fmtd(ps[pi]);
    double final_mean = 0;
    for (std::size_t t = 0; t < npts; ++t) {
      RunningStat st;
      for (const auto& s : cell) st.add(s[t]);
      const double tval = std::min<double>((t + 1.0) * every, depth);
      table.add_row({fmtd(tval), fmtd(st.mean()), fmtd(st.sem()), fmtl(st.n()),
                     fmtl(L), fmtd(ps[pi]), ResultTable::fmt(ctx.seed)});
      sv.x.push_back(tval);
      sv.y.push_back(st.mean());
      sv.yerr.push_back(st.sem());
      if (t + 1 == npts) final_mean = st.mean();
    }
    json jp;
    jp["p"] = ps[pi];
    jp["final_ancilla_entropy_bits"] = final_mean;
    per_p.push_back(jp);
    svg.push_back(std::move(sv));
  }
  json summary;
  summary["L"] = L;
  summary["depth"] = depth;
  summary["realizations"] = realizations;
  summary["per_p"] = per_p;
  em.write(table, summary, svg,
           {"reference-qubit order parameter", "t (layers)",
            "S_ref (bits)"});
}

void exp_measurement_only_ising(const ExperimentContext& ctx) {
  const Config& c = ctx.config;
  const std::vector<long> Ls = c.get_int_list("L", {{32, 64, 128}});
  const std::vector<double> pzs = c.get_double_list(
      "p_z", {{0.40, 0.425, 0.45, 0.475, 0.50, 0.525, 0.55, 0.575, 0.60}});
  const double depth_factor = c.get_double("depth_factor", 2.0);
  const int realizations = static_cast<int>(c.get_int("realizations", 300));
  for (double p : pzs)
    if (!(p >= 0 && p <= 1))
      throw config_error("measurement-only-ising: p_z must be in [0,1]");
  Emitter em{ctx, "measurement-only-ising"};
  const long cells = static_cast<long>(Ls.size() * pzs.size());
  std::vector<std::vector<double>> slots(
      static_cast<std::size_t>(cells),
      std::vector<double>(static_cast<std::size_t>(realizations), 0.0));
  run_parallel(cells * realizations, ctx.threads, [&](long task) {
    const long cell = task / realizations;
    const long r = task % realizations;
    const int L = static_cast<int>(Ls[static_cast<std::size_t>(cell / pzs.size())]);
    const double pz = pzs[static_cast<std::size_t>(cell % pzs.size())];
    RngStream rng = cell_stream(ctx.seed, "measurement-only-ising",
                                static_cast<std::uint64_t>(cell),
                                static_cast<std::uint64_t>(r));
    const int depth = static_cast<int>(std::lround(depth_factor * L));
    slots[static_cast<std::size_t>(cell)][static_cast<std::size_t>(r)] =
        measurement_only_ising_chi(L, pz, depth, rng);
  });
  ResultTable table(kStdColumns);
  std::vector<Series> curves;
  std::vector<SvgSeries> svg;
  for (std::size_t li = 0; li < Ls.size(); ++li) {
    Series s;
    s.meta["L"] = static_cast<double>(Ls[li]);
    SvgSeries sv;
    sv.label = "L=" + std::to_string(Ls[li]);
    for (std::size_t pi = 0; pi < pzs.size(); ++pi) {
      const long cell = static_cast<long>(li * pzs.size() + pi);
      RunningStat st;
      for (double v : slots[static_cast<std::size_t>(cell)])
        st.add(v * static_cast<double>(Ls[li]));  // chi * L
      table.add_row({fmtd(pzs[pi]), fmtd(st.mean()), fmtd(st.sem()),
                     fmtl(st.n()), fmtl(Ls[li]), fmtd(pzs[pi]),
                     ResultTable::fmt(ctx.seed)});
      s.push(pzs[pi], st.mean(), st.sem(), st.n());
      sv.x.push_back(pzs[pi]);
      sv.y.push_back(st.mean());
      sv.yerr.push_back(st.sem());
    }
    curves.push_back(std::move(s));
    svg.push_back(std::move(sv));
  }
  json summary;
  summary["realizations"] = realizations;
  try {
    const CrossingResult cr = crossing_finder(curves);
    summary["p_z_crossing"] = cr.location;
    summary["p_z_error"] = cr.error;
    summary["pairwise_crossings"] = cr.pairwise;
  } catch (const std::invalid_argument& e) {
    summary["crossing_error_message"] = e.what();
  }
  em.write(table, summary, svg,
           {"measurement-only spin-glass order", "p_Z", "chi_SG * L"});
}

void exp_delta_s_scan(const ExperimentContext& ctx) {
  const Config& c = ctx.config;
  const int L = static_cast<int>(c.get_int("L", 256));
  const double p = c.get_double("p", 0.08);
  const double depth_factor = c.get_double("depth_factor", 2.0);
  const int realizations = static_cast<int>(c.get_int("realizations", 100));
  const int x_max = static_cast<int>(c.get_int("x_max", L / 4));
  if (!(p >= 0 && p <= 1)) throw config_error("delta-s-scan: p must be in [0,1]");
  if (x_max < 2 || x_max > L / 2) throw config_error("delta-s-scan: bad x_max");
  Emitter em{ctx, "delta-s-scan"};
  // Region A = left half [0, L/2); measure at distance x inside the cut at L/2.
  std::vector<int> xs;
  for (int x = 1; x <= x_max; ++x) xs.push_back(x);
  std::vector<std::vector<double>> slots(
      static_cast<std::size_t>(realizations));
  std::vector<int> half(static_cast<std::size_t>(L / 2));
  std::iota(half.begin(), half.end(), 0);
  const int depth = static_cast<int>(std::lround(depth_factor * L));
  run_parallel(realizations, ctx.threads, [&](long r) {
    RngStream rng = cell_stream(ctx.seed, "delta-s-scan", 0,
                                static_cast<std::uint64_t>(r));
    Tableau tab = Tableau::all_up(L);
    run_hybrid(tab, depth, p, rng, HybridOpts{Boundary::periodic, depth, false, false});
    std::vector<double> ds;
    ds.reserve(xs.size());
    for (int x : xs)
      ds.push_back(delta_s_measurement_bits(tab, half, L / 2 - x, rng));
    slots[static_cast<std::size_t>(r)] = std::move(ds);
  });
  ResultTable table(kStdColumns);
  Series curve;
  SvgSeries sv;
  sv.label = "mean dS(x)";
  for (std::size_t xi = 0; xi < xs.size(); ++xi) {
    RunningStat st;
    for (const auto& s : slots) st.add(s[xi]);
    table.add_row({fmtd(xs[xi]), fmtd(st.mean()), fmtd(st.sem()), fmtl(st.n()),
                   fmtl(L), fmtd(p), ResultTable::fmt(ctx.seed)});
    curve.push(xs[xi], st.mean(), st.sem(), st.n());
    sv.x.push_back(xs[xi]);
    sv.y.push_back(st.mean());
    sv.yerr.push_back(st.sem());
  }
  json summary;
  summary["L"] = L;
  summary["p"] = p;
  summary["realizations"] = realizations;
  try {
    const PowerlawFit fit = powerlaw_fit(curve, 2.0, x_max);
    summary["delta_exponent"] = -fit.exponent;
    summary["delta_exponent_err"] = fit.exponent_err;
  } catch (const std::invalid_argument& e) {
    summary["fit_error_message"] = e.what();
  }
  em.write(table, summary, {sv},
           {"entanglement response to one measurement", "x", "dS (bits)",
            true, true});
}

void exp_otoc_front(const ExperimentContext& ctx) {
  const Config& c = ctx.config;
  const int depth = static_cast<int>(c.get_int("depth", 1024));
  const int samples = static_cast<int>(c.get_int("samples", 1000));
  const int L = static_cast<int>(
      c.get_int("L", 2 * (static_cast<long>(0.75 * depth) + 32)));
  if (depth < 16 || samples < 8) throw config_error("otoc-front: too small");
  Emitter em{ctx, "otoc-front"};
  const FrontEnsemble fe = otoc_front(L, depth, samples, ctx.seed);
  ResultTable table({"x", "y", "yerr", "n_samples", "L", "p", "seed",
                     "mean_right"});
  SvgSeries sv;
  sv.label = "width(t)";
  for (std::size_t i = 0; i < fe.times.size(); ++i) {
    table.add_row({fmtd(fe.times[i]), fmtd(fe.width[i]), fmtd(0.0),
                   fmtl(samples), fmtl(L), fmtd(0.0),
                   ResultTable::fmt(ctx.seed), fmtd(fe.mean_right[i])});
    sv.x.push_back(fe.times[i]);
    sv.y.push_back(fe.width[i]);
    sv.yerr.push_back(0.0);
  }
  const double t_lo = std::min(64, depth / 4);
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < fe.times.size(); ++i) {
    if (fe.times[i] >= t_lo && fe.times[i] <= depth) {
      xs.push_back(fe.times[i]);
      ys.push_back(fe.width[i]);
    }
  }
  const PowerlawFit fit = powerlaw_fit(xs, ys, {});
  json summary;
  summary["depth"] = depth;
  summary["samples"] = samples;
  summary["width_exponent"] = fit.exponent;
  summary["width_exponent_err"] = fit.exponent_err;
  summary["fit_window"] = json::array({t_lo, depth});
  summary["v_butterfly"] = fe.vb;
  summary["v_butterfly_err"] = fe.vb_err;
  summary["interior_density"] = fe.interior_density;
  em.write(table, summary, {sv},
           {"operator front broadening", "t (layers)", "width", true, true});
}

void exp_charge_diffusion(const ExperimentContext& ctx) {
  const Config& c = ctx.config;
  const int t = static_cast<int>(c.get_int("t", 400));
  const int L = static_cast<int>(c.get_int("L", 2 * t + 9));
  if (t < 4) throw config_error("charge-diffusion: t too small");
  Emitter em{ctx, "charge-diffusion"};
  const int center = L / 2;
  const U1DiffusionResult res = u1_amplitude_diffusion(L, t, center);
  ResultTable table(kStdColumns);
  SvgSeries sv;
  sv.label = "a_x(t)";
  for (int x = 0; x < L; ++x) {
    table.add_row({fmtd(x - center), fmtd(res.profile[static_cast<std::size_t>(x)]),
                   fmtd(0.0), fmtl(1), fmtl(L), fmtd(0.0),
                   ResultTable::fmt(ctx.seed)});
    sv.x.push_back(x - center);
    sv.y.push_back(res.profile[static_cast<std::size_t>(x)]);
    sv.yerr.push_back(0.0);
  }
  const GaussianFit fit = gaussian_kernel_fit(res.profile, t);
  json summary;
  summary["t"] = t;
  summary["L"] = L;
  summary["diffusion_constant"] = fit.d_const;
  summary["fit_center_offset"] = fit.center - center;
  summary["fit_variance"] = fit.variance;
  summary["fit_rms_residual"] = fit.rms_residual;
  summary["amplitude_sum"] =
      std::accumulate(res.profile.begin(), res.profile.end(), 0.0);
  em.write(table, summary, {sv},
           {"conserved-density spreading", "x", "a_x"});
}

void exp_conserved_weight(const ExperimentContext& ctx) {
  const Config& c = ctx.config;
  const int t_max = static_cast<int>(c.get_int("t_max", 400));
  const int L = static_cast<int>(c.get_int("L", 2 * t_max + 9));
  if (t_max < 4) throw config_error("conserved-weight: t_max too small");
  Emitter em{ctx, "conserved-weight"};
  const U1DiffusionResult res = u1_amplitude_diffusion(L, t_max, L / 2);
  ResultTable table({"x", "y", "yerr", "n_samples", "L", "p", "seed",
                     "normalized"});
  SvgSeries sv;
  sv.label = "w_c(t) * 2 sqrt(pi t)";
  double worst = 0;
  for (int t = 1; t <= t_max; ++t) {
    const double wc = res.conserved_weight[static_cast<std::size_t>(t - 1)];
    const double normed = wc * 2.0 * std::sqrt(std::numbers::pi * t);
    table.add_row({fmtd(t), fmtd(wc), fmtd(0.0), fmtl(1), fmtl(L), fmtd(0.0),
                   ResultTable::fmt(ctx.seed), fmtd(normed)});
    sv.x.push_back(t);
    sv.y.push_back(normed);
    sv.yerr.push_back(0.0);
    if (t >= 100) worst = std::max(worst, std::abs(normed - 1.0));
  }
  json summary;
  summary["t_max"] = t_max;
  summary["max_abs_deviation_t_ge_100"] = worst;
  em.write(table, summary, {sv},
           {"conserved operator weight decay", "t (layers)",
            "w_c * 2 sqrt(pi t)"});
}

void exp_sff_ramp(const ExperimentContext& ctx) {
  const Config& c = ctx.config;
  const std::string kind = c.get_string("kind", "cue");
  const int samples = static_cast<int>(c.get_int("samples", 10000));
  Emitter em{ctx, "sff-ramp"};
  std::vector<double> k;
  int dim = 0;
  if (kind == "cue") {
    dim = static_cast<int>(c.get_int("dim", 32));
    const int t_max = static_cast<int>(c.get_int("t_max", dim));
    RngStream rng(ctx.seed, 0, "sff-cue");
    k = sff_cue(dim, t_max, samples, rng);
  } else if (kind == "floquet") {
    const int L = static_cast<int>(c.get_int("L", 8));
    dim = 1 << L;
    const int t_max = static_cast<int>(c.get_int("t_max", 4 * L));
    RngStream rng(ctx.seed, 0, "sff-floquet");
    k = sff_floquet_brickwork(L, t_max, samples, rng);
  } else {
    throw config_error("sff-ramp: kind must be cue or floquet");
  }
  ResultTable table({"x", "y", "yerr", "n_samples", "L", "p", "seed",
                     "ramp_ratio"});
  SvgSeries sv;
  sv.label = "K(t)";
  double worst = 0;
  for (std::size_t t = 1; t < k.size(); ++t) {
    const double ratio = k[t] / static_cast<double>(t);
    table.add_row({fmtd(static_cast<double>(t)), fmtd(k[t]), fmtd(0.0),
                   fmtl(samples), fmtl(dim), fmtd(0.0),
                   ResultTable::fmt(ctx.seed), fmtd(ratio)});
    sv.x.push_back(static_cast<double>(t));
    sv.y.push_back(k[t]);
    sv.yerr.push_back(0.0);
    if (kind == "cue" && t <= static_cast<std::size_t>(dim))
      worst = std::max(worst, std::abs(ratio - 1.0));
  }
  json summary;
  summary["kind"] = kind;
  summary["dim"] = dim;
  summary["samples"] = samples;
  if (kind == "cue") summary["max_abs_ramp_deviation"] = worst;
  em.write(table, summary, {sv},
           {"spectral form factor", "t", "K(t)", true, true});
}

void exp_dual_unitary(const ExperimentContext& ctx) {
  const Config& c = ctx.config;
  const int L = static_cast<int>(c.get_int("L", 10));
  const int t_max = static_cast<int>(c.get_int("t_max", 4));
  const double J = c.get_double("J", 0.3);
  const int realizations = static_cast<int>(c.get_int("realizations", 4));
  if (L < 6 || L > 12 || L % 2 != 0)
    throw config_error("dual-unitary-correlations: L must be even, 6..12");
  if (t_max >= L / 2)
    throw config_error("dual-unitary-correlations: need t_max < L/2");
  Emitter em{ctx, "dual-unitary-correlations"};
  ResultTable table({"x", "y", "yerr", "n_samples", "L", "p", "seed", "t",
                     "on_ray"});
  double max_off = 0, max_on = 0;
  for (int r = 0; r < realizations; ++r) {
    RngStream rng = cell_stream(ctx.seed, "dual-unitary", 0,
                                static_cast<std::uint64_t>(r));
    // Realization 0 uses bare V(J); the rest use random dressings.
    GateSpec spec = GateSpec::dual_unitary(J, r != 0);
    Circuit circ = build_brickwork(L, t_max, Boundary::periodic, spec, rng);
    for (int t = 1; t <= t_max; ++t) {
      const std::vector<double> g = two_point_profile(circ, t, 0, Pauli::Z);
      for (int x = 0; x < L; ++x) {
        // signed displacement in (-L/2, L/2]
        int dx = x;
        if (dx > L / 2) dx -= L;
        const bool on_ray = (dx == t) || (dx == -(t - 1));
        const double val = g[static_cast<std::size_t>(x)];
        table.add_row({fmtd(dx), fmtd(val), fmtd(0.0), fmtl(1), fmtl(L),
                       fmtd(0.0), ResultTable::fmt(ctx.seed), fmtd(t),
                       fmtl(on_ray ? 1 : 0)});
        if (on_ray) max_on = std::max(max_on, std::abs(val));
        else max_off = std::max(max_off, std::abs(val));
      }
    }
  }
  json summary;
  summary["L"] = L;
  summary["t_max"] = t_max;
  summary["J"] = J;
  summary["realizations"] = realizations;
  summary["max_abs_G_off_ray"] = max_off;
  summary["max_abs_G_on_ray"] = max_on;
  em.write(table, summary, {}, {});
}

void exp_min_cut_tension(const ExperimentContext& ctx) {
  const Config& c = ctx.config;
  const double rate = c.get_double("rate", 1.0);
  const std::vector<double> vs = c.get_double_list(
      "v", {{-0.8, -0.6, -0.4, -0.2, 0.0, 0.2, 0.4, 0.6, 0.8}});
  std::vector<long> ladder = c.get_int_list("t_ladder", {{64, 128, 256, 512}});
  const int samples = static_cast<int>(c.get_int("samples", 100));
  if (rate <= 0) throw config_error("min-cut-tension: rate must be > 0");
  Emitter em{ctx, "min-cut-tension"};
  const std::vector<int> tl(ladder.begin(), ladder.end());
  std::vector<TensionEstimate> est(vs.size());
  run_parallel(static_cast<long>(vs.size()), ctx.threads, [&](long i) {
    est[static_cast<std::size_t>(i)] = line_tension_estimate(
        rate, vs[static_cast<std::size_t>(i)], tl, samples, ctx.seed);
  });
  ResultTable table(kStdColumns);
  SvgSeries sv, ref;
  sv.label = "E(v) measured";
  ref.label = "(1+v^2)/2";
  double e0 = 0, e0_err = 0;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    table.add_row({fmtd(vs[i]), fmtd(est[i].value), fmtd(est[i].error),
                   fmtl(samples), fmtl(0), fmtd(0.0),
                   ResultTable::fmt(ctx.seed)});
    sv.x.push_back(vs[i]);
    sv.y.push_back(est[i].value);
    sv.yerr.push_back(est[i].error);
    ref.x.push_back(vs[i]);
    ref.y.push_back(0.5 * (1 + vs[i] * vs[i]));
    ref.yerr.push_back(0);
    if (std::abs(vs[i]) < 1e-12) {
      e0 = est[i].value;
      e0_err = est[i].error;
    }
  }
  // WLS quadratic fit E(v) = a + b v^2.
  double s11 = 0, s12 = 0, s22 = 0, sy1 = 0, sy2 = 0;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const double w = 1.0 / std::max(est[i].error * est[i].error, 1e-12);
    const double v2 = vs[i] * vs[i];
    s11 += w;
    s12 += w * v2;
    s22 += w * v2 * v2;
    sy1 += w * est[i].value;
    sy2 += w * est[i].value * v2;
  }
  const double det = s11 * s22 - s12 * s12;
  const double quad = (s11 * sy2 - s12 * sy1) / det;
  const double quad_err = std::sqrt(s11 / det);
  json summary;
  summary["rate"] = rate;
  summary["samples_per_point"] = samples;
  summary["E0"] = e0;
  summary["E0_err"] = e0_err;
  summary["quadratic_coefficient"] = quad;
  summary["quadratic_coefficient_err"] = quad_err;
  em.write(table, summary, {sv, ref},
           {"minimal-cut line tension", "v", "E(v) (ln q units)"});
}

void exp_dprm_exponents(const ExperimentContext& ctx) {
  const Config& c = ctx.config;
  std::vector<long> hs = c.get_int_list("heights", {{512, 1024, 2048, 4096}});
  const int samples = static_cast<int>(c.get_int("samples", 1000));
  const std::string law_name = c.get_string("law", "uniform");
  DisorderLaw law = DisorderLaw::uniform01;
  if (law_name == "uniform") law = DisorderLaw::uniform01;
  else if (law_name == "exponential") law = DisorderLaw::exponential;
  else throw config_error("dprm-exponents: law must be uniform or exponential");
  Emitter em{ctx, "dprm-exponents"};
  const std::vector<int> heights(hs.begin(), hs.end());
  const DprmExponents res = dprm_exponents(heights, samples, ctx.seed, law);
  ResultTable table({"x", "y", "yerr", "n_samples", "L", "p", "seed",
                     "wander_rms"});
  SvgSeries sv1, sv2;
  sv1.label = "energy sd";
  sv2.label = "wander rms";
  for (std::size_t i = 0; i < heights.size(); ++i) {
    table.add_row({fmtd(heights[i]), fmtd(res.energy_sd[i]), fmtd(0.0),
                   fmtl(samples), fmtl(0), fmtd(0.0),
                   ResultTable::fmt(ctx.seed), fmtd(res.wander_rms[i])});
    sv1.x.push_back(heights[i]);
    sv1.y.push_back(res.energy_sd[i]);
    sv1.yerr.push_back(0);
    sv2.x.push_back(heights[i]);
    sv2.y.push_back(res.wander_rms[i]);
    sv2.yerr.push_back(0);
  }
  json summary;
  summary["samples"] = samples;
  summary["beta"] = res.beta;
  summary["beta_err"] = res.beta_err;
  summary["zeta"] = res.zeta;
  summary["zeta_err"] = res.zeta_err;
  em.write(table, summary, {sv1, sv2},
           {"directed polymer exponents", "height", "scale", true, true});
}

void exp_membrane_solve(const ExperimentContext& ctx) {
  const Config& c = ctx.config;
  const std::vector<long> ts = c.get_int_list("t", {{1, 2, 3, 4, 6, 8, 12, 16}});
  const double ell = c.get_double("ell", 16.0);
  Emitter em{ctx, "membrane-solve"};
  const MembraneModel model = MembraneModel::random_circuit();
  const auto zero = [](double) { return 0.0; };
  ResultTable table({"x", "y", "yerr", "n_samples", "L", "p", "seed",
                     "S_region"});
  SvgSeries sv1, sv2;
  sv1.label = "half line";
  sv2.label = "region";
  for (long t : ts) {
    const double sh = membrane_entropy(model, zero, 0.0, t);
    const double sr = membrane_entropy_region(model, ell, t);
    table.add_row({fmtd(static_cast<double>(t)), fmtd(sh), fmtd(0.0), fmtl(1),
                   fmtl(0), fmtd(0.0), ResultTable::fmt(ctx.seed), fmtd(sr)});
    sv1.x.push_back(static_cast<double>(t));
    sv1.y.push_back(sh);
    sv1.yerr.push_back(0);
    sv2.x.push_back(static_cast<double>(t));
    sv2.y.push_back(sr);
    sv2.yerr.push_back(0);
  }
  json summary;
  summary["ell"] = ell;
  summary["v_E"] = model.v_entanglement();
  summary["v_B"] = model.v_butterfly();
  summary["s_eq_nats"] = model.s_eq;
  summary["t_star_expected"] = ell / (2.0 * model.v_entanglement());
  em.write(table, summary, {sv1, sv2},
           {"membrane entropy growth", "t", "S (nats)"});
}

std::vector<ExperimentInfo> make_registry() {
  std::vector<ExperimentInfo> reg;
  reg.push_back({"entanglement-growth",
                 "half-chain entropy growth in Haar brickwork (statevector)",
                 {"L", "depth", "realizations"},
                 exp_entanglement_growth});
  reg.push_back({"page-check",
                 "annealed half-cut Renyi-2 vs the late-time correction",
                 {"L", "depth", "realizations"},
                 exp_page_check});
  reg.push_back({"mipt-scan",
                 "tripartite mutual information across the measurement transition",
                 {"L", "p", "depth_factor", "realizations", "collapse"},
                 exp_mipt_scan});
  reg.push_back({"purification",
                 "purification of a maximally mixed state at low/high p",
                 {"L", "p", "depth_factor", "realizations"},
                 exp_purification});
  reg.push_back({"reference-qubit",
                 "entropy of a reference qubit under monitored dynamics",
                 {"L", "p", "depth_factor", "realizations"},
                 exp_reference_qubit});
  reg.push_back({"measurement-only-ising",
                 "spin-glass order parameter of the measurement-only Ising circuit",
                 {"L", "p_z", "depth_factor", "realizations"},
                 exp_measurement_only_ising});
  reg.push_back({"delta-s-scan",
                 "entanglement reduction from one extra measurement vs distance",
                 {"L", "p", "depth_factor", "realizations", "x_max"},
                 exp_delta_s_scan});
  reg.push_back({"otoc-front",
                 "operator-string front position and diffusive broadening",
                 {"depth", "samples", "L"},
                 exp_otoc_front});
  reg.push_back({"charge-diffusion",
                 "deterministic conserved-amplitude spreading and D fit",
                 {"t", "L"},
                 exp_charge_diffusion});
  reg.push_back({"conserved-weight",
                 "power-law decay of the conserved operator weight",
                 {"t_max", "L"},
                 exp_conserved_weight});
  reg.push_back({"sff-ramp",
                 "spectral form factor ramp (CUE or Floquet brickwork)",
                 {"kind", "dim", "L", "t_max", "samples"},
                 exp_sff_ramp});
  reg.push_back({"dual-unitary-correlations",
                 "light-ray confinement of two-point functions",
                 {"L", "t_max", "J", "realizations"},
                 exp_dual_unitary});
  reg.push_back({"min-cut-tension",
                 "minimal-cut line tension E(v) on Poisson circuits",
                 {"rate", "v", "t_ladder", "samples"},
                 exp_min_cut_tension});
  reg.push_back({"dprm-exponents",
                 "directed-polymer fluctuation and wandering exponents",
                 {"heights", "samples", "law"},
                 exp_dprm_exponents});
  reg.push_back({"membrane-solve",
                 "membrane DP: growth rate and finite-region crossover",
                 {"t", "ell"},
                 exp_membrane_solve});
  return reg;
}

}  // namespace

const std::vector<ExperimentInfo>& experiment_registry() {
  static const std::vector<ExperimentInfo> reg = make_registry();
  return reg;
}

const ExperimentInfo* find_experiment(const std::string& name) {
  for (const auto& e : experiment_registry())
    if (e.name == name) return &e;
  return nullptr;
}

int run_experiment_cli(const std::string& name, const std::string& config_path,
                       const std::string& out_dir, std::uint64_t seed_override,
                       bool has_seed_override, int threads) {
  const ExperimentInfo* info = find_experiment(name);
  if (!info) {
    std::fprintf(stderr, "unknown experiment: %s\n", name.c_str());
    return 2;
  }
  try {
    ExperimentContext ctx;
    ctx.config = config_path.empty() ? Config::parse("")
                                     : Config::parse_file(config_path);
    std::vector<std::string> known(info->config_keys.begin(),
                                   info->config_keys.end());
    known.push_back("seed");
    ctx.config.check_known_keys(known);
    ctx.out_dir = out_dir;
    ctx.seed = has_seed_override ? seed_override : ctx.config.get_u64("seed", 1);
    ctx.threads = threads > 0 ? threads : default_thread_count();
    info->run(ctx);
    return 0;
  } catch (const config_error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const degeneracy_error& e) {
    std::fprintf(stderr, "numerical degeneracy: %s\n", e.what());
    return 3;
  }
}

}  // namespace circuitlab
