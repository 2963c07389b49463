#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "acceptance.hpp"
#include "adtrw/adtrw.hpp"
#include "config.hpp"
#include "output.hpp"

namespace adtrw::cli {
namespace {

struct Io {
  std::ostream& out;
  std::ostream& err;
};

using Body = std::function<int(ExperimentConfig&, Io&)>;

struct Command {
  std::string name;
  std::string help;
  std::vector<ParamSpec> schema;
  Body body;
};

ParamSpec param(std::string key, ValueType type, std::string fallback, std::string help,
                std::vector<std::string> choices = {}, bool required = false) {
  return ParamSpec{std::move(key), type, std::move(fallback), std::move(help), std::move(choices), required};
}

ParamSpec density_param() {
  return param("density", ValueType::Text, "",
               "waiting-time density: geometric:p=<p>, sibuya:beta=<b>, poisson:lambda=<l>, trivial, file:<path>", {},
               true);
}

ParamSpec format_param(const std::string& fallback = "csv") {
  return param("format", ValueType::Choice, fallback, "output format", {"csv", "json"});
}

ParamSpec out_param() { return param("out", ValueType::Text, "-", "output path, '-' for stdout"); }

ParamSpec int_param(const std::string& key, const std::string& fallback, const std::string& help,
                    bool required = false) {
  return param(key, ValueType::Int, fallback, help, {}, required);
}

ParamSpec jump_param(const std::string& key, const char* side) {
  return param(key, ValueType::Text, "",
               std::string("file with the ") + side + " jump density W(r), r = 1, 2, ...; unit jumps when omitted");
}

ParamSpec seed_param(bool required) {
  return param("seed", ValueType::Int, "", "Monte Carlo seed (>= 0)", {}, required);
}

int int_at_least(const ExperimentConfig& c, const std::string& key, int lo) {
  const int v = c.small_int(key);
  if (v < lo) throw ConfigError(flag_name(key) + " must be >= " + std::to_string(lo) + ", got " + std::to_string(v));
  return v;
}

std::uint64_t seed_of(const ExperimentConfig& c) {
  const auto v = c.integer("seed");
  if (v < 0) throw ConfigError("--seed must be >= 0, got " + std::to_string(v));
  return static_cast<std::uint64_t>(v);
}

DensitySpec density_spec(const ExperimentConfig& c) { return parse_density_spec(c.text("density")); }

JumpDensity jumps(const ExperimentConfig& c, const std::string& key, Direction direction) {
  if (!c.has(key)) return JumpDensity::unit(direction);
  return read_jump_density(c.text(key), direction);
}

bool as_json(const ExperimentConfig& c) { return c.text("format") == "json"; }

void emit(const ExperimentConfig& c, Io& io, const std::string& content) { write_output(c.text("out"), content, io.out); }

void describe_density(Metadata& meta, const WaitingTimeDensity& d) {
  meta.diag("density_label", d.label());
  meta.diag("tail_class", to_string(d.tail().kind));
  meta.diag("horizon", static_cast<std::int64_t>(d.horizon()));
  meta.diag("mass_deficit", d.mass_deficit());
}

std::string str(int v) { return std::to_string(v); }
std::string str(std::int64_t v) { return std::to_string(v); }

// density ---------------------------------------------------------------

int cmd_density(ExperimentConfig& c, Io& io) {
  const int horizon = int_at_least(c, "horizon", 1);
  const auto d = make_density(density_spec(c), horizon);
  Metadata meta = make_metadata(c);
  describe_density(meta, d);
  if (d.mean_wait()) meta.diag("mean_wait", *d.mean_wait());
  const auto s = d.survival();
  if (as_json(c)) {
    Json doc;
    doc["metadata"] = json_metadata(meta);
    doc["label"] = d.label();
    doc["tail"] = to_string(d.tail().kind);
    doc["mean_wait"] = d.mean_wait() ? json_number(*d.mean_wait()) : Json(nullptr);
    doc["mass_deficit"] = d.mass_deficit();
    doc["psi"] = std::vector<double>(d.probs().begin(), d.probs().end());
    doc["survival"] = std::vector<double>(s.begin(), s.end());
    emit(c, io, render_json(doc));
    return kExitOk;
  }
  CsvTable table({"t", "psi", "survival"});
  for (int t = 0; t <= horizon; ++t) table.row({str(t), fmt(d(t)), fmt(s[static_cast<std::size_t>(t)])});
  emit(c, io, table.render(meta));
  return kExitOk;
}

// states ----------------------------------------------------------------

int cmd_states(ExperimentConfig& c, Io& io) {
  const int t_max = int_at_least(c, "t_max", 0);
  const int n_max = c.small_int("n_max");
  if (n_max < -1) throw ConfigError("--n-max must be >= 0, or -1 for all states");
  const auto d = make_density(density_spec(c), std::max(1, t_max));
  const StateTable table = state_table(d, t_max, n_max);
  Metadata meta = make_metadata(c);
  describe_density(meta, d);
  const bool complete = table.complete_at(t_max);
  if (as_json(c)) {
    Json doc;
    doc["metadata"] = json_metadata(meta);
    Json states = Json::array();
    for (int t = 0; t <= t_max; ++t) states.push_back({{"t", t}, {"probs", table.column(t)}});
    doc["states"] = states;
    if (complete) doc["expected_arrivals"] = expected_arrivals(table);
    emit(c, io, render_json(doc));
    return kExitOk;
  }
  CsvTable csv({"t", "n", "probability"});
  for (int t = 0; t <= t_max; ++t) {
    const auto col = table.column(t);
    for (std::size_t n = 0; n < col.size(); ++n) csv.row({str(t), std::to_string(n), fmt(col[n])});
  }
  emit(c, io, csv.render(meta));
  return kExitOk;
}

// bell ------------------------------------------------------------------

int cmd_bell(ExperimentConfig& c, Io& io) {
  const int r_max = int_at_least(c, "r_max", 0);
  const auto d = make_density(density_spec(c), std::max(1, r_max));
  const BellTable table = incomplete_bell(d, r_max);
  Metadata meta = make_metadata(c);
  describe_density(meta, d);
  if (as_json(c)) {
    Json doc;
    doc["metadata"] = json_metadata(meta);
    Json rows = Json::array();
    for (int r = 0; r <= r_max; ++r) {
      std::vector<double> values;
      for (int n = 0; n <= r; ++n) values.push_back(table(r, n));
      rows.push_back({{"r", r}, {"values", values}});
    }
    doc["bell"] = rows;
    emit(c, io, render_json(doc));
    return kExitOk;
  }
  CsvTable csv({"r", "n", "value"});
  for (int r = 0; r <= r_max; ++r) {
    for (int n = 0; n <= r; ++n) csv.row({str(r), str(n), fmt(table(r, n))});
  }
  emit(c, io, csv.render(meta));
  return kExitOk;
}

// walk ------------------------------------------------------------------

int cmd_walk(ExperimentConfig& c, Io& io) {
  const int t = int_at_least(c, "t", 0);
  const auto d = make_density(density_spec(c), std::max(1, t));
  const auto wplus = jumps(c, "wplus", Direction::Positive);
  const auto wminus = jumps(c, "wminus", Direction::Negative);
  const LatticeDistribution dist = (wplus.is_unit() && wminus.is_unit())
                                       ? simple_walk_dist(d, t)
                                       : general_walk_dist(d, wplus, wminus, t, reachable_window(wplus, wminus, t));
  Metadata meta = make_metadata(c);
  describe_density(meta, d);
  meta.diag("total_probability", dist.total());
  if (as_json(c)) {
    Json doc;
    doc["metadata"] = json_metadata(meta);
    doc["t"] = t;
    doc["offset"] = dist.offset;
    doc["probs"] = dist.probs;
    emit(c, io, render_json(doc));
    return kExitOk;
  }
  CsvTable csv({"t", "site", "probability"});
  for (int site = dist.lo(); site <= dist.hi(); ++site) csv.row({str(t), str(site), fmt(dist.at(site))});
  emit(c, io, csv.render(meta));
  return kExitOk;
}

// mc --------------------------------------------------------------------

Json mc_summary(const McEnsemble& ens) {
  Json s;
  s["samples"] = ens.samples;
  s["seed"] = ens.seed;
  s["shards"] = ens.shards;
  s["t_max"] = ens.t_max;
  s["truncated"] = ens.truncated;
  s["not_returned"] = ens.not_returned;
  s["returned"] = ens.returned();
  s["return_fraction"] = json_number(ens.return_fraction());
  s["first_return"] = ens.first_return;
  Json mean = Json::array();
  for (int t = 0; t <= ens.t_max; ++t) mean.push_back(json_number(ens.mean_position(t)));
  s["mean_position"] = mean;
  s["live"] = ens.live;
  return s;
}

int cmd_mc(ExperimentConfig& c, Io& io) {
  const int t_max = int_at_least(c, "t_max", 1);
  const auto samples = c.integer("samples");
  if (samples < 1) throw ConfigError("--samples must be >= 1");
  const auto seed = seed_of(c);
  McOptions options;
  options.record_times = c.has("record") ? c.int_list("record") : std::vector<int>{t_max};
  for (int t : options.record_times) {
    if (t < 0 || t > t_max) throw ConfigError("--record time " + str(t) + " outside [0, t_max]");
  }
  const auto d = make_density(density_spec(c), t_max);
  const auto wplus = jumps(c, "wplus", Direction::Positive);
  const auto wminus = jumps(c, "wminus", Direction::Negative);
  const McEnsemble ens = mc_sample(d, wplus, wminus, t_max, samples, seed, options);

  Metadata meta = make_metadata(c);
  meta.seed = seed;
  meta.shards = ens.shards;
  meta.samples = ens.samples;
  describe_density(meta, d);
  meta.diag("truncated", ens.truncated);
  meta.diag("returned", ens.returned());
  meta.diag("not_returned", ens.not_returned);

  Json summary;
  summary["metadata"] = json_metadata(meta);
  summary["summary"] = mc_summary(ens);
  if (as_json(c)) {
    Json hist = Json::array();
    for (const auto& h : ens.histograms) hist.push_back({{"t", h.t}, {"offset", h.offset}, {"counts", h.counts}});
    summary["histograms"] = hist;
    emit(c, io, render_json(summary));
    return kExitOk;
  }
  CsvTable csv({"t", "site", "count", "probability"});
  for (const auto& h : ens.histograms) {
    const auto total = h.total();
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
      const double p = total == 0 ? 0.0 : static_cast<double>(h.counts[i]) / static_cast<double>(total);
      csv.row({str(h.t), str(h.offset + static_cast<int>(i)), str(h.counts[i]), fmt(p)});
    }
  }
  emit(c, io, csv.render(meta));
  std::string summary_path;
  if (c.has("summary")) {
    summary_path = c.text("summary");
  } else if (c.text("out") != "-") {
    summary_path = c.text("out") + ".summary.json";
  }
  if (summary_path.empty()) {
    io.err << "adtrw mc: histogram CSV on stdout; pass --summary <path> for the summary JSON\n";
  } else {
    write_output(summary_path, render_json(summary), io.out);
  }
  return kExitOk;
}

// analyze ---------------------------------------------------------------

WaitingTimeDensity asserted_tail(const ExperimentConfig& c, WaitingTimeDensity d) {
  const std::string tail = c.text("tail");
  if (tail == "auto") return d;
  if (tail == "fat") {
    if (!c.has("tail_mu") || !c.has("tail_a_mu")) throw ConfigError("--tail fat needs --tail-mu and --tail-a-mu");
    return d.with_tail(TailClass::fat(c.real("tail_mu"), c.real("tail_a_mu")), std::nullopt);
  }
  if (c.has("mean_wait")) return d.with_tail(TailClass::light(), c.real("mean_wait"));
  if (d.mass_deficit() > 1e-12) {
    throw ConfigError("--tail light on a density with mass deficit " + fmt(d.mass_deficit()) +
                      " needs an explicit --mean-wait");
  }
  double mean = 0.0;
  for (int t = 1; t <= d.horizon(); ++t) mean += t * d(t);
  return d.with_tail(TailClass::light(), mean);
}

int cmd_analyze(ExperimentConfig& c, Io& io) {
  const int t_max = int_at_least(c, "t_max", 1);
  const double tol = c.real("recurrence_tol");
  if (!(tol > 0.0)) throw ConfigError("--recurrence-tol must be > 0");
  const auto spec = density_spec(c);
  const auto d = asserted_tail(c, make_density(spec, t_max));
  AnalyzeOptions options;
  options.sites = c.sites("sites");
  options.t_max = t_max;
  options.recurrence_tol = tol;
  if (const auto* s = std::get_if<spec::Sibuya>(&spec)) {
    options.ft_est_origin = sibuya_est_origin(SibuyaParams{s->beta});
    options.ft_est_method = "quadrature";
  }
  const Analysis a = analyze(d, options);
  const RunReport& r = a.report;

  Metadata meta = make_metadata(c);
  describe_density(meta, d);
  meta.diag("est_method", r.est_method);

  Json doc;
  doc["metadata"] = json_metadata(meta);
  doc["a1"] = json_number(r.a1);
  doc["bias_b"] = json_number(r.bias_b);
  doc["verdict"] = to_string(r.verdict);
  doc["est"] = json_number(r.est_origin);
  doc["escape_prob"] = json_number(r.escape_prob);
  doc["asym_slope"] = json_number(r.asym_slope);
  doc["r_zero"] = r.r_zero ? json_number(*r.r_zero) : Json(nullptr);
  doc["mass_deficit"] = r.mass_deficit;
  doc["est_method"] = r.est_method;
  Json sites = Json::array();
  CsvTable csv({"site", "est_exact", "est_numeric"});
  for (const auto& s : a.sites) {
    sites.push_back({{"site", s.site}, {"est_exact", json_number(s.est_exact)}, {"est_numeric", json_number(s.est_numeric)}});
    csv.row({str(s.site), fmt(s.est_exact), fmt(s.est_numeric)});
  }
  doc["sites"] = sites;

  if (c.has("sites_out")) write_output(c.text("sites_out"), csv.render(meta), io.out);
  if (as_json(c)) {
    emit(c, io, render_json(doc));
    return kExitOk;
  }
  meta.diag("a1", r.a1);
  meta.diag("bias_b", r.bias_b);
  meta.diag("verdict", to_string(r.verdict));
  meta.diag("est", r.est_origin);
  meta.diag("escape_prob", r.escape_prob);
  meta.diag("asym_slope", r.asym_slope);
  meta.diag("r_zero", r.r_zero ? fmt(*r.r_zero) : "none");
  emit(c, io, csv.render(meta));
  return kExitOk;
}

// invert-bias -----------------------------------------------------------

int cmd_invert_bias(ExperimentConfig& c, Io& io) {
  std::string path = c.text("f");
  if (path.rfind("file:", 0) == 0) path.erase(0, 5);
  const auto f = read_probability_column(path);
  Metadata meta = make_metadata(c);
  meta.diag("points", static_cast<std::int64_t>(f.size()));

  Json report;
  report["metadata"] = json_metadata(meta);
  report["points"] = f.size();
  std::optional<WaitingTimeDensity> d;
  std::string reason;
  try {
    d.emplace(density_from_bias(f));
  } catch (const InvalidArgument& e) {
    reason = e.what();
  }
  report["admissible"] = d.has_value();
  if (d) {
    report["mass"] = 1.0 - d->mass_deficit();
    report["mass_deficit"] = d->mass_deficit();
  } else {
    report["reason"] = reason;
  }
  if (c.has("report")) write_output(c.text("report"), render_json(report), io.out);
  if (!d) throw InvalidArgument(reason);

  meta.diag("mass_deficit", d->mass_deficit());
  if (as_json(c)) {
    Json doc;
    doc["metadata"] = json_metadata(meta);
    doc["admissible"] = true;
    doc["mass_deficit"] = d->mass_deficit();
    doc["psi"] = std::vector<double>(d->probs().begin(), d->probs().end());
    emit(c, io, render_json(doc));
    return kExitOk;
  }
  // A bare column so the file loads back through `--density file:<path>`.
  std::string body = csv_preamble(meta) + "# column: psi(t), t = 1.." + std::to_string(d->horizon()) + "\n";
  for (double p : d->probs()) body += fmt(p) + "\n";
  emit(c, io, body);
  return kExitOk;
}

// sibuya ----------------------------------------------------------------

int cmd_sibuya(ExperimentConfig& c, Io& io) {
  const std::string fig = c.text("fig");
  const auto betas = c.real_list("beta");
  if (!c.has("t_max") && fig != "est") c.set("t_max", fig == "1" ? "10000" : "1000", Origin::Default, "default");
  Metadata meta = make_metadata(c);

  if (fig == "est") {
    Json rows = Json::array();
    CsvTable csv({"beta", "est"});
    for (double beta : betas) {
      const double est = sibuya_est_origin(SibuyaParams{beta});
      rows.push_back({{"beta", beta}, {"est", json_number(est)}});
      csv.row({fmt(beta), fmt(est)});
    }
    if (as_json(c)) {
      emit(c, io, render_json(Json{{"metadata", json_metadata(meta)}, {"rows", rows}}));
    } else {
      emit(c, io, csv.render(meta));
    }
    return kExitOk;
  }

  const int t_max = int_at_least(c, "t_max", 0);
  const auto which = static_cast<SibuyaFigure>(std::stoi(fig));
  const char* column = which == SibuyaFigure::StatePolynomial      ? "state_poly"
                       : which == SibuyaFigure::ReturnProbability ? "return_prob"
                                                                  : "expected_position";
  const auto rows = sibuya_figure(which, betas, t_max);
  if (as_json(c)) {
    Json out = Json::array();
    for (const auto& r : rows) out.push_back({{"beta", r.beta}, {"t", r.t}, {column, json_number(r.value)}});
    emit(c, io, render_json(Json{{"metadata", json_metadata(meta)}, {"rows", out}}));
    return kExitOk;
  }
  CsvTable csv({"beta", "t", column});
  for (const auto& r : rows) csv.row({fmt(r.beta), str(r.t), fmt(r.value)});
  emit(c, io, csv.render(meta));
  return kExitOk;
}

// actrw -----------------------------------------------------------------

int cmd_actrw(ExperimentConfig& c, Io& io) {
  const MLParams clock{c.real("mu"), c.real("xi0")};
  clock.validate();
  const int n_max = int_at_least(c, "n_max", 0);
  const auto times = c.grid("t");
  for (double t : times) {
    if (!(t >= 0.0)) throw ConfigError("--t: times must be >= 0");
  }
  const bool mc = c.flag("mc");
  if (mc && !c.has("seed")) throw ConfigError("actrw: --mc needs --seed");
  const auto d = make_density(density_spec(c), kMaxClockStates);

  std::vector<ComposedStateTable> tables;
  for (double t : times) tables.push_back(composed_states(d, clock, t, n_max));

  std::optional<ActrwEnsemble> ens;
  Metadata meta = make_metadata(c);
  describe_density(meta, d);
  if (mc) {
    const auto samples = c.integer("samples");
    if (samples < 1) throw ConfigError("--samples must be >= 1");
    const auto seed = seed_of(c);
    ens = actrw_mc(d, clock, jumps(c, "wplus", Direction::Positive), jumps(c, "wminus", Direction::Negative), times,
                   samples, seed);
    meta.seed = seed;
    meta.shards = ens->shards;
    meta.samples = ens->samples;
    meta.diag("mc_truncated", ens->truncated);
  }
  // actrw_mc sorts and deduplicates; map each grid time to its histogram.
  auto mc_index = [&](double t) {
    const auto it = std::lower_bound(ens->times.begin(), ens->times.end(), t);
    return static_cast<std::size_t>(it - ens->times.begin());
  };

  Json diag = Json::array();
  for (const auto& tab : tables) {
    diag.push_back({{"t", tab.t}, {"m_max", tab.m_max}, {"tail_bound", tab.tail_bound}, {"clamped", tab.clamped}});
    meta.diag("clock[t=" + fmt(tab.t) + "]", "m_max=" + str(tab.m_max) + " tail_bound=" + fmt(tab.tail_bound) +
                                   " clamped=" + str(tab.clamped));
  }

  if (as_json(c)) {
    Json doc;
    doc["metadata"] = json_metadata(meta);
    Json out = Json::array();
    for (std::size_t i = 0; i < tables.size(); ++i) {
      Json entry = diag[i];
      entry["probs"] = tables[i].probs;
      if (ens) {
        std::vector<double> mc_probs;
        const auto& h = ens->arrivals[mc_index(tables[i].t)];
        for (int n = 0; n <= n_max; ++n) mc_probs.push_back(h.probability(n));
        entry["mc_probs"] = mc_probs;
      }
      out.push_back(entry);
    }
    doc["times"] = out;
    emit(c, io, render_json(doc));
    return kExitOk;
  }
  std::vector<std::string> columns{"t", "n", "probability"};
  if (ens) columns.push_back("mc_probability");
  CsvTable csv(columns);
  for (const auto& tab : tables) {
    for (int n = 0; n <= n_max; ++n) {
      std::vector<std::string> cells{fmt(tab.t), str(n), fmt(tab.probs[static_cast<std::size_t>(n)])};
      if (ens) cells.push_back(fmt(ens->arrivals[mc_index(tab.t)].probability(n)));
      csv.row(cells);
    }
  }
  emit(c, io, csv.render(meta));
  return kExitOk;
}

// verify ----------------------------------------------------------------

int cmd_verify(ExperimentConfig& c, Io& io) {
  const auto only = c.has("only") ? c.int_list("only") : std::vector<int>{};
  const auto results = acceptance::run(only);
  std::ostringstream os;
  acceptance::print(os, results);
  emit(c, io, os.str());
  return acceptance::all_passed(results) ? kExitOk : kExitValidation;
}

std::vector<Command> commands() {
  using VT = ValueType;
  std::vector<Command> out;
  out.push_back({"density", "tabulate psi(t) and S(t)",
                 {density_param(), int_param("horizon", "64", "last tabulated t"), format_param(), out_param()},
                 cmd_density});
  out.push_back({"states", "state probabilities P(N(t) = n)",
                 {density_param(), int_param("t_max", "32", "last time"),
                  int_param("n_max", "-1", "largest n (-1: all)"), format_param(), out_param()},
                 cmd_states});
  out.push_back({"bell", "incomplete Bell polynomials B(r, n) of psi",
                 {density_param(), int_param("r_max", "16", "largest order r"), format_param(), out_param()},
                 cmd_bell});
  out.push_back({"walk", "exact walk distribution P(Y_t = j)",
                 {density_param(), int_param("t", "", "time", true), jump_param("wplus", "upward"),
                  jump_param("wminus", "downward"), format_param(), out_param()},
                 cmd_walk});
  out.push_back({"mc", "Monte Carlo walk histograms and first returns",
                 {density_param(), int_param("t_max", "256", "last simulated time"),
                  int_param("samples", "100000", "number of walks"), seed_param(true),
                  param("record", VT::IntList, "", "histogram times (default: t_max)"), jump_param("wplus", "upward"),
                  jump_param("wminus", "downward"),
                  param("summary", VT::Text, "", "summary JSON path (default: <out>.summary.json)"), format_param(),
                  out_param()},
                 cmd_mc});
  out.push_back({"analyze", "recurrence, bias and expected sojourn times",
                 {density_param(),
                  param("sites", VT::Sites, "-5..5", "sites for the EST table, 'a..b' or a list"),
                  int_param("t_max", "2048", "horizon of the truncated sums"),
                  param("recurrence_tol", VT::Real, "1e-9", "|A1 - 2| below this counts as recurrent"),
                  param("tail", VT::Choice, "auto", "assert the tail class of a tabulated density",
                   {"auto", "light", "fat"}),
                  param("mean_wait", VT::Real, "", "A1 for --tail light"),
                  param("tail_mu", VT::Real, "", "mu for --tail fat"),
                  param("tail_a_mu", VT::Real, "", "a_mu for --tail fat"),
                  param("sites_out", VT::Text, "", "also write the per-site CSV here"), format_param("json"),
                  out_param()},
                 cmd_analyze});
  out.push_back({"invert-bias", "density whose walk has mean position f(t)",
                 {param("f", VT::Text, "", "file:<path> with f(t), t = 1, 2, ...", {}, true),
                  param("report", VT::Text, "", "admissibility report JSON path"), format_param(), out_param()},
                 cmd_invert_bias});
  out.push_back({"sibuya", "Sibuya figure data and expected sojourn time",
                 {param("beta", VT::RealList, "0.5", "comma-separated beta values in (0,1)"),
                  param("fig", VT::Choice, "", "1: state polynomial, 2: return probability, 3: expected position, est",
                   {"1", "2", "3", "est"}, true),
                  int_param("t_max", "", "last time (default 10000 for fig 1, 1000 otherwise)"), format_param(),
                  out_param()},
                 cmd_sibuya});
  out.push_back({"actrw", "time-changed walk under a fractional Poisson clock",
                 {density_param(), param("mu", VT::Real, "1", "clock index in (0,1]"),
                  param("xi0", VT::Real, "1", "clock rate"),
                  param("t", VT::Grid, "", "observation times start:stop:step", {}, true),
                  int_param("n_max", "32", "largest arrival count"),
                  param("mc", VT::Bool, "false", "add a Monte Carlo column"),
                  int_param("samples", "100000", "Monte Carlo samples"), seed_param(false),
                  jump_param("wplus", "upward"), jump_param("wminus", "downward"), format_param(), out_param()},
                 cmd_actrw});
  out.push_back({"verify", "run the acceptance suite",
                 {param("only", VT::IntList, "", "criterion ids to run (default: all)"), out_param()},
                 cmd_verify});
  return out;
}

struct Bound {
  const ParamSpec* spec;
  CLI::Option* option;
  std::string value;
  bool set = false;
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  const auto table = commands();
  CLI::App app{"adtrw: asymmetric discrete-time random walks driven by a renewal generator process", "adtrw"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "flat 'key = value' config file; flags override it");

  std::vector<std::pair<CLI::App*, std::vector<std::unique_ptr<Bound>>>> bound;
  for (const auto& cmd : table) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    sub->fallthrough();
    std::vector<std::unique_ptr<Bound>> opts;
    for (const auto& p : cmd.schema) {
      auto b = std::make_unique<Bound>();
      b->spec = &p;
      std::string help = p.help;
      if (!p.default_value.empty()) help += " [" + p.default_value + "]";
      if (p.required) help += " (required)";
      if (p.type == ValueType::Bool) {
        b->option = sub->add_flag(flag_name(p.key), b->set, help);
      } else {
        b->option = sub->add_option(flag_name(p.key), b->value, help)->allow_extra_args(false);
      }
      opts.push_back(std::move(b));
    }
    bound.emplace_back(sub, std::move(opts));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  std::size_t which = 0;
  while (which < bound.size() && !bound[which].first->parsed()) ++which;
  const Command& cmd = table[which];
  Io io{out, err};
  try {
    ExperimentConfig config(cmd.name, cmd.schema);
    if (!config_path.empty()) apply_config(config, load_config(config_path), config_path);
    for (const auto& b : bound[which].second) {
      if (b->option->count() == 0) continue;
      const std::string value = b->spec->type == ValueType::Bool ? (b->set ? "true" : "false") : b->value;
      config.set(b->spec->key, value, Origin::Flag, "option");
    }
    config.check_required();
    return cmd.body(config, io);
  } catch (const ConfigError& e) {
    err << "adtrw " << cmd.name << ": " << e.what() << "\n";
    return kExitValidation;
  } catch (const EnvelopeError& e) {
    err << "adtrw " << cmd.name << ": outside the numerical envelope: " << e.what() << "\n";
    return kExitEnvelope;
  } catch (const NumericalError& e) {
    err << "adtrw " << cmd.name << ": numerical failure: " << e.what() << "\n";
    return kExitEnvelope;
  } catch (const std::exception& e) {
    err << "adtrw " << cmd.name << ": " << e.what() << "\n";
    return kExitValidation;
  }
}

}  // namespace adtrw::cli
