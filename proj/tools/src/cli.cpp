/*
 * Copyright 2026 The mgfield Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "mgfield_cli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mgfield/mgfield.hpp"

namespace mgfield::cli {
namespace {

using nlohmann::json;

struct Params {
  std::vector<double> kappa{1.0};
  std::vector<double> a{1.0};
  double tau = 1.0;
  double alpha = 1.0;
  double mesh_h = 0.1;
  std::uint64_t seed = 0;
};

struct Context {
  const RunConfig& cfg;
  json config;
  Params params;
};

std::vector<double> as_list(const json& j) {
  if (j.is_array()) return j.get<std::vector<double>>();
  return {j.get<double>()};
}

Context load_context(const RunConfig& cfg) {
  Context ctx{cfg, json::object(), Params{}};
  if (!cfg.config_path.empty()) {
    try {
      ctx.config = json::parse(io::read_text(cfg.config_path));
    } catch (const json::exception& e) {
      throw ValidationError(std::string("config: ") + e.what());
    }
    if (!ctx.config.is_object()) throw ValidationError("config: top level must be an object");
  }
  const json& c = ctx.config;
  Params& p = ctx.params;
  try {
    if (c.contains("kappa")) p.kappa = as_list(c["kappa"]);
    if (c.contains("a")) p.a = as_list(c["a"]);
    if (c.contains("tau")) p.tau = c["tau"].get<double>();
    if (c.contains("alpha")) p.alpha = c["alpha"].get<double>();
    if (c.contains("mesh_h")) p.mesh_h = c["mesh_h"].get<double>();
    if (c.contains("seed")) p.seed = c["seed"].get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  if (!cfg.kappa.empty()) p.kappa = cfg.kappa;
  if (!cfg.a.empty()) p.a = cfg.a;
  if (cfg.tau) p.tau = *cfg.tau;
  if (cfg.alpha) p.alpha = *cfg.alpha;
  if (cfg.mesh_h) p.mesh_h = *cfg.mesh_h;
  if (cfg.seed) p.seed = *cfg.seed;
  if (!(p.tau > 0.0) || !std::isfinite(p.tau)) throw ValidationError("tau must be positive");
  if (!(p.mesh_h > 0.0) || !std::isfinite(p.mesh_h)) throw ValidationError("mesh-h must be positive");
  return ctx;
}

std::size_t count_int(double x, const char* what) {
  if (!(x >= 1.0) || x != std::floor(x)) throw ValidationError(std::string(what) + " must be a positive integer");
  return static_cast<std::size_t>(x);
}

MetricGraph resolve_graph(const Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  if (!cfg.graph_path.empty()) return io::read_graph(cfg.graph_path);
  if (ctx.config.contains("graph")) return io::parse_graph(ctx.config["graph"].dump());

  int given = 0;
  given += cfg.interval.has_value();
  given += !cfg.circle.empty();
  given += !cfg.star.empty();
  given += !cfg.figure_eight.empty();
  given += !cfg.tadpole.empty();
  if (given == 0) throw ValidationError("no graph: pass --graph, --config or a canonical graph flag");
  if (given > 1) throw ValidationError("more than one canonical graph flag given");

  if (cfg.interval) return canonical_graph(IntervalSpec{*cfg.interval});
  if (!cfg.circle.empty()) {
    if (cfg.circle.size() != 2) throw ValidationError("--circle takes LENGTH N");
    return canonical_graph(CircleSpec{cfg.circle[0], count_int(cfg.circle[1], "circle edge count")});
  }
  if (!cfg.star.empty()) return canonical_graph(StarSpec{cfg.star});
  if (!cfg.figure_eight.empty()) {
    if (cfg.figure_eight.size() != 2) throw ValidationError("--figure-eight takes L1 L2");
    return canonical_graph(FigureEightSpec{cfg.figure_eight[0], cfg.figure_eight[1], cfg.subdivisions});
  }
  if (cfg.tadpole.size() != 2) throw ValidationError("--tadpole takes CYCLE_LENGTH EDGE_LENGTH");
  return canonical_graph(TadpoleSpec{cfg.tadpole[0], cfg.tadpole[1], cfg.subdivisions});
}

std::vector<double> per_edge(const std::vector<double>& v, const MetricGraph& g, const char* what) {
  if (v.size() == 1) return std::vector<double>(g.edge_count(), v.front());
  if (v.size() != g.edge_count()) {
    throw ValidationError(std::string(what) + ": expected 1 or " + std::to_string(g.edge_count()) + " values");
  }
  return v;
}

FieldModel resolve_model(const Context& ctx, const MetricGraph& g) {
  FieldModel m;
  m.kappa = per_edge(ctx.params.kappa, g, "kappa");
  m.a = per_edge(ctx.params.a, g, "a");
  m.tau = ctx.params.tau;
  m.alpha = ctx.params.alpha;
  m.validate(g);
  return m;
}

std::vector<PointOnGraph> read_points_file(const MetricGraph& g, const std::string& path) {
  std::istringstream in(io::read_text(path));
  return io::read_points(g, in);
}

std::vector<PointOnGraph> resolve_points(const Context& ctx, const MetricGraph& g) {
  if (!ctx.cfg.points_path.empty()) return read_points_file(g, ctx.cfg.points_path);
  return node_mesh(g, ctx.params.mesh_h).nodes;
}

const std::string& require_path(const std::string& path, const char* flag) {
  if (path.empty()) throw ValidationError(std::string(flag) + " is required");
  return path;
}

// Minimal JSON emission so that every float goes through format_double.
std::string jnum(double x) { return std::isfinite(x) ? io::format_double(x) : "null"; }
std::string jstr(const std::string& s) { return json(s).dump(); }

std::string jarray(const std::vector<std::string>& items) {
  std::string s = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) s += ",";
    s += items[i];
  }
  return s + "]";
}

std::string jmatrix(const Eigen::MatrixXd& m) {
  std::vector<std::string> rows;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::vector<std::string> row;
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(jnum(m(i, j)));
    rows.push_back(jarray(row));
  }
  return jarray(rows);
}

std::string jpoints(const MetricGraph& g, std::span<const PointOnGraph> pts) {
  std::vector<std::string> items;
  for (const auto& p : pts) {
    items.push_back("{\"edge\":" + jstr(g.edge(p.edge).id) + ",\"t\":" + jnum(p.t) + "}");
  }
  return jarray(items);
}

using Fields = std::vector<std::pair<std::string, std::string>>;

void write_object(std::ostream& out, const Fields& fields) {
  out << "{\n";
  for (std::size_t i = 0; i < fields.size(); ++i) {
    out << "  " << jstr(fields[i].first) << ": " << fields[i].second << (i + 1 < fields.size() ? ",\n" : "\n");
  }
  out << "}\n";
}

void write_table(std::ostream& out, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
  for (std::size_t j = 0; j < header.size(); ++j) out << (j ? "," : "") << header[j];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << row[j];
    out << '\n';
  }
}

std::string table_json(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows,
                       const std::vector<bool>& quoted) {
  std::vector<std::string> items;
  for (const auto& row : rows) {
    std::string s = "{";
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) s += ",";
      s += jstr(header[j]) + ":" + (quoted[j] ? jstr(row[j]) : row[j]);
    }
    items.push_back(s + "}");
  }
  return jarray(items);
}

void emit_matrix(std::ostream& out, Format f, const MetricGraph& g, std::span<const PointOnGraph> pts,
                 const CovMatrix& c, Fields extra = {}) {
  if (f == Format::kCsv) {
    io::write_matrix(out, c.values);
    return;
  }
  Fields fields{{"provenance", jstr(std::string(to_string(c.provenance)))},
                {"points", jpoints(g, pts)},
                {"min_eigenvalue", jnum(c.min_eigenvalue)}};
  fields.insert(fields.end(), extra.begin(), extra.end());
  fields.emplace_back("covariance", jmatrix(c.values));
  write_object(out, fields);
}

void cmd_validate(const Context& ctx, std::ostream& out) {
  const MetricGraph g = resolve_graph(ctx);
  const GraphClass k = classify(g);
  auto b = [](bool x) { return std::string(x ? "true" : "false"); };
  std::ostringstream hash;
  hash << std::hex << g.content_hash();
  const std::vector<std::pair<std::string, std::string>> rows{
      {"vertices", std::to_string(g.vertex_count())},
      {"edges", std::to_string(g.edge_count())},
      {"total_length", io::format_double(g.total_length())},
      {"euclidean_edges", b(k.euclidean_edges)},
      {"tree", b(k.tree)},
      {"euclidean_cycle", b(k.euclidean_cycle)},
      {"has_loops", b(k.has_loops)},
      {"has_multi_edges", b(k.has_multi_edges)},
      {"hash", hash.str()}};
  if (ctx.cfg.format == Format::kCsv) {
    out << "key,value\n";
    for (const auto& [key, value] : rows) out << key << ',' << value << '\n';
    return;
  }
  Fields fields;
  for (const auto& [key, value] : rows) fields.emplace_back(key, key == "hash" ? jstr(value) : value);
  write_object(out, fields);
}

void cmd_cov(const Context& ctx, std::ostream& out) {
  const MetricGraph g = resolve_graph(ctx);
  const FieldModel m = resolve_model(ctx, g);
  const auto pts = resolve_points(ctx, g);
  emit_matrix(out, ctx.cfg.format, g, pts, full_cov(g, m, pts));
}

void cmd_sample(const Context& ctx, std::ostream& out) {
  const MetricGraph g = resolve_graph(ctx);
  const FieldModel m = resolve_model(ctx, g);
  const auto pts = resolve_points(ctx, g);
  const Eigen::MatrixXd s = sample(g, m, pts, ctx.cfg.replicates, ctx.params.seed);
  if (ctx.cfg.format == Format::kCsv) {
    io::write_matrix(out, s);
    return;
  }
  write_object(out, {{"seed", std::to_string(ctx.params.seed)},
                     {"points", jpoints(g, pts)},
                     {"samples", jmatrix(s)}});
}

void cmd_spectral_cov(const Context& ctx, std::ostream& out) {
  const MetricGraph g = resolve_graph(ctx);
  const FieldModel m = resolve_model(ctx, g);
  const DiscreteOperator op = assemble(g, m, ctx.params.mesh_h);
  if (ctx.cfg.eigenvalues) {
    const Eigen::VectorXd& lam = op.eigenvalues();
    const std::size_t k = ctx.cfg.truncation == 0 ? static_cast<std::size_t>(lam.size())
                                                  : std::min<std::size_t>(ctx.cfg.truncation, lam.size());
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < k; ++i) {
      rows.push_back({std::to_string(i + 1), io::format_double(lam(static_cast<Eigen::Index>(i)))});
    }
    if (ctx.cfg.format == Format::kCsv) {
      write_table(out, {"k", "lambda"}, rows);
    } else {
      write_object(out, {{"dofs", std::to_string(op.dof_count())},
                         {"eigenvalues", table_json({"k", "lambda"}, rows, {false, false})}});
    }
    return;
  }
  const auto pts = ctx.cfg.points_path.empty() ? op.mesh().nodes : read_points_file(g, ctx.cfg.points_path);
  const SpectralCov sc = spectral_cov(op, ctx.params.alpha, ctx.params.tau, pts, ctx.cfg.truncation);
  emit_matrix(out, ctx.cfg.format, g, pts, sc.cov,
              {{"truncation", std::to_string(sc.truncation)}, {"tail_estimate", jnum(sc.tail_estimate)}});
}

void cmd_resistance(const Context& ctx, std::ostream& out) {
  const MetricGraph g = resolve_graph(ctx);
  std::istringstream in(io::read_text(require_path(ctx.cfg.pairs_path, "--pairs")));
  const auto pairs = io::read_pairs(g, in);
  const ResistanceStructure rs = resistance_structure(g);
  std::vector<std::vector<std::string>> rows;
  for (const auto& [p, q] : pairs) {
    rows.push_back({g.edge(p.edge).id, io::format_double(p.t), g.edge(q.edge).id, io::format_double(q.t),
                    io::format_double(geodesic_distance(g, p, q)), io::format_double(resistance_distance(g, rs, p, q))});
  }
  const std::vector<std::string> header{"edge_p", "t_p", "edge_q", "t_q", "d_geo", "d_res"};
  if (ctx.cfg.format == Format::kCsv) {
    write_table(out, header, rows);
  } else {
    write_object(out, {{"pairs", table_json(header, rows, {true, false, true, false, false, false})}});
  }
}

IsotropicModel resolve_isotropic(const Context& ctx, const MetricGraph& g) {
  IsotropicModel model;
  if (ctx.cfg.metric == "geodesic") {
    model.metric = MetricKind::kGeodesic;
  } else if (ctx.cfg.metric == "resistance") {
    model.metric = MetricKind::kResistance;
  } else {
    throw ValidationError("unknown metric '" + ctx.cfg.metric + "'");
  }
  if (ctx.params.kappa.size() != 1) throw ValidationError("isotropic kernels take a single kappa");
  const double kappa = ctx.params.kappa.front();
  if (ctx.cfg.kernel == "exponential") {
    if (!(ctx.cfg.sigma2 > 0.0)) throw ValidationError("sigma2 must be positive");
    model.kernel = ExponentialKernel{ctx.cfg.sigma2, kappa};
  } else if (ctx.cfg.kernel == "circle") {
    model.kernel = CircleMarkovKernel{kappa, ctx.params.tau, ctx.cfg.length.value_or(g.total_length())};
  } else {
    throw ValidationError("unknown kernel '" + ctx.cfg.kernel + "'");
  }
  if (!(kappa > 0.0)) throw ValidationError("kappa must be positive");
  return model;
}

void cmd_iso_cov(const Context& ctx, std::ostream& out, std::ostream& err) {
  const MetricGraph g = resolve_graph(ctx);
  const IsotropicModel model = resolve_isotropic(ctx, g);
  const auto pts = resolve_points(ctx, g);
  const CovMatrix c = iso_cov_matrix(g, model, pts);
  if (c.min_eigenvalue < 0.0) {
    err << "warning: covariance matrix is not positive semidefinite, min eigenvalue "
        << io::format_double(c.min_eigenvalue) << '\n';
  }
  emit_matrix(out, ctx.cfg.format, g, pts, c);
}

void cmd_markov_check(const Context& ctx, std::ostream& out) {
  const RunConfig& cfg = ctx.cfg;
  if (cfg.set_a.empty() || cfg.set_b.empty() || cfg.set_s.empty()) {
    throw ValidationError("--set-a, --set-b and --set-s are required");
  }
  Eigen::MatrixXd c;
  if (!cfg.cov_path.empty()) {
    std::istringstream in(io::read_text(cfg.cov_path));
    c = io::read_matrix(in);
    if (c.rows() != c.cols()) throw ValidationError("--cov must be a square matrix");
  } else {
    const MetricGraph g = resolve_graph(ctx);
    const FieldModel m = resolve_model(ctx, g);
    const auto pts = resolve_points(ctx, g);
    if (m.alpha == 1.0) {
      c = full_cov(g, m, pts).values;
    } else {
      const DiscreteOperator op = assemble(g, m, ctx.params.mesh_h);
      c = spectral_cov(op, m.alpha, m.tau, pts, cfg.truncation).cov.values;
    }
  }
  const double v = markov_check(c, cfg.set_a, cfg.set_b, cfg.set_s);
  if (cfg.format == Format::kCsv) {
    out << "max_abs_conditional_cov\n" << io::format_double(v) << '\n';
  } else {
    write_object(out, {{"max_abs_conditional_cov", jnum(v)}});
  }
}

void cmd_krige(const Context& ctx, std::ostream& out) {
  const RunConfig& cfg = ctx.cfg;
  const MetricGraph g = resolve_graph(ctx);
  std::istringstream obs_in(io::read_text(require_path(cfg.obs_path, "--obs")));
  const auto [obs, y] = io::read_observations(g, obs_in);
  const auto pred = read_points_file(g, require_path(cfg.pred_path, "--pred"));

  CovarianceSource source;
  if (cfg.source == "exact") {
    source = exact_source(ExactField(g, resolve_model(ctx, g)));
  } else if (cfg.source == "spectral") {
    const FieldModel m = resolve_model(ctx, g);
    source = spectral_source(assemble(g, m, ctx.params.mesh_h), m.alpha, m.tau, cfg.truncation);
  } else if (cfg.source == "isotropic") {
    source = isotropic_source(g, resolve_isotropic(ctx, g));
  } else {
    throw ValidationError("unknown covariance source '" + cfg.source + "'");
  }
  const KrigingResult r = krige(source, obs, y, cfg.noise, pred);

  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    rows.push_back({g.edge(pred[i].edge).id, io::format_double(pred[i].t), io::format_double(r.mean(k)),
                    io::format_double(r.covariance(k, k))});
  }
  const std::vector<std::string> header{"edge", "t", "mean", "var"};
  if (cfg.format == Format::kCsv) {
    write_table(out, header, rows);
  } else {
    write_object(out, {{"log_likelihood", jnum(r.log_likelihood)},
                       {"jitter", jnum(r.jitter)},
                       {"predictions", table_json(header, rows, {true, false, false, false})}});
  }
}

void cmd_nonexistence(const Context& ctx, std::ostream& out) {
  const RunConfig& cfg = ctx.cfg;
  if (ctx.params.kappa.size() != 1) throw ValidationError("nonexistence-demo takes a single kappa");
  const double kappa = ctx.params.kappa.front();
  GapCurve curve;
  if (cfg.demo == "two-cycles") {
    const auto& l = cfg.demo_lengths;
    if (!l.empty() && l.size() != 2) throw ValidationError("two-cycles takes L1 L2");
    TwoCycles c{l.empty() ? 1.0 : l[0], l.empty() ? 2.0 : l[1], kappa, ctx.params.tau};
    curve = nonexistence_gap(c, cfg.grid);
  } else if (cfg.demo == "cycle-plus-edge") {
    const auto& l = cfg.demo_lengths;
    if (!l.empty() && l.size() != 2) throw ValidationError("cycle-plus-edge takes CYCLE_LENGTH EDGE_LENGTH");
    CyclePlusEdge c{l.empty() ? 2.0 : l[0], l.empty() ? 1.0 : l[1], kappa, cfg.kappa2.value_or(kappa),
                    cfg.sigma, ctx.params.tau};
    curve = nonexistence_gap(c, cfg.grid);
  } else {
    throw ValidationError("nonexistence-demo needs two-cycles or cycle-plus-edge");
  }
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < curve.h.size(); ++i) {
    rows.push_back({io::format_double(curve.h[i]), io::format_double(curve.lhs[i]), io::format_double(curve.rhs[i]),
                    io::format_double(std::abs(curve.lhs[i] - curve.rhs[i]))});
  }
  const std::vector<std::string> header{"h", "lhs", "rhs", "gap"};
  if (cfg.format == Format::kCsv) {
    write_table(out, header, rows);
  } else {
    write_object(out, {{"max_gap", jnum(curve.max_gap)},
                       {"argmax", jnum(curve.argmax)},
                       {"max_relative_gap", jnum(curve.max_relative_gap)},
                       {"curve", table_json(header, rows, {false, false, false, false})}});
  }
}

void dispatch(const Context& ctx, std::ostream& out, std::ostream& err) {
  const std::string& s = ctx.cfg.subcommand;
  if (s == "validate") return cmd_validate(ctx, out);
  if (s == "cov") return cmd_cov(ctx, out);
  if (s == "sample") return cmd_sample(ctx, out);
  if (s == "spectral-cov") return cmd_spectral_cov(ctx, out);
  if (s == "resistance") return cmd_resistance(ctx, out);
  if (s == "iso-cov") return cmd_iso_cov(ctx, out, err);
  if (s == "markov-check") return cmd_markov_check(ctx, out);
  if (s == "krige") return cmd_krige(ctx, out);
  if (s == "nonexistence-demo") return cmd_nonexistence(ctx, out);
  throw ValidationError("unknown subcommand '" + s + "'");
}

constexpr const char* kFooter = R"(Graph JSON:
  {"vertices": N, "edges": [{"id": "e0", "u": 0, "v": 1, "length": 1.0}, ...]}
Config JSON (--config): optional keys graph, kappa, a, tau, alpha, mesh_h, seed.
  Command line flags override config values; --graph overrides an inline graph.
CSV inputs:
  points        edge_id,t
  observations  edge_id,t,y
  pairs         edge_p,t_p,edge_q,t_q
CSV outputs (floats with 17 significant digits):
  validate           key,value
  cov, iso-cov,
  spectral-cov       dense matrix, one row per point, no header
  sample             one replicate per row, no header
  spectral-cov --eigenvalues   k,lambda
  resistance         edge_p,t_p,edge_q,t_q,d_geo,d_res
  markov-check       max_abs_conditional_cov
  krige              edge,t,mean,var
  nonexistence-demo  h,lhs,rhs,gap
Exit codes: 0 success, 2 invalid input, 3 numerical failure.)";

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const Context ctx = load_context(config);
    std::ostringstream buffer;
    dispatch(ctx, buffer, err);
    if (config.out_path.empty()) {
      out << buffer.str();
    } else {
      std::ofstream file(config.out_path, std::ios::binary);
      if (!file) throw ValidationError("cannot write '" + config.out_path + "'");
      file << buffer.str();
    }
    return 0;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "numerical error: " << e.what() << '\n';
    return 3;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Gaussian random fields on compact metric graphs", "mgfield"};
  app.footer(kFooter);
  app.require_subcommand(1);

  auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("--graph", cfg.graph_path, "Graph JSON file");
    sub->add_option("--config", cfg.config_path, "Run config JSON, may embed the graph");
    sub->add_option_function<double>("--interval", [&cfg](double v) { cfg.interval = v; }, "Interval of LENGTH");
    sub->add_option("--circle", cfg.circle, "Circle LENGTH N")->expected(2);
    sub->add_option("--star", cfg.star, "Star with the given leaf lengths")->expected(1, 1 << 20);
    sub->add_option("--figure-eight", cfg.figure_eight, "Figure eight L1 L2")->expected(2);
    sub->add_option("--tadpole", cfg.tadpole, "Tadpole CYCLE_LENGTH EDGE_LENGTH")->expected(2);
    sub->add_option("--subdivisions", cfg.subdivisions, "Edges per cycle for figure-eight and tadpole");
    sub->add_option("--kappa", cfg.kappa, "kappa, one value or one per edge")->expected(1, 1 << 20);
    sub->add_option("--a", cfg.a, "Diffusion coefficient, one value or one per edge")->expected(1, 1 << 20);
    sub->add_option_function<double>("--tau", [&cfg](double v) { cfg.tau = v; }, "Precision scale tau");
    sub->add_option_function<double>("--alpha", [&cfg](double v) { cfg.alpha = v; }, "Smoothness alpha");
    sub->add_option_function<double>("--mesh-h", [&cfg](double v) { cfg.mesh_h = v; }, "Mesh spacing");
    sub->add_option_function<std::uint64_t>("--seed", [&cfg](std::uint64_t v) { cfg.seed = v; }, "Random seed");
    sub->add_option("--out", cfg.out_path, "Output file, stdout if omitted");
    sub->add_option("--format", cfg.format, "Output format: csv or json")
        ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"csv", Format::kCsv}, {"json", Format::kJson}}));
  };
  auto add_points = [&cfg](CLI::App* sub) {
    sub->add_option("--points", cfg.points_path, "Points CSV (edge_id,t); mesh nodes if omitted");
  };
  auto add_isotropic = [&cfg](CLI::App* sub) {
    sub->add_option("--metric", cfg.metric, "geodesic or resistance");
    sub->add_option("--kernel", cfg.kernel, "exponential or circle");
    sub->add_option("--sigma2", cfg.sigma2, "Exponential kernel variance");
    sub->add_option_function<double>("--length", [&cfg](double v) { cfg.length = v; },
                                     "Circle kernel perimeter, total length if omitted");
  };

  auto* validate = app.add_subcommand("validate", "Check a graph and report its class");
  add_common(validate);

  auto* cov = app.add_subcommand("cov", "Exact covariance for alpha = 1");
  add_common(cov);
  add_points(cov);

  auto* smp = app.add_subcommand("sample", "Draw exact alpha = 1 samples");
  add_common(smp);
  add_points(smp);
  smp->add_option("-n,--replicates", cfg.replicates, "Number of replicates");

  auto* spec = app.add_subcommand("spectral-cov", "Finite element spectral covariance");
  add_common(spec);
  add_points(spec);
  spec->add_option("--k", cfg.truncation, "Number of eigenpairs, all if 0");
  spec->add_flag("--eigenvalues", cfg.eigenvalues, "Emit the eigenvalue table instead");

  auto* res = app.add_subcommand("resistance", "Geodesic and resistance distances");
  add_common(res);
  res->add_option("--pairs", cfg.pairs_path, "Pairs CSV (edge_p,t_p,edge_q,t_q)");

  auto* iso = app.add_subcommand("iso-cov", "Isotropic covariance matrix");
  add_common(iso);
  add_points(iso);
  add_isotropic(iso);

  auto* mc = app.add_subcommand("markov-check", "Largest conditional covariance of A and B given S");
  add_common(mc);
  add_points(mc);
  mc->add_option("--cov", cfg.cov_path, "Covariance matrix CSV, computed from the model if omitted");
  mc->add_option("--set-a", cfg.set_a, "Point indices of A")->expected(1, 1 << 20);
  mc->add_option("--set-b", cfg.set_b, "Point indices of B")->expected(1, 1 << 20);
  mc->add_option("--set-s", cfg.set_s, "Point indices of S")->expected(1, 1 << 20);
  mc->add_option("--k", cfg.truncation, "Spectral truncation when alpha != 1");

  auto* kr = app.add_subcommand("krige", "Kriging prediction");
  add_common(kr);
  add_isotropic(kr);
  kr->add_option("--obs", cfg.obs_path, "Observations CSV (edge_id,t,y)");
  kr->add_option("--pred", cfg.pred_path, "Prediction points CSV (edge_id,t)");
  kr->add_option("--noise", cfg.noise, "Observation noise variance");
  kr->add_option("--source", cfg.source, "exact, spectral or isotropic");
  kr->add_option("--k", cfg.truncation, "Spectral truncation");

  auto* demo = app.add_subcommand("nonexistence-demo", "Gap between the two sides of the isotropy constraint");
  add_common(demo);
  demo->add_option("kind", cfg.demo, "two-cycles or cycle-plus-edge")->required();
  demo->add_option("lengths", cfg.demo_lengths, "Two lengths");
  demo->add_option_function<double>("--kappa2", [&cfg](double v) { cfg.kappa2 = v; }, "Cycle kappa");
  demo->add_option("--sigma", cfg.sigma, "Edge kernel scale");
  demo->add_option("--grid", cfg.grid, "Number of h values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  for (auto* sub : app.get_subcommands()) cfg.subcommand = sub->get_name();
  return run(cfg, out, err);
}

}  // namespace mgfield::cli
