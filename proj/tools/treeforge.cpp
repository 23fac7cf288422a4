// treeforge: command-line front end over the window/duality library.
//
// Every run writes a machine-readable report listing each invariant checked.
// Exit code 0 iff all invariants passed, 1 on an invariant or pipeline
// failure (the report is still written), 2 on bad configuration or
// malformed input.  Reports carry a schema version and a hash of the
// effective configuration; nothing time- or host-dependent is emitted, so
// identical invocations produce byte-identical reports.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "treeforge/core/ends.hpp"
#include "treeforge/core/errors.hpp"
#include "treeforge/core/gf2.hpp"
#include "treeforge/core/window.hpp"
#include "treeforge/cx/cell_complex.hpp"
#include "treeforge/cx/complex_dual.hpp"
#include "treeforge/cx/forest_ops.hpp"
#include "treeforge/cx/homology.hpp"
#include "treeforge/forest/extend.hpp"
#include "treeforge/forest/layered.hpp"
#include "treeforge/forest/parent_forest.hpp"
#include "treeforge/forest/random_forest.hpp"
#include "treeforge/gen/generators.hpp"
#include "treeforge/hyp/dirichlet.hpp"
#include "treeforge/hyp/geometry.hpp"
#include "treeforge/hyp/sites.hpp"
#include "treeforge/io/formats.hpp"
#include "treeforge/iso/isoperimetry.hpp"
#include "treeforge/planar/dual.hpp"
#include "treeforge/planar/embedding.hpp"
#include "treeforge/planar/treeing.hpp"
#include "treeforge/planar/two_basis.hpp"

namespace {

using namespace treeforge;

// ── run context ─────────────────────────────────────────────────────────────

// Collects the effective configuration, the invariant verdicts, and any
// extra payload; decides where data and report go.  Data goes to --out or
// stdout; the report goes to --report, else stdout when stdout is free,
// else stderr (so pipelines stay clean).
struct run_ctx {
  std::string command;
  std::string in_path, out_path, report_path;
  ojson config = ojson::object();
  ojson invariants = ojson::array();
  ojson extra = ojson::object();
  bool all_pass = true;
  bool data_to_stdout = false;

  void note(const std::string& name, bool pass) {
    ojson inv;
    inv["name"] = name;
    inv["pass"] = pass;
    invariants.push_back(std::move(inv));
    all_pass = all_pass && pass;
  }
  void note(const std::string& name, bool pass, ojson value) {
    ojson inv;
    inv["name"] = name;
    inv["pass"] = pass;
    inv["value"] = std::move(value);
    invariants.push_back(std::move(inv));
    all_pass = all_pass && pass;
  }

  void emit_data(const std::string& text) {
    if (out_path.empty()) {
      std::cout << text;
      data_to_stdout = true;
    } else {
      std::ofstream f(out_path, std::ios::binary);
      require(f.good(), errc::bad_params, "cannot write " + out_path);
      f << text;
    }
  }

  int finish() {
    ojson rep;
    rep["schema_version"] = 1;
    rep["command"] = command;
    char hex[20];
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(config.dump())));
    rep["config_hash"] = hex;
    rep["config"] = config;
    rep["invariants"] = invariants;
    for (auto& [k, v] : extra.items()) rep[k] = v;
    std::string text = rep.dump(2) + "\n";
    if (!report_path.empty()) {
      std::ofstream f(report_path, std::ios::binary);
      if (!f.good()) {
        std::cerr << "error: cannot write " << report_path << "\n";
        return 2;
      }
      f << text;
    } else if (data_to_stdout) {
      std::cerr << text;
    } else {
      std::cout << text;
    }
    return all_pass ? 0 : 1;
  }
};

// Wraps the compute phase: a library refusal becomes a failed invariant and
// exit code 1 with the report written, not a crash.
template <class F>
int run_guarded(run_ctx& ctx, F&& body) {
  try {
    body();
  } catch (const error& e) {
    ojson v;
    v["error"] = errc_name(e.code());
    v["detail"] = e.what();
    ctx.note("pipeline_completed", false, std::move(v));
  }
  return ctx.finish();
}

// ── input helpers (failures here are config errors: exit 2) ─────────────────

std::string read_text(const std::string& path) {
  if (path.empty()) {
    return std::string(std::istreambuf_iterator<char>(std::cin),
                       std::istreambuf_iterator<char>());
  }
  std::ifstream f(path, std::ios::binary);
  require(f.good(), errc::bad_params, "cannot read " + path);
  return std::string(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
}

window load_window(const std::string& path) { return window_from_json(ojson::parse(read_text(path))); }

cell_complex load_complex(const std::string& path) {
  std::string text = read_text(path);
  std::size_t at = text.find_first_not_of(" \t\r\n");
  if (at != std::string::npos && text.compare(at, 3, "OFF") == 0) return complex_from_off(text);
  return complex_from_json(ojson::parse(text));
}

ojson dual_to_json(const dual_graph& d) {
  ojson j;
  j["window"] = window_to_json(d.g);
  j["virtual_vertex"] = d.virtual_vertex;
  j["cycle_of_vertex"] = d.cycle_of_vertex;
  ojson crossing = ojson::object();
  for (const auto& [e, cs] : d.crossing)
    crossing[std::to_string(e)] = {cs.first, cs.second};
  j["crossing"] = std::move(crossing);
  return j;
}

ojson certificate_to_json(const iso_certificate& c) {
  ojson j;
  j["a"] = c.a;
  j["boundary"] = c.boundary;
  j["num"] = c.num;
  j["den"] = c.den;
  j["ratio"] = c.ratio;
  j["finite_components"] = c.finite_components;
  j["method"] = c.method;
  j["edge_variant"] = c.edge_variant;
  return j;
}

// Spanning-forest test used by treeing reports: same vertex partition as the
// source window and no cycles.
bool spanning_forest_of(const window& w, const window& tree) {
  return tree.component_labels() == w.component_labels() && cycle_space_rank(tree) == 0;
}

// ── subcommand option bags ──────────────────────────────────────────────────

struct gen_opts {
  std::string kind;
  int rows = 4, cols = 4, n = 8, degree = 3, depth = 3;
  std::uint64_t seed = 1;
  bool no_flags = false;
};

struct forest_opts {
  std::string mode = "layered";
  std::uint64_t seed = 1;
  std::vector<int> radii;
};

struct iso_opts {
  bool greedy = false, cover = false;
  std::string mode = "either";
  int cap = 0, restarts = 32;
  bool edge_variant = false;
  double eps = 0.1;
  std::uint64_t seed = 1;
};

struct tile_opts {
  std::vector<int> pq;
  int layers = 3;
  std::vector<double> poisson;  // lambda R
  bool genus2 = false;
  int wordlen = 2;
  double radius = 0.0, r0 = 0.05;
  std::uint64_t seed = 1;
  std::string svg_path;
};

struct verify_opts {
  std::string basis_path, forest_path;
  bool spanning = false, ends = false;
  int center = kNone;
};

struct render_opts {
  std::string format;
  bool disk = false;
  std::string forest_path;
};

// ── subcommand runners ──────────────────────────────────────────────────────

int run_gen(run_ctx& ctx, const gen_opts& o) {
  ctx.config["kind"] = o.kind;
  ctx.config["rows"] = o.rows;
  ctx.config["cols"] = o.cols;
  ctx.config["n"] = o.n;
  ctx.config["degree"] = o.degree;
  ctx.config["depth"] = o.depth;
  ctx.config["seed"] = o.seed;
  ctx.config["no_boundary_flags"] = o.no_flags;
  return run_guarded(ctx, [&] {
    window w;
    if (o.kind == "grid") w = gen_grid(o.rows, o.cols, !o.no_flags);
    else if (o.kind == "torus") w = gen_torus(o.rows, o.cols);
    else if (o.kind == "path") w = gen_path(o.n, !o.no_flags);
    else if (o.kind == "cycle") w = gen_cycle(o.n);
    else if (o.kind == "complete") w = gen_complete(o.n);
    else if (o.kind == "ladder") w = gen_ladder(o.n);
    else if (o.kind == "tree-ball") w = gen_tree_ball(o.degree, o.depth);
    else w = gen_random_regular(o.n, o.degree, o.seed);
    ojson counts;
    counts["vertices"] = w.vertex_count();
    counts["edges"] = w.edge_count();
    ctx.note("window_built", true, std::move(counts));
    ctx.emit_data(window_to_json(w).dump(2) + "\n");
  });
}

int run_dual(run_ctx& ctx, const std::string& basis_out) {
  ctx.config["in"] = ctx.in_path;
  ctx.config["basis_out"] = basis_out;
  window w = load_window(ctx.in_path);
  return run_guarded(ctx, [&] {
    treeing_result tr = planar_treeing(w, rotation_from_positions(w));
    basis_report rep = validate_two_basis(w, tr.basis);
    ctx.note("basis_valid", rep.valid);
    ojson counts;
    counts["dual_vertices"] = tr.dual.g.vertex_count();
    counts["dual_edges"] = tr.dual.g.edge_count();
    counts["cycles"] = static_cast<int>(tr.basis.cycles.size());
    ctx.note("dual_built", true, std::move(counts));
    if (!basis_out.empty()) {
      std::ofstream f(basis_out, std::ios::binary);
      require(f.good(), errc::bad_params, "cannot write " + basis_out);
      f << basis_to_json(tr.basis).dump(2) + "\n";
    }
    ctx.emit_data(dual_to_json(tr.dual).dump(2) + "\n");
  });
}

int run_forest(run_ctx& ctx, const forest_opts& o) {
  ctx.config["in"] = ctx.in_path;
  ctx.config["mode"] = o.mode;
  ctx.config["seed"] = o.seed;
  ctx.config["radii"] = o.radii;
  window w = load_window(ctx.in_path);
  return run_guarded(ctx, [&] {
    parent_forest f(0);
    if (o.mode == "layered") f = layered_subforest(w, layered_nets(w, o.radii));
    else if (o.mode == "uniform") f = random_weight_forest(w, o.seed);
    else f = one_ended_forest(w);
    forest_check chk = validate_forest(w, f, /*require_spanning=*/true);
    ojson v;
    v["members"] = f.member_count();
    if (!chk.ok) v["reason"] = chk.reason;
    ctx.note("forest_valid", chk.ok, std::move(v));
    ctx.emit_data(forest_to_json(f).dump(2) + "\n");
  });
}

int run_treeing(run_ctx& ctx, bool verify_only) {
  ctx.config["in"] = ctx.in_path;
  ctx.config["verify"] = verify_only;
  window w = load_window(ctx.in_path);
  return run_guarded(ctx, [&] {
    treeing_result tr = planar_treeing(w, rotation_from_positions(w));
    ctx.note("basis_valid", validate_two_basis(w, tr.basis).valid);
    ctx.note("dual_forest_valid", validate_forest(tr.dual.g, tr.dual_forest, true).ok);
    ctx.note("tree_spanning", spanning_forest_of(w, tr.tree));
    bool crossed_ok =
        static_cast<int>(tr.crossed.size()) == w.edge_count() - tr.tree.edge_count();
    for (eid e : tr.crossed) crossed_ok = crossed_ok && !tr.tree.has_edge_id(e);
    ctx.note("crossed_edges_consistent", crossed_ok);
    ojson cost;
    cost["edges_per_vertex"] = treeing_cost_stat(tr.tree);
    ctx.note("cost_recorded", true, std::move(cost));
    if (!verify_only) {
      ojson out;
      out["basis"] = basis_to_json(tr.basis);
      out["dual"] = dual_to_json(tr.dual);
      out["dual_forest"] = forest_to_json(tr.dual_forest);
      out["crossed"] = tr.crossed;
      out["tree"] = window_to_json(tr.tree);
      ctx.emit_data(out.dump(2) + "\n");
    }
  });
}

int run_ominus(run_ctx& ctx, const std::vector<int>& edges, bool check) {
  ctx.config["in"] = ctx.in_path;
  ctx.config["edges"] = edges;
  ctx.config["check"] = check;
  window w = load_window(ctx.in_path);
  return run_guarded(ctx, [&] {
    treeing_result tr = planar_treeing(w, rotation_from_positions(w));
    std::vector<eid> sub(edges.begin(), edges.end());
    if (edges.empty()) sub = tr.crossed;  // canonical escape-forest carve
    window carved = ominus_star(w, tr.dual, sub);
    ojson v;
    v["removed"] = static_cast<int>(sub.size());
    v["edges_left"] = carved.edge_count();
    ctx.note("carved", true, std::move(v));
    if (check) {
      duality_report rep = duality_check(w, tr.dual, sub);
      ojson s1;
      s1["carved_acyclic"] = rep.h_acyclic;
      s1["sub_escaping"] = rep.sub_escaping;
      if (!rep.h_cycle_vertices.empty()) s1["cycle_vertices"] = rep.h_cycle_vertices;
      if (!rep.trapped_dual_component.empty())
        s1["trapped_component"] = rep.trapped_dual_component;
      ctx.note("duality_statement_1", rep.prop1_agree, std::move(s1));
      ojson s3;
      s3["components_preserved"] = rep.h_same_components;
      s3["sub_one_ended_spanning"] = rep.sub_one_ended_spanning;
      ctx.note("duality_statement_3", rep.prop3_agree, std::move(s3));
    }
    ctx.emit_data(window_to_json(carved).dump(2) + "\n");
  });
}

int run_iso(run_ctx& ctx, const iso_opts& o) {
  ctx.config["in"] = ctx.in_path;
  ctx.config["method"] = o.cover ? "cover" : o.greedy ? "greedy" : "exact";
  ctx.config["mode"] = o.mode;
  ctx.config["cap"] = o.cap;
  ctx.config["edge_variant"] = o.edge_variant;
  ctx.config["eps"] = o.eps;
  ctx.config["restarts"] = o.restarts;
  ctx.config["seed"] = o.seed;
  window w = load_window(ctx.in_path);
  iso_params p;
  p.mode = o.mode == "boundary" ? finiteness_mode::boundary
           : o.mode == "cap"    ? finiteness_mode::cap
                                : finiteness_mode::either_of;
  p.cap = o.cap;
  p.edge_variant = o.edge_variant;
  return run_guarded(ctx, [&] {
    if (o.cover) {
      cover_result res = hyperfinite_cover(w, o.eps, p);
      ojson v;
      v["coverage"] = res.coverage;
      v["boundary_ratio"] = res.boundary_ratio;
      v["chunks"] = static_cast<int>(res.chunks.size());
      if (!res.reason.empty()) v["reason"] = res.reason;
      ctx.note("cover_succeeded", res.success, std::move(v));
      ojson cover;
      cover["a_size"] = static_cast<int>(res.a.size());
      cover["boundary_size"] = static_cast<int>(res.boundary.size());
      std::vector<int> sizes;
      for (const auto& ch : res.chunks) sizes.push_back(static_cast<int>(ch.size()));
      cover["chunk_sizes"] = sizes;
      ctx.extra["cover"] = std::move(cover);
    } else {
      iso_certificate cert = o.greedy ? iso_constant_greedy(w, o.restarts, o.seed, p)
                                      : iso_constant_exact(w, p);
      ctx.note("witness_components_finite", cert.finite_components);
      ctx.note("ratio_reduced", std::gcd(cert.num, cert.den) == 1);
      ctx.extra["certificate"] = certificate_to_json(cert);
      ctx.extra["ratio"] = cert.ratio;
    }
  });
}

int run_tile(run_ctx& ctx, const tile_opts& o) {
  ctx.config["pq"] = o.pq;
  ctx.config["layers"] = o.layers;
  ctx.config["poisson"] = o.poisson;
  ctx.config["genus2"] = o.genus2;
  ctx.config["wordlen"] = o.wordlen;
  ctx.config["radius"] = o.radius;
  ctx.config["r0"] = o.r0;
  ctx.config["seed"] = o.seed;
  ctx.config["svg"] = o.svg_path;
  int modes = (!o.pq.empty()) + (!o.poisson.empty()) + o.genus2;
  require(modes == 1, errc::bad_params, "pick exactly one of --pq, --poisson, --genus2");
  return run_guarded(ctx, [&] {
    if (!o.pq.empty()) {
      window w = gen_pq_tiling(o.pq[0], o.pq[1], o.layers);
      ojson v;
      v["vertices"] = w.vertex_count();
      v["edges"] = w.edge_count();
      ctx.note("tiling_built", true, std::move(v));
      if (!o.svg_path.empty()) {
        std::ofstream f(o.svg_path, std::ios::binary);
        require(f.good(), errc::bad_params, "cannot write " + o.svg_path);
        f << window_to_disk_svg(w);
      }
      ctx.emit_data(window_to_json(w).dump(2) + "\n");
      return;
    }
    std::vector<hpoint> sites;
    double R = o.radius;
    if (!o.poisson.empty()) {
      R = o.poisson[1];
      sites = poisson_sites(R, o.poisson[0], o.r0, o.seed);
    } else {
      sites = fuchsian_sites(genus2_octagon_group(), o.wordlen, o.r0);
      if (R <= 0.0) {
        for (const auto& s : sites) R = std::max(R, hdist({0.0, 0.0}, s.z));
        R += 1.0;
      }
    }
    htiling t = dirichlet_cells(sites, R);
    ojson v;
    v["sites"] = static_cast<int>(t.sites.size());
    v["cells"] = static_cast<int>(t.cells.size());
    v["dual_edges"] = t.dual.edge_count();
    ctx.note("cells_built", true, std::move(v));
    two_basis corner;
    corner.cycles = t.corner_basis;
    ctx.note("corner_basis_valid", validate_two_basis(t.dual, corner).valid);
    if (!o.svg_path.empty()) {
      std::ofstream f(o.svg_path, std::ios::binary);
      require(f.good(), errc::bad_params, "cannot write " + o.svg_path);
      f << tiling_to_svg(t);
    }
    ctx.emit_data(window_to_json(t.dual).dump(2) + "\n");
  });
}

int run_complex_dual(run_ctx& ctx) {
  ctx.config["in"] = ctx.in_path;
  cell_complex c = load_complex(ctx.in_path);
  return run_guarded(ctx, [&] {
    complex_dual d = build_complex_dual(c);
    ojson v;
    v["top_cells"] = c.cells(c.dim);
    v["dual_edges"] = d.g.edge_count();
    ctx.note("dual_built", true, std::move(v));
    ojson out;
    out["window"] = window_to_json(d.g);
    out["virtual_vertex"] = d.virtual_vertex;
    out["edge_cell"] = d.edge_cell;
    ctx.emit_data(out.dump(2) + "\n");
  });
}

int run_complex_ominus(run_ctx& ctx, const std::string& forest_path) {
  ctx.config["in"] = ctx.in_path;
  ctx.config["forest"] = forest_path;
  cell_complex c = load_complex(ctx.in_path);
  return run_guarded(ctx, [&] {
    complex_dual d = build_complex_dual(c);
    parent_forest f = forest_path.empty()
                          ? escape_forest(d)
                          : forest_from_json(ojson::parse(read_text(forest_path)), d.g);
    cell_complex carved = ominus_star_complex(c, f);
    ojson v;
    v["cells_before"] = c.total_cells();
    v["cells_after"] = carved.total_cells();
    ctx.note("carved", true, std::move(v));
    ctx.emit_data(complex_to_json(carved).dump(2) + "\n");
  });
}

int run_complex_collapse(run_ctx& ctx, const std::string& forest_path,
                         const std::vector<int>& top_cells) {
  ctx.config["in"] = ctx.in_path;
  ctx.config["forest"] = forest_path;
  ctx.config["top_cells"] = top_cells;
  cell_complex c = load_complex(ctx.in_path);
  return run_guarded(ctx, [&] {
    complex_dual d = build_complex_dual(c);
    parent_forest f = forest_path.empty()
                          ? escape_forest(d)
                          : forest_from_json(ojson::parse(read_text(forest_path)), d.g);
    cell_set seed(c.dim + 1);
    if (top_cells.empty()) {
      for (int i = 0; i < c.cells(c.dim); ++i) seed[c.dim].push_back(i);
    } else {
      seed[c.dim] = top_cells;
    }
    cell_set k = back_orbit_saturate(c, f, seed);
    collapse_result res = collapse_retract(c, f, k);
    ojson v;
    v["saturated_top_cells"] = static_cast<int>(k[c.dim].size());
    v["steps"] = static_cast<int>(res.steps.size());
    ctx.note("all_top_cells_retracted", res.steps.size() == k[c.dim].size(), std::move(v));
    ojson out;
    out["steps"] = ojson::array();
    for (const auto& s : res.steps) {
      ojson step;
      step["top_cell"] = s.top_cell;
      step["free_face"] = s.free_face;
      out["steps"].push_back(std::move(step));
    }
    out["remainder"] = res.remainder;
    ctx.emit_data(out.dump(2) + "\n");
  });
}

int run_complex_homology(run_ctx& ctx) {
  ctx.config["in"] = ctx.in_path;
  cell_complex c = load_complex(ctx.in_path);
  return run_guarded(ctx, [&] {
    std::vector<int> betti = homology_gf2(c);
    ojson v;
    v["betti"] = betti;
    ctx.note("homology_computed", true, std::move(v));
  });
}

int run_verify(run_ctx& ctx, const verify_opts& o) {
  ctx.config["in"] = ctx.in_path;
  ctx.config["basis"] = o.basis_path;
  ctx.config["forest"] = o.forest_path;
  ctx.config["spanning"] = o.spanning;
  ctx.config["ends"] = o.ends;
  ctx.config["center"] = o.center;
  window w = load_window(ctx.in_path);
  return run_guarded(ctx, [&] {
    ojson counts;
    counts["vertices"] = w.vertex_count();
    counts["edges"] = w.edge_count();
    counts["components"] = w.component_count();
    ctx.note("window_loaded", true, std::move(counts));
    if (!o.basis_path.empty()) {
      two_basis b = basis_from_json(ojson::parse(read_text(o.basis_path)));
      basis_report rep = validate_two_basis(w, b);
      ojson v;
      v["rank"] = rep.rank;
      v["expected_rank"] = rep.expected_rank;
      if (!rep.valid) v["reason"] = rep.reason;
      ctx.note("basis_valid", rep.valid, std::move(v));
    }
    if (!o.forest_path.empty()) {
      parent_forest f = forest_from_json(ojson::parse(read_text(o.forest_path)), w);
      forest_check chk = validate_forest(w, f, o.spanning);
      ojson v;
      v["members"] = f.member_count();
      if (!chk.ok) v["reason"] = chk.reason;
      ctx.note("forest_valid", chk.ok, std::move(v));
    }
    if (o.ends) {
      vid center = o.center;
      if (center == kNone) {
        for (vid v = 0; v < w.vertex_count() && center == kNone; ++v)
          if (!w.boundary(v)) center = v;
        require(center != kNone, errc::bad_params, "no interior vertex to centre on");
      }
      ends_report rep = classify_ends(w, center);
      ojson v;
      v["label"] = end_class_name(rep.label);
      v["escape_counts"] = rep.escape_counts;
      v["center"] = center;
      ctx.note("ends_classified", true, std::move(v));
    }
  });
}

int run_render(run_ctx& ctx, const render_opts& o) {
  ctx.config["in"] = ctx.in_path;
  ctx.config["format"] = o.format;
  ctx.config["disk"] = o.disk;
  ctx.config["forest"] = o.forest_path;
  window w = load_window(ctx.in_path);
  return run_guarded(ctx, [&] {
    std::string text;
    if (o.format == "svg") {
      text = o.disk ? window_to_disk_svg(w) : window_to_svg(w);
    } else if (!o.forest_path.empty()) {
      text = forest_to_dot(w, forest_from_json(ojson::parse(read_text(o.forest_path)), w));
    } else {
      text = window_to_dot(w);
    }
    ojson v;
    v["bytes"] = static_cast<int>(text.size());
    ctx.note("rendered", true, std::move(v));
    ctx.emit_data(text);
  });
}

// ── wiring ──────────────────────────────────────────────────────────────────

void add_io(CLI::App* sub, run_ctx& ctx) {
  sub->add_option("--in", ctx.in_path, "input file (default: stdin)");
  sub->add_option("--out", ctx.out_path, "data output file (default: stdout)");
  sub->add_option("--report", ctx.report_path, "report file (default: stdout or stderr)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"treeforge: windows, duals, escape forests, and their invariants"};
  app.require_subcommand(1);

  int threads = 1;  // reported values are independent of the worker count
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  if (const char* env = std::getenv("TREEFORGE_THREADS")) {
    char* end = nullptr;
    long t = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || t < 1) {
      std::cerr << "error: TREEFORGE_THREADS must be a positive integer\n";
      return 2;
    }
    threads = static_cast<int>(t);
  }

  run_ctx ctx;

  gen_opts g;
  auto* c_gen = app.add_subcommand("gen", "generate a window");
  add_io(c_gen, ctx);
  c_gen->add_option("--kind", g.kind, "generator")
      ->required()
      ->check(CLI::IsMember({"grid", "torus", "path", "cycle", "complete", "ladder",
                             "tree-ball", "regular"}));
  c_gen->add_option("--rows", g.rows, "grid/torus rows");
  c_gen->add_option("--cols", g.cols, "grid/torus columns");
  c_gen->add_option("--n", g.n, "vertex count for path/cycle/complete/ladder/regular");
  c_gen->add_option("--degree", g.degree, "degree for tree-ball/regular");
  c_gen->add_option("--depth", g.depth, "depth for tree-ball");
  c_gen->add_option("--seed", g.seed, "seed for regular");
  c_gen->add_flag("--no-boundary-flags", g.no_flags, "leave rim/end vertices interior");

  std::string basis_out;
  auto* c_dual = app.add_subcommand("dual", "dual of an embedded window over its face basis");
  add_io(c_dual, ctx);
  c_dual->add_option("--basis-out", basis_out, "also write the face basis here");

  forest_opts fo;
  auto* c_forest = app.add_subcommand("forest", "escape forest on a window");
  add_io(c_forest, ctx);
  c_forest->add_option("--mode", fo.mode, "construction")
      ->check(CLI::IsMember({"layered", "uniform", "one-ended"}));
  c_forest->add_option("--seed", fo.seed, "seed for uniform");
  c_forest->add_option("--radii", fo.radii, "net separation radii for layered")->delimiter(',');

  bool treeing_verify = false;
  auto* c_treeing = app.add_subcommand("treeing", "spanning tree via the dual escape forest");
  add_io(c_treeing, ctx);
  c_treeing->add_flag("--verify", treeing_verify, "report only, no data output");

  std::vector<int> ominus_edges;
  bool ominus_check = false;
  auto* c_ominus = app.add_subcommand("ominus", "carve dual-selected edges out of a window");
  add_io(c_ominus, ctx);
  c_ominus->add_option("--edges", ominus_edges, "dual edge ids to carve (default: escape forest)")
      ->delimiter(',');
  c_ominus->add_flag("--check", ominus_check, "verify the duality statements for this carve");

  iso_opts io;
  auto* c_iso = app.add_subcommand("iso", "isoperimetric certificates");
  add_io(c_iso, ctx);
  bool iso_exact = false;
  c_iso->add_flag("--exact", iso_exact, "exhaustive optimum (default)");
  c_iso->add_flag("--greedy", io.greedy, "greedy descent with restarts");
  c_iso->add_flag("--cover", io.cover, "eps-hyperfinite cover attempt");
  c_iso->add_option("--mode", io.mode, "finiteness proxy")
      ->check(CLI::IsMember({"boundary", "cap", "either"}));
  c_iso->add_option("--cap", io.cap, "size cap (0: ceil(sqrt(n)))");
  c_iso->add_flag("--edge-variant", io.edge_variant, "count boundary edges instead of vertices");
  c_iso->add_option("--eps", io.eps, "target ratio for --cover");
  c_iso->add_option("--restarts", io.restarts, "greedy restarts");
  c_iso->add_option("--seed", io.seed, "greedy seed");

  tile_opts to;
  auto* c_tile = app.add_subcommand("tile", "hyperbolic tilings and Dirichlet cells");
  add_io(c_tile, ctx);
  c_tile->add_option("--pq", to.pq, "regular {p,q} tiling")->expected(2);
  c_tile->add_option("--layers", to.layers, "rings of the {p,q} tiling");
  c_tile->add_option("--poisson", to.poisson, "Poisson sites: intensity and window radius")
      ->expected(2);
  c_tile->add_flag("--genus2", to.genus2, "octagon group orbit sites");
  c_tile->add_option("--wordlen", to.wordlen, "orbit word length for --genus2");
  c_tile->add_option("--radius", to.radius, "window radius for --genus2 (0: fit the orbit)");
  c_tile->add_option("--r0", to.r0, "hard-core separation");
  c_tile->add_option("--seed", to.seed, "Poisson seed");
  c_tile->add_option("--svg", to.svg_path, "write a disk-model rendering here");

  auto* c_cx = app.add_subcommand("complex", "cell complex operations");
  c_cx->require_subcommand(1);
  auto* cx_dual = c_cx->add_subcommand("dual", "top-cell adjacency dual");
  add_io(cx_dual, ctx);
  std::string cx_forest_path;
  std::vector<int> cx_top_cells;
  auto* cx_ominus = c_cx->add_subcommand("ominus", "carve crossed boundary cells");
  add_io(cx_ominus, ctx);
  cx_ominus->add_option("--forest", cx_forest_path, "escape forest JSON (default: canonical)");
  auto* cx_collapse = c_cx->add_subcommand("collapse", "collapse a saturated set");
  add_io(cx_collapse, ctx);
  cx_collapse->add_option("--forest", cx_forest_path, "escape forest JSON (default: canonical)");
  cx_collapse->add_option("--top-cells", cx_top_cells, "seed top cells (default: all)")
      ->delimiter(',');
  auto* cx_hom = c_cx->add_subcommand("homology", "mod-2 Betti numbers");
  add_io(cx_hom, ctx);

  verify_opts vo;
  auto* c_verify = app.add_subcommand("verify", "run invariant suites on saved artifacts");
  add_io(c_verify, ctx);
  c_verify->add_option("--basis", vo.basis_path, "basis JSON to validate");
  c_verify->add_option("--forest", vo.forest_path, "forest JSON to validate");
  c_verify->add_flag("--spanning", vo.spanning, "require the forest to span");
  c_verify->add_flag("--ends", vo.ends, "classify ends");
  c_verify->add_option("--center", vo.center, "end-count centre (default: least interior)");

  render_opts ro;
  auto* c_render = app.add_subcommand("render", "emit SVG or DOT");
  add_io(c_render, ctx);
  c_render->add_option("--format", ro.format, "svg or dot")
      ->required()
      ->check(CLI::IsMember({"svg", "dot"}));
  c_render->add_flag("--disk", ro.disk, "disk-model SVG with geodesic arcs");
  c_render->add_option("--forest", ro.forest_path, "render this forest instead (dot)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(c_gen)) return (ctx.command = "gen", run_gen(ctx, g));
    if (app.got_subcommand(c_dual)) return (ctx.command = "dual", run_dual(ctx, basis_out));
    if (app.got_subcommand(c_forest)) return (ctx.command = "forest", run_forest(ctx, fo));
    if (app.got_subcommand(c_treeing))
      return (ctx.command = "treeing", run_treeing(ctx, treeing_verify));
    if (app.got_subcommand(c_ominus))
      return (ctx.command = "ominus", run_ominus(ctx, ominus_edges, ominus_check));
    if (app.got_subcommand(c_iso)) return (ctx.command = "iso", run_iso(ctx, io));
    if (app.got_subcommand(c_tile)) return (ctx.command = "tile", run_tile(ctx, to));
    if (app.got_subcommand(c_cx)) {
      if (c_cx->got_subcommand(cx_dual))
        return (ctx.command = "complex dual", run_complex_dual(ctx));
      if (c_cx->got_subcommand(cx_ominus))
        return (ctx.command = "complex ominus", run_complex_ominus(ctx, cx_forest_path));
      if (c_cx->got_subcommand(cx_collapse))
        return (ctx.command = "complex collapse",
                run_complex_collapse(ctx, cx_forest_path, cx_top_cells));
      return (ctx.command = "complex homology", run_complex_homology(ctx));
    }
    if (app.got_subcommand(c_verify)) return (ctx.command = "verify", run_verify(ctx, vo));
    return (ctx.command = "render", run_render(ctx, ro));
  } catch (const nlohmann::json::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
