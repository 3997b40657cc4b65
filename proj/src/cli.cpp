#include "helly/cli.hpp"

#include "helly/catalog.hpp"
#include "helly/constructions.hpp"
#include "helly/io.hpp"
#include "helly/pipelines.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <memory>
#include <set>
#include <sstream>

namespace helly {

namespace {

using io::Json;

struct RunConfig {
  std::uint64_t seed = 0;
  std::optional<std::size_t> budget;
  std::size_t n_cap = 1000;
  std::string output;
  std::string format = "json";
  unsigned jobs = 1;

  std::shared_ptr<LpBudget> make_budget() const {
    return budget ? std::make_shared<LpBudget>(*budget) : nullptr;
  }
};

/// What a subcommand produced: JSON always, CSV when the result has a flat form.
struct Result {
  Json json;
  std::function<void(std::ostream&)> csv;
  int code = kExitOk;
};

Rational rational_arg(const std::string& text, const std::string& name) {
  try {
    return parse_rational(text);
  } catch (const MalformedInput& e) {
    throw MalformedInput("--" + name + ": " + e.what());
  }
}

Family load_family(const std::string& path) { return io::family_from_json(io::read_file(path)); }

int pipeline_code(const PipelineReport& r) {
  if (r.budget_exhausted) return kExitBudget;
  return r.all_passed() ? kExitOk : kExitPropertyFailed;
}

Result pipeline_result(const PipelineReport& r) {
  return {io::to_json(r), [r](std::ostream& o) { io::write_csv(o, r); }, pipeline_code(r)};
}

Result family_result(const Family& fam) {
  return {io::to_json(fam), [fam](std::ostream& o) { io::write_csv(o, fam); }, kExitOk};
}

}  // namespace

int cmd_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact toolkit for piercing and (p,q)-properties of convex polyhedral families",
               "helly"};
  app.fallthrough();
  app.require_subcommand(1);

  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "Seed for randomized commands")->capture_default_str();
  app.add_option("--budget", cfg.budget, "Maximum number of LP calls")->check(CLI::PositiveNumber);
  app.add_option("--n-cap", cfg.n_cap, "Largest n tried by escape searches")
      ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()))
      ->capture_default_str();
  app.add_option("--output,-o", cfg.output, "Write the result here instead of stdout");
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--jobs", cfg.jobs, "Worker threads for subset checks")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  std::function<Result()> action;
  auto bind = [&action](CLI::App* sub, std::function<Result()> f) {
    sub->callback([&action, f] { action = f; });
  };

  // construct ---------------------------------------------------------------
  auto* construct = app.add_subcommand("construct", "Build a named family");
  construct->require_subcommand(1);

  struct {
    std::int64_t d = 2;
    std::vector<std::string> alphas;
    std::int64_t max_den = 1000;
  } simplex;
  auto* c_simplex = construct->add_subcommand("simplex", "Simplices S_alpha in R^d");
  c_simplex->add_option("--d", simplex.d, "Dimension")->check(CLI::PositiveNumber)->capture_default_str();
  c_simplex->add_option("--alpha", simplex.alphas, "alpha values (random sorted ones when omitted)")
      ->delimiter(',');
  c_simplex->add_option("--max-den", simplex.max_den, "Denominator cap for random alphas")
      ->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 40))
      ->capture_default_str();
  bind(c_simplex, [&] {
    std::vector<Rational> alphas;
    for (const auto& a : simplex.alphas) alphas.push_back(rational_arg(a, "alpha"));
    if (alphas.empty()) {
      Rng rng(cfg.seed);
      alphas = random_sorted_alphas(rng, static_cast<std::size_t>(simplex.d), simplex.max_den);
    }
    Family fam;
    fam.dim = simplex.d;
    std::set<std::string> used;
    for (std::size_t j = 0; j < alphas.size(); ++j) {
      ConvexSet s = simplex_s({alphas[j], simplex.d});
      // Repeated alphas get positional labels.
      if (used.count(s.label())) s.set_label(s.label() + "#" + std::to_string(j + 1));
      used.insert(s.label());
      fam.add(std::move(s));
    }
    return family_result(fam);
  });

  CounterexampleSpec cx;
  std::string cx_margin = "1";
  auto add_cx_options = [&](CLI::App* sub) {
    sub->add_option("--d", cx.d, "Sets live in R^(d+1)")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--n-max", cx.n_max, "Last unbounded member A_n")->capture_default_str();
    sub->add_option("--n-bounded", cx.n_bounded, "Number of bounded members B_i")->capture_default_str();
    sub->add_option("--margin", cx_margin, "B_i extends i*margin beyond the unit cube")
        ->capture_default_str();
  };
  auto finish_cx = [&] {
    cx.bounded_margin = rational_arg(cx_margin, "margin");
    cx.validate();
  };
  auto* c_cx = construct->add_subcommand("counterexample", "Unbounded family A plus boxes B");
  add_cx_options(c_cx);
  bind(c_cx, [&] {
    finish_cx();
    return family_result(counterexample_family(cx));
  });

  std::size_t gr_n = 3, gr_copies = 1;
  auto* c_gr = construct->add_subcommand("gruenbaum", "Point and rays on the line");
  c_gr->add_option("--n-max", gr_n, "Rays [n, inf) for n = 1..n_max")->capture_default_str();
  c_gr->add_option("--copies", gr_copies, "Copies of the point {0}")->capture_default_str();
  bind(c_gr, [&] { return family_result(gruenbaum_line(gr_n, gr_copies)); });

  struct {
    std::int64_t d = 2, k = 1;
    std::size_t count = 2;
    std::string radius = "10";
  } ff;
  auto* c_ff = construct->add_subcommand("free-flats", "Compact pieces of generic flats, k-free");
  c_ff->add_option("--d", ff.d, "Dimension")->check(CLI::PositiveNumber)->capture_default_str();
  c_ff->add_option("--k", ff.k, "Freeness (pieces are (k-1)-dimensional)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_ff->add_option("--count", ff.count, "Number of pieces")->capture_default_str();
  c_ff->add_option("--radius", ff.radius, "Bounding box half-width")->capture_default_str();
  bind(c_ff, [&] {
    return family_result(
        free_flats_family(ff.d, ff.k, ff.count, rational_arg(ff.radius, "radius"), cfg.seed));
  });

  // check --------------------------------------------------------------------
  auto* check = app.add_subcommand("check", "Property checks");
  check->require_subcommand(1);
  struct {
    std::size_t p = 0, q = 0;
    std::string input;
    bool record = false;
  } pq;
  auto* c_pq = check->add_subcommand("pq", "Exhaustive (p,q)-property check");
  c_pq->add_option("--p", pq.p)->required();
  c_pq->add_option("--q", pq.q)->required();
  c_pq->add_option("--input", pq.input, "Family JSON")->required();
  c_pq->add_flag("--record", pq.record, "List every p-tuple with its intersecting q-subset");
  bind(c_pq, [&] {
    const Family fam = load_family(pq.input);
    auto oracle = IntersectionOracle::for_family(fam, cfg.make_budget());
    PqOptions opts;
    opts.jobs = cfg.jobs;
    opts.record_tuples = pq.record;
    opts.exhaustive = pq.record;
    const PqReport r = has_pq_property(oracle, pq.p, pq.q, opts);
    return Result{io::to_json(r), [r](std::ostream& o) { io::write_csv(o, r); },
                  r.holds ? kExitOk : kExitPropertyFailed};
  });

  // solve --------------------------------------------------------------------
  auto* solve = app.add_subcommand("solve", "Exact solvers");
  solve->require_subcommand(1);
  struct {
    std::string input;
    std::optional<std::size_t> limit;
  } sv;
  auto* s_pierce = solve->add_subcommand("pierce", "Exact piercing number of a family");
  s_pierce->add_option("--input", sv.input, "Family JSON")->required();
  s_pierce->add_option("--limit", sv.limit, "Stop once no partition within this size exists");
  bind(s_pierce, [&] {
    const Family fam = load_family(sv.input);
    auto oracle = IntersectionOracle::for_family(fam, cfg.make_budget());
    const PiercingSolution sol = piercing_number(oracle, sv.limit);
    for (std::size_t i = 0; i < fam.size(); ++i)
      if (!contains_point(fam[i], sol.points[sol.assignment[i]]))
        throw std::logic_error("piercing point misses member '" + fam[i].label() + "'");
    return Result{io::to_json(sol, &fam), nullptr,
                  sol.optimal ? kExitOk : kExitPropertyFailed};
  });
  auto* s_tr = solve->add_subcommand("transversal", "Minimum transversal of a hypergraph");
  s_tr->add_option("--input", sv.input, "Hypergraph JSON")->required();
  s_tr->add_option("--limit", sv.limit, "Stop once no cover within this size exists");
  bind(s_tr, [&] {
    const Hypergraph h = io::hypergraph_from_json(io::read_file(sv.input));
    const TransversalResult t = transversal_number(h, sv.limit);
    return Result{io::to_json(t), nullptr, t.optimal ? kExitOk : kExitPropertyFailed};
  });

  // analyze ------------------------------------------------------------------
  auto* analyze = app.add_subcommand("analyze", "Structural analyses");
  analyze->require_subcommand(1);
  struct {
    std::string input;
    bool redundant = false;
  } an;
  auto* a_rec = analyze->add_subcommand("recession", "Recession cones and a shared direction");
  a_rec->add_option("--input", an.input, "Family JSON")->required();
  bind(a_rec, [&] {
    const Family fam = load_family(an.input);
    Json sets = Json::array();
    for (const auto& s : fam.sets) {
      Json e = {{"label", s.label()}, {"empty", is_empty(s)}};
      if (!e["empty"].get<bool>()) {
        e["bounded"] = is_bounded(s);
        e["recession_cone"] = io::to_json(recession_cone(s));
      }
      sets.push_back(e);
    }
    bool any_empty = false;
    for (const auto& s : sets) any_empty = any_empty || s["empty"].get<bool>();
    const auto v = any_empty ? std::nullopt : common_recession_direction(fam);
    return Result{{{"sets", sets}, {"common_direction", v ? io::to_json(*v) : Json(nullptr)}},
                  nullptr, kExitOk};
  });
  auto* a_proj = analyze->add_subcommand("project", "Drop the last coordinate of every member");
  a_proj->add_option("--input", an.input, "Family JSON")->required();
  a_proj->add_flag("--remove-redundant", an.redundant, "Drop implied halfspaces");
  bind(a_proj, [&] {
    const Family fam = load_family(an.input);
    if (fam.dim < 2) throw MalformedInput("projection needs dimension >= 2");
    Family out;
    out.dim = fam.dim - 1;
    for (const auto& s : fam.sets) {
      ConvexSet p = project_drop_last(s, {an.redundant});
      p.set_label(s.label());
      out.add(std::move(p));
    }
    return family_result(out);
  });
  auto* a_gf = analyze->add_subcommand("gf", "Hypergraph of empty (d+1)-subsets");
  a_gf->add_option("--input", an.input, "Family JSON")->required();
  bind(a_gf, [&] {
    const Family fam = load_family(an.input);
    auto oracle = IntersectionOracle::for_family(fam, cfg.make_budget());
    const Hypergraph h = build_gf(oracle, static_cast<std::size_t>(fam.dim), cfg.jobs);
    return Result{io::to_json(h), nullptr, kExitOk};
  });

  // escape -------------------------------------------------------------------
  struct {
    std::int64_t d = 1;
    std::string points;
    std::size_t random = 0;
    std::int64_t max_den = 100;
    std::string range = "500";
  } es;
  auto* escape = app.add_subcommand("escape", "Smallest A_n avoiding a candidate point set");
  escape->add_option("--d", es.d, "A_n lives in R^(d+1)")->check(CLI::PositiveNumber)->capture_default_str();
  escape->add_option("--points", es.points, "Candidate points JSON");
  escape->add_option("--random", es.random, "Draw this many seeded random candidates instead");
  escape->add_option("--max-den", es.max_den, "Denominator cap for random candidates")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  escape->add_option("--range", es.range, "Random coordinates lie in [-range, range]")
      ->capture_default_str();
  bind(escape, [&] {
    CounterexampleSpec spec;
    spec.d = es.d;
    std::vector<Point> cands;
    if (!es.points.empty()) {
      cands = io::points_from_json(io::read_file(es.points), es.d + 1);
    } else {
      const Rational range = rational_arg(es.range, "range");
      Rng rng(cfg.seed);
      for (std::size_t i = 0; i < es.random; ++i) {
        Point p(es.d + 1);
        for (Eigen::Index c = 0; c <= es.d; ++c) p(c) = rng.rational(-range, range, es.max_den);
        cands.push_back(p);
      }
    }
    if (cands.empty()) throw MalformedInput("escape needs --points or --random N with N >= 1");
    const auto n = escape_witness(spec, cands, cfg.n_cap);
    bool certified = false;
    if (n) {
      const ConvexSet a = member_a(spec.d, *n);
      certified = std::none_of(cands.begin(), cands.end(),
                               [&](const Point& x) { return contains_point(a, x); });
    }
    Json j = {{"d", es.d},
              {"n_cap", cfg.n_cap},
              {"candidates", io::points_to_json(cands)},
              {"escape_index", n ? Json(*n) : Json(nullptr)},
              {"certified", certified}};
    return Result{j, nullptr, certified ? kExitOk : kExitPropertyFailed};
  });

  // bounds -------------------------------------------------------------------
  auto* bounds = app.add_subcommand("bounds", "Catalog of known constants");
  bounds->require_subcommand(1);
  struct {
    std::int64_t lam = 0, k = 0, p = 0, q = 0, d = 0;
  } bd;
  auto lookup_result = [](std::string name, std::vector<std::int64_t> args) {
    if (auto e = catalog_lookup(name, args)) return Result{io::to_json(*e), nullptr, kExitOk};
    Json a = Json::array();
    for (auto v : args) a.push_back(v);
    return Result{{{"name", name}, {"args", a}, {"found", false}}, nullptr, kExitPropertyFailed};
  };
  auto* b_eta = bounds->add_subcommand("eta", "Erdos-Gallai number eta(lambda,k)");
  b_eta->add_option("--lam", bd.lam)->required();
  b_eta->add_option("--k", bd.k)->required();
  bind(b_eta, [&] { return lookup_result("eta", {bd.lam, bd.k}); });
  auto* b_xi = bounds->add_subcommand("xi", "(p,q)-theorem constant xi(p,q,d)");
  b_xi->add_option("--p", bd.p)->required();
  b_xi->add_option("--q", bd.q)->required();
  b_xi->add_option("--d", bd.d)->required();
  bind(b_xi, [&] { return lookup_result("xi", {bd.p, bd.q, bd.d}); });

  // pipeline -----------------------------------------------------------------
  auto* pipeline = app.add_subcommand("pipeline", "Run a piercing argument on an instance");
  pipeline->require_subcommand(1);
  struct {
    std::string input, box, candidates;
    std::size_t t = 0, p = 0, q = 0, k_max = 0, max_subset = 3;
    std::vector<std::size_t> indices;
    bool exact = false;
  } pl;
  auto options = [&] {
    PipelineOptions o;
    o.budget = cfg.make_budget();
    o.jobs = cfg.jobs;
    o.compute_exact = pl.exact;
    o.n_cap = cfg.n_cap;
    return o;
  };
  auto sorted_indices = [&] {
    IndexSet idx = pl.indices;
    std::sort(idx.begin(), idx.end());
    return idx;
  };

  auto* p_s1 = pipeline->add_subcommand("s1", "Transversal route: (p,p-t)-property, t+1 bounded");
  p_s1->add_option("--input", pl.input, "Family JSON")->required();
  p_s1->add_option("--t", pl.t)->required();
  p_s1->add_option("--p", pl.p)->required();
  p_s1->add_flag("--exact", pl.exact, "Also compute the exact piercing number");
  bind(p_s1, [&] { return pipeline_result(pierce_via_s1(load_family(pl.input), pl.t, pl.p, options())); });

  auto* p_s2 = pipeline->add_subcommand("s2", "Free-subfamily route");
  p_s2->add_option("--input", pl.input, "Family JSON")->required();
  p_s2->add_option("--free", pl.indices, "Indices of the free subfamily")->delimiter(',')->required();
  p_s2->add_option("--p", pl.p)->required();
  p_s2->add_option("--q", pl.q)->required();
  p_s2->add_flag("--exact", pl.exact, "Also compute the exact piercing number");
  bind(p_s2, [&] {
    return pipeline_result(pierce_via_s2(load_family(pl.input), sorted_indices(), pl.p, pl.q, options()));
  });

  auto* p_main = pipeline->add_subcommand("main", "Compact-members route with projection");
  p_main->add_option("--input", pl.input, "Family JSON")->required();
  p_main->add_option("--compact", pl.indices, "Indices of the compact members")->delimiter(',')->required();
  p_main->add_option("--p", pl.p)->required();
  p_main->add_option("--q", pl.q)->required();
  p_main->add_flag("--exact", pl.exact, "Also compute the exact piercing number");
  bind(p_main, [&] {
    return pipeline_result(
        pierce_via_main(load_family(pl.input), sorted_indices(), pl.p, pl.q, options()));
  });

  auto* p_cx = pipeline->add_subcommand("counterexample", "Verify the unbounded counterexample");
  add_cx_options(p_cx);
  p_cx->add_option("--k-max", pl.k_max, "Check k = 0..k_max")->capture_default_str();
  p_cx->add_option("--candidates", pl.candidates, "Candidate points JSON for the escape check");
  bind(p_cx, [&] {
    finish_cx();
    PipelineOptions o = options();
    if (!pl.candidates.empty())
      o.candidates.push_back(io::points_from_json(io::read_file(pl.candidates), cx.d + 1));
    return pipeline_result(verify_counterexample(cx, pl.k_max, o));
  });

  auto* p_c52 = pipeline->add_subcommand("corollary52", "Projection equivalence inside a box");
  p_c52->add_option("--input", pl.input, "Family JSON")->required();
  p_c52->add_option("--box", pl.box, "Compact set JSON")->required();
  p_c52->add_option("--max-subset", pl.max_subset, "Largest subset size")->capture_default_str();
  bind(p_c52, [&] {
    return pipeline_result(verify_corollary52(load_family(pl.input),
                                              io::set_from_json(io::read_file(pl.box)),
                                              pl.max_subset, options()));
  });

  // --------------------------------------------------------------------------
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitMalformed;
  }

  if (!action) {
    err << app.help();
    return kExitMalformed;
  }
  try {
    Result r = action();
    std::ostringstream buf;
    if (cfg.format == "csv") {
      if (!r.csv) throw MalformedInput("this command has no CSV form; use --format json");
      r.csv(buf);
    } else {
      buf << r.json.dump(2) << '\n';
    }
    if (cfg.output.empty()) {
      out << buf.str();
    } else {
      std::ofstream f(cfg.output);
      if (!f) throw MalformedInput("cannot write '" + cfg.output + "'");
      f << buf.str();
    }
    return r.code;
  } catch (const BudgetExhausted& e) {
    err << "error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const MalformedInput& e) {
    err << "error: " << e.what() << '\n';
    return kExitMalformed;
  } catch (const EmptySetError& e) {
    err << "error: " << e.what() << '\n';
    return kExitMalformed;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitMalformed;
  }
}

}  // namespace helly
