#include "cusp/surgery.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace cusp {

namespace {

enum class Verdict { Pass, Fail, Unknown };

struct TriDist {
  std::optional<int> exact;
  int lb = 0;
};

Verdict greater_than(const TriDist& d, long long bound) {
  if (d.exact) return *d.exact > bound ? Verdict::Pass : Verdict::Fail;
  return d.lb > bound ? Verdict::Pass : Verdict::Unknown;
}

TriDist dist_from_star(Scene& scene, const CuspedVertex& v, std::optional<bool> exact_override) {
  TriDist d;
  d.exact = scene.dist_from_star(v, exact_override);
  d.lb = d.exact ? *d.exact : scene.lb_from_star(v, exact_override);
  return d;
}

TriDist dist_to_anchor(Scene& scene, const HoroballContext& ctx, const CuspedVertex& v,
                       std::optional<bool> exact_override) {
  TriDist d;
  const bool use_exact = exact_override.value_or(scene.prefer_exact) && scene.exact;
  if (use_exact) {
    d.exact = scene.exact->metric().distance(ctx.z, v);
    d.lb = *d.exact;
    return d;
  }
  d.exact = ctx.z_field->certified_value(v);
  d.lb = d.exact ? *d.exact : ctx.z_field->lower_bound(v);
  return d;
}

long long level_span(int level) { return 1LL << level; }

std::string fmt_path_head(const CuspedGraph& g, const EdgePath& p) {
  std::string out = g.format(p.front()) + " .. " + g.format(p.back()) + " len " + std::to_string(p.length());
  return out;
}

}  // namespace

int EdgePath::max_level() const {
  int m = 0;
  for (const CuspedVertex& v : vertices) m = std::max(m, static_cast<int>(v.level));
  return m;
}

int EdgePath::min_level() const {
  int m = vertices.empty() ? 0 : vertices.front().level;
  for (const CuspedVertex& v : vertices) m = std::min(m, static_cast<int>(v.level));
  return m;
}

bool is_edge_path(const CuspedGraph& graph, const EdgePath& path) {
  for (std::size_t i = 0; i + 1 < path.vertices.size(); ++i) {
    const auto nbrs = graph.neighbors(path.vertices[i]);
    if (std::find(nbrs.begin(), nbrs.end(), path.vertices[i + 1]) == nbrs.end()) return false;
  }
  return !path.vertices.empty();
}

HoroballContext make_horoball_context(Scene& scene, int peripheral, const Word& rep, int dbar,
                                      std::optional<bool> exact_override) {
  HoroballContext ctx;
  ctx.peripheral = peripheral;
  ctx.rep = rep;
  ctx.dbar = dbar;
  const bool use_exact = exact_override.value_or(scene.prefer_exact) && scene.exact;
  if (use_exact) {
    // in a single-horoball space the column over the base point is the unique
    // closest slab vertex (the depth function is 1-Lipschitz)
    ctx.z = CuspedVertex{Word{}, static_cast<std::int16_t>(dbar), static_cast<std::int16_t>(peripheral)};
    ctx.dz = dbar;
    return ctx;
  }
  ctx.z = closest_level_vertex(*scene.graph, *scene.master, peripheral, rep, dbar);
  ctx.dz = *scene.master->certified_value(ctx.z);
  BfsOptions opts;
  opts.slack = 0;
  ctx.z_field = std::make_shared<DistanceField>(certified_bfs(*scene.graph, ctx.z, opts));
  return ctx;
}

EdgePath project_to_level(const CuspedGraph& graph, const EdgePath& psi, int k) {
  if (psi.vertices.empty()) throw std::invalid_argument("empty path");
  const MarkedGroup& group = graph.group();
  const int peripheral = psi.vertices.front().peripheral;
  for (const CuspedVertex& v : psi.vertices) {
    if (v.level < k || v.peripheral != peripheral) {
      throw std::invalid_argument("projection input must stay in one horoball at depth >= k");
    }
  }
  auto drop = [&](const CuspedVertex& v) {
    return CuspedVertex{v.elem, static_cast<std::int16_t>(k), static_cast<std::int16_t>(peripheral)};
  };
  EdgePath out;
  out.vertices.push_back(drop(psi.vertices.front()));
  const long long span = level_span(k);
  for (std::size_t i = 0; i + 1 < psi.vertices.size(); ++i) {
    const CuspedVertex& u = psi.vertices[i];
    const CuspedVertex& w = psi.vertices[i + 1];
    if (u.level != w.level) continue;  // vertical edges drop to a single point
    // horizontal edge: connect the drops by a shortest level-k segment along
    // a peripheral geodesic, hops of span 2^k
    const Word q = group.multiply(group.inverse(u.elem), w.elem);
    for (std::size_t pos = 0; pos < q.size();) {
      const std::size_t next = std::min(q.size(), pos + static_cast<std::size_t>(span));
      out.vertices.push_back(
          {group.multiply(u.elem, q.substr(0, next)), static_cast<std::int16_t>(k),
           static_cast<std::int16_t>(peripheral)});
      pos = next;
    }
  }
  return out;
}

int projection_witness_failures(const CuspedGraph& graph, const EdgePath& psi, const EdgePath& gamma) {
  const MarkedGroup& group = graph.group();
  // vertices lying on horizontal edges of psi
  std::vector<CuspedVertex> tau_vertices;
  for (std::size_t i = 0; i + 1 < psi.vertices.size(); ++i) {
    if (psi.vertices[i].level == psi.vertices[i + 1].level) {
      tau_vertices.push_back(psi.vertices[i]);
      tau_vertices.push_back(psi.vertices[i + 1]);
    }
  }
  if (tau_vertices.empty()) return 0;  // purely vertical path, trivial projection
  int failures = 0;
  for (const CuspedVertex& p : gamma.vertices) {
    bool witnessed = false;
    for (const CuspedVertex& u : tau_vertices) {
      if (group.distance(p.elem, u.elem) <= level_span(u.level)) {
        witnessed = true;
        break;
      }
    }
    if (!witnessed) ++failures;
  }
  return failures;
}

EscapeRay escape_ray(const MarkedGroup& group, const Word& x, int r, int budget) {
  // the two-directions argument guarantees success for |x| >= 2r + 1; points
  // inside the forbidden ball cannot start a compliant ray at all
  if (group.length(x) <= r) throw std::invalid_argument("escape_ray needs |x| > r");
  const Word step_fwd = group.axis_step();
  const Word step_bwd = inverse_word(step_fwd);
  for (int direction : {+1, -1}) {
    const Word& step = direction > 0 ? step_fwd : step_bwd;
    std::vector<Word> points{x};
    Word cur = x;
    bool ok = true;
    // beyond |x| + r the ray is safe outright: |x * u_t| >= t - |x| > r
    const int check_until = std::min(budget, group.length(x) + r + 1);
    int t = 0;
    std::size_t step_pos = 0;
    while (t < budget) {
      cur = group.multiply(cur, Word(1, step[step_pos]));
      step_pos = (step_pos + 1) % step.size();
      ++t;
      points.push_back(cur);
      if (t <= check_until && group.length(cur) <= r) {
        ok = false;
        break;
      }
    }
    if (ok) {
      EscapeRay ray;
      ray.points = std::move(points);
      ray.direction = direction;
      return ray;
    }
  }
  throw InconclusiveError("both axis directions through the point meet the forbidden ball");
}

AnnulusResult annulus_connect(const CuspedGraph& graph, const CuspedVertex& x, const CuspedVertex& y,
                              const CuspedVertex& z, long long avoid_level_radius,
                              std::size_t max_vertices) {
  AnnulusResult out;
  const int level = z.level;
  const int peripheral = z.peripheral;
  auto contains = [&graph, &z, level, peripheral, avoid_level_radius](const CuspedVertex& v) {
    if (v.level != level || v.peripheral != peripheral) return false;
    const auto dl = graph.intrinsic_level_distance(v, z);
    return dl && *dl > avoid_level_radius;
  };
  RestrictedSearch search = restricted_shortest_path(graph, x, y, contains, -1, max_vertices);
  out.window_limited = search.window_limited;
  if (search.path) {
    out.path = EdgePath{std::move(*search.path)};
  } else {
    out.disconnected = !search.window_limited;
  }
  return out;
}

ExcursionRoute route_excursion(Scene& scene, const HoroballContext& ctx, const Excursion& exc,
                               std::optional<bool> exact_override) {
  const long long L = exc.path.length();
  bool any_near = false, any_boundary = false, any_unknown = false, all_far = true;
  for (const CuspedVertex& v : exc.path.vertices) {
    const TriDist d = dist_to_anchor(scene, ctx, v, exact_override);
    if (d.exact) {
      if (*d.exact <= L + 1) any_near = true;
      if (*d.exact == L + 2) any_boundary = true;
      if (*d.exact <= L + 2) all_far = false;
    } else if (d.lb <= L + 2) {
      any_unknown = true;
      all_far = false;
    }
  }
  if (all_far) return ExcursionRoute::Far;
  if (any_near) return ExcursionRoute::Near;
  if (any_unknown) return ExcursionRoute::Undecidable;
  if (any_boundary) return ExcursionRoute::Boundary;
  return ExcursionRoute::Undecidable;
}

namespace {

// shared tri-state assertion: counts into the report
void assert_greater(Scene& scene, LemmaReport& rep, const TriDist& d, long long bound, const char* kind,
                    const std::string& detail, long long& checked, long long& skipped, long long& violations) {
  switch (greater_than(d, bound)) {
    case Verdict::Pass:
      ++checked;
      break;
    case Verdict::Fail:
      ++violations;
      rep.violation(kind, detail, {{"value", d.exact ? *d.exact : -1}, {"bound", bound}});
      break;
    case Verdict::Unknown:
      ++skipped;
      break;
  }
  (void)scene;
}

}  // namespace

FarCheckResult check_far_excursion(Scene& scene, const HoroballContext& ctx, const Excursion& exc, int r,
                                   LemmaReport& rep, std::optional<bool> exact_override) {
  FarCheckResult out;
  const CuspedGraph& graph = *scene.graph;
  const long long L = exc.path.length();
  // hypothesis: the excursion avoids B_r and stays > L+2 from z
  for (const CuspedVertex& v : exc.path.vertices) {
    if (greater_than(dist_from_star(scene, v, exact_override), r) != Verdict::Pass) return out;
    if (greater_than(dist_to_anchor(scene, ctx, v, exact_override), L + 2) != Verdict::Pass) return out;
  }
  out.hypothesis_ok = true;
  out.projection = project_to_level(graph, exc.path, ctx.dbar);
  for (const CuspedVertex& p : out.projection.vertices) {
    assert_greater(scene, rep, dist_to_anchor(scene, ctx, p, exact_override), L + 2, "projection-near-anchor",
                   graph.format(p), out.checked, out.skipped, out.violations);
    assert_greater(scene, rep, dist_from_star(scene, p, exact_override), r - (2LL * scene.delta + 1),
                   "projection-avoidance", graph.format(p), out.checked, out.skipped, out.violations);
  }
  return out;
}

NearReplaceResult replace_near_excursion(Scene& scene, const HoroballContext& ctx, const Excursion& exc,
                                         int r, LemmaReport& rep, std::optional<bool> exact_override) {
  NearReplaceResult out;
  const CuspedGraph& graph = *scene.graph;
  out.k = r - ctx.dz;
  const CuspedVertex& x = exc.path.front();
  const CuspedVertex& y = exc.path.back();
  if (out.k < 0) {
    // every slab vertex already clears B_r; the projection itself serves
    EdgePath gamma = project_to_level(graph, exc.path, ctx.dbar);
    out.observed_length = gamma.length();
    for (const CuspedVertex& p : gamma.vertices) {
      assert_greater(scene, rep, dist_from_star(scene, p, exact_override), r - (2LL * scene.delta + 5),
                     "replacement-avoidance", graph.format(p), out.checked, out.skipped, out.violations);
    }
    out.replacement = std::move(gamma);
    return out;
  }
  const int s = (out.k + 1) / 2;  // ceil(k/2); odd k reported separately by the sweep
  const long long endpoint_clear = 1LL << s;
  const auto dx = graph.intrinsic_level_distance(x, ctx.z);
  const auto dy = graph.intrinsic_level_distance(y, ctx.z);
  if (!dx || !dy || *dx <= endpoint_clear || *dy <= endpoint_clear) {
    // the hypothesis chain guarantees endpoints clear the level ball; an
    // instance failing it is window noise, never guessed around
    ++out.skipped;
    return out;
  }
  const long long avoid = (s >= 1) ? (1LL << (s - 1)) : 0;
  AnnulusResult ann = annulus_connect(graph, x, y, ctx.z, avoid);
  out.window_limited = ann.window_limited;
  if (!ann.path) {
    if (ann.disconnected) {
      ++out.violations;
      rep.violation("annulus-disconnected", fmt_path_head(graph, exc.path), {{"k", out.k}});
    } else {
      ++out.skipped;
    }
    return out;
  }
  out.observed_length = ann.path->length();
  for (const CuspedVertex& p : ann.path->vertices) {
    assert_greater(scene, rep, dist_from_star(scene, p, exact_override), r - (2LL * scene.delta + 5),
                   "replacement-avoidance", graph.format(p), out.checked, out.skipped, out.violations);
  }
  out.replacement = std::move(*ann.path);
  return out;
}

DeepCheckResult check_deep_excursion(Scene& scene, const HoroballContext& ctx, const Excursion& exc, int r,
                                     LemmaReport& rep, std::optional<bool> exact_override) {
  DeepCheckResult out;
  const CuspedGraph& graph = *scene.graph;
  const long long L = exc.path.max_level();
  // doubled-integer bound: d > L - dbar/2 + 2  <=>  2d > 2L - dbar + 4
  const long long bound2 = 2 * L - ctx.dbar + 4;
  for (const CuspedVertex& v : exc.path.vertices) {
    const TriDist d = dist_to_anchor(scene, ctx, v, exact_override);
    const TriDist doubled{d.exact ? std::optional<int>(2 * *d.exact) : std::nullopt, 2 * d.lb};
    if (greater_than(doubled, bound2) != Verdict::Pass) return out;
    if (greater_than(dist_from_star(scene, v, exact_override), r) != Verdict::Pass) return out;
  }
  out.hypothesis_ok = true;
  EdgePath gamma = project_to_level(graph, exc.path, ctx.dbar);
  for (const CuspedVertex& p : gamma.vertices) {
    const TriDist d = dist_to_anchor(scene, ctx, p, exact_override);
    const TriDist doubled{d.exact ? std::optional<int>(2 * *d.exact) : std::nullopt, 2 * d.lb};
    assert_greater(scene, rep, doubled, bound2, "deep-projection-near-anchor", graph.format(p), out.checked,
                   out.skipped, out.violations);
    assert_greater(scene, rep, dist_from_star(scene, p, exact_override), r - (2LL * scene.delta + 1),
                   "deep-projection-avoidance", graph.format(p), out.checked, out.skipped, out.violations);
  }
  return out;
}

CompressResult compress_to_depth(Scene& scene, const EdgePath& psi, int dbar, int r, LemmaReport& rep,
                                 std::optional<bool> exact_override) {
  CompressResult out;
  const CuspedGraph& graph = *scene.graph;
  if (psi.front().level > dbar || psi.back().level > dbar) {
    throw std::invalid_argument("compress_to_depth endpoints must sit at depth <= dbar");
  }
  std::map<std::pair<int, Word>, HoroballContext> contexts;
  EdgePath result;
  std::size_t i = 0;
  const auto& vs = psi.vertices;
  while (i < vs.size()) {
    if (vs[i].level <= dbar) {
      if (result.vertices.empty() || !(result.vertices.back() == vs[i])) result.vertices.push_back(vs[i]);
      ++i;
      continue;
    }
    // excursion: vs[i-1] sits at level dbar, find the matching return
    std::size_t j = i;
    while (j < vs.size() && vs[j].level > dbar) ++j;
    if (j == vs.size() || i == 0) throw std::invalid_argument("path leaves depth dbar without returning");
    Excursion exc;
    exc.path.vertices.assign(vs.begin() + static_cast<long>(i) - 1, vs.begin() + static_cast<long>(j) + 1);
    exc.peripheral = vs[i].peripheral;
    exc.rep = graph.coset_rep(vs[i]);
    exc.dbar = dbar;
    auto key = std::make_pair(exc.peripheral, exc.rep);
    auto ctx_it = contexts.find(key);
    if (ctx_it == contexts.end()) {
      try {
        ctx_it = contexts.emplace(key, make_horoball_context(scene, exc.peripheral, exc.rep, dbar, exact_override))
                     .first;
      } catch (const InconclusiveError&) {
        out.inconclusive = true;
        out.offending = fmt_path_head(graph, exc.path);
        return out;
      }
    }
    const ExcursionRoute route = route_excursion(scene, ctx_it->second, exc, exact_override);
    std::optional<EdgePath> replacement;
    if (route == ExcursionRoute::Far) {
      FarCheckResult far = check_far_excursion(scene, ctx_it->second, exc, r, rep, exact_override);
      if (far.hypothesis_ok) replacement = far.projection;
    } else if (route == ExcursionRoute::Near) {
      NearReplaceResult near = replace_near_excursion(scene, ctx_it->second, exc, r, rep, exact_override);
      replacement = near.replacement;
    }
    if (!replacement) {
      out.inconclusive = true;
      out.offending = fmt_path_head(graph, exc.path);
      return out;
    }
    ++out.excursions_replaced;
    for (const CuspedVertex& v : replacement->vertices) {
      if (result.vertices.empty() || !(result.vertices.back() == v)) result.vertices.push_back(v);
    }
    i = j;  // continue from the return vertex (already appended)
  }
  // the compressed path must clear B_{r - (2 delta + 5)} throughout
  long long checked = 0, skipped = 0, violations = 0;
  for (const CuspedVertex& v : result.vertices) {
    assert_greater(scene, rep, dist_from_star(scene, v, exact_override), r - (2LL * scene.delta + 5),
                   "compressed-avoidance", graph.format(v), checked, skipped, violations);
  }
  rep.checked += checked;
  rep.skipped_uncertified += skipped;
  out.compressed = std::move(result);
  return out;
}

std::optional<StarWitness> check_closeness(Scene& scene, const CuspedVertex& x, const CuspedVertex& y,
                                           int epsilon, std::optional<bool> exact_override) {
  const auto dx = scene.dist_from_star(x, exact_override);
  const auto dy = scene.dist_from_star(y, exact_override);
  const auto dxy = scene.provider(exact_override).distance(x, y);
  if (!dx || !dy || !dxy) return std::nullopt;
  StarWitness w;
  w.x = x;
  w.y = y;
  w.epsilon = epsilon;
  w.m_bound = closeness_M(scene.delta);
  w.gap = std::abs(*dx - *dy);
  w.distance = *dxy;
  w.holds = w.gap <= epsilon && w.distance <= w.m_bound;
  return w;
}

DaggerWitness search_connecting_path(Scene& scene, const CuspedVertex& x, const CuspedVertex& y, int delta,
                                     int n_max, DaggerVariant variant, std::optional<bool> exact_override) {
  DaggerWitness w;
  w.x = x;
  w.y = y;
  w.variant = variant;
  const auto dx = scene.dist_from_star(x, exact_override);
  const auto dy = scene.dist_from_star(y, exact_override);
  if (!dx || !dy) throw InconclusiveError("anchor distances uncertified for connecting-path search");
  w.m = std::min(*dx, *dy);
  w.forbidden = (variant == DaggerVariant::Plain) ? (w.m - 48LL * delta) : (w.m - 50LL * delta - 5);
  const long long depth_cap = (variant == DaggerVariant::Hat) ? depth_band_K(delta) : -1;

  BfsOptions opts;
  opts.horizon = n_max;
  opts.record_parents = true;
  opts.contains = [&scene, &exact_override, forbidden = w.forbidden, depth_cap](const CuspedVertex& v) {
    if (depth_cap >= 0 && v.level > depth_cap) return false;
    if (forbidden < 0) return true;
    return greater_than(dist_from_star(scene, v, exact_override), forbidden) == Verdict::Pass;
  };
  if (!opts.contains(x) || !opts.contains(y)) {
    // an endpoint sits inside the forbidden ball: no compliant path exists
    w.exact = true;
    return w;
  }
  DistanceField field = certified_bfs(*scene.graph, x, opts);
  w.window_limited = field.r_bad < kUnbounded;
  auto it = field.values.find(y);
  if (it != field.values.end() && it->second <= n_max) {
    w.n = it->second;
    w.exact = it->second <= field.cert_limit();
    w.path = EdgePath{field.path_to(y)};
  }
  return w;
}

std::optional<Excursion> sample_excursion(Scene& scene, const HoroballContext& ctx,
                                          const ExcursionParams& params, Rng& rng) {
  const CuspedGraph& graph = *scene.graph;
  const MarkedGroup& group = graph.group();
  const int dbar = params.dbar;
  const int level_cap = params.level_cap > 0 ? std::min(params.level_cap, graph.depth_cap()) : graph.depth_cap();
  // start: random offset from z in the peripheral metric
  Word start;
  bool found = false;
  for (int tries = 0; tries < 24 && !found; ++tries) {
    Word p = group.random_peripheral_element(ctx.peripheral, params.offset_hi, rng);
    if (group.length(p) < params.offset_lo) continue;
    Word cand = group.multiply(ctx.z.elem, p);
    if (group.length(cand) <= graph.base_radius()) {
      start = std::move(cand);
      found = true;
    }
  }
  if (!found) return std::nullopt;
  Excursion exc;
  exc.peripheral = ctx.peripheral;
  exc.rep = ctx.rep;
  exc.dbar = dbar;
  CuspedVertex cur{start, static_cast<std::int16_t>(dbar), static_cast<std::int16_t>(ctx.peripheral)};
  exc.path.vertices.push_back(cur);
  // first move is always up; interior stays strictly above dbar
  cur.level = static_cast<std::int16_t>(dbar + 1);
  exc.path.vertices.push_back(cur);
  for (int step = 0; step < params.steps; ++step) {
    const int move = static_cast<int>(rng.below(6));
    if (move < 2 && cur.level + 1 <= level_cap) {  // up
      cur.level = static_cast<std::int16_t>(cur.level + 1);
      exc.path.vertices.push_back(cur);
    } else if (move < 3 && cur.level - 1 > dbar) {  // down
      cur.level = static_cast<std::int16_t>(cur.level - 1);
      exc.path.vertices.push_back(cur);
    } else {  // horizontal hop, span capped to keep the sampler local
      const int sample_radius = static_cast<int>(std::min(level_span(cur.level), 64LL));
      for (int t = 0; t < params.horizontal_tries; ++t) {
        Word p = group.random_peripheral_element(ctx.peripheral, sample_radius, rng);
        Word cand = group.multiply(cur.elem, p);
        if (group.length(cand) <= graph.base_radius()) {
          cur.elem = std::move(cand);
          exc.path.vertices.push_back(cur);
          break;
        }
      }
    }
  }
  if (dbar < 1) throw std::invalid_argument("excursion sampler needs dbar >= 1");
  while (cur.level > dbar) {
    cur.level = static_cast<std::int16_t>(cur.level - 1);
    exc.path.vertices.push_back(cur);
  }
  return exc;
}

// ---- sweep runners --------------------------------------------------------

namespace {

std::vector<std::pair<int, Word>> sweep_horoballs(Scene& scene, int dbar, int max_horoballs,
                                                  std::optional<bool> exact_override) {
  const bool use_exact = exact_override.value_or(scene.prefer_exact) && scene.exact;
  if (use_exact) return {{0, Word{}}};
  std::vector<std::pair<int, Word>> hs = scene.visible_horoballs(dbar);
  if (static_cast<int>(hs.size()) > max_horoballs) hs.resize(static_cast<std::size_t>(max_horoballs));
  return hs;
}

}  // namespace

LemmaReport run_projection_sweep(Scene& scene, const SurgerySweepParams& params) {
  LemmaReport rep;
  rep.lemma = "projection";
  rep.instance = scene.fixture;
  rep.delta = scene.delta;
  const int dbar = params.dbar >= 0 ? params.dbar : scene.delta;
  Rng rng(params.seed);
  long long sampled = 0;
  for (const auto& [i, repw] : sweep_horoballs(scene, dbar, params.max_horoballs, params.exact_override)) {
    HoroballContext ctx;
    try {
      ctx = make_horoball_context(scene, i, repw, dbar, params.exact_override);
    } catch (const InconclusiveError&) {
      ++rep.skipped_uncertified;
      continue;
    }
    ExcursionParams ep = params.excursion;
    ep.dbar = dbar;
    for (long long s = 0; s < params.samples; ++s) {
      Rng sub = rng.fork(static_cast<std::uint64_t>(s));
      auto exc = sample_excursion(scene, ctx, ep, sub);
      if (!exc) {
        ++rep.skipped_uncertified;
        continue;
      }
      ++sampled;
      EdgePath gamma = project_to_level(*scene.graph, exc->path, dbar);
      // projection endpoints are the vertical drops of the path endpoints
      if (!(gamma.front().elem == exc->path.front().elem) || !(gamma.back().elem == exc->path.back().elem)) {
        rep.violation("endpoint-drop", fmt_path_head(*scene.graph, exc->path));
        continue;
      }
      const int failures = projection_witness_failures(*scene.graph, exc->path, gamma);
      ++rep.checked;
      if (failures > 0) {
        rep.violation("missing-witness", fmt_path_head(*scene.graph, exc->path), {{"failures", failures}});
      }
    }
  }
  rep.constant("excursions", sampled);
  return rep;
}

LemmaReport run_far_excursion_sweep(Scene& scene, const SurgerySweepParams& params) {
  LemmaReport rep;
  rep.lemma = "excursion-far";
  rep.instance = scene.fixture;
  rep.delta = scene.delta;
  const int dbar = params.dbar >= 0 ? params.dbar : scene.delta;
  rep.constant("level", dbar);
  Rng rng(params.seed);
  long long hypothesis_ok = 0, routed_away = 0;
  for (const auto& [i, repw] : sweep_horoballs(scene, dbar, params.max_horoballs, params.exact_override)) {
    HoroballContext ctx;
    try {
      ctx = make_horoball_context(scene, i, repw, dbar, params.exact_override);
    } catch (const InconclusiveError&) {
      ++rep.skipped_uncertified;
      continue;
    }
    ExcursionParams ep = params.excursion;
    ep.dbar = dbar;
    for (long long s = 0; s < params.samples; ++s) {
      Rng sub = rng.fork(static_cast<std::uint64_t>(s));
      auto exc = sample_excursion(scene, ctx, ep, sub);
      if (!exc || exc->path.front() == exc->path.back()) {
        ++rep.skipped_uncertified;
        continue;
      }
      if (route_excursion(scene, ctx, *exc, params.exact_override) != ExcursionRoute::Far) {
        ++routed_away;
        continue;
      }
      // largest r whose avoidance hypothesis the certificates support
      int r = kUnbounded;
      for (const CuspedVertex& v : exc->path.vertices) {
        r = std::min(r, dist_from_star(scene, v, params.exact_override).lb - 1);
      }
      if (r < 1) {
        ++rep.skipped_uncertified;
        continue;
      }
      FarCheckResult res = check_far_excursion(scene, ctx, *exc, r, rep, params.exact_override);
      if (!res.hypothesis_ok) {
        ++rep.skipped_uncertified;
        continue;
      }
      ++hypothesis_ok;
      rep.checked += res.checked;
      rep.skipped_uncertified += res.skipped;
    }
  }
  rep.constant("instances", hypothesis_ok);
  rep.constant("routed_to_near", routed_away);
  return rep;
}

LemmaReport run_near_excursion_sweep(Scene& scene, const SurgerySweepParams& params) {
  LemmaReport rep;
  rep.lemma = "excursion-near";
  rep.instance = scene.fixture;
  rep.delta = scene.delta;
  const int dbar = params.dbar >= 0 ? params.dbar : scene.delta;
  rep.constant("level", dbar);
  Rng rng(params.seed);
  // observed replacement lengths, bucketed per k and per r
  std::map<int, std::map<int, int>> f_table;
  long long instances = 0;
  for (const auto& [i, repw] : sweep_horoballs(scene, dbar, params.max_horoballs, params.exact_override)) {
    HoroballContext ctx;
    try {
      ctx = make_horoball_context(scene, i, repw, dbar, params.exact_override);
    } catch (const InconclusiveError&) {
      ++rep.skipped_uncertified;
      continue;
    }
    for (int k : params.k_values) {
      const int r = ctx.dz + k;
      const int s_half = k >= 0 ? (k + 1) / 2 : 0;
      ExcursionParams ep = params.excursion;
      ep.dbar = dbar;
      // start offsets sized so endpoints clear the level ball of radius 2^ceil(k/2)
      ep.offset_lo = (1 << (s_half + dbar)) + 1;
      ep.offset_hi = ep.offset_lo + (1 << (dbar + 1)) - 1;
      ep.steps = std::max(params.excursion.steps, k + 3);
      for (long long s = 0; s < params.samples; ++s) {
        // identical stream per (k, s) across horoballs: translated cosets see
        // the same relative geometry, which is what the flatness check probes
        Rng sub = rng.fork(static_cast<std::uint64_t>(k + 7) * 1'000'003ULL + static_cast<std::uint64_t>(s));
        auto exc = sample_excursion(scene, ctx, ep, sub);
        if (!exc) {
          ++rep.skipped_uncertified;
          continue;
        }
        if (route_excursion(scene, ctx, *exc, params.exact_override) != ExcursionRoute::Near) continue;
        // hypothesis: the excursion clears B_r
        bool ok = true, unknown = false;
        for (const CuspedVertex& v : exc->path.vertices) {
          switch (greater_than(dist_from_star(scene, v, params.exact_override), r)) {
            case Verdict::Pass: break;
            case Verdict::Fail: ok = false; break;
            case Verdict::Unknown: unknown = true; break;
          }
        }
        if (!ok) continue;
        if (unknown) {
          ++rep.skipped_uncertified;
          continue;
        }
        NearReplaceResult res = replace_near_excursion(scene, ctx, *exc, r, rep, params.exact_override);
        rep.checked += res.checked;
        rep.skipped_uncertified += res.skipped;
        if (res.observed_length >= 0) {
          ++instances;
          auto& slot = f_table[res.k][r];
          slot = std::max(slot, res.observed_length);
        }
      }
    }
  }
  rep.constant("instances", instances);
  for (const auto& [k, by_r] : f_table) {
    int lo = kUnbounded, hi = -1;
    for (const auto& [r, f] : by_r) {
      rep.constant("F_k" + std::to_string(k) + "_r" + std::to_string(r), f);
      lo = std::min(lo, f);
      hi = std::max(hi, f);
    }
    if (by_r.size() >= 2) rep.constant("F_spread_k" + std::to_string(k), hi - lo);
  }
  return rep;
}

LemmaReport run_deep_excursion_sweep(Scene& scene, const SurgerySweepParams& params) {
  LemmaReport rep;
  rep.lemma = "excursion-depth";
  rep.instance = scene.fixture;
  rep.delta = scene.delta;
  const int dbar = params.dbar >= 0 ? params.dbar : scene.delta;
  rep.constant("level", dbar);
  Rng rng(params.seed);
  long long instances = 0, beyond_length_hypothesis = 0;
  for (const auto& [i, repw] : sweep_horoballs(scene, dbar, params.max_horoballs, params.exact_override)) {
    HoroballContext ctx;
    try {
      ctx = make_horoball_context(scene, i, repw, dbar, params.exact_override);
    } catch (const InconclusiveError&) {
      ++rep.skipped_uncertified;
      continue;
    }
    ExcursionParams ep = params.excursion;
    ep.dbar = dbar;
    for (long long s = 0; s < params.samples; ++s) {
      Rng sub = rng.fork(static_cast<std::uint64_t>(s));
      auto exc = sample_excursion(scene, ctx, ep, sub);
      if (!exc || exc->path.front() == exc->path.back()) {
        ++rep.skipped_uncertified;
        continue;
      }
      int r = kUnbounded;
      for (const CuspedVertex& v : exc->path.vertices) {
        r = std::min(r, dist_from_star(scene, v, params.exact_override).lb - 1);
      }
      if (r < 1) {
        ++rep.skipped_uncertified;
        continue;
      }
      DeepCheckResult res = check_deep_excursion(scene, ctx, *exc, r, rep, params.exact_override);
      if (!res.hypothesis_ok) continue;
      ++instances;
      rep.checked += res.checked;
      rep.skipped_uncertified += res.skipped;
      // instances the length-based route would have rejected
      if (route_excursion(scene, ctx, *exc, params.exact_override) != ExcursionRoute::Far) {
        ++beyond_length_hypothesis;
      }
    }
  }
  rep.constant("instances", instances);
  rep.constant("beyond_length_hypothesis", beyond_length_hypothesis);
  return rep;
}

LemmaReport run_compress_sweep(Scene& scene, const SurgerySweepParams& params) {
  LemmaReport rep;
  rep.lemma = "compress";
  rep.instance = scene.fixture;
  rep.delta = scene.delta;
  const int dbar = params.dbar >= 0 ? params.dbar : scene.delta;
  rep.constant("level", dbar);
  Rng rng(params.seed);
  long long compressed_ok = 0, inconclusive = 0;
  const auto horoballs = sweep_horoballs(scene, dbar, params.max_horoballs, params.exact_override);
  if (horoballs.empty()) {
    rep.note("no horoballs visible at the sweep level");
    return rep;
  }
  std::vector<HoroballContext> contexts;
  for (const auto& [i, repw] : horoballs) {
    try {
      contexts.push_back(make_horoball_context(scene, i, repw, dbar, params.exact_override));
    } catch (const InconclusiveError&) {
    }
  }
  if (contexts.empty()) {
    rep.note("no certified horoball contexts");
    return rep;
  }
  for (long long s = 0; s < params.samples; ++s) {
    Rng sub = rng.fork(static_cast<std::uint64_t>(s));
    // one or two excursions joined through the slab / base region
    const std::size_t nexc = 1 + sub.below(std::min<std::size_t>(2, contexts.size()));
    std::vector<Excursion> excs;
    for (std::size_t e = 0; e < nexc; ++e) {
      const HoroballContext& ctx = contexts[e % contexts.size()];
      ExcursionParams ep = params.excursion;
      ep.dbar = dbar;
      auto exc = sample_excursion(scene, ctx, ep, sub);
      if (exc) excs.push_back(std::move(*exc));
    }
    if (excs.empty()) {
      ++rep.skipped_uncertified;
      continue;
    }
    // join consecutive excursions by shortest depth-<=dbar paths
    EdgePath psi = excs[0].path;
    bool joined = true;
    for (std::size_t e = 1; e < excs.size(); ++e) {
      auto low = [dbar](const CuspedVertex& v) { return v.level <= dbar; };
      RestrictedSearch link =
          restricted_shortest_path(*scene.graph, psi.vertices.back(), excs[e].path.front(), low, -1);
      if (!link.path) {
        joined = false;
        break;
      }
      psi.vertices.insert(psi.vertices.end(), link.path->begin() + 1, link.path->end());
      psi.vertices.insert(psi.vertices.end(), excs[e].path.vertices.begin() + 1, excs[e].path.vertices.end());
    }
    if (!joined) {
      ++rep.skipped_uncertified;
      continue;
    }
    int r = kUnbounded;
    for (const CuspedVertex& v : psi.vertices) {
      r = std::min(r, dist_from_star(scene, v, params.exact_override).lb - 1);
    }
    if (r < 1) {
      ++rep.skipped_uncertified;
      continue;
    }
    CompressResult res = compress_to_depth(scene, psi, dbar, r, rep, params.exact_override);
    if (res.inconclusive || !res.compressed) {
      ++inconclusive;
      continue;
    }
    ++compressed_ok;
    ++rep.checked;
    if (res.compressed->max_level() > dbar) {
      rep.violation("depth-escape", fmt_path_head(*scene.graph, *res.compressed));
    }
    if (!(res.compressed->front() == psi.front()) || !(res.compressed->back() == psi.back())) {
      rep.violation("endpoint-drift", fmt_path_head(*scene.graph, *res.compressed));
    }
  }
  rep.constant("compressed", compressed_ok);
  rep.constant("inconclusive", inconclusive);
  return rep;
}

LemmaReport run_escape_sweep(Scene& scene, const SurgerySweepParams& params) {
  LemmaReport rep;
  rep.lemma = "escape-ray";
  rep.instance = scene.fixture;
  rep.delta = scene.delta;
  Rng rng(params.seed);
  const MarkedGroup& group = scene.graph->group();
  for (long long s = 0; s < params.samples; ++s) {
    Rng sub = rng.fork(static_cast<std::uint64_t>(s));
    // random geodesically growing word
    const int len = 3 + static_cast<int>(sub.below(8));
    Word x;
    for (int t = 0; t < len; ++t) {
      for (int tries = 0; tries < 12; ++tries) {
        const int g = static_cast<int>(sub.below(static_cast<std::uint64_t>(group.generator_count())));
        const bool inv = sub.below(2) == 1;
        Word cand = group.multiply(x, Word(1, letter(g, inv)));
        if (group.length(cand) == group.length(x) + 1) {
          x = std::move(cand);
          break;
        }
      }
    }
    const int r = (group.length(x) - 1) / 2;
    if (r < 1) {
      ++rep.skipped_uncertified;
      continue;
    }
    const int budget = 2 * r + group.length(x);
    try {
      EscapeRay ray = escape_ray(group, x, r, budget);
      ++rep.checked;
      // re-verify: geodesic prefixes and pointwise avoidance
      for (std::size_t t = 0; t < ray.points.size(); ++t) {
        if (group.distance(x, ray.points[t]) != static_cast<int>(t)) {
          rep.violation("not-geodesic", group.format(x), {{"t", static_cast<long long>(t)}});
          break;
        }
        if (group.length(ray.points[t]) <= r) {
          rep.violation("ray-enters-ball", group.format(ray.points[t]), {{"r", r}});
          break;
        }
      }
    } catch (const InconclusiveError&) {
      rep.violation("no-escape-direction", group.format(x), {{"r", r}});
    }
  }
  return rep;
}

LemmaReport run_dagger_sweep(Scene& scene, const DaggerSweepParams& params) {
  LemmaReport rep;
  rep.lemma = "connecting-path";
  rep.instance = scene.fixture;
  rep.delta = params.delta;
  Rng rng(params.seed);
  // sample certified pairs from the master field
  std::vector<CuspedVertex> pool;
  for (const auto& [v, d] : scene.master->values) {
    if (d <= scene.master->cert_limit()) pool.push_back(v);
  }
  std::sort(pool.begin(), pool.end(), vertex_less);
  if (pool.size() < 2) {
    rep.note("certified pool too small");
    return rep;
  }
  long long found_plain = 0, found_hat = 0, hat_ge_plain = 0, comparable = 0;
  int max_n_plain = -1, max_n_hat = -1;
  for (long long s = 0; s < params.samples; ++s) {
    const CuspedVertex& x = pool[static_cast<std::size_t>(rng.below(pool.size()))];
    const CuspedVertex& y = pool[static_cast<std::size_t>(rng.below(pool.size()))];
    if (x == y) continue;
    auto star = check_closeness(scene, x, y, 10 * params.delta, params.exact_override);
    if (!star) {
      ++rep.skipped_uncertified;
      continue;
    }
    if (!star->holds) continue;
    try {
      DaggerWitness plain =
          search_connecting_path(scene, x, y, params.delta, params.n_max, DaggerVariant::Plain, params.exact_override);
      DaggerWitness hat =
          search_connecting_path(scene, x, y, params.delta, params.n_max, DaggerVariant::Hat, params.exact_override);
      ++rep.checked;
      if (plain.n) {
        ++found_plain;
        max_n_plain = std::max(max_n_plain, *plain.n);
      }
      if (hat.n) {
        ++found_hat;
        max_n_hat = std::max(max_n_hat, *hat.n);
      }
      if (plain.n && hat.n) {
        ++comparable;
        if (*hat.n >= *plain.n) ++hat_ge_plain;
      }
    } catch (const InconclusiveError&) {
      ++rep.skipped_uncertified;
    }
  }
  rep.constant("found_plain", found_plain);
  rep.constant("found_hat", found_hat);
  rep.constant("max_n_plain", max_n_plain);
  rep.constant("max_n_hat", max_n_hat);
  rep.constant("comparable", comparable);
  rep.constant("hat_ge_plain", hat_ge_plain);
  return rep;
}

}  // namespace cusp
