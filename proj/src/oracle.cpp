#include "utgrad/oracle.hpp"

#include <atomic>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "utgrad/classify.hpp"
#include "utgrad/error.hpp"

namespace utgrad {

std::string mode_name(CensusMode m) {
  switch (m) {
    case CensusMode::full: return "full";
    case CensusMode::pruned: return "pruned";
    case CensusMode::sampled: return "sampled";
  }
  return "?";
}

CensusMode parse_mode(const std::string& text) {
  if (text == "full") return CensusMode::full;
  if (text == "pruned") return CensusMode::pruned;
  if (text == "sampled") return CensusMode::sampled;
  throw InputError("unknown census mode '" + text + "' (full, pruned, sampled)");
}

namespace {

/// Calls fn on every vector of F^dim (finite field), in lexicographic order of residues.
void for_each_vector(FieldSpec f, std::size_t dim, const std::function<void(const Vector&)>& fn) {
  const std::uint32_t p = f.modulus();
  std::vector<std::uint32_t> digits(dim, 0);
  Vector v = zero_vector(f, dim);
  for (;;) {
    fn(v);
    std::size_t k = 0;
    while (k < dim && ++digits[k] == p) {
      digits[k] = 0;
      v[k] = Scalar::zero(f);
      ++k;
    }
    if (k == dim) return;
    v[k] = Scalar::from_int(f, digits[k]);
  }
}

class NodeCounter {
 public:
  explicit NodeCounter(std::uint64_t budget) : budget_(budget) {}
  void tick() {
    const auto v = ++count_;
    if (v > budget_) throw BudgetExceeded("enumeration exceeded its node budget", v);
  }
  std::uint64_t value() const { return count_.load(); }

 private:
  std::uint64_t budget_;
  std::atomic<std::uint64_t> count_{0};
};

/// Ordered decompositions of F^m into one subspace per group element.
void for_each_decomposition(const std::vector<Subspace>& subs, std::size_t parts, std::size_t m, NodeCounter& nodes,
                            const std::function<void(const std::vector<Subspace>&)>& fn) {
  std::vector<Subspace> chosen;
  std::function<void(const Subspace&)> rec = [&](const Subspace& so_far) {
    if (chosen.size() == parts) {
      if (so_far.dimension() == m) fn(chosen);
      return;
    }
    const bool last = chosen.size() + 1 == parts;
    for (const auto& w : subs) {
      if (last && w.dimension() + so_far.dimension() != m) continue;
      if (w.dimension() + so_far.dimension() > m) continue;
      nodes.tick();
      Subspace s = sum(so_far, w);
      if (s.dimension() != so_far.dimension() + w.dimension()) continue;
      chosen.push_back(w);
      rec(s);
      chosen.pop_back();
    }
  };
  rec(Subspace::zero(subs.front().field(), m));
}

Grading assemble(int n, FieldSpec f, const AbelianGroup& grp, const std::vector<GroupElement>& els,
                 const std::vector<Subspace>& parts) {
  std::map<GroupElement, Subspace> comps;
  for (std::size_t g = 0; g < els.size(); ++g)
    if (!parts[g].is_zero()) comps.emplace(els[g], parts[g]);
  return Grading(n, f, grp, std::move(comps));
}

/// Positions (i, i+k) of the k-th superdiagonal.
Vector embed(int n, int k, const Vector& q, FieldSpec f) {
  Vector out = zero_vector(f, ut_dim(n));
  for (int i = 0; i + k < n; ++i) out[ut_index(n, i, i + k)] = q[i];
  return out;
}

struct Pruned {
  int n;
  FieldSpec f;
  AbelianGroup grp;
  std::vector<GroupElement> els;
  const std::vector<std::vector<Subspace>>& subspaces;  // subspaces of F^m, m = 1..n
  NodeCounter& nodes;
  std::optional<std::size_t> fixed_corner, fixed_t;
  std::vector<Grading> out;

  std::size_t index_of(const GroupElement& g) const {
    return static_cast<std::size_t>(std::lower_bound(els.begin(), els.end(), g) - els.begin());
  }

  /// Extends the decomposition `lower` of J^(k+1) to J^k (to UT_n when k = 0).
  void level(int k, const std::vector<Subspace>& lower) {
    if (k < 0) {
      emit(lower);
      return;
    }
    const std::size_t m = static_cast<std::size_t>(n - k);
    for_each_decomposition(subspaces[m], els.size(), m, nodes, [&](const std::vector<Subspace>& q) {
      if (k == n - 1 && fixed_corner && q[*fixed_corner].is_zero()) return;
      if (k == 0 && fixed_t && !q[*fixed_t].contains(Vector(m, Scalar::one(f)))) return;
      lift(k, lower, q);
    });
  }

  void lift(int k, const std::vector<Subspace>& lower, const std::vector<Subspace>& q) {
    const std::size_t d = ut_dim(n);
    Subspace whole_lower = Subspace::zero(f, d);
    for (const auto& s : lower) whole_lower = sum(whole_lower, s);
    struct Item {
      std::size_t g;
      Vector base;
      Matrix complement;
    };
    std::vector<Item> items;
    for (std::size_t g = 0; g < els.size(); ++g) {
      if (q[g].is_zero()) continue;
      Matrix comp = complement_within(lower[g], whole_lower).basis();
      for (const auto& b : q[g].basis()) items.push_back({g, embed(n, k, b, f), comp});
    }
    std::vector<std::pair<std::size_t, Vector>> placed;
    std::function<void(std::size_t)> rec = [&](std::size_t pos) {
      if (pos == items.size()) {
        std::vector<Subspace> next = lower;
        for (const auto& [g, x] : placed) next[g] = sum(next[g], Subspace::span(f, d, {x}));
        if (k == 0 && fixed_t && !next[*fixed_t].contains(UTMatrix::identity(f, n).coords())) return;
        level(k - 1, next);
        return;
      }
      const Item& it = items[pos];
      for_each_vector(f, it.complement.size(), [&](const Vector& c) {
        nodes.tick();
        Vector x = it.base;
        for (std::size_t i = 0; i < c.size(); ++i) axpy(x, c[i], it.complement[i]);
        if (!compatible(it.g, x, lower, placed)) return;
        placed.emplace_back(it.g, std::move(x));
        rec(pos + 1);
        placed.pop_back();
      });
    };
    rec(0);
  }

  /// Brackets of x with the fixed lower part and the vectors placed at this level.
  bool compatible(std::size_t g, const Vector& x, const std::vector<Subspace>& lower,
                  const std::vector<std::pair<std::size_t, Vector>>& placed) const {
    for (std::size_t h = 0; h < els.size(); ++h) {
      const Subspace& target = lower[index_of(grp.compose(els[g], els[h]))];
      for (const auto& b : lower[h].basis())
        if (!target.contains(bracket_coords(f, n, x, b))) return false;
    }
    for (const auto& [h, y] : placed) {
      const Subspace& target = lower[index_of(grp.compose(els[g], els[h]))];
      if (!target.contains(bracket_coords(f, n, x, y))) return false;
    }
    return true;
  }

  void emit(const std::vector<Subspace>& parts) {
    Grading gr = assemble(n, f, grp, els, parts);
    if (!verify_grading(gr).ok) throw Error("pruned enumeration produced an invalid grading");
    out.push_back(std::move(gr));
  }
};

void check_config(const CensusConfig& cfg) {
  if (!cfg.field.is_finite()) throw InputError("enumeration needs a finite field");
  if (!cfg.group.is_finite()) throw InputError("enumeration needs a finite group");
  if (cfg.n < 2) throw InputError("n must be at least 2");
  if (cfg.jobs < 1) throw InputError("jobs must be positive");
}

}  // namespace

std::vector<Subspace> all_subspaces(FieldSpec f, std::size_t dim) {
  if (!f.is_finite()) throw InputError("subspace enumeration needs a finite field");
  std::vector<Subspace> out;
  for (std::size_t k = 0; k <= dim; ++k) {
    std::vector<std::size_t> piv(k);
    std::iota(piv.begin(), piv.end(), 0);
    if (k == 0) {
      out.push_back(Subspace::zero(f, dim));
      continue;
    }
    for (;;) {
      // Free entries: row r, column c > piv[r], c not a pivot.
      std::vector<std::pair<std::size_t, std::size_t>> free;
      std::set<std::size_t> pivset(piv.begin(), piv.end());
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = piv[r] + 1; c < dim; ++c)
          if (!pivset.count(c)) free.emplace_back(r, c);
      for_each_vector(f, free.size(), [&](const Vector& vals) {
        Matrix rows(k, zero_vector(f, dim));
        for (std::size_t r = 0; r < k; ++r) rows[r][piv[r]] = Scalar::one(f);
        for (std::size_t i = 0; i < free.size(); ++i) rows[free[i].first][free[i].second] = vals[i];
        out.push_back(Subspace::span(f, dim, rows));
      });
      // Next k-combination of {0..dim-1}.
      std::size_t i = k;
      while (i > 0 && piv[i - 1] == dim - k + i - 1) --i;
      if (i == 0) break;
      ++piv[i - 1];
      for (std::size_t j = i; j < k; ++j) piv[j] = piv[j - 1] + 1;
    }
  }
  return out;
}

EnumerationStats enumerate_gradings(const CensusConfig& cfg, const std::function<void(const Grading&)>& fn) {
  check_config(cfg);
  const FieldSpec f = cfg.field;
  const int n = cfg.n;
  const auto els = cfg.group.elements();
  NodeCounter nodes(cfg.budget);
  EnumerationStats stats;

  if (cfg.mode == CensusMode::full) {
    const std::size_t d = ut_dim(n);
    const auto subs = all_subspaces(f, d);
    for_each_decomposition(subs, els.size(), d, nodes, [&](const std::vector<Subspace>& parts) {
      Grading gr = assemble(n, f, cfg.group, els, parts);
      if (!verify_grading(gr).ok) return;
      ++stats.gradings;
      fn(gr);
    });
    stats.nodes = nodes.value();
    return stats;
  }
  if (cfg.mode != CensusMode::pruned) throw InputError("enumeration supports the full and pruned modes");

  std::vector<std::vector<Subspace>> subs(n + 1);
  for (int m = 1; m <= n; ++m) subs[m] = all_subspaces(f, m);
  // Tasks: (deg e_1n, deg I), merged in task order.
  std::vector<std::pair<std::size_t, std::size_t>> tasks;
  for (std::size_t c = 0; c < els.size(); ++c)
    for (std::size_t t = 0; t < els.size(); ++t) tasks.emplace_back(c, t);
  std::vector<std::vector<Grading>> results(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  auto run = [&](std::size_t task) {
    try {
      Pruned p{n, f, cfg.group, els, subs, nodes, tasks[task].first, tasks[task].second, {}};
      std::vector<Subspace> none(els.size(), Subspace::zero(f, ut_dim(n)));
      p.level(n - 1, none);
      results[task] = std::move(p.out);
    } catch (...) {
      errors[task] = std::current_exception();
    }
  };
  if (cfg.jobs == 1) {
    for (std::size_t t = 0; t < tasks.size(); ++t) run(t);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < cfg.jobs; ++w)
      pool.emplace_back([&] {
        for (std::size_t t; (t = next++) < tasks.size();) run(t);
      });
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  for (const auto& r : results)
    for (const auto& g : r) {
      ++stats.gradings;
      fn(g);
    }
  stats.nodes = nodes.value();
  return stats;
}

std::vector<Automorphism> automorphism_list(int n, FieldSpec f, std::uint64_t budget) {
  std::vector<Automorphism> out;
  for_each_automorphism(
      n, f,
      [&](const Automorphism& a) {
        out.push_back(a);
        return true;
      },
      budget);
  return out;
}

namespace {

bool same_shape(const Grading& a, const Grading& b) {
  if (a.n() != b.n() || a.field() != b.field() || !(a.group() == b.group()))
    throw MismatchError("gradings live on different algebras or groups");
  if (a.components().size() != b.components().size()) return false;
  for (const auto& [g, s] : a.components())
    if (b.component(g).dimension() != s.dimension()) return false;
  return true;
}

bool maps_onto(const Automorphism& f, const Grading& a, const Grading& b) {
  for (const auto& [g, s] : a.components()) {
    const Subspace target = b.component(g);
    for (const auto& v : s.basis())
      if (!target.contains(f.apply_coords(v))) return false;
  }
  return true;
}

std::map<GroupElement, Subspace> central_images(const Grading& g) {
  const Subspace c = center(g.field(), g.n());
  std::map<GroupElement, Subspace> out;
  for (const auto& [deg, s] : g.components()) {
    Subspace w = sum(s, c);
    if (!(w == c)) out.emplace(deg, std::move(w));
  }
  return out;
}

}  // namespace

std::optional<Automorphism> graded_isomorphic_search(const Grading& a, const Grading& b,
                                                     const std::vector<Automorphism>& autos) {
  if (!same_shape(a, b)) return std::nullopt;
  for (const auto& f : autos)
    if (maps_onto(f, a, b)) return f;
  return std::nullopt;
}

std::optional<Automorphism> graded_isomorphic_search(const Grading& a, const Grading& b) {
  return graded_isomorphic_search(a, b, automorphism_list(a.n(), a.field()));
}

std::optional<Automorphism> practical_isomorphic_search(const Grading& a, const Grading& b,
                                                        const std::vector<Automorphism>& autos) {
  same_shape(a, b);
  const auto qa = central_images(a), qb = central_images(b);
  if (qa.size() != qb.size()) return std::nullopt;
  for (const auto& [g, s] : qa) {
    auto it = qb.find(g);
    if (it == qb.end() || it->second.dimension() != s.dimension()) return std::nullopt;
  }
  for (const auto& f : autos) {
    bool ok = true;
    for (const auto& [g, s] : a.components()) {
      auto it = qb.find(g);
      const Subspace target = it == qb.end() ? center(b.field(), b.n()) : it->second;
      for (const auto& v : s.basis())
        if (!target.contains(f.apply_coords(v))) {
          ok = false;
          break;
        }
      if (!ok) break;
    }
    if (ok) return f;
  }
  return std::nullopt;
}

std::optional<Automorphism> practical_isomorphic_search(const Grading& a, const Grading& b) {
  return practical_isomorphic_search(a, b, automorphism_list(a.n(), a.field()));
}

std::uint64_t stabilizer_size(const Grading& g, const std::vector<Automorphism>& autos) {
  std::uint64_t count = 0;
  for (const auto& f : autos)
    if (maps_onto(f, g, g)) ++count;
  return count;
}

std::size_t CensusResult::elementary_classes() const {
  std::size_t c = 0;
  for (const auto& k : classes) c += k.descriptor.kind == GradingDescriptor::Kind::elementary;
  return c;
}

std::size_t CensusResult::type2_classes() const { return classes.size() - elementary_classes(); }

std::string CensusResult::report() const {
  std::ostringstream os;
  os << "census n=" << config.n << " field=" << config.field.name() << " group=" << config.group.name()
     << " mode=" << mode_name(config.mode) << "\n";
  os << "automorphisms: " << automorphisms << "\n";
  os << (config.mode == CensusMode::sampled ? "gradings (orbit sum): " : "gradings: ") << total_gradings << "\n";
  if (config.mode != CensusMode::sampled) os << "search nodes: " << nodes << "\n";
  os << "classes:\n";
  for (const auto& c : classes) {
    os << "  " << c.descriptor.to_string() << "  orbit=" << c.orbit_size;
    if (config.mode != CensusMode::sampled) os << "  found=" << c.found;
    if (!c.notes.empty()) os << "  " << c.notes;
    os << "\n";
  }
  os << "graded classes: " << classes.size() << " (elementary " << elementary_classes() << ", type2 "
     << type2_classes() << "); predicted " << predicted.graded << "\n";
  os << "practical classes: " << practical_classes << "; predicted " << predicted.practical << "\n";
  os << "mismatches: " << mismatches.size() << "\n";
  for (const auto& m : mismatches) os << "  " << m << "\n";
  return os.str();
}

namespace {

/// Groups representatives by practical isomorphism found by search and
/// compares the partition with the descriptor predicate.
std::size_t practical_partition(const std::vector<Grading>& reps, const std::vector<GradingDescriptor>& ds,
                                const std::vector<Automorphism>& autos, std::vector<std::string>& mismatches) {
  std::vector<std::size_t> parent(reps.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
    return parent[i] == i ? i : parent[i] = find(parent[i]);
  };
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t j = i + 1; j < reps.size(); ++j) {
      const bool searched = practical_isomorphic_search(reps[i], reps[j], autos).has_value();
      if (searched != practically_isomorphic(ds[i], ds[j]))
        mismatches.push_back("practical isomorphism of " + ds[i].to_string() + " and " + ds[j].to_string() +
                             (searched ? " found by search but not predicted" : " predicted but not found"));
      if (searched) parent[find(i)] = find(j);
    }
  }
  std::set<std::size_t> roots;
  for (std::size_t i = 0; i < reps.size(); ++i) roots.insert(find(i));
  return roots.size();
}

}  // namespace

CensusResult census(const CensusConfig& cfg) {
  check_config(cfg);
  const FieldSpec f = cfg.field;
  const int n = cfg.n;
  const bool char2 = f.characteristic() == 2;
  CensusResult res;
  res.config = cfg;
  res.predicted = count_classes(n, cfg.group, char2);
  const auto autos = automorphism_list(n, f);
  res.automorphisms = autos.size();
  const auto predicted = canonical_descriptors(n, cfg.group, char2);

  std::vector<Grading> reps;
  std::vector<GradingDescriptor> ds;

  if (cfg.mode == CensusMode::sampled) {
    std::mt19937_64 rng(cfg.seed);
    for (const auto& d : predicted) {
      Grading g = build(d, f);
      CensusClass c{d, 0, 0, ""};
      if (!verify_grading(g).ok) res.mismatches.push_back("build fails verification: " + d.to_string());
      int stable = 0;
      for (int k = 0; k < cfg.twists; ++k) {
        const auto& a = autos[rng() % autos.size()];
        auto got = classify(transport(a, g)).descriptor;
        if (got == d) ++stable;
        else res.mismatches.push_back("twist of " + d.to_string() + " classified as " + got.to_string());
      }
      c.notes = "stable under " + std::to_string(stable) + "/" + std::to_string(cfg.twists) + " twists";
      c.orbit_size = autos.size() / stabilizer_size(g, autos);
      res.total_gradings += c.orbit_size;
      res.classes.push_back(c);
      reps.push_back(std::move(g));
      ds.push_back(d);
    }
  } else {
    std::map<std::string, std::size_t> bucket;  // canonical descriptor text -> class index
    auto stats = enumerate_gradings(cfg, [&](const Grading& g) {
      Classification cl = classify(g);
      const GradingDescriptor& d = cl.descriptor;
      if (n >= 3 && char2 && !g.group().is_identity(main_division_degree(g)))
        res.mismatches.push_back("main division degree is not 1 in characteristic 2");
      if (char2 && d.kind != GradingDescriptor::Kind::elementary)
        res.mismatches.push_back("characteristic 2 grading classified as type2: " + d.to_string());
      auto [it, fresh] = bucket.emplace(d.to_string(), res.classes.size());
      if (fresh) {
        res.classes.push_back({d, 0, 0, ""});
        reps.push_back(g);
        ds.push_back(d);
      } else if (!graded_isomorphic_search(reps[it->second], g, autos)) {
        res.mismatches.push_back("gradings classified as " + d.to_string() + " are not isomorphic");
      }
      ++res.classes[it->second].found;
    });
    res.total_gradings = stats.gradings;
    res.nodes = stats.nodes;
    for (std::size_t i = 0; i < res.classes.size(); ++i) {
      auto& c = res.classes[i];
      c.orbit_size = autos.size() / stabilizer_size(reps[i], autos);
      if (c.orbit_size != c.found)
        res.mismatches.push_back("class " + c.descriptor.to_string() + ": found " + std::to_string(c.found) +
                                 " gradings, orbit size " + std::to_string(c.orbit_size));
    }
    std::set<std::string> want, got;
    for (const auto& d : predicted) want.insert(d.to_string());
    for (const auto& c : res.classes) got.insert(c.descriptor.to_string());
    for (const auto& w : want)
      if (!got.count(w)) res.mismatches.push_back("predicted class not realized: " + w);
    for (const auto& g : got)
      if (!want.count(g)) res.mismatches.push_back("class not predicted: " + g);
  }

  // Distinct classes must be non-isomorphic under the whole automorphism group.
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = i + 1; j < reps.size(); ++j)
      if (graded_isomorphic_search(reps[i], reps[j], autos))
        res.mismatches.push_back("classes " + ds[i].to_string() + " and " + ds[j].to_string() + " are isomorphic");
  res.practical_classes = practical_partition(reps, ds, autos, res.mismatches);
  if (res.classes.size() != res.predicted.graded)
    res.mismatches.push_back("graded class count " + std::to_string(res.classes.size()) + " != predicted " +
                             std::to_string(res.predicted.graded));
  if (res.practical_classes != res.predicted.practical)
    res.mismatches.push_back("practical class count " + std::to_string(res.practical_classes) + " != predicted " +
                             std::to_string(res.predicted.practical));
  return res;
}

}  // namespace utgrad
