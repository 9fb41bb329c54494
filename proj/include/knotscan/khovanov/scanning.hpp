#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "knotscan/diagram.hpp"
#include "knotscan/errors.hpp"
#include "knotscan/khovanov/bigraded.hpp"

namespace knotscan {

namespace detail {

/// Crossingless matching of boundary points 0..B-1: m[p] is the partner of p.
using Matching = std::vector<std::uint8_t>;

class MatchingTable {
 public:
  int intern(const Matching& m) {
    auto [it, fresh] = ids_.emplace(m, static_cast<int>(list_.size()));
    if (fresh) list_.push_back(m);
    return it->second;
  }
  const Matching& operator[](int id) const { return list_[id]; }
  std::size_t size() const { return list_.size(); }

 private:
  std::map<Matching, int> ids_;
  std::vector<Matching> list_;
};

/// For every point, the smallest point on its cycle of a ∪ b.
inline std::vector<std::uint8_t> cycle_minima(const Matching& a, const Matching& b) {
  constexpr std::uint8_t unset = 0xff;
  std::vector<std::uint8_t> out(a.size(), unset);
  for (std::size_t p = 0; p < a.size(); ++p) {
    if (out[p] != unset) continue;
    std::size_t x = p;
    do {
      out[x] = static_cast<std::uint8_t>(p);
      const std::size_t y = a[x];
      out[y] = static_cast<std::uint8_t>(p);
      x = b[y];
    } while (x != p);
  }
  return out;
}

/// One connected component of a glued surface, in the basis where a morphism is a
/// sum of unions of disks, one per boundary cycle, each dotted or not (x^2 = 0).
struct SurfaceComponent {
  std::uint64_t first_bits = 0;   // dots of the first factor that land here
  std::uint64_t second_bits = 0;  // dots of the second factor
  std::uint64_t out_bits = 0;     // resulting cycles, one bit at each cycle's smallest point
  std::vector<int> source_loops;
  std::vector<int> target_loops;
  int genus = 0;
};

/// Accumulates disk pieces glued along intervals and reports the components.
class SurfaceBuilder {
 public:
  explicit SurfaceBuilder(int pieces) : uf_(pieces), used_(pieces, 0), first_(pieces, 0), second_(pieces, 0) {}

  void piece(int id) { used_[id] = 1; }
  void first_dot_bit(int id, std::uint64_t bit) { used_[id] = 1, first_[id] |= bit; }
  void second_dot_bit(int id, std::uint64_t bit) { used_[id] = 1, second_[id] |= bit; }
  void glue(int a, int b) {
    glues_.emplace_back(a, b);
    uf_.unite(a, b);
  }
  void out_cycle(int id, std::uint64_t bit) { cycles_.push_back({id, 0, bit}); }
  void source_loop(int id, int k) { cycles_.push_back({id, 1, static_cast<std::uint64_t>(k)}); }
  void target_loop(int id, int k) { cycles_.push_back({id, 2, static_cast<std::uint64_t>(k)}); }

  std::vector<SurfaceComponent> build() {
    std::unordered_map<int, int> index;
    std::vector<SurfaceComponent> comps;
    std::vector<int> chi, boundaries;
    auto comp_of = [&](int id) {
      const int root = uf_.find(id);
      auto [it, fresh] = index.emplace(root, static_cast<int>(comps.size()));
      if (fresh) {
        comps.emplace_back();
        chi.push_back(0);
        boundaries.push_back(0);
      }
      return it->second;
    };
    for (int id = 0; id < static_cast<int>(used_.size()); ++id) {
      if (!used_[id]) continue;
      const int c = comp_of(id);
      chi[c] += 1;
      comps[c].first_bits |= first_[id];
      comps[c].second_bits |= second_[id];
    }
    for (auto [a, b] : glues_) chi[comp_of(a)] -= 1;
    for (const auto& cy : cycles_) {
      const int c = comp_of(cy.piece);
      ++boundaries[c];
      if (cy.kind == 0)
        comps[c].out_bits |= cy.value;
      else if (cy.kind == 1)
        comps[c].source_loops.push_back(static_cast<int>(cy.value));
      else
        comps[c].target_loops.push_back(static_cast<int>(cy.value));
    }
    for (std::size_t c = 0; c < comps.size(); ++c) {
      const int twice_genus = 2 - chi[c] - boundaries[c];
      if (twice_genus < 0 || twice_genus % 2) throw std::logic_error("glued surface has invalid topology");
      comps[c].genus = twice_genus / 2;
    }
    return comps;
  }

 private:
  struct Cycle {
    int piece;
    int kind;
    std::uint64_t value;
  };
  UnionFind uf_;
  std::vector<char> used_;
  std::vector<std::uint64_t> first_, second_;
  std::vector<std::pair<int, int>> glues_;
  std::vector<Cycle> cycles_;
};

/// Expand the glued surface into basis terms (mask, integer multiplier).
/// Loop requirements: bit k of `source_x` set means source loop k is the x summand
/// (included by a dotted cup), clear means the 1 summand (undotted cup); target
/// loops use `target_x` with projections dotted cap for 1 and plain cap for x.
template <class Emit>
void expand_surface(const std::vector<SurfaceComponent>& comps, std::uint64_t first_mask, std::uint64_t second_mask,
                    std::uint32_t source_x, std::uint32_t target_x, Emit&& emit) {
  // Single-option components fold into (fixed_mask, fixed_mult); the rest branch.
  std::uint64_t fixed_mask = 0;
  long long fixed_mult = 1;
  std::vector<const SurfaceComponent*> branching;
  for (const auto& c : comps) {
    const int k = std::popcount(first_mask & c.first_bits) + std::popcount(second_mask & c.second_bits) + c.genus;
    if (k >= 2) return;
    int must_be_plain = 0;
    for (int l : c.source_loops) must_be_plain += (source_x >> l) & 1u;
    for (int l : c.target_loops) must_be_plain += !((target_x >> l) & 1u);
    if (k == 1) {
      if (must_be_plain) return;
      fixed_mask |= c.out_bits;
      fixed_mult *= 1ll << c.genus;
    } else if (must_be_plain == 1) {
      fixed_mask |= c.out_bits;
    } else if (must_be_plain >= 2 || c.out_bits == 0) {
      return;
    } else if (std::popcount(c.out_bits) == 1) {
      // the single cycle stays undotted
    } else {
      branching.push_back(&c);
    }
  }
  if (branching.empty()) {
    emit(fixed_mask, fixed_mult);
    return;
  }
  // Each branching component: all cycles dotted except one.
  std::vector<std::uint64_t> masks{fixed_mask};
  for (const auto* c : branching) {
    std::vector<std::uint64_t> next;
    next.reserve(masks.size() * std::popcount(c->out_bits));
    for (std::uint64_t m : masks)
      for (std::uint64_t rest = c->out_bits; rest; rest &= rest - 1) next.push_back(m | (c->out_bits & ~(rest & -rest)));
    masks = std::move(next);
  }
  for (std::uint64_t m : masks) emit(m, fixed_mult);
}

}  // namespace detail

/// A crossing order that keeps the open boundary small: each step takes the
/// crossing sharing the most arcs with what has been added so far.
inline std::vector<int> scan_order(const PlanarDiagram& d) {
  const int n = static_cast<int>(d.crossing_count());
  std::vector<int> order;
  if (n == 0) return order;
  std::vector<int> open_count(d.arc_count() + 1, 0);
  std::vector<char> done(n, 0);
  int next = 0;
  for (int step = 0; step < n; ++step) {
    if (step > 0) {
      int best_shared = -1, best_new = 5;
      for (int c = 0; c < n; ++c) {
        if (done[c]) continue;
        int shared = 0, fresh = 0;
        for (int a : d.crossing(c).arcs) (open_count[a] ? shared : fresh) += 1;
        if (shared > best_shared || (shared == best_shared && fresh < best_new)) {
          best_shared = shared;
          best_new = fresh;
          next = c;
        }
      }
    }
    done[next] = 1;
    order.push_back(next);
    for (int a : d.crossing(next).arcs) open_count[a] ^= 1;
  }
  return order;
}

/// Khovanov homology by adding one crossing at a time to a complex over the
/// dotted cobordism category of the partial tangle, delooping circles and
/// cancelling isomorphisms after every step.
template <class Field>
class TangleScanner {
 public:
  using V = typename Field::value_type;
  using Morphism = std::vector<std::pair<std::uint64_t, V>>;

  TangleScanner(const Field& field, std::size_t max_generators) : f_(field), max_generators_(max_generators) {}

  /// Unnormalised ranks keyed by (number of 1-smoothings, quantum degree before shift).
  std::map<std::pair<int, int>, long long> run(const PlanarDiagram& d) {
    objects_.clear();
    matchings_ = detail::MatchingTable{};
    boundary_.clear();
    objects_.push_back(Object{matchings_.intern({}), 0, 0, true, {}, {}});
    for (int c : scan_order(d)) {
      add_crossing(d.crossing(c).arcs);
      eliminate();
    }
    std::map<std::pair<int, int>, long long> out;
    for (const auto& o : objects_) {
      if (!o.alive) continue;
      if (!o.out.empty()) throw std::logic_error("differential survived full cancellation");
      out[{o.h, o.q}] += 1;
    }
    return out;
  }

  std::size_t peak_generators() const { return peak_; }

 private:
  struct Object {
    int matching;
    int q;
    int h;
    bool alive = true;
    std::unordered_map<int, Morphism> out;
    std::unordered_set<int> in;
  };

  /// Result of closing an old matching with one smoothing of the new crossing.
  struct Shape {
    int matching = 0;
    int loops = 0;
    std::vector<int> arc_rep;   // per new boundary point, one node on its arc
    std::vector<int> loop_rep;  // per loop, one node on it
  };

  struct PlanKey {
    int a, b, c;
    friend bool operator==(const PlanKey&, const PlanKey&) = default;
  };
  struct PlanKeyHash {
    std::size_t operator()(const PlanKey& k) const {
      return (static_cast<std::size_t>(k.a) * 1000003u ^ static_cast<std::size_t>(k.b)) * 1000033u ^
             static_cast<std::size_t>(k.c);
    }
  };

  // ---- step state (valid during add_crossing) ----
  struct Step {
    int old_size = 0;
    std::array<int, 4> arcs{};
    std::vector<int> label_edge;  // node -> glued node, -1 for a new boundary point
    std::vector<int> new_index;   // node -> index on the new boundary, -1 if glued
    std::vector<std::pair<int, int>> glues;
    int new_size = 0;
  };

  static constexpr int kSmoothing[2][4] = {{1, 0, 3, 2}, {3, 2, 1, 0}};

  void add_crossing(const std::array<int, 4>& arcs) {
    Step st;
    st.old_size = static_cast<int>(boundary_.size());
    st.arcs = arcs;
    const int nodes = st.old_size + 4;
    st.label_edge.assign(nodes, -1);
    std::unordered_map<int, int> first_node;
    auto label_of = [&](int node) { return node < st.old_size ? boundary_[node] : arcs[node - st.old_size]; };
    for (int u = 0; u < nodes; ++u) {
      auto [it, fresh] = first_node.emplace(label_of(u), u);
      if (!fresh) {
        st.label_edge[u] = it->second;
        st.label_edge[it->second] = u;
        st.glues.emplace_back(it->second, u);
      }
    }
    std::vector<int> new_boundary;
    st.new_index.assign(nodes, -1);
    for (int u = 0; u < nodes; ++u)
      if (st.label_edge[u] < 0) {
        st.new_index[u] = static_cast<int>(new_boundary.size());
        new_boundary.push_back(label_of(u));
      }
    if (new_boundary.size() > 64)
      throw ResourceLimitError("tangle boundary exceeds 64 points during homology computation");
    st.new_size = static_cast<int>(new_boundary.size());

    detail::MatchingTable new_table;
    std::map<std::pair<int, int>, Shape> shapes;
    auto shape_of = [&](int m, int s) -> const Shape& {
      auto it = shapes.find({m, s});
      if (it != shapes.end()) return it->second;
      return shapes.emplace(std::make_pair(m, s), make_shape(st, matchings_[m], s, new_table)).first->second;
    };

    // New objects.
    std::vector<Object> next;
    std::vector<std::array<int, 2>> base(objects_.size(), {-1, -1});
    for (std::size_t o = 0; o < objects_.size(); ++o) {
      if (!objects_[o].alive) continue;
      for (int s = 0; s < 2; ++s) {
        const Shape& sh = shape_of(objects_[o].matching, s);
        base[o][s] = static_cast<int>(next.size());
        for (std::uint32_t eps = 0; eps < (1u << sh.loops); ++eps)
          next.push_back(Object{sh.matching, objects_[o].q + s + sh.loops - 2 * std::popcount(eps), objects_[o].h + s, true, {}, {}});
      }
    }
    if (next.size() > max_generators_)
      throw ResourceLimitError("homology computation needs " + std::to_string(next.size()) +
                               " generators; limit is " + std::to_string(max_generators_));
    peak_ = std::max(peak_, next.size());

    std::unordered_map<PlanKey, std::vector<detail::SurfaceComponent>, PlanKeyHash> plans;
    Morphism acc;
    auto connect = [&](int from, int to, const Morphism& m) {
      if (m.empty()) return;
      next[from].out.emplace(to, m);
      next[to].in.insert(from);
    };

    // f ⊗ id for old arrows, at both smoothings.
    for (std::size_t o = 0; o < objects_.size(); ++o) {
      if (!objects_[o].alive) continue;
      for (const auto& [t, fm] : objects_[o].out) {
        const int ma = objects_[o].matching, mb = objects_[t].matching;
        for (int s = 0; s < 2; ++s) {
          const Shape& sa = shape_of(ma, s);
          const Shape& sb = shape_of(mb, s);
          auto [it, fresh] = plans.try_emplace(PlanKey{ma, mb, s});
          if (fresh) it->second = tensor_plan(st, matchings_[ma], matchings_[mb], s, sa, sb, new_table, false);
          for (std::uint32_t ea = 0; ea < (1u << sa.loops); ++ea)
            for (std::uint32_t eb = 0; eb < (1u << sb.loops); ++eb) {
              evaluate(it->second, fm, ea, eb, f_.one(), acc);
              connect(base[o][s] + ea, base[t][s] + eb, acc);
            }
        }
      }
    }
    // id ⊗ saddle with the Koszul sign.
    const Morphism identity{{0, f_.one()}};
    for (std::size_t o = 0; o < objects_.size(); ++o) {
      if (!objects_[o].alive) continue;
      const int m = objects_[o].matching;
      const Shape& sa = shape_of(m, 0);
      const Shape& sb = shape_of(m, 1);
      auto [it, fresh] = plans.try_emplace(PlanKey{m, m, 2});
      if (fresh) it->second = tensor_plan(st, matchings_[m], matchings_[m], 0, sa, sb, new_table, true);
      const V sign = objects_[o].h % 2 ? f_.neg(f_.one()) : f_.one();
      for (std::uint32_t ea = 0; ea < (1u << sa.loops); ++ea)
        for (std::uint32_t eb = 0; eb < (1u << sb.loops); ++eb) {
          evaluate(it->second, identity, ea, eb, sign, acc);
          connect(base[o][0] + ea, base[o][1] + eb, acc);
        }
    }

    objects_ = std::move(next);
    matchings_ = std::move(new_table);
    boundary_ = std::move(new_boundary);
    compose_plans_.clear();
  }

  Shape make_shape(const Step& st, const detail::Matching& m, int s, detail::MatchingTable& table) const {
    const int nodes = st.old_size + 4;
    auto match_edge = [&](int u) {
      return u < st.old_size ? static_cast<int>(m[u]) : st.old_size + kSmoothing[s][u - st.old_size];
    };
    std::vector<char> seen(nodes, 0);
    Shape sh;
    detail::Matching nm(st.new_size);
    sh.arc_rep.assign(st.new_size, -1);
    for (int u = 0; u < nodes; ++u) {
      if (st.new_index[u] < 0 || seen[u]) continue;
      int cur = u;
      for (;;) {
        seen[cur] = 1;
        const int v = match_edge(cur);
        seen[v] = 1;
        if (st.label_edge[v] < 0) {
          nm[st.new_index[u]] = static_cast<std::uint8_t>(st.new_index[v]);
          nm[st.new_index[v]] = static_cast<std::uint8_t>(st.new_index[u]);
          sh.arc_rep[st.new_index[u]] = u;
          sh.arc_rep[st.new_index[v]] = u;
          break;
        }
        cur = st.label_edge[v];
      }
    }
    for (int u = 0; u < nodes; ++u) {
      if (seen[u]) continue;
      sh.loop_rep.push_back(u);
      int cur = u;
      do {
        seen[cur] = 1;
        const int v = match_edge(cur);
        seen[v] = 1;
        cur = st.label_edge[v];
      } while (cur != u);
    }
    sh.loops = static_cast<int>(sh.loop_rep.size());
    if (sh.loops > 16) throw ResourceLimitError("too many closed loops in one smoothing step");
    sh.matching = table.intern(nm);
    return sh;
  }

  /// f ⊗ id_s from (ma ⊗ s) to (mb ⊗ s), or id ⊗ saddle from (ma ⊗ 0) to (ma ⊗ 1).
  std::vector<detail::SurfaceComponent> tensor_plan(const Step& st, const detail::Matching& ma,
                                                    const detail::Matching& mb, int s, const Shape& sa,
                                                    const Shape& sb, const detail::MatchingTable& table,
                                                    bool saddle) const {
    const int old = st.old_size;
    const auto cyc = detail::cycle_minima(ma, mb);
    auto piece_of = [&](int node) {
      if (node < old) return static_cast<int>(cyc[node]);
      if (saddle) return old;
      const int p = node - old;
      return old + (p == 0 || kSmoothing[s][0] == p ? 0 : 1);
    };
    detail::SurfaceBuilder sb_(old + 2);
    for (int i = 0; i < old; ++i)
      if (cyc[i] == i) sb_.first_dot_bit(i, std::uint64_t{1} << i);
    sb_.piece(old);
    if (!saddle) sb_.piece(old + 1);
    for (auto [u, v] : st.glues) sb_.glue(piece_of(u), piece_of(v));
    const auto out_cyc = detail::cycle_minima(table[sa.matching], table[sb.matching]);
    for (int p = 0; p < st.new_size; ++p)
      if (out_cyc[p] == p) sb_.out_cycle(piece_of(sa.arc_rep[p]), std::uint64_t{1} << p);
    for (int k = 0; k < sa.loops; ++k) sb_.source_loop(piece_of(sa.loop_rep[k]), k);
    for (int k = 0; k < sb.loops; ++k) sb_.target_loop(piece_of(sb.loop_rep[k]), k);
    return sb_.build();
  }

  /// Composite g ∘ f for f: A -> B and g: B -> C.
  const std::vector<detail::SurfaceComponent>& compose_plan(int a, int b, int c) {
    auto [it, fresh] = compose_plans_.try_emplace(PlanKey{a, b, c});
    if (!fresh) return it->second;
    const auto& A = matchings_[a];
    const auto& B = matchings_[b];
    const auto& C = matchings_[c];
    const int n = static_cast<int>(A.size());
    const auto ab = detail::cycle_minima(A, B);
    const auto bc = detail::cycle_minima(B, C);
    const auto ac = detail::cycle_minima(A, C);
    detail::SurfaceBuilder sb(2 * n + 1);
    for (int p = 0; p < n; ++p) {
      if (ab[p] == p) sb.first_dot_bit(p, std::uint64_t{1} << p);
      if (bc[p] == p) sb.second_dot_bit(n + p, std::uint64_t{1} << p);
    }
    for (int p = 0; p < n; ++p)
      if (p < B[p]) sb.glue(ab[p], n + bc[p]);
    for (int p = 0; p < n; ++p)
      if (ac[p] == p) sb.out_cycle(ab[p], std::uint64_t{1} << p);
    it->second = sb.build();
    return it->second;
  }

  void evaluate(const std::vector<detail::SurfaceComponent>& plan, const Morphism& fm, std::uint32_t ea,
                std::uint32_t eb, const V& scale, Morphism& out) {
    std::map<std::uint64_t, V> terms;
    for (const auto& [mask, coeff] : fm) {
      const V base = f_.mul(scale, coeff);
      detail::expand_surface(plan, mask, 0, ea, eb, [&](std::uint64_t m, long long mult) {
        auto [it, fresh] = terms.try_emplace(m, f_.zero());
        it->second = f_.add(it->second, f_.mul(base, f_.from_int(mult)));
      });
    }
    collect(terms, out);
  }

  void collect(std::map<std::uint64_t, V>& terms, Morphism& out) const {
    out.clear();
    for (auto& [m, v] : terms)
      if (!f_.is_zero(v)) out.emplace_back(m, std::move(v));
  }

  Morphism compose(int a, int b, int c, const Morphism& fm, const Morphism& gm) {
    const auto& plan = compose_plan(a, b, c);
    std::map<std::uint64_t, V> terms;
    for (const auto& [fmask, fc] : fm)
      for (const auto& [gmask, gc] : gm) {
        const V base = f_.mul(fc, gc);
        detail::expand_surface(plan, fmask, gmask, 0, 0, [&](std::uint64_t m, long long mult) {
          auto [it, fresh] = terms.try_emplace(m, f_.zero());
          it->second = f_.add(it->second, f_.mul(base, f_.from_int(mult)));
        });
      }
    Morphism out;
    collect(terms, out);
    return out;
  }

  const V* iso_coefficient(int b, int c, const Morphism& m) const {
    if (objects_[b].matching != objects_[c].matching || objects_[b].q != objects_[c].q) return nullptr;
    if (m.empty() || m.front().first != 0 || f_.is_zero(m.front().second)) return nullptr;
    return &m.front().second;
  }

  void eliminate() {
    bool progress = true;
    while (progress) {
      progress = false;
      for (int b = 0; b < static_cast<int>(objects_.size()); ++b) {
        if (!objects_[b].alive) continue;
        int best = -1;
        std::size_t best_cost = 0;
        for (const auto& [c, m] : objects_[b].out) {
          if (!iso_coefficient(b, c, m)) continue;
          const std::size_t cost = objects_[c].in.size() * objects_[b].out.size();
          if (best < 0 || cost < best_cost) {
            best = c;
            best_cost = cost;
          }
        }
        if (best >= 0) {
          cancel(b, best);
          progress = true;
        }
      }
    }
  }

  /// Gaussian elimination of the isomorphism b -> c: for x -> c and b -> y,
  /// replace x -> y by (x -> y) - (b -> y) phi^{-1} (x -> c).
  void cancel(int b, int c) {
    const V inv = f_.inv(*iso_coefficient(b, c, objects_[b].out.at(c)));
    std::vector<int> sources(objects_[c].in.begin(), objects_[c].in.end());
    std::vector<int> targets;
    for (const auto& [y, m] : objects_[b].out)
      if (y != c) targets.push_back(y);
    for (int x : sources) {
      if (x == b) continue;
      const Morphism& delta = objects_[x].out.at(c);
      for (int y : targets) {
        const Morphism& gamma = objects_[b].out.at(y);
        Morphism prod = compose(objects_[x].matching, objects_[c].matching, objects_[y].matching, delta, gamma);
        if (prod.empty()) continue;
        for (auto& t : prod) t.second = f_.neg(f_.mul(t.second, inv));
        auto& slot = objects_[x].out[y];
        add_into(slot, prod);
        if (slot.empty()) {
          objects_[x].out.erase(y);
          objects_[y].in.erase(x);
        } else {
          objects_[y].in.insert(x);
        }
      }
    }
    for (int gone : {b, c}) {
      for (int x : objects_[gone].in) objects_[x].out.erase(gone);
      for (const auto& [y, m] : objects_[gone].out) objects_[y].in.erase(gone);
      objects_[gone].out.clear();
      objects_[gone].in.clear();
      objects_[gone].alive = false;
    }
  }

  void add_into(Morphism& a, const Morphism& b) const {
    Morphism out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
        out.push_back(std::move(a[i++]));
      } else if (i == a.size() || b[j].first < a[i].first) {
        out.push_back(b[j++]);
      } else {
        V v = f_.add(a[i].second, b[j].second);
        if (!f_.is_zero(v)) out.emplace_back(a[i].first, std::move(v));
        ++i;
        ++j;
      }
    }
    a = std::move(out);
  }

  Field f_;
  std::size_t max_generators_;
  std::size_t peak_ = 0;
  std::vector<Object> objects_;
  detail::MatchingTable matchings_;
  std::vector<int> boundary_;
  std::unordered_map<PlanKey, std::vector<detail::SurfaceComponent>, PlanKeyHash> compose_plans_;
};

}  // namespace knotscan
