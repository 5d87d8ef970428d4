#include "quiltlab/meander.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

namespace quiltlab {

std::uint32_t ArcDiagram::code() const {
  std::uint32_t word = 0;
  for (int p = 1; p <= 2 * m; ++p) {
    if (partner[p] > p) word |= (1u << (p - 1));
  }
  return word;
}

std::vector<std::pair<int, int>> ArcDiagram::oriented_arcs() const {
  std::vector<std::pair<int, int>> arcs;
  const int inf = infinity();
  for (int p = 1; p <= 2 * m; ++p) {
    const int q = partner[p];
    if (q < p) continue;
    if (q == inf) {
      if (side == HalfPlane::Upper) {
        arcs.emplace_back(p, inf);
      } else {
        arcs.emplace_back(inf, p);
      }
      continue;
    }
    const bool p_odd = (p % 2) == 1;
    const bool up_from_p = (side == HalfPlane::Upper) == p_odd;
    arcs.emplace_back(up_from_p ? p : q, up_from_p ? q : p);
  }
  return arcs;
}

std::uint64_t catalan(int m) {
  std::uint64_t c = 1;
  for (int k = 0; k < m; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
  return c;
}

namespace {

void generate(int lo, int hi, std::vector<int>& partner, std::vector<std::vector<int>>& out,
              const std::vector<std::pair<int, int>>& pending) {
  // Matches positions lo..hi (inclusive); pending holds ranges still to fill.
  if (lo > hi) {
    if (pending.empty()) {
      out.push_back(partner);
      return;
    }
    std::vector<std::pair<int, int>> rest(pending.begin(), pending.end() - 1);
    generate(pending.back().first, pending.back().second, partner, out, rest);
    return;
  }
  for (int j = lo + 1; j <= hi; j += 2) {
    partner[lo] = j;
    partner[j] = lo;
    std::vector<std::pair<int, int>> next_pending = pending;
    if (j + 1 <= hi) next_pending.emplace_back(j + 1, hi);
    generate(lo + 1, j - 1, partner, out, next_pending);
  }
}

}  // namespace

std::vector<ArcDiagram> enumerate_arc_diagrams(int m, HalfPlane side) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "size must be at least 1");
  std::vector<std::vector<int>> partners;
  std::vector<int> partner(2 * m + 1, 0);
  generate(1, 2 * m, partner, partners, {});
  std::vector<ArcDiagram> out;
  out.reserve(partners.size());
  for (auto& p : partners) out.push_back(ArcDiagram{m, side, std::move(p)});
  std::sort(out.begin(), out.end(),
            [](const ArcDiagram& a, const ArcDiagram& b) { return a.code() < b.code(); });
  return out;
}

bool is_noncrossing_matching(const ArcDiagram& d) {
  const int n = 2 * d.m;
  if (static_cast<int>(d.partner.size()) != n + 1) return false;
  for (int p = 1; p <= n; ++p) {
    const int q = d.partner[p];
    if (q < 1 || q > n || q == p || d.partner[q] != p) return false;
  }
  for (int a = 1; a <= n; ++a) {
    const int b = d.partner[a];
    if (b < a) continue;
    for (int c = a + 1; c < b; ++c) {
      const int e = d.partner[c];
      if (e > b || e < a) return false;
    }
  }
  return true;
}

namespace {

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

int loop_count(const ArcDiagram& upper, const ArcDiagram& lower) {
  if (upper.m != lower.m || upper.partner.size() != lower.partner.size()) {
    throw Error(ErrorCode::SizeMismatch, "diagrams of different sizes");
  }
  const int n = 2 * upper.m;
  std::vector<int> parent(n + 1);
  std::iota(parent.begin(), parent.end(), 0);
  int components = n;
  for (const ArcDiagram* d : {&upper, &lower}) {
    for (int p = 1; p <= n; ++p) {
      const int a = find_root(parent, p);
      const int b = find_root(parent, d->partner[p]);
      if (a != b) {
        parent[a] = b;
        --components;
      }
    }
  }
  return components;
}

bool is_single_loop(const ArcDiagram& upper, const ArcDiagram& lower) {
  return loop_count(upper, lower) == 1;
}

std::vector<int> trace_crossings(const ArcDiagram& upper, const ArcDiagram& lower) {
  const int inf = upper.infinity();
  std::vector<int> order;
  int p = lower.partner[inf];
  bool use_upper = true;
  while (p != inf) {
    order.push_back(p);
    p = use_upper ? upper.partner[p] : lower.partner[p];
    use_upper = !use_upper;
    if (static_cast<int>(order.size()) > inf) break;
  }
  return order;
}

namespace {

std::vector<Meander> meanders_for_upper(const ArcDiagram& up, const std::vector<ArcDiagram>& lowers) {
  std::vector<Meander> found;
  for (const ArcDiagram& low : lowers) {
    if (is_single_loop(up, low)) found.push_back(Meander{up, low, trace_crossings(up, low)});
  }
  return found;
}

}  // namespace

std::vector<Meander> enumerate_meanders_serial(int m) {
  const auto uppers = enumerate_arc_diagrams(m, HalfPlane::Upper);
  const auto lowers = enumerate_arc_diagrams(m, HalfPlane::Lower);
  std::vector<Meander> out;
  for (const auto& up : uppers) {
    auto part = meanders_for_upper(up, lowers);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::vector<Meander> enumerate_meanders(int m) {
  const auto uppers = enumerate_arc_diagrams(m, HalfPlane::Upper);
  const auto lowers = enumerate_arc_diagrams(m, HalfPlane::Lower);
  std::vector<std::vector<Meander>> parts(uppers.size());
  const long count = static_cast<long>(uppers.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) parts[i] = meanders_for_upper(uppers[i], lowers);
  std::vector<Meander> out;
  for (auto& part : parts) {
    for (auto& mnd : part) out.push_back(std::move(mnd));
  }
  return out;
}

namespace {

// Open strand ends are numbered upper stack bottom-to-top followed by lower
// stack bottom-to-top; link[e] is the end joined to e through the scanned part.
struct StrandState {
  int upper = 0;
  int lower = 0;
  std::vector<int> link;
  bool operator<(const StrandState& o) const {
    return std::tie(upper, lower, link) < std::tie(o.upper, o.lower, o.link);
  }
};

}  // namespace

std::uint64_t count_meanders_transfer(int m) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "size must be at least 1");
  const int n = 2 * m;
  std::map<StrandState, std::uint64_t> states;
  states[StrandState{}] = 1;
  std::uint64_t closed = 0;
  for (int point = 1; point <= n; ++point) {
    const int remaining = n - point;
    std::map<StrandState, std::uint64_t> next_states;
    for (const auto& [state, weight] : states) {
      for (int close_up = 0; close_up < 2; ++close_up) {
        for (int close_low = 0; close_low < 2; ++close_low) {
          if (close_up && state.upper == 0) continue;
          if (close_low && state.lower == 0) continue;
          // Work on explicit ends: ids 0..k-1 with old numbering, new ends appended.
          std::vector<int> up_stack(state.upper);
          std::vector<int> low_stack(state.lower);
          std::iota(up_stack.begin(), up_stack.end(), 0);
          std::iota(low_stack.begin(), low_stack.end(), state.upper);
          std::vector<int> link = state.link;
          auto add_end = [&link]() {
            link.push_back(-1);
            return static_cast<int>(link.size()) - 1;
          };
          int u_end = 0;
          int l_end = 0;
          if (close_up) {
            u_end = up_stack.back();
            up_stack.pop_back();
          } else {
            u_end = add_end();
          }
          if (close_low) {
            l_end = low_stack.back();
            low_stack.pop_back();
          } else {
            l_end = add_end();
          }
          if (!close_up && !close_low) {
            link[u_end] = l_end;
            link[l_end] = u_end;
            up_stack.push_back(u_end);
            low_stack.push_back(l_end);
          } else if (close_up && close_low) {
            if (link[u_end] == l_end) {
              if (up_stack.empty() && low_stack.empty() && point == n) closed += weight;
              continue;
            }
            const int a = link[u_end];
            const int b = link[l_end];
            link[a] = b;
            link[b] = a;
          } else if (close_up) {
            const int a = link[u_end];
            link[a] = l_end;
            link[l_end] = a;
            low_stack.push_back(l_end);
          } else {
            const int b = link[l_end];
            link[b] = u_end;
            link[u_end] = b;
            up_stack.push_back(u_end);
          }
          if (static_cast<int>(up_stack.size()) > remaining ||
              static_cast<int>(low_stack.size()) > remaining) {
            continue;
          }
          std::vector<int> relabel(link.size(), -1);
          int next_id = 0;
          for (int e : up_stack) relabel[e] = next_id++;
          for (int e : low_stack) relabel[e] = next_id++;
          StrandState out;
          out.upper = static_cast<int>(up_stack.size());
          out.lower = static_cast<int>(low_stack.size());
          out.link.resize(next_id);
          for (int e : up_stack) out.link[relabel[e]] = relabel[link[e]];
          for (int e : low_stack) out.link[relabel[e]] = relabel[link[e]];
          next_states[out] += weight;
        }
      }
    }
    states = std::move(next_states);
  }
  return closed;
}

WindingFunction winding_function(const Meander& mnd) {
  const int n = 2 * mnd.upper.m - 1;
  WindingFunction w;
  w.theta.assign(n, 0);
  const auto& order = mnd.crossing_order;
  if (order.empty()) return w;
  int theta = 0;
  w.theta[order[0] - 1] = 0;
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    const int from = order[i];
    const int to = order[i + 1];
    // Arc i leaves v_{i+1}: index 0 is the first upper arc v1 -> v2.
    const bool upper = (i % 2) == 0;
    const bool right_to_left = to < from;
    const int step = upper ? (right_to_left ? +1 : -1) : (right_to_left ? -1 : +1);
    theta += step;
    w.theta[to - 1] = theta;
  }
  return w;
}

std::vector<ArcDiagram> admissible_diagrams(const WindingFunction& theta, HalfPlane side) {
  const int m = (static_cast<int>(theta.theta.size()) + 1) / 2;
  const int want = side == HalfPlane::Upper ? -1 : +1;
  std::vector<ArcDiagram> out;
  for (auto& d : enumerate_arc_diagrams(m, side)) {
    bool ok = true;
    for (int x = 1; x < 2 * m && ok; ++x) {
      const int y = d.partner[x];
      if (y <= x || y == d.infinity()) continue;
      ok = theta.theta[y - 1] == theta.theta[x - 1] + want;
    }
    if (ok) out.push_back(std::move(d));
  }
  return out;
}

FactorizationReport verify_factorization(int m) {
  FactorizationReport report;
  report.m = m;
  const auto meanders = enumerate_meanders(m);
  report.total_meanders = meanders.size();
  std::map<WindingFunction, std::set<std::pair<std::uint32_t, std::uint32_t>>> by_class;
  for (const auto& mnd : meanders) {
    by_class[winding_function(mnd)].emplace(mnd.upper.code(), mnd.lower.code());
  }
  for (const auto& [theta, pairs] : by_class) {
    const auto ups = admissible_diagrams(theta, HalfPlane::Upper);
    const auto lows = admissible_diagrams(theta, HalfPlane::Lower);
    std::set<std::pair<std::uint32_t, std::uint32_t>> product;
    for (const auto& u : ups) {
      for (const auto& l : lows) {
        product.emplace(u.code(), l.code());
        if (!is_single_loop(u, l)) {
          report.violations.push_back("product pair is not a single loop");
        } else if (winding_function(Meander{u, l, trace_crossings(u, l)}) != theta) {
          report.violations.push_back("product pair has a different winding function");
        }
      }
    }
    if (product != pairs) report.violations.push_back("class differs from admissible product");
    report.classes.push_back(WindingClass{theta, ups.size(), lows.size(), pairs.size()});
  }
  return report;
}

std::string classes_json(const FactorizationReport& report) {
  nlohmann::ordered_json j;
  j["m"] = report.m;
  j["classes"] = nlohmann::ordered_json::array();
  for (const auto& c : report.classes) {
    nlohmann::ordered_json entry;
    entry["theta"] = c.theta.theta;
    entry["upper"] = c.upper;
    entry["lower"] = c.lower;
    entry["meanders"] = c.meanders;
    j["classes"].push_back(entry);
  }
  return j.dump(2);
}

FactorizationReport classes_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::ordered_json::parse(text);
    FactorizationReport r;
    r.m = j.at("m").get<int>();
    for (const auto& entry : j.at("classes")) {
      WindingClass c;
      c.theta.theta = entry.at("theta").get<std::vector<int>>();
      c.upper = entry.at("upper").get<std::size_t>();
      c.lower = entry.at("lower").get<std::size_t>();
      c.meanders = entry.at("meanders").get<std::size_t>();
      r.total_meanders += c.meanders;
      r.classes.push_back(std::move(c));
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

}  // namespace quiltlab
