#include "quiltlab/fillings.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>

#include <fmt/format.h>

namespace quiltlab {

namespace {

struct Profile {
  bool one = false;
  bool two = false;
  bool three = false;
  int four = 0;
};

Profile profile_of(const Template& t) {
  Profile p;
  for (int f = 0; f < t.num_faces(); ++f) {
    if (t.is_hole(f)) continue;
    switch (t.gon(f)) {
      case 1:
        p.one = true;
        break;
      case 2:
        p.two = true;
        break;
      case 3:
        p.three = true;
        break;
      case 4:
        ++p.four;
        break;
      default:
        throw Error(ErrorCode::InvalidArgument, fmt::format("face {} is a {}-gon", f, t.gon(f)));
    }
  }
  return p;
}

using Mask = std::uint64_t;

/// Number of edge-connected components of the faces in mask.
int components(const std::vector<Mask>& adjacent, Mask mask) {
  int count = 0;
  while (mask) {
    Mask frontier = mask & (~mask + 1);
    Mask reached = frontier;
    while (frontier) {
      Mask grown = 0;
      for (Mask m = frontier; m; m &= m - 1) grown |= adjacent[__builtin_ctzll(m)];
      frontier = grown & mask & ~reached;
      reached |= frontier;
    }
    mask &= ~reached;
    ++count;
  }
  return count;
}

struct Scan {
  const Template* sub = nullptr;
  std::string target;
  Profile profile;
  int holes = 0;
  std::vector<int> budget;
};

void scan_template(const Scan& scan, const Template& t, std::vector<Filling>& out) {
  const int nf = t.num_faces();
  const int n = nf - 3;
  if (nf > 64) throw Error(ErrorCode::InvalidArgument, "too many faces for the filling search");
  std::vector<Mask> adjacent(nf, 0);
  for (int d = 0; d < t.map.num_darts(); d += 2) {
    const int a = t.map.face(d);
    const int b = t.map.face(d + 1);
    if (a != b) {
      adjacent[a] |= Mask{1} << b;
      adjacent[b] |= Mask{1} << a;
    }
  }
  Mask fixed = 0;
  if (scan.profile.one) fixed |= Mask{1} << t.order[0];
  if (scan.profile.three) fixed |= Mask{1} << t.order[1];
  if (scan.profile.two) fixed |= Mask{1} << t.order[nf - 1];
  const Mask all = nf == 64 ? ~Mask{0} : (Mask{1} << nf) - 1;
  const int k = scan.profile.four;
  if (k > n) return;
  std::vector<int> pick(k);
  for (int i = 0; i < k; ++i) pick[i] = i;
  for (;;) {
    Mask sel = fixed;
    for (int i : pick) sel |= Mask{1} << t.order[i + 2];
    if (sel && components(adjacent, sel) == 1 && components(adjacent, all & ~sel) == scan.holes) {
      std::vector<int> faces;
      for (int f = 0; f < nf; ++f) {
        if (sel >> f & 1) faces.push_back(f);
      }
      const MarkedSubtemplate ms = mark_subtemplate(t, faces);
      if (template_code(ms.tmpl) == scan.target) {
        Filling fill;
        fill.hole_four_gons.resize(scan.holes);
        bool within = true;
        for (int h = 0; h < scan.holes; ++h) {
          for (int f : ms.hole_parent_faces[h]) {
            if (t.gon(f) == 4) ++fill.hole_four_gons[h];
          }
          within = within && fill.hole_four_gons[h] <= scan.budget[h];
        }
        if (within) {
          fill.full = with_marked_flags(t, faces);
          fill.code = template_code(fill.full);
          for (int h = 0; h < scan.holes; ++h) {
            std::vector<int> keep = faces;
            keep.insert(keep.end(), ms.hole_parent_faces[h].begin(), ms.hole_parent_faces[h].end());
            fill.projection_codes.push_back(template_code(mark_subtemplate(fill.full, keep).tmpl));
          }
          out.push_back(std::move(fill));
        }
      }
    }
    int i = k - 1;
    while (i >= 0 && pick[i] == n - k + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

void grow(const Scan& scan, const TemplateBuilder& b, int remaining, std::vector<Filling>& out, int& scanned) {
  if (remaining == 0) {
    ++scanned;
    scan_template(scan, b.finish(), out);
    return;
  }
  for (int k = 1; k <= b.p(); ++k) {
    for (int kp = 1; kp <= b.q(); ++kp) {
      TemplateBuilder child = b;
      child.step(k, kp);
      grow(scan, child, remaining - 1, out, scanned);
    }
  }
}

void prefixes(const TemplateBuilder& b, int depth, std::vector<TemplateBuilder>& out) {
  if (depth == 0) {
    out.push_back(b);
    return;
  }
  for (int k = 1; k <= b.p(); ++k) {
    for (int kp = 1; kp <= b.q(); ++kp) {
      TemplateBuilder child = b;
      child.step(k, kp);
      prefixes(child, depth - 1, out);
    }
  }
}

}  // namespace

int subtemplate_four_gons(const Template& t_sub) { return profile_of(t_sub).four; }

FillingEnumeration enumerate_fillings(const Template& t_sub, const std::vector<int>& budget) {
  Scan scan;
  scan.sub = &t_sub;
  scan.profile = profile_of(t_sub);
  scan.holes = t_sub.num_holes();
  if (static_cast<int>(budget.size()) != scan.holes) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("{} budgets given for {} holes", budget.size(), scan.holes));
  }
  scan.budget = budget;
  Template plain = t_sub;
  plain.marked.clear();
  plain.order.clear();
  scan.target = template_code(plain);

  int extra = 0;
  for (int b : budget) extra += std::max(b, 0);
  const int lo = scan.profile.four;
  const int hi = lo + extra;

  struct Task {
    TemplateBuilder builder;
    int remaining;
  };
  std::vector<Task> tasks;
  for (int n = lo; n <= hi; ++n) {
    const int depth = std::min(n, 3);
    std::vector<TemplateBuilder> roots;
    prefixes(TemplateBuilder{}, depth, roots);
    for (auto& r : roots) tasks.push_back({std::move(r), n - depth});
  }

  std::vector<std::vector<Filling>> found(tasks.size());
  std::vector<int> scanned(tasks.size(), 0);
  const auto count = static_cast<std::int64_t>(tasks.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < count; ++i) grow(scan, tasks[i].builder, tasks[i].remaining, found[i], scanned[i]);

  FillingEnumeration out;
  out.budget = budget;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    out.templates_scanned += scanned[i];
    for (auto& f : found[i]) {
      if (seen.insert(f.code).second) out.fillings.push_back(std::move(f));
    }
  }
  std::sort(out.fillings.begin(), out.fillings.end(),
            [](const Filling& a, const Filling& b) { return a.code < b.code; });
  out.budget_exhausted = out.fillings.empty();
  return out;
}

FillingEnumeration enumerate_fillings(const Template& t_sub, int budget_per_hole) {
  return enumerate_fillings(t_sub, std::vector<int>(t_sub.num_holes(), budget_per_hole));
}

BijectionReport check_product_bijection(const Template& t_sub, const std::vector<int>& budget) {
  const FillingEnumeration e = enumerate_fillings(t_sub, budget);
  BijectionReport r;
  r.holes = t_sub.num_holes();
  r.budget = budget;
  r.fillings = e.fillings.size();
  std::vector<std::set<std::string>> proj(r.holes);
  std::set<std::vector<std::string>> images;
  for (const auto& f : e.fillings) {
    for (int h = 0; h < r.holes; ++h) proj[h].insert(f.projection_codes[h]);
    images.insert(f.projection_codes);
  }
  r.product = 1;
  for (const auto& p : proj) {
    r.projections.push_back(p.size());
    r.product *= p.size();
  }
  r.distinct_images = images.size();
  r.injective = r.distinct_images == r.fillings;
  r.surjective = r.distinct_images == r.product;
  r.fibers_match = !e.fillings.empty();
  if (!e.fillings.empty()) {
    const auto& ref = e.fillings.front().projection_codes;
    for (int h = 0; h < r.holes; ++h) {
      std::set<std::string> fiber;
      for (const auto& f : e.fillings) {
        bool same = true;
        for (int j = 0; j < r.holes && same; ++j) same = j == h || f.projection_codes[j] == ref[j];
        if (same) fiber.insert(f.projection_codes[h]);
      }
      if (fiber != proj[h]) r.fibers_match = false;
    }
  }
  return r;
}

BijectionReport verify_product_bijection(const Template& t_sub, const std::vector<int>& budget) {
  BijectionReport r = check_product_bijection(t_sub, budget);
  if (r.fillings == 0) throw Error(ErrorCode::BudgetExhausted, "no filling within the budget");
  if (!r.ok()) throw Error(ErrorCode::BijectionViolation, to_text(r));
  return r;
}

std::string to_text(const BijectionReport& r) {
  std::string out = fmt::format("holes {}\nbudget", r.holes);
  for (int b : r.budget) out += fmt::format(" {}", b);
  out += fmt::format("\nfillings {}\nprojections", r.fillings);
  for (auto p : r.projections) out += fmt::format(" {}", p);
  out += fmt::format("\nproduct {}\nimages {}\ninjective {}\nsurjective {}\nfibers {}\n", r.product,
                     r.distinct_images, r.injective, r.surjective, r.fibers_match);
  return out;
}

}  // namespace quiltlab
