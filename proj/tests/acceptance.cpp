// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Usage: acceptance <path to the asai executable>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "asai/asai.hpp"
#include "asai/cache.hpp"
#include "asai/easiness.hpp"
#include "asai/lang.hpp"
#include "asai/points.hpp"
#include "test_support.hpp"

namespace {

using namespace asai;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Collects the first failure message; later checks still run.
struct Checker {
  Outcome out;
  void expect(bool cond, const std::string& what) {
    if (!cond && out.ok) {
      out.ok = false;
      out.detail = what;
    }
  }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// One norm map level plus its centralizer witnesses.
struct LevelRun {
  std::string name;
  std::uint64_t q;
  std::uint32_t m;
  bool trivial = false;
  std::size_t classes = 0;
  std::size_t disagreements = 0;
};

LevelRun run_level(const GroupLaw& law, FieldTower& tower, std::uint64_t q, std::uint32_t m) {
  const FiniteGroupView view(law, tower, q, m);
  const auto table = std::make_shared<const ClassTable>(conjugacy_classes(view));
  const auto r = norm_map(view, table);
  LevelRun run{law.name, q, m, is_asai_trivial(r), table->size(), 0};
  for (std::size_t c = 0; c < table->size(); ++c) {
    const auto w = lemma21_witness(view, r, c);
    bool verified = false;
    if (w) {
      const auto zg = point_mul(tower, law, w->z, w->g);
      const auto gz = point_mul(tower, law, w->g, w->z);
      const auto twisted = point_mul(tower, law, point_inv(tower, law, w->z), point_frobenius(tower, w->z, q, m));
      verified = points_equal(tower, zg, gz) && points_equal(tower, twisted, w->g);
    }
    if (verified != (r.perm[c] == c)) ++run.disagreements;
  }
  return run;
}

std::vector<LevelRun> g_runs;  // every level from criteria 1 and 2

Outcome non_example() {
  Checker ck;
  const auto t0 = Clock::now();
  FieldTower tower(3);
  const auto law = builtin_n2(3);
  const FiniteGroupView view(law, tower, 3, 1);
  const auto table = conjugacy_classes(view);
  const auto r = norm_map(view, table);
  std::size_t moved = 0;
  for (std::size_t c = 0; c < table.size(); ++c) {
    const auto g = view.point(table.classes[c].rep);
    const auto& a = g.coords[0];
    const auto& b = g.coords[1];
    const auto expected = view.ordinal(Point{{a, b - a * a}});
    ck.expect(r.images[c] == expected, "closed form differs at class " + std::to_string(c));
    // Brute-force Lang oracle within F_{3^9}.
    const auto brute = lang_solve_bruteforce(tower, law, g, 3, 1, 9);
    ck.expect(brute.has_value(), "brute-force solver found no witness");
    if (brute) {
      const auto image = view.try_ordinal(point_conj(tower, law, g, brute->x));
      ck.expect(image && *image == expected, "brute-force image differs at class " + std::to_string(c));
    }
    if (r.perm[c] != c) ++moved;
  }
  ck.expect(table.size() == 9 && moved == 6, "expected 6 moved of 9, got " + std::to_string(moved));
  const auto v = easiness_scan(law, tower, 3, 1);
  ck.expect(v.kind == VerdictKind::kNotEasy && v.m == 1 && v.witness &&
                points_equal(tower, *v.witness, test::const_point(tower, 1, {1, 0})),
            "verdict is not NotEasy((1,0), m=1)");
  g_runs.push_back(run_level(law, tower, 3, 1));
  const auto secs = seconds_since(t0);
  ck.expect(secs < 5.0, "took " + std::to_string(secs) + " s");
  if (ck.out.ok) ck.out.detail = "6 moved, 3 fixed, " + std::to_string(secs).substr(0, 4) + " s";
  return ck.out;
}

Outcome easy_families() {
  Checker ck;
  const auto t0 = Clock::now();
  for (Residue p : {2U, 3U}) {
    FieldTower tower(p);
    for (const auto& law : {builtin_ul(3, p), builtin_ga_power(2, p)}) {
      for (std::uint32_t m = 1; m <= 3; ++m) {
        g_runs.push_back(run_level(law, tower, p, m));
        ck.expect(g_runs.back().trivial, law.name + " q=" + std::to_string(p) + " m=" + std::to_string(m) +
                                             " moves a class");
      }
    }
  }
  const auto secs = seconds_since(t0);
  ck.expect(secs < 60.0, "took " + std::to_string(secs) + " s");
  if (ck.out.ok) ck.out.detail = "12 levels trivial, " + std::to_string(secs).substr(0, 4) + " s";
  return ck.out;
}

Outcome biconditional() {
  Checker ck;
  std::size_t classes = 0;
  ck.expect(g_runs.size() == 13, "expected 13 runs, got " + std::to_string(g_runs.size()));
  for (const auto& run : g_runs) {
    classes += run.classes;
    ck.expect(run.disagreements == 0, run.name + " q=" + std::to_string(run.q) + " m=" + std::to_string(run.m) +
                                          ": " + std::to_string(run.disagreements) + " disagreements");
  }
  if (ck.out.ok) ck.out.detail = std::to_string(classes) + " classes, 0 disagreements";
  return ck.out;
}

Outcome solver_equivalence() {
  Checker ck;
  std::size_t elements = 0;
  auto check = [&](const GroupLaw& law, Residue p, std::uint32_t cap) {
    FieldTower tower(p);
    const FiniteGroupView view(law, tower, p, 1);
    const auto table = conjugacy_classes(view);
    for (Ordinal g = 0; g < view.order(); ++g, ++elements) {
      const auto gp = view.point(g);
      const auto tri = lang_solve_triangular(tower, law, gp, p, 1);
      const auto brute = lang_solve_bruteforce(tower, law, gp, p, 1, cap);
      if (!brute || !verify_witness(tower, law, tri, p, 1) || !verify_witness(tower, law, *brute, p, 1)) {
        ck.expect(false, law.name + ": no verified witness for element " + std::to_string(g));
        continue;
      }
      const auto diff = point_mul(tower, law, point_inv(tower, law, tri.x), brute->x);
      ck.expect(view.try_ordinal(diff).has_value(), law.name + ": witnesses differ off G^F at " + std::to_string(g));
      const auto a = view.try_ordinal(point_conj(tower, law, gp, tri.x));
      const auto b = view.try_ordinal(point_conj(tower, law, gp, brute->x));
      ck.expect(a && b && table.class_of[*a] == table.class_of[*b],
                law.name + ": image classes differ at " + std::to_string(g));
    }
  };
  check(builtin_n2(3), 3, 9);
  check(builtin_ul(3, 2), 2, 8);
  if (ck.out.ok) ck.out.detail = std::to_string(elements) + " elements";
  return ck.out;
}

std::vector<std::size_t> class_sizes(const ClassTable& t) {
  std::vector<std::size_t> out;
  for (const auto& c : t.classes) out.push_back(c.size());
  return out;
}

Outcome class_structure() {
  Checker ck;
  FieldTower t2(2), t3(3);
  const FiniteGroupView ul2(builtin_ul(3, 2), t2, 2, 1);
  const FiniteGroupView ul3(builtin_ul(3, 3), t3, 3, 1);
  const FiniteGroupView n2(builtin_n2(3), t3, 3, 1);
  const auto c_ul2 = conjugacy_classes(ul2);
  const auto c_ul3 = conjugacy_classes(ul3);
  const auto c_n2 = conjugacy_classes(n2);
  ck.expect(class_sizes(c_ul2) == std::vector<std::size_t>{1, 1, 2, 2, 2}, "ul(3)(F_2) class sizes");
  auto s3 = class_sizes(c_ul3);
  std::sort(s3.begin(), s3.end());
  std::vector<std::size_t> want3(3, 1);
  want3.resize(11, 3);
  ck.expect(s3 == want3, "ul(3)(F_3) class sizes");
  ck.expect(n2.is_abelian() && class_sizes(c_n2) == std::vector<std::size_t>(9, 1), "n2(F_3) classes");
  for (auto [view, table] : {std::pair{&ul2, &c_ul2}, std::pair{&ul3, &c_ul3}, std::pair{&n2, &c_n2}}) {
    for (Ordinal g = 0; g < view->order(); ++g) {
      const auto cls = table->classes[table->class_of[g]].size();
      ck.expect(cls * centralizer(*view, g).size() == view->order(),
                view->law().name + ": orbit-stabilizer fails at " + std::to_string(g));
    }
  }
  if (ck.out.ok) ck.out.detail = "[1,1,2,2,2], 11 classes, 9 singletons";
  return ck.out;
}

Outcome centralizer_growth() {
  Checker ck;
  FieldTower t2(2), t3(3);
  const auto n2 = builtin_n2(3);
  const auto counts = centralizer_counts(n2, t3, test::const_point(t3, 1, {1, 0}), 3, 1, 1, 3);
  std::uint64_t expected = 9;
  for (const auto& [big_n, count] : counts) {
    ck.expect(count == expected, "n2 (1,0) N=" + std::to_string(big_n) + ": " + std::to_string(count));
    expected *= 3;
  }
  const auto est = estimate_growth(counts, 3);
  ck.expect(est.dimension == 1U && est.components == 3U, "n2 (1,0) growth estimate");
  struct Case {
    GroupLaw law;
    FieldTower* tower;
    std::uint64_t q;
    std::uint32_t m;
  };
  for (auto& c : {Case{builtin_ul(3, 2), &t2, 2, 1}, Case{builtin_ga_power(2, 3), &t3, 3, 1},
                  Case{builtin_n2(3), &t3, 3, 1}, Case{builtin_n2(2), &t2, 2, 2}}) {
    const auto e = identity_point(*c.tower, c.law, 1);
    for (const auto& [big_n, count] : centralizer_counts(c.law, *c.tower, e, c.q, c.m, 1, 3)) {
      std::uint64_t level = 1, want = 1;
      for (std::uint32_t i = 0; i < c.m * big_n; ++i) level *= c.q;
      for (std::size_t i = 0; i < c.law.dim; ++i) want *= level;
      ck.expect(count == want, c.law.name + " identity N=" + std::to_string(big_n));
    }
  }
  if (ck.out.ok) ck.out.detail = "9, 27, 81; dimension 1, components 3";
  return ck.out;
}

Outcome substrate() {
  Checker ck;
  std::uint64_t fields = 0;
  for (Residue p = 2; p <= 81; ++p) {
    bool prime = true;
    for (Residue d = 2; d * d <= p; ++d) prime = prime && p % d != 0;
    if (!prime) continue;
    FieldTower tower(p);
    std::uint64_t order = p;
    for (std::uint32_t k = 1; order <= 81; ++k, order *= p, ++fields) {
      const auto els = test::all_elements(tower, k);
      const auto zero = FieldElement::zero(tower.field(k));
      const auto one = FieldElement::one(tower.field(k));
      bool ok = true;
      for (const auto& a : els) {
        ok = ok && a + zero == a && a * one == a && (a + (-a)).is_zero();
        ok = ok && (a.is_zero() || a * a.inverse() == one);
        for (const auto& b : els) {
          ok = ok && a + b == b + a && a * b == b * a;
          for (const auto& c : els) {
            ok = ok && (a + b) + c == a + (b + c) && (a * b) * c == a * (b * c) && a * (b + c) == a * b + a * c;
          }
        }
      }
      ck.expect(ok, "field axioms fail for p=" + std::to_string(p) + " k=" + std::to_string(k));
    }
  }
  for (Residue p : {2U, 3U}) {
    FieldTower tower(p);
    const auto f6 = tower.make_field(6);
    for (std::uint32_t b : {2U, 3U}) {
      for (const auto& x : test::all_elements(tower, 1)) {
        ck.expect(tower.embed(tower.embed(x, tower.make_field(b)), f6) == tower.embed(x, f6),
                  "triangle 1|" + std::to_string(b) + "|6 fails");
      }
      for (const auto& x : test::all_elements(tower, b)) {
        const auto up = tower.embed(x, f6);
        const auto back = tower.restrict_to(up, tower.make_field(b));
        ck.expect(back && *back == x, "restrict after embed fails");
      }
    }
    // F_{p^2} and F_{p^3} meet in F_p inside F_{p^6}.
    std::size_t shared = 0;
    for (const auto& x : test::all_elements(tower, 2)) {
      if (tower.restrict_to(tower.embed(x, f6), tower.make_field(3))) ++shared;
    }
    ck.expect(shared == p, "F_p^2 and F_p^3 meet in more than F_p");
  }
  std::size_t solved = 0;
  for (auto [p, q, m, degree] : {std::tuple{2U, 2ULL, 1U, 3U}, std::tuple{2U, 4ULL, 1U, 2U}, std::tuple{3U, 3ULL, 1U, 2U},
                                 std::tuple{3U, 3ULL, 2U, 2U}, std::tuple{5U, 5ULL, 1U, 1U}}) {
    FieldTower tower(p);
    for (const auto& c : test::all_elements(tower, degree)) {
      const auto [t, level] = artin_schreier_solve(tower, c, q, m);
      ck.expect(frobenius(tower, t, q, m) - t == tower.embed(c, level), "artin-schreier root fails to verify");
      ++solved;
    }
  }
  for (auto [p, q, m] : {std::tuple{2U, 2ULL, 3U}, std::tuple{2U, 4ULL, 2U}, std::tuple{3U, 3ULL, 2U},
                         std::tuple{3U, 9ULL, 1U}, std::tuple{3U, 3ULL, 3U}}) {
    FieldTower tower(p);
    for (const auto& x : test::all_elements(tower, q_exponent(p, q) * m)) {
      ck.expect(frobenius(tower, x, q, m) == x, "Frobenius^m moves an element of F_q^m");
    }
  }
  if (ck.out.ok) ck.out.detail = std::to_string(fields) + " fields, " + std::to_string(solved) + " AS equations";
  return ck.out;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism(const std::string& cli) {
  Checker ck;
  const auto dir = fs::temp_directory_path() / "asai-acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto run = [&](const std::string& args, const std::string& out) {
    const auto cmd = "\"" + cli + "\" " + args + " --out \"" + (dir / out).string() + "\"";
    return std::system(cmd.c_str());
  };
  const std::string base = "asai --group n2 --q 3 --m 1";
  ck.expect(run(base, "a.json") == 0 && run(base, "b.json") == 0, "asai command failed");
  ck.expect(!slurp(dir / "a.json").empty() && slurp(dir / "a.json") == slurp(dir / "b.json"), "reports differ");
  const std::string cached = "asai --group \"ul(3)\" --q 3 --m 2 --cache \"" + (dir / "cache").string() + "\"";
  ck.expect(run(cached, "c.json") == 0 && run(cached, "d.json") == 0 && run("asai --group \"ul(3)\" --q 3 --m 2",
                                                                           "e.json") == 0,
            "cached asai command failed");
  ck.expect(slurp(dir / "c.json") == slurp(dir / "d.json") && slurp(dir / "c.json") == slurp(dir / "e.json"),
            "cache hit changes the report");

  // Library-level round trip: reloaded tables keep the canonical order.
  FieldTower tower(3);
  const auto law = builtin_ul(3, 3);
  const FiniteGroupView view(law, tower, 3, 2);
  const auto table = conjugacy_classes(view);
  const auto key = cache_key(law, 3, 2);
  const auto text = serialize_class_table(table, key);
  const auto back = deserialize_class_table(text, key, view.order());
  ck.expect(back.table && *back.table == table && serialize_class_table(*back.table, key) == text,
            "cache round trip changes the table");
  fs::remove_all(dir);
  if (ck.out.ok) ck.out.detail = "byte-identical reports, cache round trip exact";
  return ck.out;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <asai executable>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"non-example detection", non_example},
      {"easy-family triviality", easy_families},
      {"centralizer witness biconditional", biconditional},
      {"Lang solver equivalence", solver_equivalence},
      {"class structure", class_structure},
      {"centralizer growth", centralizer_growth},
      {"field substrate", substrate},
      {"determinism", [&] { return determinism(cli); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.ok) ++failed;
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " (" << o.detail
              << ")" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
