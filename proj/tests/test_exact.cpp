#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "fcurp/approx.hpp"
#include "fcurp/exact.hpp"
#include "fcurp/heuristics.hpp"
#include "fcurp/instance_io.hpp"
#include "fcurp/milp.hpp"
#include "fcurp/verify.hpp"
#include "oracles.hpp"

using namespace fcurp;

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

std::string lp_text(const Instance& inst) {
  std::ostringstream os;
  write_lp(build_model(inst), os);
  return os.str();
}

}  // namespace

TEST_CASE("verify accepts a slack out-and-back") {
  Eigen::MatrixXd f(2, 2);
  f << 0, 3, 4, 0;
  const Instance inst(1, 1, 0, f, 10.0);
  const std::vector<Vertex> tour{1, 0, 1};
  const Verification v = verify(inst, tour);
  CHECK(v.feasible);
  CHECK(v.cost == 7.0);
  CHECK(v.trace.levels == std::vector<double>{10.0, 6.0, 10.0});
}

TEST_CASE("verify reports where fuel runs out") {
  Eigen::MatrixXd f(3, 3);
  f << 0, 6, 3,
       6, 0, 3,
       3, 3, 0;
  const Instance inst(2, 1, 0, f, 11.0);
  // needs 3 + 6 + 3 = 12 = L + 1
  const std::vector<Vertex> tour{2, 0, 1, 2};
  const Verification v = verify(inst, tour);
  CHECK_FALSE(v.feasible);
  REQUIRE(v.violation.has_value());
  CHECK(*v.violation == 3);
  CHECK(v.trace.levels[2] == 2.0);
}

TEST_CASE("verify flags missing targets and malformed tours") {
  Eigen::MatrixXd f = Eigen::MatrixXd::Constant(3, 3, 1.0);
  f.diagonal().setZero();
  const Instance inst(2, 1, 0, f, 10.0);
  const std::vector<Vertex> partial{2, 0, 2};
  const Verification v = verify(inst, partial);
  CHECK_FALSE(v.feasible);
  CHECK(v.missing_targets == std::vector<Vertex>{1});
  const std::vector<Vertex> wrong_start{0, 1, 2};
  CHECK_THROWS_AS(verify(inst, wrong_start), MalformedTour);
  const std::vector<Vertex> unknown{2, 7, 2};
  CHECK_THROWS_AS(verify(inst, unknown), MalformedTour);
}

TEST_CASE("fuel trace resets at depots and drops by edge costs") {
  std::mt19937_64 rng(4);
  const Instance inst = oracle::random_euclidean(rng, 8, 3, 1.1);
  const Solution sol = approx_solve(inst);
  const auto& seq = sol.tour.sequence;
  const Verification v = verify(inst, seq);
  REQUIRE(v.feasible);
  for (std::size_t i = 1; i < seq.size(); ++i) {
    if (inst.is_depot(seq[i]))
      CHECK(v.trace.levels[i] == inst.capacity());
    else
      CHECK(v.trace.levels[i] == doctest::Approx(v.trace.levels[i - 1] - inst.fuel(seq[i - 1], seq[i])));
  }
}

TEST_CASE("quality metric") {
  CHECK(quality(100, 100) == 0.0);
  CHECK(quality(101.39, 100) == doctest::Approx(1.39));
  CHECK(quality(150, 100) == 50.0);
  CHECK_THROWS_AS(quality(1, 0), std::domain_error);
}

TEST_CASE("exact single target is the cheapest feasible out-and-back") {
  std::mt19937_64 rng(6);
  for (int rep = 0; rep < 10; ++rep) {
    const Instance inst = oracle::random_euclidean(rng, 1, 3, 1.05);
    const ExactResult r = solve_exact(inst);
    REQUIRE(r.status == ExactStatus::Optimal);
    CHECK(r.solution.cost() == doctest::Approx(oracle::fcurp_walks(inst)).epsilon(1e-12));
    // the two l legs bound it from below; they need not chain without a refuel trip
    const PathTable table(inst, derive_constants(inst));
    CHECK(table.cost(inst.start(), 0) + table.cost(0, inst.start()) <= r.solution.cost() + 1e-9);
  }
}

TEST_CASE("per-order oracle agrees with explicit walk enumeration") {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> slack(1.0, 1.5);
  for (int rep = 0; rep < 25; ++rep) {
    const Instance inst = oracle::random_euclidean(rng, 1 + rep % 3, 1 + rep % 3, slack(rng));
    CHECK(oracle::fcurp_optimum(inst) == doctest::Approx(oracle::fcurp_walks(inst)).epsilon(1e-12));
  }
}

TEST_CASE("exact matches the exhaustive oracle") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> slack(1.0, 1.6);
  for (int rep = 0; rep < 40; ++rep) {
    const Instance inst = oracle::random_euclidean(rng, 2 + rep % 5, 1 + rep % 3, slack(rng));
    const ExactResult r = solve_exact(inst);
    REQUIRE(r.status == ExactStatus::Optimal);
    const Verification v = verify(inst, r.solution.tour.sequence);
    CHECK(v.feasible);
    CHECK(v.cost == doctest::Approx(r.solution.cost()));
    CHECK(r.solution.cost() == doctest::Approx(oracle::fcurp_optimum(inst)).epsilon(1e-9));

    const PathTable table(inst, derive_constants(inst));
    CHECK(r.solution.cost() <= approx_solve(inst, table).cost() + 1e-9);
    const Solution built = construct(inst, table);
    CHECK(r.solution.cost() <= built.cost() + 1e-9);
    CHECK(r.solution.cost() <= improve(inst, built).cost() + 1e-9);
  }
}

TEST_CASE("l costs lower-bound the optimal tour between consecutive targets") {
  std::mt19937_64 rng(41);
  for (int rep = 0; rep < 20; ++rep) {
    const Instance inst = oracle::random_euclidean(rng, 5, 2, 1.05);
    const ExactResult r = solve_exact(inst);
    REQUIRE(r.status == ExactStatus::Optimal);
    const PathTable table(inst, derive_constants(inst));
    const auto& seq = r.solution.tour.sequence;
    // every stretch between consecutive stops (targets or the start depot at either
    // end) costs at least the l value of its endpoints
    std::size_t i = 0;
    while (i + 1 < seq.size()) {
      std::size_t j = i + 1;
      double run = inst.fuel(seq[i], seq[j]);
      while (j + 1 < seq.size() && inst.is_depot(seq[j])) {
        run += inst.fuel(seq[j], seq[j + 1]);
        ++j;
      }
      CHECK(table.cost(seq[i], seq[j]) <= run + 1e-9);
      i = j;
    }
  }
}

TEST_CASE("exact reports bound-only when the node cap bites") {
  std::mt19937_64 rng(3);
  const Instance inst = oracle::random_euclidean(rng, 8, 3, 1.05);
  ExactLimits lim;
  lim.max_nodes = 5;
  const ExactResult r = solve_exact(inst, lim);
  CHECK(r.status == ExactStatus::BoundOnly);
}

TEST_CASE("model sizes for two targets and one depot") {
  Eigen::MatrixXd f(3, 3);
  f << 0, 3, 2,
       3, 0, 2,
       2, 2, 0;
  const Instance inst(2, 1, 0, f, 10.0);
  const MilpModel m = build_model(inst);
  // x and p on 6 ordered pairs, r on 2 targets
  CHECK(m.vars.size() == 14);
  CHECK(m.count_rows("degree_balance") == 3);
  CHECK(m.count_rows("target_entry") == 2);
  CHECK(m.count_rows("source_flow") == 1);
  CHECK(m.count_rows("target_flow") == 2);
  CHECK(m.count_rows("depot_flow") == 0);
  CHECK(m.count_rows("flow_capacity") == 6);
  CHECK(m.count_rows("fuel_tt_upper") == 2);
  CHECK(m.count_rows("fuel_tt_lower") == 2);
  CHECK(m.count_rows("fuel_dt_lower") == 2);
  CHECK(m.count_rows("fuel_dt_upper") == 2);
  CHECK(m.count_rows("fuel_reserve") == 2);
  CHECK(m.rows.size() == 24);
  CHECK(m.big_m == 13.0);
}

TEST_CASE("model sizes follow the closed form") {
  std::mt19937_64 rng(1);
  for (int nt = 1; nt <= 5; ++nt)
    for (int nd = 1; nd <= 3; ++nd) {
      const Instance inst = oracle::random_euclidean(rng, nt, nd, 1.2);
      const MilpModel m = build_model(inst);
      const std::size_t n = nt + nd;
      CHECK(m.vars.size() == 2 * n * (n - 1) + nt);
      const std::size_t rows = n + nt + 1 + nt + (nd - 1) + n * (n - 1) + 2 * nt * (nt - 1) +
                               2 * nd * nt + nt * nd;
      CHECK(m.rows.size() == rows);
      // every variable appears in some row
      std::vector<bool> used(m.vars.size(), false);
      for (const Row& r : m.rows)
        for (auto [v, c] : r.terms) used[v] = true;
      CHECK(std::all_of(used.begin(), used.end(), [](bool b) { return b; }));
    }
}

TEST_CASE("target entry rows have unit coefficients") {
  std::mt19937_64 rng(2);
  const Instance inst = oracle::random_euclidean(rng, 3, 2, 1.2);
  const MilpModel m = build_model(inst);
  for (const Row& r : m.rows) {
    if (r.family != "target_entry") continue;
    CHECK(r.sense == Sense::Equal);
    CHECK(r.rhs == 1.0);
    CHECK(r.terms.size() == static_cast<std::size_t>(inst.num_vertices() - 1));
    for (auto [v, c] : r.terms) {
      CHECK(c == 1.0);
      CHECK(m.vars[v].name.rfind("x_", 0) == 0);
    }
  }
  CHECK(m.big_m == inst.capacity() + inst.fuel_matrix().maxCoeff());
}

TEST_CASE("LP export matches the golden file") {
  const std::filesystem::path dir = FCURP_TEST_DATA;
  const Instance inst = load_instance(dir / "tiny.json");
  CHECK(lp_text(inst) == read_file(dir / "tiny.lp"));
  const auto tmp = std::filesystem::temp_directory_path() / "fcurp_tiny_export.lp";
  export_model(build_model(inst), tmp);
  CHECK(read_file(tmp) == read_file(dir / "tiny.lp"));
  std::filesystem::remove(tmp);
}

TEST_CASE("single target model exports") {
  Eigen::MatrixXd f(2, 2);
  f << 0, 1, 1, 0;
  const std::string text = lp_text(Instance(1, 1, 0, f, 5.0));
  CHECK(text.find("Subject To") != std::string::npos);
  CHECK(text.find("x_0_1") != std::string::npos);
  CHECK(text.rfind("End\n") == text.size() - 4);
}

TEST_CASE("export to an unwritable path throws") {
  Eigen::MatrixXd f(2, 2);
  f << 0, 1, 1, 0;
  CHECK_THROWS(export_model(build_model(Instance(1, 1, 0, f, 5.0)), "/nonexistent-dir/x.lp"));
}

TEST_CASE("encoded tours satisfy every row") {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> slack(1.02, 1.5);
  for (int rep = 0; rep < 40; ++rep) {
    const Instance inst = oracle::random_euclidean(rng, 2 + rep % 7, 1 + rep % 4, slack(rng));
    const MilpModel m = build_model(inst);
    const PathTable table(inst, derive_constants(inst));
    const Solution a = approx_solve(inst, table);
    const Solution c = construct(inst, table);
    for (const Solution* s : {&a, &c}) {
      const TourEncoding e = encode_tour(inst, m, s->tour.sequence);
      for (const auto& v : e.violations) INFO(v.row << " " << v.activity << " vs " << v.rhs);
      CHECK(e.satisfied());
      CHECK(e.objective <= s->cost() + 1e-9);
      CHECK(e.objective == doctest::Approx(verify(inst, e.canonical_tour).cost));
    }
  }
}

TEST_CASE("repeated depot arcs encode as integer counts") {
  // two targets, so depot arcs may carry up to 2 traversals
  Eigen::MatrixXd f(4, 4);
  f << 0, 1, 4, 4,
       1, 0, 4, 4,
       4, 4, 0, 3,
       4, 4, 3, 0;
  const Instance inst(2, 2, 0, f, 10.0);
  const MilpModel m = build_model(inst);
  const std::vector<Vertex> tour{2, 3, 2, 3, 2, 0, 1, 2};
  const TourEncoding e = encode_tour(inst, m, tour);
  for (const auto& v : e.violations) INFO(v.row);
  CHECK(e.satisfied());
  CHECK(e.values[m.x(2, 3)] == 2.0);
  CHECK(e.values[m.x(3, 2)] == 2.0);
  CHECK(e.objective == doctest::Approx(4 * 3 + 4 + 1 + 4));
  // a third round trip exceeds the integer bound |T|
  const std::vector<Vertex> more{2, 3, 2, 3, 2, 3, 2, 0, 1, 2};
  CHECK_FALSE(encode_tour(inst, m, more).satisfied());
}

TEST_CASE("encoding an infeasible tour reports violations") {
  Eigen::MatrixXd f(3, 3);
  f << 0, 6, 3,
       6, 0, 3,
       3, 3, 0;
  const Instance inst(2, 1, 0, f, 11.0);
  const std::vector<Vertex> tour{2, 0, 1, 2};
  CHECK_FALSE(encode_tour(inst, build_model(inst), tour).satisfied());
}

TEST_CASE("external MILP solve agrees with the exact solver") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> slack(1.02, 1.4);
  const auto tmp = std::filesystem::temp_directory_path() / "fcurp_ext.lp";
  for (int rep = 0; rep < 4; ++rep) {
    const Instance inst = oracle::random_euclidean(rng, 2 + rep % 3, 1 + rep % 2, slack(rng));
    export_model(build_model(inst), tmp);
    const std::string cmd =
        std::string(FCURP_PYTHON) + " " + FCURP_SOLVE_LP + " " + tmp.string() + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[256] = {0};
    std::string out;
    while (fgets(buf, sizeof buf, pipe)) out += buf;
    const int status = pclose(pipe);
    INFO(out);
    REQUIRE(status == 0);
    const double external = std::stod(out);
    const ExactResult r = solve_exact(inst);
    REQUIRE(r.status == ExactStatus::Optimal);
    CHECK(external == doctest::Approx(r.solution.cost()).epsilon(1e-6));
  }
  std::filesystem::remove(tmp);
}
