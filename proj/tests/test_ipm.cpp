#include <catch2/catch_amalgamated.hpp>

#include <codebound/ipm.hpp>

#include <sstream>

using namespace codebound;

namespace {

ConicProblem trace_one_sdp(int n) {
    // max <I,X> s.t. Tr X = 1, X psd
    ConicProblem p;
    p.cone = ConeSpec{0, {n}};
    Constraint c;
    for (int i = 0; i < n; ++i) {
        p.objective.add_entry(0, i, i, 1.0);
        c.a.add_entry(0, i, i, 1.0);
    }
    c.b = 1.0;
    p.constraints.push_back(c);
    return p;
}

}  // namespace

TEST_CASE("orthant singleton: max{x : x >= 0, x = 1}") {
    ConicProblem p;
    p.cone = ConeSpec{1, {}};
    p.objective.add_orthant(0, 1.0);
    Constraint c;
    c.a.add_orthant(0, 1.0);
    c.b = 1.0;
    p.constraints.push_back(c);

    Solution s = solve(p);
    REQUIRE(s.status == SolveStatus::Optimal);
    REQUIRE(s.primal_value == Catch::Approx(1.0).margin(1e-8));
    REQUIRE(s.x.orthant()[0] == Catch::Approx(1.0).margin(1e-8));
    auto rep = duality_report(p, s);
    REQUIRE(std::fabs(rep.gap) <= 1e-7);
    REQUIRE(std::fabs(rep.compl_slackness) <= 1e-6);
}

TEST_CASE("sdp: max trace with unit-trace constraint") {
    ConicProblem p = trace_one_sdp(2);
    Solution s = solve(p);
    REQUIRE(s.status == SolveStatus::Optimal);
    REQUIRE(s.primal_value == Catch::Approx(1.0).margin(1e-8));
}

TEST_CASE("sdp: max off-diagonal with unit diagonal") {
    // max X12 + X21 s.t. X11 = X22 = 1, X psd; optimum 2 at all-ones
    ConicProblem p;
    p.cone = ConeSpec{0, {2}};
    p.objective.add_entry(0, 0, 1, 1.0);  // <C,X> = 2*X12 = X12 + X21
    Constraint c1, c2;
    c1.a.add_entry(0, 0, 0, 1.0);
    c1.b = 1.0;
    c2.a.add_entry(0, 1, 1, 1.0);
    c2.b = 1.0;
    p.constraints.push_back(c1);
    p.constraints.push_back(c2);

    Solution s = solve(p);
    REQUIRE(s.status == SolveStatus::Optimal);
    REQUIRE(s.primal_value == Catch::Approx(2.0).margin(1e-7));
    REQUIRE(s.x.blocks()[0](0, 1) == Catch::Approx(1.0).margin(1e-6));
    auto rep = duality_report(p, s);
    REQUIRE(std::fabs(rep.gap) <= 1e-7);
    REQUIRE(rep.slack_min_eig >= -1e-8);
    REQUIRE(std::fabs(rep.compl_slackness) <= 1e-6);
}

TEST_CASE("lp: simple two-variable equality") {
    // max 3x + 2y s.t. x + y = 4, x,y >= 0 -> 12 at (4,0)
    ConicProblem p;
    p.cone = ConeSpec{2, {}};
    p.objective.add_orthant(0, 3.0);
    p.objective.add_orthant(1, 2.0);
    Constraint c;
    c.a.add_orthant(0, 1.0);
    c.a.add_orthant(1, 1.0);
    c.b = 4.0;
    p.constraints.push_back(c);

    Solution s = solve(p);
    REQUIRE(s.status == SolveStatus::Optimal);
    REQUIRE(s.primal_value == Catch::Approx(12.0).margin(1e-6));
    REQUIRE(s.x.orthant()[0] == Catch::Approx(4.0).margin(1e-5));
}

TEST_CASE("mixed orthant and psd block") {
    // max x + <I,X> s.t. x + Tr X = 2, x >= 0, X psd 2x2 -> 2
    ConicProblem p;
    p.cone = ConeSpec{1, {2}};
    p.objective.add_orthant(0, 1.0);
    p.objective.add_entry(0, 0, 0, 1.0);
    p.objective.add_entry(0, 1, 1, 1.0);
    Constraint c;
    c.a.add_orthant(0, 1.0);
    c.a.add_entry(0, 0, 0, 1.0);
    c.a.add_entry(0, 1, 1, 1.0);
    c.b = 2.0;
    p.constraints.push_back(c);

    Solution s = solve(p);
    REQUIRE(s.status == SolveStatus::Optimal);
    REQUIRE(s.primal_value == Catch::Approx(2.0).margin(1e-7));
}

TEST_CASE("presolve: fixings, duplicates, identity") {
    // x0 = 0.25 fixed by singleton; constraint involving x0 gets shifted
    ConicProblem p;
    p.cone = ConeSpec{3, {}};
    p.objective.add_orthant(0, 1.0);
    p.objective.add_orthant(1, 1.0);
    p.objective.add_orthant(2, -1.0);
    Constraint f;
    f.a.add_orthant(0, 2.0);
    f.b = 0.5;
    Constraint g;
    g.a.add_orthant(0, 1.0);
    g.a.add_orthant(1, 1.0);
    g.a.add_orthant(2, 1.0);
    g.b = 1.0;
    p.constraints.push_back(f);
    p.constraints.push_back(g);

    Presolve pre = presolve(p);
    REQUIRE(pre.status == SolveStatus::Optimal);
    REQUIRE(pre.fixed_count == 1);
    REQUIRE(pre.fixed_value[0] == Catch::Approx(0.25));
    REQUIRE(pre.reduced.cone.orthant_dim == 2);
    REQUIRE(pre.reduced.constraints.size() == 1);
    REQUIRE(pre.reduced.constraints[0].b == Catch::Approx(0.75));

    Solution s1 = solve(p);
    REQUIRE(s1.status == SolveStatus::Optimal);
    REQUIRE(s1.primal_value == Catch::Approx(1.0).margin(1e-6));  // 0.25 + 0.75

    // duplicate constraint appended: one removed, value unchanged
    ConicProblem pdup = p;
    pdup.constraints.push_back(g);
    Presolve pre2 = presolve(pdup);
    REQUIRE(pre2.dropped.size() == 1);
    Solution s2 = solve(pdup);
    REQUIRE(s2.status == SolveStatus::Optimal);
    REQUIRE(s2.primal_value == Catch::Approx(s1.primal_value).margin(1e-9));
    auto rep = duality_report(pdup, s2);
    REQUIRE(std::fabs(rep.gap) <= 1e-7);
    REQUIRE(std::fabs(rep.compl_slackness) <= 1e-6);

    // no fixings present: identity transformation
    ConicProblem q;
    q.cone = ConeSpec{2, {}};
    q.objective.add_orthant(0, 1.0);
    Constraint h;
    h.a.add_orthant(0, 1.0);
    h.a.add_orthant(1, 1.0);
    h.b = 1.0;
    q.constraints.push_back(h);
    Presolve pre3 = presolve(q);
    REQUIRE(pre3.fixed_count == 0);
    REQUIRE(pre3.reduced.cone.orthant_dim == 2);
    REQUIRE(pre3.kept == std::vector<int>{0});
}

TEST_CASE("presolve: inconsistent fixings flag infeasibility") {
    ConicProblem p;
    p.cone = ConeSpec{1, {}};
    p.objective.add_orthant(0, 1.0);
    Constraint a, b;
    a.a.add_orthant(0, 1.0);
    a.b = 1.0;
    b.a.add_orthant(0, 1.0);
    b.b = 2.0;
    p.constraints.push_back(a);
    p.constraints.push_back(b);
    REQUIRE(presolve(p).status == SolveStatus::PrimalInfeasibleLikely);
    REQUIRE(solve(p).status == SolveStatus::PrimalInfeasibleLikely);

    // negative fixing violates the orthant
    ConicProblem q;
    q.cone = ConeSpec{1, {}};
    q.objective.add_orthant(0, 1.0);
    Constraint c;
    c.a.add_orthant(0, 1.0);
    c.b = -1.0;
    q.constraints.push_back(c);
    REQUIRE(solve(q).status == SolveStatus::PrimalInfeasibleLikely);
}

TEST_CASE("unbounded primal is flagged") {
    // max x0 with only x1 pinned
    ConicProblem p;
    p.cone = ConeSpec{2, {}};
    p.objective.add_orthant(0, 1.0);
    Constraint c;
    c.a.add_orthant(1, 1.0);
    c.b = 1.0;
    p.constraints.push_back(c);
    REQUIRE(solve(p).status == SolveStatus::DualInfeasibleLikely);
}

TEST_CASE("solver determinism: identical iterate logs") {
    ConicProblem p = trace_one_sdp(3);
    IterateLog l1, l2;
    Solution s1 = solve(p, SolverParams{}, &l1);
    Solution s2 = solve(p, SolverParams{}, &l2);
    REQUIRE(s1.primal_value == s2.primal_value);  // bitwise
    REQUIRE(l1.records.size() == l2.records.size());
    for (size_t i = 0; i < l1.records.size(); ++i) {
        REQUIRE(l1.records[i].mu == l2.records[i].mu);
        REQUIRE(l1.records[i].primal_res == l2.records[i].primal_res);
    }

    std::ostringstream os;
    l1.write_csv(os);
    REQUIRE(os.str().rfind("iter,mu,", 0) == 0);
}

TEST_CASE("scaling invariance of the optimal value") {
    ConicProblem p;
    p.cone = ConeSpec{0, {2}};
    p.objective.add_entry(0, 0, 1, 1.0);
    Constraint c1, c2;
    c1.a.add_entry(0, 0, 0, 1.0);
    c1.b = 1.0;
    c2.a.add_entry(0, 1, 1, 1.0);
    c2.b = 1.0;
    p.constraints.push_back(c1);
    p.constraints.push_back(c2);
    double v1 = solve(p).primal_value;

    for (double lambda : {2.0, 37.5, 0.011}) {
        ConicProblem q = p;
        for (auto& e : q.objective.entries) e.v *= lambda;
        double v2 = solve(q).primal_value;
        REQUIRE(v2 == Catch::Approx(lambda * v1).epsilon(1e-7));
    }
}

TEST_CASE("mu decreases along accepted iterations") {
    ConicProblem p = trace_one_sdp(4);
    IterateLog log;
    Solution s = solve(p, SolverParams{}, &log);
    REQUIRE(s.status == SolveStatus::Optimal);
    for (size_t i = 1; i < log.records.size(); ++i)
        REQUIRE(log.records[i].mu <= 10.0 * log.records[i - 1].mu);
}
