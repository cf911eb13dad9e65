#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "gpabm/metrics.hpp"

using namespace gpabm;

namespace {

Genome genome_of(std::string_view ops) {
    Genome g;
    g.program = Program::from_string(ops);
    return g;
}

SimConfig grid(int w, int h, double regrowth, double metabolism) {
    SimConfig c;
    c.width = w;
    c.height = h;
    c.regrowth = regrowth;
    c.metabolism = metabolism;
    c.initial_population = 0;
    return c;
}

void barren(Landscape& land) {
    for (int y = 0; y < land.height(); ++y)
        for (int x = 0; x < land.width(); ++x) land.set_resource({x, y}, 0.0);
}

}  // namespace

TEST_CASE("predicted_K") {
    CHECK(predicted_K(grid(30, 30, 1.0, 1.0)) == 900);
    CHECK(predicted_K(grid(10, 10, 1.0, 2.0)) == 50);
    CHECK(predicted_K(grid(10, 10, 0.5, 1.0)) == 50);
    CHECK(predicted_K(grid(10, 10, 0.1, 1.0)) == 10);
    CHECK(predicted_K(grid(7, 3, 1.0, 4.0)) == 5);
    CHECK_THROWS_AS(predicted_K(grid(10, 10, 1.0, 0.0)), std::invalid_argument);
}

TEST_CASE("realized_K") {
    const std::vector<double> flat(100, 450.0);
    CHECK(realized_K(flat, 0.2, 900) == doctest::Approx(0.5));

    std::vector<double> alternating(100);
    for (std::size_t i = 0; i < alternating.size(); ++i) alternating[i] = i % 2 ? 500.0 : 400.0;
    CHECK(realized_K(alternating, 0.2, 900) == doctest::Approx(0.5));

    const std::vector<double> short_series{10.0, 30.0};
    CHECK(realized_K(short_series, 0.2, 10) == doctest::Approx(3.0));

    CHECK_THROWS_AS(realized_K(std::vector<double>{}, 0.2, 900), std::invalid_argument);
    CHECK_THROWS_AS(tail_stats(flat, 0.0), std::invalid_argument);
}

TEST_CASE("realized_K does not depend on where a stationary tail starts") {
    std::vector<double> series(40, 0.0);
    series.resize(1000, 321.0);
    for (double w : {0.01, 0.05, 0.2, 0.5, 0.9}) {
        CHECK(realized_K(series, w, 642) == doctest::Approx(0.5));
        CHECK(tail_stats(series, w).cv == doctest::Approx(0.0));
    }
}

TEST_CASE("tail_stats against a direct computation") {
    std::vector<double> s(97);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = static_cast<double>((i * 37) % 11);
    // ceil(0.3 * 97) = 30 samples.
    const std::vector<double> tail(s.end() - 30, s.end());
    const double mean = std::accumulate(tail.begin(), tail.end(), 0.0) / 30;
    double ss = 0.0;
    for (double v : tail) ss += (v - mean) * (v - mean);
    const TailStats t = tail_stats(s, 0.3);
    CHECK(t.mean == doctest::Approx(mean));
    CHECK(t.cv == doctest::Approx(std::sqrt(ss / 30) / mean));
}

TEST_CASE("summarize pads extinct runs with zeros") {
    SimConfig c = grid(10, 10, 0.5, 1.0);
    c.max_steps = 99;
    const std::vector<double> died{50, 40, 10};
    const RunSummary s = summarize(c, died, 0.2, 0.25);
    CHECK(s.predicted_K == 50);
    CHECK(s.steady_mean_population == 0.0);
    CHECK(s.realized_K == 0.0);
    CHECK(s.viability_fraction == 0.25);

    const std::vector<double> steady(100, 25.0);
    const RunSummary t = summarize(c, steady, 0.2, 0.0);
    CHECK(t.realized_K == doctest::Approx(t.steady_mean_population / t.predicted_K));
    CHECK(t.realized_K == doctest::Approx(0.5));
}

TEST_CASE("census") {
    SimConfig c = grid(10, 10, 1.0, 1.0);
    World w = World::empty(c);
    SUBCASE("empty world") {
        const Census e = census(w);
        CHECK(e.step.population == 0);
        CHECK(e.genotypes.empty());
        CHECK(e.step.modal_program.empty());
    }
    SUBCASE("counts and mode") {
        for (int i = 0; i < 3; ++i) w.add_agent(genome_of("XM"), {i, 0}, 1.0);
        for (int i = 0; i < 2; ++i) w.add_agent(genome_of("XMM"), {i, 1}, 2.0);
        w.add_agent(genome_of("MM"), {5, 5}, 0.0);
        const Census k = census(w);
        CHECK(k.step.population == 6);
        CHECK(k.step.unique_genotypes == 3);
        CHECK(k.step.modal_program == "05Z00XM.........................");
        CHECK(k.step.modal_count == 3);
        CHECK(k.step.no_x_count == 1);
        CHECK(k.step.max_length == 3);
        CHECK(k.step.mean_length == doctest::Approx(14.0 / 6));
        CHECK(k.step.mean_surplus == doctest::Approx(7.0 / 6));
        REQUIRE(k.genotypes.size() == 3);
        CHECK(std::is_sorted(k.genotypes.begin(), k.genotypes.end(),
                             [](const auto& a, const auto& b) { return a.program < b.program; }));
    }
    SUBCASE("ties go to the smallest genotype") {
        w.add_agent(genome_of("XU"), {0, 0}, 0.0);
        w.add_agent(genome_of("XD"), {1, 0}, 0.0);
        CHECK(census(w).step.modal_program == "05Z00XD.........................");
    }
    SUBCASE("registers are part of the genotype") {
        Genome g = genome_of("M");
        w.add_agent(g, {0, 0}, 0.0);
        g.initial_registers.best_res = 3;
        w.add_agent(g, {1, 0}, 0.0);
        CHECK(census(w).step.unique_genotypes == 2);
    }
}

TEST_CASE("census counts always sum to the population") {
    SimConfig c = grid(20, 20, 0.5, 1.0);
    c.initial_population = 120;
    c.compute_capacity = 2;
    c.infertility = 2;
    c.max_steps = 200;
    c.seed = 9;
    RunRecorder rec;
    std::int64_t checked = 0;
    rec.on_census = [&](const Census& k) {
        std::int64_t total = 0;
        std::int64_t top = 0;
        for (const auto& g : k.genotypes) {
            total += g.count;
            top = std::max(top, g.count);
            CHECK(g.step == k.step.step);
        }
        CHECK(total == k.step.population);
        CHECK(top == k.step.modal_count);
        CHECK(static_cast<std::int64_t>(k.genotypes.size()) == k.step.unique_genotypes);
        ++checked;
    };
    std::vector<Observer*> obs{&rec};
    run(c, obs);
    CHECK(checked == static_cast<std::int64_t>(rec.population().size()));

    // Births minus deaths reconcile over any interval.
    const auto& r = rec.records();
    for (std::size_t a = 0; a + 17 < r.size(); a += 13) {
        const std::size_t b = a + 17;
        std::int64_t net = 0;
        for (std::size_t i = a + 1; i <= b; ++i) net += r[i].births - r[i].deaths;
        CHECK(r[b].population - r[a].population == net);
    }
}

TEST_CASE("viability: all founders dead at the minimum") {
    SimConfig c = grid(10, 10, 0.0, 1.0);
    World w = World::empty(c);
    barren(w.landscape());
    for (int i = 0; i < 3; ++i) w.add_agent(genome_of("M"), {3 * i, 0}, 0.0);
    ViabilityTracker v(3, 1.0);
    w.set_observers({&v});
    v.on_step(w);
    w.action_cycle();
    CHECK(w.population() == 0);
    CHECK(v.minimum_step() == 1);
    CHECK(v.fraction(ViabilityMode::ByMinimum) == 0.0);
    CHECK(v.fraction(ViabilityMode::Eventually) == 0.0);
}

TEST_CASE("viability: growth from step 0 with same-cycle births") {
    SimConfig c = grid(5, 5, 1.0, 1.0);
    c.puberty = 0;
    c.infertility = 1;
    World w = World::empty(c);
    for (int i = 0; i < 3; ++i) w.add_agent(genome_of("X"), {2 * i, 2 * i}, 0.0);
    ViabilityTracker v(3, 1.0);
    w.set_observers({&v});
    v.on_step(w);
    for (int i = 0; i < 3; ++i) w.action_cycle();
    CHECK(w.population() == 25);
    CHECK(v.minimum_step() == 0);
    // Births in cycle 0 are stamped with the step they complete.
    CHECK(v.fraction(ViabilityMode::ByMinimum) == 0.0);
    CHECK(v.fraction(ViabilityMode::Eventually) == 1.0);
}

TEST_CASE("viability: die-off then recovery") {
    SimConfig c = grid(20, 20, 0.0, 1.0);
    c.puberty = 1;
    c.infertility = 1;
    World w = World::empty(c);
    barren(w.landscape());
    const AgentId breeder = w.add_agent(genome_of("X"), {2, 2}, 10.0);
    w.add_agent(genome_of("M"), {10, 2}, 0.0);
    w.add_agent(genome_of("M"), {2, 10}, 0.0);
    w.add_agent(genome_of("U"), {10, 10}, 10.0);
    ViabilityTracker v(4, 1.0);
    w.set_observers({&v});
    v.on_step(w);
    for (int i = 0; i < 4; ++i) w.action_cycle();
    CHECK(w.find(breeder)->offspring_count > 0);
    CHECK(v.minimum_step() == 1);
    CHECK(v.fraction(ViabilityMode::ByMinimum) == 0.0);
    CHECK(v.fraction(ViabilityMode::Eventually) == 0.25);
}

TEST_CASE("viability search is limited to the horizon") {
    SimConfig c = grid(10, 10, 1.0, 1.0);
    World w = World::empty(c);
    ViabilityTracker v(0, 0.1);
    CHECK(v.fraction() == 0.0);
    CHECK(v.minimum_step() == 0);
}

TEST_CASE("detect_exclusions") {
    SUBCASE("A excludes B") {
        GenotypeSeries s{{"A", {5, 5, 5, 5, 5}}, {"B", {50, 20, 0, 0, 0}}};
        const auto ev = detect_exclusions(s, 2);
        REQUIRE(ev.size() == 1);
        CHECK(ev[0].winner == "A");
        CHECK(ev[0].loser == "B");
        CHECK(ev[0].step == 2);
    }
    SUBCASE("joint extinction") {
        GenotypeSeries s{{"A", {5, 5, 0, 0, 0}}, {"B", {50, 20, 0, 0, 0}}};
        CHECK(detect_exclusions(s, 2).empty());
    }
    SUBCASE("reappearance inside the window") {
        GenotypeSeries s{{"A", {5, 5, 5, 5, 5, 5}}, {"B", {50, 20, 0, 3, 0, 0}}};
        CHECK(detect_exclusions(s, 2).empty());
        const auto ev = detect_exclusions(s, 1);
        REQUIRE(ev.size() == 2);
        CHECK(ev[0].step == 2);
        CHECK(ev[1].step == 4);
    }
    SUBCASE("coexistence shorter than the threshold") {
        GenotypeSeries s{{"A", {0, 5, 5, 5, 5}}, {"B", {50, 20, 0, 0, 0}}};
        CHECK(detect_exclusions(s, 2).size() == 0);
        CHECK(detect_exclusions(s, 1).size() == 1);
    }
    SUBCASE("winner must persist") {
        GenotypeSeries s{{"A", {5, 5, 5, 0, 0}}, {"B", {50, 20, 0, 0, 0}}};
        CHECK(detect_exclusions(s, 2).empty());
        CHECK(detect_exclusions(s, 1).size() == 1);
    }
    SUBCASE("several winners") {
        GenotypeSeries s{{"A", {1, 1, 1, 1}}, {"B", {1, 0, 0, 0}}, {"C", {1, 1, 1, 1}}};
        const auto ev = detect_exclusions(s, 1);
        REQUIRE(ev.size() == 2);
        CHECK(ev[0].winner == "A");
        CHECK(ev[1].winner == "C");
    }
}
