#include <algorithm>
#include <numeric>

#include <doctest.h>

#include "gridsynth/demand.hpp"
#include "gridsynth/rng.hpp"

using namespace gridsynth;

namespace {

std::vector<Zone> grid_zones(int count, double spread_deg = 1.0) {
    std::vector<Zone> zones(count);
    for (int z = 0; z < count; ++z) {
        zones[z].id = z + 1;
        zones[z].centroid = {30.0 + spread_deg * (z / 4), -100.0 + spread_deg * (z % 4)};
        zones[z].member_bus_ids = {z + 1};
    }
    return zones;
}

LoadPatternLibrary library_with(std::vector<double> probs, Rng& rng) {
    LoadPatternLibrary lib;
    lib.cluster_count = static_cast<int>(probs.size());
    lib.probabilities = std::move(probs);
    lib.source_count = 100;
    for (int k = 0; k < lib.cluster_count; ++k) {
        std::vector<double> pattern(8);
        for (auto& v : pattern) v = 1.0 + 0.3 * rng.next_double() + 0.2 * k;
        lib.patterns.push_back(pattern);
    }
    return lib;
}

// Brute-force oracle: evaluate every feasible assignment.
double brute_force_best(const std::vector<Zone>& zones, const LoadPatternLibrary& lib) {
    const std::vector<int> quotas = cluster_quotas(lib.probabilities, static_cast<int>(zones.size()));
    std::vector<int> perm;
    for (std::size_t k = 0; k < quotas.size(); ++k) {
        for (int i = 0; i < quotas[k]; ++i) perm.push_back(static_cast<int>(k));
    }
    std::sort(perm.begin(), perm.end());
    double best = assignment_entropy(zones, lib, perm);
    while (std::next_permutation(perm.begin(), perm.end())) {
        best = std::max(best, assignment_entropy(zones, lib, perm));
    }
    return best;
}

}  // namespace

TEST_CASE("quota repair conserves the zone count") {
    Rng rng(17);
    for (int trial = 0; trial < 1000; ++trial) {
        const int k = 1 + static_cast<int>(rng.next_below(6));
        const int z = 1 + static_cast<int>(rng.next_below(20));
        std::vector<double> probs(k);
        double total = 0.0;
        for (auto& p : probs) {
            p = rng.next_double() + 1e-9;
            total += p;
        }
        for (auto& p : probs) p /= total;
        const auto quotas = cluster_quotas(probs, z);
        CHECK(std::accumulate(quotas.begin(), quotas.end(), 0) == z);
        for (int q : quotas) CHECK(q >= 0);
    }
}

TEST_CASE("K = 1 assigns the single pattern everywhere") {
    Rng rng(5);
    const auto zones = grid_zones(6);
    const auto lib = library_with({1.0}, rng);
    const auto result = assign_patterns(zones, lib, 3);
    CHECK(result.assignment == std::vector<int>(6, 0));
}

TEST_CASE("Z=2 K=2 enumerable by hand") {
    Rng rng(6);
    const auto zones = grid_zones(2);
    const auto lib = library_with({0.5, 0.5}, rng);
    const auto result = assign_patterns(zones, lib, 3);
    // Both feasible assignments have a single zeta term, hence equal entropy 0;
    // the tie goes to the first (lexicographically smallest) assignment vector.
    CHECK(result.objective_value == doctest::Approx(0.0));
    CHECK(result.assignment == std::vector<int>{0, 1});
}

TEST_CASE("Z=8 K=4 quota (2,2,2,2): solver matches exhaustive enumeration") {
    Rng rng(7);
    const auto zones = grid_zones(8);
    const auto lib = library_with({0.25, 0.25, 0.25, 0.25}, rng);
    const auto result = assign_patterns(zones, lib, 11);
    CHECK(result.cluster_quota == std::vector<int>{2, 2, 2, 2});
    CHECK(result.objective_value == doctest::Approx(brute_force_best(zones, lib)).epsilon(1e-12));
}

TEST_CASE("feasibility and optimality on random small instances") {
    Rng rng(31337);
    for (int trial = 0; trial < 25; ++trial) {
        const int z = 2 + static_cast<int>(rng.next_below(7));  // Z <= 8
        const int k = 1 + static_cast<int>(rng.next_below(4));  // K <= 4
        const auto zones = grid_zones(z, 0.5 + rng.next_double());
        std::vector<double> probs(k);
        double total = 0.0;
        for (auto& p : probs) {
            p = 0.1 + rng.next_double();
            total += p;
        }
        for (auto& p : probs) p /= total;
        const auto lib = library_with(probs, rng);
        const auto result = assign_patterns(zones, lib, trial);

        // Eq-style feasibility: each zone exactly one pattern, column sums
        // equal quotas.
        REQUIRE(result.assignment.size() == static_cast<std::size_t>(z));
        std::vector<int> col(k, 0);
        for (int a : result.assignment) {
            REQUIRE(a >= 0);
            REQUIRE(a < k);
            ++col[a];
        }
        CHECK(col == result.cluster_quota);
        CHECK(result.objective_value ==
              doctest::Approx(assignment_entropy(zones, lib, result.assignment)).epsilon(1e-12));
        CHECK(result.objective_value ==
              doctest::Approx(brute_force_best(zones, lib)).epsilon(1e-12));
    }
}

TEST_CASE("simulated annealing path stays feasible and beats nothing worse than greedy") {
    Rng rng(99);
    const auto zones = grid_zones(12, 0.8);
    const auto lib = library_with({0.25, 0.25, 0.25, 0.25}, rng);
    // Force the annealing path with a tiny enumeration limit.
    const auto result = assign_patterns(zones, lib, 4, /*enumeration_limit=*/10);
    std::vector<int> col(4, 0);
    for (int a : result.assignment) ++col[a];
    CHECK(col == result.cluster_quota);
    // Compare with the enumerated optimum (12 zones, 369600 assignments).
    const auto exact = assign_patterns(zones, lib, 4);
    CHECK(result.objective_value <= exact.objective_value + 1e-12);
    CHECK(result.objective_value >= 0.97 * exact.objective_value);
}

TEST_CASE("determinism: identical seeds give identical assignments") {
    Rng rng(123);
    const auto zones = grid_zones(10, 0.7);
    const auto lib = library_with({0.3, 0.3, 0.2, 0.2}, rng);
    const auto a = assign_patterns(zones, lib, 2718, 10);
    const auto b = assign_patterns(zones, lib, 2718, 10);
    CHECK(a.assignment == b.assignment);
    CHECK(a.objective_value == b.objective_value);
}
