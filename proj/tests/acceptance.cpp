// Acceptance suite: one self-contained check per release criterion, each
// printing a single PASS/FAIL line. Exit status is nonzero when any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "gridsynth/composition.hpp"
#include "gridsynth/demand.hpp"
#include "gridsynth/emit.hpp"
#include "gridsynth/io.hpp"
#include "gridsynth/kernels.hpp"
#include "gridsynth/pipeline.hpp"
#include "gridsynth/rng.hpp"
#include "gridsynth/tsb.hpp"
#include "gridsynth/wind.hpp"

namespace fs = std::filesystem;
using namespace gridsynth;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int index, const std::string& name, bool ok, const std::string& detail = "") {
    std::printf("[%2d] %-58s %s%s%s\n", index, name.c_str(), ok ? "PASS" : "FAIL",
                detail.empty() ? "" : "  -- ", detail.c_str());
    if (!ok) ++failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t n = a.size();
    double ma = 0, mb = 0;
    for (std::size_t i = 0; i < n; ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double cov = 0, va = 0, vb = 0;
    for (std::size_t i = 0; i < n; ++i) {
        cov += (a[i] - ma) * (b[i] - mb);
        va += (a[i] - ma) * (a[i] - ma);
        vb += (b[i] - mb) * (b[i] - mb);
    }
    return cov / std::sqrt(va * vb);
}

// --- 1: per-unit scaling pins both endpoints to exactly 1 -------------------

void criterion_endpoint_scaling() {
    const auto t0 = Clock::now();
    Rng rng(101);
    bool ok = true;
    for (int trial = 0; trial < 1000 && ok; ++trial) {
        const int m = 2 + static_cast<int>(rng.next_below(120));
        std::vector<double> raw(m);
        for (auto& v : raw) v = 50.0 + 30.0 * rng.next_double();
        const auto sample = scale_day_hour(raw, trial);
        ok = sample.minute_values.front() == 1.0 && sample.minute_values.back() == 1.0;
    }
    const double dt = seconds_since(t0);
    report(1, "per-unit scaling: endpoints exactly 1, 1000 series", ok && dt < 1.0,
           ok ? std::to_string(dt).substr(0, 5) + " s" : "endpoint not 1");
}

// --- 2/3: entropy-optimal pattern assignment --------------------------------

std::vector<Zone> random_zones(int count, Rng& rng) {
    std::vector<Zone> zones(count);
    for (int z = 0; z < count; ++z) {
        zones[z].id = z + 1;
        zones[z].centroid = {28.0 + 4.0 * rng.next_double(), -103.0 + 6.0 * rng.next_double()};
        zones[z].member_bus_ids = {z + 1};
    }
    return zones;
}

LoadPatternLibrary random_library(int k, Rng& rng) {
    LoadPatternLibrary lib;
    lib.cluster_count = k;
    lib.source_count = 50;
    std::vector<double> probs(k);
    double total = 0.0;
    for (auto& p : probs) {
        p = 0.1 + rng.next_double();
        total += p;
    }
    for (auto& p : probs) p /= total;
    lib.probabilities = probs;
    for (int c = 0; c < k; ++c) {
        std::vector<double> pattern(10);
        for (auto& v : pattern) v = 0.8 + 0.4 * rng.next_double();
        lib.patterns.push_back(pattern);
    }
    return lib;
}

double brute_force_entropy(const std::vector<Zone>& zones, const LoadPatternLibrary& lib) {
    const auto quotas = cluster_quotas(lib.probabilities, static_cast<int>(zones.size()));
    std::vector<int> perm;
    for (std::size_t k = 0; k < quotas.size(); ++k) {
        perm.insert(perm.end(), quotas[k], static_cast<int>(k));
    }
    std::sort(perm.begin(), perm.end());
    double best = assignment_entropy(zones, lib, perm);
    while (std::next_permutation(perm.begin(), perm.end())) {
        best = std::max(best, assignment_entropy(zones, lib, perm));
    }
    return best;
}

void criterion_assignment_optimality() {
    const auto t0 = Clock::now();
    Rng rng(202);
    bool ok = true;
    std::string detail;
    for (int trial = 0; trial < 50 && ok; ++trial) {
        const int z = 2 + static_cast<int>(rng.next_below(7));
        const int k = 1 + static_cast<int>(rng.next_below(4));
        const auto zones = random_zones(z, rng);
        const auto lib = random_library(k, rng);
        const auto result = assign_patterns(zones, lib, 1000 + trial);
        const double best = brute_force_entropy(zones, lib);
        if (std::abs(result.objective_value - best) > 1e-12) {
            ok = false;
            detail = "trial " + std::to_string(trial) + ": got " +
                     std::to_string(result.objective_value) + ", optimum " + std::to_string(best);
        }
    }
    const double dt = seconds_since(t0);
    if (dt >= 30.0) {
        ok = false;
        detail = "took " + std::to_string(dt) + " s";
    }
    report(2, "assignment equals exhaustive optimum, 50 instances", ok, detail);
}

void criterion_quota_conservation() {
    Rng rng(303);
    bool ok = true;
    for (int trial = 0; trial < 1000 && ok; ++trial) {
        const int k = 1 + static_cast<int>(rng.next_below(8));
        const int z = 1 + static_cast<int>(rng.next_below(40));
        std::vector<double> probs(k);
        double total = 0.0;
        for (auto& p : probs) {
            p = rng.next_double() + 1e-12;
            total += p;
        }
        for (auto& p : probs) p /= total;
        const auto quotas = cluster_quotas(probs, z);
        const int sum = std::accumulate(quotas.begin(), quotas.end(), 0);
        ok = sum == z && *std::min_element(quotas.begin(), quotas.end()) >= 0;
    }
    report(3, "rounded cluster quotas always sum to the zone count", ok);
}

// --- 4: dynamic load composition table --------------------------------------

void criterion_composition_fidelity() {
    const auto table = default_composition_table();
    bool ok = true;
    Bus bus;
    bus.id = 1;

    const std::map<std::pair<Period, int>, ComponentRow> pure = {
        {{Period::Peak, 0}, {8, 7, 2, 34, 15, 34}},
        {{Period::Peak, 1}, {12, 10, 4, 25, 18, 31}},
        {{Period::Peak, 2}, {13, 22, 16, 0, 27, 22}},
        {{Period::Shoulder, 0}, {8, 7, 2, 25, 19, 39}},
        {{Period::Shoulder, 1}, {12, 10, 4, 20, 23, 31}},
        {{Period::Shoulder, 2}, {13, 22, 16, 0, 27, 22}},
        {{Period::Light, 0}, {10, 8, 2, 0, 40, 40}},
        {{Period::Light, 1}, {12, 10, 4, 5, 38, 31}},
        {{Period::Light, 2}, {13, 22, 16, 0, 27, 22}},
    };
    for (const auto& [key, row] : pure) {
        bus.rci_ratio = {0, 0, 0};
        bus.rci_ratio[key.second] = 1.0;
        const auto comp = compose(bus, key.first, table);
        for (int i = 0; i < 6; ++i) {
            if (comp.fractions[i] != row[i] / 100.0) ok = false;
        }
    }

    Rng rng(404);
    for (int trial = 0; trial < 200 && ok; ++trial) {
        double r = rng.next_double(), c = rng.next_double(), ind = rng.next_double();
        const double total = r + c + ind;
        bus.rci_ratio = {r / total, c / total, ind / total};
        const Period period = static_cast<Period>(trial % 3);
        const auto comp = compose(bus, period, table);
        for (int i = 0; i < 6; ++i) {
            double expected = 0.0;
            for (int s = 0; s < 3; ++s) {
                expected += bus.rci_ratio[s] *
                            table.rows.at({period, static_cast<LoadClass>(s)})[i] / 100.0;
            }
            if (std::abs(comp.fractions[i] - expected) > 1e-12) ok = false;
        }
        double sum = 0.0;
        for (double f : comp.fractions) sum += f;
        if (std::abs(sum - 1.0) > 1e-12) ok = false;
    }
    report(4, "composition: pure classes exact, mixtures within 1e-12", ok);
}

// --- 5: detrend / difference round trip --------------------------------------

void criterion_detrend_roundtrip() {
    Rng rng(505);
    bool ok = true;
    for (int trial = 0; trial < 1000 && ok; ++trial) {
        const int s = 2 + static_cast<int>(rng.next_below(200));
        std::vector<double> w(s);
        for (auto& v : w) v = 6.0 + 2.0 * rng.next_gaussian();
        const auto r = detrend_and_difference(w);
        if (r.detrended.front() != 0.0 || r.detrended.back() != 0.0) {
            ok = false;
            break;
        }
        // Undo both transforms: cumulative sum, then add the endpoint line.
        double cumulative = 0.0;
        const double slope = (w.back() - w.front()) / (s - 1);
        for (int i = 0; i < s; ++i) {
            cumulative += r.differenced[i];
            const double rebuilt = cumulative + w.front() + slope * i;
            if (std::abs(rebuilt - w[i]) > 1e-9) ok = false;
        }
    }
    report(5, "detrend/difference: zero endpoints, 1e-9 round trip", ok);
}

// --- 6: combined speed pins the 5-minute endpoints ---------------------------

void criterion_speed_pinning() {
    Rng rng(606);
    bool ok = true;
    for (int trial = 0; trial < 500 && ok; ++trial) {
        const double v0 = 15.0 * rng.next_double();
        const double v1 = 15.0 * rng.next_double();
        const int steps = 2 + static_cast<int>(rng.next_below(40));
        std::vector<double> variation(steps, 0.0);
        for (int s = 1; s + 1 < steps; ++s) variation[s] = 2.0 * rng.next_gaussian();
        const auto combined = combine_speed(v0, v1, variation);
        ok = combined.front() == v0 && combined.back() == v1 &&
             *std::min_element(combined.begin(), combined.end()) >= 0.0;
    }
    report(6, "combined wind speed pins both 5-minute endpoints", ok);
}

// --- 7: turbine power curve ---------------------------------------------------

void criterion_power_curve() {
    TurbineCurve t;
    bool ok = std::abs(power_output(t, t.v_mid) - 0.5) < 1e-9 &&
              std::abs(power_output(t, t.v_rated) - t.beta) < 1e-9 &&
              power_output(t, t.v_furl) < 1e-9 && power_output(t, t.v_furl + 5.0) == 0.0;
    for (int i = 0; i <= 10000 && ok; ++i) {
        const double p = power_output(t, 40.0 * i / 10000.0);
        ok = p >= 0.0 && p <= 1.0;
    }
    report(7, "power curve anchors within 1e-9, bounded on 1e4 grid", ok);
}

// --- 8: measurement noise level ------------------------------------------------

void criterion_noise_level() {
    std::vector<std::vector<double>> values(1, std::vector<double>(10000, 100.0));
    kernels::apply_noise_auto(values, 0.01, 808);
    double mean = 0.0;
    for (double v : values[0]) mean += v;
    mean /= values[0].size();
    double var = 0.0;
    for (double v : values[0]) var += (v - mean) * (v - mean);
    const double sigma_rel = std::sqrt(var / values[0].size()) / 100.0;
    const bool ok = sigma_rel > 0.009 && sigma_rel < 0.011;
    report(8, "1% multiplicative noise: sample sigma in [0.009, 0.011]", ok,
           "sigma=" + std::to_string(sigma_rel));
}

// --- 9: spatial correlation of farm variations --------------------------------

void criterion_spatial_correlation(const GridCase& grid_case) {
    // Fixture farms: 1 and 2 are 50 km apart, 1 and 3 are 700 km apart.
    const auto lattice = build_reference_lattice(grid_case, grid_case.correlation_curve);
    SigmaDistribution psi;
    psi.samples = {1.0};
    const auto reference = synthesize_reference_variations(lattice, psi, 10000, 909);
    const auto farms = farm_variations(lattice, reference);

    auto steps_of = [](const std::vector<double>& series) {
        std::vector<double> d;
        for (std::size_t s = 1; s < series.size(); ++s) d.push_back(series[s] - series[s - 1]);
        return d;
    };
    const double r_near = pearson(steps_of(farms[0]), steps_of(farms[1]));
    const double r_far = pearson(steps_of(farms[0]), steps_of(farms[2]));
    const bool ok = r_near > 0.5 && std::abs(r_far) < 0.1;
    report(9, "variation correlation: 50 km > 0.5, 700 km within 0.1", ok,
           "near=" + std::to_string(r_near) + " far=" + std::to_string(r_far));
}

// --- 10: end-to-end emission on the bundled case -------------------------------

void criterion_emission(const std::string& dir, const PipelineConfig& base_config) {
    const auto t0 = Clock::now();
    PipelineConfig config = base_config;
    config.output_dir = (fs::path(dir) / "acc_emit").string();
    cmd_demand(config);
    cmd_wind(config);
    cmd_emit(config);

    const GridCase grid_case = load_grid_case(config.case_path);
    std::map<int, std::vector<double>> minutely, wind;
    for (const auto& bus : grid_case.buses) {
        minutely[bus.id] = read_minutely_load(
            fs::path(config.output_dir) / ("load_bus" + std::to_string(bus.id) + ".csv"));
    }
    for (const auto& farm : grid_case.wind_farms) {
        wind[farm.id] = read_farm_power(
            fs::path(config.output_dir) / ("wind_farm" + std::to_string(farm.id) + ".csv"));
    }
    Timeline timeline;
    timeline.start_utc_us = parse_utc_timestamp(config.start_utc);
    timeline.step_seconds = config.step_seconds;
    timeline.horizon_steps = config.horizon_steps;
    EmitOptions options;
    options.noise_sigma = config.noise_sigma;
    options.power_factor = config.power_factor;
    const EmitResult result =
        run_emission(grid_case, minutely, wind, timeline, options, Rng::mix(config.seed, 4));

    bool ok = static_cast<int>(result.frames.size()) == config.horizon_steps;
    std::string detail;
    for (const auto& frame : result.frames) {
        if (!frame.converged || frame.max_mismatch_pu >= 1e-8) {
            ok = false;
            detail = "mismatch " + std::to_string(frame.max_mismatch_pu);
        }
    }

    // The written stream must round-trip bit for bit.
    const auto tsb_path = fs::path(config.output_dir) / "measurements.tsb";
    const TsbFile reread = read_tsb(tsb_path.string());
    TsbFile rewritten_src = reread;
    const auto copy_path = fs::path(config.output_dir) / "measurements_copy.tsb";
    write_tsb(rewritten_src, copy_path.string());
    if (read_text_file(tsb_path.string()) != read_text_file(copy_path.string())) {
        ok = false;
        detail = "stream round trip not bit-identical";
    }

    const double dt = seconds_since(t0);
    if (dt >= 10.0) {
        ok = false;
        detail = "took " + std::to_string(dt) + " s";
    }
    report(10, "bundled case: 41 converged frames, 1e-8 balance, <10 s", ok, detail);
}

// --- 11: full pipeline determinism ---------------------------------------------

void criterion_determinism(const std::string& dir, const PipelineConfig& base_config) {
    PipelineConfig a = base_config;
    PipelineConfig b = base_config;
    a.output_dir = (fs::path(dir) / "acc_all_a").string();
    b.output_dir = (fs::path(dir) / "acc_all_b").string();
    cmd_all(a);
    cmd_all(b);

    bool ok = true;
    std::string detail;
    std::vector<fs::path> names;
    for (const auto& entry : fs::directory_iterator(a.output_dir)) {
        names.push_back(entry.path().filename());
    }
    std::sort(names.begin(), names.end());
    for (const auto& name : names) {
        const auto pa = fs::path(a.output_dir) / name;
        const auto pb = fs::path(b.output_dir) / name;
        if (!fs::exists(pb) || read_text_file(pa.string()) != read_text_file(pb.string())) {
            ok = false;
            detail = name.string() + " differs";
        }
    }
    if (names.empty()) ok = false;
    report(11, "two identical full runs produce byte-identical trees", ok, detail);
}

}  // namespace

int main() {
    const std::string dir = (fs::temp_directory_path() / "gridsynth_acceptance").string();
    fs::remove_all(dir);
    make_fixtures(dir, 7);
    const PipelineConfig config = load_config((fs::path(dir) / "config.json").string());
    const GridCase grid_case = load_grid_case(config.case_path);

    criterion_endpoint_scaling();
    criterion_assignment_optimality();
    criterion_quota_conservation();
    criterion_composition_fidelity();
    criterion_detrend_roundtrip();
    criterion_speed_pinning();
    criterion_power_curve();
    criterion_noise_level();
    criterion_spatial_correlation(grid_case);
    criterion_emission(dir, config);
    criterion_determinism(dir, config);

    if (failures == 0) {
        std::printf("all 11 acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d acceptance criteria FAILED\n", failures);
    return 1;
}
