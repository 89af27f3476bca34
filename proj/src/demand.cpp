#include "gridsynth/demand.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gridsynth/errors.hpp"
#include "gridsynth/kernels.hpp"
#include "gridsynth/rng.hpp"

namespace gridsynth {

Sector sector_from_string(const std::string& s) {
    if (s == "residential") return Sector::Residential;
    if (s == "commercial") return Sector::Commercial;
    if (s == "industrial") return Sector::Industrial;
    throw ParseError("unknown sector '" + s + "'");
}

std::string to_string(Sector s) {
    switch (s) {
        case Sector::Residential: return "residential";
        case Sector::Commercial: return "commercial";
        case Sector::Industrial: return "industrial";
    }
    return "?";
}

WeightFitResult fit_bus_weights(const Bus& bus, const std::array<PrototypeProfile, 3>& candidates,
                                double peak_tolerance_mw, double share_tolerance) {
    if (bus.peak_load_mw <= 0.0) {
        throw ValidationError("fit_bus_weights: bus " + std::to_string(bus.id) +
                              " has nonpositive peak load");
    }
    const std::size_t horizon = candidates[0].hourly_mw.size();
    for (int s = 0; s < 3; ++s) {
        if (candidates[s].sector != static_cast<Sector>(s))
            throw ValidationError("fit_bus_weights: candidate " + std::to_string(s) +
                                  " has wrong sector");
        if (candidates[s].hourly_mw.size() != horizon)
            throw ValidationError("fit_bus_weights: candidate horizons differ");
    }

    // Energy shares are invariant to overall scale, so the share constraint
    // fixes the weight direction (w_s proportional to rci_s / energy_s) and
    // the peak constraint fixes the magnitude. Exact when every sector with
    // positive rci has positive energy.
    std::array<double, 3> energy = {0.0, 0.0, 0.0};
    for (int s = 0; s < 3; ++s) {
        energy[s] = std::accumulate(candidates[s].hourly_mw.begin(),
                                    candidates[s].hourly_mw.end(), 0.0);
    }

    WeightFitResult result;
    std::array<double, 3> direction = {0.0, 0.0, 0.0};
    for (int s = 0; s < 3; ++s) {
        if (bus.rci_ratio[s] > 0.0 && energy[s] > 0.0) {
            direction[s] = bus.rci_ratio[s] / energy[s];
        }
    }

    double unit_peak = 0.0;
    for (std::size_t h = 0; h < horizon; ++h) {
        double v = 0.0;
        for (int s = 0; s < 3; ++s) v += direction[s] * candidates[s].hourly_mw[h];
        unit_peak = std::max(unit_peak, v);
    }
    if (unit_peak <= 0.0) {
        // All requested sectors have zero-energy profiles; no scaling can hit
        // the peak. Report the full residual.
        result.peak_residual_mw = bus.peak_load_mw;
        result.share_residual = bus.rci_ratio;
        result.within_tolerance = false;
        return result;
    }

    const double scale = bus.peak_load_mw / unit_peak;
    for (int s = 0; s < 3; ++s) result.weights[s] = direction[s] * scale;

    // Residual report against both stated conditions.
    double total_energy = 0.0;
    std::array<double, 3> sector_energy = {0.0, 0.0, 0.0};
    for (int s = 0; s < 3; ++s) {
        sector_energy[s] = result.weights[s] * energy[s];
        total_energy += sector_energy[s];
    }
    double achieved_peak = 0.0;
    for (std::size_t h = 0; h < horizon; ++h) {
        double v = 0.0;
        for (int s = 0; s < 3; ++s) v += result.weights[s] * candidates[s].hourly_mw[h];
        achieved_peak = std::max(achieved_peak, v);
    }
    result.peak_residual_mw = std::abs(achieved_peak - bus.peak_load_mw);
    for (int s = 0; s < 3; ++s) {
        const double share = total_energy > 0.0 ? sector_energy[s] / total_energy : 0.0;
        result.share_residual[s] = std::abs(share - bus.rci_ratio[s]);
    }
    result.within_tolerance =
        result.peak_residual_mw <= peak_tolerance_mw &&
        *std::max_element(result.share_residual.begin(), result.share_residual.end()) <=
            share_tolerance;
    return result;
}

ScaledLoadSample scale_day_hour(const std::vector<double>& raw_mw, int day_index) {
    const std::size_t m_count = raw_mw.size();
    if (m_count < 2) throw ValidationError("scale_day_hour: need at least 2 minutes");
    const double first = raw_mw.front();
    const double last = raw_mw.back();
    ScaledLoadSample sample;
    sample.day_index = day_index;
    sample.minute_values.resize(m_count);
    const double slope = (last - first) / static_cast<double>(m_count - 1);
    for (std::size_t m = 0; m < m_count; ++m) {
        const double interp = first + slope * static_cast<double>(m);
        if (interp <= 0.0) {
            throw ValidationError("scale_day_hour: nonpositive interpolant at minute " +
                                  std::to_string(m + 1));
        }
        sample.minute_values[m] = raw_mw[m] / interp;
    }
    // Endpoints divide by themselves.
    sample.minute_values.front() = 1.0;
    sample.minute_values.back() = 1.0;
    return sample;
}

namespace {

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        d += diff * diff;
    }
    return d;
}

}  // namespace

LoadPatternLibrary extract_patterns(const std::vector<ScaledLoadSample>& samples, int k,
                                    std::uint64_t seed, int max_iterations,
                                    double rel_tolerance) {
    const int d_count = static_cast<int>(samples.size());
    if (k < 1) throw ValidationError("extract_patterns: K must be >= 1");
    if (d_count < k) {
        throw ValidationError("extract_patterns: K=" + std::to_string(k) + " exceeds sample count " +
                              std::to_string(d_count));
    }
    const std::size_t m_count = samples[0].minute_values.size();
    std::vector<std::vector<double>> points(d_count);
    for (int i = 0; i < d_count; ++i) {
        if (samples[i].minute_values.size() != m_count)
            throw ValidationError("extract_patterns: non-uniform sample length");
        points[i] = samples[i].minute_values;
    }

    // k-means++ seeding plus Lloyd from several deterministic restarts; a
    // single start can stall in a local optimum that merges nearby clusters.
    auto run_once = [&](Rng rng, std::vector<std::vector<double>>& centroids) {
        centroids.clear();
        centroids.push_back(points[rng.next_below(d_count)]);
        std::vector<double> min_d2(d_count, 0.0);
        while (static_cast<int>(centroids.size()) < k) {
            double total = 0.0;
            for (int i = 0; i < d_count; ++i) {
                double best = std::numeric_limits<double>::max();
                for (const auto& c : centroids) best = std::min(best, sq_dist(points[i], c));
                min_d2[i] = best;
                total += best;
            }
            int pick;
            if (total <= 0.0) {
                pick = static_cast<int>(rng.next_below(d_count));
            } else {
                double target = rng.next_double() * total;
                pick = d_count - 1;
                for (int i = 0; i < d_count; ++i) {
                    target -= min_d2[i];
                    if (target <= 0.0) {
                        pick = i;
                        break;
                    }
                }
            }
            centroids.push_back(points[pick]);
        }

        std::vector<int> labels(d_count, 0);
        double prev_wcss = std::numeric_limits<double>::max();
        double wcss = 0.0;
        for (int iter = 0; iter < max_iterations; ++iter) {
            kernels::assign_clusters_auto(points, centroids, labels);

            std::vector<int> counts(k, 0);
            std::vector<std::vector<double>> sums(k, std::vector<double>(m_count, 0.0));
            for (int i = 0; i < d_count; ++i) {
                ++counts[labels[i]];
                for (std::size_t m = 0; m < m_count; ++m) sums[labels[i]][m] += points[i][m];
            }
            for (int c = 0; c < k; ++c) {
                if (counts[c] == 0) {
                    // Re-seed an empty cluster from the sample farthest from
                    // its current centroid.
                    int far_i = 0;
                    double far_d = -1.0;
                    for (int i = 0; i < d_count; ++i) {
                        const double d = sq_dist(points[i], centroids[labels[i]]);
                        if (d > far_d) {
                            far_d = d;
                            far_i = i;
                        }
                    }
                    centroids[c] = points[far_i];
                } else {
                    for (std::size_t m = 0; m < m_count; ++m)
                        centroids[c][m] = sums[c][m] / counts[c];
                }
            }

            wcss = 0.0;
            kernels::assign_clusters_auto(points, centroids, labels);
            for (int i = 0; i < d_count; ++i) wcss += sq_dist(points[i], centroids[labels[i]]);
            if (prev_wcss < std::numeric_limits<double>::max() &&
                std::abs(prev_wcss - wcss) <= rel_tolerance * std::max(prev_wcss, 1e-30)) {
                break;
            }
            prev_wcss = wcss;
        }
        return wcss;
    };

    constexpr int kRestarts = 16;
    std::vector<std::vector<double>> centroids;
    double best_wcss = std::numeric_limits<double>::max();
    for (int restart = 0; restart < kRestarts; ++restart) {
        std::vector<std::vector<double>> candidate;
        const double wcss =
            run_once(Rng(seed).substream(0x6b6d65616e73ULL, restart), candidate);  // "kmeans"
        if (wcss < best_wcss) {
            best_wcss = wcss;
            centroids = std::move(candidate);
        }
    }

    std::vector<int> labels(d_count, 0);
    kernels::assign_clusters_auto(points, centroids, labels);
    LoadPatternLibrary lib;
    lib.cluster_count = k;
    lib.patterns = centroids;
    lib.source_count = d_count;
    lib.probabilities.assign(k, 0.0);
    for (int i = 0; i < d_count; ++i) lib.probabilities[labels[i]] += 1.0;
    for (double& p : lib.probabilities) p /= d_count;
    return lib;
}

double cluster_distance(const LoadPatternLibrary& lib, int k1, int k2, double epsilon) {
    if (k1 < 0 || k2 < 0 || k1 >= lib.cluster_count || k2 >= lib.cluster_count)
        throw ValidationError("cluster_distance: index out of range");
    if (k1 == k2) return epsilon;
    return std::sqrt(sq_dist(lib.patterns[k1], lib.patterns[k2]));
}

std::vector<int> cluster_quotas(const std::vector<double>& probabilities, int zone_count) {
    const int k = static_cast<int>(probabilities.size());
    std::vector<int> quotas(k);
    std::vector<double> remainder(k);
    int total = 0;
    for (int i = 0; i < k; ++i) {
        const double exact = zone_count * probabilities[i];
        quotas[i] = static_cast<int>(std::lround(exact));
        remainder[i] = exact - quotas[i];
        total += quotas[i];
    }
    // Largest-remainder repair toward sum Z.
    while (total != zone_count) {
        if (total < zone_count) {
            int best = 0;
            for (int i = 1; i < k; ++i)
                if (remainder[i] > remainder[best]) best = i;
            ++quotas[best];
            remainder[best] -= 1.0;
            ++total;
        } else {
            int best = -1;
            for (int i = 0; i < k; ++i) {
                if (quotas[i] == 0) continue;
                if (best < 0 || remainder[i] < remainder[best]) best = i;
            }
            if (best < 0) throw ValidationError("cluster_quotas: cannot repair quotas");
            --quotas[best];
            remainder[best] += 1.0;
            --total;
        }
    }
    return quotas;
}

namespace {

struct AssignmentContext {
    std::vector<std::vector<double>> zone_dist;     // D_{z,z'}
    std::vector<std::vector<double>> pattern_dist;  // dist_{k,k'}

    AssignmentContext(const std::vector<Zone>& zones, const LoadPatternLibrary& lib,
                      double epsilon) {
        const std::size_t z_count = zones.size();
        zone_dist.assign(z_count, std::vector<double>(z_count, 0.0));
        for (std::size_t a = 0; a < z_count; ++a)
            for (std::size_t b = a + 1; b < z_count; ++b)
                zone_dist[a][b] = zone_dist[b][a] =
                    great_circle_distance(zones[a].centroid, zones[b].centroid);
        const int k = lib.cluster_count;
        pattern_dist.assign(k, std::vector<double>(k, 0.0));
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b) pattern_dist[a][b] = cluster_distance(lib, a, b, epsilon);
    }

    double entropy(const std::vector<int>& assignment) const {
        const std::size_t z_count = assignment.size();
        double zeta_sum = 0.0;
        std::vector<double> zetas;
        zetas.reserve(z_count * (z_count - 1) / 2);
        for (std::size_t a = 0; a < z_count; ++a) {
            for (std::size_t b = a + 1; b < z_count; ++b) {
                const double q = zone_dist[a][b] / pattern_dist[assignment[a]][assignment[b]];
                zetas.push_back(q);
                zeta_sum += q;
            }
        }
        if (zeta_sum <= 0.0) return 0.0;
        double h = 0.0;
        for (double zeta : zetas) {
            if (zeta <= 0.0) continue;
            const double frac = zeta / zeta_sum;
            h -= frac * std::log10(frac);
        }
        return h;
    }
};

// Feasible baseline: zones in order, each taking the quota-available pattern
// that maximizes the partial-assignment entropy.
std::vector<int> greedy_baseline(const AssignmentContext& ctx, const std::vector<int>& quotas,
                                 std::size_t z_count) {
    std::vector<int> remaining = quotas;
    std::vector<int> assignment;
    for (std::size_t z = 0; z < z_count; ++z) {
        int best_k = -1;
        double best_h = -std::numeric_limits<double>::max();
        for (std::size_t k = 0; k < remaining.size(); ++k) {
            if (remaining[k] == 0) continue;
            assignment.push_back(static_cast<int>(k));
            const double h = ctx.entropy(assignment);
            assignment.pop_back();
            if (h > best_h) {
                best_h = h;
                best_k = static_cast<int>(k);
            }
        }
        assignment.push_back(best_k);
        --remaining[best_k];
    }
    return assignment;
}

std::uint64_t feasible_count(const std::vector<int>& quotas, int z_count, std::uint64_t cap) {
    // Multinomial Z! / prod(Z_k!), capped to avoid overflow.
    std::uint64_t count = 1;
    std::vector<int> pool;
    for (std::size_t k = 0; k < quotas.size(); ++k)
        for (int i = 0; i < quotas[k]; ++i) pool.push_back(static_cast<int>(k));
    // Iteratively: count = C(remaining, q_k) * ...
    long double acc = 1.0L;
    int remaining = z_count;
    for (int q : quotas) {
        for (int i = 0; i < q; ++i) {
            acc = acc * (remaining - i) / (i + 1);
        }
        remaining -= q;
        if (acc > static_cast<long double>(cap) * 2.0L) return cap + 1;
    }
    count = static_cast<std::uint64_t>(acc + 0.5L);
    return count;
}

}  // namespace

double assignment_entropy(const std::vector<Zone>& zones, const LoadPatternLibrary& lib,
                          const std::vector<int>& assignment, double epsilon) {
    return AssignmentContext(zones, lib, epsilon).entropy(assignment);
}

ZoneAssignment assign_patterns(const std::vector<Zone>& zones, const LoadPatternLibrary& lib,
                               std::uint64_t seed, std::uint64_t enumeration_limit) {
    const std::size_t z_count = zones.size();
    if (z_count < 1) throw ValidationError("assign_patterns: need at least one zone");
    std::vector<int> quotas = cluster_quotas(lib.probabilities, static_cast<int>(z_count));

    const AssignmentContext ctx(zones, lib, 1e-6);
    ZoneAssignment result;
    result.cluster_quota = quotas;

    if (feasible_count(quotas, static_cast<int>(z_count), enumeration_limit) <=
        enumeration_limit) {
        // Exhaustive: iterate multiset permutations of the quota vector.
        std::vector<int> perm;
        for (std::size_t k = 0; k < quotas.size(); ++k)
            for (int i = 0; i < quotas[k]; ++i) perm.push_back(static_cast<int>(k));
        std::sort(perm.begin(), perm.end());
        std::vector<int> best = perm;
        double best_h = ctx.entropy(perm);
        while (std::next_permutation(perm.begin(), perm.end())) {
            const double h = ctx.entropy(perm);
            if (h > best_h) {
                best_h = h;
                best = perm;
            }
        }
        result.assignment = best;
        result.objective_value = best_h;
    } else {
        // Simulated annealing over quota-preserving swaps, geometric cooling.
        Rng rng = Rng(seed).substream(0x616e6e65616cULL);  // "anneal"
        std::vector<int> current = greedy_baseline(ctx, quotas, z_count);
        double current_h = ctx.entropy(current);
        std::vector<int> best = current;
        double best_h = current_h;

        double temperature = 0.1;
        const double cooling = 0.9995;
        const int iterations = 50000;
        for (int it = 0; it < iterations; ++it) {
            const std::size_t a = rng.next_below(z_count);
            const std::size_t b = rng.next_below(z_count);
            if (current[a] == current[b]) {
                temperature *= cooling;
                continue;
            }
            std::swap(current[a], current[b]);
            const double h = ctx.entropy(current);
            const double delta = h - current_h;
            if (delta >= 0.0 || rng.next_double() < std::exp(delta / temperature)) {
                current_h = h;
                if (h > best_h) {
                    best_h = h;
                    best = current;
                }
            } else {
                std::swap(current[a], current[b]);
            }
            temperature *= cooling;
        }
        result.assignment = best;
        result.objective_value = best_h;
    }

    // Never worse than the greedy baseline.
    const std::vector<int> baseline = greedy_baseline(ctx, quotas, z_count);
    const double baseline_h = ctx.entropy(baseline);
    if (baseline_h > result.objective_value) {
        result.assignment = baseline;
        result.objective_value = baseline_h;
    }
    return result;
}

std::vector<double> rescale_hour(double load_h, double load_h1,
                                 const std::vector<double>& pattern) {
    if (pattern.size() < 2) throw ValidationError("rescale_hour: pattern too short");
    if (load_h < 0.0 || load_h1 < 0.0)
        throw ValidationError("rescale_hour: negative hourly endpoint");
    std::vector<double> out(pattern.size());
    const double denom = static_cast<double>(pattern.size() - 1);
    for (std::size_t m = 0; m < pattern.size(); ++m) {
        const double base = load_h + (load_h1 - load_h) * static_cast<double>(m) / denom;
        out[m] = base * pattern[m];
    }
    return out;
}

MinutelyBusLoad rescale_to_minutes(const HourlyBusLoad& hourly, int pattern_index,
                                   const LoadPatternLibrary& lib, int start_hour, int hours) {
    if (pattern_index < 0 || pattern_index >= lib.cluster_count)
        throw ValidationError("rescale_to_minutes: bad pattern index");
    if (start_hour + hours + 1 > static_cast<int>(hourly.hourly_mw.size())) {
        throw ValidationError("rescale_to_minutes: hourly series for bus " +
                              std::to_string(hourly.bus_id) + " ends before hour " +
                              std::to_string(start_hour + hours) +
                              "; extend the hourly series by one hour");
    }
    const auto& pattern = lib.patterns[pattern_index];
    const std::size_t m_count = pattern.size();

    std::vector<double> lo(hours), hi(hours);
    std::vector<const std::vector<double>*> patterns(hours, &pattern);
    for (int h = 0; h < hours; ++h) {
        lo[h] = hourly.hourly_mw[start_hour + h];
        hi[h] = hourly.hourly_mw[start_hour + h + 1];
    }
    std::vector<std::vector<double>> rows;
    kernels::rescale_rows_auto(lo, hi, patterns, rows);

    MinutelyBusLoad out;
    out.bus_id = hourly.bus_id;
    out.minute_mw.reserve(static_cast<std::size_t>(hours) * (m_count - 1) + 1);
    for (int h = 0; h < hours; ++h) {
        const std::size_t upto = (h + 1 == hours) ? m_count : m_count - 1;
        for (std::size_t m = 0; m < upto; ++m) out.minute_mw.push_back(rows[h][m]);
    }
    return out;
}

}  // namespace gridsynth
