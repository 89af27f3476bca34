#include "gridsynth/kernels.hpp"

#include <cstddef>

#include "gridsynth/rng.hpp"

namespace gridsynth::kernels {

namespace {

int nearest_centroid(const std::vector<double>& p,
                     const std::vector<std::vector<double>>& centroids) {
    int best = 0;
    double best_d = -1.0;
    for (std::size_t k = 0; k < centroids.size(); ++k) {
        double d = 0.0;
        const auto& c = centroids[k];
        for (std::size_t m = 0; m < p.size(); ++m) {
            const double diff = p[m] - c[m];
            d += diff * diff;
        }
        if (best_d < 0.0 || d < best_d) {
            best_d = d;
            best = static_cast<int>(k);
        }
    }
    return best;
}

void rescale_one(double lo, double hi, const std::vector<double>& pattern,
                 std::vector<double>& out) {
    const std::size_t m_count = pattern.size();
    out.resize(m_count);
    const double denom = static_cast<double>(m_count - 1);
    for (std::size_t m = 0; m < m_count; ++m) {
        const double base = lo + (hi - lo) * static_cast<double>(m) / denom;
        out[m] = base * pattern[m];
    }
}

void mix_one(const std::vector<double>& w, const std::vector<std::vector<double>>& reference,
             std::vector<double>& farm) {
    const std::size_t steps = reference.empty() ? 0 : reference[0].size();
    farm.assign(steps, 0.0);
    double omega = 0.0;
    for (double wn : w) omega += wn;
    for (std::size_t n = 0; n < reference.size(); ++n) {
        if (w[n] == 0.0) continue;
        const double f = w[n] / omega;
        for (std::size_t s = 0; s < steps; ++s) farm[s] += f * reference[n][s];
    }
}

double noise_factor(std::uint64_t seed, std::uint64_t row, std::uint64_t step, double sigma) {
    Rng rng(Rng::mix(Rng::mix(seed, row), step));
    return 1.0 + sigma * rng.next_gaussian();
}

}  // namespace

void assign_clusters_serial(const std::vector<std::vector<double>>& points,
                            const std::vector<std::vector<double>>& centroids,
                            std::vector<int>& labels) {
    labels.resize(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        labels[i] = nearest_centroid(points[i], centroids);
    }
}

void assign_clusters_omp(const std::vector<std::vector<double>>& points,
                         const std::vector<std::vector<double>>& centroids,
                         std::vector<int>& labels) {
    labels.resize(points.size());
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        labels[i] = nearest_centroid(points[i], centroids);
    }
}

void assign_clusters_auto(const std::vector<std::vector<double>>& points,
                          const std::vector<std::vector<double>>& centroids,
                          std::vector<int>& labels) {
#ifdef _OPENMP
    assign_clusters_omp(points, centroids, labels);
#else
    assign_clusters_serial(points, centroids, labels);
#endif
}

void rescale_rows_serial(const std::vector<double>& lo, const std::vector<double>& hi,
                         const std::vector<const std::vector<double>*>& patterns,
                         std::vector<std::vector<double>>& out) {
    out.resize(lo.size());
    for (std::size_t i = 0; i < lo.size(); ++i) {
        rescale_one(lo[i], hi[i], *patterns[i], out[i]);
    }
}

void rescale_rows_omp(const std::vector<double>& lo, const std::vector<double>& hi,
                      const std::vector<const std::vector<double>*>& patterns,
                      std::vector<std::vector<double>>& out) {
    out.resize(lo.size());
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(lo.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        rescale_one(lo[i], hi[i], *patterns[i], out[i]);
    }
}

void rescale_rows_auto(const std::vector<double>& lo, const std::vector<double>& hi,
                       const std::vector<const std::vector<double>*>& patterns,
                       std::vector<std::vector<double>>& out) {
#ifdef _OPENMP
    rescale_rows_omp(lo, hi, patterns, out);
#else
    rescale_rows_serial(lo, hi, patterns, out);
#endif
}

void mix_variations_serial(const std::vector<std::vector<double>>& weights,
                           const std::vector<std::vector<double>>& reference,
                           std::vector<std::vector<double>>& farms) {
    farms.resize(weights.size());
    for (std::size_t e = 0; e < weights.size(); ++e) {
        mix_one(weights[e], reference, farms[e]);
    }
}

void mix_variations_omp(const std::vector<std::vector<double>>& weights,
                        const std::vector<std::vector<double>>& reference,
                        std::vector<std::vector<double>>& farms) {
    farms.resize(weights.size());
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(weights.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t e = 0; e < n; ++e) {
        mix_one(weights[e], reference, farms[e]);
    }
}

void mix_variations_auto(const std::vector<std::vector<double>>& weights,
                         const std::vector<std::vector<double>>& reference,
                         std::vector<std::vector<double>>& farms) {
#ifdef _OPENMP
    mix_variations_omp(weights, reference, farms);
#else
    mix_variations_serial(weights, reference, farms);
#endif
}

void apply_noise_serial(std::vector<std::vector<double>>& values, double sigma,
                        std::uint64_t seed) {
    for (std::size_t r = 0; r < values.size(); ++r) {
        for (std::size_t s = 0; s < values[r].size(); ++s) {
            values[r][s] *= noise_factor(seed, r, s, sigma);
        }
    }
}

void apply_noise_omp(std::vector<std::vector<double>>& values, double sigma,
                     std::uint64_t seed) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(values.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t r = 0; r < n; ++r) {
        for (std::size_t s = 0; s < values[r].size(); ++s) {
            values[r][s] *= noise_factor(seed, static_cast<std::uint64_t>(r), s, sigma);
        }
    }
}

void apply_noise_auto(std::vector<std::vector<double>>& values, double sigma,
                      std::uint64_t seed) {
#ifdef _OPENMP
    apply_noise_omp(values, sigma, seed);
#else
    apply_noise_serial(values, sigma, seed);
#endif
}

}  // namespace gridsynth::kernels
