#pragma once

#include <cstdint>
#include <vector>

namespace gridsynth::kernels {

// Data-parallel inner loops, each in a serial reference version and an
// OpenMP version. Both produce bit-identical results; tests compare them and
// the benchmark target times them. Library code calls the *_auto entry,
// which picks the OpenMP version when compiled with it.

// Nearest-centroid assignment (squared Euclidean, ties to the lowest index).
void assign_clusters_serial(const std::vector<std::vector<double>>& points,
                            const std::vector<std::vector<double>>& centroids,
                            std::vector<int>& labels);
void assign_clusters_omp(const std::vector<std::vector<double>>& points,
                         const std::vector<std::vector<double>>& centroids,
                         std::vector<int>& labels);
void assign_clusters_auto(const std::vector<std::vector<double>>& points,
                          const std::vector<std::vector<double>>& centroids,
                          std::vector<int>& labels);

// Minutely re-scaling of many (hourly endpoint pair, pattern) rows at once:
// out[i][m] = (lo[i] + (hi[i]-lo[i]) * m/(M-1)) * pattern[i][m].
void rescale_rows_serial(const std::vector<double>& lo, const std::vector<double>& hi,
                         const std::vector<const std::vector<double>*>& patterns,
                         std::vector<std::vector<double>>& out);
void rescale_rows_omp(const std::vector<double>& lo, const std::vector<double>& hi,
                      const std::vector<const std::vector<double>*>& patterns,
                      std::vector<std::vector<double>>& out);
void rescale_rows_auto(const std::vector<double>& lo, const std::vector<double>& hi,
                       const std::vector<const std::vector<double>*>& patterns,
                       std::vector<std::vector<double>>& out);

// Weighted mixing of reference-point variation series into per-farm series:
// farm[e][s] = sum_n w[e][n] * ref[n][s] / omega[e].
void mix_variations_serial(const std::vector<std::vector<double>>& weights,
                           const std::vector<std::vector<double>>& reference,
                           std::vector<std::vector<double>>& farms);
void mix_variations_omp(const std::vector<std::vector<double>>& weights,
                        const std::vector<std::vector<double>>& reference,
                        std::vector<std::vector<double>>& farms);
void mix_variations_auto(const std::vector<std::vector<double>>& weights,
                         const std::vector<std::vector<double>>& reference,
                         std::vector<std::vector<double>>& farms);

// Multiplicative Gaussian measurement noise, counter-based per (row, step) so
// the result does not depend on the thread count.
void apply_noise_serial(std::vector<std::vector<double>>& values, double sigma,
                        std::uint64_t seed);
void apply_noise_omp(std::vector<std::vector<double>>& values, double sigma,
                     std::uint64_t seed);
void apply_noise_auto(std::vector<std::vector<double>>& values, double sigma,
                      std::uint64_t seed);

}  // namespace gridsynth::kernels
