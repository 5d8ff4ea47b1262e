#pragma once

#include <span>
#include <string>
#include <vector>

namespace relspace {

struct KernelDensity {
    std::vector<double> grid;
    std::vector<double> density;
    double bandwidth = 0.0;
    std::size_t sample_size = 0;
    std::string label;
    bool reflected = false;  // mass reflected at the grid bounds
};

// 0.9 * min(sd, IQR/1.34) * n^(-1/5); falls back to sd when the IQR is zero.
// Returns 0 for fewer than two distinct values.
double silverman_bandwidth(std::span<const double> samples);

struct KdeOptions {
    double lower = 0.0;
    double upper = 1.0;
    std::size_t points = 512;
    double bandwidth = 0.0;  // 0 selects Silverman's rule
    // Reflect kernels at lower/upper; use when the samples' support is bounded
    // by the grid.
    bool reflect = false;
};

// Gaussian kernel density on a uniform grid. Throws EmptySample.
KernelDensity gaussian_kde(std::span<const double> samples, const KdeOptions& options,
                           std::string label = {});

// Grid spanning the samples plus three bandwidths on each side.
KernelDensity gaussian_kde_auto(std::span<const double> samples, std::string label = {},
                                std::size_t points = 512);

double trapezoid_integral(const KernelDensity& kde);
double mode(const KernelDensity& kde);

}  // namespace relspace
