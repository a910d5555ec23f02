#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace ringtherm {

struct RasterImage {
    int width = 0;
    int height = 0;
    int bit_depth = 8; // 8 or 16
    std::vector<double> pixels; // row-major, raw counts

    double at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
};

struct SiteSpot {
    double x = 0.0; // pixels
    double y = 0.0;
    double radius_1e = 0.0; // spot radius at 1/e of the peak
};

enum class BackgroundStrategy { AnnulusMedian, None };

// Binary PGM (P5), 8-bit or 16-bit big-endian.
RasterImage load_image(const std::filesystem::path& path);
RasterImage parse_pgm(const std::string& bytes);

// Per spot: annulus-median background subtraction, isotropic Gaussian fit
// A exp(-r^2 / w^2) over the window of radius 3 * radius_1e (center refined
// at most 1 pixel), intensity = A * w^2; result normalized to unit sum.
std::vector<double> extract_site_intensities(const RasterImage& image,
                                             const std::vector<SiteSpot>& spots,
                                             BackgroundStrategy background);

} // namespace ringtherm
