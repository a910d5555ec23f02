#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "ringtherm/errors.hpp"
#include "ringtherm/ingest.hpp"

using namespace ringtherm;

namespace {

struct RenderSpot {
    double amplitude;
    double x;
    double y;
    double width; // 1/e radius
};

std::string render_pgm16(int width, int height, const std::vector<RenderSpot>& spots,
                         double background) {
    std::string out = "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n65535\n";
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            double v = background;
            for (const auto& s : spots) {
                double r2 = (x - s.x) * (x - s.x) + (y - s.y) * (y - s.y);
                v += s.amplitude * std::exp(-r2 / (s.width * s.width));
            }
            long q = std::lround(std::clamp(v, 0.0, 65535.0));
            out.push_back(static_cast<char>((q >> 8) & 0xff));
            out.push_back(static_cast<char>(q & 0xff));
        }
    }
    return out;
}

} // namespace

TEST_CASE("parses an 8-bit binary PGM") {
    std::string bytes = "P5\n2 2\n255\n";
    bytes += '\x00';
    bytes += '\xff';
    bytes += '\x80';
    bytes += '\x01';
    RasterImage img = parse_pgm(bytes);
    CHECK(img.width == 2);
    CHECK(img.height == 2);
    CHECK(img.bit_depth == 8);
    CHECK(img.pixels == std::vector<double>{0.0, 255.0, 128.0, 1.0});
    CHECK(img.at(1, 0) == 255.0);
    CHECK(img.at(0, 1) == 128.0);
}

TEST_CASE("parses 16-bit samples as big-endian") {
    std::string bytes = "P5\n2 1\n65535\n";
    bytes += '\x01';
    bytes += '\x02';
    bytes += '\xff';
    bytes += '\xfe';
    RasterImage img = parse_pgm(bytes);
    CHECK(img.bit_depth == 16);
    CHECK(img.pixels == std::vector<double>{258.0, 65534.0});
}

TEST_CASE("header comments and mixed whitespace are accepted") {
    std::string bytes = "P5 # magic\n# a full comment line\n 2\t1 # trailing\n255\n";
    bytes += '\x05';
    bytes += '\x06';
    RasterImage img = parse_pgm(bytes);
    CHECK(img.width == 2);
    CHECK(img.height == 1);
    CHECK(img.pixels == std::vector<double>{5.0, 6.0});
}

TEST_CASE("malformed PGM data is rejected") {
    CHECK_THROWS_AS(parse_pgm(""), IoError);
    CHECK_THROWS_AS(parse_pgm("P6\n2 2\n255\n±±±±"), IoError);
    CHECK_THROWS_AS(parse_pgm("P5\n2 2\n255\nab"), IoError);        // truncated
    CHECK_THROWS_AS(parse_pgm("P5\n2 2\n"), IoError);               // missing maxval
    CHECK_THROWS_AS(parse_pgm("P5\n0 2\n255\n"), IoError);          // zero width
    CHECK_THROWS_AS(parse_pgm("P5\n2 2\n0\n"), IoError);            // maxval too small
    CHECK_THROWS_AS(parse_pgm("P5\n2 2\n70000\nxxxxxxxx"), IoError); // maxval too large
    CHECK_THROWS_AS(parse_pgm("P5\n2 2\n255"), IoError);            // no payload separator
}

TEST_CASE("images round-trip through the filesystem") {
    auto path = std::filesystem::temp_directory_path() / "ringtherm_test_image.pgm";
    std::string bytes = render_pgm16(32, 32, {{20000.0, 15.5, 16.5, 3.0}}, 100.0);
    {
        std::ofstream out(path, std::ios::binary);
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    }
    RasterImage img = load_image(path);
    CHECK(img.width == 32);
    CHECK(img.height == 32);
    CHECK(img.pixels == parse_pgm(bytes).pixels);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_image(path), IoError);
}

TEST_CASE("two spots with a 3:1 flux ratio split intensity 0.75/0.25") {
    std::vector<RenderSpot> truth{{45000.0, 16.2, 16.8, 3.0}, {15000.0, 47.6, 47.3, 3.0}};
    RasterImage img = parse_pgm(render_pgm16(64, 64, truth, 0.0));
    std::vector<SiteSpot> spots{{16.0, 17.0, 3.0}, {48.0, 47.0, 3.0}};
    auto out = extract_site_intensities(img, spots, BackgroundStrategy::AnnulusMedian);
    REQUIRE(out.size() == 2);
    CHECK(std::abs(out[0] - 0.75) < 0.0075);
    CHECK(std::abs(out[1] - 0.25) < 0.0075);
    CHECK(std::abs(out[0] + out[1] - 1.0) < 1e-12);
}

TEST_CASE("intensity weighs the amplitude by the squared spot width") {
    // equal A * w^2 despite a 4:1 amplitude contrast
    std::vector<RenderSpot> truth{{40000.0, 16.2, 16.5, 2.5}, {10000.0, 47.5, 47.0, 5.0}};
    RasterImage img = parse_pgm(render_pgm16(64, 64, truth, 0.0));
    std::vector<SiteSpot> spots{{16.0, 16.0, 2.5}, {47.0, 47.0, 5.0}};
    auto out = extract_site_intensities(img, spots, BackgroundStrategy::AnnulusMedian);
    CHECK(std::abs(out[0] - 0.5) < 0.005);
    CHECK(std::abs(out[1] - 0.5) < 0.005);
}

TEST_CASE("a uniform background does not shift annulus-subtracted ratios") {
    std::vector<RenderSpot> truth{{45000.0, 16.2, 16.8, 3.0}, {15000.0, 47.6, 47.3, 3.0}};
    std::vector<SiteSpot> spots{{16.0, 17.0, 3.0}, {48.0, 47.0, 3.0}};
    RasterImage clean = parse_pgm(render_pgm16(64, 64, truth, 0.0));
    RasterImage lifted = parse_pgm(render_pgm16(64, 64, truth, 4500.0));
    auto base = extract_site_intensities(clean, spots, BackgroundStrategy::AnnulusMedian);
    auto shifted = extract_site_intensities(lifted, spots, BackgroundStrategy::AnnulusMedian);
    CHECK(std::abs(shifted[0] - base[0]) < 0.005);
    CHECK(std::abs(shifted[0] - 0.75) < 0.0075);
    // without subtraction the lifted image is biased toward the fainter spot
    auto raw = extract_site_intensities(lifted, spots, BackgroundStrategy::None);
    CHECK(raw[0] < shifted[0]);
}

TEST_CASE("subpixel centers are refined within the one-pixel clamp") {
    std::vector<RenderSpot> truth{{30000.0, 24.3, 26.7, 4.0}, {30000.0, 24.0, 55.0, 4.0}};
    RasterImage img = parse_pgm(render_pgm16(80, 80, truth, 0.0));
    std::vector<SiteSpot> spots{{24.0, 27.0, 4.0}, {24.0, 55.0, 4.0}};
    auto out = extract_site_intensities(img, spots, BackgroundStrategy::AnnulusMedian);
    CHECK(std::abs(out[0] - 0.5) < 0.005);
}

TEST_CASE("bad spot lists are rejected before fitting") {
    RasterImage img = parse_pgm(render_pgm16(64, 64, {{1000.0, 32.0, 32.0, 3.0}}, 0.0));
    CHECK_THROWS_AS(extract_site_intensities(img, {}, BackgroundStrategy::None), ConfigError);
    std::vector<SiteSpot> overlapping{{20.0, 20.0, 2.0}, {25.0, 20.0, 2.0}};
    CHECK_THROWS_AS(extract_site_intensities(img, overlapping, BackgroundStrategy::None),
                    ConfigError);
    std::vector<SiteSpot> outside{{3.0, 30.0, 2.0}};
    CHECK_THROWS_AS(extract_site_intensities(img, outside, BackgroundStrategy::None), ConfigError);
    std::vector<SiteSpot> flat{{30.0, 30.0, 0.0}};
    CHECK_THROWS_AS(extract_site_intensities(img, flat, BackgroundStrategy::None), ConfigError);
}
