#include "ringtherm/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ringtherm/errors.hpp"

namespace ringtherm {

namespace {

// PGM header tokens are separated by whitespace; '#' starts a comment that
// runs to end of line.
int next_header_int(const std::string& bytes, std::size_t& pos, const char* what) {
    while (pos < bytes.size()) {
        char c = bytes[pos];
        if (c == '#') {
            while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            ++pos;
        } else {
            break;
        }
    }
    if (pos >= bytes.size() || !std::isdigit(static_cast<unsigned char>(bytes[pos])))
        throw IoError(std::string("malformed PGM header: missing ") + what);
    long value = 0;
    while (pos < bytes.size() && std::isdigit(static_cast<unsigned char>(bytes[pos]))) {
        value = value * 10 + (bytes[pos] - '0');
        if (value > 1 << 30) throw IoError(std::string("PGM header value out of range: ") + what);
        ++pos;
    }
    return static_cast<int>(value);
}

} // namespace

RasterImage parse_pgm(const std::string& bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5')
        throw IoError("not a binary PGM (P5) file");
    std::size_t pos = 2;
    int width = next_header_int(bytes, pos, "width");
    int height = next_header_int(bytes, pos, "height");
    int maxval = next_header_int(bytes, pos, "maxval");
    if (width < 1 || height < 1) throw IoError("PGM dimensions must be positive");
    if (maxval < 1 || maxval > 65535)
        throw IoError("unsupported PGM maxval " + std::to_string(maxval));
    if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos])))
        throw IoError("malformed PGM header: missing separator before payload");
    ++pos;

    RasterImage image;
    image.width = width;
    image.height = height;
    image.bit_depth = maxval > 255 ? 16 : 8;
    std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    std::size_t bytes_per = image.bit_depth == 16 ? 2 : 1;
    if (bytes.size() - pos < count * bytes_per) throw IoError("truncated PGM payload");

    image.pixels.resize(count);
    const unsigned char* p = reinterpret_cast<const unsigned char*>(bytes.data()) + pos;
    if (bytes_per == 1) {
        for (std::size_t i = 0; i < count; ++i) image.pixels[i] = p[i];
    } else {
        for (std::size_t i = 0; i < count; ++i)
            image.pixels[i] = static_cast<double>((p[2 * i] << 8) | p[2 * i + 1]);
    }
    return image;
}

RasterImage load_image(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open image " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (!in.good() && !in.eof()) throw IoError("read failure on " + path.string());
    return parse_pgm(buffer.str());
}

namespace {

struct Window {
    std::vector<double> value;
    std::vector<double> dx; // pixel x minus spot center x
    std::vector<double> dy;
};

Window cut_window(const RasterImage& image, const SiteSpot& spot,
                  BackgroundStrategy background) {
    double r_fit = 3.0 * spot.radius_1e;
    int x0 = static_cast<int>(std::floor(spot.x - r_fit));
    int x1 = static_cast<int>(std::ceil(spot.x + r_fit));
    int y0 = static_cast<int>(std::floor(spot.y - r_fit));
    int y1 = static_cast<int>(std::ceil(spot.y + r_fit));
    if (x0 < 0 || y0 < 0 || x1 >= image.width || y1 >= image.height)
        throw ConfigError("spot window extends outside the image");

    Window w;
    std::vector<double> annulus;
    for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
            double ddx = static_cast<double>(x) - spot.x;
            double ddy = static_cast<double>(y) - spot.y;
            double r = std::hypot(ddx, ddy);
            if (r <= r_fit) {
                w.value.push_back(image.at(x, y));
                w.dx.push_back(ddx);
                w.dy.push_back(ddy);
                if (r >= 2.5 * spot.radius_1e) annulus.push_back(image.at(x, y));
            }
        }
    }

    if (background == BackgroundStrategy::AnnulusMedian) {
        if (annulus.empty()) throw ComputeError("empty background annulus");
        std::nth_element(annulus.begin(), annulus.begin() + annulus.size() / 2, annulus.end());
        double med = annulus[annulus.size() / 2];
        if (annulus.size() % 2 == 0) {
            double lower = *std::max_element(annulus.begin(), annulus.begin() + annulus.size() / 2);
            med = 0.5 * (med + lower);
        }
        for (double& v : w.value) v -= med;
    }
    return w;
}

struct SpotFit {
    double amplitude;
    double x_offset; // refined center minus nominal center
    double y_offset;
    double width; // 1/e radius of the fitted profile
};

// model A exp(-r^2 / w^2); A solved linearly, (x0, y0, w) by damped
// Gauss-Newton with the center clamped within 1 pixel of the nominal spot
SpotFit fit_gaussian(const Window& win, double radius_guess) {
    double ox = 0.0, oy = 0.0, w = radius_guess;
    double amplitude = 0.0;

    auto model = [&](double ddx, double ddy, double width) {
        double r2 = ddx * ddx + ddy * ddy;
        return std::exp(-r2 / (width * width));
    };
    auto solve_amplitude = [&](double cx, double cy, double width) {
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < win.value.size(); ++i) {
            double m = model(win.dx[i] - cx, win.dy[i] - cy, width);
            num += win.value[i] * m;
            den += m * m;
        }
        if (den == 0.0) throw ComputeError("degenerate spot window");
        return num / den;
    };
    auto sse = [&](double cx, double cy, double width, double amp) {
        double s = 0.0;
        for (std::size_t i = 0; i < win.value.size(); ++i) {
            double e = win.value[i] - amp * model(win.dx[i] - cx, win.dy[i] - cy, width);
            s += e * e;
        }
        return s;
    };

    amplitude = solve_amplitude(ox, oy, w);
    double current = sse(ox, oy, w, amplitude);
    double damping = 1e-3;
    bool converged = false;

    for (int iter = 0; iter < 200 && !converged; ++iter) {
        // normal equations for parameters (cx, cy, w)
        double jtj[3][3] = {};
        double jtr[3] = {};
        for (std::size_t i = 0; i < win.value.size(); ++i) {
            double ddx = win.dx[i] - ox;
            double ddy = win.dy[i] - oy;
            double m = model(ddx, ddy, w);
            double f = amplitude * m;
            double residual = win.value[i] - f;
            double jx = f * 2.0 * ddx / (w * w);
            double jy = f * 2.0 * ddy / (w * w);
            double jw = f * 2.0 * (ddx * ddx + ddy * ddy) / (w * w * w);
            double j[3] = {jx, jy, jw};
            for (int a = 0; a < 3; ++a) {
                jtr[a] += j[a] * residual;
                for (int b = 0; b < 3; ++b) jtj[a][b] += j[a] * j[b];
            }
        }

        bool stepped = false;
        for (int attempt = 0; attempt < 12 && !stepped; ++attempt) {
            double m[3][4];
            for (int a = 0; a < 3; ++a) {
                for (int b = 0; b < 3; ++b) m[a][b] = jtj[a][b];
                m[a][a] *= 1.0 + damping;
                m[a][3] = jtr[a];
            }
            // gaussian elimination, partial pivoting
            bool singular = false;
            for (int col = 0; col < 3 && !singular; ++col) {
                int pivot = col;
                for (int row = col + 1; row < 3; ++row)
                    if (std::abs(m[row][col]) > std::abs(m[pivot][col])) pivot = row;
                if (m[pivot][col] == 0.0) {
                    singular = true;
                    break;
                }
                std::swap(m[col], m[pivot]);
                for (int row = col + 1; row < 3; ++row) {
                    double factor = m[row][col] / m[col][col];
                    for (int k = col; k < 4; ++k) m[row][k] -= factor * m[col][k];
                }
            }
            double step[3] = {};
            if (!singular) {
                for (int row = 2; row >= 0; --row) {
                    double acc = m[row][3];
                    for (int k = row + 1; k < 3; ++k) acc -= m[row][k] * step[k];
                    step[row] = acc / m[row][row];
                }
            }

            double nx = std::clamp(ox + step[0], -1.0, 1.0);
            double ny = std::clamp(oy + step[1], -1.0, 1.0);
            double nw = w + step[2];
            if (!(nw > 0.05 * radius_guess)) nw = 0.05 * radius_guess;
            double namp = solve_amplitude(nx, ny, nw);
            double trial = sse(nx, ny, nw, namp);
            if (!singular && trial <= current) {
                double shift = std::abs(nx - ox) + std::abs(ny - oy) + std::abs(nw - w);
                ox = nx;
                oy = ny;
                w = nw;
                amplitude = namp;
                converged = current - trial <= 1e-12 * (current + 1e-300) || shift < 1e-10;
                current = trial;
                damping = std::max(damping * 0.25, 1e-12);
                stepped = true;
            } else {
                damping *= 8.0;
            }
        }
        if (!stepped) converged = true; // damping exhausted at a local minimum
    }
    if (!converged) throw ComputeError("spot fit did not converge");
    return {amplitude, ox, oy, w};
}

} // namespace

std::vector<double> extract_site_intensities(const RasterImage& image,
                                             const std::vector<SiteSpot>& spots,
                                             BackgroundStrategy background) {
    if (spots.empty()) throw ConfigError("no spots given");
    for (const auto& s : spots)
        if (!(s.radius_1e > 0.0)) throw ConfigError("spot radius must be positive");
    for (std::size_t i = 0; i < spots.size(); ++i) {
        for (std::size_t j = i + 1; j < spots.size(); ++j) {
            double dist = std::hypot(spots[i].x - spots[j].x, spots[i].y - spots[j].y);
            if (dist < 2.0 * (spots[i].radius_1e + spots[j].radius_1e))
                throw ConfigError("spots overlap at twice the 1/e radius");
        }
    }

    std::vector<double> out(spots.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < spots.size(); ++i) {
        Window win = cut_window(image, spots[i], background);
        SpotFit fit = fit_gaussian(win, spots[i].radius_1e);
        if (!(fit.amplitude > 0.0))
            throw ComputeError("spot " + std::to_string(i) + " fits to a nonpositive amplitude");
        out[i] = fit.amplitude * fit.width * fit.width;
        sum += out[i];
    }
    for (double& v : out) v /= sum;
    return out;
}

} // namespace ringtherm
