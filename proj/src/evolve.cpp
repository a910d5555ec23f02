#include "ringtherm/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ringtherm/errors.hpp"

namespace ringtherm {

namespace {

double frobenius(const std::vector<double>& a) {
    double s = 0.0;
    for (double v : a) s += v * v;
    return std::sqrt(s);
}

double off_diagonal_frobenius(const std::vector<double>& a, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) {
                double v = a[static_cast<std::size_t>(i) * n + j];
                s += v * v;
            }
    return std::sqrt(s);
}

} // namespace

Spectrum eigendecompose(const Hamiltonian& h) {
    int n = h.n;
    if (n < 1) throw ComputeError("empty matrix");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (h.at(i, j) != h.at(j, i)) throw ComputeError("matrix not symmetric");

    std::vector<double> a = h.a;
    std::vector<double> v(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i) * n + i] = 1.0;

    const double target = 1e-12 * frobenius(a);
    const int max_sweeps = 100;
    bool converged = n == 1;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = a[static_cast<std::size_t>(p) * n + q];
                if (apq == 0.0) continue;
                double app = a[static_cast<std::size_t>(p) * n + p];
                double aqq = a[static_cast<std::size_t>(q) * n + q];
                double theta = (aqq - app) / (2.0 * apq);
                double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                if (theta < 0.0) t = -t;
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;

                for (int k = 0; k < n; ++k) {
                    double akp = a[static_cast<std::size_t>(k) * n + p];
                    double akq = a[static_cast<std::size_t>(k) * n + q];
                    a[static_cast<std::size_t>(k) * n + p] = c * akp - s * akq;
                    a[static_cast<std::size_t>(k) * n + q] = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = a[static_cast<std::size_t>(p) * n + k];
                    double aqk = a[static_cast<std::size_t>(q) * n + k];
                    a[static_cast<std::size_t>(p) * n + k] = c * apk - s * aqk;
                    a[static_cast<std::size_t>(q) * n + k] = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    double vkp = v[static_cast<std::size_t>(k) * n + p];
                    double vkq = v[static_cast<std::size_t>(k) * n + q];
                    v[static_cast<std::size_t>(k) * n + p] = c * vkp - s * vkq;
                    v[static_cast<std::size_t>(k) * n + q] = s * vkp + c * vkq;
                }
            }
        }
        converged = off_diagonal_frobenius(a, n) < target || target == 0.0;
    }
    if (!converged) throw ComputeError("eigendecomposition did not converge in 100 sweeps");

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        return a[static_cast<std::size_t>(x) * n + x] < a[static_cast<std::size_t>(y) * n + y];
    });

    Spectrum s;
    s.n = n;
    s.eigenvalues.resize(static_cast<std::size_t>(n));
    s.eigenvectors.resize(static_cast<std::size_t>(n) * n);
    for (int k = 0; k < n; ++k) {
        int src = order[static_cast<std::size_t>(k)];
        s.eigenvalues[static_cast<std::size_t>(k)] = a[static_cast<std::size_t>(src) * n + src];
        for (int i = 0; i < n; ++i)
            s.eigenvectors[static_cast<std::size_t>(i) * n + k] =
                v[static_cast<std::size_t>(i) * n + src];
    }
    return s;
}

FieldState single_site_excitation(int n, int site) {
    if (site < 0 || site >= n) throw ConfigError("excited site out of range");
    FieldState psi;
    psi.amplitudes.assign(static_cast<std::size_t>(n), {0.0, 0.0});
    psi.amplitudes[static_cast<std::size_t>(site)] = {1.0, 0.0};
    psi.z = 0.0;
    return psi;
}

FieldState propagate(const Spectrum& s, const FieldState& psi0, double z) {
    int n = s.n;
    if (static_cast<int>(psi0.amplitudes.size()) != n)
        throw ComputeError("state dimension mismatch");
    if (z < 0.0) throw ConfigError("propagation distance must be nonnegative");

    // modal amplitudes b = V^T psi0
    std::vector<std::complex<double>> b(static_cast<std::size_t>(n), {0.0, 0.0});
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            b[static_cast<std::size_t>(k)] += s.vec(i, k) * psi0.amplitudes[static_cast<std::size_t>(i)];

    for (int k = 0; k < n; ++k) {
        double phase = s.eigenvalues[static_cast<std::size_t>(k)] * z;
        b[static_cast<std::size_t>(k)] *= std::complex<double>(std::cos(phase), std::sin(phase));
    }

    FieldState out;
    out.amplitudes.assign(static_cast<std::size_t>(n), {0.0, 0.0});
    out.z = psi0.z + z;
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            out.amplitudes[static_cast<std::size_t>(i)] += s.vec(i, k) * b[static_cast<std::size_t>(k)];
    return out;
}

FieldState propagate(const Hamiltonian& h, const FieldState& psi0, double z) {
    return propagate(eigendecompose(h), psi0, z);
}

FieldState propagate_stepper(const Hamiltonian& h, const FieldState& psi0, double z, double dz) {
    if (!(dz > 0.0)) throw ConfigError("step must be positive");
    if (dz > z && z > 0.0) throw ConfigError("step exceeds propagation distance");
    int n = h.n;
    if (static_cast<int>(psi0.amplitudes.size()) != n)
        throw ComputeError("state dimension mismatch");

    long steps = z > 0.0 ? static_cast<long>(std::ceil(z / dz - 1e-12)) : 0;
    double hstep = steps > 0 ? z / static_cast<double>(steps) : 0.0;

    std::vector<std::complex<double>> psi = psi0.amplitudes;
    std::vector<std::complex<double>> k1(psi.size()), k2(psi.size()), k3(psi.size()),
        k4(psi.size()), tmp(psi.size());

    const std::complex<double> ih(0.0, 1.0);
    auto rhs = [&](const std::vector<std::complex<double>>& in,
                   std::vector<std::complex<double>>& out) {
        for (int i = 0; i < n; ++i) {
            std::complex<double> acc(0.0, 0.0);
            for (int j = 0; j < n; ++j) acc += h.at(i, j) * in[static_cast<std::size_t>(j)];
            out[static_cast<std::size_t>(i)] = ih * acc;
        }
    };

    double norm0 = 0.0;
    for (const auto& c : psi) norm0 += std::norm(c);

    for (long it = 0; it < steps; ++it) {
        rhs(psi, k1);
        for (std::size_t i = 0; i < psi.size(); ++i) tmp[i] = psi[i] + 0.5 * hstep * k1[i];
        rhs(tmp, k2);
        for (std::size_t i = 0; i < psi.size(); ++i) tmp[i] = psi[i] + 0.5 * hstep * k2[i];
        rhs(tmp, k3);
        for (std::size_t i = 0; i < psi.size(); ++i) tmp[i] = psi[i] + hstep * k3[i];
        rhs(tmp, k4);
        for (std::size_t i = 0; i < psi.size(); ++i)
            psi[i] += hstep / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }

    double norm1 = 0.0;
    for (const auto& c : psi) norm1 += std::norm(c);
    if (std::abs(norm1 - norm0) > 1e-6)
        throw ComputeError("stepper norm drift " + std::to_string(std::abs(norm1 - norm0)) +
                           " exceeds 1e-6; reduce the step");

    FieldState out;
    out.amplitudes = std::move(psi);
    out.z = psi0.z + z;
    return out;
}

std::vector<double> intensities(const FieldState& psi) {
    std::vector<double> out(psi.amplitudes.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::norm(psi.amplitudes[i]);
    return out;
}

double norm_squared(const FieldState& psi) {
    double s = 0.0;
    for (const auto& c : psi.amplitudes) s += std::norm(c);
    return s;
}

} // namespace ringtherm
