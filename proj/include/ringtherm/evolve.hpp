#pragma once

#include <complex>
#include <vector>

#include "ringtherm/lattice.hpp"

namespace ringtherm {

// Complex site amplitudes at propagation distance z (mm).
struct FieldState {
    std::vector<std::complex<double>> amplitudes;
    double z = 0.0;
};

// Full spectral decomposition, eigenvalues ascending, column k of
// eigenvectors paired with eigenvalue k.
struct Spectrum {
    std::vector<double> eigenvalues;   // mm^-1
    std::vector<double> eigenvectors;  // row-major n*n, columns orthonormal
    int n = 0;

    double vec(int i, int k) const { return eigenvectors[static_cast<std::size_t>(i) * n + k]; }
};

// Cyclic Jacobi rotations; converged when the off-diagonal Frobenius norm
// drops below 1e-12 times the matrix norm, capped at 100 sweeps.
Spectrum eigendecompose(const Hamiltonian& h);

FieldState single_site_excitation(int n, int site);

// psi(z) = V diag(exp(i lambda_k z)) V^T psi(0)
FieldState propagate(const Hamiltonian& h, const FieldState& psi0, double z);
FieldState propagate(const Spectrum& s, const FieldState& psi0, double z);

// Fixed-step fourth-order integration of dpsi/dz = iH psi, the independent
// check on the spectral path. Norm drift beyond 1e-6 raises ComputeError.
FieldState propagate_stepper(const Hamiltonian& h, const FieldState& psi0, double z, double dz);

std::vector<double> intensities(const FieldState& psi);

double norm_squared(const FieldState& psi);

} // namespace ringtherm
