#pragma once

#include "procmat/spaces.hpp"

// Common kets, projectors, and gate matrices used across the library.

namespace procmat::states {

Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

Vector ket(Index j, Index d = 2);

// (|0> + |1>)/sqrt(2) and (|0> - |1>)/sqrt(2)
Vector ket_plus();
Vector ket_minus();

Matrix projector(const Vector& psi);

// Unnormalized maximally entangled operator [[1]] = sum_{jl} |jj><ll|.
Matrix entangled_identity(Index d);

// |Phi+> = sum_j |jj>/sqrt(d)
Vector phi_plus(Index d = 2);
// |Psi+> = (|01> + |10|)/sqrt(2)
Vector psi_plus();
// (|000> + |111>)/sqrt(2)
Vector ghz();

// n(theta, phi) . sigma with n the Bloch unit vector.
Matrix bloch_observable(double theta, double phi);

// Rank-1 projector (1 + sign * n.sigma)/2, sign in {+1, -1}.
Matrix bloch_projector(double theta, double phi, int sign);

// XY-plane shorthand: theta = pi/2.
Matrix xy_observable(double phi);
Matrix xy_projector(double phi, int sign);

Matrix cnot();

// |G_kappa> = [1 x 1 x (sqrt(1+k) 1 + sqrt(1-k) sigma_x)/sqrt(2)] |GHZ>
Vector g_kappa(double kappa);

// |kappa> = (sqrt(1+k)|0> + sqrt(1-k)|1>)/sqrt(2)
Vector kappa_ket(double kappa);

} // namespace procmat::states
