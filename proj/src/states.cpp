#include "procmat/states.hpp"

#include <cmath>

namespace procmat::states {

Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix pauli_y() {
    Matrix m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}

Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Vector ket(Index j, Index d) {
    Vector v = Vector::Zero(d);
    v(j) = 1.0;
    return v;
}

Vector ket_plus() {
    Vector v(2);
    v << 1, 1;
    return v / std::sqrt(2.0);
}

Vector ket_minus() {
    Vector v(2);
    v << 1, -1;
    return v / std::sqrt(2.0);
}

Matrix projector(const Vector& psi) { return psi * psi.adjoint(); }

Matrix entangled_identity(Index d) {
    Matrix m = Matrix::Zero(d * d, d * d);
    for (Index j = 0; j < d; ++j)
        for (Index l = 0; l < d; ++l) m(j * d + j, l * d + l) = 1.0;
    return m;
}

Vector phi_plus(Index d) {
    Vector v = Vector::Zero(d * d);
    for (Index j = 0; j < d; ++j) v(j * d + j) = 1.0;
    return v / std::sqrt(static_cast<double>(d));
}

Vector psi_plus() {
    Vector v = Vector::Zero(4);
    v(1) = v(2) = 1.0;
    return v / std::sqrt(2.0);
}

Vector ghz() {
    Vector v = Vector::Zero(8);
    v(0) = v(7) = 1.0;
    return v / std::sqrt(2.0);
}

Matrix bloch_observable(double theta, double phi) {
    return std::sin(theta) * std::cos(phi) * pauli_x() +
           std::sin(theta) * std::sin(phi) * pauli_y() +
           std::cos(theta) * pauli_z();
}

Matrix bloch_projector(double theta, double phi, int sign) {
    return 0.5 * (Matrix::Identity(2, 2) +
                  static_cast<double>(sign) * bloch_observable(theta, phi));
}

Matrix xy_observable(double phi) {
    return bloch_observable(M_PI / 2.0, phi);
}

Matrix xy_projector(double phi, int sign) {
    return bloch_projector(M_PI / 2.0, phi, sign);
}

Matrix cnot() {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
    return m;
}

Vector kappa_ket(double kappa) {
    Vector v(2);
    v << std::sqrt(1.0 + kappa), std::sqrt(1.0 - kappa);
    return v / std::sqrt(2.0);
}

Vector g_kappa(double kappa) {
    const Vector k = kappa_ket(kappa);
    // Third-qubit matrix (sqrt(1+k) 1 + sqrt(1-k) X)/sqrt(2) applied to GHZ.
    Matrix gate(2, 2);
    gate << k(0), k(1), k(1), k(0);
    Vector out = Vector::Zero(8);
    const Vector base = ghz();
    for (Index a = 0; a < 2; ++a)
        for (Index b = 0; b < 2; ++b)
            for (Index c = 0; c < 2; ++c) {
                Complex amp = 0.0;
                for (Index cc = 0; cc < 2; ++cc)
                    amp += gate(c, cc) * base(4 * a + 2 * b + cc);
                out(4 * a + 2 * b + c) = amp;
            }
    return out;
}

} // namespace procmat::states
