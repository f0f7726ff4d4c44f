// This code is part of hybridmd.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy
// of this license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "hybridmd/errors.hpp"
#include "hybridmd/matrix.hpp"

namespace hybridmd {

struct PaddedVector {
    std::vector<double> values; // original entries followed by zeros
    int pad_exponent = 0;       // values.size() == 2^pad_exponent
};

/// Zero-pads to the smallest power-of-two length >= the input length.
inline PaddedVector pad_to_power_of_two(const std::vector<double>& v) {
    if (v.empty()) throw EncodingError("pad_to_power_of_two: empty vector");
    int k = 0;
    while ((std::size_t{1} << k) < v.size()) ++k;
    PaddedVector p;
    p.pad_exponent = k;
    p.values = v;
    p.values.resize(std::size_t{1} << k, 0.0);
    return p;
}

/// Amplitude encoding of an atom-coordinate pair (u, v).
///
///   phi = (|u| |0> - |v| |1>) / sqrt(Z),  Z = |u|^2 + |v|^2
///   psi = (|0> (x) u_hat + |1> (x) v_hat) / sqrt(2)
///
/// with u_hat, v_hat the unit-normalized zero-padded vectors on
/// pad_exponent qubits. In psi the selector qubit is the most significant
/// index and the coordinate register the least significant, i.e. amplitude
/// m = s * 2^k + j carries selector bit s and coordinate index j. The minus
/// sign on phi's |1> amplitude is what makes the swap-test ancilla encode
/// Z - 2 u.v rather than the bare overlap.
struct EncodedPair {
    std::vector<cplx> phi;    // 2 amplitudes, 1 qubit
    std::vector<cplx> psi;    // 2^(1+k) amplitudes, 1+k qubits
    double normalization = 0; // Z
    int pad_exponent = 0;     // k
};

inline EncodedPair encode_pair(const std::vector<double>& u, const std::vector<double>& v) {
    if (u.size() != v.size())
        throw InvalidOperationError("encode_pair: coordinate vectors differ in length");
    if (u.empty()) throw EncodingError("encode_pair: empty coordinate vector");
    for (double x : u)
        if (!std::isfinite(x)) throw EncodingError("encode_pair: non-finite coordinate");
    for (double x : v)
        if (!std::isfinite(x)) throw EncodingError("encode_pair: non-finite coordinate");

    double nu2 = 0.0, nv2 = 0.0;
    for (double x : u) nu2 += x * x;
    for (double x : v) nv2 += x * x;
    if (nu2 == 0.0 || nv2 == 0.0)
        throw EncodingError("encode_pair: zero-norm coordinate vector cannot be normalized");

    const double nu = std::sqrt(nu2);
    const double nv = std::sqrt(nv2);
    const double z = nu2 + nv2;
    const double rz = std::sqrt(z);

    EncodedPair pair;
    pair.normalization = z;
    pair.phi = {cplx{nu / rz, 0.0}, cplx{-nv / rz, 0.0}};

    const PaddedVector pu = pad_to_power_of_two(u);
    const PaddedVector pv = pad_to_power_of_two(v);
    pair.pad_exponent = pu.pad_exponent;
    const std::size_t dim = pu.values.size();
    const double r2 = std::sqrt(2.0);
    pair.psi.assign(2 * dim, cplx{0.0, 0.0});
    for (std::size_t j = 0; j < dim; ++j) {
        pair.psi[j] = pu.values[j] / (nu * r2);
        pair.psi[dim + j] = pv.values[j] / (nv * r2);
    }
    return pair;
}

/// Hamiltonian for the largest-eigenvalue task: the block distance matrix
/// zero-padded to dimension 2^num_qubits and negated, so its smallest
/// eigenvalue is -lambda_max(bpm). Zero padding is safe because bpm has
/// trace 0 and therefore lambda_max >= 0.
struct MatrixOperator {
    ComplexMatrix hamiltonian;
    int num_qubits = 0;
};

inline MatrixOperator matrix_operator(const RealMatrix& bpm) {
    if (!bpm.square()) throw InvalidOperationError("matrix_operator: matrix is not square");
    if (bpm.rows == 0) throw InvalidOperationError("matrix_operator: empty matrix");
    if (!is_symmetric(bpm)) throw InvalidOperationError("matrix_operator: matrix is not symmetric");

    int q = 0;
    while ((std::size_t{1} << q) < bpm.rows) ++q;
    if (q < 1) q = 1; // a 1x1 input still needs one qubit
    const std::size_t dim = std::size_t{1} << q;

    MatrixOperator op;
    op.num_qubits = q;
    op.hamiltonian = ComplexMatrix(dim);
    for (std::size_t i = 0; i < bpm.rows; ++i)
        for (std::size_t j = 0; j < bpm.cols; ++j)
            op.hamiltonian(i, j) = cplx{-bpm(i, j), 0.0};
    return op;
}

} // namespace hybridmd
