// This code is part of hybridmd.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy
// of this license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "hybridmd/encoding.hpp"
#include "hybridmd/errors.hpp"
#include "hybridmd/matrix.hpp"
#include "hybridmd/optimize.hpp"
#include "hybridmd/rng.hpp"
#include "hybridmd/statevector.hpp"

namespace hybridmd {

inline constexpr std::size_t kJacobiMaxDim = 64;
inline constexpr std::size_t kVqeMaxDim = 16;

/// All eigenvalues of a symmetric matrix, ascending, via cyclic Jacobi
/// rotations run until the off-diagonal Frobenius norm drops below 1e-12.
inline std::vector<double> jacobi_eigenvalues(RealMatrix a) {
    if (!a.square()) throw InvalidOperationError("jacobi: matrix is not square");
    if (a.rows > kJacobiMaxDim)
        throw ConfigError("jacobi: dimension cap is " + std::to_string(kJacobiMaxDim));
    if (!is_symmetric(a)) throw InvalidOperationError("jacobi: matrix is not symmetric");

    const std::size_t n = a.rows;
    if (n == 1) return {a(0, 0)};

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
        return std::sqrt(s);
    };

    double frob = 0.0;
    for (double x : a.data) frob += x * x;
    frob = std::sqrt(frob);
    // 1e-12 absolute; for very large-norm matrices that sits below the
    // double-precision rounding floor, so scale it up just enough there.
    const double target = std::max(1e-12, 1e-15 * frob);
    bool converged = false;
    for (int sweep = 0; sweep < 60 && !converged; ++sweep) {
        if (off_norm() < target) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p < n - 1; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) < 1e-300) continue;
                const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (std::size_t i = 0; i < n; ++i) {
                    const double aip = a(i, p);
                    const double aiq = a(i, q);
                    a(i, p) = c * aip - s * aiq;
                    a(i, q) = s * aip + c * aiq;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    const double apj = a(p, j);
                    const double aqj = a(q, j);
                    a(p, j) = c * apj - s * aqj;
                    a(q, j) = s * apj + c * aqj;
                }
            }
        }
    }
    if (!converged && off_norm() >= target)
        throw NumericError("jacobi: rotations did not converge");

    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

inline double classical_largest_eigenvalue(const RealMatrix& bpm) {
    return jacobi_eigenvalues(bpm).back();
}

/// Hardware-efficient trial-state circuit: `depth` blocks of a per-qubit
/// RY layer followed by a linear CX entangler chain, closed by a final RY
/// layer. depth 0 degenerates to the single RY layer (product states).
/// The entangler must stay CX: an RY/CZ chain cannot reach all real
/// states on 3+ qubits, which caps VQE accuracy on 8x8 and larger inputs.
struct Ansatz {
    int num_qubits = 1;
    int depth = 2;

    int num_parameters() const { return num_qubits * (depth + 1); }
};

inline StateVector ansatz_state(const Ansatz& ansatz, const std::vector<double>& theta) {
    if (ansatz.num_qubits < 1 || ansatz.num_qubits > kMaxQubits)
        throw ConfigError("ansatz: qubit count out of range");
    if (ansatz.depth < 0) throw ConfigError("ansatz: negative depth");
    if (theta.size() != static_cast<std::size_t>(ansatz.num_parameters()))
        throw InvalidOperationError("ansatz_state: expected " +
                                    std::to_string(ansatz.num_parameters()) + " parameters, got " +
                                    std::to_string(theta.size()));

    Circuit qc(ansatz.num_qubits, 0);
    std::size_t next = 0;
    for (int layer = 0; layer <= ansatz.depth; ++layer) {
        for (int q = 0; q < ansatz.num_qubits; ++q) qc.ry(q, theta[next++]);
        if (layer < ansatz.depth)
            for (int q = 0; q + 1 < ansatz.num_qubits; ++q) qc.cx(q, q + 1);
    }
    return qc.simulate();
}

/// Exact trial-state energy <psi(theta)|H|psi(theta)>.
inline double vqe_cost(const Ansatz& ansatz, const std::vector<double>& theta,
                       const ComplexMatrix& hamiltonian) {
    return expectation(ansatz_state(ansatz, theta), hamiltonian);
}

enum class OptimizerKind { nelder_mead, spsa };

struct OptimizerConfig {
    OptimizerKind kind = OptimizerKind::nelder_mead;
    int max_iterations = 500;
    double tolerance = 1e-6;
    std::uint64_t seed = 0;
    int restarts = 5;
};

inline const char* optimizer_kind_name(OptimizerKind k) {
    return k == OptimizerKind::nelder_mead ? "nelder_mead" : "spsa";
}

inline OptimizerKind parse_optimizer_kind(const std::string& name) {
    if (name == "nelder_mead") return OptimizerKind::nelder_mead;
    if (name == "spsa") return OptimizerKind::spsa;
    throw ConfigError("unknown optimizer '" + name + "' (expected nelder_mead or spsa)");
}

struct VqeResult {
    double eigenvalue_estimate = 0.0; // minimized cost, i.e. approx lambda_min(H)
    std::vector<double> optimal_theta;
    std::vector<double> trace; // best-so-far cost per iteration of the winning restart
    double elapsed_s = 0.0;
};

/// Minimizes <psi(theta)|H|psi(theta)> over `restarts` independent runs
/// and keeps the best. Restart r draws its start point uniformly from
/// [0, 1)^m out of the stream derive_seed(seed, r); when an initial point
/// is supplied it replaces the draw of restart 0. Exhausting the iteration
/// budget is not an error, the best value found is returned.
inline VqeResult run_vqe(const ComplexMatrix& hamiltonian, const Ansatz& ansatz,
                         const OptimizerConfig& optimizer,
                         const std::optional<std::vector<double>>& initial_theta = std::nullopt) {
    if (hamiltonian.dim != (std::size_t{1} << ansatz.num_qubits))
        throw InvalidOperationError("run_vqe: ansatz qubit count does not match operator");
    if (optimizer.restarts < 1) throw ConfigError("run_vqe: restarts must be >= 1");
    if (initial_theta &&
        initial_theta->size() != static_cast<std::size_t>(ansatz.num_parameters()))
        throw InvalidOperationError("run_vqe: initial point has wrong parameter count");

    const auto t0 = std::chrono::steady_clock::now();
    const CostFunction cost = [&](const std::vector<double>& theta) {
        return vqe_cost(ansatz, theta, hamiltonian);
    };

    VqeResult best;
    bool have_best = false;
    for (int r = 0; r < optimizer.restarts; ++r) {
        Rng rng(derive_seed(optimizer.seed, static_cast<std::uint64_t>(r)));
        std::vector<double> theta0(static_cast<std::size_t>(ansatz.num_parameters()));
        for (double& t : theta0) t = rng.uniform();
        if (r == 0 && initial_theta) theta0 = *initial_theta;

        MinimizeResult run;
        if (optimizer.kind == OptimizerKind::nelder_mead)
            run = nelder_mead(cost, std::move(theta0), optimizer.max_iterations,
                              optimizer.tolerance);
        else
            run = spsa(cost, std::move(theta0), optimizer.max_iterations, rng);

        if (!have_best || run.value < best.eigenvalue_estimate) {
            have_best = true;
            best.eigenvalue_estimate = run.value;
            best.optimal_theta = std::move(run.point);
            best.trace = std::move(run.trace);
        }
    }
    best.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return best;
}

struct LargestEigenvalueResult {
    double value = 0.0;
    double elapsed_s = 0.0;
};

/// Quantum variant of the largest-eigenvalue task: VQE on -padded(bpm)
/// whose ground energy is -lambda_max(bpm), returned with the sign undone.
inline LargestEigenvalueResult quantum_largest_eigenvalue(const RealMatrix& bpm, int ansatz_depth,
                                                          const OptimizerConfig& optimizer) {
    if (bpm.rows > kVqeMaxDim)
        throw ConfigError("quantum_largest_eigenvalue: dimension " + std::to_string(bpm.rows) +
                          " exceeds the VQE cap of " + std::to_string(kVqeMaxDim) +
                          "; use the classical variant");
    const MatrixOperator op = matrix_operator(bpm);
    const Ansatz ansatz{op.num_qubits, ansatz_depth};
    const VqeResult vqe = run_vqe(op.hamiltonian, ansatz, optimizer);
    return {-vqe.eigenvalue_estimate, vqe.elapsed_s};
}

} // namespace hybridmd
