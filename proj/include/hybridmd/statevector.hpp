// This code is part of hybridmd.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy
// of this license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hybridmd/errors.hpp"
#include "hybridmd/matrix.hpp"

namespace hybridmd {

inline constexpr int kMaxQubits = 20;
inline constexpr double kNormTol = 1e-10;

/// Pure state of `num_qubits` qubits as a dense amplitude vector.
///
/// Indexing is little-endian: qubit q holds bit (1 << q) of the basis-state
/// index, so qubit 0 is the least significant bit. Instances are immutable
/// from the caller's perspective; gates produce new values.
class StateVector {
public:
    StateVector(int num_qubits, std::vector<cplx> amplitudes)
        : num_qubits_(num_qubits), amps_(std::move(amplitudes)) {
        if (num_qubits_ < 1 || num_qubits_ > kMaxQubits)
            throw ConfigError("StateVector: qubit count " + std::to_string(num_qubits_) +
                              " outside [1, " + std::to_string(kMaxQubits) + "]");
        if (amps_.size() != (std::size_t{1} << num_qubits_))
            throw InvalidOperationError("StateVector: amplitude count does not match qubit count");
        if (std::abs(norm_sq() - 1.0) > kNormTol)
            throw NumericError("StateVector: amplitudes are not normalized");
    }

    int num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return amps_.size(); }
    const std::vector<cplx>& amplitudes() const { return amps_; }

    double norm_sq() const {
        double s = 0.0;
        for (const cplx& a : amps_) s += std::norm(a);
        return s;
    }

private:
    friend class Circuit;
    friend StateVector apply_gate(const StateVector&, const struct Gate&);

    // Unchecked constructor for internal evolution, where unitarity keeps
    // the norm and validation per gate would cost a full pass.
    struct Unchecked {};
    StateVector(int num_qubits, std::vector<cplx> amplitudes, Unchecked)
        : num_qubits_(num_qubits), amps_(std::move(amplitudes)) {}

    int num_qubits_;
    std::vector<cplx> amps_;
};

/// |0...0> on `num_qubits` qubits.
inline StateVector zero_state(int num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits)
        throw ConfigError("zero_state: qubit count " + std::to_string(num_qubits) +
                          " outside [1, " + std::to_string(kMaxQubits) + "]");
    std::vector<cplx> amps(std::size_t{1} << num_qubits, cplx{0.0, 0.0});
    amps[0] = 1.0;
    return StateVector(num_qubits, std::move(amps));
}

enum class GateKind { H, X, RY, RZ, CX, CZ, CSWAP, Initialize, Barrier };

/// One gate of a circuit. `qubits` holds the operands:
///   H/X/RY/RZ      {target}
///   CX/CZ          {control, target}
///   CSWAP          {control, a, b}
///   Initialize     target register, least significant qubit first; bit p of
///                  the amplitude-list index addresses qubits[p]
///   Barrier        none
struct Gate {
    GateKind kind = GateKind::Barrier;
    std::vector<int> qubits;
    double angle = 0.0;
    std::vector<cplx> amplitudes;

    static Gate h(int q) { return {GateKind::H, {q}, 0.0, {}}; }
    static Gate x(int q) { return {GateKind::X, {q}, 0.0, {}}; }
    static Gate ry(int q, double angle) { return {GateKind::RY, {q}, angle, {}}; }
    static Gate rz(int q, double angle) { return {GateKind::RZ, {q}, angle, {}}; }
    static Gate cx(int control, int target) { return {GateKind::CX, {control, target}, 0.0, {}}; }
    static Gate cz(int control, int target) { return {GateKind::CZ, {control, target}, 0.0, {}}; }
    static Gate cswap(int control, int a, int b) {
        return {GateKind::CSWAP, {control, a, b}, 0.0, {}};
    }
    static Gate initialize(std::vector<int> targets, std::vector<cplx> amps) {
        return {GateKind::Initialize, std::move(targets), 0.0, std::move(amps)};
    }
    static Gate barrier() { return {GateKind::Barrier, {}, 0.0, {}}; }
};

namespace detail {

inline void validate_operands(const Gate& g, int num_qubits) {
    for (std::size_t i = 0; i < g.qubits.size(); ++i) {
        if (g.qubits[i] < 0 || g.qubits[i] >= num_qubits)
            throw InvalidOperationError("gate operand qubit " + std::to_string(g.qubits[i]) +
                                        " out of range");
        for (std::size_t j = i + 1; j < g.qubits.size(); ++j)
            if (g.qubits[i] == g.qubits[j])
                throw InvalidOperationError("gate operand qubits must be distinct");
    }
    if (g.kind == GateKind::Initialize) {
        if (g.qubits.empty())
            throw InvalidOperationError("initialize: empty target register");
        if (g.amplitudes.size() != (std::size_t{1} << g.qubits.size()))
            throw InvalidOperationError("initialize: amplitude list length must be 2^targets");
        double n = 0.0;
        for (const cplx& a : g.amplitudes) n += std::norm(a);
        if (std::abs(n - 1.0) > kNormTol)
            throw InvalidOperationError("initialize: amplitude list is not unit norm");
    }
}

inline void apply_one_qubit(std::vector<cplx>& a, int target, const cplx m00, const cplx m01,
                            const cplx m10, const cplx m11) {
    const std::size_t bit = std::size_t{1} << target;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i & bit) continue;
        const cplx a0 = a[i];
        const cplx a1 = a[i | bit];
        a[i] = m00 * a0 + m01 * a1;
        a[i | bit] = m10 * a0 + m11 * a1;
    }
}

inline void apply_gate_in_place(std::vector<cplx>& amps, const Gate& g) {
    switch (g.kind) {
    case GateKind::H: {
        const double r = 1.0 / std::sqrt(2.0);
        apply_one_qubit(amps, g.qubits[0], r, r, r, -r);
        break;
    }
    case GateKind::X:
        apply_one_qubit(amps, g.qubits[0], 0.0, 1.0, 1.0, 0.0);
        break;
    case GateKind::RY: {
        const double c = std::cos(g.angle / 2.0);
        const double s = std::sin(g.angle / 2.0);
        apply_one_qubit(amps, g.qubits[0], c, -s, s, c);
        break;
    }
    case GateKind::RZ: {
        const cplx em = std::exp(cplx{0.0, -g.angle / 2.0});
        const cplx ep = std::exp(cplx{0.0, g.angle / 2.0});
        apply_one_qubit(amps, g.qubits[0], em, 0.0, 0.0, ep);
        break;
    }
    case GateKind::CX: {
        const std::size_t c = std::size_t{1} << g.qubits[0];
        const std::size_t t = std::size_t{1} << g.qubits[1];
        for (std::size_t i = 0; i < amps.size(); ++i)
            if ((i & c) && !(i & t)) std::swap(amps[i], amps[i | t]);
        break;
    }
    case GateKind::CZ: {
        const std::size_t c = std::size_t{1} << g.qubits[0];
        const std::size_t t = std::size_t{1} << g.qubits[1];
        for (std::size_t i = 0; i < amps.size(); ++i)
            if ((i & c) && (i & t)) amps[i] = -amps[i];
        break;
    }
    case GateKind::CSWAP: {
        const std::size_t c = std::size_t{1} << g.qubits[0];
        const std::size_t x = std::size_t{1} << g.qubits[1];
        const std::size_t y = std::size_t{1} << g.qubits[2];
        for (std::size_t i = 0; i < amps.size(); ++i)
            if ((i & c) && (i & x) && !(i & y)) std::swap(amps[i], amps[i ^ x ^ y]);
        break;
    }
    case GateKind::Initialize: {
        std::size_t mask = 0;
        for (int q : g.qubits) mask |= std::size_t{1} << q;
        double residue = 0.0;
        for (std::size_t i = 0; i < amps.size(); ++i)
            if (i & mask) residue += std::norm(amps[i]);
        if (residue > kNormTol)
            throw InvalidOperationError(
                "initialize: target register is not in |0...0> (re-initialization of a used "
                "register is not supported)");
        for (std::size_t i = 0; i < amps.size(); ++i) {
            if (i & mask) continue;
            const cplx base = amps[i];
            for (std::size_t m = 0; m < g.amplitudes.size(); ++m) {
                std::size_t j = i;
                for (std::size_t p = 0; p < g.qubits.size(); ++p)
                    if (m & (std::size_t{1} << p)) j |= std::size_t{1} << g.qubits[p];
                amps[j] = base * g.amplitudes[m];
            }
        }
        break;
    }
    case GateKind::Barrier:
        break;
    }
}

} // namespace detail

/// Returns the state transformed by one gate. Unitary kinds preserve the
/// norm; Initialize requires its target register to still be |0...0>.
inline StateVector apply_gate(const StateVector& state, const Gate& gate) {
    detail::validate_operands(gate, state.num_qubits());
    std::vector<cplx> amps = state.amplitudes();
    detail::apply_gate_in_place(amps, gate);
    return StateVector(state.num_qubits(), std::move(amps), StateVector::Unchecked{});
}

/// Ordered gate program over quantum and classical registers. Gates are
/// applied in insertion order; measurements are terminal and read out via
/// exact_probabilities / sampling rather than collapsing the state.
class Circuit {
public:
    Circuit(int num_qubits, int num_clbits) : num_qubits_(num_qubits), num_clbits_(num_clbits) {
        if (num_qubits < 1 || num_qubits > kMaxQubits)
            throw ConfigError("Circuit: qubit count out of range");
        if (num_clbits < 0) throw ConfigError("Circuit: negative classical bit count");
    }

    void append(Gate g) {
        detail::validate_operands(g, num_qubits_);
        gates_.push_back(std::move(g));
    }

    void h(int q) { append(Gate::h(q)); }
    void x(int q) { append(Gate::x(q)); }
    void ry(int q, double angle) { append(Gate::ry(q, angle)); }
    void rz(int q, double angle) { append(Gate::rz(q, angle)); }
    void cx(int control, int target) { append(Gate::cx(control, target)); }
    void cz(int control, int target) { append(Gate::cz(control, target)); }
    void cswap(int control, int a, int b) { append(Gate::cswap(control, a, b)); }
    void barrier() { append(Gate::barrier()); }
    void initialize(std::vector<int> targets, std::vector<cplx> amps) {
        append(Gate::initialize(std::move(targets), std::move(amps)));
    }

    void measure(int qubit, int clbit) {
        if (qubit < 0 || qubit >= num_qubits_)
            throw InvalidOperationError("measure: qubit index out of range");
        if (clbit < 0 || clbit >= num_clbits_)
            throw InvalidOperationError("measure: classical bit index out of range");
        measurements_.push_back({qubit, clbit});
    }

    int num_qubits() const { return num_qubits_; }
    int num_clbits() const { return num_clbits_; }
    const std::vector<Gate>& gates() const { return gates_; }
    const std::vector<std::pair<int, int>>& measurements() const { return measurements_; }

    /// Evolves |0...0> through the full gate list.
    StateVector simulate() const {
        std::vector<cplx> amps(std::size_t{1} << num_qubits_, cplx{0.0, 0.0});
        amps[0] = 1.0;
        for (const Gate& g : gates_) detail::apply_gate_in_place(amps, g);
        return StateVector(num_qubits_, std::move(amps), StateVector::Unchecked{});
    }

private:
    int num_qubits_;
    int num_clbits_;
    std::vector<Gate> gates_;
    std::vector<std::pair<int, int>> measurements_;
};

/// Renders outcome bits as a string, last measured qubit leftmost (the
/// first entry of `measured_qubits` is the rightmost character).
inline std::string to_bitstring(std::uint64_t outcome, int num_bits) {
    std::string s(static_cast<std::size_t>(num_bits), '0');
    for (int p = 0; p < num_bits; ++p)
        if (outcome & (std::uint64_t{1} << p)) s[static_cast<std::size_t>(num_bits - 1 - p)] = '1';
    return s;
}

/// Marginal Born-rule distribution over the listed qubits.
inline std::map<std::string, double> exact_probabilities(const StateVector& state,
                                                         const std::vector<int>& measured_qubits) {
    if (measured_qubits.empty())
        throw InvalidOperationError("exact_probabilities: no measured qubits");
    for (std::size_t i = 0; i < measured_qubits.size(); ++i) {
        if (measured_qubits[i] < 0 || measured_qubits[i] >= state.num_qubits())
            throw InvalidOperationError("exact_probabilities: qubit index out of range");
        for (std::size_t j = i + 1; j < measured_qubits.size(); ++j)
            if (measured_qubits[i] == measured_qubits[j])
                throw InvalidOperationError("exact_probabilities: duplicate measured qubit");
    }
    const int m = static_cast<int>(measured_qubits.size());
    std::vector<double> acc(std::size_t{1} << m, 0.0);
    const auto& amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const double p = std::norm(amps[i]);
        if (p == 0.0) continue;
        std::size_t outcome = 0;
        for (int b = 0; b < m; ++b)
            if (i & (std::size_t{1} << measured_qubits[static_cast<std::size_t>(b)]))
                outcome |= std::size_t{1} << b;
        acc[outcome] += p;
    }
    std::map<std::string, double> probs;
    for (std::size_t o = 0; o < acc.size(); ++o) probs[to_bitstring(o, m)] = acc[o];
    return probs;
}

/// <psi|H|psi> for a Hermitian H of matching dimension. The imaginary
/// residue must stay below 1e-10 and is discarded.
inline double expectation(const StateVector& state, const ComplexMatrix& hermitian) {
    if (hermitian.dim != state.dim())
        throw InvalidOperationError("expectation: operator dimension does not match state");
    if (!is_hermitian(hermitian))
        throw InvalidOperationError("expectation: operator is not Hermitian");
    const auto& psi = state.amplitudes();
    cplx e{0.0, 0.0};
    for (std::size_t i = 0; i < hermitian.dim; ++i) {
        cplx row{0.0, 0.0};
        for (std::size_t j = 0; j < hermitian.dim; ++j) row += hermitian(i, j) * psi[j];
        e += std::conj(psi[i]) * row;
    }
    if (std::abs(e.imag()) > 1e-10)
        throw NumericError("expectation: imaginary residue exceeds tolerance");
    return e.real();
}

} // namespace hybridmd
