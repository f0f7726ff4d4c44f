// This code is part of hybridmd.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy
// of this license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hybridmd/errors.hpp"
#include "hybridmd/matrix.hpp"
#include "hybridmd/rng.hpp"
#include "hybridmd/statevector.hpp"

namespace hybridmd {

/// Independent per-bit readout flips: p01 = P(read 1 | true 0),
/// p10 = P(read 0 | true 1). Gate noise is out of scope.
struct ReadoutNoiseModel {
    double p01 = 0.0;
    double p10 = 0.0;

    void validate() const {
        if (p01 < 0.0 || p01 > 1.0 || p10 < 0.0 || p10 > 1.0)
            throw ConfigError("readout noise probabilities must lie in [0, 1]");
        if (p01 + p10 >= 1.0)
            throw NumericError("readout noise with p01 + p10 >= 1 has a singular calibration");
    }
};

/// Shot counts per classical bitstring.
struct CountsHistogram {
    std::map<std::string, std::uint64_t> counts;
    std::uint64_t total_shots = 0;
};

/// Probability (or quasi-probability) map over equal-width bitstrings.
using Distribution = std::map<std::string, double>;

namespace detail {

inline int bitstring_width(const std::map<std::string, double>& dist) {
    if (dist.empty()) throw InvalidOperationError("empty distribution");
    const std::size_t w = dist.begin()->first.size();
    for (const auto& [key, value] : dist) {
        (void)value;
        if (key.size() != w)
            throw InvalidOperationError("distribution keys have mixed bitstring widths");
        for (char c : key)
            if (c != '0' && c != '1')
                throw InvalidOperationError("distribution key is not a bitstring: " + key);
    }
    return static_cast<int>(w);
}

inline std::size_t bitstring_index(const std::string& key) {
    // Inverse of to_bitstring: leftmost character is the highest bit.
    std::size_t idx = 0;
    for (char c : key) idx = (idx << 1) | static_cast<std::size_t>(c == '1');
    return idx;
}

inline std::vector<double> dist_to_vector(const Distribution& dist, int width) {
    std::vector<double> v(std::size_t{1} << width, 0.0);
    for (const auto& [key, p] : dist) v[bitstring_index(key)] = p;
    return v;
}

} // namespace detail

/// Tensor product of per-bit confusion matrices [[1-p01, p10], [p01, 1-p10]].
/// Entry (i, j) = P(read i | true j); columns sum to 1.
inline RealMatrix build_calibration_matrix(const ReadoutNoiseModel& noise, int num_bits) {
    noise.validate();
    if (num_bits < 1) throw ConfigError("build_calibration_matrix: num_bits must be >= 1");
    if (num_bits > 16) throw ConfigError("build_calibration_matrix: num_bits cap is 16");
    const double m[2][2] = {{1.0 - noise.p01, noise.p10}, {noise.p01, 1.0 - noise.p10}};
    const std::size_t dim = std::size_t{1} << num_bits;
    RealMatrix cal(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            double e = 1.0;
            for (int b = 0; b < num_bits; ++b)
                e *= m[(i >> b) & 1u][(j >> b) & 1u];
            cal(i, j) = e;
        }
    return cal;
}

/// Applies independent per-bit readout flips to an exact distribution.
/// Equivalent to multiplying by the calibration matrix.
inline Distribution apply_readout_noise(const Distribution& probabilities,
                                        const ReadoutNoiseModel& noise) {
    if (noise.p01 < 0.0 || noise.p01 > 1.0 || noise.p10 < 0.0 || noise.p10 > 1.0)
        throw ConfigError("readout noise probabilities must lie in [0, 1]");
    const int width = detail::bitstring_width(probabilities);
    std::vector<double> p = detail::dist_to_vector(probabilities, width);
    for (int b = 0; b < width; ++b) {
        const std::size_t bit = std::size_t{1} << b;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (i & bit) continue;
            const double p0 = p[i];
            const double p1 = p[i | bit];
            p[i] = (1.0 - noise.p01) * p0 + noise.p10 * p1;
            p[i | bit] = noise.p01 * p0 + (1.0 - noise.p10) * p1;
        }
    }
    Distribution out;
    for (std::size_t i = 0; i < p.size(); ++i)
        out[to_bitstring(i, width)] = p[i];
    return out;
}

/// Multinomial sample of `shots` draws, deterministic for a fixed seed.
inline CountsHistogram sample_counts(const Distribution& probabilities, int shots,
                                     std::uint64_t seed) {
    if (shots <= 0) throw ConfigError("sample_counts: shots must be positive");
    const int width = detail::bitstring_width(probabilities);
    (void)width;
    double total = 0.0;
    for (const auto& [key, p] : probabilities) {
        (void)key;
        if (p < -1e-12) throw NumericError("sample_counts: negative probability");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-8)
        throw NumericError("sample_counts: distribution does not sum to 1");

    std::vector<const std::string*> keys;
    std::vector<double> cdf;
    keys.reserve(probabilities.size());
    cdf.reserve(probabilities.size());
    double acc = 0.0;
    for (const auto& [key, p] : probabilities) {
        acc += p;
        keys.push_back(&key);
        cdf.push_back(acc);
    }
    cdf.back() = 1.0 + 1e-12; // guard against rounding at the top end

    CountsHistogram hist;
    hist.total_shots = static_cast<std::uint64_t>(shots);
    for (const auto& [key, p] : probabilities) {
        (void)p;
        hist.counts[key] = 0;
    }
    Rng rng(seed);
    for (int s = 0; s < shots; ++s) {
        const double u = rng.uniform() * total;
        std::size_t lo = 0, hi = cdf.size() - 1;
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (u < cdf[mid]) hi = mid; else lo = mid + 1;
        }
        ++hist.counts[*keys[lo]];
    }
    return hist;
}

/// Solves calibration * x = frequencies; negative entries are clipped to
/// zero and the result renormalized to sum 1.
inline Distribution mitigate_frequencies(const Distribution& frequencies,
                                         const RealMatrix& calibration) {
    const int width = detail::bitstring_width(frequencies);
    const std::size_t dim = std::size_t{1} << width;
    if (calibration.rows != dim || calibration.cols != dim)
        throw InvalidOperationError("mitigate: calibration dimension does not match bit width");
    std::vector<double> f = detail::dist_to_vector(frequencies, width);
    std::vector<double> x = solve_linear(calibration, std::move(f));
    double sum = 0.0;
    for (double& v : x) {
        if (v < 0.0) v = 0.0;
        sum += v;
    }
    if (sum <= 0.0) throw NumericError("mitigate: clipped quasi-distribution sums to zero");
    Distribution out;
    for (std::size_t i = 0; i < x.size(); ++i)
        out[to_bitstring(i, width)] = x[i] / sum;
    return out;
}

inline Distribution mitigate_counts(const CountsHistogram& counts, const RealMatrix& calibration) {
    if (counts.total_shots == 0) throw ConfigError("mitigate_counts: empty histogram");
    Distribution freq;
    for (const auto& [key, c] : counts.counts)
        freq[key] = static_cast<double>(c) / static_cast<double>(counts.total_shots);
    return mitigate_frequencies(freq, calibration);
}

} // namespace hybridmd
