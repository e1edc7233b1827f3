#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace polarlink {

struct ReliabilityProfile {
    double design_snr_db = 0.0;
    // One Bhattacharyya parameter per synthetic channel, natural bit order.
    std::vector<double> z;
};

struct PolarCode {
    int n = 0;          // log2(N)
    int N = 0;          // codeword length
    int K = 0;          // information bits per frame
    double rate = 0.0;  // K / N
    std::vector<int> info_set;    // sorted input indices carrying message bits
    std::vector<int> frozen_set;  // sorted complement, fixed to zero
    std::vector<std::uint8_t> is_frozen;  // length N lookup
};

inline bool is_power_of_two(long v) { return v > 0 && (v & (v - 1)) == 0; }

// Initial Bhattacharyya parameter for a BPSK/AWGN channel at the given
// design Eb/N0.
inline double bhattacharyya_initial(double design_snr_db, double rate) {
    if (!(rate > 0.0 && rate <= 1.0))
        throw std::invalid_argument("rate must be in (0, 1], got " + std::to_string(rate));
    return std::exp(-rate * std::pow(10.0, design_snr_db / 10.0));
}

namespace detail {

// Z- = 2Z - Z^2 fills the lower half of the block, Z+ = Z^2 the upper half.
inline void polarize_recurse(std::vector<double>& z, double parent, int index, int half) {
    if (half == 0) {
        z[index] = parent;
        return;
    }
    polarize_recurse(z, 2.0 * parent - parent * parent, index, half / 2);
    polarize_recurse(z, parent * parent, index + half, half / 2);
}

}  // namespace detail

inline std::vector<double> bhattacharyya_recurrence(int n, double z0) {
    if (n < 0) throw std::invalid_argument("n must be non-negative, got " + std::to_string(n));
    std::vector<double> z(static_cast<std::size_t>(1) << n);
    detail::polarize_recurse(z, z0, 0, static_cast<int>(z.size()) / 2);
    return z;
}

inline ReliabilityProfile bhattacharyya_profile(int n, double design_snr_db, double rate) {
    ReliabilityProfile profile;
    profile.design_snr_db = design_snr_db;
    profile.z = bhattacharyya_recurrence(n, bhattacharyya_initial(design_snr_db, rate));
    return profile;
}

// Selects the K most reliable channels (smallest z) as the information set.
// On equal z the higher index wins the slot.
inline PolarCode build_code(int N, int K, const std::vector<double>& z) {
    if (!is_power_of_two(N) || N < 2)
        throw std::invalid_argument("N must be a power of two >= 2, got " + std::to_string(N));
    if (K < 1 || K > N)
        throw std::invalid_argument("K must satisfy 1 <= K <= N, got K=" + std::to_string(K) +
                                    " with N=" + std::to_string(N));
    if (static_cast<int>(z.size()) != N)
        throw std::invalid_argument("reliability profile length " + std::to_string(z.size()) +
                                    " does not match N=" + std::to_string(N));

    PolarCode code;
    code.N = N;
    code.K = K;
    code.n = static_cast<int>(std::log2(static_cast<double>(N)) + 0.5);
    code.rate = static_cast<double>(K) / N;

    std::vector<int> order(N);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (z[a] != z[b]) return z[a] < z[b];
        return a > b;
    });

    code.info_set.assign(order.begin(), order.begin() + K);
    code.frozen_set.assign(order.begin() + K, order.end());
    std::sort(code.info_set.begin(), code.info_set.end());
    std::sort(code.frozen_set.begin(), code.frozen_set.end());

    code.is_frozen.assign(N, 1);
    for (int i : code.info_set) code.is_frozen[i] = 0;
    return code;
}

inline PolarCode build_code(int N, int K, double design_snr_db) {
    if (!is_power_of_two(N) || N < 2)
        throw std::invalid_argument("N must be a power of two >= 2, got " + std::to_string(N));
    if (K < 1 || K > N)
        throw std::invalid_argument("K must satisfy 1 <= K <= N, got K=" + std::to_string(K) +
                                    " with N=" + std::to_string(N));
    int n = 0;
    while ((1 << n) < N) ++n;
    double rate = static_cast<double>(K) / N;
    return build_code(N, K, bhattacharyya_profile(n, design_snr_db, rate).z);
}

}  // namespace polarlink
