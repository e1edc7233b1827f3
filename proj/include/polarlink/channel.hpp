#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include "polarlink/types.hpp"

namespace polarlink {

struct ChannelParams {
    double snr_db = 0.0;   // Eb/N0 in dB
    double rate = 1.0;     // code rate used for energy normalization
    double sigma = 0.0;    // noise standard deviation per real dimension
    std::uint64_t seed = 0;
};

// Eb/N0 convention with unit symbol energy: sigma = sqrt(1 / (2 R 10^(snr/10))).
inline double sigma_from_snr(double snr_db, double rate) {
    if (!(rate > 0.0 && rate <= 1.0))
        throw std::invalid_argument("rate must be in (0, 1], got " + std::to_string(rate));
    return std::sqrt(1.0 / (2.0 * rate * std::pow(10.0, snr_db / 10.0)));
}

inline ChannelParams make_channel_params(double snr_db, double rate, std::uint64_t seed) {
    return ChannelParams{snr_db, rate, sigma_from_snr(snr_db, rate), seed};
}

inline SymbolVector bpsk_modulate(const BitVector& bits) {
    SymbolVector symbols(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i)
        symbols[i] = bits[i] ? -1.0 : 1.0;
    return symbols;
}

// Identifies one packet's noise/payload substream; seeds derived statelessly
// so results are independent of execution order and worker count.
struct SubstreamId {
    std::uint64_t image = 0;
    std::uint64_t snr = 0;
    std::uint64_t packet = 0;
    std::uint64_t lane = 0;  // 0 = channel noise, 1 = random payload
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, const SubstreamId& id) {
    std::uint64_t h = splitmix64(master);
    h = splitmix64(h ^ id.image);
    h = splitmix64(h ^ id.snr);
    h = splitmix64(h ^ id.packet);
    h = splitmix64(h ^ id.lane);
    return h;
}

// Seeded Gaussian/bit source. Box-Muller over mt19937_64 so the sequence is
// identical across standard library implementations.
class NoiseStream {
public:
    explicit NoiseStream(std::uint64_t seed) : engine_(seed) {}

    // uniform in (0, 1]
    double uniform() {
        return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1p-53;
    }

    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 2.0 * M_PI * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    std::uint8_t bit() { return static_cast<std::uint8_t>(engine_() >> 63); }

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

inline SymbolVector awgn(const SymbolVector& symbols, double sigma, NoiseStream& noise) {
    if (sigma < 0.0)
        throw std::invalid_argument("sigma must be non-negative, got " + std::to_string(sigma));
    SymbolVector out(symbols);
    if (sigma == 0.0) return out;
    for (double& y : out) y += sigma * noise.gaussian();
    return out;
}

inline LlrVector llr_demap(const SymbolVector& received, double sigma) {
    if (!(sigma > 0.0))
        throw std::invalid_argument("llr_demap requires sigma > 0, got " + std::to_string(sigma));
    const double scale = 2.0 / (sigma * sigma);
    LlrVector llrs(received.size());
    for (std::size_t i = 0; i < received.size(); ++i)
        llrs[i] = std::clamp(scale * received[i], -kLlrMax, kLlrMax);
    return llrs;
}

}  // namespace polarlink
