#pragma once

#include <cstdint>

#include "polarlink/channel.hpp"
#include "polarlink/codec.hpp"
#include "polarlink/construction.hpp"
#include "polarlink/types.hpp"

namespace polarlink {

struct PacketResult {
    BitVector decoded;   // length K
    int bit_errors = 0;  // positions where decoded != msg
    bool frame_error = false;
};

struct LinkStats {
    std::uint64_t frames = 0;
    std::uint64_t payload_bits = 0;
    std::uint64_t bit_errors = 0;
    std::uint64_t frame_errors = 0;

    double ber() const { return payload_bits ? static_cast<double>(bit_errors) / payload_bits : 0.0; }
    double fer() const { return frames ? static_cast<double>(frame_errors) / frames : 0.0; }

    void merge(const LinkStats& other) {
        frames += other.frames;
        payload_bits += other.payload_bits;
        bit_errors += other.bit_errors;
        frame_errors += other.frame_errors;
    }
};

inline void accumulate(LinkStats& stats, const PacketResult& result, int K) {
    stats.frames += 1;
    stats.payload_bits += static_cast<std::uint64_t>(K);
    stats.bit_errors += static_cast<std::uint64_t>(result.bit_errors);
    stats.frame_errors += result.frame_error ? 1 : 0;
}

// Full per-packet chain: encode, BPSK, AWGN, LLR demap, SC decode.
// sigma == 0 takes the noiseless shortcut (saturated LLRs straight from the
// clean symbols).
inline PacketResult transmit_packet(ScDecoder& decoder, const BitVector& msg,
                                    const ChannelParams& params, const SubstreamId& id) {
    const PolarCode& code = decoder.code();
    BitVector x = encode(code, msg);
    SymbolVector s = bpsk_modulate(x);

    LlrVector llrs;
    if (params.sigma == 0.0) {
        llrs.resize(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) llrs[i] = s[i] * kLlrMax;
    } else {
        SubstreamId noise_id = id;
        noise_id.lane = 0;
        NoiseStream noise(derive_seed(params.seed, noise_id));
        SymbolVector y = awgn(s, params.sigma, noise);
        llrs = llr_demap(y, params.sigma);
    }

    ScResult decoded = decoder.decode(llrs);
    PacketResult result;
    result.decoded = std::move(decoded.msg);
    for (int i = 0; i < code.K; ++i)
        if (result.decoded[i] != msg[i]) ++result.bit_errors;
    result.frame_error = result.bit_errors > 0;
    return result;
}

inline PacketResult transmit_packet(const PolarCode& code, const BitVector& msg,
                                    const ChannelParams& params, const SubstreamId& id,
                                    CheckNode check_node = CheckNode::exact) {
    ScDecoder decoder(code, check_node);
    return transmit_packet(decoder, msg, params, id);
}

struct StoppingRule {
    std::uint64_t min_frame_errors = 100;
    std::uint64_t max_frames = 100000;
};

enum class StopReason { error_target, frame_limit };

struct MonteCarloResult {
    LinkStats stats;
    StopReason reason = StopReason::frame_limit;
};

// Random-payload error-rate estimation at one SNR point. Frame index doubles
// as the packet substream index; payload bits come from a separate lane so
// message and noise streams never overlap.
inline MonteCarloResult monte_carlo_point(const PolarCode& code, const ChannelParams& params,
                                          const StoppingRule& stop,
                                          CheckNode check_node = CheckNode::exact,
                                          std::uint64_t snr_index = 0) {
    ScDecoder decoder(code, check_node);
    MonteCarloResult result;
    BitVector msg(code.K);
    for (std::uint64_t frame = 0; frame < stop.max_frames; ++frame) {
        SubstreamId id{0, snr_index, frame, 1};
        NoiseStream payload(derive_seed(params.seed, id));
        for (int i = 0; i < code.K; ++i) msg[i] = payload.bit();
        PacketResult pkt = transmit_packet(decoder, msg, params, id);
        accumulate(result.stats, pkt, code.K);
        if (result.stats.frame_errors >= stop.min_frame_errors) {
            result.reason = StopReason::error_target;
            return result;
        }
    }
    result.reason = StopReason::frame_limit;
    return result;
}

}  // namespace polarlink
