#pragma once

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "polarlink/link.hpp"

namespace polarlink {

// 8-bit raster, row-major, channels interleaved (R,G,B or single gray plane).
struct Image {
    int width = 0;
    int height = 0;
    int channels = 1;  // 1 = grayscale, 3 = RGB
    std::vector<std::uint8_t> pixels;

    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
    std::size_t byte_count() const { return pixel_count() * channels; }
    std::size_t bit_count() const { return byte_count() * 8; }
};

struct ImageBitstream {
    BitVector payload;
    std::size_t padded_length = 0;  // payload length rounded up to a multiple of K
    std::size_t packet_count = 0;
};

// Pixels serialized row-major, channels interleaved per pixel, each byte MSB first.
inline BitVector image_to_bits(const Image& image) {
    if (image.channels != 1 && image.channels != 3)
        throw std::invalid_argument("unsupported channel count " + std::to_string(image.channels));
    if (image.pixels.size() != image.byte_count())
        throw std::invalid_argument("pixel buffer size does not match image dimensions");
    BitVector bits;
    bits.reserve(image.bit_count());
    for (std::uint8_t byte : image.pixels)
        for (int b = 7; b >= 0; --b)
            bits.push_back((byte >> b) & 1);
    return bits;
}

inline ImageBitstream make_bitstream(BitVector payload, int K) {
    if (K < 1) throw std::invalid_argument("K must be >= 1");
    ImageBitstream stream;
    stream.packet_count = (payload.size() + K - 1) / K;
    stream.padded_length = stream.packet_count * K;
    stream.payload = std::move(payload);
    return stream;
}

// Consecutive non-overlapping K-bit slices; the final slice is zero padded.
inline std::vector<BitVector> packetize(const BitVector& payload, int K) {
    if (K < 1) throw std::invalid_argument("K must be >= 1");
    std::vector<BitVector> packets;
    packets.reserve((payload.size() + K - 1) / K);
    for (std::size_t off = 0; off < payload.size(); off += K) {
        BitVector pkt(K, 0);
        std::size_t len = std::min<std::size_t>(K, payload.size() - off);
        std::copy(payload.begin() + off, payload.begin() + off + len, pkt.begin());
        packets.push_back(std::move(pkt));
    }
    return packets;
}

// Exact inverse of image_to_bits on the first width*height*channels*8 bits;
// trailing padding is ignored.
inline Image bits_to_image(const BitVector& payload, int width, int height, int channels) {
    Image image;
    image.width = width;
    image.height = height;
    image.channels = channels;
    const std::size_t needed = image.bit_count();
    if (payload.size() < needed)
        throw std::invalid_argument("payload of " + std::to_string(payload.size()) +
                                    " bits is shorter than the " + std::to_string(needed) +
                                    " required");
    image.pixels.resize(image.byte_count());
    for (std::size_t i = 0; i < image.pixels.size(); ++i) {
        std::uint8_t byte = 0;
        for (int b = 0; b < 8; ++b)
            byte = static_cast<std::uint8_t>((byte << 1) | payload[i * 8 + b]);
        image.pixels[i] = byte;
    }
    return image;
}

struct ImageRunResult {
    Image degraded;
    LinkStats stats;
    double elapsed_ms = 0.0;
    std::size_t packet_count = 0;
};

// Per-image transmit chain. Packets are partitioned across workers; each
// worker writes results at fixed packet offsets, so the output is identical
// for any worker count.
inline ImageRunResult transmit_image(const Image& image, const PolarCode& code,
                                     const ChannelParams& params, CheckNode check_node,
                                     std::uint64_t image_index, std::uint64_t snr_index,
                                     int workers = 1) {
    const auto start = std::chrono::steady_clock::now();

    BitVector payload = image_to_bits(image);
    std::vector<BitVector> packets = packetize(payload, code.K);
    const std::size_t count = packets.size();

    ImageRunResult result;
    result.packet_count = count;
    std::vector<PacketResult> packet_results(count);

    if (workers < 1) workers = 1;
    workers = static_cast<int>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));

    auto worker_fn = [&](std::size_t begin, std::size_t end) {
        ScDecoder decoder(code, check_node);
        for (std::size_t p = begin; p < end; ++p) {
            SubstreamId id{image_index, snr_index, p, 0};
            packet_results[p] = transmit_packet(decoder, packets[p], params, id);
        }
    };

    if (workers <= 1) {
        worker_fn(0, count);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (count + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            std::size_t begin = static_cast<std::size_t>(w) * chunk;
            std::size_t end = std::min(begin + chunk, count);
            if (begin >= end) break;
            pool.emplace_back(worker_fn, begin, end);
        }
        for (auto& t : pool) t.join();
    }

    BitVector decoded;
    decoded.reserve(count * code.K);
    for (std::size_t p = 0; p < count; ++p) {
        accumulate(result.stats, packet_results[p], code.K);
        decoded.insert(decoded.end(), packet_results[p].decoded.begin(),
                       packet_results[p].decoded.end());
    }

    result.degraded = bits_to_image(decoded, image.width, image.height, image.channels);
    result.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return result;
}

}  // namespace polarlink
