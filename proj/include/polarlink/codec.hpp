#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "polarlink/construction.hpp"
#include "polarlink/types.hpp"

namespace polarlink {

enum class CheckNode { exact, min_sum };

inline const char* to_string(CheckNode cn) {
    return cn == CheckNode::exact ? "exact" : "min_sum";
}

// f(a, b) = 2 atanh(tanh(a/2) tanh(b/2)), inputs clamped to +-kLlrMax and the
// product kept strictly inside (-1, 1) so atanh never overflows.
inline double check_node_exact(double a, double b) {
    a = std::clamp(a, -kLlrMax, kLlrMax);
    b = std::clamp(b, -kLlrMax, kLlrMax);
    double t = std::tanh(a / 2.0) * std::tanh(b / 2.0);
    t = std::clamp(t, -(1.0 - 1e-12), 1.0 - 1e-12);
    double r = 2.0 * std::atanh(t);
    // |f(a,b)| <= min(|a|,|b|) holds analytically; enforce it against
    // rounding overshoot near tanh saturation
    double cap = std::min(std::abs(a), std::abs(b));
    return std::clamp(r, -cap, cap);
}

inline double check_node_min_sum(double a, double b) {
    double mag = std::min(std::abs(a), std::abs(b));
    return (a < 0) == (b < 0) ? mag : -mag;
}

// In-place butterfly for x = u * kernel^{(x)n}, kernel rows (1,0),(1,1).
inline BitVector encode_full(BitVector u) {
    const std::size_t N = u.size();
    if (!is_power_of_two(static_cast<long>(N)))
        throw std::invalid_argument("encode_full: length " + std::to_string(N) +
                                    " is not a power of two");
    for (std::size_t h = 1; h < N; h *= 2)
        for (std::size_t i = 0; i < N; i += 2 * h)
            for (std::size_t j = i; j < i + h; ++j)
                u[j] ^= u[j + h];
    return u;
}

inline BitVector encode(const PolarCode& code, const BitVector& msg) {
    if (static_cast<int>(msg.size()) != code.K)
        throw std::invalid_argument("encode: message length " + std::to_string(msg.size()) +
                                    " does not match K=" + std::to_string(code.K));
    BitVector u(code.N, 0);
    for (int i = 0; i < code.K; ++i) u[code.info_set[i]] = msg[i];
    return encode_full(std::move(u));
}

struct ScResult {
    BitVector msg;    // length K, gathered at info_set
    BitVector u_hat;  // length N, full input estimate
};

// Successive-cancellation decoder with per-instance scratch; one instance per
// worker, never shared between concurrent calls.
class ScDecoder {
public:
    ScDecoder(const PolarCode& code, CheckNode check_node)
        : code_(code), check_node_(check_node) {
        alpha_.resize(code_.n + 1);
        beta_.resize(code_.n + 1);
        for (int d = 0; d <= code_.n; ++d) {
            alpha_[d].resize(static_cast<std::size_t>(code_.N) >> d);
            beta_[d].resize(static_cast<std::size_t>(code_.N) >> d);
        }
        u_hat_.resize(code_.N);
    }

    ScResult decode(const LlrVector& llrs) {
        if (static_cast<int>(llrs.size()) != code_.N)
            throw std::invalid_argument("sc_decode: LLR length " + std::to_string(llrs.size()) +
                                        " does not match N=" + std::to_string(code_.N));
        for (double v : llrs)
            if (!std::isfinite(v)) throw std::invalid_argument("sc_decode: non-finite LLR");
        alpha_[0].assign(llrs.begin(), llrs.end());
        recurse(0, 0);
        ScResult result;
        result.u_hat.assign(u_hat_.begin(), u_hat_.end());
        result.msg.resize(code_.K);
        for (int i = 0; i < code_.K; ++i) result.msg[i] = result.u_hat[code_.info_set[i]];
        return result;
    }

    const PolarCode& code() const { return code_; }
    CheckNode check_node() const { return check_node_; }

private:
    double f(double a, double b) const {
        return check_node_ == CheckNode::exact ? check_node_exact(a, b)
                                               : check_node_min_sum(a, b);
    }

    void recurse(int depth, int base) {
        const int len = code_.N >> depth;
        if (len == 1) {
            std::uint8_t bit = code_.is_frozen[base] ? 0 : (alpha_[depth][0] < 0.0 ? 1 : 0);
            u_hat_[base] = bit;
            beta_[depth][0] = bit;
            return;
        }
        const int half = len / 2;
        auto& a = alpha_[depth];
        auto& child = alpha_[depth + 1];
        auto& b = beta_[depth];
        auto& child_b = beta_[depth + 1];

        for (int i = 0; i < half; ++i) child[i] = f(a[i], a[i + half]);
        recurse(depth + 1, base);
        for (int i = 0; i < half; ++i) b[i] = child_b[i];

        for (int i = 0; i < half; ++i)
            child[i] = a[i + half] + (1.0 - 2.0 * b[i]) * a[i];
        recurse(depth + 1, base + half);

        for (int i = 0; i < half; ++i) {
            b[i] = static_cast<std::uint8_t>(b[i]) ^ child_b[i];
            b[i + half] = child_b[i];
        }
    }

    PolarCode code_;
    CheckNode check_node_;
    std::vector<std::vector<double>> alpha_;
    std::vector<std::vector<std::uint8_t>> beta_;
    std::vector<std::uint8_t> u_hat_;
};

inline ScResult sc_decode(const PolarCode& code, const LlrVector& llrs, CheckNode check_node) {
    ScDecoder decoder(code, check_node);
    return decoder.decode(llrs);
}

}  // namespace polarlink
