#pragma once

#include <cstdint>
#include <vector>

namespace polarlink {

// Bits are stored one per byte, values restricted to {0, 1}.
using BitVector = std::vector<std::uint8_t>;

// Log-likelihood ratios, positive means bit 0 is more likely.
using LlrVector = std::vector<double>;

// Real-valued channel symbols (transmitted: exactly +-1; received: anything).
using SymbolVector = std::vector<double>;

// Clamp applied to every LLR entering the decoder; keeps tanh/atanh stable.
inline constexpr double kLlrMax = 40.0;

}  // namespace polarlink
