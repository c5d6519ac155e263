#pragma once

namespace lowtw {

// Measured on the calibration matrix and enforced as regression bounds.

// |E(K)| <= C_size * n * (1 + log2 log2 max(n, 4)); measured ratio about 0.68.
inline constexpr double kEmulatorSizeConstant = 2.0;
// Additive gap <= C_emb * eps * D over all copy pairs; measured up to about 1.9.
inline constexpr double kEmbeddingGapConstant = 4.0;
// Same bound restricted to portal copies.
inline constexpr double kBoundaryGapConstant = 4.0;
// Host width <= C_tw * (log2 log2 n)^2 / eps; measured up to about 4.7.
inline constexpr double kEmbeddingWidthConstant = 6.0;
// Per-trial gap of successful vertices <= C_root * eps * (d(r,u) + d(r,v)).
inline constexpr double kRootedGapConstant = 4.0;

}  // namespace lowtw
