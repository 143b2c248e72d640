#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rainbow {

using Color = std::uint32_t;
/// Subset of the palette [k]; bit c set iff color c is a member.
using ColorMask = std::uint64_t;

/// Palette sizes are bounded by the width of ColorMask.
inline constexpr std::size_t kMaxPalette = 64;

inline constexpr ColorMask full_mask(std::size_t k) {
    return k >= 64 ? ~ColorMask{0} : (ColorMask{1} << k) - 1;
}

inline constexpr bool mask_contains(ColorMask m, Color c) { return (m >> c) & 1u; }

/// One per-vertex value (a(i), e(i)) of a rainbow sequence.
struct ColorSymbol {
    Color color = 0;
    ColorMask colors = 0;

    /// Integer encoding color * 2^k + colors, used for enumeration order and
    /// lexicographic comparison. Requires k * 2^k to fit in 64 bits.
    constexpr std::uint64_t code(std::size_t k) const {
        return (static_cast<std::uint64_t>(color) << k) | colors;
    }

    static constexpr ColorSymbol from_code(std::uint64_t code, std::size_t k) {
        return ColorSymbol{static_cast<Color>(code >> k), code & full_mask(k)};
    }

    friend constexpr bool operator==(const ColorSymbol&, const ColorSymbol&) = default;
    friend constexpr auto operator<=>(const ColorSymbol&, const ColorSymbol&) = default;
};

/// Number of distinct symbols over palette [k], i.e. k * 2^k.
inline std::uint64_t symbol_count(std::size_t k) {
    if (k == 0) return 0;
    if (k > 57) throw std::overflow_error("symbol_count: k * 2^k does not fit in 64 bits");
    return static_cast<std::uint64_t>(k) << k;
}

/// Per-vertex (color, color-set) pairs over the palette [k]; vertex order is
/// the natural order of [n].
class RainbowSequence {
public:
    RainbowSequence() = default;

    /// k = 0 is accepted only for the empty sequence.
    RainbowSequence(std::size_t k, std::vector<ColorSymbol> entries)
        : k_(k), entries_(std::move(entries)) {
        if (k_ > kMaxPalette) {
            throw std::invalid_argument("RainbowSequence: palette size " + std::to_string(k_) +
                                        " exceeds " + std::to_string(kMaxPalette));
        }
        if (k_ == 0 && !entries_.empty()) {
            throw std::invalid_argument("RainbowSequence: empty palette requires n = 0");
        }
        const ColorMask allowed = full_mask(k_);
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            if (entries_[i].color >= k_ || (entries_[i].colors & ~allowed) != 0) {
                throw std::invalid_argument("RainbowSequence: entry " + std::to_string(i) +
                                            " uses a color outside the palette");
            }
        }
    }

    std::size_t palette() const noexcept { return k_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }

    const ColorSymbol& operator[](std::size_t i) const { return entries_[i]; }
    Color color(std::size_t i) const { return entries_.at(i).color; }
    ColorMask colors(std::size_t i) const { return entries_.at(i).colors; }

    const std::vector<ColorSymbol>& entries() const noexcept { return entries_; }

    friend bool operator==(const RainbowSequence&, const RainbowSequence&) = default;
    friend auto operator<=>(const RainbowSequence&, const RainbowSequence&) = default;

private:
    std::size_t k_ = 1;
    std::vector<ColorSymbol> entries_;
};

/// Builds a k = 1 sequence from threshold bits: bit i set means vertex i
/// dominates every earlier vertex.
inline RainbowSequence threshold_sequence(const std::vector<bool>& dominating) {
    std::vector<ColorSymbol> e;
    e.reserve(dominating.size());
    for (bool d : dominating) e.push_back({0, d ? ColorMask{1} : ColorMask{0}});
    return RainbowSequence(1, std::move(e));
}

}  // namespace rainbow
