#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "deblur/structure_tensor.hpp"

namespace deblur {

class FilterBankFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Learned dictionary: one k*k restoration filter per PatchKey, plus the
/// hashing configuration it was trained with.
struct FilterBank {
    static constexpr std::uint16_t kFormatVersion = 1;

    int patch_size = 1;
    QuantConfig quant;
    std::string kernel_tag;
    std::vector<std::vector<double>> filters;  // PatchKey::kCount entries of patch_size^2 taps
    std::vector<std::uint64_t> counts;         // training patches per bucket

    /// Every bucket holds the delta filter (center tap 1).
    static FilterBank identity(int patch_size, QuantConfig quant = {}, std::string kernel_tag = "identity");

    std::span<const double> filter(PatchKey key) const noexcept { return filters[static_cast<std::size_t>(key.index())]; }

    /// Throws std::invalid_argument if the bank violates its invariants.
    void validate() const;

    bool operator==(const FilterBank&) const = default;
};

std::vector<double> identity_filter(int patch_size);

/// DFBK binary layout, little-endian throughout:
///   "DFBK" | version u16 | patch_size u16 | bin counts 3 x u16 (angle, strength, coherence)
///   | strength_low, strength_high, coherence_low, coherence_high f64
///   | kernel_tag length u32 + UTF-8 bytes
///   | 216 x (count u64 | patch_size^2 x f64 taps), in PatchKey::index() order.
void write_filter_bank(const FilterBank& bank, std::ostream& out);
FilterBank read_filter_bank(std::istream& in);

void save_filter_bank(const FilterBank& bank, const std::filesystem::path& path);
FilterBank load_filter_bank(const std::filesystem::path& path);

}  // namespace deblur
