#include "deblur/filter_bank.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace deblur {

std::vector<double> identity_filter(int patch_size) {
    std::vector<double> taps(static_cast<std::size_t>(patch_size) * patch_size, 0.0);
    taps[taps.size() / 2] = 1.0;
    return taps;
}

FilterBank FilterBank::identity(int patch_size, QuantConfig quant, std::string kernel_tag) {
    if (patch_size < 1 || patch_size % 2 == 0) throw std::invalid_argument("patch size must be odd and positive");
    FilterBank bank;
    bank.patch_size = patch_size;
    bank.quant = quant;
    bank.kernel_tag = std::move(kernel_tag);
    bank.filters.assign(PatchKey::kCount, identity_filter(patch_size));
    bank.counts.assign(PatchKey::kCount, 0);
    return bank;
}

void FilterBank::validate() const {
    if (patch_size < 1 || patch_size % 2 == 0) throw std::invalid_argument("filter bank patch size must be odd");
    quant.validate();
    if (filters.size() != PatchKey::kCount || counts.size() != PatchKey::kCount)
        throw std::invalid_argument("filter bank must hold exactly 216 entries");
    const std::size_t taps = static_cast<std::size_t>(patch_size) * patch_size;
    for (const auto& f : filters) {
        if (f.size() != taps) throw std::invalid_argument("filter tap count does not match patch size");
        for (double t : f)
            if (!std::isfinite(t)) throw std::invalid_argument("filter bank contains non-finite taps");
    }
}

namespace {

template <typename T>
void put(std::ostream& out, T value) {
    if constexpr (std::is_floating_point_v<T>) {
        using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
        put(out, std::bit_cast<U>(value));
        return;
    } else {
        unsigned char bytes[sizeof(T)];
        for (std::size_t i = 0; i < sizeof(T); ++i) bytes[i] = static_cast<unsigned char>(value >> (8 * i));
        out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
    }
}

template <typename T>
T get(std::istream& in) {
    if constexpr (std::is_floating_point_v<T>) {
        using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
        return std::bit_cast<T>(get<U>(in));
    } else {
        unsigned char bytes[sizeof(T)];
        in.read(reinterpret_cast<char*>(bytes), sizeof(T));
        if (in.gcount() != static_cast<std::streamsize>(sizeof(T)))
            throw FilterBankFormatError("filter bank file is truncated");
        T value = 0;
        for (std::size_t i = 0; i < sizeof(T); ++i) value |= static_cast<T>(bytes[i]) << (8 * i);
        return value;
    }
}

constexpr char kMagic[4] = {'D', 'F', 'B', 'K'};

}  // namespace

void write_filter_bank(const FilterBank& bank, std::ostream& out) {
    bank.validate();
    if (bank.patch_size > 0xFFFF) throw std::invalid_argument("patch size does not fit the file format");
    out.write(kMagic, 4);
    put<std::uint16_t>(out, FilterBank::kFormatVersion);
    put<std::uint16_t>(out, static_cast<std::uint16_t>(bank.patch_size));
    put<std::uint16_t>(out, PatchKey::kAngleBins);
    put<std::uint16_t>(out, PatchKey::kStrengthBins);
    put<std::uint16_t>(out, PatchKey::kCoherenceBins);
    put<double>(out, bank.quant.strength_low);
    put<double>(out, bank.quant.strength_high);
    put<double>(out, bank.quant.coherence_low);
    put<double>(out, bank.quant.coherence_high);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(bank.kernel_tag.size()));
    out.write(bank.kernel_tag.data(), static_cast<std::streamsize>(bank.kernel_tag.size()));
    for (int i = 0; i < PatchKey::kCount; ++i) {
        put<std::uint64_t>(out, bank.counts[i]);
        for (double t : bank.filters[i]) put<double>(out, t);
    }
    if (!out) throw std::runtime_error("failed to write filter bank");
}

FilterBank read_filter_bank(std::istream& in) {
    char magic[4] = {};
    in.read(magic, 4);
    if (in.gcount() != 4 || std::memcmp(magic, kMagic, 4) != 0)
        throw FilterBankFormatError("not a filter bank file (bad magic)");
    const auto version = get<std::uint16_t>(in);
    if (version != FilterBank::kFormatVersion)
        throw FilterBankFormatError("unsupported filter bank version " + std::to_string(version));

    FilterBank bank;
    bank.patch_size = get<std::uint16_t>(in);
    if (bank.patch_size < 1 || bank.patch_size % 2 == 0) throw FilterBankFormatError("filter bank patch size must be odd");
    const auto angle_bins = get<std::uint16_t>(in);
    const auto strength_bins = get<std::uint16_t>(in);
    const auto coherence_bins = get<std::uint16_t>(in);
    if (angle_bins != PatchKey::kAngleBins || strength_bins != PatchKey::kStrengthBins ||
        coherence_bins != PatchKey::kCoherenceBins)
        throw FilterBankFormatError("unsupported bin layout in filter bank");
    bank.quant.strength_low = get<double>(in);
    bank.quant.strength_high = get<double>(in);
    bank.quant.coherence_low = get<double>(in);
    bank.quant.coherence_high = get<double>(in);

    const auto tag_length = get<std::uint32_t>(in);
    if (tag_length > (1u << 20)) throw FilterBankFormatError("kernel tag is implausibly long");
    bank.kernel_tag.resize(tag_length);
    in.read(bank.kernel_tag.data(), tag_length);
    if (in.gcount() != static_cast<std::streamsize>(tag_length)) throw FilterBankFormatError("filter bank file is truncated");

    const std::size_t taps = static_cast<std::size_t>(bank.patch_size) * bank.patch_size;
    bank.filters.resize(PatchKey::kCount);
    bank.counts.resize(PatchKey::kCount);
    for (int i = 0; i < PatchKey::kCount; ++i) {
        bank.counts[i] = get<std::uint64_t>(in);
        bank.filters[i].resize(taps);
        for (double& t : bank.filters[i]) t = get<double>(in);
    }
    try {
        bank.validate();
    } catch (const std::invalid_argument& e) {
        throw FilterBankFormatError(e.what());
    }
    return bank;
}

void save_filter_bank(const FilterBank& bank, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
    write_filter_bank(bank, out);
    out.close();
    if (!out) throw std::runtime_error(path.string() + ": write failed");
}

FilterBank load_filter_bank(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error(path.string() + ": cannot open");
    try {
        return read_filter_bank(in);
    } catch (const FilterBankFormatError& e) {
        throw FilterBankFormatError(path.string() + ": " + e.what());
    }
}

}  // namespace deblur
