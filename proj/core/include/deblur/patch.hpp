#pragma once

#include <array>
#include <span>
#include <vector>

#include "deblur/image.hpp"
#include "deblur/structure_tensor.hpp"

namespace deblur {

/// Extracts k x k patches centered on any pixel, replicating the image border.
class PatchSampler {
public:
    PatchSampler(const Image& image, int patch_size);

    int patch_size() const noexcept { return size_; }

    /// Writes the row-major patch centered at (cx, cy) into `out` (size k*k).
    void extract(int cx, int cy, std::span<double> out) const noexcept;

private:
    int size_;
    Image padded_;
};

/// The eight symmetries of the square lattice. Coordinates are relative to
/// the patch center with x along columns and y down the rows.
enum class Dihedral {
    identity,
    rotate90,        // (x, y) -> (-y, x)
    rotate180,       // (x, y) -> (-x, -y)
    rotate270,       // (x, y) -> (y, -x)
    flip_x,          // mirror about the vertical axis: (x, y) -> (-x, y)
    flip_y,          // mirror about the horizontal axis: (x, y) -> (x, -y)
    transpose,       // (x, y) -> (y, x)
    anti_transpose,  // (x, y) -> (-y, -x)
};

inline constexpr std::array<Dihedral, 8> kDihedralGroup = {
    Dihedral::identity, Dihedral::rotate90, Dihedral::rotate180, Dihedral::rotate270,
    Dihedral::flip_x,   Dihedral::flip_y,   Dihedral::transpose, Dihedral::anti_transpose,
};

const char* to_string(Dihedral g) noexcept;

/// Applies the transform to a coordinate offset.
std::array<int, 2> apply(Dihedral g, int x, int y) noexcept;

/// Index permutation for a row-major k x k patch: transformed[i] = original[source[i]].
std::vector<int> source_permutation(Dihedral g, int patch_size);

/// Transformed copy of a row-major k x k patch.
std::vector<double> transform_patch(std::span<const double> patch, int patch_size, Dihedral g);

/// Transformed copy of a whole image (rotations by 90/270 swap width and height).
Image transform_image(const Image& image, Dihedral g);

/// Angle bin of a patch after transformation, for patches off bin boundaries.
int transform_angle_bin(int angle_bin, Dihedral g) noexcept;

/// Key of the transformed patch: angle bin remapped, strength and coherence unchanged.
PatchKey transform_key(PatchKey key, Dihedral g) noexcept;

}  // namespace deblur
