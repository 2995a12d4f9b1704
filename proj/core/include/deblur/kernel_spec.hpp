#pragma once

#include <string>
#include <string_view>

#include "deblur/image.hpp"

namespace deblur {

/// Textual blur description: "gaussian:K:SIGMA", "box:K" or "identity".
struct KernelSpec {
    enum class Type { identity, gaussian, box };

    Type type = Type::identity;
    int size = 1;
    double sigma = 0.0;

    static KernelSpec parse(std::string_view text);
    std::string to_string() const;
    BlurKernel build() const;
};

}  // namespace deblur
