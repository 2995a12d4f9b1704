#pragma once

#include "deblur/blending.hpp"
#include "deblur/filter_bank.hpp"
#include "deblur/filter_learning.hpp"
#include "deblur/image.hpp"
#include "deblur/image_io.hpp"
#include "deblur/inference.hpp"
#include "deblur/kernel_spec.hpp"
#include "deblur/patch.hpp"
#include "deblur/sharpness.hpp"
#include "deblur/structure_tensor.hpp"
