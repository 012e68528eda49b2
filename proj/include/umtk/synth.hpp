#pragma once

#include <cstdint>
#include <vector>

#include "umtk/um_core.hpp"

namespace umtk {

enum class Family {
    Uniform01,         // i.i.d. uniform on [0, 1]
    HypercubeVertex,   // i.i.d. fair 0/1 coordinates
    GaussianStandard,  // i.i.d. standard normal
    Mixture3Gaussian,  // three unit-sigma isotropic blobs, centers on distinct axes
};

struct GeneratorSpec {
    Family family = Family::Uniform01;
    std::size_t n = 0;
    std::size_t d = 0;
    std::uint64_t seed = 0;
    double separation = 10.0;  // Mixture3Gaussian only: pairwise center distance in sigma units
};

struct GeneratedCloud {
    PointCloud cloud;
    std::vector<int> labels;  // component per point; empty unless Mixture3Gaussian
};

// Draws the whole cloud from a single seeded stream, row by row, so identical
// specs reproduce identical bytes.
GeneratedCloud generate(const GeneratorSpec& spec);

}  // namespace umtk
