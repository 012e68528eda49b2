#include "umtk/synth.hpp"

#include <cmath>
#include <random>

#include "umtk/errors.hpp"

namespace umtk {

GeneratedCloud generate(const GeneratorSpec& spec) {
    if (spec.n < 1 || spec.d < 1)
        throw InvalidInput("generator needs n >= 1 and d >= 1");

    GeneratedCloud out;
    out.cloud.points = Matrix(spec.n, spec.d);
    std::mt19937_64 gen(spec.seed);

    switch (spec.family) {
        case Family::Uniform01: {
            std::uniform_real_distribution<double> u(0.0, 1.0);
            for (std::size_t i = 0; i < spec.n; ++i)
                for (std::size_t j = 0; j < spec.d; ++j) out.cloud.points(i, j) = u(gen);
            break;
        }
        case Family::HypercubeVertex: {
            std::uniform_int_distribution<int> bit(0, 1);
            for (std::size_t i = 0; i < spec.n; ++i)
                for (std::size_t j = 0; j < spec.d; ++j)
                    out.cloud.points(i, j) = static_cast<double>(bit(gen));
            break;
        }
        case Family::GaussianStandard: {
            std::normal_distribution<double> g(0.0, 1.0);
            for (std::size_t i = 0; i < spec.n; ++i)
                for (std::size_t j = 0; j < spec.d; ++j) out.cloud.points(i, j) = g(gen);
            break;
        }
        case Family::Mixture3Gaussian: {
            if (!(spec.separation > 0.0))
                throw InvalidInput("Mixture3Gaussian needs separation > 0");
            if (spec.d < 3)
                throw InvalidInput("Mixture3Gaussian needs d >= 3 to place centers on "
                                   "distinct axes");
            // Centers at (separation / sqrt(2)) * e_c are mutually `separation` apart.
            const double arm = spec.separation / std::sqrt(2.0);
            std::normal_distribution<double> g(0.0, 1.0);
            out.labels.reserve(spec.n);
            std::size_t row = 0;
            for (int c = 0; c < 3; ++c) {
                const std::size_t count =
                    spec.n / 3 + (static_cast<std::size_t>(c) < spec.n % 3 ? 1 : 0);
                for (std::size_t t = 0; t < count; ++t, ++row) {
                    for (std::size_t j = 0; j < spec.d; ++j) out.cloud.points(row, j) = g(gen);
                    out.cloud.points(row, static_cast<std::size_t>(c)) += arm;
                    out.labels.push_back(c);
                }
            }
            break;
        }
    }
    return out;
}

}  // namespace umtk
