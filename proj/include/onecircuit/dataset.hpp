#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace onecircuit {

enum class DatasetSource { RandomUniform, IdxImages };

struct Dataset {
    std::vector<std::vector<double>> inputs;
    std::vector<int> labels;
    DatasetSource source = DatasetSource::RandomUniform;

    std::size_t size() const { return inputs.size(); }
    std::size_t dimension() const { return inputs.empty() ? 0 : inputs[0].size(); }
    void validate() const;
};

/// count vectors of dimension values drawn uniformly from [0, 1), all
/// labeled 2. Deterministic under seed.
Dataset generate_random_dataset(int count, int dimension, std::uint64_t seed);

/// Reads the first limit images/labels from an IDX pair (big-endian,
/// standard MNIST layout: magic 0x00000803 for images, 0x00000801 for
/// labels). Pixels are scaled to [0, 1] and each image is zero-padded to the
/// next power of two (784 -> 1024).
Dataset load_idx_images(const std::string& image_path, const std::string& label_path, int limit);

}  // namespace onecircuit
