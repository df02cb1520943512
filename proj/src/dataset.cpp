#include "onecircuit/dataset.hpp"

#include <cstdint>
#include <fstream>
#include <stdexcept>

#include "onecircuit/rng.hpp"

namespace onecircuit {

namespace {

constexpr std::uint64_t kDatasetDomain = 0x44415441;
constexpr std::uint32_t kImageMagic = 0x00000803;
constexpr std::uint32_t kLabelMagic = 0x00000801;

std::uint32_t read_u32_be(std::istream& in, const std::string& what) {
    unsigned char bytes[4];
    if (!in.read(reinterpret_cast<char*>(bytes), 4))
        throw std::runtime_error("truncated IDX file while reading " + what);
    return (std::uint32_t{bytes[0]} << 24) | (std::uint32_t{bytes[1]} << 16) |
           (std::uint32_t{bytes[2]} << 8) | std::uint32_t{bytes[3]};
}

std::size_t next_power_of_two(std::size_t d) {
    std::size_t p = 2;
    while (p < d) p <<= 1;
    return p;
}

}  // namespace

void Dataset::validate() const {
    if (inputs.empty()) throw std::invalid_argument("dataset is empty");
    if (labels.size() != inputs.size())
        throw std::invalid_argument("dataset has " + std::to_string(inputs.size()) +
                                    " inputs but " + std::to_string(labels.size()) + " labels");
    const std::size_t dim = inputs[0].size();
    for (const auto& x : inputs)
        if (x.size() != dim)
            throw std::invalid_argument("dataset inputs have mixed dimensions");
}

Dataset generate_random_dataset(int count, int dimension, std::uint64_t seed) {
    if (count < 1 || dimension < 1)
        throw std::invalid_argument("dataset needs at least one input of dimension one");
    Dataset data;
    data.source = DatasetSource::RandomUniform;
    RngStream rng(seed, kDatasetDomain);
    data.inputs.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        std::vector<double> x(static_cast<std::size_t>(dimension));
        for (double& v : x) v = rng.next_double();
        data.inputs.push_back(std::move(x));
        data.labels.push_back(2);  // random data carries the fixed label "2"
    }
    return data;
}

Dataset load_idx_images(const std::string& image_path, const std::string& label_path,
                        int limit) {
    if (limit < 1) throw std::invalid_argument("limit must be at least 1");

    std::ifstream images(image_path, std::ios::binary);
    if (!images) throw std::runtime_error("cannot open image file " + image_path);
    if (const auto magic = read_u32_be(images, "image magic"); magic != kImageMagic)
        throw std::runtime_error("bad image magic 0x" + std::to_string(magic) + " in " +
                                 image_path);
    const std::uint32_t image_count = read_u32_be(images, "image count");
    const std::uint32_t rows = read_u32_be(images, "row count");
    const std::uint32_t cols = read_u32_be(images, "column count");

    std::ifstream labels(label_path, std::ios::binary);
    if (!labels) throw std::runtime_error("cannot open label file " + label_path);
    if (const auto magic = read_u32_be(labels, "label magic"); magic != kLabelMagic)
        throw std::runtime_error("bad label magic 0x" + std::to_string(magic) + " in " +
                                 label_path);
    const std::uint32_t label_count = read_u32_be(labels, "label count");

    if (image_count != label_count)
        throw std::runtime_error("image file holds " + std::to_string(image_count) +
                                 " items but label file holds " + std::to_string(label_count));
    if (static_cast<std::uint32_t>(limit) > image_count)
        throw std::runtime_error("asked for " + std::to_string(limit) + " images but only " +
                                 std::to_string(image_count) + " are available");

    const std::size_t pixels = std::size_t{rows} * cols;
    const std::size_t padded = next_power_of_two(pixels);

    Dataset data;
    data.source = DatasetSource::IdxImages;
    std::vector<unsigned char> buffer(pixels);
    for (int i = 0; i < limit; ++i) {
        if (!images.read(reinterpret_cast<char*>(buffer.data()),
                         static_cast<std::streamsize>(pixels)))
            throw std::runtime_error("truncated IDX file while reading image " +
                                     std::to_string(i));
        std::vector<double> x(padded, 0.0);
        for (std::size_t p = 0; p < pixels; ++p) x[p] = buffer[p] / 255.0;
        data.inputs.push_back(std::move(x));

        char label = 0;
        if (!labels.read(&label, 1))
            throw std::runtime_error("truncated IDX file while reading label " +
                                     std::to_string(i));
        data.labels.push_back(static_cast<unsigned char>(label));
    }
    return data;
}

}  // namespace onecircuit
