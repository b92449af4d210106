#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sparsemix/dataset.hpp"

namespace sparsemix {

// svmlight_sparse: one row per line, whitespace-separated "index:1" tokens
//   with 1-based indices, optional leading integer class label.
// dense_csv: comma-separated 0/1 values, one row per line, no header.
enum class DataFormat { svmlight_sparse, dense_csv };

DataFormat parse_format(const std::string& name);
std::string format_name(DataFormat format);

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LoadedData {
    SparseBinaryDataset data;
    std::vector<int32_t> labels;  // empty when the file carries none
};

// declared_dim overrides the inferred dimension; every index must stay below
// it. Without it the dimension is max observed index + 1 (at least 1).
LoadedData load_dataset(const std::string& path, DataFormat format,
                        std::optional<uint32_t> declared_dim = std::nullopt);

// Writes svmlight_sparse with 1-based indices; labels, when given, become the
// leading token of each line.
void save_svmlight(const SparseBinaryDataset& data, const std::string& path,
                   const std::vector<int32_t>* labels = nullptr);

// One integer per line, aligned with data rows.
std::vector<int32_t> load_labels(const std::string& path);
void save_labels(const std::vector<int32_t>& labels, const std::string& path);

}  // namespace sparsemix
