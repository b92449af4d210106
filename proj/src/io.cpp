#include "sparsemix/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

namespace sparsemix {

namespace {

[[noreturn]] void fail(const std::string& path, size_t line_no,
                       const std::string& what) {
    throw ParseError(path + ":" + std::to_string(line_no) + ": " + what);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

bool parse_int(std::string_view tok, int64_t& out) {
    const char* begin = tok.data();
    const char* end = tok.data() + tok.size();
    auto res = std::from_chars(begin, end, out);
    return res.ec == std::errc() && res.ptr == end;
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> toks;
    size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        if (i > start) toks.push_back(line.substr(start, i - start));
    }
    return toks;
}

struct SvmlightResult {
    std::vector<SparseRow> rows;
    std::vector<int32_t> labels;
    uint32_t max_index_plus_one = 0;
};

SvmlightResult parse_svmlight(std::istream& in, const std::string& path,
                              std::optional<uint32_t> declared_dim) {
    SvmlightResult out;
    // unset until the first non-empty line decides it
    std::optional<bool> labeled;
    size_t first_empty_line = 0;  // 0 = none seen
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto toks = split_ws(trim(line));
        if (toks.empty()) {
            // all-zero row; only legal in unlabeled files (checked at the end,
            // the mode may not be known yet)
            if (first_empty_line == 0) first_empty_line = line_no;
            out.rows.emplace_back();
            continue;
        }
        size_t first_feature = 0;
        bool has_label = toks[0].find(':') == std::string_view::npos;
        if (!labeled.has_value()) {
            labeled = has_label;
        } else if (*labeled != has_label) {
            fail(path, line_no, has_label ? "unexpected label token"
                                          : "missing label token");
        }
        if (has_label) {
            int64_t label = 0;
            if (!parse_int(toks[0], label)) {
                fail(path, line_no, "label is not an integer: '" +
                                        std::string(toks[0]) + "'");
            }
            out.labels.push_back(static_cast<int32_t>(label));
            first_feature = 1;
        }
        SparseRow row;
        row.indices.reserve(toks.size() - first_feature);
        for (size_t t = first_feature; t < toks.size(); ++t) {
            auto tok = toks[t];
            size_t colon = tok.find(':');
            if (colon == std::string_view::npos || colon == 0 ||
                colon + 1 >= tok.size()) {
                fail(path, line_no, "malformed feature token '" + std::string(tok) + "'");
            }
            int64_t file_index = 0;
            if (!parse_int(tok.substr(0, colon), file_index) || file_index < 1) {
                fail(path, line_no, "feature index must be a positive integer: '" +
                                        std::string(tok) + "'");
            }
            int64_t value = 0;
            auto value_tok = tok.substr(colon + 1);
            if (!parse_int(value_tok, value) || value != 1) {
                fail(path, line_no, "feature value must be 1: '" + std::string(tok) + "'");
            }
            uint32_t index = static_cast<uint32_t>(file_index - 1);  // to 0-based
            if (declared_dim && index >= *declared_dim) {
                fail(path, line_no, "index " + std::to_string(file_index) +
                                        " exceeds declared dimension " +
                                        std::to_string(*declared_dim));
            }
            row.indices.push_back(index);
        }
        std::sort(row.indices.begin(), row.indices.end());
        if (std::adjacent_find(row.indices.begin(), row.indices.end()) !=
            row.indices.end()) {
            fail(path, line_no, "duplicate feature index");
        }
        if (!row.indices.empty()) {
            out.max_index_plus_one = std::max(out.max_index_plus_one, row.indices.back() + 1);
        }
        out.rows.push_back(std::move(row));
    }
    if (labeled.value_or(false) && first_empty_line != 0) {
        fail(path, first_empty_line, "row without label in a labeled file");
    }
    return out;
}

std::vector<SparseRow> parse_dense_csv(std::istream& in, const std::string& path,
                                       std::optional<uint32_t> declared_dim,
                                       uint32_t& dim_out) {
    std::vector<SparseRow> rows;
    std::string line;
    size_t line_no = 0;
    std::optional<uint32_t> width;
    while (std::getline(in, line)) {
        ++line_no;
        SparseRow row;
        uint32_t col = 0;
        size_t pos = 0;
        while (pos <= line.size()) {
            size_t comma = line.find(',', pos);
            size_t end = comma == std::string::npos ? line.size() : comma;
            auto tok = trim(std::string_view(line).substr(pos, end - pos));
            if (tok == "1") {
                row.indices.push_back(col);
            } else if (tok != "0") {
                fail(path, line_no, "expected 0 or 1, got '" + std::string(tok) + "'");
            }
            ++col;
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (!width.has_value()) {
            width = col;
            if (declared_dim && *declared_dim != col) {
                fail(path, line_no, "row width " + std::to_string(col) +
                                        " does not match declared dimension " +
                                        std::to_string(*declared_dim));
            }
        } else if (*width != col) {
            fail(path, line_no, "row width " + std::to_string(col) +
                                    " differs from first row width " +
                                    std::to_string(*width));
        }
        rows.push_back(std::move(row));
    }
    dim_out = width.value_or(declared_dim.value_or(1));
    return rows;
}

}  // namespace

DataFormat parse_format(const std::string& name) {
    if (name == "svmlight-sparse" || name == "svmlight") {
        return DataFormat::svmlight_sparse;
    }
    if (name == "dense-csv") return DataFormat::dense_csv;
    throw std::invalid_argument("unknown data format '" + name + "'");
}

std::string format_name(DataFormat format) {
    return format == DataFormat::svmlight_sparse ? "svmlight-sparse" : "dense-csv";
}

LoadedData load_dataset(const std::string& path, DataFormat format,
                        std::optional<uint32_t> declared_dim) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open for reading");
    if (format == DataFormat::svmlight_sparse) {
        auto parsed = parse_svmlight(in, path, declared_dim);
        uint32_t dim = declared_dim.value_or(std::max<uint32_t>(parsed.max_index_plus_one, 1));
        return LoadedData{SparseBinaryDataset(dim, std::move(parsed.rows)),
                          std::move(parsed.labels)};
    }
    uint32_t dim = 0;
    auto rows = parse_dense_csv(in, path, declared_dim, dim);
    return LoadedData{SparseBinaryDataset(dim, std::move(rows)), {}};
}

void save_svmlight(const SparseBinaryDataset& data, const std::string& path,
                   const std::vector<int32_t>* labels) {
    if (labels && labels->size() != data.size()) {
        throw std::invalid_argument("save_svmlight: label count does not match rows");
    }
    std::ofstream out(path);
    if (!out) throw ParseError(path + ": cannot open for writing");
    for (size_t i = 0; i < data.size(); ++i) {
        bool first = true;
        if (labels) {
            out << (*labels)[i];
            first = false;
        }
        for (uint32_t j : data.row(i).indices) {
            if (!first) out << ' ';
            out << (j + 1) << ":1";  // to 1-based
            first = false;
        }
        out << '\n';
    }
    if (!out) throw ParseError(path + ": write failed");
}

std::vector<int32_t> load_labels(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open for reading");
    std::vector<int32_t> labels;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto tok = trim(line);
        if (tok.empty()) continue;
        int64_t value = 0;
        if (!parse_int(tok, value)) {
            fail(path, line_no, "label is not an integer: '" + std::string(tok) + "'");
        }
        labels.push_back(static_cast<int32_t>(value));
    }
    return labels;
}

void save_labels(const std::vector<int32_t>& labels, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError(path + ": cannot open for writing");
    for (int32_t label : labels) out << label << '\n';
    if (!out) throw ParseError(path + ": write failed");
}

}  // namespace sparsemix
