#include "tlh2/io.hpp"

#include "json.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace tlh2 {

namespace {

using nlohmann::json;

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path.string());
    }
    out << text;
    if (!out) {
        throw std::runtime_error("write failed: " + path.string());
    }
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open: " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

json matrix_to_json(const Matrix& M) {
    json flat = json::array();
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        for (Eigen::Index j = 0; j < M.cols(); ++j) {
            flat.push_back(M(i, j));
        }
    }
    return flat;
}

Matrix matrix_from_json(const json& flat, Eigen::Index rows, Eigen::Index cols,
                        const std::string& name) {
    if (!flat.is_array() || static_cast<Eigen::Index>(flat.size()) != rows * cols) {
        throw std::runtime_error("model file: \"" + name + "\" must hold " +
                                 std::to_string(rows * cols) + " numbers");
    }
    Matrix M(rows, cols);
    Eigen::Index idx = 0;
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j, ++idx) {
            const auto& entry = flat[static_cast<std::size_t>(idx)];
            if (!entry.is_number()) {
                throw std::runtime_error("model file: \"" + name + "\" has a non-numeric entry");
            }
            const double value = entry.get<double>();
            if (!std::isfinite(value)) {
                throw std::runtime_error("model file: \"" + name + "\" has a non-finite entry");
            }
            M(i, j) = value;
        }
    }
    return M;
}

struct ModelTriple {
    Matrix A, B, C;
};

json triple_to_json(const Matrix& A, const Matrix& B, const Matrix& C) {
    json j;
    j["n"] = A.rows();
    j["m"] = B.cols();
    j["p"] = C.rows();
    j["A"] = matrix_to_json(A);
    j["B"] = matrix_to_json(B);
    j["C"] = matrix_to_json(C);
    return j;
}

ModelTriple triple_from_file(const std::filesystem::path& path) {
    json j;
    try {
        j = json::parse(read_text(path));
    } catch (const json::parse_error& e) {
        throw std::runtime_error("model file " + path.string() + ": " + e.what());
    }
    for (const char* key : {"n", "m", "p", "A", "B", "C"}) {
        if (!j.contains(key)) {
            throw std::runtime_error("model file " + path.string() + ": missing \"" +
                                     key + "\"");
        }
    }
    const auto n = j["n"].get<Eigen::Index>();
    const auto m = j["m"].get<Eigen::Index>();
    const auto p = j["p"].get<Eigen::Index>();
    if (n < 1 || m < 1 || p < 1) {
        throw std::runtime_error("model file " + path.string() + ": n, m, p must be positive");
    }
    return {matrix_from_json(j["A"], n, n, "A"), matrix_from_json(j["B"], n, m, "B"),
            matrix_from_json(j["C"], p, n, "C")};
}

}  // namespace

std::string format_double(double value) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    if (res.ec != std::errc()) {
        throw std::runtime_error("format_double: conversion failed");
    }
    return std::string(buf, res.ptr);
}

void save_model(const StateSpaceModel& model, const std::filesystem::path& path) {
    write_text(path, triple_to_json(model.A(), model.B(), model.C()).dump(2) + "\n");
}

StateSpaceModel load_model(const std::filesystem::path& path) {
    auto t = triple_from_file(path);
    return StateSpaceModel(std::move(t.A), std::move(t.B), std::move(t.C));
}

void save_rom(const ReducedModel& rom, const std::filesystem::path& path) {
    write_text(path, triple_to_json(rom.A(), rom.B(), rom.C()).dump(2) + "\n");
}

ReducedModel load_rom(const std::filesystem::path& path) {
    auto t = triple_from_file(path);
    return ReducedModel(std::move(t.A), std::move(t.B), std::move(t.C));
}

void save_impulse(const ImpulseData& data, const std::filesystem::path& path) {
    std::ostringstream out;
    out << "k";
    for (int i = 0; i < data.p(); ++i) {
        for (int j = 0; j < data.m(); ++j) {
            out << ",h_" << i << "_" << j;
        }
    }
    out << "\n";
    for (int k = 0; k < data.horizon(); ++k) {
        out << k;
        for (int i = 0; i < data.p(); ++i) {
            for (int j = 0; j < data.m(); ++j) {
                out << ',' << format_double(data[k](i, j));
            }
        }
        out << "\n";
    }
    write_text(path, out.str());
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, ',')) {
        fields.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        fields.push_back("");
    }
    return fields;
}

double parse_double(const std::string& text, const std::string& context) {
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc() || res.ptr != end) {
        throw std::runtime_error(context + ": cannot parse number \"" + text + "\"");
    }
    return value;
}

}  // namespace

ImpulseData load_impulse(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open: " + path.string());
    }
    const std::string context = "impulse file " + path.string();

    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error(context + ": empty file");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    const auto header = split_csv_line(line);
    if (header.size() < 2 || header[0] != "k") {
        throw std::runtime_error(context + ": header must start with \"k\"");
    }
    // Infer (p, m) from the last column name, then demand the exact layout.
    int p = 0;
    int m = 0;
    {
        const std::string& last = header.back();
        int i = 0, j = 0;
        if (std::sscanf(last.c_str(), "h_%d_%d", &i, &j) != 2) {
            throw std::runtime_error(context + ": malformed column name \"" + last + "\"");
        }
        p = i + 1;
        m = j + 1;
    }
    if (static_cast<int>(header.size()) != 1 + p * m) {
        throw std::runtime_error(context + ": expected " + std::to_string(1 + p * m) +
                                 " columns");
    }
    for (int i = 0; i < p; ++i) {
        for (int j = 0; j < m; ++j) {
            const std::string expected = "h_" + std::to_string(i) + "_" + std::to_string(j);
            if (header[static_cast<std::size_t>(1 + i * m + j)] != expected) {
                throw std::runtime_error(context + ": column " + std::to_string(1 + i * m + j) +
                                         " must be \"" + expected + "\"");
            }
        }
    }

    std::vector<Matrix> samples;
    int expected_k = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const auto fields = split_csv_line(line);
        if (static_cast<int>(fields.size()) != 1 + p * m) {
            throw std::runtime_error(context + ": row " + std::to_string(expected_k) +
                                     " has wrong column count");
        }
        if (parse_double(fields[0], context) != static_cast<double>(expected_k)) {
            throw std::runtime_error(context + ": k must ascend from 0 without gaps");
        }
        Matrix sample(p, m);
        for (int i = 0; i < p; ++i) {
            for (int j = 0; j < m; ++j) {
                sample(i, j) = parse_double(fields[static_cast<std::size_t>(1 + i * m + j)], context);
            }
        }
        samples.push_back(std::move(sample));
        ++expected_k;
    }
    if (samples.empty()) {
        throw std::runtime_error(context + ": no data rows");
    }
    return ImpulseData(std::move(samples));
}

std::filesystem::path trace_sidecar_path(const std::filesystem::path& trace_path) {
    std::filesystem::path sidecar = trace_path;
    sidecar.replace_extension(".meta.json");
    return sidecar;
}

void save_trace(const ConvergenceTrace& trace, const std::filesystem::path& path) {
    std::ostringstream out;
    out << "iter,objective,rel_error,grad_norm,step,backtracks,spectral_radius,wall_ms\n";
    for (const auto& rec : trace.iterations) {
        out << rec.iter << ',' << format_double(rec.objective) << ','
            << format_double(rec.rel_error) << ',' << format_double(rec.grad_norm) << ','
            << format_double(rec.step) << ',' << rec.backtracks << ','
            << format_double(rec.spectral_radius) << ',' << format_double(rec.wall_ms) << "\n";
    }
    write_text(path, out.str());

    nlohmann::json meta;
    meta["reason"] = to_string(trace.reason);
    meta["iters"] = trace.iterations.size();
    write_text(trace_sidecar_path(path), meta.dump(2) + "\n");
}

}  // namespace tlh2
