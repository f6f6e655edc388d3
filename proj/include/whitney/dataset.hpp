#pragma once

#include <Eigen/Dense>

#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "whitney/jet.hpp"

namespace whitney {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error("parse error: " + what) {}
};
struct DuplicatePoint : std::runtime_error {
    DuplicatePoint(int i, int j)
        : std::runtime_error("duplicate point at rows " + std::to_string(i) + " and " + std::to_string(j)),
          first(i), second(j) {}
    int first;
    int second;
};
struct DimensionMismatch : std::runtime_error {
    explicit DimensionMismatch(const std::string& what) : std::runtime_error("dimension mismatch: " + what) {}
};

/// Finite scattered data: distinct points of R^n with one value each.
struct Dataset {
    int n = 1;
    std::vector<Vec> points;
    std::vector<double> values;

    int size() const { return static_cast<int>(points.size()); }

    /// min pairwise distance
    double separation() const {
        double d = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < points.size(); ++i)
            for (std::size_t j = i + 1; j < points.size(); ++j)
                d = std::min(d, (points[i] - points[j]).norm());
        return d;
    }

    void validate() const {
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (points[i].size() != n) throw DimensionMismatch("point " + std::to_string(i));
            if (!points[i].allFinite() || !std::isfinite(values[i]))
                throw ParseError("non-finite entry at row " + std::to_string(i));
        }
        for (std::size_t i = 0; i < points.size(); ++i)
            for (std::size_t j = i + 1; j < points.size(); ++j)
                if ((points[i] - points[j]).norm() == 0.0)
                    throw DuplicatePoint(static_cast<int>(i), static_cast<int>(j));
    }

    Dataset restricted(const std::vector<int>& subset) const {
        Dataset out;
        out.n = n;
        for (int i : subset) {
            out.points.push_back(points[static_cast<std::size_t>(i)]);
            out.values.push_back(values[static_cast<std::size_t>(i)]);
        }
        return out;
    }
};

struct DatasetFile {
    Dataset data;
    int m = 0; // smoothness order when carried by the file (JSON only)
};

inline DatasetFile parse_dataset_json(const nlohmann::json& j) {
    DatasetFile out;
    try {
        out.data.n = j.at("n").get<int>();
        if (j.contains("m")) out.m = j.at("m").get<int>();
        for (const auto& p : j.at("points")) {
            auto xs = p.at("x").get<std::vector<double>>();
            if (static_cast<int>(xs.size()) != out.data.n)
                throw DimensionMismatch("point with " + std::to_string(xs.size()) + " coordinates, n = " +
                                        std::to_string(out.data.n));
            Vec x(out.data.n);
            for (int i = 0; i < out.data.n; ++i) x[i] = xs[static_cast<std::size_t>(i)];
            out.data.points.push_back(x);
            out.data.values.push_back(p.at("f").get<double>());
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(e.what());
    }
    out.data.validate();
    return out;
}

inline DatasetFile parse_dataset_csv(std::istream& in) {
    DatasetFile out;
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty CSV");
    std::vector<std::string> header;
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) header.push_back(cell);
    }
    if (header.size() < 2 || header.back() != "f") throw ParseError("CSV header must be x1..xn,f");
    out.data.n = static_cast<int>(header.size()) - 1;
    int row = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> vals;
        while (std::getline(ss, cell, ',')) {
            try {
                vals.push_back(std::stod(cell));
            } catch (...) {
                throw ParseError("row " + std::to_string(row) + ": bad number '" + cell + "'");
            }
        }
        if (static_cast<int>(vals.size()) != out.data.n + 1)
            throw DimensionMismatch("row " + std::to_string(row));
        Vec x(out.data.n);
        for (int i = 0; i < out.data.n; ++i) x[i] = vals[static_cast<std::size_t>(i)];
        out.data.points.push_back(x);
        out.data.values.push_back(vals.back());
        ++row;
    }
    out.data.validate();
    return out;
}

inline DatasetFile load_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") return parse_dataset_csv(in);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(e.what());
    }
    return parse_dataset_json(j);
}

inline nlohmann::json dataset_to_json(const Dataset& d, int m) {
    nlohmann::json points = nlohmann::json::array();
    for (std::size_t i = 0; i < d.points.size(); ++i) {
        std::vector<double> xs(d.points[i].data(), d.points[i].data() + d.n);
        points.push_back({{"x", xs}, {"f", d.values[i]}});
    }
    return {{"n", d.n}, {"m", m}, {"points", points}};
}

inline void save_dataset(const Dataset& d, int m, const std::string& path) {
    std::ofstream out(path);
    out << dataset_to_json(d, m).dump(2) << "\n";
}

} // namespace whitney
