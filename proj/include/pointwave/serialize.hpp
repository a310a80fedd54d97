#pragma once

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pointwave/crank_nicolson.hpp"
#include "pointwave/series_operator.hpp"

// CSV and JSON plumbing.  All numeric text goes through %.17g so files
// round-trip doubles exactly and identical runs produce identical bytes.

namespace pointwave {

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

class CsvWriter {
public:
    explicit CsvWriter(const std::string& path) : out_(path, std::ios::binary) {
        if (!out_) throw std::runtime_error("CsvWriter: cannot open " + path);
    }

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }

    void close() { out_.close(); }

private:
    std::ofstream out_;
};

using json = nlohmann::ordered_json;

inline json to_json(const FourierSum& f) {
    json terms = json::array();
    for (const auto& t : f.terms) {
        json e;
        e["c_re"] = t.c.re;
        e["c_im"] = t.c.im;
        e["k"] = t.k;
        e["c_re_err"] = t.c_err.re;
        e["c_im_err"] = t.c_err.im;
        e["k_err"] = t.k_err;
        terms.push_back(std::move(e));
    }
    return json{{"terms", std::move(terms)}};
}

inline FourierSum fourier_sum_from_json(const json& j) {
    FourierSum f;
    for (const auto& e : j.at("terms")) {
        FourierTerm t;
        t.c = {e.at("c_re").get<double>(), e.at("c_im").get<double>()};
        t.k = e.at("k").get<double>();
        t.c_err = {e.value("c_re_err", 0.0), e.value("c_im_err", 0.0)};
        t.k_err = e.value("k_err", 0.0);
        f.terms.push_back(t);
    }
    validate(f);
    return f;
}

inline json to_json(const EntireFunctionSeries& f) {
    json coeffs = json::array();
    for (const auto& c : f.coeffs) coeffs.push_back(json{{"re", c.re}, {"im", c.im}});
    json j{{"coeffs", std::move(coeffs)}};
    if (f.bound) j["bound"] = json{{"A", f.bound->A}, {"B", f.bound->B}};
    return j;
}

inline EntireFunctionSeries series_from_json(const json& j) {
    EntireFunctionSeries f;
    for (const auto& e : j.at("coeffs"))
        f.coeffs.push_back({e.at("re").get<double>(), e.at("im").get<double>()});
    if (j.contains("bound")) {
        A1Bound b{j["bound"].at("A").get<double>(), j["bound"].at("B").get<double>()};
        validate(b);
        f.bound = b;
    }
    return f;
}

inline json to_json(const OperatorSymbol& s) {
    json coeffs = json::array();
    for (const auto& c : s.coeffs) coeffs.push_back(json{{"re", c.re}, {"im", c.im}});
    return json{{"description", s.description}, {"coeffs", std::move(coeffs)}};
}

inline OperatorSymbol symbol_from_json(const json& j) {
    OperatorSymbol s;
    s.description = j.value("description", "");
    for (const auto& e : j.at("coeffs"))
        s.coeffs.push_back({e.at("re").get<double>(), e.at("im").get<double>()});
    return s;
}

// per-snapshot solver output: t, x, re, im, |psi|^2
inline void write_snapshot_csv(CsvWriter& w, double t, const FdGrid& grid,
                               const std::vector<ComplexScalar>& state) {
    for (int i = 0; i < grid.n_x; ++i) {
        const auto& v = state[i];
        w.row({fmt17(t), fmt17(grid_point(grid, i)), fmt17(v.re), fmt17(v.im), fmt17(cx_norm2(v))});
    }
}

} // namespace pointwave
