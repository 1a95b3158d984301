#pragma once

// State files and plot-data formatting.
//
// State file: {"rho": [[[re, im], x4], x4]}, row-major, basis |00>, |01>,
// |10>, |11>. Structural problems raise ParseError; data that parses but is
// not a density matrix raises InvalidState.

#include <array>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qent/error.hpp"
#include "qent/states.hpp"

namespace qent::io {

inline nlohmann::json state_to_json(const DensityMatrix& rho) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < 4; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < 4; ++j) row.push_back({rho(i, j).real(), rho(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return {{"rho", std::move(rows)}};
}

inline DensityMatrix state_from_json(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("rho")) throw ParseError("state file: expected an object with key \"rho\"");
    const auto& rows = doc.at("rho");
    if (!rows.is_array() || rows.size() != 4) throw ParseError("state file: \"rho\" must have 4 rows");
    Mat4 m{};
    for (std::size_t i = 0; i < 4; ++i) {
        const auto& row = rows[i];
        if (!row.is_array() || row.size() != 4) throw ParseError("state file: every row must have 4 entries");
        for (std::size_t j = 0; j < 4; ++j) {
            const auto& z = row[j];
            if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
                throw ParseError("state file: entries must be [re, im] number pairs");
            m(i, j) = Complex{z[0].get<double>(), z[1].get<double>()};
        }
    }
    return DensityMatrix::from_matrix(m);
}

inline DensityMatrix read_state(std::istream& in) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("state file: ") + e.what());
    }
    return state_from_json(doc);
}

inline DensityMatrix read_state_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open state file: " + path);
    return read_state(in);
}

inline void write_state(std::ostream& out, const DensityMatrix& rho) { out << state_to_json(rho).dump(2) << '\n'; }

/// 15 significant digits, trailing zeros dropped ("%.15g").
inline std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", x == 0.0 ? 0.0 : x);
    return buf;
}

/// One CSV line, comma separated, LF terminated.
inline void write_csv_row(std::ostream& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out << ',';
        out << cells[i];
    }
    out << '\n';
}

/// "a,b,c,d" -> four doubles.
inline std::array<double, 4> parse_spectrum_list(std::string_view text) {
    std::array<double, 4> v{};
    std::size_t count = 0;
    std::string item;
    std::stringstream ss{std::string(text)};
    while (std::getline(ss, item, ',')) {
        if (count == 4) throw ParseError("spectrum: expected exactly 4 comma-separated values");
        try {
            std::size_t used = 0;
            v[count] = std::stod(item, &used);
            if (used != item.size()) throw ParseError("spectrum: not a number: " + item);
        } catch (const std::logic_error&) {
            throw ParseError("spectrum: not a number: " + item);
        }
        ++count;
    }
    if (count != 4) throw ParseError("spectrum: expected exactly 4 comma-separated values");
    return v;
}

}  // namespace qent::io
