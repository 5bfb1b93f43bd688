#pragma once

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "xwigner/conventions.hpp"
#include "xwigner/field.hpp"
#include "xwigner/grid.hpp"

namespace xwigner {
namespace detail {

/// 17 significant digits: the shortest count that round-trips any double.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline double parse_double(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw IoError("");
        return v;
    } catch (const std::exception&) {
        throw IoError(std::string("csv: cannot parse ") + what + " from '" + s + "'");
    }
}

inline long parse_long(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        long v = std::stol(s, &pos);
        if (pos != s.size()) throw IoError("");
        return v;
    } catch (const std::exception&) {
        throw IoError(std::string("csv: cannot parse ") + what + " from '" + s + "'");
    }
}

/// Header block: consecutive leading lines of the form "# key=value".
inline std::map<std::string, std::string> read_header(std::istream& in) {
    std::map<std::string, std::string> header;
    while (in.peek() == '#') {
        std::string line;
        std::getline(in, line);
        std::size_t start = line.find_first_not_of("# \t");
        if (start == std::string::npos) continue;
        std::size_t eq = line.find('=', start);
        if (eq == std::string::npos)
            throw IoError("csv: malformed header line '" + line + "'");
        header[line.substr(start, eq - start)] = line.substr(eq + 1);
    }
    return header;
}

inline const std::string& header_value(const std::map<std::string, std::string>& h,
                                       const std::string& key) {
    auto it = h.find(key);
    if (it == h.end()) throw IoError("csv: missing header key '" + key + "'");
    return it->second;
}

inline GridSpec grid_from_header(const std::map<std::string, std::string>& h) {
    return GridSpec(static_cast<int>(parse_long(header_value(h, "M"), "M")),
                    parse_double(header_value(h, "L"), "L"),
                    parse_double(header_value(h, "hbar"), "hbar"));
}

inline void write_grid_header(std::ostream& out, const std::string& kind, const GridSpec& g) {
    out << "# kind=" << kind << "\n";
    out << "# M=" << g.size << "\n";
    out << "# L=" << format_double(g.half_width) << "\n";
    out << "# hbar=" << format_double(g.hbar) << "\n";
    out << "# sign_ledger=" << sign_ledger() << "\n";
}

inline std::vector<std::string> split_csv_line(const std::string& line, std::size_t expected) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != expected)
        throw IoError("csv: expected " + std::to_string(expected) + " columns, got " +
                      std::to_string(cells.size()) + " in '" + line + "'");
    return cells;
}

}  // namespace detail

inline void write_wavefunction_csv(std::ostream& out, const WaveFunction& psi) {
    detail::write_grid_header(out, "wavefunction", psi.grid);
    out << "# domain=" << to_string(psi.domain) << "\n";
    out << "# columns=index,node,re,im\n";
    for (int j = 0; j < psi.grid.size; ++j)
        out << j << ',' << detail::format_double(psi.node(j)) << ','
            << detail::format_double(psi.samples[j].real()) << ','
            << detail::format_double(psi.samples[j].imag()) << "\n";
    if (!out) throw IoError("csv: stream failure while writing wavefunction");
}

inline WaveFunction read_wavefunction_csv(std::istream& in) {
    auto header = detail::read_header(in);
    if (detail::header_value(header, "kind") != "wavefunction")
        throw IoError("csv: expected kind=wavefunction, got '" + header["kind"] + "'");
    GridSpec g = detail::grid_from_header(header);
    const std::string& dom = detail::header_value(header, "domain");
    if (dom != "position" && dom != "momentum")
        throw IoError("csv: unknown domain '" + dom + "'");

    VectorXcd samples(g.size);
    std::string line;
    for (int j = 0; j < g.size; ++j) {
        if (!std::getline(in, line))
            throw IoError("csv: wavefunction truncated at row " + std::to_string(j));
        auto cells = detail::split_csv_line(line, 4);
        if (detail::parse_long(cells[0], "index") != j)
            throw IoError("csv: wavefunction rows out of order at row " + std::to_string(j));
        samples[j] = Complex(detail::parse_double(cells[2], "re"),
                             detail::parse_double(cells[3], "im"));
    }
    return WaveFunction(g, dom == "position" ? Domain::position : Domain::momentum,
                        std::move(samples));
}

inline void write_field_csv(std::ostream& out, const PhaseSpaceField& f) {
    detail::write_grid_header(out, "field", f.grid);
    out << "# label=" << to_string(f.label) << "\n";
    out << "# columns=j,k,re,im\n";
    for (int j = 0; j < f.grid.size; ++j)
        for (int k = 0; k < f.grid.size; ++k)
            out << j << ',' << k << ',' << detail::format_double(f.values(j, k).real()) << ','
                << detail::format_double(f.values(j, k).imag()) << "\n";
    if (!out) throw IoError("csv: stream failure while writing field");
}

inline PhaseSpaceField read_field_csv(std::istream& in) {
    auto header = detail::read_header(in);
    if (detail::header_value(header, "kind") != "field")
        throw IoError("csv: expected kind=field, got '" + header["kind"] + "'");
    GridSpec g = detail::grid_from_header(header);
    FieldLabel label = field_label_from_string(detail::header_value(header, "label"));

    FieldMatrix values(g.size, g.size);
    std::string line;
    for (int j = 0; j < g.size; ++j) {
        for (int k = 0; k < g.size; ++k) {
            if (!std::getline(in, line))
                throw IoError("csv: field truncated at row (" + std::to_string(j) + "," +
                              std::to_string(k) + ")");
            auto cells = detail::split_csv_line(line, 4);
            if (detail::parse_long(cells[0], "j") != j ||
                detail::parse_long(cells[1], "k") != k)
                throw IoError("csv: field rows out of order at (" + std::to_string(j) + "," +
                              std::to_string(k) + ")");
            values(j, k) = Complex(detail::parse_double(cells[2], "re"),
                                   detail::parse_double(cells[3], "im"));
        }
    }
    return PhaseSpaceField(g, label, std::move(values));
}

inline void write_wavefunction_csv(const std::string& path, const WaveFunction& psi) {
    std::ofstream out(path);
    if (!out) throw IoError("csv: cannot open '" + path + "' for writing");
    write_wavefunction_csv(out, psi);
}

inline WaveFunction read_wavefunction_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("csv: cannot open '" + path + "' for reading");
    return read_wavefunction_csv(in);
}

inline void write_field_csv(const std::string& path, const PhaseSpaceField& f) {
    std::ofstream out(path);
    if (!out) throw IoError("csv: cannot open '" + path + "' for writing");
    write_field_csv(out, f);
}

inline PhaseSpaceField read_field_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("csv: cannot open '" + path + "' for reading");
    return read_field_csv(in);
}

}  // namespace xwigner
