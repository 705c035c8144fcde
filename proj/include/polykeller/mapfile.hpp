#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "parse.hpp"
#include "poly_map.hpp"

namespace polykeller {

/// Text form of a polynomial map:
///   # comment
///   vars: x1 x2
///   F1 = x1 + x2^3
///   F2 = x2
/// Component order is declaration order.
struct MapFile {
    VariableFrame frame;
    std::vector<std::pair<std::string, Polynomial>> components;

    PolyMap to_map() const {
        std::vector<Polynomial> comps;
        comps.reserve(components.size());
        for (const auto& [name, p] : components)
            comps.push_back(p);
        return PolyMap(frame, std::move(comps));
    }
};

struct MapFileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline MapFile parse_map_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    MapFile out;
    bool have_vars = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        auto begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos)
            continue;
        auto end = line.find_last_not_of(" \t\r");
        line = line.substr(begin, end - begin + 1);
        if (!have_vars) {
            if (line.rfind("vars:", 0) != 0)
                throw MapFileError("line " + std::to_string(lineno) +
                                   ": expected 'vars: name1 name2 ...' before components");
            std::istringstream vars(line.substr(5));
            std::vector<std::string> names;
            std::string name;
            while (vars >> name)
                names.push_back(name);
            if (names.empty())
                throw MapFileError("line " + std::to_string(lineno) + ": empty variable list");
            try {
                out.frame = VariableFrame(std::move(names));
            } catch (const std::invalid_argument& e) {
                throw MapFileError("line " + std::to_string(lineno) + ": " + e.what());
            }
            have_vars = true;
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw MapFileError("line " + std::to_string(lineno) + ": expected 'Name = expression'");
        std::string name = line.substr(0, eq);
        auto nend = name.find_last_not_of(" \t");
        name = nend == std::string::npos ? "" : name.substr(0, nend + 1);
        if (name.empty())
            throw MapFileError("line " + std::to_string(lineno) + ": empty component name");
        std::string expr = line.substr(eq + 1);
        try {
            out.components.emplace_back(name, parse_polynomial(expr, out.frame));
        } catch (const ParseError& e) {
            throw MapFileError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (!have_vars)
        throw MapFileError("missing 'vars:' line");
    if (out.components.empty())
        throw MapFileError("map file declares no components");
    return out;
}

inline MapFile read_map_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw MapFileError("cannot open map file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_map_text(buf.str());
}

inline std::string write_map_text(const MapFile& mf, const std::string& header_comment = "") {
    std::ostringstream out;
    if (!header_comment.empty()) {
        std::istringstream lines(header_comment);
        std::string l;
        while (std::getline(lines, l))
            out << "# " << l << "\n";
    }
    out << "vars:";
    for (const auto& name : mf.frame.names())
        out << " " << name;
    out << "\n";
    for (const auto& [name, p] : mf.components)
        out << name << " = " << print_polynomial(p, mf.frame) << "\n";
    return out.str();
}

inline MapFile map_file_of(const PolyMap& f, const std::string& stem = "F") {
    MapFile mf;
    mf.frame = f.frame;
    for (int i = 0; i < f.size(); ++i)
        mf.components.emplace_back(stem + std::to_string(i + 1), f[i]);
    return mf;
}

} // namespace polykeller
