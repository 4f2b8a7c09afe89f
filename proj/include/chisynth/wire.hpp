#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "chisynth/gates.hpp"
#include "chisynth/matrix.hpp"

namespace chisynth {

/**
 * MatrixDocument: the JSON wire format for matrices over Z[chi^-1].
 * {"entries": 3x3 array of strings "(<p>+<q>w)/chi^<k>", "comment": optional}
 * The printer emits normal-form entries, so print-then-parse is the identity
 * on canonical documents.
 */
struct MatrixDocument {
    Matrix3 matrix;
    std::string comment;
};

inline std::string write_matrix_document(const MatrixDocument& doc) {
    nlohmann::ordered_json j;
    j["entries"] = nlohmann::ordered_json::array();
    for (int i = 0; i < 3; ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int c = 0; c < 3; ++c) row.push_back(ring_entry_string(doc.matrix.at(i, c)));
        j["entries"].push_back(row);
    }
    if (!doc.comment.empty()) j["comment"] = doc.comment;
    return j.dump(2) + "\n";
}

inline MatrixDocument parse_matrix_document(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("matrix document: ") + e.what());
    }
    if (!j.contains("entries")) throw ParseError("matrix document: missing 'entries'");
    const auto& rows = j["entries"];
    if (!rows.is_array() || rows.size() != 3) throw ParseError("matrix document: need 3 rows");
    MatrixDocument doc;
    for (int i = 0; i < 3; ++i) {
        const auto& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || row.size() != 3) throw ParseError("matrix document: need 3 columns");
        for (int c = 0; c < 3; ++c) {
            if (!row[static_cast<std::size_t>(c)].is_string())
                throw ParseError("matrix document: entries must be strings");
            doc.matrix.at(i, c) = parse_ring_entry(row[static_cast<std::size_t>(c)].get<std::string>());
        }
    }
    if (j.contains("comment")) doc.comment = j["comment"].get<std::string>();
    return doc;
}

/**
 * Word file: '#'-prefixed summary header lines, then one gate letter per line.
 */
inline std::string write_word_file(const GateWord& w, long sde_value, long steps) {
    std::string s;
    s += "# length " + std::to_string(w.size()) + "\n";
    s += "# sde " + std::to_string(sde_value) + "\n";
    s += "# steps " + std::to_string(steps) + "\n";
    for (Gate g : w) {
        s += gate_char(g);
        s += '\n';
    }
    return s;
}

inline GateWord parse_word_file(const std::string& text) {
    GateWord w;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        GateWord part = parse_word(line);
        w.insert(w.end(), part.begin(), part.end());
    }
    return w;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << text;
}

}  // namespace chisynth
