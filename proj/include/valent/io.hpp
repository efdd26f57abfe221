#pragma once

#include <valent/cones.hpp>
#include <valent/entropy.hpp>
#include <valent/lattice.hpp>
#include <valent/tropical.hpp>
#include <valent/verify.hpp>

#include <json.hpp>

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace valent {

using Json = nlohmann::ordered_json;

inline constexpr int kMaxLatticeDim = 12;

// -- parsing ---------------------------------------------------------------

inline Rat parse_rational_json(const Json& j, const char* what) {
    if (!j.is_string()) throw std::invalid_argument(std::string(what) + " must be a rational string");
    return parse_rational(j.get<std::string>());
}

inline FieldDescriptor parse_field_descriptor(const Json& j) {
    if (!j.is_object() || !j.contains("type"))
        throw std::invalid_argument("field descriptor must be an object with a \"type\"");
    std::string type = j.at("type").get<std::string>();
    if (type == "p-adic") {
        if (!j.contains("p") || !j.at("p").is_number_integer())
            throw std::invalid_argument("p-adic field needs an integer \"p\"");
        return FieldDescriptor::padic(j.at("p").get<long>());
    }
    if (type == "puiseux") return FieldDescriptor::puiseux();
    throw std::invalid_argument("unknown field type '" + type + "' (expected \"p-adic\" or \"puiseux\")");
}

inline FieldElement parse_puiseux_terms(const FieldDescriptor& f, const Json& terms) {
    FieldElement x = field_zero(f);
    for (const Json& term : terms) {
        if (!term.is_object() || !term.contains("c") || !term.contains("e"))
            throw std::invalid_argument("malformed puiseux term: expected {\"c\": rational, \"e\": rational}");
        x = x + puiseux_term(f, parse_rational_json(term.at("c"), "term coefficient"),
                             parse_rational_json(term.at("e"), "term exponent"));
    }
    return x;
}

inline FieldElement parse_entry(const FieldDescriptor& f, const Json& j) {
    if (j.is_string()) return field_from_rational(f, parse_rational(j.get<std::string>()));
    if (f.is_padic()) throw std::invalid_argument("p-adic entries must be rational strings \"a\" or \"a/b\"");
    if (j.is_array()) return parse_puiseux_terms(f, j);
    if (j.is_object()) {
        if (!j.contains("num")) throw std::invalid_argument("puiseux entry object needs a \"num\" term list");
        FieldElement num = parse_puiseux_terms(f, j.at("num"));
        FieldElement den = j.contains("den") ? parse_puiseux_terms(f, j.at("den")) : field_one(f);
        return num / den;
    }
    throw std::invalid_argument("puiseux entries must be rational strings, term lists or {num, den} objects");
}

inline Lattice parse_lattice_json(const Json& j) {
    if (!j.is_object() || !j.contains("field") || !j.contains("matrix"))
        throw std::invalid_argument("lattice file must contain \"field\" and \"matrix\"");
    FieldDescriptor f = parse_field_descriptor(j.at("field"));
    const Json& rows = j.at("matrix");
    if (!rows.is_array() || rows.empty()) throw std::invalid_argument("matrix must be a nonempty array of rows");
    int d = static_cast<int>(rows.size());
    if (d > kMaxLatticeDim)
        throw std::invalid_argument("matrix dimension " + std::to_string(d) + " exceeds the maximum " +
                                    std::to_string(kMaxLatticeDim));
    Matrix m(f, d, d);
    for (int i = 0; i < d; ++i) {
        const Json& row = rows.at(static_cast<std::size_t>(i));
        if (!row.is_array() || static_cast<int>(row.size()) != d)
            throw std::invalid_argument("matrix must be square: row " + std::to_string(i + 1) + " has " +
                                        std::to_string(row.size()) + " entries, expected " + std::to_string(d));
        for (int k = 0; k < d; ++k) m.at(i, k) = parse_entry(f, row.at(static_cast<std::size_t>(k)));
    }
    return Lattice(std::move(m));  // rejects singular representatives
}

inline Lattice parse_lattice_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open lattice file '" + path + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("invalid JSON in '" + path + "': " + e.what());
    }
    return parse_lattice_json(j);
}

// -- serialization -----------------------------------------------------------

inline Json field_to_json(const FieldDescriptor& f) {
    Json j;
    if (f.is_padic()) {
        j["type"] = "p-adic";
        j["p"] = f.p();
    } else {
        j["type"] = "puiseux";
    }
    return j;
}

inline Json terms_to_json(const Poly& p, long ram) {
    Json arr = Json::array();
    for (const auto& [c, e] : RationalFunction::terms(p, ram)) {
        Json term;
        term["c"] = c.get_str();
        term["e"] = e.get_str();
        arr.push_back(term);
    }
    return arr;
}

inline Json entry_to_json(const FieldElement& x) {
    if (x.field().is_padic()) return x.rat().get_str();
    const RationalFunction& f = x.fun();
    if (f.is_zero()) return "0";
    if (f.den().degree() == 0 && f.num().degree() == 0) return Rat(f.num().coeff(0)).get_str();
    if (f.den().degree() == 0) return terms_to_json(f.num(), f.ram());
    Json j;
    j["num"] = terms_to_json(f.num(), f.ram());
    j["den"] = terms_to_json(f.den(), f.ram());
    return j;
}

inline Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(entry_to_json(m.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

inline Json lattice_to_json(const FieldDescriptor& f, const Matrix& m) {
    Json j;
    j["field"] = field_to_json(f);
    j["matrix"] = matrix_to_json(m);
    return j;
}

/// Subset-keyed object in bitmask order: {"": ..., "1": ..., "2": ..., "1,2": ...}.
inline Json entropy_to_json(const EntropyVector& h) {
    Json j;
    for (SubsetMask m = 0; m < (SubsetMask{1} << h.dim); ++m) j[subset_key(m)] = h.at(m).get_str();
    return j;
}

inline Json facet_to_json(const FacetTriple& t) {
    Json j;
    Json idx = Json::array();
    for (int k : subset_indices(t.conditioning)) idx.push_back(k + 1);
    j["I"] = idx;
    j["i"] = t.i;
    j["j"] = t.j;
    return j;
}

inline Json supermodular_report_to_json(const SupermodularReport& r) {
    Json j;
    j["inside"] = r.inside;
    j["violated"] = Json::array();
    for (const auto& t : r.violated) j["violated"].push_back(facet_to_json(t));
    j["tight"] = Json::array();
    for (const auto& t : r.tight) j["tight"].push_back(facet_to_json(t));
    return j;
}

inline Json wpoint_to_json(const WPoint& p) {
    Json j;
    j["w"] = p.w.get_str();
    j["x"] = p.x.get_str();
    j["y"] = p.y.get_str();
    j["z"] = p.z.get_str();
    return j;
}

inline Json tail_row_to_json(const TailReportRow& row) {
    Json j;
    j["v"] = row.v;
    j["empirical"] = row.empirical;
    j["exact"] = row.exact.get_str();
    if (row.z)
        j["z"] = *row.z;
    else
        j["z"] = nullptr;
    return j;
}

inline std::string vector_key(const std::vector<long>& v) {
    std::string s;
    for (long x : v) {
        if (!s.empty()) s += ',';
        s += std::to_string(x);
    }
    return s;
}

}  // namespace valent
