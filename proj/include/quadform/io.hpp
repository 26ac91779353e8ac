#pragma once

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "quadform/errors.hpp"
#include "quadform/matrix.hpp"
#include "quadform/system.hpp"

// JSON documents for systems, transforms and results. Rationals are strings
// ("3", "-1/2"), matrices are arrays of rows, vectors are flat arrays.

namespace quadform::io {

using json = nlohmann::ordered_json;

inline constexpr int format_version = 1;

struct ParseOptions {
    bool symmetrize = false;
    std::size_t max_n = 16;
};

inline json to_json(const Rational& r) { return to_string(r); }

inline Rational rational_from_json(const json& j, const std::string& where) {
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const parse_error& e) {
            throw parse_error(where + ": " + e.what());
        }
    }
    if (j.is_number_integer()) {
        if (j.is_number_unsigned()) return Rational(mpz_class(std::to_string(j.get<std::uint64_t>())));
        return Rational(mpz_class(std::to_string(j.get<std::int64_t>())));
    }
    throw parse_error(where + ": expected a rational string such as \"-3/4\"");
}

inline json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json vector_to_json(const Matrix& v) {
    json out = json::array();
    if (v.cols() == 1)
        for (std::size_t i = 0; i < v.rows(); ++i) out.push_back(to_json(v(i, 0)));
    else
        for (std::size_t j = 0; j < v.cols(); ++j) out.push_back(to_json(v(0, j)));
    return out;
}

inline Matrix matrix_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty() || !j.front().is_array() || j.front().empty())
        throw parse_error(where + ": expected a non-empty array of rows");
    const std::size_t rows = j.size(), cols = j.front().size();
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols) throw parse_error(where + ": ragged matrix");
        for (std::size_t k = 0; k < cols; ++k)
            m(i, k) = rational_from_json(j[i][k], where + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
    }
    return m;
}

// Flat array -> column; an n x 1 array of rows is accepted as well.
inline Matrix column_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) throw parse_error(where + ": expected a non-empty array");
    if (j.front().is_array()) {
        Matrix m = matrix_from_json(j, where);
        if (m.cols() != 1) throw parse_error(where + ": expected a vector");
        return m;
    }
    Matrix m(j.size(), 1);
    for (std::size_t i = 0; i < j.size(); ++i)
        m(i, 0) = rational_from_json(j[i], where + "[" + std::to_string(i) + "]");
    return m;
}

namespace detail {

inline void check_version(const json& doc, const std::string& what) {
    if (!doc.is_object()) throw parse_error(what + ": expected a JSON object");
    if (doc.contains("format_version")) {
        const json& v = doc["format_version"];
        if (!v.is_number_integer() || v.get<std::int64_t>() != format_version)
            throw parse_error(what + ": unsupported format_version (expected 1)");
    }
}

inline void check_keys(const json& doc, std::initializer_list<const char*> allowed, const std::string& what) {
    for (const auto& [key, _] : doc.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) throw parse_error(what + ": unexpected field \"" + key + "\"");
    }
}

inline const json& require(const json& doc, const char* key, const std::string& what) {
    if (!doc.contains(key)) throw parse_error(what + ": missing field \"" + std::string(key) + "\"");
    return doc[key];
}

inline SymMatrix symmetric_from_json(const json& j, const std::string& where, bool symmetrize) {
    const Matrix m = matrix_from_json(j, where);
    if (!m.is_square()) throw parse_error(where + ": expected a square matrix");
    if (symmetrize) return SymMatrix::symmetrize(m);
    if (!m.is_symmetric()) throw validation_error(where + " is not symmetric");
    return SymMatrix::from_matrix(m);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// systems

inline json system_to_json(const QuadraticSystem& sys) {
    json doc;
    doc["format_version"] = format_version;
    doc["kind"] = std::string(to_string(sys.kind()));
    doc["n"] = sys.n();
    doc["A"] = matrix_to_json(sys.A());
    doc["b"] = vector_to_json(sys.b());
    json F = json::array();
    for (const auto& f : sys.F()) F.push_back(matrix_to_json(f.to_matrix()));
    doc["F"] = std::move(F);
    doc["G"] = matrix_to_json(sys.G());
    if (sys.h()) doc["h"] = vector_to_json(*sys.h());
    return doc;
}

inline RawSystem raw_system_from_json(const json& doc, const ParseOptions& opts = {}) {
    const std::string what = "system";
    detail::check_version(doc, what);
    detail::check_keys(doc, {"format_version", "kind", "n", "A", "b", "F", "G", "h"}, what);

    RawSystem raw;
    const json& kind = detail::require(doc, "kind", what);
    if (kind == "continuous")
        raw.kind = Kind::Continuous;
    else if (kind == "discrete")
        raw.kind = Kind::Discrete;
    else
        throw parse_error("system: kind must be \"continuous\" or \"discrete\"");

    const json& n = detail::require(doc, "n", what);
    if (!n.is_number_integer() || n.get<std::int64_t>() < 1) throw parse_error("system: n must be a positive integer");
    raw.n = n.get<std::size_t>();
    if (raw.n > opts.max_n)
        throw validation_error("system: n = " + std::to_string(raw.n) + " exceeds the limit " +
                               std::to_string(opts.max_n));

    raw.A = matrix_from_json(detail::require(doc, "A", what), "A");
    raw.b = column_from_json(detail::require(doc, "b", what), "b");
    const json& F = detail::require(doc, "F", what);
    if (!F.is_array()) throw parse_error("system: F must be an array of matrices");
    for (std::size_t i = 0; i < F.size(); ++i)
        raw.F.push_back(matrix_from_json(F[i], "F_" + std::to_string(i + 1)));
    raw.G = matrix_from_json(detail::require(doc, "G", what), "G");
    if (doc.contains("h")) raw.h = column_from_json(doc["h"], "h");
    return raw;
}

inline QuadraticSystem system_from_json(const json& doc, const ParseOptions& opts = {}) {
    return QuadraticSystem::from_raw(raw_system_from_json(doc, opts), opts.symmetrize);
}

// ---------------------------------------------------------------------------
// transforms

inline json transform_to_json(const QuadraticTransform& tf) {
    json doc;
    doc["format_version"] = format_version;
    json P = json::array();
    for (const auto& p : tf.P) P.push_back(matrix_to_json(p.to_matrix()));
    doc["P"] = std::move(P);
    doc["Q"] = matrix_to_json(tf.Q.to_matrix());
    doc["r"] = vector_to_json(tf.r);
    return doc;
}

inline QuadraticTransform transform_from_json(const json& doc) {
    const std::string what = "transform";
    detail::check_version(doc, what);
    detail::check_keys(doc, {"format_version", "P", "Q", "r"}, what);
    QuadraticTransform tf;
    tf.Q = detail::symmetric_from_json(detail::require(doc, "Q", what), "Q", false);
    const std::size_t n = tf.Q.dim();
    const json& P = detail::require(doc, "P", what);
    if (!P.is_array() || P.size() != n) throw parse_error("transform: expected " + std::to_string(n) + " P matrices");
    for (std::size_t i = 0; i < n; ++i) tf.P.push_back(detail::symmetric_from_json(P[i], "P_" + std::to_string(i + 1), false));
    tf.r = Matrix(1, n);
    if (doc.contains("r")) tf.r = column_from_json(doc["r"], "r").transpose();
    tf.check(n);
    return tf;
}

inline json linear_transform_to_json(const LinearTransform& lt) {
    json doc;
    doc["format_version"] = format_version;
    doc["T"] = matrix_to_json(lt.T);
    doc["v"] = vector_to_json(lt.v);
    return doc;
}

inline LinearTransform linear_transform_from_json(const json& doc) {
    const std::string what = "linear transform";
    detail::check_version(doc, what);
    detail::check_keys(doc, {"format_version", "T", "v"}, what);
    LinearTransform lt{matrix_from_json(detail::require(doc, "T", what), "T"),
                       column_from_json(detail::require(doc, "v", what), "v")};
    if (!lt.T.is_square() || lt.v.rows() != lt.T.rows()) throw parse_error("linear transform: shape mismatch");
    return lt;
}

// ---------------------------------------------------------------------------
// results

inline FormType form_type_from_string(const std::string& s) {
    for (FormType f : {FormType::Linearized, FormType::TypeI, FormType::TypeII, FormType::DiscreteBilinear})
        if (to_string(f) == s) return f;
    throw parse_error("unknown form_type \"" + s + "\"");
}

inline json result_to_json(const NormalFormResult& r) {
    json doc;
    doc["format_version"] = format_version;
    doc["form_type"] = std::string(to_string(r.form_type));
    doc["nonzero_quadratic_terms"] = r.nonzero_quadratic_terms;
    doc["normal"] = system_to_json(r.normal);
    doc["transform"] = transform_to_json(r.transform);
    return doc;
}

inline NormalFormResult result_from_json(const json& doc) {
    const std::string what = "result";
    detail::check_version(doc, what);
    detail::check_keys(doc, {"format_version", "form_type", "nonzero_quadratic_terms", "normal", "transform"}, what);
    const json& terms = detail::require(doc, "nonzero_quadratic_terms", what);
    if (!terms.is_number_integer() || terms.get<std::int64_t>() < 0)
        throw parse_error("result: nonzero_quadratic_terms must be a non-negative integer");
    const json& form = detail::require(doc, "form_type", what);
    if (!form.is_string()) throw parse_error("result: form_type must be a string");
    return {system_from_json(detail::require(doc, "normal", what)),
            transform_from_json(detail::require(doc, "transform", what)), form_type_from_string(form.get<std::string>()),
            terms.get<std::size_t>()};
}

inline bool is_result_document(const json& doc) { return doc.is_object() && doc.contains("normal"); }

// ---------------------------------------------------------------------------
// files

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw parse_error(path + ": " + e.what());
    }
}

namespace detail {

inline void write_pretty(std::ostringstream& out, const json& j, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    const std::string inner(static_cast<std::size_t>(indent + 2), ' ');
    if (j.is_object()) {
        if (j.empty()) {
            out << "{}";
            return;
        }
        out << "{\n";
        bool first = true;
        for (const auto& [key, value] : j.items()) {
            out << (first ? "" : ",\n") << inner << json(key).dump() << ": ";
            write_pretty(out, value, indent + 2);
            first = false;
        }
        out << "\n" << pad << "}";
    } else if (j.is_array()) {
        bool flat = true;
        for (const auto& e : j) flat = flat && !e.is_structured();
        if (flat) {
            out << j.dump(-1, ' ', false, nlohmann::detail::error_handler_t::strict);
            return;
        }
        out << "[\n";
        for (std::size_t k = 0; k < j.size(); ++k) {
            out << (k ? ",\n" : "") << inner;
            write_pretty(out, j[k], indent + 2);
        }
        out << "\n" << pad << "]";
    } else {
        out << j.dump();
    }
}

}  // namespace detail

// Indented output with each matrix row on one line.
inline std::string dump(const json& doc) {
    std::ostringstream out;
    detail::write_pretty(out, doc, 0);
    out << "\n";
    return out.str();
}

}  // namespace quadform::io
