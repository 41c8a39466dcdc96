#include "hypermode/spec_file.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "hypermode/errors.hpp"

namespace hypermode {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

void line_column(std::string_view text, std::size_t byte, int& line, int& column) {
    line = 1;
    column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.contains(key)) throw ValidationError(where + ": unknown key '" + key + "'");
    }
}

const json& require(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) throw ValidationError(where + ": missing key '" + key + "'");
    return obj.at(key);
}

int require_positive_int(const json& obj, const std::string& key) {
    const json& v = require(obj, key, "document");
    if (!v.is_number_integer() || v.get<long long>() <= 0) {
        throw ValidationError("'" + key + "' must be a positive integer");
    }
    return v.get<int>();
}

Polynomial parse_entry(const json& entry, int nvars, const std::string& where) {
    if (!entry.is_array()) throw ValidationError(where + ": entry must be an array of terms");
    std::vector<Term> terms;
    for (std::size_t t = 0; t < entry.size(); ++t) {
        const json& term = entry[t];
        const std::string tw = where + " term " + std::to_string(t);
        if (!term.is_object()) throw ValidationError(tw + ": term must be an object");
        reject_unknown_keys(term, {"coeff", "powers"}, tw);
        const json& coeff = require(term, "coeff", tw);
        const json& powers = require(term, "powers", tw);
        if (!coeff.is_number()) throw ValidationError(tw + ": coeff must be a number");
        if (!powers.is_array()) throw ValidationError(tw + ": powers must be an array");
        if (static_cast<int>(powers.size()) != nvars) {
            throw ValidationError(tw + ": powers has length " + std::to_string(powers.size()) + ", expected " +
                                  std::to_string(nvars));
        }
        Term parsed{coeff.get<double>(), {}};
        for (const auto& p : powers) {
            if (!p.is_number_integer() || p.get<long long>() < 0) {
                throw ValidationError(tw + ": powers must be non-negative integers");
            }
            parsed.powers.push_back(p.get<int>());
        }
        terms.push_back(std::move(parsed));
    }
    return Polynomial(nvars, std::move(terms));
}

PolyMatrixFn parse_matrix(const json& m, int rows, int cols, int nvars, const std::string& name) {
    if (!m.is_array() || static_cast<int>(m.size()) != rows) {
        throw ValidationError(name + ": expected " + std::to_string(rows) + " rows");
    }
    std::vector<Polynomial> entries;
    for (int i = 0; i < rows; ++i) {
        const json& row = m[i];
        if (!row.is_array() || static_cast<int>(row.size()) != cols) {
            throw ValidationError(name + ": row " + std::to_string(i + 1) + " must have " + std::to_string(cols) +
                                  " entries");
        }
        for (int j = 0; j < cols; ++j) {
            entries.push_back(parse_entry(row[j], nvars,
                                          name + "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")"));
        }
    }
    return PolyMatrixFn(rows, cols, nvars, std::move(entries));
}

PolyMatrixFn parse_column(const json& v, int rows, int nvars, const std::string& name) {
    if (!v.is_array() || static_cast<int>(v.size()) != rows) {
        throw ValidationError(name + ": expected " + std::to_string(rows) + " entries");
    }
    std::vector<Polynomial> entries;
    for (int i = 0; i < rows; ++i) entries.push_back(parse_entry(v[i], nvars, name + "(" + std::to_string(i + 1) + ")"));
    return PolyMatrixFn(rows, 1, nvars, std::move(entries));
}

const json& require_array(const json& doc, const std::string& key, std::size_t size, const std::string& what) {
    const json& a = require(doc, key, "document");
    if (!a.is_array()) throw ValidationError("'" + key + "' must be an array");
    if (a.size() != size) {
        throw ValidationError("'" + key + "' must have " + what + " = " + std::to_string(size) + " entries, got " +
                              std::to_string(a.size()));
    }
    return a;
}

SecondOrderSystem parse_second_order(const json& doc) {
    reject_unknown_keys(doc, {"kind", "name", "n", "d", "B00", "C", "B", "H"}, "document");
    SecondOrderSystem s;
    s.name = doc.value("name", "unnamed");
    s.n = require_positive_int(doc, "n");
    s.d = require_positive_int(doc, "d");
    const int n = s.n;
    const int d = s.d;
    s.B00 = parse_matrix(require(doc, "B00", "document"), n, n, n, "B00");
    const json& c = require_array(doc, "C", static_cast<std::size_t>(d), "d");
    for (int j = 0; j < d; ++j) s.C.push_back(parse_matrix(c[j], n, n, n, "C" + std::to_string(j + 1)));
    const json& b = require_array(doc, "B", static_cast<std::size_t>(d), "d");
    for (int j = 0; j < d; ++j) {
        if (!b[j].is_array() || static_cast<int>(b[j].size()) != d) {
            throw ValidationError("'B' row " + std::to_string(j + 1) + " must have d = " + std::to_string(d) +
                                  " matrices");
        }
        for (int k = 0; k < d; ++k) {
            s.B.push_back(parse_matrix(b[j][k], n, n, n, "B" + std::to_string(j + 1) + std::to_string(k + 1)));
        }
    }
    if (doc.contains("H")) {
        s.H = parse_column(doc.at("H"), n, (d + 2) * n, "H");
    } else {
        s.H = PolyMatrixFn(n, 1, (d + 2) * n);
    }
    s.validate();
    return s;
}

FirstOrderSystem parse_first_order(const json& doc) {
    reject_unknown_keys(doc, {"kind", "name", "m", "d", "A0", "A", "G", "structural_zero_dim"}, "document");
    FirstOrderSystem f;
    f.name = doc.value("name", "unnamed");
    f.m = require_positive_int(doc, "m");
    f.d = require_positive_int(doc, "d");
    const int m = f.m;
    f.A0 = parse_matrix(require(doc, "A0", "document"), m, m, m, "A0");
    const json& a = require_array(doc, "A", static_cast<std::size_t>(f.d), "d");
    for (int k = 0; k < f.d; ++k) f.A.emplace_back(parse_matrix(a[k], m, m, m, "A" + std::to_string(k + 1)));
    f.G = doc.contains("G") ? parse_column(doc.at("G"), m, m, "G") : PolyMatrixFn(m, 1, m);
    if (doc.contains("structural_zero_dim")) {
        const json& z = doc.at("structural_zero_dim");
        if (!z.is_number_integer()) throw ValidationError("'structural_zero_dim' must be an integer");
        f.structural_zero_dim = z.get<int>();
    }
    f.validate();
    return f;
}

ordered_json dump_entry(const Polynomial& p) {
    ordered_json terms = ordered_json::array();
    for (const auto& t : p.terms()) {
        ordered_json term;
        term["coeff"] = t.coeff;
        term["powers"] = t.powers;
        terms.push_back(std::move(term));
    }
    return terms;
}

ordered_json dump_matrix(const PolyMatrixFn& f) {
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < f.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (int j = 0; j < f.cols(); ++j) row.push_back(dump_entry(f(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

ordered_json dump_column(const PolyMatrixFn& f) {
    ordered_json col = ordered_json::array();
    for (int i = 0; i < f.rows(); ++i) col.push_back(dump_entry(f(i, 0)));
    return col;
}

const PolyMatrixFn& require_poly(const MatrixFn& f, const std::string& name) {
    if (!f.polynomial()) throw Unsupported(name + " is not polynomial (" + f.label() + ") and cannot be serialized");
    return *f.polynomial();
}

}  // namespace

System parse_system(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        int line = 0;
        int column = 0;
        line_column(text, e.byte > 0 ? e.byte - 1 : 0, line, column);
        throw ParseError("parse error at line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                             e.what(),
                         line, column);
    }
    if (!doc.is_object()) throw ValidationError("document must be an object");
    const json& kind = require(doc, "kind", "document");
    if (!kind.is_string()) throw ValidationError("'kind' must be a string");
    try {
        if (kind == "second-order") return parse_second_order(doc);
        if (kind == "first-order") return parse_first_order(doc);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("schema violation: ") + e.what());
    }
    throw ValidationError("'kind' must be \"second-order\" or \"first-order\"");
}

System load_system(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open spec file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_system(ss.str());
}

std::string print_system(const System& system) {
    ordered_json doc;
    if (const auto* s = std::get_if<SecondOrderSystem>(&system)) {
        doc["kind"] = "second-order";
        doc["name"] = s->name;
        doc["n"] = s->n;
        doc["d"] = s->d;
        doc["B00"] = dump_matrix(s->B00);
        ordered_json c = ordered_json::array();
        for (const auto& cj : s->C) c.push_back(dump_matrix(cj));
        doc["C"] = std::move(c);
        ordered_json b = ordered_json::array();
        for (int j = 0; j < s->d; ++j) {
            ordered_json row = ordered_json::array();
            for (int k = 0; k < s->d; ++k) row.push_back(dump_matrix(s->Bjk(j, k)));
            b.push_back(std::move(row));
        }
        doc["B"] = std::move(b);
        doc["H"] = dump_column(s->H);
    } else {
        const auto& f = std::get<FirstOrderSystem>(system);
        doc["kind"] = "first-order";
        doc["name"] = f.name;
        doc["m"] = f.m;
        doc["d"] = f.d;
        doc["A0"] = dump_matrix(require_poly(f.A0, "A0"));
        ordered_json a = ordered_json::array();
        for (int k = 0; k < f.d; ++k) a.push_back(dump_matrix(require_poly(f.A[k], "A" + std::to_string(k + 1))));
        doc["A"] = std::move(a);
        doc["G"] = dump_column(require_poly(f.G, "G"));
        doc["structural_zero_dim"] = f.structural_zero_dim;
    }
    return doc.dump(2) + "\n";
}

}  // namespace hypermode
