#include "dilatron/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace dilatron::io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw DilationError(ErrorCode::InvalidInput, path + ": " + msg);
}

const Json& field(const Json& j, const char* key, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(path, std::string("missing field '") + key + "'");
    return *it;
}

long positive_int(const Json& j, const std::string& path) {
    if (!j.is_number_integer() || j.get<long>() <= 0) fail(path, "expected a positive integer");
    return j.get<long>();
}

double finite_number(const Json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    const double x = j.get<double>();
    if (!std::isfinite(x)) fail(path, "entry is not finite");
    return x;
}

const Json& array(const Json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array");
    return j;
}

}  // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) fail(path, "expected [re, im]");
    return {finite_number(j[0], path + "[0]"), finite_number(j[1], path + "[1]")};
}

Json matrix_to_json(const CMatrix& m) {
    Json data = Json::array();
    for (long i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (long k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
        data.push_back(std::move(row));
    }
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

CMatrix matrix_from_json(const Json& j, const std::string& path) {
    const long rows = positive_int(field(j, "rows", path), path + ".rows");
    const long cols = positive_int(field(j, "cols", path), path + ".cols");
    const Json& data = array(field(j, "data", path), path + ".data");
    if (static_cast<long>(data.size()) != rows) {
        fail(path + ".data", "has " + std::to_string(data.size()) + " rows, expected " +
                                 std::to_string(rows));
    }
    CMatrix m(rows, cols);
    for (long i = 0; i < rows; ++i) {
        const std::string rp = path + ".data[" + std::to_string(i) + "]";
        const Json& row = array(data[static_cast<std::size_t>(i)], rp);
        if (static_cast<long>(row.size()) != cols) {
            fail(rp, "has " + std::to_string(row.size()) + " entries, expected " +
                         std::to_string(cols));
        }
        for (long k = 0; k < cols; ++k) {
            m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)],
                                        rp + "[" + std::to_string(k) + "]");
        }
    }
    return m;
}

Json tuple_to_json(const ContractionTuple& t) {
    Json ops = Json::array();
    for (const CMatrix& m : t.ops()) ops.push_back(matrix_to_json(m));
    return Json{{"ops", std::move(ops)}};
}

std::vector<CMatrix> tuple_ops_from_json(const Json& j, const std::string& path) {
    if (j.is_object() && !j.contains("ops")) return {matrix_from_json(j, path)};
    const Json& ops = array(field(j, "ops", path), path + ".ops");
    if (ops.empty()) fail(path + ".ops", "needs at least one operator");
    std::vector<CMatrix> out;
    for (std::size_t i = 0; i < ops.size(); ++i) {
        out.push_back(matrix_from_json(ops[i], path + ".ops[" + std::to_string(i) + "]"));
    }
    const long n = out.front().rows();
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i].rows() != n || out[i].cols() != n) {
            fail(path + ".ops[" + std::to_string(i) + "]",
                 "is " + std::to_string(out[i].rows()) + "x" + std::to_string(out[i].cols()) +
                     ", expected " + std::to_string(n) + "x" + std::to_string(n));
        }
    }
    return out;
}

Json dilation_to_json(const NDilation& d) {
    Json us = Json::array();
    for (const CMatrix& u : d.unitaries) us.push_back(matrix_to_json(u));
    return Json{{"h_dim", d.h_dim},
                {"order", d.order},
                {"construction", to_string(d.construction)},
                {"unitaries", std::move(us)}};
}

NDilation dilation_from_json(const Json& j, const std::string& path) {
    NDilation d;
    d.h_dim = positive_int(field(j, "h_dim", path), path + ".h_dim");
    d.order = static_cast<int>(positive_int(field(j, "order", path), path + ".order"));
    const Json& c = field(j, "construction", path);
    if (!c.is_string()) fail(path + ".construction", "expected a string");
    try {
        d.construction = construction_from_string(c.get<std::string>());
    } catch (const DilationError& e) {
        fail(path + ".construction", e.what());
    }
    const Json& us = array(field(j, "unitaries", path), path + ".unitaries");
    if (us.empty()) fail(path + ".unitaries", "needs at least one unitary");
    for (std::size_t i = 0; i < us.size(); ++i) {
        const std::string up = path + ".unitaries[" + std::to_string(i) + "]";
        CMatrix u = matrix_from_json(us[i], up);
        if (u.rows() != u.cols()) fail(up, "must be square");
        if (!d.unitaries.empty() && u.rows() != d.unitaries.front().rows()) {
            fail(up, "differs in size from unitaries[0]");
        }
        d.unitaries.push_back(std::move(u));
    }
    if (d.h_dim > d.dim()) fail(path + ".h_dim", "exceeds the dilation dimension");
    return d;
}

Json poly_to_json(const MultiPoly& p) {
    Json terms = Json::array();
    for (const auto& [exps, c] : p.terms()) {
        terms.push_back(Json{{"exps", exps}, {"coef", complex_to_json(c)}});
    }
    return Json{{"vars", p.num_vars()}, {"terms", std::move(terms)}};
}

MultiPoly poly_from_json(const Json& j, const std::string& path) {
    const auto vars = static_cast<std::size_t>(positive_int(field(j, "vars", path), path + ".vars"));
    MultiPoly p(vars);
    const Json& terms = array(field(j, "terms", path), path + ".terms");
    for (std::size_t t = 0; t < terms.size(); ++t) {
        const std::string tp = path + ".terms[" + std::to_string(t) + "]";
        const Json& exps = array(field(terms[t], "exps", tp), tp + ".exps");
        if (exps.size() != vars) fail(tp + ".exps", "length differs from vars");
        std::vector<int> e;
        for (std::size_t i = 0; i < exps.size(); ++i) {
            if (!exps[i].is_number_integer() || exps[i].get<long>() < 0) {
                fail(tp + ".exps[" + std::to_string(i) + "]", "expected a nonnegative integer");
            }
            e.push_back(exps[i].get<int>());
        }
        p.add_term(e, complex_from_json(field(terms[t], "coef", tp), tp + ".coef"));
    }
    return p;
}

Json point_to_json(const TorusPoint& w) {
    Json out = Json::array();
    for (Complex z : w) out.push_back(complex_to_json(z));
    return out;
}

std::vector<Complex> point_from_json(const Json& j, const std::string& path) {
    const Json& arr = j.is_object() ? field(j, "point", path) : j;
    const std::string ap = j.is_object() ? path + ".point" : path;
    array(arr, ap);
    if (arr.empty()) fail(ap, "needs at least one coordinate");
    std::vector<Complex> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        out.push_back(complex_from_json(arr[i], ap + "[" + std::to_string(i) + "]"));
    }
    return out;
}

Json cubature_to_json(const CubatureRule& r) {
    Json points = Json::array();
    for (const TorusPoint& w : r.points) points.push_back(point_to_json(w));
    return Json{{"order", r.order}, {"points", std::move(points)}, {"weights", r.weights}};
}

CubatureRule cubature_from_json(const Json& j, const std::string& path) {
    CubatureRule r;
    if (j.contains("order")) r.order = static_cast<int>(positive_int(j["order"], path + ".order"));
    const Json& points = array(field(j, "points", path), path + ".points");
    const Json& weights = array(field(j, "weights", path), path + ".weights");
    if (points.size() != weights.size()) fail(path, "points and weights differ in length");
    for (std::size_t i = 0; i < points.size(); ++i) {
        r.points.push_back(point_from_json(points[i], path + ".points[" + std::to_string(i) + "]"));
        r.weights.push_back(finite_number(weights[i], path + ".weights[" + std::to_string(i) + "]"));
    }
    return r;
}

Json certificate_to_json(const VNCertificate& c) {
    Json points = Json::array();
    Json ops = Json::array();
    std::vector<double> weights;
    for (std::size_t i = 0; i < c.points.size(); ++i) {
        points.push_back(point_to_json(c.points[i]));
        ops.push_back(matrix_to_json(c.weights[i]));
        const CMatrix& a = c.weights[i];
        weights.push_back(a.trace().real() / static_cast<double>(a.rows()));
    }
    return Json{{"order", c.order},
                {"points", std::move(points)},
                {"weights", weights},
                {"weight_ops", std::move(ops)}};
}

VNCertificate certificate_from_json(const Json& j, const std::string& path) {
    VNCertificate c;
    c.order = static_cast<int>(positive_int(field(j, "order", path), path + ".order"));
    const Json& points = array(field(j, "points", path), path + ".points");
    const Json& ops = array(field(j, "weight_ops", path), path + ".weight_ops");
    if (points.size() != ops.size()) fail(path, "points and weight_ops differ in length");
    for (std::size_t i = 0; i < points.size(); ++i) {
        c.points.push_back(point_from_json(points[i], path + ".points[" + std::to_string(i) + "]"));
        c.weights.push_back(matrix_from_json(ops[i], path + ".weight_ops[" + std::to_string(i) + "]"));
    }
    return c;
}

Json cpmap_to_json(const CPMap& phi) {
    Json out{{"dim", phi.dim()}};
    Json list = Json::array();
    if (phi.kraus()) {
        for (const CMatrix& a : *phi.kraus()) list.push_back(matrix_to_json(a));
        out["kraus"] = std::move(list);
    } else {
        for (const CMatrix& e : phi.unit_images()) list.push_back(matrix_to_json(e));
        out["unit_images"] = std::move(list);
    }
    return out;
}

CPMap cpmap_from_json(const Json& j, const std::string& path) {
    const long n = positive_int(field(j, "dim", path), path + ".dim");
    const bool has_kraus = j.contains("kraus");
    const bool has_images = j.contains("unit_images");
    if (has_kraus == has_images) fail(path, "exactly one of 'kraus' or 'unit_images' is required");
    const char* key = has_kraus ? "kraus" : "unit_images";
    const Json& list = array(j[key], path + "." + key);
    if (list.empty()) fail(path + "." + key, "must not be empty");
    std::vector<CMatrix> ms;
    for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string mp = path + "." + key + "[" + std::to_string(i) + "]";
        CMatrix m = matrix_from_json(list[i], mp);
        if (m.rows() != n || m.cols() != n) fail(mp, "must be dim x dim");
        ms.push_back(std::move(m));
    }
    if (has_kraus) return CPMap::from_kraus(std::move(ms));
    if (static_cast<long>(ms.size()) != n * n) fail(path + ".unit_images", "needs dim² entries");
    return CPMap::from_unit_images(ms);
}

Json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DilationError(ErrorCode::InvalidInput, path + ": cannot open file");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw DilationError(ErrorCode::InvalidInput, path + ": malformed JSON: " + e.what());
    }
}

void write_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw DilationError(ErrorCode::InvalidInput, path + ": cannot write file");
    out << dump(j);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace dilatron::io
