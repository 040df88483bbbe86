#include "inscribe/specfile.hpp"

#include "inscribe/expr.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace inscribe {

namespace {

struct Fields {
    std::string type;
    std::map<std::string, std::vector<std::string>> values;  // key -> tokens (appended)
};

Fields read_fields(std::istream& in, const std::vector<std::string>& allowed) {
    Fields f;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        std::vector<std::string> toks;
        std::string tok;
        while (ls >> tok) toks.push_back(tok);
        if (key == "type") {
            if (toks.size() != 1) throw parse_error("line " + std::to_string(lineno) + ": type needs one value");
            f.type = toks[0];
            continue;
        }
        bool known = false;
        for (const auto& a : allowed) known = known || a == key;
        if (!known) throw parse_error("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        if (toks.empty()) throw parse_error("line " + std::to_string(lineno) + ": key '" + key + "' has no value");
        auto& slot = f.values[key];
        slot.insert(slot.end(), toks.begin(), toks.end());
    }
    if (f.type.empty()) throw parse_error("missing 'type' line");
    return f;
}

double to_num(const std::string& s, const std::string& what) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw parse_error("bad number for " + what + ": '" + s + "'");
    }
    if (used != s.size()) throw parse_error("bad number for " + what + ": '" + s + "'");
    return v;
}

double require_one(const Fields& f, const std::string& key) {
    const auto it = f.values.find(key);
    if (it == f.values.end() || it->second.size() != 1)
        throw parse_error("spec needs exactly one '" + key + "' value");
    return to_num(it->second[0], key);
}

VectorXd list_of(const Fields& f, const std::string& key) {
    const auto it = f.values.find(key);
    if (it == f.values.end()) return VectorXd();
    VectorXd v(it->second.size());
    for (std::size_t i = 0; i < it->second.size(); ++i) v[i] = to_num(it->second[i], key);
    return v;
}

std::vector<double> split_tuple(const std::string& s) {
    std::vector<double> out;
    std::string cur;
    for (const char c : s + ",") {
        if (c == ',') {
            if (cur.empty()) throw parse_error("empty coordinate in tuple '" + s + "'");
            out.push_back(to_num(cur, "vertex coordinate"));
            cur.clear();
        } else {
            cur += c;
        }
    }
    return out;
}

}  // namespace

std::unique_ptr<ClosedCurve> parse_curve_spec(std::istream& in) {
    const Fields f = read_fields(in, {"a", "b", "c0", "cos_coeffs", "sin_coeffs", "vertices"});
    try {
        if (f.type == "ellipse") {
            return std::make_unique<Ellipse>(require_one(f, "a"), require_one(f, "b"));
        }
        if (f.type == "radial_fourier") {
            return std::make_unique<RadialFourier>(require_one(f, "c0"), list_of(f, "cos_coeffs"),
                                                   list_of(f, "sin_coeffs"));
        }
        if (f.type == "polygon") {
            const auto it = f.values.find("vertices");
            if (it == f.values.end()) throw parse_error("polygon spec needs 'vertices'");
            std::vector<std::vector<double>> rows;
            for (const auto& tok : it->second) rows.push_back(split_tuple(tok));
            const std::size_t dim = rows.front().size();
            if (dim < 2 || dim > 3) throw parse_error("polygon vertices must be 2- or 3-dimensional");
            for (const auto& r : rows)
                if (r.size() != dim) throw parse_error("inconsistent vertex dimensions");
            MatrixXd v(dim, rows.size());
            for (std::size_t i = 0; i < rows.size(); ++i)
                for (std::size_t d = 0; d < dim; ++d) v(d, i) = rows[i][d];
            return std::make_unique<Polygon>(std::move(v));
        }
    } catch (const degenerate_error& e) {
        throw parse_error(std::string("invalid curve: ") + e.what());
    } catch (const size_error& e) {
        throw parse_error(std::string("invalid curve: ") + e.what());
    }
    throw parse_error("unknown curve type '" + f.type + "'");
}

std::unique_ptr<ClosedCurve> load_curve_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open curve spec '" + path + "'");
    return parse_curve_spec(in);
}

simplex::RadialSurface parse_surface_spec(std::istream& in) {
    const Fields f = read_fields(in, {"radius", "dimension", "expr"});
    try {
        if (f.type == "sphere") {
            const int k = f.values.count("dimension") ? static_cast<int>(require_one(f, "dimension")) : 3;
            return simplex::RadialSurface::sphere(k, require_one(f, "radius"));
        }
        if (f.type == "radial_expr") {
            const auto it = f.values.find("expr");
            if (it == f.values.end()) throw parse_error("radial_expr spec needs 'expr'");
            std::string joined;
            for (const auto& tok : it->second) {
                if (!joined.empty()) joined += ' ';
                joined += tok;
            }
            return simplex::RadialSurface::expression(joined);
        }
    } catch (const degenerate_error& e) {
        throw parse_error(std::string("invalid surface: ") + e.what());
    } catch (const size_error& e) {
        throw parse_error(std::string("invalid surface: ") + e.what());
    }
    throw parse_error("unknown surface type '" + f.type + "'");
}

simplex::RadialSurface load_surface_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open surface spec '" + path + "'");
    return parse_surface_spec(in);
}

SimplexDistanceRatioD parse_ratio_spec(std::istream& in) {
    const Fields f = read_fields(in, {"k", "rows"});
    if (f.type != "simplex_ratio") throw parse_error("unknown ratio type '" + f.type + "'");
    const int k = static_cast<int>(require_one(f, "k"));
    const auto it = f.values.find("rows");
    if (it == f.values.end() || static_cast<int>(it->second.size()) != k + 1)
        throw parse_error("simplex_ratio needs k+1 'rows' tuples");
    MatrixXd d(k + 1, k + 1);
    for (int i = 0; i <= k; ++i) {
        const auto row = split_tuple(it->second[i]);
        if (static_cast<int>(row.size()) != k + 1) throw parse_error("ratio row has wrong length");
        for (int j = 0; j <= k; ++j) d(i, j) = row[j];
    }
    try {
        return SimplexDistanceRatioD(k, std::move(d));
    } catch (const std::runtime_error& e) {
        throw parse_error(std::string("invalid ratio: ") + e.what());
    }
}

SimplexDistanceRatioD load_ratio_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open ratio spec '" + path + "'");
    return parse_ratio_spec(in);
}

}  // namespace inscribe
