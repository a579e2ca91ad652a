#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "varcap/diameter.hpp"
#include "varcap/parser.hpp"
#include "varcap/version.hpp"

namespace varcap {

using Json = nlohmann::json;

// Floats are serialized as decimal strings with 17 significant digits, so
// artifacts are byte-stable and round-trip exactly.
inline std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline double parse_double(const std::string& s) {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("bad numeric literal: '" + s + "'");
    return v;
}

inline Json complex_to_json(std::complex<double> z) {
    return Json::array({format_double(z.real()), format_double(z.imag())});
}

inline std::complex<double> complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument("complex value must be a [re, im] pair");
    return {parse_double(j[0].get<std::string>()), parse_double(j[1].get<std::string>())};
}

inline Json rational_to_json(const Rational& r) { return to_string(r); }

inline Json qvec_to_json(const QVec& v) {
    Json out = Json::array();
    for (const auto& c : v) out.push_back(rational_to_json(c));
    return out;
}

inline Json exponent_to_json(const ExponentVector& e) {
    Json out = Json::array();
    for (std::size_t i = 0; i < e.size(); ++i) out.push_back(e[i]);
    return out;
}

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::invalid_argument("cannot write file: " + path);
    out << content;
    if (!out) throw std::invalid_argument("write failed: " + path);
}

// Variety description as loaded from disk; `algebra` builds the working model.
struct VarietyFile {
    std::vector<std::string> variables;
    std::vector<Polynomial> generators;
    NoetherSplit split;
    std::vector<GaussianRational> base_point;

    NormalFormAlgebra algebra() const {
        return NormalFormAlgebra::from_ideal(variables, Ideal(generators), split);
    }
    ImplicitChart chart(int precision) const {
        return ImplicitChart(algebra(), base_point, precision);
    }
};

inline VarietyFile variety_from_json(const Json& j) {
    VarietyFile out;
    if (!j.contains("variables") || !j["variables"].is_array())
        throw std::invalid_argument("variety file: missing variables");
    for (const auto& v : j["variables"]) out.variables.push_back(v.get<std::string>());
    if (j.contains("ideal"))
        for (const auto& g : j["ideal"])
            out.generators.push_back(parse_polynomial(g.get<std::string>(), out.variables));
    if (!j.contains("noether_split"))
        throw std::invalid_argument("variety file: missing noether_split");
    for (const auto& i : j["noether_split"]["x"])
        out.split.x_indices.push_back(i.get<std::size_t>());
    if (j["noether_split"].contains("y"))
        for (const auto& i : j["noether_split"]["y"])
            out.split.y_indices.push_back(i.get<std::size_t>());
    if (j.contains("base_point")) {
        for (const auto& p : j["base_point"]) {
            if (!p.is_array() || p.size() != 2)
                throw std::invalid_argument("variety file: base point entries are [re, im]");
            out.base_point.emplace_back(rational_from_string(p[0].get<std::string>()),
                                        rational_from_string(p[1].get<std::string>()));
        }
    } else {
        out.base_point.assign(out.variables.size(), GaussianRational(0));
    }
    if (out.base_point.size() != out.variables.size())
        throw std::invalid_argument("variety file: base point dimension mismatch");
    return out;
}

inline Json variety_to_json(const VarietyFile& v) {
    Json j;
    j["variables"] = v.variables;
    j["ideal"] = Json::array();
    for (const auto& g : v.generators) j["ideal"].push_back(to_string(g));
    j["noether_split"]["x"] = v.split.x_indices;
    j["noether_split"]["y"] = v.split.y_indices;
    j["base_point"] = Json::array();
    for (const auto& c : v.base_point)
        j["base_point"].push_back(
            Json::array({rational_to_json(c.re), rational_to_json(c.im)}));
    return j;
}

inline VarietyFile load_variety(const std::string& path) {
    return variety_from_json(Json::parse(read_text(path)));
}

inline Json cloud_to_json(const VarietyPointCloud& cloud) {
    Json j;
    j["points"] = Json::array();
    for (const auto& p : cloud.points) {
        Json pt = Json::array();
        for (const auto& z : p) pt.push_back(complex_to_json(z));
        j["points"].push_back(std::move(pt));
    }
    j["weights"] = Json::array();
    for (const auto& w : cloud.weights) j["weights"].push_back(complex_to_json(w));
    return j;
}

inline VarietyPointCloud cloud_from_json(const Json& j) {
    VarietyPointCloud cloud;
    if (!j.contains("points")) throw std::invalid_argument("cloud file: missing points");
    for (const auto& pt : j["points"]) {
        CPoint p;
        for (const auto& z : pt) p.push_back(complex_from_json(z));
        cloud.points.push_back(std::move(p));
    }
    if (j.contains("weights"))
        for (const auto& w : j["weights"]) cloud.weights.push_back(complex_from_json(w));
    else
        cloud.weights.assign(cloud.points.size(), {1, 0});
    cloud.check();
    return cloud;
}

// CSV rows carry 2n + 2 columns: re/im per coordinate, then re/im of the
// weight. Lines starting with '#' are comments.
inline VarietyPointCloud cloud_from_csv(const std::string& text) {
    VarietyPointCloud cloud;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> cols;
        std::istringstream row(line);
        std::string cell;
        while (std::getline(row, cell, ',')) cols.push_back(parse_double(cell));
        if (cols.size() < 4 || cols.size() % 2 != 0)
            throw std::invalid_argument("cloud csv: rows need 2n+2 numeric columns");
        CPoint p;
        for (std::size_t i = 0; i + 2 < cols.size(); i += 2)
            p.push_back({cols[i], cols[i + 1]});
        cloud.points.push_back(std::move(p));
        cloud.weights.push_back({cols[cols.size() - 2], cols[cols.size() - 1]});
    }
    cloud.check();
    return cloud;
}

inline VarietyPointCloud load_cloud(const std::string& path) {
    std::string text = read_text(path);
    if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0)
        return cloud_from_csv(text);
    return cloud_from_json(Json::parse(text));
}

inline Json polytope_to_json(const Polytope& p) {
    Json j;
    j["dim"] = p.dim;
    j["vertices"] = Json::array();
    for (const auto& v : p.vertices) j["vertices"].push_back(qvec_to_json(v));
    j["facets"] = Json::array();
    for (const auto& f : p.facets) {
        Json fj;
        fj["normal"] = qvec_to_json(f.normal);
        fj["offset"] = rational_to_json(f.offset);
        j["facets"].push_back(std::move(fj));
    }
    j["full_dimensional"] = p.full_dimensional;
    j["volume"] = rational_to_json(p.volume());
    return j;
}

inline Json nuset_to_json(const NuSet& n) {
    Json j;
    j["k"] = n.k;
    j["count"] = n.size();
    j["nu"] = Json::array();
    for (const auto& [nu, rep] : n.representatives) j["nu"].push_back(exponent_to_json(nu));
    return j;
}

inline Json okounkov_to_json(const OkounkovResult& res) {
    Json j;
    j["levels"] = Json::array();
    for (std::size_t i = 0; i < res.levels.size(); ++i) {
        Json lv = nuset_to_json(res.levels[i]);
        lv["dimension"] = res.dims[i];
        lv["delta"] = polytope_to_json(res.deltas[i]);
        j["levels"].push_back(std::move(lv));
    }
    j["body"] = polytope_to_json(res.body);
    j["stabilized"] = res.stabilized;
    j["volume"] = rational_to_json(res.volume);
    return j;
}

// Vertex list for plotting: one row per hull vertex, body rows last.
inline std::string okounkov_csv(const OkounkovResult& res) {
    std::ostringstream out;
    out << "level,vertex\n";
    for (std::size_t i = 0; i < res.deltas.size(); ++i)
        for (const auto& v : res.deltas[i].vertices) {
            out << (i + 1);
            for (const auto& c : v) out << "," << to_string(c);
            out << "\n";
        }
    for (const auto& v : res.body.vertices) {
        out << "body";
        for (const auto& c : v) out << "," << to_string(c);
        out << "\n";
    }
    return out.str();
}

inline Json transform_to_json(const ChebyshevTransformGrid& grid) {
    Json j;
    j["k"] = grid.k;
    j["margin"] = format_double(grid.margin);
    j["total"] = grid.total;
    j["certified"] = grid.certified_count;
    j["full_average"] = format_double(grid.full_average);
    j["entries"] = Json::array();
    for (const auto& e : grid.entries) {
        Json ej;
        ej["alpha"] = exponent_to_json(e.alpha);
        Json th = Json::array();
        for (const auto& t : e.theta) th.push_back(rational_to_json(t));
        ej["theta"] = std::move(th);
        ej["log_T"] = format_double(e.log_T);
        ej["certified"] = e.certified;
        j["entries"].push_back(std::move(ej));
    }
    return j;
}

inline std::string transform_csv(const ChebyshevTransformGrid& grid) {
    std::ostringstream out;
    std::size_t m = grid.entries.empty() ? 0 : grid.entries[0].theta.size();
    for (std::size_t i = 0; i < m; ++i) out << "theta" << (i + 1) << ",";
    out << "log_T,certified\n";
    for (const auto& e : grid.entries) {
        for (const auto& t : e.theta) out << to_string(t) << ",";
        out << format_double(e.log_T) << "," << (e.certified ? 1 : 0) << "\n";
    }
    return out.str();
}

inline Json fekete_to_json(const FeketeResult& res, const VarietyPointCloud& cloud) {
    Json j;
    j["indices"] = res.indices;
    j["log_vdm"] = format_double(res.log_vdm);
    j["exhaustive"] = res.exhaustive;
    j["sweeps"] = res.sweeps_used;
    j["points"] = Json::array();
    for (std::size_t i : res.indices) {
        Json pt = Json::array();
        for (const auto& z : cloud.points[i]) pt.push_back(complex_to_json(z));
        j["points"].push_back(std::move(pt));
    }
    return j;
}

inline Json diameter_to_json(const std::vector<DiameterRow>& rows) {
    Json j;
    j["rows"] = Json::array();
    for (const auto& r : rows) {
        Json rj;
        rj["k"] = r.k;
        rj["M_k"] = r.Mk;
        rj["h_k"] = r.hk;
        rj["L_k"] = r.Lk;
        rj["log_V"] = format_double(r.log_V);
        rj["d_k"] = format_double(r.d_k);
        rj["d_classical"] = format_double(r.d_classical);
        rj["ratio"] = format_double(r.ratio);
        rj["exhaustive"] = r.exhaustive;
        rj["indices"] = r.indices;
        j["rows"].push_back(std::move(rj));
    }
    // Advisory only: the change between the last two orders, never an
    // extrapolated limit.
    if (rows.size() >= 2) {
        Json t;
        t["advisory"] = true;
        t["last_delta_dk"] =
            format_double(rows.back().d_k - rows[rows.size() - 2].d_k);
        j["trend"] = std::move(t);
    }
    return j;
}

inline std::string dk_sequence_csv(const std::vector<DiameterRow>& rows) {
    std::ostringstream out;
    out << "k,M_k,L_k,log_V,d_k,d_classical,ratio\n";
    for (const auto& r : rows)
        out << r.k << "," << r.Mk << "," << r.Lk << "," << format_double(r.log_V) << ","
            << format_double(r.d_k) << "," << format_double(r.d_classical) << ","
            << format_double(r.ratio) << "\n";
    return out.str();
}

inline Json sandwich_to_json(const SandwichReport& rep) {
    Json j;
    j["k"] = rep.k;
    j["lower"] = format_double(rep.lower_lhs);
    j["log_V"] = format_double(rep.log_V);
    j["upper"] = format_double(rep.upper_rhs);
    j["slack"] = format_double(rep.slack);
    j["holds"] = rep.holds;
    return j;
}

inline std::string sandwich_csv(const std::vector<SandwichReport>& reps) {
    std::ostringstream out;
    out << "k,lower,log_V,upper,slack,holds\n";
    for (const auto& r : reps)
        out << r.k << "," << format_double(r.lower_lhs) << "," << format_double(r.log_V)
            << "," << format_double(r.upper_rhs) << "," << format_double(r.slack) << ","
            << (r.holds ? 1 : 0) << "\n";
    return out.str();
}

inline Json integral_to_json(const IntegralCompareRow& row) {
    Json j;
    j["k"] = row.k;
    j["log_dk"] = format_double(row.log_dk);
    j["mean_log_T"] = format_double(row.mean_log_T);
    j["diff"] = format_double(row.diff);
    j["bound"] = format_double(row.bound);
    j["within"] = row.within;
    return j;
}

inline Json homogeneous_to_json(const HomogeneousReport& rep) {
    Json j;
    j["log_vdmh"] = format_double(rep.log_vdmh);
    j["log_weighted"] = format_double(rep.log_weighted);
    j["rel_diff"] = format_double(rep.rel_diff);
    return j;
}

inline Json projection_to_json(const ProjectionReport& rep) {
    Json j;
    j["fiber_swap_max_diff"] = format_double(rep.fiber_swap_max_diff);
    j["projection_diff"] = format_double(rep.projection_diff);
    j["subfamily_size"] = rep.subfamily_size;
    j["exponent_ratio"] = rational_to_json(rep.exponent_ratio);
    return j;
}

inline Json circled_to_json(const CircledReport& rep) {
    Json j;
    j["k"] = rep.k;
    j["max_diff"] = format_double(rep.max_diff);
    j["hypothesis_ok"] = rep.hypothesis_ok;
    j["note"] = rep.note;
    j["entries"] = Json::array();
    for (const auto& e : rep.entries) {
        Json ej;
        ej["alpha"] = exponent_to_json(e.alpha);
        ej["log_full"] = format_double(e.log_full);
        ej["log_restricted"] = format_double(e.log_restricted);
        ej["diff"] = format_double(e.diff);
        ej["certified"] = e.certified;
        j["entries"].push_back(std::move(ej));
    }
    return j;
}

}  // namespace varcap
