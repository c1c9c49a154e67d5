#include "orb/io.hpp"

#include <fstream>
#include <sstream>

#include "orb/error.hpp"

namespace orb::io {

namespace {

[[noreturn]] void bad(const std::string& what) { fail("ParseError", what); }

const json& field(const json& j, const char* key) {
    if (!j.is_object()) bad("expected an object");
    auto it = j.find(key);
    if (it == j.end()) bad(std::string("missing field '") + key + "'");
    return *it;
}

int as_int(const json& j, const std::string& what) {
    if (!j.is_number_integer()) bad(what + ": expected an integer");
    return j.get<int>();
}

Rational as_rational(const json& j, const std::string& what) {
    Scalar s = scalar_from_json(j);
    if (!s.is_exact()) bad(what + ": expected an exact rational");
    return s.rational();
}

std::vector<Scalar> scalar_list(const json& j, size_t expect, const std::string& what) {
    if (!j.is_array() || j.size() != expect) bad(what + ": expected " + std::to_string(expect) + " entries");
    std::vector<Scalar> out;
    for (const auto& x : j) out.push_back(scalar_from_json(x));
    return out;
}

// Dense n x n x n tensor, flattened with the last index fastest.
std::vector<Scalar> tensor3(const json& j, int n, const std::string& what) {
    std::vector<Scalar> out;
    if (!j.is_array() || static_cast<int>(j.size()) != n) bad(what + ": expected " + std::to_string(n) + " slices");
    for (const auto& a : j) {
        if (!a.is_array() || static_cast<int>(a.size()) != n) bad(what + ": ragged tensor");
        for (const auto& b : a) {
            auto row = scalar_list(b, n, what);
            out.insert(out.end(), row.begin(), row.end());
        }
    }
    return out;
}

json tensor3_json(const std::vector<Scalar>& v, int n) {
    json out = json::array();
    for (int a = 0; a < n; ++a) {
        json sa = json::array();
        for (int b = 0; b < n; ++b) {
            json row = json::array();
            for (int c = 0; c < n; ++c) row.push_back(to_json(v[(static_cast<size_t>(a) * n + b) * n + c]));
            sa.push_back(row);
        }
        out.push_back(sa);
    }
    return out;
}

std::vector<Simplex> simplex_list(const json& j, const std::string& what) {
    if (!j.is_array()) bad(what + ": expected a list of simplices");
    std::vector<Simplex> out;
    for (const auto& s : j) {
        if (!s.is_array()) bad(what + ": expected a simplex");
        Simplex x;
        for (const auto& v : s) x.push_back(as_int(v, what));
        out.push_back(x);
    }
    return out;
}

json simplex_list_json(const std::vector<Simplex>& v) {
    json out = json::array();
    for (const auto& s : v) out.push_back(s);
    return out;
}

}  // namespace

json parse_json(const std::string& text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // e.byte is the 1-based offset of the offending character.
        size_t upto = std::min(e.byte > 0 ? e.byte - 1 : 0, text.size());
        int line = 1, col = 1;
        for (size_t i = 0; i < upto; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::string msg = e.what();
        auto p = msg.find("syntax error");
        bad(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " +
            (p == std::string::npos ? msg : msg.substr(p)));
    }
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("ParseError", "cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str(), path);
}

std::string format_json(const json& j) {
    // One top-level field per line, lists of lists one entry per line.
    if (!j.is_object()) return j.dump() + "\n";
    std::string out = "{\n";
    size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        out += "  " + json(it.key()).dump() + ": ";
        const json& v = it.value();
        if (v.is_array() && !v.empty() && v[0].is_array()) {
            out += "[\n";
            for (size_t k = 0; k < v.size(); ++k) out += "    " + v[k].dump() + (k + 1 < v.size() ? ",\n" : "\n");
            out += "  ]";
        } else {
            out += v.dump();
        }
        out += i + 1 < j.size() ? ",\n" : "\n";
    }
    return out + "}\n";
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) fail("IOError", "cannot write '" + path + "'");
    out << format_json(j);
}

Scalar scalar_from_json(const json& j) {
    if (j.is_number_integer()) return Scalar(Rational(j.dump(), 10));
    if (j.is_number_float()) return Scalar::real(j.get<double>());
    if (j.is_string()) return Scalar::parse(j.get<std::string>());
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return Scalar(Complex(j[0].get<double>(), j[1].get<double>()));
    bad("bad scalar " + j.dump());
}

json to_json(const Scalar& s) {
    if (s.is_exact()) return s.str();
    Complex z = s.complex();
    return json::array({z.real(), z.imag()});
}

Triangulation triangulation_from_json(const json& j) {
    int dim = as_int(field(j, "dim"), "dim");
    std::map<Vid, Rational> heights;
    const json& vs = field(j, "vertices");
    if (!vs.is_object()) bad("vertices: expected an object id -> height");
    for (auto it = vs.begin(); it != vs.end(); ++it) {
        Vid v;
        try {
            size_t used = 0;
            v = std::stoi(it.key(), &used);
            if (used != it.key().size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            bad("vertices: bad vertex id '" + it.key() + "'");
        }
        heights[v] = as_rational(it.value(), "height of vertex " + it.key());
    }
    auto simplices = simplex_list(field(j, "simplices"), "simplices");
    std::vector<int> signs;
    if (j.contains("signs")) {
        for (const auto& s : j["signs"]) signs.push_back(as_int(s, "signs"));
        if (signs.size() != simplices.size()) bad("signs: expected one sign per simplex");
    } else {
        signs = orient_signs(dim, heights, simplices);
    }
    std::map<std::string, std::vector<Simplex>> boundary;
    if (j.contains("boundary")) {
        const json& b = j["boundary"];
        if (!b.is_object()) bad("boundary: expected an object name -> facets");
        for (auto it = b.begin(); it != b.end(); ++it)
            boundary[it.key()] = simplex_list(it.value(), "boundary " + it.key());
    }
    return build_triangulation(dim, heights, simplices, signs, boundary);
}

json to_json(const Triangulation& t) {
    json vs = json::object();
    for (const auto& [v, h] : t.heights()) vs[std::to_string(v)] = h.get_str();
    json b = json::object();
    for (const auto& [name, facets] : t.boundary()) b[name] = simplex_list_json(facets);
    return {{"dim", t.dim()},
            {"vertices", vs},
            {"simplices", simplex_list_json(t.simplices())},
            {"signs", t.signs()},
            {"boundary", b}};
}

StratifiedComplex stratified_from_json(const json& j) {
    auto t = triangulation_from_json(j);
    if (!j.contains("strata")) return StratifiedComplex::trivial(t);
    std::vector<StratumSpec> strata;
    for (const auto& s : j["strata"]) {
        StratumSpec x;
        x.dim = as_int(field(s, "dim"), "stratum dim");
        x.label = s.value("label", std::string("S") + std::to_string(strata.size()));
        x.simplices = simplex_list(field(s, "simplices"), "stratum " + x.label);
        strata.push_back(std::move(x));
    }
    return StratifiedComplex(t, strata);
}

json to_json(const StratifiedComplex& x) {
    json j = to_json(x.underlying());
    json strata = json::array();
    for (const auto& s : x.strata())
        strata.push_back({{"dim", s.dim}, {"label", s.label}, {"simplices", simplex_list_json(s.simplices)}});
    j["strata"] = strata;
    return j;
}

EulerWeights weights_from_json(const json& j) {
    const json& p = field(j, "psi");
    if (!p.is_object()) bad("psi: expected an object dimension -> scalar");
    EulerWeights w;
    for (auto it = p.begin(); it != p.end(); ++it) {
        int k;
        try {
            k = std::stoi(it.key());
        } catch (const std::exception&) {
            bad("psi: bad dimension '" + it.key() + "'");
        }
        w.psi[k] = scalar_from_json(it.value());
    }
    return w;
}

json to_json(const EulerWeights& w) {
    json p = json::object();
    for (const auto& [k, s] : w.psi) p[std::to_string(k)] = to_json(s);
    return {{"psi", p}};
}

FrobeniusData algebra_from_json(const json& j) {
    int n = as_int(field(j, "dim"), "dim");
    if (n < 1) bad("dim: expected a positive integer");
    auto mu = tensor3(field(j, "mu"), n, "mu");
    auto eta = scalar_list(field(j, "eta"), n, "eta");
    auto eps = scalar_list(field(j, "eps"), n, "eps");
    std::optional<std::vector<Scalar>> delta;
    if (j.contains("delta")) delta = tensor3(j["delta"], n, "delta");
    std::vector<std::string> basis;
    if (j.contains("basis")) basis = j["basis"].get<std::vector<std::string>>();
    return make_frobenius(n, mu, eta, eps, delta, basis);
}

json to_json(const FrobeniusData& a) {
    json j = {{"dim", a.dim}, {"basis", a.basis}, {"mu", tensor3_json(a.mu, a.dim)}};
    json eta = json::array(), eps = json::array();
    for (const auto& x : a.eta) eta.push_back(to_json(x));
    for (const auto& x : a.eps) eps.push_back(to_json(x));
    j["eta"] = eta;
    j["eps"] = eps;
    if (a.delta_given) j["delta"] = tensor3_json(a.delta, a.dim);
    return j;
}

FusionData category_from_json(const json& j) {
    const json& ls = field(j, "labels");
    if (!ls.is_array() || ls.empty()) bad("labels: expected a nonempty list");
    FusionData c = empty_fusion_data(static_cast<int>(ls.size()));
    for (int i = 0; i < c.n; ++i) {
        if (!ls[i].is_string()) bad("labels: expected strings");
        c.labels[i] = ls[i].get<std::string>();
    }
    auto label = [&](const json& x, const std::string& what) {
        if (x.is_string()) {
            for (int i = 0; i < c.n; ++i)
                if (c.labels[i] == x.get<std::string>()) return i;
            bad(what + ": unknown label " + x.dump());
        }
        int i = as_int(x, what);
        if (i < 0 || i >= c.n) bad(what + ": label index out of range");
        return i;
    };
    c.unit = label(field(j, "unit"), "unit");
    const json& du = field(j, "dual");
    if (!du.is_array() || static_cast<int>(du.size()) != c.n) bad("dual: expected one entry per label");
    for (int i = 0; i < c.n; ++i) c.dual[i] = label(du[i], "dual");
    for (const auto& t : field(j, "N")) {
        if (!t.is_array() || t.size() != 3) bad("N: expected triples");
        c.N_ref(label(t[0], "N"), label(t[1], "N"), label(t[2], "N")) = 1;
    }
    auto sextuples = [&](const json& list, std::vector<Scalar>& dst, const char* what) {
        for (const auto& t : list) {
            if (!t.is_array() || t.size() != 7) bad(std::string(what) + ": expected [a,b,c,d,e,f,value]");
            int k[6];
            for (int i = 0; i < 6; ++i) k[i] = label(t[i], what);
            dst[FusionData::index6(k[0], k[1], k[2], k[3], k[4], k[5], c.n)] = scalar_from_json(t[6]);
        }
    };
    sextuples(field(j, "F"), c.F, "F");
    c.d = scalar_list(field(j, "d"), c.n, "d");
    c.phi = scalar_from_json(field(j, "phi"));
    if (j.contains("Fbar")) sextuples(j["Fbar"], c.Fbar, "Fbar");
    else recompute_fbar(c);
    return c;
}

json to_json(const FusionData& c) {
    json N = json::array(), F = json::array(), Fbar = json::array(), d = json::array();
    for (int a = 0; a < c.n; ++a)
        for (int b = 0; b < c.n; ++b)
            for (int x = 0; x < c.n; ++x)
                if (c.N(a, b, x)) N.push_back({a, b, x});
    for (size_t i = 0; i < c.F.size(); ++i) {
        if (c.F[i].is_zero() && c.Fbar[i].is_zero()) continue;
        json key = json::array();
        size_t r = i;
        std::vector<int> digits(6);
        for (int k = 5; k >= 0; --k) {
            digits[k] = static_cast<int>(r % c.n);
            r /= c.n;
        }
        for (int x : digits) key.push_back(x);
        if (!c.F[i].is_zero()) {
            json e = key;
            e.push_back(to_json(c.F[i]));
            F.push_back(e);
        }
        if (!c.Fbar[i].is_zero()) {
            json e = key;
            e.push_back(to_json(c.Fbar[i]));
            Fbar.push_back(e);
        }
    }
    for (const auto& x : c.d) d.push_back(to_json(x));
    return {{"labels", c.labels}, {"unit", c.unit}, {"dual", c.dual}, {"N", N},
            {"F", F},           {"Fbar", Fbar},    {"d", d},          {"phi", to_json(c.phi)}};
}

json to_json(const CheckRecord& r) {
    return {{"name", r.name},   {"pass", r.pass},       {"residual", r.residual},
            {"exact", r.exact}, {"witness", r.witness}, {"note", r.note}};
}

json to_json(const Report& r) {
    json recs = json::array();
    for (const auto& x : r.records) recs.push_back(to_json(x));
    return {{"pass", r.all_pass()}, {"max_residual", r.max_residual()}, {"records", recs}};
}

Report report_from_json(const json& j) {
    Report r;
    for (const auto& x : field(j, "records")) {
        CheckRecord c;
        c.name = field(x, "name").get<std::string>();
        c.pass = field(x, "pass").get<bool>();
        c.residual = field(x, "residual").get<double>();
        c.exact = x.value("exact", true);
        c.witness = x.value("witness", std::vector<int>{});
        c.note = x.value("note", std::string());
        r.records.push_back(std::move(c));
    }
    return r;
}

}  // namespace orb::io
