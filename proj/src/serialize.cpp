#include "cps/serialize.hpp"

#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <sstream>

#include "json.hpp"

#include "cps/errors.hpp"

namespace cps {

namespace {

using json = nlohmann::ordered_json;

json encode_int(const Int& n) {
    if (n.fits_slong_p()) return json(n.get_si());
    return json(to_string(n));
}

Int decode_int(const json& j, const char* what) {
    if (j.is_number_integer()) return Int(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string()) {
        try {
            return Int(j.get<std::string>());
        } catch (const std::invalid_argument&) {
        }
    }
    throw domain_error(std::string("expected an integer for ") + what);
}

json encode_intpoly(const IntPoly& f) {
    json a = json::array();
    for (const Int& c : f.c) a.push_back(encode_int(c));
    return a;
}

IntPoly decode_intpoly(const json& j, const char* what) {
    if (!j.is_array()) throw domain_error(std::string(what) + ": expected a coefficient array");
    std::vector<Int> c;
    for (const auto& v : j) c.push_back(decode_int(v, what));
    return IntPoly(c);
}

json encode_elem(const TowerElem& e) {
    if (e.level() == 0) return json(to_string(e.rat()));
    json coeffs = json::array();
    for (const auto& c : e.coeffs()) coeffs.push_back(encode_elem(c));
    return json{{"g", e.level()}, {"c", std::move(coeffs)}};
}

TowerElem decode_elem(const json& j, const std::shared_ptr<Tower>& T) {
    if (j.is_string()) return TowerElem(parse_rational(j.get<std::string>()));
    if (j.is_number_integer()) return TowerElem(static_cast<int>(j.get<std::int64_t>()));
    if (!j.is_object() || !j.contains("g") || !j.contains("c"))
        throw domain_error("field element must be a rational string or {g, c}");
    int level = j.at("g").get<int>();
    if (!T || level < 1 || level > T->num_levels())
        throw domain_error("field element refers to tower level " + std::to_string(level) +
                           " which the file's tower does not have");
    std::vector<TowerElem> coeffs;
    for (const auto& c : j.at("c")) coeffs.push_back(decode_elem(c, T));
    return TowerElem::make(T, level, std::move(coeffs));
}

json encode_tower(const std::shared_ptr<Tower>& T) {
    json levels = json::array();
    if (!T) return levels;
    for (int k = 1; k <= T->num_levels(); ++k) {
        const TowerLevel& lv = T->level(k);
        json minpoly = json::array();
        for (const auto& c : lv.minpoly) minpoly.push_back(encode_elem(c));
        levels.push_back(json{{"name", lv.name},
                              {"poly", encode_intpoly(lv.source->poly)},
                              {"root", lv.source_index},
                              {"minpoly", std::move(minpoly)}});
    }
    return levels;
}

std::shared_ptr<Tower> decode_tower(const json& j) {
    auto T = Tower::make();
    if (!j.is_array()) throw domain_error("tower must be an array of levels");
    for (const auto& lvj : j) {
        TowerLevel lv;
        lv.name = lvj.at("name").get<std::string>();
        IntPoly f = decode_intpoly(lvj.at("poly"), "tower level polynomial");
        auto iso = std::make_shared<IsolatedRoots>(isolate_roots(f, 64));
        lv.source = iso;
        lv.source_index = lvj.at("root").get<int>();
        if (lv.source_index < 0 || lv.source_index >= iso->count())
            throw domain_error("tower level root index out of range");
        for (const auto& c : lvj.at("minpoly")) lv.minpoly.push_back(decode_elem(c, T));
        T->push_level(std::move(lv));
    }
    return T;
}

json encode_monomial(const Monomial& m) {
    json a = json::array();
    for (const auto& [name, exp] : m.v) a.push_back(json::array({name, exp}));
    return a;
}

Monomial decode_monomial(const json& j) {
    Monomial m;
    for (const auto& p : j) {
        if (!p.is_array() || p.size() != 2)
            throw domain_error("monomial factors must be [name, exponent] pairs");
        m.v.emplace_back(p.at(0).get<std::string>(), p.at(1).get<int>());
    }
    return m;
}

json encode_tpoly(const TPoly& p) {
    json terms = json::array();
    for (const auto& [m, c] : p.terms())
        terms.push_back(json{{"m", encode_monomial(m)}, {"c", encode_elem(c)}});
    return terms;
}

TPoly decode_tpoly(const json& j, const std::shared_ptr<Tower>& T) {
    if (!j.is_array()) throw domain_error("matrix entry must be an array of terms");
    TPoly p;
    for (const auto& t : j)
        p = p + TPoly::term(decode_elem(t.at("c"), T), decode_monomial(t.at("m")));
    return p;
}

json encode_matrix(const ExactMatrix& m) {
    json entries = json::array();
    for (const auto& t : m.e) entries.push_back(encode_tpoly(t));
    return json{{"rows", m.rows},
                {"cols", m.cols},
                {"den", encode_tpoly(m.den)},
                {"entries", std::move(entries)}};
}

ExactMatrix decode_matrix(const json& j, const std::shared_ptr<Tower>& T, const char* what) {
    if (!j.is_object()) throw domain_error(std::string(what) + ": expected a matrix object");
    ExactMatrix m(j.at("rows").get<int>(), j.at("cols").get<int>());
    if (m.rows < 0 || m.cols < 0) throw domain_error(std::string(what) + ": negative dimensions");
    const auto& entries = j.at("entries");
    if (!entries.is_array() || entries.size() != m.e.size())
        throw domain_error(std::string(what) + ": entry count does not match dimensions");
    for (std::size_t i = 0; i < m.e.size(); ++i) m.e[i] = decode_tpoly(entries[i], T);
    m.den = decode_tpoly(j.at("den"), T);
    if (m.den.is_zero()) throw domain_error(std::string(what) + ": zero denominator");
    return m;
}

json encode_spectrum(const SpectrumSpec& spec) {
    json entries = json::array();
    for (const auto& g : spec.groups())
        for (int r = 0; r < static_cast<int>(g.mult.size()); ++r)
            if (g.mult[r] > 0)
                entries.push_back(json{
                    {"poly", encode_intpoly(g.f)}, {"root", r}, {"mult", g.mult[r]}});
    return entries;
}

SpectrumSpec decode_spectrum(const json& entries, long precision_bits) {
    if (!entries.is_array()) throw domain_error("\"spectrum\" must be an array of entries");
    std::vector<SpectrumEntry> es;
    for (const auto& e : entries) {
        SpectrumEntry se;
        se.min_poly = decode_intpoly(e.at("poly"), "spectrum entry polynomial");
        se.root_index = e.at("root").get<int>();
        se.multiplicity = e.at("mult").get<int>();
        es.push_back(std::move(se));
    }
    return SpectrumSpec::from_entries(es, precision_bits);
}

json encode_rat_rows(const std::vector<std::vector<Rat>>& rows) {
    json out = json::array();
    for (const auto& row : rows) {
        json r = json::array();
        for (const auto& v : row) r.push_back(to_string(v));
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<std::vector<Rat>> decode_rat_rows(const json& j, const char* what) {
    if (!j.is_array()) throw domain_error(std::string(what) + ": expected an array of rows");
    std::vector<std::vector<Rat>> rows;
    for (const auto& rj : j) {
        if (!rj.is_array()) throw domain_error(std::string(what) + ": rows must be arrays");
        std::vector<Rat> row;
        for (const auto& v : rj) {
            if (v.is_number_integer())
                row.emplace_back(static_cast<long>(v.get<std::int64_t>()));
            else if (v.is_string())
                row.push_back(parse_rational(v.get<std::string>()));
            else
                throw domain_error(std::string(what) +
                                   ": entries must be integers or \"p/q\" strings");
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

json parse_json(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw domain_error("input is not valid JSON");
    return j;
}

// Missing keys and type mismatches surface as nlohmann exceptions; convert
// them so callers see one error family with a useful prefix.
template <typename F>
auto guarded(const char* what, F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw domain_error(std::string("malformed ") + what + ": " + e.what());
    }
}

// Shortest decimal that round-trips the double.
std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    double back = 0;
    for (int prec = 1; prec <= 16; ++prec) {
        char cand[40];
        std::snprintf(cand, sizeof cand, "%.*g", prec, v);
        std::sscanf(cand, "%lf", &back);
        if (back == v) return cand;
    }
    return buf;
}

} // namespace

std::string scheme_to_json(const Scheme& sch) {
    json j;
    j["format"] = "cps-scheme";
    j["version"] = 1;
    j["n"] = sch.n;
    j["s"] = sch.s;
    j["provenance"] = sch.provenance;
    j["tower"] = encode_tower(sch.tower);
    j["Y"] = encode_matrix(sch.Y);
    j["L"] = encode_matrix(sch.L);
    j["C"] = encode_matrix(sch.C);
    j["A"] = encode_matrix(sch.A);
    j["B"] = encode_matrix(sch.B);
    j["a_spec"] = encode_spectrum(sch.a_spec);
    j["b_spec"] = encode_spectrum(sch.b_spec);
    j["perm"] = sch.perm;
    json vv = json::object();
    for (const auto& [name, val] : sch.var_values) vv[name] = to_string(val);
    j["var_values"] = std::move(vv);
    j["certificate"] = json{{"nondegenerate", sch.certificate.nondegenerate},
                            {"aperiodic", sch.certificate.aperiodic},
                            {"irreducible", sch.certificate.irreducible},
                            {"internal_rationals", encode_rat_rows(sch.certificate.internal_rationals)},
                            {"physical_rationals", encode_rat_rows(sch.certificate.physical_rationals)},
                            {"annihilators", encode_rat_rows(sch.certificate.annihilators)}};
    return j.dump(2) + "\n";
}

Scheme scheme_from_json(const std::string& text) {
    json j = parse_json(text);
    if (!j.is_object() || j.value("format", "") != "cps-scheme")
        throw domain_error("not a scheme file (missing format: cps-scheme)");
    return guarded("scheme file", [&] {
    Scheme sch;
    sch.n = j.at("n").get<int>();
    sch.s = j.at("s").get<int>();
    if (sch.n < 0 || sch.s <= 0 || sch.n > sch.s)
        throw domain_error("scheme dimensions out of range");
    sch.provenance = j.value("provenance", "");
    sch.tower = decode_tower(j.at("tower"));
    sch.Y = decode_matrix(j.at("Y"), sch.tower, "Y");
    sch.L = decode_matrix(j.at("L"), sch.tower, "L");
    sch.C = decode_matrix(j.at("C"), sch.tower, "C");
    sch.A = decode_matrix(j.at("A"), sch.tower, "A");
    sch.B = decode_matrix(j.at("B"), sch.tower, "B");
    sch.a_spec = decode_spectrum(j.at("a_spec"), 256);
    sch.b_spec = decode_spectrum(j.at("b_spec"), 256);
    if (j.contains("perm")) sch.perm = j.at("perm").get<std::vector<int>>();
    for (const auto& [name, val] : j.at("var_values").items())
        sch.var_values[name] = parse_rational(val.get<std::string>());
    const json& c = j.at("certificate");
    sch.certificate.nondegenerate = c.at("nondegenerate").get<bool>();
    sch.certificate.aperiodic = c.at("aperiodic").get<bool>();
    sch.certificate.irreducible = c.at("irreducible").get<bool>();
    sch.certificate.internal_rationals =
        decode_rat_rows(c.at("internal_rationals"), "certificate");
    sch.certificate.physical_rationals =
        decode_rat_rows(c.at("physical_rationals"), "certificate");
    sch.certificate.annihilators = decode_rat_rows(c.at("annihilators"), "certificate");

    if (sch.Y.rows != sch.s || sch.Y.cols != sch.s || sch.L.rows != sch.s ||
        sch.L.cols != sch.s || sch.C.rows != sch.s || sch.C.cols != sch.s ||
        sch.A.rows != sch.n || sch.A.cols != sch.n || sch.B.rows != sch.s - sch.n ||
        sch.B.cols != sch.s - sch.n)
        throw domain_error("scheme matrices disagree with the stated dimensions");
    return sch;
}

std::string spectrum_to_json(const SpectrumSpec& spec) {
    json j;
    j["spectrum"] = encode_spectrum(spec);
    return j.dump(2) + "\n";
}

SpectrumSpec spectrum_from_json(const std::string& text, long precision_bits) {
    json j = parse_json(text);
    if (!j.is_object() || !j.contains("spectrum"))
        throw domain_error("expected an object with a \"spectrum\" array");
    return decode_spectrum(j.at("spectrum"), precision_bits);
}

std::vector<std::vector<Rat>> rational_matrix_from_json(const std::string& text) {
    json j = parse_json(text);
    if (!j.is_object() || !j.contains("matrix"))
        throw domain_error("expected an object with a \"matrix\" array");
    auto rows = decode_rat_rows(j.at("matrix"), "matrix");
    if (rows.empty()) throw domain_error("matrix: no rows");
    for (const auto& r : rows)
        if (r.size() != rows.size())
            throw domain_error("matrix: expected a square row-major array");
    return rows;
}

SpectrumSpec spectrum_or_matrix_from_json(const std::string& text, long precision_bits) {
    json j = parse_json(text);
    if (j.is_object() && j.contains("spectrum"))
        return decode_spectrum(j.at("spectrum"), precision_bits);
    if (j.is_object() && j.contains("matrix"))
        return spectrum_from_matrix(rational_matrix_from_json(text), precision_bits);
    throw domain_error("expected an object with either \"spectrum\" or \"matrix\"");
}

std::string points_to_csv(const PointSet& ps) {
    std::ostringstream out;
    for (int i = 0; i < ps.n; ++i) out << (i ? "," : "") << "x" << (i + 1);
    for (int i = 0; i < ps.s - ps.n; ++i) out << ",star" << (i + 1);
    for (int i = 0; i < ps.s; ++i) out << ",r" << (i + 1);
    out << "\n";
    for (const auto& p : ps.points) {
        for (int i = 0; i < ps.n; ++i) out << (i ? "," : "") << fmt_double(p.x[i]);
        for (int i = 0; i < ps.s - ps.n; ++i) out << "," << fmt_double(p.x_star[i]);
        for (int i = 0; i < ps.s; ++i) out << "," << p.r[i];
        out << "\n";
    }
    return out.str();
}

PointSet points_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw domain_error("point CSV is empty");
    int n = 0, nstar = 0, s = 0;
    {
        std::istringstream hdr(line);
        std::string col;
        while (std::getline(hdr, col, ',')) {
            if (col.rfind("x", 0) == 0 && col.size() > 1 && col[1] != ' ' && isdigit(col[1]))
                ++n;
            else if (col.rfind("star", 0) == 0)
                ++nstar;
            else if (col.rfind("r", 0) == 0)
                ++s;
            else
                throw domain_error("unrecognized point CSV column \"" + col + "\"");
        }
    }
    if (n < 1 || s != n + nstar)
        throw domain_error("point CSV header does not have the x/star/r layout");
    PointSet ps;
    ps.n = n;
    ps.s = s;
    long lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        LatticePoint p;
        auto next = [&](const char* what) {
            if (!std::getline(row, cell, ','))
                throw domain_error("point CSV line " + std::to_string(lineno) + ": missing " +
                                   what);
            return cell;
        };
        for (int i = 0; i < n; ++i) p.x.push_back(std::stod(next("x value")));
        for (int i = 0; i < nstar; ++i) p.x_star.push_back(std::stod(next("star value")));
        for (int i = 0; i < s; ++i) p.r.push_back(std::stol(next("lattice coordinate")));
        if (std::getline(row, cell, ','))
            throw domain_error("point CSV line " + std::to_string(lineno) + ": extra columns");
        ps.points.push_back(std::move(p));
    }
    return ps;
}

std::string points_to_svg(const PointSet& ps) {
    if (ps.n != 1 && ps.n != 2)
        throw domain_error("scatter plots are only drawn for 1 or 2 physical dimensions");
    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    bool first = true;
    for (const auto& p : ps.points) {
        double px = p.x[0], py = ps.n == 2 ? p.x[1] : 0.0;
        if (first || px < xmin) xmin = px;
        if (first || px > xmax) xmax = px;
        if (first || py < ymin) ymin = py;
        if (first || py > ymax) ymax = py;
        first = false;
    }
    const double span = std::max({xmax - xmin, ymax - ymin, 1e-9});
    const double size = 640.0, pad = 20.0, scale = (size - 2 * pad) / span;
    const double height = ps.n == 2 ? size : 80.0;
    const double dot = std::max(1.5, scale * 0.01);
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt_double(size)
        << "\" height=\"" << fmt_double(height) << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (const auto& p : ps.points) {
        double px = pad + (p.x[0] - xmin) * scale;
        double py = ps.n == 2 ? height - pad - (p.x[1] - ymin) * scale : height / 2;
        out << "<circle cx=\"" << fmt_double(px) << "\" cy=\"" << fmt_double(py) << "\" r=\""
            << fmt_double(dot) << "\" fill=\"" << (p.boundary ? "#c44" : "#246") << "\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace cps
