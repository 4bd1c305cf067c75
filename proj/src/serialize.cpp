#include "chainstab/serialize.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>

namespace chainstab {

namespace {

const Json& need(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw std::invalid_argument(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

std::string need_string(const Json& j, const char* what) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    throw std::invalid_argument(std::string(what) +
                                " must be a rational string or integer");
}

Integer integer_from_json(const Json& j, const char* what) {
    const Rational r = parse_rational(need_string(j, what));
    if (denominator(r) != 1)
        throw std::invalid_argument(std::string(what) + " must be an integer");
    return numerator(r);
}

QVec qvec_from_json(const Json& j, const char* what) {
    if (!j.is_array()) throw std::invalid_argument(std::string(what) + " must be an array");
    QVec v;
    for (const auto& e : j) v.push_back(parse_rational(need_string(e, what)));
    return v;
}

Json qvec_json(const QVec& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(rational_to_string(x));
    return out;
}

Json integer_vec_json(const std::vector<Integer>& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(integer_to_string(x));
    return out;
}

}  // namespace

Json rational_json(const Rational& x) { return rational_to_string(x); }

Rational rational_from_json(const Json& j) {
    return parse_rational(need_string(j, "rational"));
}

Json qmat_json(const QMat& m) {
    Json rows = Json::array();
    for (size_t r = 0; r < m.rows(); ++r) rows.push_back(qvec_json(m.row(r)));
    return rows;
}

QMat qmat_from_json(const Json& j) {
    if (!j.is_array() || j.empty())
        throw std::invalid_argument("matrix must be a nonempty array of rows");
    std::vector<QVec> rows;
    for (const auto& r : j) rows.push_back(qvec_from_json(r, "matrix entry"));
    for (const auto& r : rows)
        if (r.size() != rows[0].size())
            throw std::invalid_argument("matrix rows have unequal lengths");
    return QMat::from_rows(rows);
}

Json lattice_class_json(const LatticeClass& c) {
    return Json{{"kind", c.kind == LatticeKind::chain ? "chain" : "quiver"},
                {"n", c.n},
                {"coords", integer_vec_json(c.coords)}};
}

LatticeClass lattice_class_from_json(const Json& j) {
    const std::string kind = need(j, "kind").get<std::string>();
    if (kind != "chain" && kind != "quiver")
        throw std::invalid_argument("class kind must be \"chain\" or \"quiver\"");
    const int n = need(j, "n").get<int>();
    std::vector<Integer> coords;
    for (const auto& e : need(j, "coords"))
        coords.push_back(integer_from_json(e, "coordinate"));
    return LatticeClass(kind == "chain" ? LatticeKind::chain : LatticeKind::quiver,
                        n, std::move(coords));
}

Json quad_form_json(const QuadForm& q) {
    return Json{{"matrix", qmat_json(q.matrix)}};
}

QuadForm quad_form_from_json(const Json& j) {
    return QuadForm(qmat_from_json(need(j, "matrix")));
}

Json charge_json(const CentralCharge& z) {
    return Json{{"re", qvec_json(z.re)}, {"im", qvec_json(z.im)}};
}

CentralCharge charge_from_json(const Json& j) {
    return CentralCharge(qvec_from_json(need(j, "re"), "re"),
                         qvec_from_json(need(j, "im"), "im"));
}

Json glued_charge_json(const GluedCharge& z) {
    Json nodes = Json::array();
    for (const auto& n : z.nodes) nodes.push_back(charge_json(n));
    return Json{{"nodes", nodes}};
}

GluedCharge glued_charge_from_json(const Json& j) {
    if (j.is_object() && j.contains("nodes")) {
        std::vector<CentralCharge> nodes;
        for (const auto& n : j.at("nodes")) nodes.push_back(charge_from_json(n));
        return glue_charges(std::move(nodes));
    }
    return glue_charges({charge_from_json(j)});
}

Json chain_rep_json(const ChainRep& rep) {
    Json maps = Json::array();
    for (const auto& m : rep.maps) maps.push_back(qmat_json(m));
    return Json{{"n", rep.n}, {"dims", integer_vec_json(rep.dims)}, {"maps", maps}};
}

ChainRep chain_rep_from_json(const Json& j) {
    std::vector<Integer> dims;
    for (const auto& e : need(j, "dims"))
        dims.push_back(integer_from_json(e, "dimension"));
    if (j.contains("n") && need(j, "n").get<int>() != (int)dims.size())
        throw std::invalid_argument("field \"n\" disagrees with dims length");
    std::vector<QMat> maps;
    const Json& jm = need(j, "maps");
    if (!jm.is_array()) throw std::invalid_argument("maps must be an array");
    for (size_t i = 0; i < jm.size(); ++i) {
        const Json& m = jm[i];
        // an empty matrix (zero rows or columns) may be written as []
        if (m.is_array() && m.empty()) {
            const size_t rows = i + 1 < dims.size() ? (size_t)(long long)dims[i + 1] : 0;
            const size_t cols = i < dims.size() ? (size_t)(long long)dims[i] : 0;
            maps.push_back(QMat(rows, cols));
        } else {
            maps.push_back(qmat_from_json(m));
        }
    }
    return ChainRep(std::move(dims), std::move(maps));
}

Json interval_sum_json(const IntervalSum& s) {
    Json terms = Json::array();
    for (const auto& t : s.terms)
        terms.push_back(Json{{"a", t.a},
                             {"b", t.b},
                             {"shift", t.shift},
                             {"mult", integer_to_string(t.mult)}});
    return Json{{"terms", terms}, {"display", s.to_string()}};
}

Json phase_json(const PhaseValue& p) {
    Json out{{"direction",
              Json{{"re", rational_to_string(p.z.re)}, {"im", rational_to_string(p.z.im)}}},
             {"k", p.k}};
    if (auto r = p.exact_rational())
        out["exact"] = rational_to_string(*r);
    else
        out["exact"] = nullptr;
    return out;
}

Json verdict_json(const SemistableVerdict& v) {
    Json out{{"semistable", v.semistable}};
    out["certificate"] =
        v.certificate ? lattice_class_json(*v.certificate) : Json(nullptr);
    return out;
}

Json hn_json(const HNResult& r) {
    Json factors = Json::array();
    for (const auto& f : r.factors)
        factors.push_back(Json{{"class", lattice_class_json(f.cls)},
                               {"phase", phase_json(f.phase)},
                               {"witness", interval_sum_json(f.witness)}});
    return Json{{"factors", factors}};
}

Json wall_json(const Wall& w) {
    Json subclasses = Json::array();
    for (const auto& u : w.subclasses) subclasses.push_back(lattice_class_json(u));
    Json out{{"equation", Json{{"coeffs", qvec_json(w.equation.coeffs)},
                               {"const", rational_to_string(w.equation.constant)},
                               {"display", w.equation.to_string()}}},
             {"subclass", subclasses}};
    return out;
}

Json walls_json(const std::vector<Wall>& walls) {
    Json out = Json::array();
    for (const auto& w : walls) out.push_back(wall_json(w));
    return out;
}

Json chain_class_json(const ChainClass& c) {
    Json pairs = Json::array();
    for (const auto& [d, r] : c.pairs)
        pairs.push_back(Json::array({integer_to_string(d), integer_to_string(r)}));
    return Json{{"g", integer_to_string(c.g)}, {"pairs", pairs}};
}

ChainClass chain_class_from_json(const Json& j) {
    const Integer g = integer_from_json(need(j, "g"), "genus");
    std::vector<std::pair<Integer, Integer>> pairs;
    for (const auto& p : need(j, "pairs")) {
        if (!p.is_array() || p.size() != 2)
            throw std::invalid_argument("each pair must be [degree, rank]");
        pairs.emplace_back(integer_from_json(p[0], "degree"),
                           integer_from_json(p[1], "rank"));
    }
    return ChainClass(g, std::move(pairs));
}

Json support_report_json(const SupportReport& r) {
    Json viol = Json::array();
    for (const auto& s : r.violating_samples) viol.push_back(lattice_class_json(s));
    return Json{{"kernel_negdef", r.kernel_negdef}, {"violating_samples", viol}};
}

Json sod_record_json(const SODRecord& r) {
    Json comps = Json::array();
    for (const auto& c : r.components)
        comps.push_back(Json{{"label", c.label}, {"generators", c.generators}});
    return Json{{"components", comps}, {"gram", qmat_json(r.gram)}};
}

SODRecord sod_record_from_json(const Json& j) {
    std::vector<SODComponent> comps;
    for (const auto& c : need(j, "components")) {
        SODComponent sc;
        sc.label = need(c, "label").get<std::string>();
        sc.generators = need(c, "generators").get<size_t>();
        comps.push_back(std::move(sc));
    }
    return SODRecord(std::move(comps), qmat_from_json(need(j, "gram")));
}

Json derivation_json(const Derivation& d) {
    Json steps = Json::array();
    for (const auto& s : d.steps) {
        Json path = Json::array();
        for (size_t p : s.path) path.push_back(p);
        steps.push_back(Json{{"rule", s.rule},
                             {"path", path},
                             {"before_hash", s.before_hash},
                             {"after_hash", s.after_hash},
                             {"after", s.after}});
    }
    return Json{{"start", d.start->print()},
                {"result", d.result->print()},
                {"steps", steps}};
}

Json tower_record_json(const TowerRecord& r) {
    Json levels = Json::array();
    for (const auto& l : r.levels) {
        Json jl{{"level", l.level}, {"note", l.note}};
        jl["fiber_rank"] = l.fiber_rank ? Json(*l.fiber_rank) : Json(nullptr);
        levels.push_back(jl);
    }
    Json bundles = Json::array();
    for (const auto& [label, desc] : r.line_bundles)
        bundles.push_back(Json{{"label", label}, {"description", desc}});
    Json exts = Json::array();
    for (const auto& e : r.extensions) exts.push_back(e);
    return Json{{"n", r.n}, {"levels", levels}, {"line_bundles", bundles},
                {"extensions", exts}};
}

Json shift_vector_report_json(const ShiftVectorReport& r) {
    Json adm = Json::array();
    for (const auto& v : r.admissible) {
        Json row = Json::array();
        for (long long x : v) row.push_back(x);
        adm.push_back(row);
    }
    return Json{{"constraint", r.constraint}, {"admissible", adm}};
}

std::string chamber_grid_csv(const ChamberGrid& grid) {
    std::string out;
    const size_t k = grid.rows.empty() ? 0 : grid.rows[0].point.size();
    for (size_t i = 1; i <= k; ++i) {
        if (i > 1) out += ",";
        out += "param_" + std::to_string(i);
    }
    out += k ? ",n_semistable,hn_type_id\n" : "n_semistable,hn_type_id\n";
    for (const auto& row : grid.rows) {
        for (const auto& x : row.point) out += rational_to_string(x) + ",";
        out += std::to_string(row.n_semistable) + "," +
               std::to_string(row.signature_id) + "\n";
    }
    return out;
}

}  // namespace chainstab
