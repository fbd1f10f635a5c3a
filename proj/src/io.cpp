#include "mixdae/io.hpp"

#include <json.hpp>
#include <regex>
#include <set>
#include <sstream>

#include "mixdae/error.hpp"

namespace mixdae::io {

using Json = nlohmann::ordered_json;

namespace {

const std::regex kDummyPattern("^z[0-9]+_[0-9]+$");

[[noreturn]] void parse_fail(const std::string &msg) { fail(ErrorKind::ParseError, msg); }

int to_nonneg_int(const std::string &key, const std::string &what) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(key, &pos);
        if (pos != key.size() || v < 0) parse_fail("bad " + what + " '" + key + "'");
        return v;
    } catch (const std::logic_error &) {
        parse_fail("bad " + what + " '" + key + "'");
    }
}

Coefficient parse_coefficient(const Json &j, std::map<std::string, int> &param_ids,
                              std::set<int> &params_used) {
    if (!j.is_object()) parse_fail("coefficient must be an object");
    Coefficient c;
    if (j.contains("rat") && !j["rat"].is_null()) {
        if (!j["rat"].is_string()) parse_fail("'rat' must be a \"num/den\" string");
        c.rat = parse_rational(j["rat"].get<std::string>());
    }
    if (j.contains("param") && !j["param"].is_null()) {
        if (!j["param"].is_string()) parse_fail("'param' must be a name or null");
        std::string name = j["param"].get<std::string>();
        auto it = param_ids.find(name);
        if (it == param_ids.end()) parse_fail("parameter '" + name + "' used before declaration");
        if (!params_used.insert(it->second).second)
            parse_fail("parameter '" + name + "' used in more than one coefficient");
        c.param = ParamSymbol{it->second, name};
    }
    for (const auto &[key, value] : j.items())
        if (key != "rat" && key != "param") parse_fail("unknown coefficient key '" + key + "'");
    return c;
}

} // namespace

DaeSystem parse_problem(const std::string &json_text) {
    Json j;
    try {
        j = Json::parse(json_text);
    } catch (const nlohmann::json::exception &e) {
        parse_fail(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) parse_fail("top level must be an object");
    for (const char *key : {"n", "variables", "rows", "rhs"})
        if (!j.contains(key)) parse_fail(std::string("missing key '") + key + "'");

    DaeSystem d;
    if (!j["n"].is_number_integer()) parse_fail("'n' must be an integer");
    int n = j["n"].get<int>();
    if (n < 1) parse_fail("'n' must be at least 1");

    auto read_names = [&](const char *key, std::vector<std::string> &out, bool required_size) {
        if (!j.contains(key)) return;
        if (!j[key].is_array()) parse_fail(std::string("'") + key + "' must be an array");
        for (const auto &v : j[key]) {
            if (!v.is_string() || v.get<std::string>().empty()) parse_fail("names must be nonempty strings");
            out.push_back(v.get<std::string>());
        }
        std::set<std::string> uniq(out.begin(), out.end());
        if (uniq.size() != out.size()) parse_fail(std::string("duplicate names in '") + key + "'");
        if (required_size && static_cast<int>(out.size()) != n)
            parse_fail(std::string("'") + key + "' must list exactly n names");
    };
    read_names("variables", d.variables, true);
    read_names("forcings", d.forcings, false);
    read_names("params", d.params, false);
    {
        std::set<std::string> all;
        for (const auto &lists : {d.variables, d.forcings, d.params})
            for (const auto &name : lists)
                if (!all.insert(name).second)
                    parse_fail("name '" + name + "' appears in more than one of variables/forcings/params");
    }
    for (const auto &v : d.variables)
        if (std::regex_match(v, kDummyPattern))
            parse_fail("variable name '" + v + "' collides with dummy-variable naming");

    std::map<std::string, int> var_ids, forcing_ids, param_ids;
    for (int i = 0; i < n; ++i) var_ids[d.variables[i]] = i;
    for (std::size_t i = 0; i < d.forcings.size(); ++i) forcing_ids[d.forcings[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < d.params.size(); ++i) param_ids[d.params[i]] = static_cast<int>(i);

    int order = -1;
    if (j.contains("order")) {
        if (!j["order"].is_number_integer() || j["order"].get<int>() < 0)
            parse_fail("'order' must be a nonnegative integer");
        order = j["order"].get<int>();
    }

    if (!j["rows"].is_array() || static_cast<int>(j["rows"].size()) != n)
        parse_fail("'rows' must be an array of n rows");
    bool all_layered = true;
    std::vector<RowKind> kinds(n, RowKind::Q);
    std::vector<std::map<int, ScalarPoly>> entries(n);
    std::set<int> params_used;
    for (int i = 0; i < n; ++i) {
        const Json &row = j["rows"][i];
        if (!row.is_object() || !row.contains("kind")) parse_fail("each row needs a 'kind'");
        std::string kind = row["kind"].get<std::string>();
        if (kind == "Q")
            kinds[i] = RowKind::Q;
        else if (kind == "T")
            kinds[i] = RowKind::T;
        else if (kind == "mixed")
            all_layered = false;
        else
            parse_fail("row kind must be \"Q\", \"T\" or \"mixed\"");
        if (!row.contains("entries")) continue;
        if (!row["entries"].is_object()) parse_fail("'entries' must map variables to coefficient maps");
        for (const auto &[var, degs] : row["entries"].items()) {
            auto vit = var_ids.find(var);
            if (vit == var_ids.end()) parse_fail("unknown variable '" + var + "' in row entries");
            ScalarPoly poly;
            if (!degs.is_object()) parse_fail("entry for '" + var + "' must map degrees to coefficients");
            for (const auto &[deg_key, coeff_json] : degs.items()) {
                int deg = to_nonneg_int(deg_key, "degree");
                if (order >= 0 && deg > order) parse_fail("degree exceeds declared order");
                Coefficient c = parse_coefficient(coeff_json, param_ids, params_used);
                if (kind == "Q" && c.param) parse_fail("Q-row coefficient carries a parameter");
                if (kind == "T") {
                    if (!c.param) parse_fail("T-row coefficient needs a parameter");
                    if (c.rat != 0) parse_fail("T-row coefficient must have zero rational part");
                }
                if (!c.is_zero()) poly.set(deg, c);
            }
            if (!poly.is_zero()) entries[i][vit->second] = std::move(poly);
        }
    }

    if (all_layered) {
        LMPolyMatrix lm = LMPolyMatrix::zero(n);
        for (int i = 0; i < n; ++i) {
            lm.rows[i].kind = kinds[i];
            lm.rows[i].entries = std::move(entries[i]);
        }
        d.matrix = std::move(lm);
    } else {
        MixedPolyMatrix m = MixedPolyMatrix::zero(n);
        m.rows = std::move(entries);
        d.matrix = std::move(m);
    }

    if (!j["rhs"].is_array() || static_cast<int>(j["rhs"].size()) != n)
        parse_fail("'rhs' must be an array of n objects");
    d.rhs.resize(n);
    for (int i = 0; i < n; ++i) {
        const Json &r = j["rhs"][i];
        if (!r.is_object()) parse_fail("each rhs element must be an object");
        for (const auto &[forcing, derivs] : r.items()) {
            auto fit = forcing_ids.find(forcing);
            if (fit == forcing_ids.end()) parse_fail("unknown forcing '" + forcing + "' in rhs");
            if (!derivs.is_object()) parse_fail("rhs entry must map derivative orders to rationals");
            for (const auto &[deriv_key, value] : derivs.items()) {
                int deriv = to_nonneg_int(deriv_key, "derivative order");
                if (!value.is_string()) parse_fail("rhs coefficient must be a \"num/den\" string");
                Rational c = parse_rational(value.get<std::string>());
                if (c != 0) d.rhs[i].add(fit->second, deriv, c);
            }
        }
    }

    try {
        d.check_invariants();
    } catch (const Error &e) {
        parse_fail(e.what());
    }
    return d;
}

namespace {

Json coefficient_json(const Coefficient &c) {
    Json out = Json::object();
    out["rat"] = rational_to_string(c.rat);
    out["param"] = c.param ? Json(c.param->name) : Json(nullptr);
    return out;
}

Json poly_json(const ScalarPoly &p) {
    Json out = Json::object();
    for (const auto &[deg, c] : p.terms) out[std::to_string(deg)] = coefficient_json(c);
    return out;
}

} // namespace

std::string serialize_problem(const DaeSystem &d) {
    Json j = Json::object();
    int n = d.size();
    j["n"] = n;
    int order = d.is_lm() ? d.lm().max_degree() : d.mixed().max_degree();
    j["order"] = order;
    j["variables"] = d.variables;
    j["forcings"] = d.forcings;
    j["params"] = d.params;
    Json rows = Json::array();
    for (int i = 0; i < n; ++i) {
        Json row = Json::object();
        const std::map<int, ScalarPoly> *entries = nullptr;
        if (d.is_lm()) {
            row["kind"] = d.lm().rows[i].kind == RowKind::Q ? "Q" : "T";
            entries = &d.lm().rows[i].entries;
        } else {
            row["kind"] = "mixed";
            entries = &d.mixed().rows[i];
        }
        Json ej = Json::object();
        for (const auto &[col, poly] : *entries) ej[d.variables[col]] = poly_json(poly);
        row["entries"] = std::move(ej);
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    Json rhs = Json::array();
    for (int i = 0; i < n; ++i) {
        Json r = Json::object();
        std::map<int, std::map<int, Rational>> grouped;
        for (const auto &[key, v] : d.rhs[i].terms) grouped[key.first][key.second] = v;
        for (const auto &[forcing, derivs] : grouped) {
            Json dj = Json::object();
            for (const auto &[deriv, v] : derivs) dj[std::to_string(deriv)] = rational_to_string(v);
            r[d.forcings[forcing]] = std::move(dj);
        }
        rhs.push_back(std::move(r));
    }
    j["rhs"] = std::move(rhs);
    return j.dump(2) + "\n";
}

std::string deriv_display(const std::string &name, int order) {
    if (order <= 3) return name + std::string(order, '\'');
    return name + "^(" + std::to_string(order) + ")";
}

std::string dummy_display(int column, int deriv) {
    return "z" + std::to_string(column + 1) + "_" + std::to_string(deriv);
}

std::string var_display(const DaeSystem &d, const msalg::VarRef &v) {
    if (v.dummy) return dummy_display(v.column, v.deriv);
    return deriv_display(d.variables[v.column], v.deriv);
}

namespace {

// Appends "+/- coeff*atom"; parameter names that read as rationals (re-tagged
// constants from LM classification) print as plain numbers.
void append_term(std::ostringstream &os, bool &first, const Coefficient &c, const std::string &atom) {
    Rational r = c.rat;
    std::string symbol;
    if (c.param) {
        try {
            r = parse_rational(c.param->name);
        } catch (const Error &) {
            symbol = c.param->name;
        }
    }
    bool neg = symbol.empty() && r < 0;
    if (neg) r = -r;
    if (first) {
        if (neg) os << "-";
        first = false;
    } else {
        os << (neg ? " - " : " + ");
    }
    if (!symbol.empty()) {
        if (c.rat != 0) symbol = "(" + rational_to_string(c.rat) + "+" + symbol + ")";
        os << symbol << "*" << atom;
    } else if (r == 1) {
        os << atom;
    } else {
        os << rational_to_string(r) << "*" << atom;
    }
}

} // namespace

std::string rhs_display(const DaeSystem &d, const FormalRhs &rhs) {
    if (rhs.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto &[key, v] : rhs.terms)
        append_term(os, first, rational_coeff(v), deriv_display(d.forcings[key.first], key.second));
    return os.str();
}

std::string equation_display(const DaeSystem &d, const msalg::ReducedEquation &eq) {
    std::ostringstream os;
    bool first = true;
    for (const auto &[c, v] : eq.lhs) append_term(os, first, c, var_display(d, v));
    if (first) os << "0";
    os << " = " << rhs_display(d, eq.rhs);
    return os.str();
}

std::string reduced_text(const DaeSystem &d, const msalg::ReducedDae &r) {
    std::ostringstream os;
    for (const auto &eq : r.equations) os << equation_display(d, eq) << "\n";
    if (!r.dummies.empty()) {
        os << "dummies:";
        for (const auto &dv : r.dummies)
            os << " " << dummy_display(dv.column, dv.deriv) << "=" << deriv_display(d.variables[dv.column], dv.deriv);
        os << "\n";
    }
    return os.str();
}

} // namespace mixdae::io
