#include "mixdae/pipeline.hpp"

#include <json.hpp>
#include <sstream>

#include "mixdae/error.hpp"

namespace mixdae::pipeline {

using Json = nlohmann::ordered_json;

DaeSystem to_lm(const DaeSystem &input) {
    if (input.is_lm()) return input;
    DaeSystem copy = input;
    if (core::classify_system_as_lm(copy)) return copy;
    return core::mixed_to_lm(input);
}

ReduceOutcome run_reduce(const DaeSystem &input, const Options &opts) {
    ReduceOutcome out;
    out.seed = opts.seed;
    out.lm_input = to_lm(input);

    oracle::Rng rng(opts.seed);
    auto degdet = oracle::degdet_randomized(out.lm_input, opts.trials, rng);
    out.degdet_estimate = degdet.value;
    if (opts.with_index) {
        oracle::Rng rng_index(opts.seed);
        out.index_before = oracle::report_index(input, opts.trials, rng_index);
    }

    out.tight = relax::tighten(out.lm_input, opts.dc);
    out.ms_dual = msalg::ms_dual(out.tight.system.lm());
    out.reduced = msalg::ms_reduce(out.tight.system, out.ms_dual);
    return out;
}

CheckOutcome run_check(const DaeSystem &input, const Options &opts) {
    CheckOutcome out;
    DaeSystem lm = to_lm(input);
    out.n = lm.size();

    auto weights = assignment::weights_of(lm.lm());
    auto matching = assignment::max_weight_perfect_matching(weights); // throws: singular
    auto dual = assignment::construct_dual(weights, matching);
    out.delta_hat = assignment::assignment_value(dual);

    auto sharp = relax::tight_coefficient_matrix(lm.lm(), dual);
    auto cert = lmrank::lm_rank(sharp);
    out.rank = cert.rank;
    out.tight = cert.rank == lm.size();
    out.rank_q_minimizer = cert.rank_q_minimizer;
    out.trank_t_minimizer = cert.trank_t_minimizer;
    out.minimizer = cert.minimizer;

    oracle::Rng rng(opts.seed);
    out.degdet_estimate = oracle::degdet_randomized(lm, opts.trials, rng).value;
    if (opts.with_index) {
        int l = input.is_lm() ? input.lm().max_degree() : input.mixed().max_degree();
        require(std::max(1, l) * input.size() <= 12, ErrorKind::TooLarge,
                "index diagnostic limited to first-order companion size <= 12");
        oracle::Rng rng_index(opts.seed);
        out.index = oracle::report_index(input, opts.trials, rng_index);
    }
    return out;
}

namespace {

Json coefficient_json(const Coefficient &c) {
    Json out = Json::object();
    out["rat"] = rational_to_string(c.rat);
    out["param"] = c.param ? Json(c.param->name) : Json(nullptr);
    return out;
}

Json rhs_json(const DaeSystem &d, const FormalRhs &rhs) {
    Json out = Json::object();
    std::map<int, std::map<int, Rational>> grouped;
    for (const auto &[key, v] : rhs.terms) grouped[key.first][key.second] = v;
    for (const auto &[forcing, derivs] : grouped) {
        Json dj = Json::object();
        for (const auto &[deriv, v] : derivs) dj[std::to_string(deriv)] = rational_to_string(v);
        out[d.forcings[forcing]] = std::move(dj);
    }
    return out;
}

Json poly_mat_json(const core::PolyMat &u, const std::vector<int> &row_ids) {
    Json out = Json::object();
    out["rows"] = row_ids;
    Json entries = Json::array();
    for (const auto &row : u) {
        Json rj = Json::array();
        for (const auto &p : row) {
            Json pj = Json::object();
            for (const auto &[deg, c] : p.terms) pj[std::to_string(deg)] = rational_to_string(c.rat);
            rj.push_back(std::move(pj));
        }
        entries.push_back(std::move(rj));
    }
    out["entries"] = std::move(entries);
    return out;
}

Json reduced_json(const DaeSystem &d, const msalg::ReducedDae &r) {
    Json out = Json::object();
    out["variables"] = d.variables;
    Json eqs = Json::array();
    for (const auto &eq : r.equations) {
        Json ej = Json::object();
        ej["row"] = eq.source_row;
        ej["order"] = eq.order;
        Json lhs = Json::array();
        for (const auto &[c, v] : eq.lhs) {
            Json term = coefficient_json(c);
            term["variable"] = d.variables[v.column];
            term["deriv"] = v.deriv;
            term["dummy"] = v.dummy;
            if (v.dummy) term["name"] = io::dummy_display(v.column, v.deriv);
            lhs.push_back(std::move(term));
        }
        ej["lhs"] = std::move(lhs);
        ej["rhs"] = rhs_json(d, eq.rhs);
        ej["text"] = io::equation_display(d, eq);
        eqs.push_back(std::move(ej));
    }
    out["equations"] = std::move(eqs);
    return out;
}

Json dummies_json(const DaeSystem &d, const msalg::ReducedDae &r) {
    Json out = Json::array();
    for (const auto &dv : r.dummies) {
        Json dj = Json::object();
        dj["name"] = io::dummy_display(dv.column, dv.deriv);
        dj["variable"] = d.variables[dv.column];
        dj["deriv"] = dv.deriv;
        out.push_back(std::move(dj));
    }
    return out;
}

Json dual_json(const assignment::DualSolution &dual) {
    Json out = Json::object();
    out["p"] = dual.p;
    out["q"] = dual.q;
    return out;
}

} // namespace

std::string result_json(const ReduceOutcome &out) {
    const DaeSystem &sys = out.tight.system;
    Json j = Json::object();
    j["status"] = "ok";
    j["modifications"] = out.tight.modifications;
    j["dual"] = dual_json(out.ms_dual);
    j["transform"] = poly_mat_json(out.tight.transform, out.tight.transform_rows);
    j["reduced"] = reduced_json(sys, out.reduced);
    j["dummies"] = dummies_json(sys, out.reduced);
    Json diag = Json::object();
    diag["delta_hat_initial"] = out.tight.delta_hat_initial;
    diag["delta_hat_final"] = out.tight.delta_hat_final;
    diag["degdet_estimate"] = out.degdet_estimate ? Json(*out.degdet_estimate) : Json(nullptr);
    if (out.index_before) diag["index_before"] = *out.index_before;
    diag["seed"] = out.seed;
    j["diagnostics"] = std::move(diag);
    return j.dump(2) + "\n";
}

std::string result_text(const ReduceOutcome &out) {
    std::ostringstream os;
    os << "modifications: " << out.tight.modifications << "\n";
    os << "delta_hat: " << out.tight.delta_hat_initial << " -> " << out.tight.delta_hat_final << "\n";
    if (out.degdet_estimate)
        os << "estimated deg det: " << *out.degdet_estimate << "\n";
    if (out.index_before) os << "index before reduction: " << *out.index_before << "\n";
    os << "reduced system (" << out.reduced.equations.size() << " equations, " << out.reduced.dummies.size()
       << " dummies):\n";
    os << io::reduced_text(out.tight.system, out.reduced);
    return os.str();
}

std::string trace_json(const relax::TightenResult &tight, const DaeSystem &lm_system) {
    Json records = Json::array();
    for (const auto &rec : tight.trace) {
        Json r = Json::object();
        r["iteration"] = rec.iteration;
        r["dc"] = rec.used_dc;
        r["rank"] = rec.rank;
        Json mins = Json::array();
        for (int c : rec.minimizer) mins.push_back(lm_system.variables[c]);
        r["minimizer"] = std::move(mins);
        r["decomposition"] = {rec.rank_q_minimizer, rec.trank_t_minimizer,
                              lm_system.size() - static_cast<int>(rec.minimizer.size())};
        Json u = Json::array();
        for (const auto &row : rec.transform.u) {
            Json rj = Json::array();
            for (const auto &v : row) rj.push_back(rational_to_string(v));
            u.push_back(std::move(rj));
        }
        r["u"] = std::move(u);
        r["u_rows"] = rec.transform.q_rows;
        r["dual_before"] = dual_json(rec.dual_before);
        r["dual_after"] = dual_json(rec.dual_after);
        r["dual_objectives"] = rec.dual_objectives;
        records.push_back(std::move(r));
    }
    Json j = Json::object();
    j["iterations"] = tight.modifications;
    j["records"] = std::move(records);
    return j.dump(2) + "\n";
}

std::string check_text(const CheckOutcome &out) {
    std::ostringstream os;
    if (out.tight)
        os << "tight: delta_hat=" << out.delta_hat;
    else
        os << "not tight: delta_hat=" << out.delta_hat;
    if (out.degdet_estimate) os << ", estimated deg det=" << *out.degdet_estimate;
    os << "\n";
    if (!out.tight) {
        os << "rank A# = " << out.rank << " = " << out.rank_q_minimizer << " + " << out.trank_t_minimizer << " + "
           << out.n - static_cast<int>(out.minimizer.size()) << " < " << out.n << "\n";
        os << "minimizer J* columns:";
        for (int c : out.minimizer) os << " " << c + 1;
        os << "\n";
    }
    if (out.index) os << "differentiation index: " << *out.index << "\n";
    return os.str();
}

} // namespace mixdae::pipeline
