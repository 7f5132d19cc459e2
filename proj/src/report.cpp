#include "drinfeld/report.hpp"

#include <chrono>
#include <sstream>

#include "drinfeld/errors.hpp"
#include "drinfeld/galois.hpp"
#include "drinfeld/homs.hpp"
#include "drinfeld/module.hpp"
#include "drinfeld/parse.hpp"
#include "drinfeld/relations.hpp"
#include "drinfeld/tmotive.hpp"

namespace drinfeld {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Job {
    DrinfeldModule rho;
    FieldPtr fld;
    int depth = 4;       // period tower depth
    int t_trunc = 48;    // Tate-series truncation
    int deg_cap = 3;     // relation-finder degree bound
    int branch = 0;
    int B = 4;           // endomorphism tau-degree cap
    int endo_d = 2;      // endomorphism coefficient-field degree cap
    int max_de = 12;     // tame extension cap
};

Json val_json(std::int64_t num, std::int64_t den) {
    if (den == 1) return num;
    std::ostringstream os;
    os << num << "/" << den;
    return os.str();
}

Json residual_json(const ResidualReport& r) {
    Json j;
    j["identity"] = r.identity;
    j["min_valuation"] = r.infinite ? Json("inf") : val_json(r.num, r.den);
    j["target"] = val_json(r.target_num, r.target_den);
    j["pass"] = r.pass;
    return j;
}

Json certificate_json(const RelationCertificate& c) {
    Json j;
    Json coeffs = Json::array();
    for (const auto& p : c.coeffs) coeffs.push_back(p.str());
    j["coeffs"] = coeffs;
    j["residual_valuation"] =
        c.residual_infinite ? Json("inf") : val_json(c.residual_num, c.residual_den);
    j["cutoff"] = val_json(c.cutoff_num, c.cutoff_den);
    return j;
}

bool all_pass(const std::vector<ResidualReport>& reps) {
    for (const auto& r : reps)
        if (!r.pass) return false;
    return true;
}

int prime_of(int q) {
    for (int p = 2; p * p <= q; ++p)
        if (q % p == 0) return p;
    return q;
}

Job make_job(Json& cfg) {
    if (!cfg.contains("module")) throw ParseError("config needs a \"module\" descriptor");
    Json& m = cfg["module"];
    if (!m.contains("q") || !m.contains("rank") || !m.contains("kappa"))
        throw ParseError("module descriptor needs q, rank, and kappa");
    int q = m["q"].get<int>();
    if (q < 2) throw ParseError("q must be a prime power >= 2");
    int p = prime_of(q);
    int e = 0;
    for (int v = q; v > 1; v /= p) {
        if (v % p != 0) throw ParseError("q must be a prime power");
        ++e;
    }
    int d = m.value("d", 1);
    m["d"] = d;
    int rank = m["rank"].get<int>();
    if (!m["kappa"].is_array() || int(m["kappa"].size()) != rank)
        throw ParseError("kappa must list exactly rank coefficients");

    Job job;
    job.fld = FqField::get(p, e, d);
    std::vector<Puiseux> kappa;
    for (const auto& s : m["kappa"]) kappa.push_back(parse_puiseux(job.fld, s.get<std::string>()));
    job.rho = DrinfeldModule(job.fld, std::move(kappa));

    job.depth = cfg.value("precision", 4);
    job.t_trunc = cfg.value("t_trunc", 48);
    job.deg_cap = cfg.value("deg_cap", 3);
    job.branch = cfg.value("branch", 0);
    job.B = cfg.value("B", 4);
    job.endo_d = cfg.value("endo_d", 2);
    job.max_de = cfg.value("max_de", 12);
    cfg["precision"] = job.depth;
    cfg["t_trunc"] = job.t_trunc;
    cfg["deg_cap"] = job.deg_cap;
    cfg["branch"] = job.branch;
    cfg["B"] = job.B;
    cfg["endo_d"] = job.endo_d;
    cfg["max_de"] = job.max_de;
    return job;
}

/// "u"-style inputs: a Puiseux literal, {"log_of": literal}, or
/// {"period_branch": int}.
Puiseux resolve_point(const Job& job, const Json& spec) {
    if (spec.is_string()) return parse_puiseux(job.fld, spec.get<std::string>());
    if (spec.is_object() && spec.contains("log_of"))
        return job.rho.log_eval(parse_puiseux(job.fld, spec["log_of"].get<std::string>()));
    if (spec.is_object() && spec.contains("period_branch"))
        return job.rho.period(spec["period_branch"].get<int>(), job.depth, job.max_de);
    throw ParseError("expected a Puiseux literal, {\"log_of\": ...}, or {\"period_branch\": ...}");
}

/// eta matrices and certificate reports for the low-degree endomorphism basis
/// (tau-degree < rank). Used by galois-dim and full-report.
struct EtaScan {
    std::vector<GaloisMatrix> gens;  // identity, t*identity, then etas
    std::vector<ResidualReport> reports;
    Json table = Json::array();
};

EtaScan scan_etas(const Job& job, const TMotiveData& td) {
    EtaScan out;
    const int r = job.rho.rank();
    RationalFn t = RationalFn::from_poly(Poly::monomial(Var::T, FieldElem::one(job.fld), 1));
    out.gens.push_back(galois_identity(job.fld, r));
    out.gens.push_back(galois_scalar(t, r));
    if (r < 2) return out;
    auto basis = hom_solver(job.rho, job.rho, r - 1, job.endo_d);
    Puiseux one = Puiseux::from_elem(FieldElem::one(job.fld));
    for (const auto& b : basis) {
        std::vector<Puiseux> kbasis{one};
        Puiseux c0 = b.coeff(0);
        if (!c0.is_exact_zero()) kbasis.push_back(c0);
        EtaResult er = eta_of_endo(job.rho, td, b, kbasis);
        Json entry;
        Json bj = Json::array();
        for (int i = 0; i <= b.deg(); ++i) bj.push_back(b.coeff(i).str());
        entry["endomorphism_tau_coeffs"] = bj;
        Json em = Json::array();
        for (const auto& row : er.eta_rational) {
            Json rj = Json::array();
            for (const auto& x : row) rj.push_back(x.str());
            em.push_back(rj);
        }
        entry["eta"] = em;
        Json reps = Json::array();
        for (const auto& rep : er.reports) reps.push_back(residual_json(rep));
        entry["certificates"] = reps;
        out.table.push_back(std::move(entry));
        for (const auto& rep : er.reports) out.reports.push_back(rep);
        out.gens.push_back(er.eta_rational);
    }
    return out;
}

} // namespace

Json run(const Json& config) {
    auto t0 = std::chrono::steady_clock::now();
    Json cfg = config;
    if (!cfg.contains("command")) throw ParseError("config needs a \"command\"");
    std::string cmd = cfg["command"].get<std::string>();
    Job job = make_job(cfg);
    const DrinfeldModule& rho = job.rho;
    const FieldPtr& F = job.fld;

    Json rep;
    Json values;
    Json residuals = Json::array();
    Json certificates = Json::array();
    bool pass = true;

    if (cmd == "exp" || cmd == "log") {
        if (!cfg.contains("z")) throw ParseError("command needs a point \"z\"");
        Puiseux z = resolve_point(job, cfg["z"]);
        Puiseux v = cmd == "exp" ? rho.exp_eval(z) : rho.log_eval(z);
        values["z"] = z.str();
        values[cmd] = v.str();
    } else if (cmd == "period") {
        Puiseux w = rho.period(job.branch, job.depth, job.max_de);
        values["period"] = w.str();
        values["valuation"] = val_json(w.val_num(), w.ram());
        Puiseux res = rho.exp_eval(w);
        ResidualReport rr;
        rr.identity = "exp(period) = 0";
        rr.pass = rr.infinite = res.is_exact_zero() || res.is_zero_to_prec();
        if (!rr.pass) { rr.num = res.val_num(); rr.den = res.ram(); }
        residuals.push_back(residual_json(rr));
        pass = pass && rr.pass;
    } else if (cmd == "agf") {
        if (!cfg.contains("u")) throw ParseError("command needs a point \"u\"");
        Puiseux u = resolve_point(job, cfg["u"]);
        TateSeries f = rho.agf(u, job.t_trunc);
        Json coeffs = Json::array();
        for (int m = 0; m < f.trunc(); ++m) coeffs.push_back(f.coeff(m).str());
        values["u"] = u.str();
        values["agf_coeffs"] = coeffs;
    } else if (cmd == "quasiperiod") {
        if (!cfg.contains("u")) throw ParseError("command needs a point \"u\"");
        int j = cfg.value("j", 1);
        cfg["j"] = j;
        Puiseux u = resolve_point(job, cfg["u"]);
        Puiseux tele = rho.quasi_period(TwistedPoly::tau(F, j), u);
        Puiseux agfv = rho.quasi_period_via_agf(j, u, job.t_trunc);
        values["u"] = u.str();
        values["telescoped"] = tele.str();
        values["via_agf"] = agfv.str();
        ResidualReport rr;
        rr.identity = "telescoped = twisted-AGF specialization";
        Puiseux d = tele - agfv;
        rr.pass = rr.infinite = d.is_exact_zero() || d.is_zero_to_prec();
        if (!rr.pass) { rr.num = d.val_num(); rr.den = d.ram(); }
        residuals.push_back(residual_json(rr));
        pass = pass && rr.pass;
    } else if (cmd == "period-matrix") {
        auto periods = independent_periods(rho, job.depth, job.max_de, job.t_trunc);
        auto P = rho.period_matrix(periods);
        Json pm = Json::array();
        for (const auto& row : P) {
            Json rj = Json::array();
            for (const auto& x : row) rj.push_back(x.str());
            pm.push_back(rj);
        }
        values["period_matrix"] = pm;
    } else if (cmd == "verify-triv") {
        auto periods = independent_periods(rho, job.depth, job.max_de, job.t_trunc);
        TMotiveData td = build_psi(rho, periods, job.t_trunc);
        Json ps = Json::array();
        for (const auto& w : periods) ps.push_back(w.str());
        values["periods"] = ps;
        values["psi_fallback"] = td.psi_fallback;
        for (const auto& r : td.reports) residuals.push_back(residual_json(r));
        pass = pass && all_pass(td.reports);
    } else if (cmd == "ext") {
        if (!cfg.contains("u")) throw ParseError("command needs a point \"u\"");
        Puiseux u = resolve_point(job, cfg["u"]);
        auto periods = independent_periods(rho, job.depth, job.max_de, job.t_trunc);
        TMotiveData td = build_psi(rho, periods, job.t_trunc);
        ExtBlock eb = build_ext(rho, td, u);
        values["u"] = u.str();
        values["alpha"] = eb.alpha.str();
        Json g = Json::array();
        for (const auto& e : eb.g) g.push_back(e.coeff(0).str());  // leading t-slot only
        values["g_constant_terms"] = g;
        for (const auto& r : td.reports) residuals.push_back(residual_json(r));
        for (const auto& r : eb.reports) residuals.push_back(residual_json(r));
        pass = pass && all_pass(td.reports) && all_pass(eb.reports);
    } else if (cmd == "endos") {
        int s = endo_ring_degree(rho, job.B, job.endo_d);
        int count = int(hom_solver(rho, rho, job.B, job.endo_d).size());
        values["s"] = s;
        values["endo_count_at_B"] = count;
    } else if (cmd == "galois-dim") {
        int r = rho.rank();
        int s = endo_ring_degree(rho, job.B, job.endo_d);
        EtaScan es;
        if (r >= 2) {
            auto periods = independent_periods(rho, job.depth, job.max_de, job.t_trunc);
            TMotiveData td = build_psi(rho, periods, job.t_trunc);
            es = scan_etas(job, td);
            pass = pass && all_pass(es.reports);
        } else {
            RationalFn t =
                RationalFn::from_poly(Poly::monomial(Var::T, FieldElem::one(F), 1));
            es.gens.push_back(galois_scalar(t, 1));
        }
        int dim = centralizer_dim(es.gens, r);
        int predicted = predicted_trdeg_periods(r, s);
        values["r"] = r;
        values["s"] = s;
        values["centralizer_dim"] = dim;
        values["predicted_trdeg"] = predicted;
        if (!es.table.empty()) values["eta_table"] = es.table;
        for (const auto& rr : es.reports) residuals.push_back(residual_json(rr));
        pass = pass && dim == predicted;
    } else if (cmd == "relations") {
        if (!cfg.contains("values") || !cfg["values"].is_array())
            throw ParseError("command needs a \"values\" array");
        std::vector<Puiseux> vals;
        Json echo = Json::array();
        for (const auto& v : cfg["values"]) {
            vals.push_back(resolve_point(job, v));
            echo.push_back(vals.back().str());
        }
        auto certs = find_relations(vals, job.deg_cap);
        values["values"] = echo;
        values["relation_count"] = int(certs.size());
        values["kspan_dim"] = int(vals.size()) - int(certs.size());
        for (const auto& c : certs) certificates.push_back(certificate_json(c));
    } else if (cmd == "full-report") {
        int r = rho.rank();
        auto periods = independent_periods(rho, job.depth, job.max_de, job.t_trunc);
        Json ps = Json::array();
        for (const auto& w : periods) ps.push_back(w.str());
        values["periods"] = ps;

        auto P = rho.period_matrix(periods);
        Json pm = Json::array();
        std::vector<Puiseux> flat;
        for (const auto& row : P) {
            Json rj = Json::array();
            for (const auto& x : row) {
                rj.push_back(x.str());
                flat.push_back(x);
            }
            pm.push_back(rj);
        }
        values["period_matrix"] = pm;

        TMotiveData td = build_psi(rho, periods, job.t_trunc);
        values["psi_fallback"] = td.psi_fallback;
        for (const auto& rr : td.reports) residuals.push_back(residual_json(rr));
        pass = pass && all_pass(td.reports);

        int s = endo_ring_degree(rho, job.B, job.endo_d);
        values["s"] = s;

        EtaScan es;
        if (r >= 2) {
            es = scan_etas(job, td);
            pass = pass && all_pass(es.reports);
        } else {
            RationalFn t =
                RationalFn::from_poly(Poly::monomial(Var::T, FieldElem::one(F), 1));
            es.gens.push_back(galois_scalar(t, 1));
        }
        for (const auto& rr : es.reports) residuals.push_back(residual_json(rr));
        if (!es.table.empty()) values["eta_table"] = es.table;

        int dim = centralizer_dim(es.gens, r);
        values["centralizer_dim"] = dim;

        auto certs = find_relations(flat, job.deg_cap);
        values["period_matrix_relation_count"] = int(certs.size());
        for (const auto& c : certs) certificates.push_back(certificate_json(c));

        Json pred;
        pred["trdeg_periods"] = predicted_trdeg_periods(r, s);
        pred["centralizer_matches"] = dim == predicted_trdeg_periods(r, s);
        values["predictions"] = pred;
        pass = pass && dim == predicted_trdeg_periods(r, s);
    } else {
        throw ParseError("unknown command '" + cmd + "'");
    }

    rep["command"] = cmd;
    rep["inputs"] = cfg;
    {
        std::ostringstream os;
        os << std::hex << FqField::modulus_table_hash();
        Json ver;
        ver["report_format"] = 1;
        ver["modulus_table_hash"] = os.str();
        rep["version"] = ver;
    }
    rep["values"] = values;
    rep["residuals"] = residuals;
    rep["certificates"] = certificates;
    rep["pass"] = pass;
    Json timings;
    timings["total_seconds"] = seconds_since(t0);
    rep["timings"] = timings;
    return rep;
}

namespace {
void render_node(const Json& j, const std::string& indent, std::ostringstream& os) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (it.value().is_object() || it.value().is_array()) {
                os << indent << it.key() << ":\n";
                render_node(it.value(), indent + "  ", os);
            } else {
                os << indent << it.key() << ": " << it.value().dump() << "\n";
            }
        }
    } else if (j.is_array()) {
        for (const auto& v : j) {
            if (v.is_object() || v.is_array()) {
                os << indent << "-\n";
                render_node(v, indent + "  ", os);
            } else {
                os << indent << "- " << v.dump() << "\n";
            }
        }
    } else {
        os << indent << j.dump() << "\n";
    }
}
} // namespace

std::string render_text(const Json& report) {
    std::ostringstream os;
    render_node(report, "", os);
    return os.str();
}

} // namespace drinfeld
