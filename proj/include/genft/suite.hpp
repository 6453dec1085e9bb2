#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "genft/config.hpp"
#include "genft/corpus.hpp"
#include "genft/fka1d.hpp"
#include "genft/gmclass.hpp"
#include "genft/kernel1d.hpp"
#include "genft/parallel.hpp"
#include "genft/pitt.hpp"
#include "genft/report.hpp"
#include "genft/transform.hpp"
#include "genft/uncertainty.hpp"

namespace genft {

inline constexpr int acceptance_criteria = 8;

inline const char* criterion_title(int c) {
    switch (c) {
        case 1: return "sharp-constant algebra";
        case 2: return "kernel numbers";
        case 3: return "unitarity";
        case 4: return "weighted norm inequality";
        case 5: return "uncertainty principles";
        case 6: return "eigensystem";
        case 7: return "general monotone suite";
        case 8: return "conjecture scan";
    }
    return "?";
}

struct Outcome {
    double expected = 0.0;
    double actual = 0.0;
    double tolerance = 0.0;
};

struct CaseTask {
    std::string id;
    int criterion = 0;
    nlohmann::json params;
    Relation relation = Relation::le;
    std::string provenance;
    std::function<Outcome()> run;
};

/// Runs one task; exceptions become error records instead of propagating.
inline CaseRecord run_case(const CaseTask& task) {
    CaseRecord rec;
    rec.id = task.id;
    rec.criterion = task.criterion;
    rec.params = task.params;
    rec.relation = task.relation;
    rec.provenance = task.provenance;
    try {
        const Outcome o = task.run();
        rec.expected = o.expected;
        rec.actual = o.actual;
        rec.tolerance = o.tolerance;
        rec.pass = compare(task.relation, o.expected, o.actual, o.tolerance);
    } catch (...) {
        std::string message;
        rec.error_kind = classify_current_exception(message);
        rec.error = message;
        rec.pass = false;
    }
    return rec;
}

/// Results are in task order regardless of completion order.
inline std::vector<CaseRecord> run_cases(const std::vector<CaseTask>& tasks, unsigned threads) {
    return parallel_map(tasks, [](const CaseTask& t) { return run_case(t); }, threads);
}

namespace suite {

inline std::string fmt(double x) { return format_number(x); }

inline std::string triple_id(double beta, double lambda, double a) {
    return "b=" + fmt(beta) + ",l=" + fmt(lambda) + ",a=" + fmt(a);
}

inline nlohmann::json triple_params(double beta, double lambda, double a) {
    return {{"beta", beta}, {"lambda", lambda}, {"a", a}};
}

inline std::vector<TestFunction> selected_corpus(const RunConfig& cfg) {
    const auto all = corpus::radial_corpus();
    if (cfg.corpus.empty()) return all;
    std::vector<TestFunction> out;
    for (const std::string& id : cfg.corpus) {
        bool found = false;
        for (const TestFunction& f : all)
            if (f.id == id) {
                out.push_back(f);
                found = true;
            }
        if (!found) throw DomainError("unknown corpus member: " + id);
    }
    return out;
}

/// 50 points (beta, lambda, a) with 0 < beta < lambda + a/2.
inline std::vector<ParamTriple> default_pitt_grid() {
    std::vector<ParamTriple> grid;
    for (double a : {0.5, 1.0, 1.5, 2.0, 3.0})
        for (double lambda : {0.0, 1.0})
            for (double frac : {0.1, 0.3, 0.5, 0.7, 0.9}) grid.push_back({frac * (lambda + 0.5 * a), lambda, a});
    return grid;
}

inline std::vector<ParamTriple> default_probe_points() {
    return {{0.5, 1.0, 2.0}, {0.25, 0.0, 2.0}, {1.0, 2.0, 2.0}, {0.5, 1.0, 3.0}, {0.3, 0.5, 1.0}};
}

inline nlohmann::json fka_params_json(const FkaParams& p) { return {{"d", p.d}, {"k", p.k}, {"a", p.a}}; }

inline std::string fka_id(const FkaParams& p) { return "k=" + fmt(p.k) + ",a=" + fmt(p.a); }

inline std::vector<CaseTask> criterion1(const RunConfig& cfg) {
    std::vector<CaseTask> tasks;
    const double tol = cfg.tol("scaling");
    for (double a : {0.5, 1.0, 2.0, 3.0, 5.0})
        for (double lambda : {0.0, 0.4, 1.5, 3.0})
            for (double frac : {0.05, 0.25, 0.5, 0.75, 0.95}) {
                const double beta = frac * (lambda + 0.5 * a);
                tasks.push_back({"c1/scaling/" + triple_id(beta, lambda, a), 1, triple_params(beta, lambda, a),
                                 Relation::le, "closed-form", [=] {
                                     return Outcome{0.0, scaling_identity_defect(beta, lambda, a), tol};
                                 }});
            }
    for (double a : {0.5, 1.0, 2.0, 3.0})
        for (double lambda : {-0.2, 0.0, 0.5, 2.0, 7.5}) {
            if (!(2.0 * lambda + a > 0.0)) continue;
            tasks.push_back({"c1/unit-at-zero/" + triple_id(0.0, lambda, a), 1, triple_params(0.0, lambda, a),
                             Relation::holds, "closed-form",
                             [=] { return Outcome{1.0, sharp_constant(0.0, lambda, a), 0.0}; }});
        }
    for (double a : {1.0, 2.0})
        for (double beta : {0.1, 0.5}) {
            tasks.push_back({"c1/decreasing-in-lambda/b=" + fmt(beta) + ",a=" + fmt(a), 1, {{"beta", beta}, {"a", a}},
                             Relation::holds, "property", [=] {
                                 // 20-point lambda grid from 0.05 (strictly inside the range for every beta here); counts pairs (i < j) violating c(lambda_i) > c(lambda_j).
                                 std::vector<double> c;
                                 for (int i = 0; i < 20; ++i) c.push_back(sharp_constant(beta, 0.05 + 0.25 * i, a));
                                 double violations = 0;
                                 for (int i = 0; i < 20; ++i)
                                     for (int j = i + 1; j < 20; ++j)
                                         if (!(c[i] > c[j])) ++violations;
                                 return Outcome{0.0, violations, 0.0};
                             }});
        }
    return tasks;
}

inline std::vector<CaseTask> criterion2(const RunConfig& cfg) {
    std::vector<CaseTask> tasks;
    tasks.push_back({"c2/sup-quarter", 2, {{"k", 0.25}, {"a", 1.0}}, Relation::near, "reference-value",
                     [tol = cfg.tol("kernel_sup")] { return Outcome{2.13, kernel_sup(0.25).sup, tol}; }});
    tasks.push_back({"c2/k0", 2, {{"tol", 1e-6}}, Relation::near, "reference-value",
                     [tol = cfg.tol("k0")] { return Outcome{0.44, find_k0(1e-6), tol}; }});
    tasks.push_back({"c2/k0-residual", 2, {{"tol", 1e-6}}, Relation::le, "closed-form", [tol = cfg.tol("k0_residual")] {
                         return Outcome{0.0, std::abs(first_minimum(find_k0(1e-6)).value + 1.0), tol};
                     }});
    for (double k : {0.5, 0.7, 1.0, 2.0})
        tasks.push_back({"c2/bounded/k=" + fmt(k), 2, {{"k", k}, {"a", 1.0}}, Relation::le, "property",
                         [k, tol = cfg.tol("kernel_bound")] { return Outcome{1.0, kernel_sup(k).sup, tol}; }});
    tasks.push_back({"c2/growth/k=0.1", 2, {{"k", 0.1}}, Relation::near, "reference-value",
                     [tol = cfg.tol("growth")] { return Outcome{0.30, growth_exponent_fit(0.1).exponent, tol}; }});
    return tasks;
}

inline std::vector<CaseTask> criterion3(const RunConfig& cfg) {
    std::vector<CaseTask> tasks;
    const auto members = selected_corpus(cfg);
    const double pl_tol = cfg.tol("plancherel");
    const double inv_tol = cfg.tol("involution");
    for (auto [lambda, a] : {std::pair{0.0, 2.0}, std::pair{1.0, 2.0}, std::pair{0.5, 1.0}, std::pair{0.25, 0.5}})
        for (const TestFunction& f : members) {
            const nlohmann::json params{{"f", f.id}, {"lambda", lambda}, {"a", a}};
            const std::string tag = f.id + "/l=" + fmt(lambda) + ",a=" + fmt(a);
            tasks.push_back({"c3/plancherel/" + tag, 3, params, Relation::le, "property", [=] {
                                 const MeasureSpec m(lambda, a);
                                 HankelEngine engine;
                                 const double n = weighted_norm(f, 2.0, 0.0, m);
                                 return Outcome{0.0, plancherel_defect(f, m, engine), pl_tol * n};
                             }});
            tasks.push_back({"c3/involution/" + tag, 3, params, Relation::le, "property", [=] {
                                 HankelEngine engine;
                                 return Outcome{0.0, involution_defect(f, MeasureSpec(lambda, a), engine), inv_tol};
                             }});
        }
    const double rt_tol = cfg.tol("inversion");
    for (const FkaParams& p : {FkaParams(1, 0.0, 2.0), FkaParams(1, 0.5, 1.0)})
        for (const ParityFunction& f : corpus::line_corpus()) {
            nlohmann::json params = fka_params_json(p);
            params["f"] = f.id;
            const std::string tag = f.id + "/" + fka_id(p);
            tasks.push_back({"c3/fka-plancherel/" + tag, 3, params, Relation::le, "property", [=] {
                                 HankelEngine engine;
                                 return Outcome{0.0, fka_plancherel_defect(f, p, engine), pl_tol * fka_norm(f, p)};
                             }});
            tasks.push_back({"c3/inversion/" + tag, 3, params, Relation::le, "property", [=] {
                                 HankelEngine engine;
                                 return Outcome{0.0, inversion_roundtrip(f, p, engine), rt_tol};
                             }});
        }
    return tasks;
}

inline std::vector<CaseTask> criterion4(const RunConfig& cfg) {
    std::vector<CaseTask> tasks;
    const auto members = selected_corpus(cfg);
    const double tol = cfg.tol("pitt");
    for (const ParamTriple& g : cfg.pitt_grid.empty() ? default_pitt_grid() : cfg.pitt_grid) {
        const auto [beta, lambda, a] = g;
        for (const TestFunction& f : members) {
            nlohmann::json params = triple_params(beta, lambda, a);
            params["f"] = f.id;
            tasks.push_back({"c4/quotient/" + f.id + "/" + triple_id(beta, lambda, a), 4, params, Relation::le,
                             "closed-form", [=] {
                                 const double c = sharp_constant(beta, lambda, a);
                                 HankelEngine engine;
                                 return Outcome{c, pitt_quotient(f, PittParams::l2(beta, lambda, a), engine), tol * c};
                             }});
        }
    }
    const double fraction = cfg.tol("probe");
    const double eps = cfg.probe_eps;
    for (const ParamTriple& g : cfg.probe_points.empty() ? default_probe_points() : cfg.probe_points) {
        const auto [beta, lambda, a] = g;
        nlohmann::json params = triple_params(beta, lambda, a);
        params["eps"] = eps;
        tasks.push_back({"c4/probe/" + triple_id(beta, lambda, a), 4, params, Relation::ge, "closed-form", [=] {
                             return Outcome{fraction * sharp_constant(beta, lambda, a),
                                            sharpness_probe(beta, lambda, a, eps), 0.0};
                         }});
    }
    for (const FkaParams& p : {FkaParams(1, 0.0, 2.0), FkaParams(1, 0.5, 1.0)})
        for (const ParityFunction& f : corpus::line_corpus()) {
            nlohmann::json params = fka_params_json(p);
            params["f"] = f.id;
            params["beta"] = 0.3;
            tasks.push_back({"c4/line/" + f.id + "/" + fka_id(p), 4, params, Relation::le, "closed-form", [=] {
                                 HankelEngine engine;
                                 const FkaPittChain c = fka_pitt_chain(f, p, 0.3, engine);
                                 if (!c.converged) throw NumericalError("line inequality chain did not converge");
                                 return Outcome{c.overall_bound, c.direct, tol * c.overall_bound};
                             }});
        }
    return tasks;
}

inline std::vector<CaseTask> criterion5(const RunConfig& cfg) {
    std::vector<CaseTask> tasks;
    const double h_tol = cfg.tol("heisenberg");
    for (const FkaParams& p : {FkaParams(1, 0.5, 1.0), FkaParams(1, 1.0, 2.0)})
        for (double c : {1.0 / p.a, 2.0}) {
            nlohmann::json params = fka_params_json(p);
            params["c"] = c;
            tasks.push_back({"c5/heisenberg-equality/" + fka_id(p) + ",c=" + fmt(c), 5, params, Relation::near,
                             "closed-form", [=] {
                                 const ParityFunction f = corpus::line_deformed_gaussian(p.a, c);
                                 const double n = fka_norm(f, p);
                                 HankelEngine engine;
                                 return Outcome{0.0, heisenberg_defect(f, p, engine), h_tol * n * n};
                             }});
        }
    const double up_tol = cfg.tol("log_up");
    for (const FkaParams& p :
         {FkaParams(1, 0.0, 2.0), FkaParams(1, 0.5, 1.0), FkaParams(1, 1.0, 2.0), FkaParams(1, 0.5, 2.0 / 3.0)})
        for (const ParityFunction& f : corpus::line_corpus()) {
            nlohmann::json params = fka_params_json(p);
            params["f"] = f.id;
            tasks.push_back({"c5/log-gap/" + f.id + "/" + fka_id(p), 5, params, Relation::ge, "property", [=] {
                                 const double n = fka_norm(f, p);
                                 HankelEngine engine;
                                 return Outcome{0.0, log_up_gap(f, p, engine), up_tol * n * n};
                             }});
        }
    const double link_tol = cfg.tol("derivative_link");
    for (double lambda : {0.0, 0.5, 1.0, 2.5})
        for (double a : {0.5, 1.0, 2.0, 3.0})
            tasks.push_back({"c5/derivative-link/l=" + fmt(lambda) + ",a=" + fmt(a), 5, {{"lambda", lambda}, {"a", a}},
                             Relation::le, "closed-form",
                             [=] { return Outcome{0.0, derivative_link_defect(lambda, a), link_tol}; }});
    return tasks;
}

inline std::vector<FkaParams> eigen_params() {
    return {FkaParams(1, 0.0, 2.0), FkaParams(1, 0.5, 1.0), FkaParams(1, 1.0, 2.0), FkaParams(1, 0.5, 2.0 / 3.0)};
}

inline std::vector<CaseTask> criterion6(const RunConfig& cfg) {
    std::vector<CaseTask> tasks;
    const double e_tol = cfg.tol("eigen");
    const double g_tol = cfg.tol("gram");
    for (const FkaParams& p : eigen_params()) {
        for (int n : {0, 1})
            for (int s = 0; s <= 5; ++s) {
                nlohmann::json params = fka_params_json(p);
                params["n"] = n;
                params["s"] = s;
                tasks.push_back({"c6/eigen/" + fka_id(p) + ",n=" + std::to_string(n) + ",s=" + std::to_string(s), 6,
                                 params, Relation::le, "closed-form", [=] {
                                     HankelEngine engine;
                                     return Outcome{0.0, eigen_defect(BasisIndex(n, s), p, engine), e_tol};
                                 }});
            }
        nlohmann::json params = fka_params_json(p);
        params["n_max"] = 1;
        params["s_max"] = 5;
        tasks.push_back({"c6/gram/" + fka_id(p), 6, params, Relation::le, "closed-form",
                         [=] { return Outcome{0.0, gram_defect(1, 5, p, 1), g_tol}; }});
    }
    return tasks;
}

struct BoasSagherCase {
    std::string f;
    double p, beta, lambda, a;
};

inline std::vector<CaseTask> criterion7(const RunConfig& cfg) {
    std::vector<CaseTask> tasks;
    const double w_tol = cfg.tol("gm_witness");
    for (const TestFunction& f : corpus::monotone_corpus())
        for (double c : {2.0, std::exp(1.0), 4.0})
            tasks.push_back({"c7/witness/" + f.id + ",c=" + fmt(c), 7, {{"f", f.id}, {"c", c}}, Relation::le,
                             "closed-form",
                             [=] { return Outcome{1.0 / std::log(c), gm_witness_search(f, c).C, w_tol}; }});
    const double d_tol = cfg.tol("dilation");
    const double p_tol = cfg.tol("pitt");
    const std::vector<BoasSagherCase> cases = {{"exp", 2.0, 0.0, 0.0, 2.0},  {"exp", 2.0, 0.5, 0.0, 2.0},
                                               {"exp", 2.0, -0.3, 0.0, 2.0}, {"pow(3)", 2.0, 0.2, 0.0, 2.0},
                                               {"sech", 2.0, 0.4, 0.5, 1.0}, {"exp", 3.0, 0.5, 0.0, 2.0}};
    auto lookup = [](const std::string& id) {
        if (id == "pow(3)") return corpus::power_decay(3.0);
        for (const TestFunction& f : corpus::monotone_corpus())
            if (f.id == id) return f;
        throw DomainError("unknown monotone corpus member: " + id);
    };
    for (const BoasSagherCase& k : cases) {
        nlohmann::json params = triple_params(k.beta, k.lambda, k.a);
        params["f"] = k.f;
        params["p"] = k.p;
        const std::string tag = k.f + "/p=" + fmt(k.p) + "," + triple_id(k.beta, k.lambda, k.a);
        const TestFunction f = lookup(k.f);
        tasks.push_back({"c7/dilation/" + tag, 7, params, Relation::le, "property", [=] {
                             const BoasSagherResult r = boas_sagher_check(f, k.p, k.beta, k.lambda, k.a);
                             if (!r.converged) throw NumericalError("two-sided ratios did not converge");
                             return Outcome{0.0, r.dilation_spread, d_tol};
                         }});
        if (k.p == 2.0 && k.beta >= 0.0 && k.beta < k.lambda + 0.5 * k.a)
            tasks.push_back({"c7/bounded/" + tag, 7, params, Relation::le, "closed-form", [=] {
                                 const BoasSagherResult r = boas_sagher_check(f, k.p, k.beta, k.lambda, k.a);
                                 return Outcome{r.sharp_bound, r.upper, p_tol * r.sharp_bound};
                             }});
    }
    tasks.push_back({"c7/critical-divergent/pow(0.5),l=0,a=2", 7, {{"f", "pow(0.5)"}, {"lambda", 0.0}, {"a", 2.0}},
                     Relation::holds, "closed-form", [] {
                         TestFunction f = corpus::power_decay(0.5);
                         const bool analytic = integral_condition(f, 0.0, 2.0).finite;
                         f.decay = Decay::unknown();
                         const bool numeric = integral_condition(f, 0.0, 2.0).finite;
                         return Outcome{0.0, (analytic || numeric) ? 1.0 : 0.0, 0.0};
                     }});
    return tasks;
}

inline std::vector<CaseTask> criterion8(const RunConfig& cfg) {
    std::vector<CaseTask> tasks;
    const double tol = cfg.tol("conjecture");
    for (const KernelParams& kp : default_conjecture_grid()) {
        if (!(kp.a == 1.0 || kp.a == 2.0)) continue;
        if (!(2.0 * kp.k + 1.0 + kp.a >= 3.0)) continue;
        tasks.push_back({"c8/bounded/k=" + fmt(kp.k) + ",a=" + fmt(kp.a), 8, {{"k", kp.k}, {"a", kp.a}}, Relation::le,
                         "property", [=] { return Outcome{1.0, conjecture_point(kp).sup, tol}; }});
    }
    tasks.push_back({"c8/only-sufficient/k=0.44,a=1", 8, {{"k", 0.44}, {"a", 1.0}}, Relation::holds, "property", [] {
                         const ConjecturePoint p = conjecture_point(KernelParams(0.44, 1.0));
                         return Outcome{1.0, (!p.condition && p.only_sufficient_witness) ? 1.0 : 0.0, 0.0};
                     }});
    return tasks;
}

}  // namespace suite

inline std::vector<CaseTask> acceptance_tasks(int criterion, const RunConfig& cfg) {
    switch (criterion) {
        case 1: return suite::criterion1(cfg);
        case 2: return suite::criterion2(cfg);
        case 3: return suite::criterion3(cfg);
        case 4: return suite::criterion4(cfg);
        case 5: return suite::criterion5(cfg);
        case 6: return suite::criterion6(cfg);
        case 7: return suite::criterion7(cfg);
        case 8: return suite::criterion8(cfg);
    }
    throw DomainError("no such criterion: " + std::to_string(criterion));
}

/// Runs criteria 1..8 in order. With `strict`, stops after the first criterion containing an errored case.
/// `progress` is called after each criterion with its records.
inline VerificationReport run_acceptance(
    const RunConfig& cfg, const std::function<void(int, const std::vector<CaseRecord>&)>& progress = {}) {
    cfg.validate();
    VerificationReport report;
    report.suite = "acceptance";
    report.meta = toolchain_meta();
    for (int c = 1; c <= acceptance_criteria; ++c) {
        const std::vector<CaseRecord> records = run_cases(acceptance_tasks(c, cfg), cfg.threads);
        report.cases.insert(report.cases.end(), records.begin(), records.end());
        if (progress) progress(c, records);
        if (cfg.strict && std::any_of(records.begin(), records.end(), [](const CaseRecord& r) { return r.errored(); }))
            break;
    }
    return report;
}

/// 0 all pass, 1 a check failed, 2 usage/domain error, 3 numerical non-convergence. Without `strict`, errored
/// cases other than non-convergence are recorded but do not change the code.
inline int report_exit_code(const VerificationReport& r, bool strict) {
    if (strict)
        for (const CaseRecord& c : r.cases)
            if (c.errored())
                return c.error_kind == ErrorKind::numerical ? 3 : 2;
    bool numerical = false;
    for (const CaseRecord& c : r.cases) {
        if (!c.errored() && !c.pass) return 1;
        if (c.error_kind == ErrorKind::numerical) numerical = true;
    }
    return numerical ? 3 : 0;
}

}  // namespace genft
