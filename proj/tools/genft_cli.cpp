// genft: constants, verification suites, sweeps and JSON reports.
//
// Exit codes: 0 all checks pass, 1 an inequality or identity is violated, 2 usage or domain error,
// 3 numerical non-convergence.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "genft/genft.hpp"

using namespace genft;
using nlohmann::json;

namespace {

enum Exit { ok = 0, violation = 1, usage = 2, nonconvergence = 3 };

/// Flags shared by every subcommand.
struct Common {
    std::string out;
    std::optional<double> tol;
    std::optional<unsigned> threads;
    std::string config;
    bool strict = false;

    void attach(CLI::App* app) {
        app->add_option("--out", out, "Output path (stdout when omitted)");
        app->add_option("--tol", tol, "Tolerance of the subcommand's check")->check(CLI::PositiveNumber);
        app->add_option("--threads", threads, "Worker thread hint (0 = hardware concurrency)");
        app->add_option("--config", config, "key = value configuration file")->check(CLI::ExistingFile);
        app->add_flag("--strict", strict, "Treat errored cases as fatal");
    }

    /// The configuration file first, then the flags.
    RunConfig run_config() const {
        RunConfig cfg = config.empty() ? RunConfig{} : load_config(config);
        if (!out.empty()) cfg.out = out;
        if (threads) cfg.threads = *threads;
        if (strict) cfg.strict = true;
        cfg.validate();
        return cfg;
    }

    double tolerance(const RunConfig& cfg, const char* key) const { return tol ? *tol : cfg.tol(key); }
};

/// Writes to --out when given, otherwise to stdout.
void emit(const std::string& path, const std::function<void(std::ostream&)>& write) {
    if (path.empty()) {
        write(std::cout);
        return;
    }
    std::ofstream os(path);
    if (!os) throw DomainError("cannot open output file: " + path);
    write(os);
}

void emit_json(const std::string& path, const json& j) {
    emit(path, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
}

std::vector<TestFunction> radial_selection(const std::string& f) {
    if (f == "all") return corpus::radial_corpus();
    return {corpus::by_id(f)};
}

std::vector<ParityFunction> line_selection(const std::string& f) {
    if (f == "all") return corpus::line_corpus();
    return {corpus::line_by_id(f)};
}

std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
    if (n < 2) throw DomainError("a grid needs at least 2 points");
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return g;
}

/// Builds a report from records, writes it and maps it to an exit code.
int finish(const std::string& suite, std::vector<CaseRecord> records, const RunConfig& cfg) {
    VerificationReport r;
    r.suite = suite;
    r.cases = std::move(records);
    r.meta = toolchain_meta();
    emit_json(cfg.out, r);
    return report_exit_code(r, cfg.strict);
}

CaseRecord make_record(std::string id, json params, Relation rel, std::string provenance,
                       const std::function<Outcome()>& run) {
    return run_case({std::move(id), 0, std::move(params), rel, std::move(provenance), run});
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"genft: generalized Fourier transforms, sharp constants and verification suites"};
    app.require_subcommand(1);
    std::vector<std::unique_ptr<Common>> commons;
    auto sub = [&](const char* name, const char* help) {
        CLI::App* s = app.add_subcommand(name, help);
        commons.push_back(std::make_unique<Common>());
        commons.back()->attach(s);
        return std::pair{s, commons.back().get()};
    };
    std::function<int()> action;

    // pitt-sharp
    double beta = 0.0, lambda = 0.0, a = 2.0;
    auto [c_sharp, o_sharp] = sub("pitt-sharp", "Print the sharp L2 constant c(beta, lambda, a)");
    c_sharp->add_option("--beta", beta)->required();
    c_sharp->add_option("--lambda", lambda)->required();
    c_sharp->add_option("--a", a)->required();
    c_sharp->callback([&, o = o_sharp] {
        action = [&, o] {
            const RunConfig cfg = o->run_config();
            const double c = sharp_constant(beta, lambda, a);
            emit(cfg.out, [&](std::ostream& os) { os << format_number(c) << '\n'; });
            return int(ok);
        };
    });

    // pitt-verify
    std::string f_pitt = "all";
    double p_exp = 2.0, q_exp = 2.0;
    std::optional<double> gamma;
    auto [c_pv, o_pv] = sub("pitt-verify", "Weighted norm quotients on the radial corpus against the sharp constant");
    c_pv->add_option("--beta", beta)->required();
    c_pv->add_option("--lambda", lambda)->required();
    c_pv->add_option("--a", a)->required();
    c_pv->add_option("--p", p_exp, "Exponent on the function side");
    c_pv->add_option("--q", q_exp, "Exponent on the transform side");
    c_pv->add_option("--gamma", gamma, "Transform-side weight (defaults to the balance value)");
    c_pv->add_option("--f", f_pitt, "Corpus member id or 'all'");
    c_pv->callback([&, o = o_pv] {
        action = [&, o] {
            const RunConfig cfg = o->run_config();
            const double tol = o->tolerance(cfg, "pitt");
            PittParams pp(p_exp, q_exp, beta, 0.0, lambda, a);
            pp.gamma = gamma ? *gamma : beta - (2.0 * lambda + a) * (1.0 / pp.p_prime() - 1.0 / q_exp);
            const AdmissibilityVerdict v = admissible(pp);
            if (!v.admissible) throw DomainError(std::string("inadmissible parameters: ") + to_string(v.failed));
            const bool sharp = p_exp == 2.0 && q_exp == 2.0;
            std::vector<CaseTask> tasks;
            for (const TestFunction& f : radial_selection(f_pitt)) {
                json params{{"f", f.id}, {"p", pp.p}, {"q", pp.q}, {"beta", pp.beta}, {"gamma", pp.gamma},
                            {"lambda", lambda}, {"a", a}};
                tasks.push_back({"pitt/" + f.id, 0, params, Relation::le, sharp ? "closed-form" : "property", [=] {
                                     HankelEngine engine;
                                     const double quotient = pitt_quotient(f, pp, engine);
                                     if (!sharp) return Outcome{std::numeric_limits<double>::infinity(), quotient, 0.0};
                                     const double c = sharp_constant(pp.beta, lambda, a);
                                     return Outcome{c, quotient, tol * c};
                                 }});
            }
            return finish("pitt-verify", run_cases(tasks, cfg.threads), cfg);
        };
    });

    // up-verify
    double k = 0.5;
    std::string f_up = "all";
    auto [c_up, o_up] = sub("up-verify", "Heisenberg and logarithmic uncertainty checks on the line corpus");
    c_up->add_option("--k", k)->required();
    c_up->add_option("--a", a)->required();
    c_up->add_option("--f", f_up, "Line corpus member id or 'all'");
    c_up->callback([&, o = o_up] {
        action = [&, o] {
            const RunConfig cfg = o->run_config();
            const FkaParams params(1, k, a);
            const double h_tol = o->tolerance(cfg, "heisenberg");
            const double l_tol = o->tolerance(cfg, "log_up");
            std::vector<CaseTask> tasks;
            std::vector<ParityFunction> members = line_selection(f_up);
            if (f_up == "all") members.push_back(corpus::line_deformed_gaussian(a, 1.0 / a));
            for (const ParityFunction& f : members) {
                const json jp{{"f", f.id}, {"k", k}, {"a", a}};
                tasks.push_back({"heisenberg/" + f.id, 0, jp, Relation::ge, "property", [=] {
                                     const double n = fka_norm(f, params);
                                     HankelEngine engine;
                                     return Outcome{0.0, heisenberg_defect(f, params, engine), h_tol * n * n};
                                 }});
                tasks.push_back({"log-gap/" + f.id, 0, jp, Relation::ge, "property", [=] {
                                     const double n = fka_norm(f, params);
                                     HankelEngine engine;
                                     return Outcome{0.0, log_up_gap(f, params, engine), l_tol * n * n};
                                 }});
            }
            return finish("up-verify", run_cases(tasks, cfg.threads), cfg);
        };
    });

    // transform
    std::string f_tr = "gauss";
    std::optional<double> k_line;
    double x_max = 10.0;
    std::size_t samples = 101;
    auto [c_tr, o_tr] = sub("transform", "Sample a transform to CSV (radial: rho,value,error_estimate; line: y,re,im)");
    c_tr->add_option("--f", f_tr, "Radial id, or line id when --k is given");
    c_tr->add_option("--lambda", lambda);
    c_tr->add_option("--a", a);
    c_tr->add_option("--k", k_line, "Multiplicity value: selects the transform on the line");
    c_tr->add_option("--max", x_max, "Largest |rho| or |y|")->check(CLI::PositiveNumber);
    c_tr->add_option("--samples", samples)->check(CLI::Range(2, 1000000));
    c_tr->callback([&, o = o_tr] {
        action = [&, o] {
            const RunConfig cfg = o->run_config();
            HankelEngine engine;
            if (k_line) {
                const FkaParams params(1, *k_line, a);
                const auto rows = sample_fka_transform(corpus::line_by_id(f_tr), params,
                                                       linear_grid(-x_max, x_max, samples), engine);
                emit(cfg.out, [&](std::ostream& os) { write_fka_csv(os, rows); });
            } else {
                const auto rows = sample_transform(corpus::by_id(f_tr), MeasureSpec(lambda, a),
                                                   linear_grid(0.0, x_max, samples), engine);
                for (const auto& r : rows)
                    if (!(r.error_estimate <= 1e-8 * std::max(1.0, std::abs(r.value))))
                        throw NumericalError("transform did not converge at rho = " + format_number(r.rho));
                emit(cfg.out, [&](std::ostream& os) { write_transform_csv(os, rows); });
            }
            return int(ok);
        };
    });

    // kernel-sweep
    double t_max = 50.0;
    std::size_t sweep_samples = 5000;
    auto [c_ks, o_ks] = sub("kernel-sweep", "Kernel profile CSV (k,a,t,value); prints max |value| to stderr");
    c_ks->add_option("--k", k)->required();
    c_ks->add_option("--a", a)->required();
    c_ks->add_option("--t-max", t_max)->check(CLI::PositiveNumber);
    c_ks->add_option("--samples", sweep_samples)->check(CLI::Range(2, 100000000));
    c_ks->callback([&, o = o_ks] {
        action = [&, o] {
            const RunConfig cfg = o->run_config();
            const auto rows = kernel_profile(KernelParams(k, a), t_max, sweep_samples);
            double peak = 0.0;
            for (const auto& r : rows) peak = std::max(peak, std::abs(r.value));
            emit(cfg.out, [&](std::ostream& os) { write_kernel_csv(os, rows); });
            std::fprintf(stderr, "max |value| = %s\n", format_number(peak).c_str());
            return int(ok);
        };
    });

    // find-k0
    auto [c_k0, o_k0] = sub("find-k0", "Threshold multiplicity where the first minimum of the a = 1 kernel is -1");
    c_k0->callback([&, o = o_k0] {
        action = [&, o] {
            const RunConfig cfg = o->run_config();
            const double tol = o->tol ? *o->tol : 1e-6;
            const double k0 = find_k0(tol);
            const FirstMinimum m = first_minimum(k0);
            emit(cfg.out, [&](std::ostream& os) {
                os << "k0 = " << format_number(k0) << "\nresidual = " << format_number(std::abs(m.value + 1.0))
                   << "\nt_min = " << format_number(m.t) << '\n';
            });
            return int(ok);
        };
    });

    // conjecture-scan
    double z_max = 100.0;
    auto [c_cs, o_cs] = sub("conjecture-scan", "Kernel sup over a (k, a) grid; CSV k,a,condition,sup,argmax,flags");
    c_cs->add_option("--z-max", z_max)->check(CLI::PositiveNumber);
    c_cs->callback([&, o = o_cs] {
        action = [&, o] {
            const RunConfig cfg = o->run_config();
            const double tol = o->tolerance(cfg, "conjecture");
            const auto points = conjecture_scan(default_conjecture_grid(), z_max, 20000, cfg.threads);
            bool counterexample = false;
            emit(cfg.out, [&](std::ostream& os) {
                os << "k,a,condition,sup,argmax,bounded,experimental,only_sufficient_witness,counterexample\n";
                for (const auto& p : points) {
                    os << format_number(p.k) << ',' << format_number(p.a) << ',' << p.condition << ','
                       << format_number(p.sup) << ',' << format_number(p.argmax) << ',' << p.bounded << ','
                       << p.experimental << ',' << p.only_sufficient_witness << ',' << p.counterexample << '\n';
                    if (!p.experimental && p.condition && p.sup > 1.0 + tol) counterexample = true;
                }
            });
            return counterexample ? int(violation) : int(ok);
        };
    });

    // gm-check
    std::string f_gm = "exp";
    double c_gm = 2.0, p_gm = 2.0;
    bool two_sided = true;
    auto [c_gmc, o_gmc] = sub("gm-check", "General monotone witness, integral condition and two-sided ratios (JSON)");
    c_gmc->add_option("--f", f_gm, "Radial id, e.g. exp, sech, pow(3), oscexp");
    c_gmc->add_option("--c", c_gm, "Witness dilation c > 1");
    c_gmc->add_option("--p", p_gm);
    c_gmc->add_option("--beta", beta);
    c_gmc->add_option("--lambda", lambda);
    c_gmc->add_option("--a", a);
    c_gmc->add_flag("!--no-two-sided", two_sided,
                    "Skip the transform-side ratios (slow for rapidly oscillating inputs such as oscexp)");
    c_gmc->callback([&, o = o_gmc] {
        action = [&, o] {
            const RunConfig cfg = o->run_config();
            const TestFunction f = corpus::by_id(f_gm);
            const double d_tol = o->tolerance(cfg, "dilation");
            const json base{{"f", f.id}, {"p", p_gm}, {"beta", beta}, {"lambda", lambda}, {"a", a}};
            std::vector<CaseRecord> records;
            const GMWitness w = gm_witness_search(f, c_gm);
            records.push_back(make_record("witness", {{"f", f.id}, {"c", c_gm}, {"C", w.C}, {"monotone_bound", 1.0 / std::log(c_gm)}},
                                          Relation::le, "property", [&] {
                                              return Outcome{0.0, gm_defect(f, w), 1e-9 * std::max(1.0, w.C)};
                                          }));
            records.push_back(make_record("integral-condition", base, Relation::holds, "property", [&] {
                return Outcome{1.0, integral_condition(f, lambda, a).finite ? 1.0 : 0.0, 0.0};
            }));
            if (two_sided)
                records.push_back(make_record("dilation", base, Relation::le, "property", [&] {
                    const BoasSagherResult r = boas_sagher_check(f, p_gm, beta, lambda, a);
                    if (!r.converged) throw NumericalError("two-sided ratios did not converge");
                    return Outcome{0.0, r.dilation_spread, d_tol};
                }));
            records.push_back(make_record("chain", base, Relation::le, "property", [&] {
                return Outcome{0.0, remark_bound_check(f, p_gm, beta, lambda, a), 0.0};
            }));
            return finish("gm-check", std::move(records), cfg);
        };
    });

    // basis-check
    int n_max = 1, s_max = 5;
    auto [c_bc, o_bc] = sub("basis-check", "Eigenfunction defects as a JSON table (n, s, phase, defect) and the Gram defect");
    c_bc->add_option("--k", k)->required();
    c_bc->add_option("--a", a)->required();
    c_bc->add_option("--n-max", n_max)->check(CLI::Range(0, 1));
    c_bc->add_option("--s-max", s_max)->check(CLI::Range(0, 40));
    c_bc->callback([&, o = o_bc] {
        action = [&, o] {
            const RunConfig cfg = o->run_config();
            const double tol = o->tolerance(cfg, "eigen");
            const FkaParams params(1, k, a);
            std::vector<BasisIndex> indices;
            for (int n = 0; n <= n_max; ++n)
                for (int s = 0; s <= s_max; ++s) indices.emplace_back(n, s);
            const auto defects = parallel_map(indices, [&](const BasisIndex& idx) {
                HankelEngine engine;
                return eigen_defect(idx, params, engine);
            }, cfg.threads);
            json table = json::array();
            bool pass = true;
            for (std::size_t i = 0; i < indices.size(); ++i) {
                const auto phase = basis_eigenvalue(indices[i], params);
                table.push_back({{"n", indices[i].n},
                                 {"s", indices[i].s},
                                 {"phase", {{"re", phase.real() + 0.0}, {"im", phase.imag() + 0.0}}},
                                 {"defect", defects[i]}});
                pass = pass && defects[i] <= tol;
            }
            const double gram = gram_defect(n_max, s_max, params, cfg.threads);
            pass = pass && gram <= cfg.tol("gram");
            emit_json(cfg.out, {{"k", k}, {"a", a}, {"table", table}, {"gram_defect", gram}, {"tolerance", tol}});
            return pass ? int(ok) : int(violation);
        };
    });

    // report
    auto [c_rep, o_rep] = sub("report", "Run the full acceptance suite and write one JSON report");
    c_rep->callback([&, o = o_rep] {
        action = [&, o] {
            RunConfig cfg = o->run_config();
            if (o->tol) throw DomainError("report takes per-check tolerances from --config (tol.<name> = value)");
            const VerificationReport r = run_acceptance(cfg, [](int c, const std::vector<CaseRecord>& records) {
                std::size_t passed = 0;
                for (const CaseRecord& rec : records) passed += rec.pass ? 1 : 0;
                std::fprintf(stderr, "AC%d %s (%zu/%zu)\n", c, criterion_title(c), passed, records.size());
            });
            emit_json(cfg.out, r);
            return report_exit_code(r, cfg.strict);
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help();
        return usage;
    }
    try {
        return action();
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return nonconvergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    }
}
