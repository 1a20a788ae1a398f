// Command-line front end: evaluate library functions, run verification
// suites with seeded sampling, and emit CSV grids.
//
// Exit codes: 0 success, 1 verification failure, 2 evaluation error
// (domain/pole/degenerate), 64 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "ggl/bernoulli.hpp"
#include "ggl/cocycle.hpp"
#include "ggl/errors.hpp"
#include "ggl/family.hpp"
#include "ggl/sampling.hpp"
#include "ggl/special.hpp"
#include "ggl/suites.hpp"

using namespace ggl;
using ojson = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitEvalError = 2;
constexpr int kExitUsage = 64;

// Complex literals: "0.5", "i", "-i", "1+2i", "0.3-0.4i", "2i".
cplx parse_complex(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("empty complex literal");
    size_t ipos = s.find_first_of("ij");
    if (ipos == std::string::npos) return cplx(std::stod(s), 0.0);
    if (ipos != s.size() - 1) throw std::invalid_argument("bad complex literal: " + text);
    s.pop_back();
    // split imaginary tail at the last +/- that is not an exponent sign
    int split = -1;
    for (int k = int(s.size()) - 1; k > 0; --k) {
        char c = s[size_t(k)];
        if ((c == '+' || c == '-') && s[size_t(k) - 1] != 'e' && s[size_t(k) - 1] != 'E') {
            split = k;
            break;
        }
    }
    auto parse_or_unit = [](std::string t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        return std::stod(t);
    };
    if (split < 0) return cplx(0.0, parse_or_unit(s));
    return cplx(std::stod(s.substr(0, size_t(split))),
                parse_or_unit(s.substr(size_t(split))));
}

LatticeVector parse_vec(const std::string& text) {
    LatticeVector v;
    std::stringstream ss(text);
    std::string item;
    for (int i = 0; i < 3; ++i) {
        if (!std::getline(ss, item, ',')) throw std::invalid_argument("need 3 entries: " + text);
        v[i] = std::stoll(item);
    }
    return v;
}

DualVector parse_dual(const std::string& text) {
    LatticeVector v = parse_vec(text);
    return DualVector{v.e};
}

Mat3 parse_mat(const std::string& text) {
    Mat3 m;
    std::stringstream rows(text);
    std::string row;
    for (int i = 0; i < 3; ++i) {
        if (!std::getline(rows, row, ';')) throw std::invalid_argument("need 3 rows: " + text);
        LatticeVector r = parse_vec(row);
        for (int j = 0; j < 3; ++j) m(i, j) = r[j];
    }
    return m;
}

cvec3 parse_x(const std::string& text) {
    cvec3 x;
    std::stringstream ss(text);
    std::string item;
    for (int i = 0; i < 3; ++i) {
        if (!std::getline(ss, item, ',')) throw std::invalid_argument("need 3 entries: " + text);
        x[size_t(i)] = parse_complex(item);
    }
    if (!is_valid_moduli_x(x))
        throw domain_error("x must not be a complex multiple of a real vector");
    return x;
}

std::vector<double> parse_reals(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

ojson j_cplx(cplx z) { return ojson{{"re", z.real()}, {"im", z.imag()}}; }

void emit(const ojson& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream f(out_path);
        f << j.dump(2) << "\n";
    }
}

int fail_eval(const std::string& type, const std::string& msg, long j = -1, long k = -1) {
    ojson e;
    e["schema"] = 1;
    e["error"] = ojson{{"type", type}, {"message", msg}};
    if (j >= 0) e["error"]["indices"] = ojson{j, k};
    std::cout << e.dump(2) << "\n";
    return kExitEvalError;
}

struct EvalArgs {
    std::string function;
    std::string a, b, c, g, mu, g2, mu2, x;
    std::string z, tau, sigma, w;
    int k = 0, n = 1;
    std::string periods;
    std::string out;
};

int run_eval(const EvalArgs& args, const EvalConfig& eval) {
    const std::string& fn = args.function;
    ojson result;
    result["schema"] = 1;
    result["function"] = fn;
    try {
        if (fn == "theta0") {
            auto v = theta0_full(parse_complex(args.z), parse_complex(args.tau), eval);
            result["value"] = j_cplx(v.value);
            result["err"] = v.err_bound;
            if (v.near_zero) result["near_zero"] = true;
        } else if (fn == "gamma") {
            auto v = elliptic_gamma_full(parse_complex(args.z), parse_complex(args.tau),
                                         parse_complex(args.sigma), eval);
            if (v.near_pole)
                return fail_eval("pole", "denominator factor within pole_eps", v.pole_j,
                                 v.pole_k);
            result["value"] = j_cplx(v.value);
            result["err"] = v.err_bound;
            if (v.near_zero) result["near_zero"] = true;
        } else if (fn == "gamma-ab" || fn == "phi-abc" || fn == "h-ab") {
            LatticeVector a = parse_vec(args.a), b = parse_vec(args.b);
            cplx w = parse_complex(args.w);
            cvec3 x = parse_x(args.x);
            if (fn == "gamma-ab") {
                auto v = gamma_ab_full(a, b, w, x, eval);
                if (v.near_pole)
                    return fail_eval("pole", "gamma factor within pole_eps", v.pole_j, v.pole_k);
                result["value"] = j_cplx(v.value);
                result["err"] = v.err_bound;
            } else if (fn == "h-ab") {
                result["value"] = ojson{{"re", h_ab(a, b, w, x, eval.pole_eps)}, {"im", 0.0}};
                result["err"] = 0.0;
            } else {
                auto v = phi_abc(a, b, parse_vec(args.c), w, x, eval);
                if (v.near_pole)
                    return fail_eval("pole", "gamma factor within pole_eps", v.pole_j, v.pole_k);
                result["value"] = j_cplx(v.value);
                result["err"] = v.err_bound;
            }
        } else if (fn == "gamma-ab-cone") {
            auto rep = gamma_ab_cone(parse_vec(args.a), parse_vec(args.b),
                                     parse_complex(args.w), parse_x(args.x), eval);
            result["certified"] = rep.certified();
            result["edge_decay"] = ojson{rep.edge_decay[0], rep.edge_decay[1]};
            result["terms_used"] = rep.terms_used;
            if (rep.certified()) {
                result["value"] = j_cplx(*rep.value);
                result["err"] = rep.err_bound;
            } else {
                result["value"] = nullptr;
            }
        } else if (fn == "delta" || fn == "h-a") {
            LatticeVector a = parse_vec(args.a);
            GroupElement ghat = make_group_element(
                args.g.empty() ? Mat3::identity() : parse_mat(args.g), parse_dual(args.mu));
            cplx w = parse_complex(args.w);
            cvec3 x = parse_x(args.x);
            if (fn == "delta") {
                auto v = delta_full(a, ghat, w, x, eval);
                if (v.near_pole)
                    return fail_eval("pole", "theta zero inside an inverse product", v.pole_j,
                                     v.pole_k);
                result["value"] = j_cplx(v.value);
                result["err"] = v.err_bound;
            } else {
                result["value"] = ojson{{"re", h_a(a, ghat, w, x, eval.pole_eps)}, {"im", 0.0}};
                result["err"] = 0.0;
            }
        } else if (fn == "phi-ab") {
            GroupElement ghat = make_group_element(
                args.g.empty() ? Mat3::identity() : parse_mat(args.g), parse_dual(args.mu));
            auto v = phi_ab(parse_vec(args.a), parse_vec(args.b), ghat, parse_complex(args.w),
                            parse_x(args.x), eval);
            if (v.near_pole) return fail_eval("pole", "pole in a constituent", v.pole_j, v.pole_k);
            result["value"] = j_cplx(v.value);
            result["err"] = v.err_bound;
        } else if (fn == "phi-a") {
            GroupElement ghat = make_group_element(
                args.g.empty() ? Mat3::identity() : parse_mat(args.g), parse_dual(args.mu));
            GroupElement hhat = make_group_element(
                args.g2.empty() ? Mat3::identity() : parse_mat(args.g2), parse_dual(args.mu2));
            auto v = phi_a(parse_vec(args.a), ghat, hhat, parse_complex(args.w),
                           parse_x(args.x), eval);
            if (v.near_pole) return fail_eval("pole", "pole in a constituent", v.pole_j, v.pole_k);
            result["value"] = j_cplx(v.value);
            result["err"] = v.err_bound;
        } else if (fn == "bernoulli") {
            std::vector<double> ts = args.periods.empty() ? std::vector<double>{}
                                                          : parse_reals(args.periods);
            double v = bernoulli_kn(args.k, args.n, std::stod(args.z), ts);
            result["value"] = ojson{{"re", v}, {"im", 0.0}};
            result["err"] = 0.0;
        } else if (fn == "h2" || fn == "h3") {
            std::vector<cplx> taus{parse_complex(args.tau)};
            if (fn == "h3") taus.push_back(parse_complex(args.sigma));
            double v = h_metric(fn == "h2" ? 2 : 3, parse_complex(args.z), taus);
            result["value"] = ojson{{"re", v}, {"im", 0.0}};
            result["err"] = 0.0;
        } else {
            std::cerr << "unknown function: " << fn << "\n";
            return kExitUsage;
        }
    } catch (const pole_error& e) {
        return fail_eval("pole", e.what(), e.index_j, e.index_k);
    } catch (const domain_error& e) {
        return fail_eval("domain", e.what());
    } catch (const degenerate_error& e) {
        return fail_eval("degenerate", e.what());
    } catch (const no_convergence_error& e) {
        return fail_eval("no-convergence", e.what());
    } catch (const std::invalid_argument& e) {
        std::cerr << "argument error: " << e.what() << "\n";
        return kExitUsage;
    }
    emit(result, args.out);
    return kExitOk;
}

// ------------------------------------------------------------------- grid

struct GridAxis {
    std::string param;
    double lo = 0.0, hi = 0.0;
    int n = 0;
};

GridAxis parse_axis(const std::string& text) {
    GridAxis ax;
    std::stringstream ss(text);
    std::string item;
    if (!std::getline(ss, item, ':')) throw std::invalid_argument("axis: " + text);
    ax.param = item;
    if (!std::getline(ss, item, ':')) throw std::invalid_argument("axis: " + text);
    ax.lo = std::stod(item);
    if (!std::getline(ss, item, ':')) throw std::invalid_argument("axis: " + text);
    ax.hi = std::stod(item);
    if (!std::getline(ss, item, ':')) throw std::invalid_argument("axis: " + text);
    ax.n = std::stoi(item);
    return ax;
}

struct GridArgs {
    std::string function;
    std::string xaxis, yaxis;
    EvalArgs fixed;
    std::string out;
};

int run_grid(const GridArgs& args, const EvalConfig& eval) {
    GridAxis ax, ay;
    try {
        ax = parse_axis(args.xaxis);
        ay = parse_axis(args.yaxis);
    } catch (const std::exception& e) {
        std::cerr << "bad axis: " << e.what() << "\n";
        return kExitUsage;
    }
    if (ax.n < 2 || ay.n < 2 || ax.lo >= ax.hi || ay.lo >= ay.hi) {
        std::cerr << "grid axes must have positive area and at least 2 points per side\n";
        return kExitUsage;
    }
    if (args.out.empty()) {
        std::cerr << "grid requires --out\n";
        return kExitUsage;
    }

    // The sweep mutates named real parameters of the eval arguments.
    auto apply = [&](EvalArgs& ea, const std::string& param, double val) -> bool {
        auto setc = [&](std::string& slot, bool re) {
            cplx z = slot.empty() ? cplx(0, 0) : parse_complex(slot);
            z = re ? cplx(val, z.imag()) : cplx(z.real(), val);
            std::ostringstream os;
            os.precision(17);
            os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
            slot = os.str();
        };
        if (param == "z.re") setc(ea.z, true);
        else if (param == "z.im") setc(ea.z, false);
        else if (param == "w.re") setc(ea.w, true);
        else if (param == "w.im") setc(ea.w, false);
        else if (param == "tau.re") setc(ea.tau, true);
        else if (param == "tau.im") setc(ea.tau, false);
        else if (param == "sigma.re") setc(ea.sigma, true);
        else if (param == "sigma.im") setc(ea.sigma, false);
        else return false;
        return true;
    };

    auto value_at = [&](const EvalArgs& ea) -> std::optional<cplx> {
        try {
            if (args.function == "theta0")
                return theta0_full(parse_complex(ea.z), parse_complex(ea.tau), eval).value;
            if (args.function == "gamma") {
                auto v = elliptic_gamma_full(parse_complex(ea.z), parse_complex(ea.tau),
                                             parse_complex(ea.sigma), eval);
                if (v.near_pole) return std::nullopt;
                return v.value;
            }
            if (args.function == "gamma-ab") {
                auto v = gamma_ab_full(parse_vec(ea.a), parse_vec(ea.b), parse_complex(ea.w),
                                       parse_x(ea.x), eval);
                if (v.near_pole) return std::nullopt;
                return v.value;
            }
            if (args.function == "phi-abc") {
                auto v = phi_abc(parse_vec(ea.a), parse_vec(ea.b), parse_vec(ea.c),
                                 parse_complex(ea.w), parse_x(ea.x), eval);
                if (v.near_pole) return std::nullopt;
                return v.value;
            }
            if (args.function == "h-ab")
                return cplx(h_ab(parse_vec(ea.a), parse_vec(ea.b), parse_complex(ea.w),
                                 parse_x(ea.x), eval.pole_eps),
                            0.0);
            throw std::invalid_argument("grid does not support function " + args.function);
        } catch (const std::invalid_argument&) {
            throw;
        } catch (const std::exception&) {
            return std::nullopt;
        }
    };

    // probe parameter names once
    {
        EvalArgs probe = args.fixed;
        if (!apply(probe, ax.param, ax.lo) || !apply(probe, ay.param, ay.lo)) {
            std::cerr << "unknown sweep parameter\n";
            return kExitUsage;
        }
    }

    std::ostringstream mag, phase;
    mag.precision(12);
    phase.precision(12);
    mag << ay.param << "\\" << ax.param;
    phase << ay.param << "\\" << ax.param;
    for (int i = 0; i < ax.n; ++i) {
        double xv = ax.lo + (ax.hi - ax.lo) * i / (ax.n - 1);
        mag << "," << xv;
        phase << "," << xv;
    }
    mag << "\n";
    phase << "\n";
    for (int jr = 0; jr < ay.n; ++jr) {
        double yv = ay.lo + (ay.hi - ay.lo) * jr / (ay.n - 1);
        mag << yv;
        phase << yv;
        for (int i = 0; i < ax.n; ++i) {
            double xv = ax.lo + (ax.hi - ax.lo) * i / (ax.n - 1);
            EvalArgs ea = args.fixed;
            apply(ea, ax.param, xv);
            apply(ea, ay.param, yv);
            std::optional<cplx> v;
            try {
                v = value_at(ea);
            } catch (const std::invalid_argument& e) {
                std::cerr << e.what() << "\n";
                return kExitUsage;
            }
            if (v) {
                mag << "," << std::abs(*v);
                phase << "," << std::arg(*v);
            } else {
                mag << ",";
                phase << ",";
            }
        }
        mag << "\n";
        phase << "\n";
    }

    std::ofstream fm(args.out);
    fm << mag.str();
    std::string phase_path = args.out;
    size_t dot = phase_path.rfind('.');
    phase_path = (dot == std::string::npos) ? phase_path + "_phase"
                                            : phase_path.substr(0, dot) + "_phase" +
                                                  phase_path.substr(dot);
    std::ofstream fp(phase_path);
    fp << phase.str();
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ggl: elliptic gamma family, theta cocycles, and lattice identity verification"};
    app.set_version_flag("--version", std::string("ggl ") + kVersion);
    app.require_subcommand(1);

    EvalConfig eval;
    bool tol_given = false;
    double tol_flag = 0.0;

    app.add_option("--max-terms", eval.max_terms, "product truncation cap");
    app.add_option("--pole-eps", eval.pole_eps, "pole/zero proximity threshold");

    EvalArgs eargs;
    auto* cmd_eval = app.add_subcommand("eval", "evaluate a library function");
    cmd_eval->add_option("--function", eargs.function, "function name")->required();
    cmd_eval->add_option("--a", eargs.a, "lattice vector, e.g. 1,0,0");
    cmd_eval->add_option("--b", eargs.b, "lattice vector");
    cmd_eval->add_option("--c", eargs.c, "lattice vector");
    cmd_eval->add_option("--g", eargs.g, "3x3 integer matrix rows ; separated");
    cmd_eval->add_option("--mu", eargs.mu, "dual vector");
    cmd_eval->add_option("--g2", eargs.g2, "second group element matrix");
    cmd_eval->add_option("--mu2", eargs.mu2, "second group element translation");
    cmd_eval->add_option("--x", eargs.x, "moduli x, three complex entries");
    cmd_eval->add_option("--z", eargs.z, "complex argument");
    cmd_eval->add_option("--tau", eargs.tau, "complex period");
    cmd_eval->add_option("--sigma", eargs.sigma, "complex period");
    cmd_eval->add_option("--w", eargs.w, "complex argument");
    cmd_eval->add_option("--k", eargs.k, "Bernoulli degree");
    cmd_eval->add_option("--n", eargs.n, "Bernoulli level");
    cmd_eval->add_option("--periods", eargs.periods, "real periods, comma separated");
    cmd_eval->add_option("--out", eargs.out, "write JSON to file");
    cmd_eval->add_option("--tol", tol_flag, "truncation tolerance")
        ->each([&](const std::string&) { tol_given = true; });

    SuiteConfig scfg;
    std::string suite_name, verify_out;
    auto* cmd_verify = app.add_subcommand("verify", "run a verification suite");
    cmd_verify->add_option("suite", suite_name, "suite name or 'all'")->required();
    cmd_verify->add_option("--seed", scfg.seed, "sampling seed");
    cmd_verify->add_option("--samples", scfg.samples, "sample count");
    cmd_verify->add_option("--workers", scfg.workers, "worker threads");
    cmd_verify->add_option("--out", verify_out, "write report JSON to file");
    cmd_verify->add_option("--tol", tol_flag, "identity tolerance")
        ->each([&](const std::string&) { tol_given = true; });

    GridArgs gargs;
    auto* cmd_grid = app.add_subcommand("grid", "sweep two real parameters to CSV");
    cmd_grid->add_option("--function", gargs.function, "function name")->required();
    cmd_grid->add_option("--x-axis", gargs.xaxis, "param:lo:hi:n")->required();
    cmd_grid->add_option("--y-axis", gargs.yaxis, "param:lo:hi:n")->required();
    cmd_grid->add_option("--a", gargs.fixed.a, "lattice vector");
    cmd_grid->add_option("--b", gargs.fixed.b, "lattice vector");
    cmd_grid->add_option("--c", gargs.fixed.c, "lattice vector");
    cmd_grid->add_option("--x", gargs.fixed.x, "moduli x");
    cmd_grid->add_option("--z", gargs.fixed.z, "complex argument");
    cmd_grid->add_option("--tau", gargs.fixed.tau, "complex period");
    cmd_grid->add_option("--sigma", gargs.fixed.sigma, "complex period");
    cmd_grid->add_option("--w", gargs.fixed.w, "complex argument");
    cmd_grid->add_option("--out", gargs.out, "CSV output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForVersion")
            return app.exit(e);
        app.exit(e);
        return kExitUsage;
    }

    // GGL_DEFAULT_TOL overrides the default tolerance when --tol is absent.
    if (!tol_given) {
        if (const char* env = std::getenv("GGL_DEFAULT_TOL")) tol_flag = std::atof(env);
    }

    if (cmd_eval->parsed()) {
        if (tol_flag > 0.0) eval.tol = tol_flag;
        return run_eval(eargs, eval);
    }
    if (cmd_verify->parsed()) {
        scfg.eval = eval;
        if (tol_flag > 0.0) scfg.tol = tol_flag;
        try {
            bool all_passed = true;
            ojson out;
            if (suite_name == "all") {
                ojson reports = ojson::array();
                for (const std::string& s : suite_names()) {
                    SuiteResult r = run_suite(s, scfg);
                    all_passed = all_passed && r.passed;
                    reports.push_back(r.report);
                }
                out = ojson{{"schema", 1}, {"version", kVersion}, {"reports", reports}};
            } else {
                SuiteResult r = run_suite(suite_name, scfg);
                all_passed = r.passed;
                out = r.report;
            }
            if (verify_out.empty())
                std::cout << out.dump(2) << "\n";
            else {
                std::ofstream f(verify_out);
                f << out.dump(2) << "\n";
            }
            return all_passed ? kExitOk : kExitVerifyFail;
        } catch (const std::invalid_argument& e) {
            std::cerr << e.what() << "\n";
            return kExitUsage;
        }
    }
    if (cmd_grid->parsed()) {
        if (tol_flag > 0.0) eval.tol = tol_flag;
        return run_grid(gargs, eval);
    }
    return kExitUsage;
}
