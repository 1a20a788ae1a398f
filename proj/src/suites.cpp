#include "ggl/suites.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <future>
#include <stdexcept>

#include "ggl/bernoulli.hpp"
#include "ggl/cocycle.hpp"
#include "ggl/errors.hpp"
#include "ggl/rational.hpp"
#include "ggl/rng.hpp"
#include "ggl/sampling.hpp"

namespace ggl {

namespace {

using ojson = nlohmann::ordered_json;

constexpr double kNoValue = -1.0;  // residual placeholder for skipped records

ojson j_cplx(cplx z) { return ojson{{"re", z.real()}, {"im", z.imag()}}; }

ojson j_vec(const LatticeVector& v) { return ojson{v[0], v[1], v[2]}; }
ojson j_dual(const DualVector& v) { return ojson{v[0], v[1], v[2]}; }

ojson j_x(const cvec3& x) {
    ojson a = ojson::array();
    for (const auto& xi : x) a.push_back(j_cplx(xi));
    return a;
}

ojson j_group(const GroupElement& g) {
    ojson m = ojson::array();
    for (int i = 0; i < 3; ++i) m.push_back(ojson{g.g(i, 0), g.g(i, 1), g.g(i, 2)});
    return ojson{{"g", m}, {"mu", j_dual(g.mu)}};
}

double rel_err(cplx got, cplx want) {
    double scale = std::max(std::abs(want), 1e-30);
    return std::abs(got - want) / scale;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

struct Record {
    ojson inputs;
    double residual = kNoValue;
    double err_bound = 0.0;
    bool skipped = true;
    ojson extra;  // suite-specific fields merged into the record
};

// Fan samples out across workers; record i is a pure function of
// (seed, suite, i), so schedules cannot change the output.
std::vector<Record> run_indexed(int n, int workers, const std::function<Record(int)>& body) {
    std::vector<Record> out;
    out.resize(size_t(n));
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) out[size_t(i)] = body(i);
        return out;
    }
    std::vector<std::future<void>> futs;
    futs.reserve(size_t(workers));
    std::atomic<int> next{0};
    for (int t = 0; t < workers; ++t)
        futs.push_back(std::async(std::launch::async, [&]() {
            for (;;) {
                int i = next.fetch_add(1);
                if (i >= n) return;
                out[size_t(i)] = body(i);
            }
        }));
    for (auto& f : futs) f.get();
    return out;
}

CounterRng rng_for(const SuiteConfig& cfg, const std::string& suite, int index) {
    // hash suite and index together so per-record draw sequences are
    // unrelated (an arithmetic progression of streams would overlap)
    return CounterRng(cfg.seed, splitmix64(fnv1a(suite) +
                                           0x9E3779B97F4A7C15ULL * std::uint64_t(index + 1)));
}

SuiteResult assemble(const std::string& name, const SuiteConfig& cfg, double default_tol,
                     std::vector<Record> records, ojson extras = ojson::object()) {
    double tol = cfg.tol > 0.0 ? cfg.tol : default_tol;
    ojson recs = ojson::array();
    int passed = 0, failed = 0, skipped = 0, above_bound = 0;
    double max_resid = 0.0;
    for (size_t i = 0; i < records.size(); ++i) {
        Record& r = records[i];
        ojson rec;
        rec["index"] = int(i);
        rec["inputs"] = r.inputs;
        if (r.skipped) {
            rec["skipped"] = true;
            ++skipped;
        } else {
            bool pass = r.residual < tol;
            rec["residual"] = r.residual;
            rec["error_bound"] = r.err_bound;
            rec["pass"] = pass;
            pass ? ++passed : ++failed;
            max_resid = std::max(max_resid, r.residual);
            if (r.residual > std::max(r.err_bound, 1e-12)) ++above_bound;
        }
        for (auto& [k, v] : r.extra.items()) rec[k] = v;
        recs.push_back(std::move(rec));
    }
    int counted = passed + failed;
    ojson rep;
    rep["schema"] = 1;
    rep["suite"] = name;
    rep["version"] = kVersion;
    rep["seed"] = cfg.seed;
    rep["samples"] = cfg.samples;
    rep["tol"] = tol;
    rep["config"] = ojson{{"eval_tol", cfg.eval.tol},
                          {"max_terms", cfg.eval.max_terms},
                          {"pole_eps", cfg.eval.pole_eps}};
    rep["records"] = std::move(recs);
    ojson summary;
    summary["count"] = counted;
    summary["passed"] = passed;
    summary["failed"] = failed;
    summary["skipped"] = skipped;
    summary["max_residual"] = max_resid;
    summary["residual_above_bound"] = above_bound;
    // identities are exact; residuals beyond the propagated truncation
    // bound in more than 1% of samples indicate a tolerance problem
    summary["bound_flag"] = counted > 0 && above_bound * 100 > counted;
    rep["summary"] = std::move(summary);
    for (auto& [k, v] : extras.items()) rep[k] = v;
    SuiteResult res;
    res.passed = failed == 0;
    res.report = std::move(rep);
    return res;
}

// The extraction conventions behind the cocycle components: each phi is
// the direct ratio of its defining relation (not the inverse).
ojson sign_convention() {
    return ojson{{"abc", "+1 (triple product)"},
                 {"ab", "+1 (direct ratio of the equivariance relation)"},
                 {"a", "+1 (direct ratio of the composition relation)"}};
}

// ---------------------------------------------------------------- samplers

cplx sample_tau(CounterRng& rng) { return rng.box(-0.5, 0.5, 0.4, 1.5); }

struct TripleConfig {
    LatticeVector a, b, c;
    cvec3 x;
    cplx w;
};

// Distinct non-parallel primitive triple with x in the common chart and
// all pairwise factorizations moderate.
bool sample_domain_triple(CounterRng& rng, int bound, TripleConfig& out, int tries = 600) {
    for (int t = 0; t < tries; ++t) {
        LatticeVector a = sample_primitive(rng, bound);
        LatticeVector b = sample_primitive(rng, bound);
        LatticeVector c = sample_primitive(rng, bound);
        if (a == b || b == c || a == c || a == -b || b == -c || a == -c) continue;
        try {
            if (cross(DualVector{a.e}, DualVector{b.e}).is_zero()) continue;
            if (cross(DualVector{b.e}, DualVector{c.e}).is_zero()) continue;
            if (cross(DualVector{c.e}, DualVector{a.e}).is_zero()) continue;
            cvec3 x = sample_x_chart(rng, 3);
            if (!in_domain(a, x) || !in_domain(b, x) || !in_domain(c, x)) continue;
            if (!moderate_pair(pair_factorization(a, b), x) ||
                !moderate_pair(pair_factorization(b, c), x) ||
                !moderate_pair(pair_factorization(c, a), x))
                continue;
            out = TripleConfig{a, b, c, x, sample_w(rng)};
            return true;
        } catch (const std::exception&) {
            continue;
        }
    }
    return false;
}

struct EquivConfig {
    LatticeVector a, b;
    GroupElement ghat;
    cvec3 x;
    cplx w;
};

bool sample_equiv_config(CounterRng& rng, int bound, int word, EquivConfig& out,
                         int tries = 600) {
    for (int t = 0; t < tries; ++t) {
        try {
            auto [a, b] = sample_independent_pair(rng, bound);
            GroupElement g = sample_group_element(rng, word);
            cvec3 x = sample_x_chart(rng, 3);
            if (!in_domain(a, x) || !in_domain(b, x)) continue;
            if (!moderate_pair(pair_factorization(a, b), x)) continue;
            Mat3 gi = inverse_unimodular(g.g);
            ModuliArg gp = inv_act(g, cplx(0.0, 0.0), x);
            if (!moderate_pair(pair_factorization(mul(gi, a), mul(gi, b)), gp.x)) continue;
            out = EquivConfig{a, b, g, x, sample_w(rng)};
            return true;
        } catch (const std::exception&) {
            continue;
        }
    }
    return false;
}

// ------------------------------------------------------------------ suites

SuiteResult suite_shift(const SuiteConfig& cfg) {
    auto recs = run_indexed(cfg.samples, cfg.workers, [&](int i) {
        CounterRng rng = rng_for(cfg, "shift", i);
        Record r;
        for (int t = 0; t < 50; ++t) {
            cplx z = sample_w(rng), tau = sample_tau(rng), sigma = sample_tau(rng);
            try {
                auto lhs = elliptic_gamma_full(z + sigma, tau, sigma, cfg.eval);
                auto th = theta0_full(z, tau, cfg.eval);
                auto rhs = elliptic_gamma_full(z, tau, sigma, cfg.eval);
                if (lhs.near_pole || rhs.near_pole) continue;
                r.inputs = ojson{{"z", j_cplx(z)}, {"tau", j_cplx(tau)}, {"sigma", j_cplx(sigma)}};
                r.residual = rel_err(lhs.value, th.value * rhs.value);
                r.err_bound = lhs.err_bound + th.err_bound + rhs.err_bound;
                r.skipped = false;
                return r;
            } catch (const std::exception&) {
                continue;
            }
        }
        return r;
    });
    return assemble("shift", cfg, 1e-9, std::move(recs));
}

SuiteResult suite_reflection(const SuiteConfig& cfg) {
    auto recs = run_indexed(cfg.samples, cfg.workers, [&](int i) {
        CounterRng rng = rng_for(cfg, "reflection", i);
        Record r;
        for (int t = 0; t < 50; ++t) {
            cplx z = sample_w(rng), tau = sample_tau(rng), sigma = sample_tau(rng);
            try {
                auto e1 = elliptic_gamma_full(z, tau, sigma, cfg.eval);
                auto e2 = elliptic_gamma_full(tau + sigma - z, tau, sigma, cfg.eval);
                if (e1.near_pole || e2.near_pole) continue;
                r.inputs = ojson{{"z", j_cplx(z)}, {"tau", j_cplx(tau)}, {"sigma", j_cplx(sigma)}};
                r.residual = std::abs(e1.value * e2.value - cplx(1.0, 0.0));
                r.err_bound = e1.err_bound + e2.err_bound;
                r.skipped = false;
                return r;
            } catch (const std::exception&) {
                continue;
            }
        }
        return r;
    });
    return assemble("reflection", cfg, 1e-9, std::move(recs));
}

SuiteResult suite_symmetry(const SuiteConfig& cfg) {
    auto recs = run_indexed(cfg.samples, cfg.workers, [&](int i) {
        CounterRng rng = rng_for(cfg, "symmetry", i);
        Record r;
        for (int t = 0; t < 50; ++t) {
            cplx z = sample_w(rng), tau = sample_tau(rng), sigma = sample_tau(rng);
            try {
                auto e1 = elliptic_gamma_full(z, tau, sigma, cfg.eval);
                auto e2 = elliptic_gamma_full(z, sigma, tau, cfg.eval);
                if (e1.near_pole || e2.near_pole) continue;
                r.inputs = ojson{{"z", j_cplx(z)}, {"tau", j_cplx(tau)}, {"sigma", j_cplx(sigma)}};
                r.residual = rel_err(e1.value, e2.value);
                r.err_bound = e1.err_bound + e2.err_bound;
                r.skipped = false;
                return r;
            } catch (const std::exception&) {
                continue;
            }
        }
        return r;
    });
    return assemble("symmetry", cfg, 1e-9, std::move(recs));
}

SuiteResult suite_recovery(const SuiteConfig& cfg) {
    const LatticeVector e1{{1, 0, 0}}, e2{{0, 1, 0}};
    auto recs = run_indexed(cfg.samples, cfg.workers, [&](int i) {
        CounterRng rng = rng_for(cfg, "recovery", i);
        Record r;
        for (int t = 0; t < 50; ++t) {
            cplx z = sample_w(rng);
            cvec3 x = sample_x_standard(rng);
            try {
                auto fam = gamma_ab_full(e1, e2, z, x, cfg.eval);
                auto ord = elliptic_gamma_full(z, x[0], x[1], cfg.eval);
                if (fam.near_pole || ord.near_pole) continue;
                r.inputs = ojson{{"z", j_cplx(z)}, {"x", j_x(x)}};
                r.residual = rel_err(fam.value, ord.value);
                r.err_bound = fam.err_bound + ord.err_bound;
                r.skipped = false;
                return r;
            } catch (const std::exception&) {
                continue;
            }
        }
        return r;
    });
    return assemble("recovery", cfg, 1e-9, std::move(recs));
}

SuiteResult suite_antisymmetry(const SuiteConfig& cfg) {
    auto recs = run_indexed(cfg.samples, cfg.workers, [&](int i) {
        CounterRng rng = rng_for(cfg, "antisymmetry", i);
        Record r;
        for (int t = 0; t < 100; ++t) {
            try {
                if (i % 5 == 4) {
                    // unit cases gamma_{a,+-a} = 1
                    LatticeVector a = sample_primitive(rng, 3);
                    cvec3 x = sample_x_chart(rng, 2);
                    cplx w = sample_w(rng);
                    auto v1 = gamma_ab_full(a, a, w, x, cfg.eval);
                    auto v2 = gamma_ab_full(a, -a, w, x, cfg.eval);
                    r.inputs = ojson{{"a", j_vec(a)}, {"w", j_cplx(w)}, {"x", j_x(x)},
                                     {"case", "unit"}};
                    r.residual = std::max(std::abs(v1.value - cplx(1.0, 0.0)),
                                          std::abs(v2.value - cplx(1.0, 0.0)));
                    r.err_bound = v1.err_bound + v2.err_bound;
                    r.skipped = false;
                    return r;
                }
                auto [a, b] = sample_independent_pair(rng, 3);
                cvec3 x = sample_x_standard(rng);
                if (!moderate_pair(pair_factorization(a, b), x) ||
                    !moderate_pair(pair_factorization(b, a), x))
                    continue;
                cplx w = sample_w(rng);
                auto v1 = gamma_ab_full(a, b, w, x, cfg.eval);
                auto v2 = gamma_ab_full(b, a, w, x, cfg.eval);
                if (v1.near_pole || v2.near_pole) continue;
                r.inputs = ojson{{"a", j_vec(a)}, {"b", j_vec(b)}, {"w", j_cplx(w)},
                                 {"x", j_x(x)}, {"case", "pair"}};
                r.residual = std::abs(std::exp(v1.logv + v2.logv) - cplx(1.0, 0.0));
                r.err_bound = v1.err_bound + v2.err_bound;
                r.skipped = false;
                return r;
            } catch (const std::exception&) {
                continue;
            }
        }
        return r;
    });
    return assemble("antisymmetry", cfg, 1e-9, std::move(recs), ojson{{"note", "includes gamma_{a,+-a} = 1 unit cases"}});
}

SuiteResult suite_factorization_oracle(const SuiteConfig& cfg) {
    std::atomic<int> certified{0}, direct_overlap{0};
    auto recs = run_indexed(cfg.samples, cfg.workers, [&](int i) {
        CounterRng rng = rng_for(cfg, "factorization-oracle", i);
        Record r;
        for (int t = 0; t < 100; ++t) {
            try {
                auto [a, b] = sample_independent_pair(rng, 2);
                PairFactorization pf = pair_factorization(a, b);
                cplx tau_eff = rng.box(-0.4, 0.4, -1.3, -0.5);
                cplx sigma_eff = rng.box(-0.4, 0.4, 0.5, 1.3);
                cvec3 x = x_from_effective(pf, tau_eff, sigma_eff);
                cplx w = sample_w(rng);
                ConeProductReport rep = gamma_ab_cone(a, b, w, x, cfg.eval);
                if (!rep.certified()) continue;
                auto fac = gamma_ab_full(a, b, w, x, cfg.eval);
                if (fac.near_pole) continue;
                ++certified;
                // both edge rates positive requires Im(alpha(x)/gamma(x)) < 0,
                // while direct convergence of every factorized factor requires
                // it positive; count any co-occurrence
                bool direct = tau_eff.imag() > 0.0 && sigma_eff.imag() > 0.0;
                if (direct) ++direct_overlap;
                r.inputs = ojson{{"a", j_vec(a)}, {"b", j_vec(b)}, {"w", j_cplx(w)},
                                 {"x", j_x(x)}};
                r.residual = rel_err(*rep.value, fac.value);
                r.err_bound = rep.err_bound + fac.err_bound;
                r.skipped = false;
                r.extra = ojson{{"edge_decay", ojson{rep.edge_decay[0], rep.edge_decay[1]}},
                                {"terms_used", rep.terms_used},
                                {"direct_overlap", direct}};
                return r;
            } catch (const std::exception&) {
                continue;
            }
        }
        return r;
    });
    ojson extras;
    extras["certified_points"] = int(certified);
    extras["direct_overlap_points"] = int(direct_overlap);
    extras["regime_analysis"] =
        "The cone product certifies convergence iff Im(alpha(x)/gamma(x)) < 0 < "
        "Im(beta(x)/gamma(x)): the m-edge step of the enumeration lattice is "
        "congruent to alpha modulo Z*gamma, so its decay rate is "
        "-2*pi*Im(alpha(x)/gamma(x)).  Direct convergence of every factor of the "
        "factorized form requires Im(alpha(x)/gamma(x)) > 0 instead, so the two "
        "direct regimes are provably disjoint; agreement is verified against the "
        "factorized form's continuation, which is total.";
    return assemble("factorization-oracle", cfg, 1e-8, std::move(recs), extras);
}

SuiteResult suite_homogeneity(const SuiteConfig& cfg) {
    auto recs = run_indexed(cfg.samples, cfg.workers, [&](int i) {
        CounterRng rng = rng_for(cfg, "homogeneity", i);
        Record r;
        const char* kinds[5] = {"gamma_ab", "delta", "phi_abc", "phi_ab", "phi_a"};
        const std::string kind = kinds[i % 5];
        for (int t = 0; t < 100; ++t) {
            try {
                cplx w = sample_w(rng);
                double worst = 0.0;
                double bound = 0.0;
                ojson inputs;
                if (kind == "gamma_ab") {
                    auto [a, b] = sample_independent_pair(rng, 3);
                    cvec3 x = sample_x_standard(rng);
                    if (!moderate_pair(pair_factorization(a, b), x)) continue;
                    auto base = gamma_ab_full(a, b, w, x, cfg.eval);
                    if (base.near_pole) continue;
                    for (int k = 0; k < 10; ++k) {
                        cplx lam = std::polar(rng.uniform(0.5, 2.0), rng.uniform(0.0, 6.28));
                        cvec3 lx{lam * x[0], lam * x[1], lam * x[2]};
                        auto v = gamma_ab_full(a, b, lam * w, lx, cfg.eval);
                        worst = std::max(worst, rel_err(v.value, base.value));
                        bound += v.err_bound + base.err_bound;
                    }
                    inputs = ojson{{"kind", kind}, {"a", j_vec(a)}, {"b", j_vec(b)},
                                   {"w", j_cplx(w)}, {"x", j_x(x)}};
                } else if (kind == "delta") {
                    LatticeVector a = sample_primitive(rng, 3);
                    GroupElement g = sample_group_element(rng, 4);
                    cvec3 x = sample_x_chart(rng, 2);
                    if (!in_domain(a, x)) continue;
                    auto base = delta_full(a, g, w, x, cfg.eval);
                    if (base.near_pole) continue;
                    for (int k = 0; k < 10; ++k) {
                        cplx lam = std::polar(rng.uniform(0.5, 2.0), rng.uniform(0.0, 6.28));
                        cvec3 lx{lam * x[0], lam * x[1], lam * x[2]};
                        auto v = delta_full(a, g, lam * w, lx, cfg.eval);
                        worst = std::max(worst, std::abs(std::exp(v.logv - base.logv) -
                                                         cplx(1.0, 0.0)));
                        bound += v.err_bound + base.err_bound;
                    }
                    inputs = ojson{{"kind", kind}, {"a", j_vec(a)}, {"ghat", j_group(g)},
                                   {"w", j_cplx(w)}, {"x", j_x(x)}};
                } else {
                    TripleConfig tc;
                    if (!sample_domain_triple(rng, 2, tc, 120)) continue;
                    GroupElement g = sample_translation(rng, 2);
                    ValueWithError base;
                    if (kind == "phi_abc") base = phi_abc(tc.a, tc.b, tc.c, w, tc.x, cfg.eval);
                    if (kind == "phi_ab") base = phi_ab(tc.a, tc.b, g, w, tc.x, cfg.eval);
                    if (kind == "phi_a") base = phi_a(tc.a, g, g, w, tc.x, cfg.eval);
                    if (base.near_pole) continue;
                    for (int k = 0; k < 10; ++k) {
                        cplx lam = std::polar(rng.uniform(0.5, 2.0), rng.uniform(0.0, 6.28));
                        cvec3 lx{lam * tc.x[0], lam * tc.x[1], lam * tc.x[2]};
                        ValueWithError v;
                        if (kind == "phi_abc") v = phi_abc(tc.a, tc.b, tc.c, lam * w, lx, cfg.eval);
                        if (kind == "phi_ab") v = phi_ab(tc.a, tc.b, g, lam * w, lx, cfg.eval);
                        if (kind == "phi_a") v = phi_a(tc.a, g, g, lam * w, lx, cfg.eval);
                        worst = std::max(worst, std::abs(std::exp(v.logv - base.logv) -
                                                         cplx(1.0, 0.0)));
                        bound += v.err_bound + base.err_bound;
                    }
                    inputs = ojson{{"kind", kind}, {"a", j_vec(tc.a)}, {"b", j_vec(tc.b)},
                                   {"c", j_vec(tc.c)}, {"w", j_cplx(w)}, {"x", j_x(tc.x)}};
                }
                r.inputs = std::move(inputs);
                r.residual = worst;
                r.err_bound = bound;
                r.skipped = false;
                return r;
            } catch (const std::exception&) {
                continue;
            }
        }
        return r;
    });
    return assemble("homogeneity", cfg, 1e-9, std::move(recs));
}

SuiteResult suite_tetrahedron(const SuiteConfig& cfg) {
    auto recs = run_indexed(cfg.samples, cfg.workers, [&](int i) {
        CounterRng rng = rng_for(cfg, "tetrahedron", i);
        Record r;
        for (int t = 0; t < 100; ++t) {
            try {
                LatticeVector a = sample_primitive(rng, 3);
                LatticeVector b = sample_primitive(rng, 3);
                LatticeVector c = sample_primitive(rng, 3);
                LatticeVector d = sample_primitive(rng, 3);
                cvec3 x = sample_x_chart(rng, 2);
                cplx w = sample_w(rng);
                auto res = check_tetrahedron(a, b, c, d, w, x, cfg.eval);
                r.inputs = ojson{{"a", j_vec(a)}, {"b", j_vec(b)}, {"c", j_vec(c)},
                                 {"d", j_vec(d)}, {"w", j_cplx(w)}, {"x", j_x(x)}};
                r.residual = res.residual;
                r.err_bound = res.err_bound;
                r.skipped = false;
                return r;
            } catch (const std::exception&) {
                continue;
            }
        }
        return r;
    });
    return assemble("tetrahedron", cfg, 1e-6, std::move(recs),
                    ojson{{"sign_convention", sign_convention()}});
}

SuiteResult suite_equivariant(const SuiteConfig& cfg) {
    auto recs = run_indexed(cfg.samples, cfg.workers, [&](int i) {
        CounterRng rng = rng_for(cfg, "equivariant", i);
        Record r;
        for (int t = 0; t < 200; ++t) {
            try {
                TripleConfig tc;
                if (!sample_domain_triple(rng, 2, tc, 100)) continue;
                GroupElement g = (i % 3 == 0) ? sample_translation(rng, 2)
                                              : sample_group_element(rng, 4);
                auto res = check_equivariant(tc.a, tc.b, tc.c, g, tc.w, tc.x, cfg.eval);
                r.inputs = ojson{{"a", j_vec(tc.a)}, {"b", j_vec(tc.b)}, {"c", j_vec(tc.c)},
                                 {"ghat", j_group(g)}, {"w", j_cplx(tc.w)}, {"x", j_x(tc.x)}};
                r.residual = res.residual;
                r.err_bound = res.err_bound;
                r.skipped = false;
                return r;
            } catch (const std::exception&) {
                continue;
            }
        }
        return r;
    });
    return assemble("equivariant", cfg, 1e-6, std::move(recs),
                    ojson{{"sign_convention", sign_convention()}});
}

SuiteResult suite_group(const SuiteConfig& cfg) {
    auto recs = run_indexed(cfg.samples, cfg.workers, [&](int i) {
        CounterRng rng = rng_for(cfg, "group", i);
        Record r;
        for (int t = 0; t < 200; ++t) {
            try {
                LatticeVector a = sample_primitive(rng, 2);
                GroupElement g = (i % 3 == 0) ? sample_translation(rng, 2)
                                              : sample_group_element(rng, 3);
                GroupElement h = (i % 3 == 0) ? sample_translation(rng, 2)
                                              : sample_group_element(rng, 3);
                GroupElement j = (i % 3 == 0) ? sample_translation(rng, 2)
                                              : sample_group_element(rng, 3);
                cvec3 x = sample_x_chart(rng, 2);
                if (!in_domain(a, x)) continue;
                cplx w = sample_w(rng);
                auto res = check_group(a, g, h, j, w, x, cfg.eval);
                r.inputs = ojson{{"a", j_vec(a)}, {"ghat", j_group(g)}, {"hhat", j_group(h)},
                                 {"jhat", j_group(j)}, {"w", j_cplx(w)}, {"x", j_x(x)}};
                r.residual = res.residual;
                r.err_bound = res.err_bound;
                r.skipped = false;
                return r;
            } catch (const std::exception&) {
                continue;
            }
        }
        return r;
    });
    return assemble("group", cfg, 1e-6, std::move(recs),
                    ojson{{"sign_convention", sign_convention()}});
}

SuiteResult suite_phase_fit(const SuiteConfig& cfg) {
    auto recs = run_indexed(cfg.samples, cfg.workers, [&](int i) {
        CounterRng rng = rng_for(cfg, "phase-fit", i);
        Record r;
        if (i == 0) {
            // synthetic self-test: e^{i pi w^2}
            std::vector<std::pair<cplx, cplx>> vals;
            for (int k = 0; k < 20; ++k) {
                cplx w = cplx(0.02 * k - 0.2, 0.015 * k);
                vals.push_back({w, std::exp(cplx(0, M_PI) * w * w)});
            }
            auto fit = fit_phase(vals, 4, 1e-9);
            double coeff_err = std::abs(fit.coefficients[2] - cplx(0, M_PI));
            r.inputs = ojson{{"kind", "synthetic"}};
            r.residual = std::max(fit.residual, coeff_err);
            r.err_bound = 1e-12;
            r.skipped = false;
            r.extra = ojson{{"degree_used", fit.degree_used}, {"coeff_err", coeff_err}};
            return r;
        }
        for (int t = 0; t < 100; ++t) {
            try {
                TripleConfig tc;
                if (!sample_domain_triple(rng, 2, tc, 100)) continue;
                std::vector<std::pair<cplx, cplx>> vals;
                bool bad = false;
                const cplx step = cfg.eval.unwrap_step * cplx(0.92, 0.38);
                for (int k = 0; k < 25; ++k) {
                    cplx w = cplx(-0.15, 0.06) + double(k) * step;
                    auto v = phi_abc(tc.a, tc.b, tc.c, w, tc.x, cfg.eval);
                    if (v.near_pole || v.near_zero) {
                        bad = true;
                        break;
                    }
                    vals.push_back({w, v.value});
                }
                if (bad) continue;
                auto fit = fit_phase(vals, 5, 1e-7);
                r.inputs = ojson{{"kind", "phi_abc"}, {"a", j_vec(tc.a)}, {"b", j_vec(tc.b)},
                                 {"c", j_vec(tc.c)}, {"x", j_x(tc.x)}};
                // degree bound 3 is part of the check: penalise violations
                r.residual = fit.degree_used <= 3 ? fit.residual : 1.0;
                r.err_bound = 1e-9;
                r.skipped = false;
                r.extra = ojson{{"degree_used", fit.degree_used}};
                return r;
            } catch (const resample_error&) {
                continue;
            } catch (const std::exception&) {
                continue;
            }
        }
        return r;
    });
    return assemble("phase-fit", cfg, 1e-6, std::move(recs));
}

SuiteResult suite_hermitian(const SuiteConfig& cfg) {
    // joint convention search across triple and equivariant samples
    int n_tr = std::max(1, cfg.samples / 2);
    int n_eq = std::max(1, cfg.samples - n_tr);
    std::vector<HermitianTripleSample> triples;
    std::vector<HermitianEquivSample> equivs;
    std::vector<ojson> tr_inputs, eq_inputs;
    for (int i = 0; i < n_tr; ++i) {
        CounterRng rng = rng_for(cfg, "hermitian-triple", i);
        TripleConfig tc;
        if (!sample_domain_triple(rng, 2, tc, 1500)) continue;
        try {
            auto v = phi_abc(tc.a, tc.b, tc.c, tc.w, tc.x, cfg.eval);
            if (v.near_pole || v.near_zero) continue;
        } catch (const std::exception&) {
            continue;
        }
        triples.push_back({tc.a, tc.b, tc.c, tc.w, tc.x});
        tr_inputs.push_back(ojson{{"kind", "triple"}, {"a", j_vec(tc.a)}, {"b", j_vec(tc.b)},
                                  {"c", j_vec(tc.c)}, {"w", j_cplx(tc.w)}, {"x", j_x(tc.x)}});
    }
    for (int i = 0; i < n_eq; ++i) {
        CounterRng rng = rng_for(cfg, "hermitian-equiv", i);
        EquivConfig ec;
        if (!sample_equiv_config(rng, 2, 4, ec, 1500)) continue;
        try {
            auto v = phi_ab(ec.a, ec.b, ec.ghat, ec.w, ec.x, cfg.eval);
            if (v.near_pole || v.near_zero) continue;
        } catch (const std::exception&) {
            continue;
        }
        equivs.push_back({ec.a, ec.b, ec.ghat, ec.w, ec.x});
        eq_inputs.push_back(ojson{{"kind", "equivariant"}, {"a", j_vec(ec.a)},
                                  {"b", j_vec(ec.b)}, {"ghat", j_group(ec.ghat)},
                                  {"w", j_cplx(ec.w)}, {"x", j_x(ec.x)}});
    }

    HermitianSearchResult search = check_hermitian(triples, equivs, cfg.eval);

    std::vector<Record> recs;
    for (size_t i = 0; i < triples.size(); ++i) {
        Record r;
        r.inputs = tr_inputs[i];
        try {
            r.residual = hermitian_triple_gap(triples[i], cfg.eval, search.best);
            r.skipped = false;
        } catch (const std::exception&) {
        }
        recs.push_back(std::move(r));
    }
    for (size_t i = 0; i < equivs.size(); ++i) {
        Record r;
        r.inputs = eq_inputs[i];
        try {
            r.residual = hermitian_equivariant_gap(equivs[i], cfg.eval, search.best);
            r.skipped = false;
        } catch (const std::exception&) {
        }
        recs.push_back(std::move(r));
    }

    ojson table = ojson::array();
    for (const auto& [conv, worst] : search.table)
        table.push_back(ojson{{"exponent", conv.exponent},
                              {"sign", conv.sign},
                              {"h3_power", conv.h3_power},
                              {"pairing", conv.alternating ? "alternating" : "cyclic"},
                              {"max_residual", worst}});
    ojson extras;
    extras["convention"] = ojson{{"exponent", search.best.exponent},
                                 {"sign", search.best.sign},
                                 {"h3_power", search.best.h3_power},
                                 {"pairing", search.best.alternating ? "alternating" : "cyclic"}};
    extras["convention_table"] = table;
    extras["empirical_ratio"] = search.empirical_ratio;
    extras["analysis"] =
        "With the half-shifted degree-n Bernoulli weights the following hold to machine "
        "precision: h_ab h_ba = 1 (swap pairing), choice independence of h_ab, and the "
        "equivariant identity under (exponent, sign) = (2, -1) on a large stratum (every "
        "sample with |phi_ab| = 1, single-step translations at the standard pair, and many "
        "generic configurations with |phi_ab| as large as 1e6).  Off that stratum the "
        "log-gap is measured to be exactly independent of w - the full polynomial "
        "w-dependence of log|phi| is reproduced by the weights - leaving a per-configuration "
        "constant anomaly that no convention in the search set cancels; it correlates with "
        "translations whose dual vector has fractional coordinates in the pair's "
        "(alpha, beta, gamma) basis.  Per-sample gaps under the best convention are "
        "reported above.";
    return assemble("hermitian", cfg, 1e-6, std::move(recs), extras);
}

SuiteResult suite_bernoulli(const SuiteConfig& cfg) {
    auto recs = run_indexed(cfg.samples, cfg.workers, [&](int i) {
        CounterRng rng = rng_for(cfg, "bernoulli", i);
        Record r;
        try {
            if (i % 3 == 0) {
                // classical reduction at n = 1, exact
                static const Rational bern[7] = {Rational(1),      Rational(-1, 2),
                                                 Rational(1, 6),   Rational(0),
                                                 Rational(-1, 30), Rational(0),
                                                 Rational(1, 42)};
                int k = (i / 3) % 7;  // cycle through every degree
                std::int64_t zn = rng.uniform_int(0, 2);
                Rational z = (zn == 0) ? Rational(0) : (zn == 1 ? Rational(1, 2) : Rational(1));
                Rational got = bernoulli_kn(k, 1, z, {});
                Rational want(0);
                for (int m = 0; m <= k; ++m) {
                    Rational binom(1);
                    for (int t = 0; t < m; ++t)
                        binom = binom * Rational(k - t) / Rational(t + 1);
                    Rational zp(1);
                    for (int t = 0; t < k - m; ++t) zp *= z;
                    want += binom * bern[m] * zp;
                }
                r.inputs = ojson{{"kind", "classical"}, {"k", k}, {"z", z.str()}};
                r.residual = (got == want) ? 0.0 : 1.0;
            } else if (i % 3 == 1) {
                // B_{1,2} closed form, exact rationals
                Rational z(rng.uniform_int(-8, 8), rng.uniform_int(1, 5));
                Rational t(rng.uniform_int(1, 8), rng.uniform_int(1, 5));
                Rational want = (Rational(2) * z - t - Rational(1)) / (Rational(2) * t);
                r.inputs = ojson{{"kind", "B12"}, {"z", z.str()}, {"t", t.str()}};
                r.residual = (bernoulli_kn(1, 2, z, {t}) == want) ? 0.0 : 1.0;
            } else {
                // fundamental set size law, exact integers
                CounterRng rng2 = rng.fork(3);
                auto [a, b] = sample_independent_pair(rng2, 5);
                auto p = annihilator_pair(a, b);
                auto g = primitive_gamma(a, b);
                auto F = fundamental_set(a, b, p.alpha, p.beta);
                bool ok = std::int64_t(F.size()) == p.alpha(a) * p.beta(b) / g.s;
                r.inputs = ojson{{"kind", "fset"}, {"a", j_vec(a)}, {"b", j_vec(b)}};
                r.residual = ok ? 0.0 : 1.0;
            }
            r.err_bound = 0.0;
            r.skipped = false;
        } catch (const std::exception&) {
        }
        return r;
    });
    return assemble("bernoulli", cfg, 0.5, std::move(recs),
                    ojson{{"note", "exact rational/integer identities; residual 0 = equal"}});
}

} // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "shift",      "reflection",   "symmetry", "recovery",  "antisymmetry",
        "factorization-oracle", "homogeneity", "tetrahedron", "equivariant",
        "group",      "phase-fit",    "hermitian", "bernoulli"};
    return names;
}

SuiteResult run_suite(const std::string& name, const SuiteConfig& cfg) {
    if (name == "shift") return suite_shift(cfg);
    if (name == "reflection") return suite_reflection(cfg);
    if (name == "symmetry") return suite_symmetry(cfg);
    if (name == "recovery") return suite_recovery(cfg);
    if (name == "antisymmetry") return suite_antisymmetry(cfg);
    if (name == "factorization-oracle") return suite_factorization_oracle(cfg);
    if (name == "homogeneity") return suite_homogeneity(cfg);
    if (name == "tetrahedron") return suite_tetrahedron(cfg);
    if (name == "equivariant") return suite_equivariant(cfg);
    if (name == "group") return suite_group(cfg);
    if (name == "phase-fit") return suite_phase_fit(cfg);
    if (name == "hermitian") return suite_hermitian(cfg);
    if (name == "bernoulli") return suite_bernoulli(cfg);
    throw std::invalid_argument("unknown suite: " + name);
}

} // namespace ggl
