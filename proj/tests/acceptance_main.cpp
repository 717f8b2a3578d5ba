/// @file acceptance_main.cpp
/// @brief End-to-end acceptance suite. Each criterion prints one pass/fail
///        line; the process exits nonzero if any criterion fails. Tolerances
///        and thresholds are pinned here, in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "dkit/causal_sets.hpp"
#include "dkit/causality_checks.hpp"
#include "dkit/distance_core.hpp"
#include "dkit/finsler_lab.hpp"
#include "dkit/ghyp_gate.hpp"
#include "dkit/grid_oracle.hpp"
#include "dkit/scenario.hpp"
#include "dkit/topology_lab.hpp"

namespace fs = std::filesystem;
using namespace dkit;
using Clock = std::chrono::steady_clock;

namespace {

struct Check {
    std::vector<std::string> failures;

    void require(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
    template <typename T>
    void equal(const T& a, const T& b, const std::string& what) {
        if (!(a == b)) failures.push_back(what);
    }
};

models::SampleSpace grid_sample(const models::SpacetimeModel& m, std::size_t n,
                                int probe_multiplier = 1) {
    models::SampleSpec spec;
    spec.n = n;
    spec.mode = models::SampleMode::GridWithProbes;
    spec.region = models::Box{-1.0, 1.0, -1.0, 1.0};
    spec.probe_multiplier = probe_multiplier;
    return models::sample(m, spec);
}

core::Relation exact_causal_relation(const models::SampleSpace& s) {
    core::Relation r(s.labels);
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = 0; j < s.size(); ++j) {
            r.set(i, j, s.model.exact_causal(s.points[i], s.points[j]));
        }
    }
    return r;
}

// ---------------------------------------------------------------------------

void criterion_1_minkowski_gate(Check& c) {
    const models::SpacetimeModel mink = models::SpacetimeModel::minkowski({-3, 3, -3, 3});
    double previous_excess = std::numeric_limits<double>::infinity();
    for (int mult : {1, 2, 4}) {
        const models::SampleSpace s = grid_sample(mink, 100, mult);
        const gates::GateVerdict main_gate = gates::thm_main_gate(s);
        c.require(main_gate.verdict == gates::Verdict::ConsistentWithGH,
                  "thm_main_gate not CONSISTENT_WITH_GH at probe multiplier " +
                      std::to_string(mult));
        if (mult == 1) {
            const gates::GateVerdict dia = gates::diamond_gate(s);
            c.require(dia.verdict == gates::Verdict::ConsistentWithGH,
                      "diamond_gate not CONSISTENT_WITH_GH");
        }
        const core::Relation exact_j = exact_causal_relation(s);
        std::size_t missing = 0, excess = 0, core_pairs = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            for (std::size_t j = 0; j < s.size(); ++j) {
                if (exact_j.at(i, j) && !main_gate.reconstructed_J.at(i, j)) ++missing;
            }
        }
        for (std::size_t i = 0; i < s.core_count; ++i) {
            for (std::size_t j = 0; j < s.core_count; ++j) {
                if (i == j) continue;
                ++core_pairs;
                if (main_gate.reconstructed_J.at(i, j) && !exact_j.at(i, j)) ++excess;
            }
        }
        c.require(missing == 0, "reconstructed_J misses " + std::to_string(missing) +
                                    " exact_J pairs at multiplier " + std::to_string(mult));
        const double fraction = static_cast<double>(excess) / core_pairs;
        std::printf("    probe multiplier %dx: excess-pair fraction %.6f\n", mult, fraction);
        c.require(fraction <= previous_excess + 1e-15,
                  "excess fraction increased at multiplier " + std::to_string(mult));
        previous_excess = fraction;
    }
}

void criterion_2_counterexample_triad(Check& c) {
    // Each member of the triad carries its own 10 s budget.
    auto timed = [&c](const char* name, const std::function<void()>& body) {
        const auto t0 = Clock::now();
        body();
        const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        if (secs > 10.0) {
            c.failures.push_back(std::string(name) + " exceeded its 10 s budget");
        }
    };

    timed("cylinder", [&] {
        // CtcCylinder: REFUTED(finiteness), every distinction variant fails.
        const models::SpacetimeModel cyl =
            models::SpacetimeModel::ctc_cylinder(1.0, {0, 1, -2, 2});
        models::SampleSpec pspec;
        pspec.n = 40;
        pspec.mode = models::SampleMode::Poisson;
        pspec.seed = 11;
        pspec.region = models::Box{0.0, 1.0, -1.0, 1.0};
        const models::SampleSpace cyl_sample = models::sample(cyl, pspec);
        const gates::GateVerdict cyl_gate = gates::thm_main_gate(cyl_sample);
        c.require(cyl_gate.verdict == gates::Verdict::Refuted, "cylinder gate not REFUTED");
        c.equal(cyl_gate.refuted_condition, std::string("finiteness"),
                "cylinder refuted condition is not finiteness");
        const checks::CausalityReport cyl_rep =
            checks::distinction_report(cyl_sample.matrix);
        c.require(!cyl_rep.future_d_distinction.pass && !cyl_rep.past_d_distinction.pass &&
                      !cyl_rep.d_distinction.pass && !cyl_rep.weak_d_distinction.pass &&
                      !cyl_rep.future_or_past_d_distinction.pass,
                  "cylinder: some distinction variant did not fail");
    });

    timed("slit", [&] {
        // SlitMinkowski: d-reflectivity fails with witness; an upper probe
        // fails; the implication table is all-consistent.
        const models::SpacetimeModel slit =
            models::SpacetimeModel::slit_minkowski({-3, 3, -3, 3});
        const models::SampleSpace slit_sample = grid_sample(slit, 100);
        const topology::ConsistencyReport cons =
            topology::reflectivity_continuity_consistency(slit_sample);
        c.require(!cons.d_reflectivity_pass, "slit: d_reflectivity unexpectedly passes");
        c.require(cons.causality.d_reflectivity.witness.has_value(),
                  "slit: no reflectivity witness reported");
        c.require(cons.upper_probe_failure, "slit: no upper-semicontinuity probe failed");
        c.require(cons.consistent, "slit: consistency table inconsistent");
    });

    timed("punctured", [&] {
        // PuncturedMinkowski: precompactness fails on a witness diamond
        // through the removed origin.
        const models::SpacetimeModel punct =
            models::SpacetimeModel::punctured_minkowski({-3, 3, -3, 3});
        const models::SampleSpace punct_sample = grid_sample(punct, 100);
        const gates::GateVerdict punct_gate = gates::diamond_gate(punct_sample);
        c.require(punct_gate.verdict == gates::Verdict::Refuted,
                  "punctured gate not REFUTED");
        c.equal(punct_gate.refuted_condition, std::string("diamond_precompactness"),
                "punctured refuted condition is not diamond_precompactness");
        const auto& cond = punct_gate.conditions.at("diamond_precompactness");
        c.require(cond.witness.has_value(), "punctured: no witness diamond");
        if (cond.witness) {
            const std::size_t ip = punct_sample.matrix.index_of(cond.witness->p);
            const std::size_t iq = punct_sample.matrix.index_of(cond.witness->q);
            const models::Point p = punct_sample.points[ip], q = punct_sample.points[iq];
            // Origin inside the closed coordinate diamond of the witness pair.
            const bool below = -p.t >= std::fabs(p.x) - 1e-12;
            const bool above = q.t >= std::fabs(q.x) - 1e-12;
            c.require(below && above,
                      "punctured witness diamond does not straddle the origin");
        }
    });
}

void criterion_3_predicate_lattice_fuzz(Check& c) {
    models::SplitMix64 rng(20250810);
    std::size_t violations = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 3 + rng.next_u64() % 10;  // n <= 12
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i));
        core::DistanceMatrix m(labels);
        if (trial % 50 == 0) {
            // Totally vicious block: everything infinitely far from everything.
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) m.set(i, j, core::ExtReal::infinity());
            }
        } else {
            // Random DAG, longest-path closure: reverse triangle by construction.
            std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = i + 1; j < n; ++j) {
                    if (rng.next_unit() < 0.45) w[i][j] = 0.1 * (1 + rng.next_u64() % 20);
                }
            }
            for (std::size_t i = 0; i < n; ++i) {
                std::vector<double> best(n, -1.0);
                best[i] = 0.0;
                for (std::size_t u = i; u < n; ++u) {
                    if (best[u] < 0) continue;
                    for (std::size_t v = u + 1; v < n; ++v) {
                        if (w[u][v] > 0.0 && best[u] + w[u][v] > best[v]) {
                            best[v] = best[u] + w[u][v];
                        }
                    }
                }
                for (std::size_t j = 0; j < n; ++j) {
                    m.set(i, j, core::ExtReal(best[j] > 0.0 ? best[j] : 0.0));
                }
            }
        }
        if (!core::check_reverse_triangle(m).pass()) {
            ++violations;
            continue;
        }
        const checks::CausalityReport rep = checks::causality_report(m);
        if (!rep.lattice_consistent()) ++violations;
        const core::Relation chron = core::chronology(m);
        if (!chron.is_transitive()) ++violations;
        const core::Relation d_rel = checks::relation_D(m);
        if (!d_rel.contains(chron)) ++violations;
        if (!d_rel.is_reflexive() || !d_rel.is_transitive()) ++violations;
        if (d_rel.is_antisymmetric() != rep.weak_d_distinction.pass) ++violations;
        const checks::Eq1Relations eq = checks::eq1_relations(m);
        if (rep.d_reflectivity.pass && !eq.equal) ++violations;
    }
    c.require(violations == 0,
              std::to_string(violations) + " fuzz violations out of 1000 matrices");
}

void criterion_4_fixture_f1(Check& c) {
    const core::DistanceMatrix f1 =
        core::DistanceMatrix::load_csv(std::string(DKIT_FIXTURE_DIR "/f1.csv"));
    const checks::CausalityReport rep = checks::distinction_report(f1);
    c.require(!rep.future_d_distinction.pass, "F1 future distinction did not fail");
    c.require(rep.future_d_distinction.witness &&
                  rep.future_d_distinction.witness->p == "a" &&
                  rep.future_d_distinction.witness->q == "b",
              "F1 future witness is not (a,b)");
    c.require(rep.past_d_distinction.pass, "F1 past distinction failed");
    c.require(rep.weak_d_distinction.pass, "F1 weak distinction failed");
}

void criterion_5_topology(Check& c) {
    // 3-chain: opens exactly {empty, {b}, ground}, non-Hausdorff.
    core::DistanceMatrix chain({"a", "b", "c"});
    chain.set(0, 1, core::ExtReal(1.0));
    chain.set(1, 2, core::ExtReal(1.0));
    chain.set(0, 2, core::ExtReal(2.0));
    const topology::FiniteTopology t = topology::alexandrov_topology(chain);
    const auto opens = t.opens();
    c.require(opens.has_value() && opens->size() == 3, "3-chain does not have 3 opens");
    if (opens && opens->size() == 3) {
        c.require((*opens)[0].count() == 0, "3-chain: first open not empty");
        c.require((*opens)[1].count() == 1 && (*opens)[1].contains(1),
                  "3-chain: singleton open is not {b}");
        c.require((*opens)[2].count() == 3, "3-chain: ground missing");
    }
    c.require(!topology::is_hausdorff(t).hausdorff, "3-chain unexpectedly Hausdorff");

    // alexandrov subset of initial on every matrix constructed here.
    std::vector<core::DistanceMatrix> matrices;
    matrices.push_back(chain);
    for (const char* name : {"f1.csv", "f1_transpose.csv", "weak_fail.csv",
                             "refl_fail.csv", "strong_past_fail.csv", "fp_fail.csv"}) {
        matrices.push_back(
            core::DistanceMatrix::load_csv(std::string(DKIT_FIXTURE_DIR "/") + name));
    }
    models::SplitMix64 rng(777);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = 3 + rng.next_u64() % 8;
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i));
        core::DistanceMatrix m(labels);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<double> best(n, -1.0);
            best[i] = 0.0;
            for (std::size_t u = i; u < n; ++u) {
                if (best[u] < 0) continue;
                for (std::size_t v = u + 1; v < n; ++v) {
                    const double wv = (rng.next_u64() % 3) ? 0.0 : 0.5;
                    if (wv > 0.0 && best[u] + wv > best[v]) best[v] = best[u] + wv;
                }
            }
            for (std::size_t j = 0; j < n; ++j) {
                m.set(i, j, core::ExtReal(best[j] > 0.0 ? best[j] : 0.0));
            }
        }
        matrices.push_back(m);
    }
    for (std::size_t k = 0; k < matrices.size(); ++k) {
        const topology::FiniteTopology alex = topology::alexandrov_topology(matrices[k]);
        const topology::FiniteTopology init = topology::initial_topology(matrices[k]);
        c.require(topology::finer_than(init, alex),
                  "alexandrov not inside initial on matrix " + std::to_string(k));
        // On finite spaces Hausdorff and discrete are the same thing.
        c.require(topology::is_hausdorff(alex).hausdorff == alex.is_discrete(),
                  "hausdorff/discrete reduction broken on matrix " + std::to_string(k));
        c.require(topology::is_hausdorff(init).hausdorff == init.is_discrete(),
                  "hausdorff/discrete reduction broken (initial) on matrix " +
                      std::to_string(k));
    }

    // Minkowski grid_with_probes, n <= 60: Alexandrov Hausdorff (discrete).
    const models::SpacetimeModel mink = models::SpacetimeModel::minkowski({-3, 3, -3, 3});
    const models::SampleSpace s = grid_sample(mink, 16);  // 16 core + 32 probes = 48
    c.require(s.size() <= 60, "topology sample exceeds the 60-event cap");
    std::vector<std::size_t> core_ground(s.core_count);
    for (std::size_t i = 0; i < core_ground.size(); ++i) core_ground[i] = i;
    const topology::FiniteTopology alex =
        topology::alexandrov_topology(s.matrix, &core_ground);
    c.require(topology::is_hausdorff(alex).hausdorff,
              "Minkowski sample Alexandrov topology not Hausdorff");
    c.require(alex.is_discrete(), "Minkowski sample Alexandrov topology not discrete");
}

void criterion_6_oracle_convergence(Check& c) {
    const models::SpacetimeModel mink = models::SpacetimeModel::minkowski({-2, 2, -2, 2});
    models::SplitMix64 rng(60646);
    std::vector<std::pair<models::Point, models::Point>> pairs;
    while (pairs.size() < 20) {
        const models::Point p{rng.next_in(-1.2, 0.0), rng.next_in(-0.9, 0.9)};
        const models::Point q{rng.next_in(0.0, 1.2), rng.next_in(-0.9, 0.9)};
        // Timelike with a healthy margin so relative gaps are well defined.
        if (q.t - p.t > std::fabs(q.x - p.x) + 0.3) pairs.emplace_back(p, q);
    }
    const models::OracleReport r64 = models::verify_against_grid_oracle(mink, pairs, 64);
    const models::OracleReport r128 = models::verify_against_grid_oracle(mink, pairs, 128);
    c.require(r64.lower_bound_ok() && r128.lower_bound_ok(),
              "oracle exceeded exact_d somewhere");
    double rel64 = 0.0, rel128 = 0.0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const double e = r64.pairs[i].exact.finite_value();
        c.require(r64.pairs[i].path_found && r128.pairs[i].path_found,
                  "oracle failed to find a path");
        rel64 += (e - r64.pairs[i].oracle) / e;
        rel128 += (e - r128.pairs[i].oracle) / e;
    }
    rel64 /= pairs.size();
    rel128 /= pairs.size();
    std::printf("    mean relative gap: res 64 -> %.5f, res 128 -> %.5f (ratio %.3f)\n",
                rel64, rel128, rel128 / rel64);
    c.require(rel128 <= 0.6 * rel64, "gap at resolution 128 not <= 0.6x gap at 64");
}

void criterion_7_busemann(Check& c) {
    const finsler::FinslerNorm flat = finsler::FinslerNorm::minkowski();
    const finsler::DField flat_field = [&flat](models::Point q) {
        return core::ExtReal(flat.evaluate({q.t, q.x}));
    };
    const finsler::FEstimate linear =
        finsler::busemann_mayer_first(flat_field, {0, 0}, {1.0, 0.0}, {0.0, 0.0});
    c.require(std::fabs(linear.value - 1.0) <= 1e-9,
              "flat first formula not exact to 1e-9");

    const finsler::FinslerNorm rnd = finsler::FinslerNorm::randers(0.1);
    const finsler::DField rnd_field = [&rnd](models::Point q) {
        return core::ExtReal(rnd.evaluate({q.t, q.x}));
    };
    const finsler::Vec v{1.0, 0.3};
    const double oracle = std::sqrt(0.91) - 0.03;
    const finsler::FEstimate first =
        finsler::busemann_mayer_first(rnd_field, {0, 0}, v, {0.0, 0.2});
    c.require(std::fabs(first.value - oracle) <= 1e-3,
              "randers first formula off by more than 1e-3");
    const finsler::F2Estimate second =
        finsler::busemann_mayer_second(rnd_field, rnd, {0, 0}, v, {0.0, 0.2});
    c.require(std::fabs(second.value - first.value * first.value) <= 1e-3,
              "second formula disagrees with first^2 beyond 1e-3");
    const finsler::F2Estimate second_b =
        finsler::busemann_mayer_second(rnd_field, rnd, {0, 0}, v, {0.1, -0.15});
    c.require(std::fabs(second.value - second_b.value) <= 1e-3,
              "estimate depends on the curvature vector beyond 1e-3");
}

void criterion_8_spray_probes(Check& c) {
    const finsler::Spray flat = finsler::Spray::flat();
    const finsler::Vec v{0.9, -0.35};
    const finsler::Vec back =
        finsler::exp_inverse(flat, {0.1, 0.2}, finsler::exp_map(flat, {0.1, 0.2}, v));
    c.require(std::hypot(back.t - v.t, back.x - v.x) <= 1e-8,
              "flat exp round trip above 1e-8");

    const finsler::Spray spray = finsler::Spray::perturbed(0.01);
    const finsler::JacobianReport r1 =
        finsler::exp_zero_section_probe(spray, {0, 0}, 0.1, 8);
    const finsler::JacobianReport r2 =
        finsler::exp_zero_section_probe(spray, {0, 0}, 0.05, 8);
    const finsler::JacobianReport r3 =
        finsler::exp_zero_section_probe(spray, {0, 0}, 0.025, 8);
    c.require(r1.identity_deviation_at_zero < 1e-6, "Jacobian-at-zero deviation >= 1e-6");
    c.require(r1.max_deviation_in_ball > r2.max_deviation_in_ball &&
                  r2.max_deviation_in_ball > r3.max_deviation_in_ball,
              "ball deviation not monotone across radii 0.1/0.05/0.025");

    const finsler::ConvergenceReport conv =
        finsler::spray_self_convergence(spray, {0, 0}, {1.0, 0.4});
    std::printf("    integrator self-convergence order: %.2f\n", conv.order);
    c.require(conv.order >= 3.5, "self-convergence order below 3.5");
}

void criterion_9_quadraticity(Check& c) {
    const finsler::QuadraticityReport q0 =
        finsler::quadraticity_test(finsler::FinslerNorm::minkowski(), {0, 0});
    const finsler::QuadraticityReport q05 =
        finsler::quadraticity_test(finsler::FinslerNorm::randers(0.05), {0, 0});
    const finsler::QuadraticityReport q10 =
        finsler::quadraticity_test(finsler::FinslerNorm::randers(0.1), {0, 0});
    std::printf("    deficits: b=0 -> %.3e, b=0.05 -> %.3e, b=0.1 -> %.3e\n", q0.deficit,
                q05.deficit, q10.deficit);
    c.require(q0.deficit <= 1e-6, "quadratic norm deficit above 1e-6");
    c.require(q0.deficit < q05.deficit && q05.deficit < q10.deficit,
              "deficit not strictly increasing in b");
}

void criterion_10_isometry(Check& c) {
    const models::SpacetimeModel mink = models::SpacetimeModel::minkowski({-4, 4, -4, 4});
    const models::SampleSpace s = grid_sample(mink, 25);
    const std::size_t n = s.size();
    finsler::SampleBijection ident;
    ident.perm.resize(n);
    for (std::size_t i = 0; i < n; ++i) ident.perm[i] = i;

    const double ch = std::cosh(0.5), sh = std::sinh(0.5);
    core::DistanceMatrix image(s.labels);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double dt = s.points[j].t - s.points[i].t;
            const double dx = s.points[j].x - s.points[i].x;
            image.set(i, j, core::ExtReal(mink.norm().evaluate(
                                {ch * dt + sh * dx, sh * dt + ch * dx})));
        }
    }
    finsler::SampleBijection boost = ident;
    boost.linear_pushforward = [ch, sh](finsler::Vec y) {
        return finsler::Vec{ch * y.t + sh * y.x, sh * y.t + ch * y.x};
    };
    const finsler::FinslerNorm norm = finsler::FinslerNorm::minkowski();
    const finsler::IsometryReport rep =
        finsler::isometry_check(boost, s.matrix, image, &norm, &norm);
    c.require(rep.stage1_max_deviation < 1e-12, "boost stage-1 deviation >= 1e-12");
    c.require(rep.stage2_chronology && rep.stage2_relation_d && rep.stage2_alexandrov,
              "boost stage 2 failed");
    c.require(rep.stage3_evaluated && rep.stage3_pass, "boost stage 3 failed");

    core::DistanceMatrix scaled(s.labels);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            scaled.set(i, j, core::ExtReal(2.0 * s.matrix.at(i, j).finite_value()));
        }
    }
    const finsler::IsometryReport scale_rep = finsler::isometry_check(ident, s.matrix, scaled);
    c.require(!scale_rep.stage1_pass && scale_rep.stage1_witness.has_value(),
              "scaling x2 not rejected with a witness");

    finsler::SampleBijection perm = ident;
    models::SplitMix64 rng(1091);
    for (std::size_t i = n; i > 1; --i) std::swap(perm.perm[i - 1], perm.perm[rng.next_u64() % i]);
    const finsler::IsometryReport perm_rep = finsler::isometry_check(perm, s.matrix, s.matrix);
    c.require(!perm_rep.stage1_pass && perm_rep.stage1_witness.has_value(),
              "random permutation not rejected with a witness");
}

void criterion_11_causal_sets(Check& c) {
    const models::SpacetimeModel mink = models::SpacetimeModel::minkowski({-3, 3, -3, 3});
    const double s = 1.0 / std::sqrt(2.0);
    const causets::Region diamond = causets::Region::diamond_region({-s, 0.0}, {s, 0.0});
    // A Poisson sprinkle at this density frequently contains order twins
    // (points with identical up- and down-sets), and no discrete d can
    // distinguish those. The axiom check is therefore asserted on the first
    // 20 seeds whose order is weakly distinguishing; for skipped seeds the
    // failure must be certified as a genuine twin, never a checker artifact.
    int accepted = 0;
    std::uint64_t seed = 0;
    int skipped = 0;
    while (accepted < 20 && seed < 200) {
        ++seed;
        const causets::CausalSet cs = causets::sprinkle(mink, diamond, 200.0, seed);
        c.require(cs.size() <= 300,
                  "sprinkle exceeded 300 events at seed " + std::to_string(seed));
        const core::DistanceMatrix d = causets::chain_distance_matrix(cs);
        c.require(core::check_reverse_triangle(d).pass(),
                  "reverse triangle failed at seed " + std::to_string(seed));
        const gates::AxiomReport ax = gates::lms_axiom_check(d);
        c.require(ax.finiteness.status == gates::ConditionStatus::Pass &&
                      ax.reverse_triangle.status == gates::ConditionStatus::Pass,
                  "finiteness/reverse-triangle axiom failed at seed " + std::to_string(seed));
        if (ax.weak_d_distinction.status == gates::ConditionStatus::Pass) {
            ++accepted;
            continue;
        }
        // Certify the twin: identical order rows and columns.
        ++skipped;
        c.require(ax.weak_d_distinction.witness.has_value(),
                  "weak distinction failed without witness at seed " + std::to_string(seed));
        if (ax.weak_d_distinction.witness) {
            const std::size_t ip = d.index_of(ax.weak_d_distinction.witness->p);
            const std::size_t iq = d.index_of(ax.weak_d_distinction.witness->q);
            bool twin = true;
            for (std::size_t r = 0; r < cs.size(); ++r) {
                if (cs.order.at(ip, r) != cs.order.at(iq, r) ||
                    cs.order.at(r, ip) != cs.order.at(r, iq)) {
                    twin = false;
                }
            }
            c.require(twin, "weak-distinction witness at seed " + std::to_string(seed) +
                                " is not an order twin: checker defect");
        }
    }
    std::printf("    distinguishing sprinkles: %d accepted, %d twin-bearing skipped\n",
                accepted, skipped);
    c.require(accepted == 20, "could not collect 20 distinguishing sprinkles");
    const causets::ScalingReport rep =
        causets::chain_scaling_probe({500.0, 2000.0, 8000.0}, 20, 4242);
    for (const causets::ScalingEntry& e : rep.entries) {
        std::printf("    density %.0f: median chain %.1f, median N %.0f, L/sqrt(N) %.3f\n",
                    e.density, e.median_chain, e.median_n, e.ratio);
    }
    c.require(rep.medians_strictly_increasing, "chain medians not strictly increasing");
    c.require(rep.ratios_in_bracket, "L/sqrt(N) outside [1.5, 2.2] at N >= 2000");
}

void criterion_12_determinism(Check& c) {
    const fs::path out1 = fs::temp_directory_path() / "dkit_accept_run1";
    const fs::path out2 = fs::temp_directory_path() / "dkit_accept_run2";
    fs::remove_all(out1);
    fs::remove_all(out2);
    const std::vector<std::string> pack = {
        "minkowski_gh.json",     "cylinder.json",       "slit_minkowski.json",
        "punctured.json",        "flat_finsler_randers.json",
        "causal_set_sprinkle.json", "scaling_probe.json", "fixture_f1.json",
    };
    for (const std::string& name : pack) {
        const std::string path = std::string(DKIT_SCENARIO_DIR "/") + name;
        const scenario::Scenario sc = scenario::parse_scenario(path);
        const scenario::RunResult r1 = scenario::run_scenario(sc, out1.string());
        const scenario::RunResult r2 = scenario::run_scenario(sc, out2.string());
        c.require(r1.exit_code == 0, name + ": first run exit " + std::to_string(r1.exit_code));
        c.require(r2.exit_code == 0, name + ": second run exit " + std::to_string(r2.exit_code));
        c.require(r1.files_written.size() == r2.files_written.size(),
                  name + ": differing file counts");
        for (std::size_t i = 0; i < r1.files_written.size(); ++i) {
            std::ifstream a(r1.files_written[i], std::ios::binary);
            std::ifstream b(r2.files_written[i], std::ios::binary);
            std::stringstream sa, sb;
            sa << a.rdbuf();
            sb << b.rdbuf();
            c.require(sa.str() == sb.str(),
                      name + ": report differs between runs: " + r1.files_written[i]);
        }
    }
}

struct Criterion {
    int id;
    const char* title;
    double time_budget_s;  // 0 = unbudgeted
    std::function<void(Check&)> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "Minkowski gate: consistent verdicts, exact_J contained, excess monotone", 10.0,
         criterion_1_minkowski_gate},
        {2, "Counterexample triad: cylinder, slit, punctured refuted as documented", 30.0,
         criterion_2_counterexample_triad},
        {3, "Predicate lattice fuzz: 1000 matrices, zero violations", 0.0,
         criterion_3_predicate_lattice_fuzz},
        {4, "Fixture F1: future fails with witness (a,b), past and weak pass", 0.0,
         criterion_4_fixture_f1},
        {5, "Topology: alexandrov subset of initial; 3-chain opens; discrete sample", 0.0,
         criterion_5_topology},
        {6, "Grid oracle: lower bound with gap ratio <= 0.6 from 64 to 128", 0.0,
         criterion_6_oracle_convergence},
        {7, "Busemann-Mayer recovery to stated tolerances", 5.0, criterion_7_busemann},
        {8, "Spray/exp probes: round trip, zero-section identity, order >= 3.5", 0.0,
         criterion_8_spray_probes},
        {9, "Quadraticity deficit: <= 1e-6 flat, strictly increasing in b", 0.0,
         criterion_9_quadraticity},
        {10, "Isometry: boost passes, scaling and permutation rejected", 0.0,
         criterion_10_isometry},
        {11, "Causal sets: axioms on 20 seeds, chain scaling in bracket", 0.0,
         criterion_11_causal_sets},
        {12, "Determinism: scenario pack re-runs byte-identical", 0.0,
         criterion_12_determinism},
    };

    int failed = 0;
    for (const Criterion& cr : criteria) {
        Check check;
        const auto t0 = Clock::now();
        try {
            cr.run(check);
        } catch (const std::exception& e) {
            check.failures.push_back(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        if (cr.time_budget_s > 0.0 && secs > cr.time_budget_s) {
            check.failures.push_back("runtime " + std::to_string(secs) + "s exceeds budget " +
                                     std::to_string(cr.time_budget_s) + "s");
        }
        if (check.failures.empty()) {
            std::printf("[PASS] criterion %2d (%.2fs): %s\n", cr.id, secs, cr.title);
        } else {
            ++failed;
            std::printf("[FAIL] criterion %2d (%.2fs): %s\n", cr.id, secs, cr.title);
            for (const std::string& f : check.failures) {
                std::printf("       - %s\n", f.c_str());
            }
        }
    }
    if (failed) std::printf("%d criterion(s) failed\n", failed);
    return failed == 0 ? 0 : 1;
}
