/// @file causality_checks.cpp

#include "dkit/causality_checks.hpp"

#include <algorithm>

#include "dkit/distance_core.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dkit::checks {

using core::ext_approx_eq;
using core::ext_leq;
using core::ext_positive;
using core::ExtReal;

namespace {

inline bool rows_equal(const DistanceMatrix& d, std::size_t p, std::size_t q, double tol) {
    for (std::size_t r = 0; r < d.size(); ++r) {
        if (!ext_approx_eq(d.at(p, r), d.at(q, r), tol)) return false;
    }
    return true;
}

inline bool cols_equal(const DistanceMatrix& d, std::size_t p, std::size_t q, double tol) {
    for (std::size_t r = 0; r < d.size(); ++r) {
        if (!ext_approx_eq(d.at(r, p), d.at(r, q), tol)) return false;
    }
    return true;
}

// First r where d(q,r) > d(p,r): disproves d_q <= d_p.
inline std::optional<std::size_t> row_leq_fails_at(const DistanceMatrix& d, std::size_t q,
                                                   std::size_t p, double tol) {
    for (std::size_t r = 0; r < d.size(); ++r) {
        if (!ext_leq(d.at(q, r), d.at(p, r), tol)) return r;
    }
    return std::nullopt;
}

inline std::optional<std::size_t> col_leq_fails_at(const DistanceMatrix& d, std::size_t p,
                                                   std::size_t q, double tol) {
    for (std::size_t r = 0; r < d.size(); ++r) {
        if (!ext_leq(d.at(r, p), d.at(r, q), tol)) return r;
    }
    return std::nullopt;
}

Witness make_witness(const DistanceMatrix& d, std::size_t p, std::size_t q) {
    return {d.labels()[p], d.labels()[q], ""};
}

Witness make_witness(const DistanceMatrix& d, std::size_t p, std::size_t q, std::size_t r) {
    return {d.labels()[p], d.labels()[q], d.labels()[r]};
}

std::vector<std::size_t> subject_list(const DistanceMatrix& d,
                                      const std::vector<std::size_t>* subjects) {
    if (subjects) return *subjects;
    std::vector<std::size_t> all(d.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return all;
}

}  // namespace

bool CausalityReport::lattice_consistent() const {
    if (d_distinction.evaluated && future_or_past_d_distinction.evaluated &&
        d_distinction.pass && !future_or_past_d_distinction.pass) {
        return false;
    }
    if (future_or_past_d_distinction.evaluated && weak_d_distinction.evaluated &&
        future_or_past_d_distinction.pass && !weak_d_distinction.pass) {
        return false;
    }
    if (d_distinction.evaluated && future_d_distinction.evaluated &&
        past_d_distinction.evaluated &&
        d_distinction.pass != (future_d_distinction.pass && past_d_distinction.pass)) {
        return false;
    }
    if (future_or_past_d_distinction.evaluated && future_d_distinction.evaluated &&
        past_d_distinction.evaluated &&
        future_or_past_d_distinction.pass !=
            (future_d_distinction.pass || past_d_distinction.pass)) {
        return false;
    }
    if (d_reflectivity.evaluated && future_d_reflectivity.evaluated &&
        past_d_reflectivity.evaluated &&
        d_reflectivity.pass != (future_d_reflectivity.pass && past_d_reflectivity.pass)) {
        return false;
    }
    if (strong_future_reflectivity.evaluated && future_d_reflectivity.evaluated &&
        strong_future_reflectivity.pass && !future_d_reflectivity.pass) {
        return false;
    }
    if (strong_past_reflectivity.evaluated && past_d_reflectivity.evaluated &&
        strong_past_reflectivity.pass && !past_d_reflectivity.pass) {
        return false;
    }
    if (causal_continuity.evaluated && weak_d_distinction.evaluated &&
        d_reflectivity.evaluated &&
        causal_continuity.pass != (weak_d_distinction.pass && d_reflectivity.pass)) {
        return false;
    }
    return true;
}

namespace serial {

PairComparisons pair_comparisons(const DistanceMatrix& d, double tol) {
    PairComparisons pc{Relation(d.labels()), Relation(d.labels())};
    const std::size_t n = d.size();
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            pc.row_dominance.set(p, q, !row_leq_fails_at(d, q, p, tol).has_value());
            pc.col_dominance.set(p, q, !col_leq_fails_at(d, p, q, tol).has_value());
        }
    }
    return pc;
}

}  // namespace serial

PairComparisons pair_comparisons(const DistanceMatrix& d, double tol) {
    PairComparisons pc{Relation(d.labels()), Relation(d.labels())};
    const long long n = static_cast<long long>(d.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long long p = 0; p < n; ++p) {
        for (long long q = 0; q < n; ++q) {
            const auto sp = static_cast<std::size_t>(p);
            const auto sq = static_cast<std::size_t>(q);
            pc.row_dominance.set(sp, sq, !row_leq_fails_at(d, sq, sp, tol).has_value());
            pc.col_dominance.set(sp, sq, !col_leq_fails_at(d, sp, sq, tol).has_value());
        }
    }
    return pc;
}

CausalityReport distinction_report(const DistanceMatrix& d, double tol,
                                   const std::vector<std::size_t>* subjects) {
    CausalityReport rep;
    rep.tol = tol;
    const std::vector<std::size_t> subs = subject_list(d, subjects);
    const std::size_t m = subs.size();

    std::optional<Witness> future_w, past_w, weak_w;
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a + 1; b < m; ++b) {
            const std::size_t p = subs[a], q = subs[b];
            const bool re = !future_w || !weak_w ? rows_equal(d, p, q, tol) : false;
            const bool ce = !past_w || !weak_w ? cols_equal(d, p, q, tol) : false;
            if (re && !future_w) future_w = make_witness(d, p, q);
            if (ce && !past_w) past_w = make_witness(d, p, q);
            if (!weak_w && re && ce) weak_w = make_witness(d, p, q);
        }
    }

    rep.future_d_distinction = {true, !future_w.has_value(), future_w};
    rep.past_d_distinction = {true, !past_w.has_value(), past_w};
    rep.weak_d_distinction = {true, !weak_w.has_value(), weak_w};
    const bool dd = rep.future_d_distinction.pass && rep.past_d_distinction.pass;
    rep.d_distinction = {true, dd, dd ? std::nullopt : (future_w ? future_w : past_w)};
    const bool fop = rep.future_d_distinction.pass || rep.past_d_distinction.pass;
    rep.future_or_past_d_distinction = {true, fop, fop ? std::nullopt : future_w};
    return rep;
}

CausalityReport reflectivity_report(const DistanceMatrix& d,
                                    const Relation* ground_truth_chron, double tol,
                                    const std::vector<std::size_t>* subjects) {
    CausalityReport rep;
    rep.tol = tol;
    const std::size_t n = d.size();
    const PairComparisons pc = pair_comparisons(d, tol);
    const Relation chron =
        ground_truth_chron ? *ground_truth_chron : core::chronology(d, tol);
    rep.strong_used_ground_truth = ground_truth_chron != nullptr;
    const std::vector<std::size_t> subs = subject_list(d, subjects);

    std::optional<Witness> future_w, past_w, strong_fut_w, strong_past_w;
    for (std::size_t p : subs) {
        for (std::size_t q : subs) {
            if (p == q) continue;
            const bool a = pc.col_dominance.at(p, q);  // d^p <= d^q
            const bool b = pc.row_dominance.at(p, q);  // d_q <= d_p
            if (a && !b && !future_w) {
                future_w = make_witness(d, p, q, *row_leq_fails_at(d, q, p, tol));
            }
            if (b && !a && !past_w) {
                past_w = make_witness(d, p, q, *col_leq_fails_at(d, p, q, tol));
            }
            if (!strong_past_w && !a) {
                // I^+(p) contains I^+(q)?
                bool incl = true;
                for (std::size_t r = 0; r < n && incl; ++r) {
                    if (chron.at(q, r) && !chron.at(p, r)) incl = false;
                }
                if (incl) {
                    strong_past_w = make_witness(d, p, q, *col_leq_fails_at(d, p, q, tol));
                }
            }
            if (!strong_fut_w && !b) {
                // I^-(p) inside I^-(q)?
                bool incl = true;
                for (std::size_t r = 0; r < n && incl; ++r) {
                    if (chron.at(r, p) && !chron.at(r, q)) incl = false;
                }
                if (incl) {
                    strong_fut_w = make_witness(d, p, q, *row_leq_fails_at(d, q, p, tol));
                }
            }
        }
    }

    rep.future_d_reflectivity = {true, !future_w.has_value(), future_w};
    rep.past_d_reflectivity = {true, !past_w.has_value(), past_w};
    const bool refl = rep.future_d_reflectivity.pass && rep.past_d_reflectivity.pass;
    rep.d_reflectivity = {true, refl, refl ? std::nullopt : (future_w ? future_w : past_w)};
    rep.strong_future_reflectivity = {true, !strong_fut_w.has_value(), strong_fut_w};
    rep.strong_past_reflectivity = {true, !strong_past_w.has_value(), strong_past_w};
    return rep;
}

CausalityReport causality_report(const DistanceMatrix& d,
                                 const Relation* ground_truth_chron, double tol,
                                 const std::vector<std::size_t>* subjects) {
    CausalityReport rep = distinction_report(d, tol, subjects);
    CausalityReport refl = reflectivity_report(d, ground_truth_chron, tol, subjects);
    rep.future_d_reflectivity = refl.future_d_reflectivity;
    rep.past_d_reflectivity = refl.past_d_reflectivity;
    rep.d_reflectivity = refl.d_reflectivity;
    rep.strong_future_reflectivity = refl.strong_future_reflectivity;
    rep.strong_past_reflectivity = refl.strong_past_reflectivity;
    rep.strong_used_ground_truth = refl.strong_used_ground_truth;
    const bool cc = rep.weak_d_distinction.pass && rep.d_reflectivity.pass;
    rep.causal_continuity = {
        true, cc,
        cc ? std::nullopt
           : (rep.weak_d_distinction.witness ? rep.weak_d_distinction.witness
                                             : rep.d_reflectivity.witness)};
    return rep;
}

Relation relation_D(const DistanceMatrix& d, double tol) {
    const PairComparisons pc = pair_comparisons(d, tol);
    Relation out(d.labels());
    for (std::size_t p = 0; p < d.size(); ++p) {
        for (std::size_t q = 0; q < d.size(); ++q) {
            out.set(p, q, pc.row_dominance.at(p, q) && pc.col_dominance.at(p, q));
        }
    }
    return out;
}

Eq1Relations eq1_relations(const DistanceMatrix& d, double tol,
                           const std::vector<std::size_t>* subjects) {
    const PairComparisons pc = pair_comparisons(d, tol);
    Eq1Relations out{pc.row_dominance, pc.col_dominance, false, std::nullopt};
    out.equal = true;
    const std::vector<std::size_t> subs = subject_list(d, subjects);
    for (std::size_t p : subs) {
        for (std::size_t q : subs) {
            if (out.r_future.at(p, q) != out.r_past.at(p, q)) {
                out.equal = false;
                out.mismatch = Witness{d.labels()[p], d.labels()[q], ""};
                return out;
            }
        }
    }
    return out;
}

CausalityReport causality_report(const models::SampleSpace& sample, double tol) {
    std::vector<std::size_t> core_subjects(sample.core_count);
    for (std::size_t i = 0; i < core_subjects.size(); ++i) core_subjects[i] = i;
    return causality_report(sample.matrix, nullptr, tol, &core_subjects);
}

InclusionCheck inclusion_equivalence_check(const models::SampleSpace& sample, double tol) {
    const DistanceMatrix& d = sample.matrix;
    const std::size_t n = d.size();
    const Relation chron = core::chronology(d, tol);  // exact ground truth: d is exact_d
    const PairComparisons pc = pair_comparisons(d, tol);

    InclusionCheck out;
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            if (p == q) continue;
            ++out.pairs_checked;
            bool incl = true;  // I^+(q) n S inside I^+(p) n S
            for (std::size_t r = 0; r < n && incl; ++r) {
                if (chron.at(q, r) && !chron.at(p, r)) incl = false;
            }
            const bool cmp = pc.row_dominance.at(p, q);  // d_q <= d_p
            if (cmp && !incl) ++out.exact_direction_failures;
            if (incl && !cmp) {
                ++out.surrogate_direction_failures;
                if (out.surrogate_witnesses.size() < 8) {
                    out.surrogate_witnesses.push_back(
                        {d.labels()[p], d.labels()[q], "sampling artifact"});
                }
            }
        }
    }
    return out;
}

}  // namespace dkit::checks
