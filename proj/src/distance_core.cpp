/// @file distance_core.cpp

#include "dkit/distance_core.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dkit::core {

Relation chronology(const DistanceMatrix& d, double tol) {
    const std::size_t n = d.size();
    Relation r(d.labels());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            r.set(i, j, ext_positive(d.at(i, j), tol));
        }
    }
    return r;
}

std::vector<std::size_t> diamond(const DistanceMatrix& d, std::size_t p, std::size_t q,
                                 double tol) {
    if (p >= d.size() || q >= d.size()) throw InputError("diamond: index out of range");
    std::vector<std::size_t> out;
    for (std::size_t r = 0; r < d.size(); ++r) {
        if (ext_positive(d.at(p, r), tol) && ext_positive(d.at(r, q), tol)) {
            out.push_back(r);
        }
    }
    return out;
}

std::vector<std::string> diamond(const DistanceMatrix& d, const std::string& p,
                                 const std::string& q, double tol) {
    std::vector<std::string> out;
    for (std::size_t r : diamond(d, d.index_of(p), d.index_of(q), tol)) {
        out.push_back(d.labels()[r]);
    }
    return out;
}

namespace {

// Violation test on one triple; gaps must both be chronological.
inline bool triple_violates(const DistanceMatrix& d, std::size_t p, std::size_t q,
                            std::size_t r, double tol) {
    const ExtReal d_pq = d.at(p, q);
    const ExtReal d_qr = d.at(q, r);
    if (!ext_positive(d_pq, tol) || !ext_positive(d_qr, tol)) return false;
    const ExtReal d_pr = d.at(p, r);
    const ExtReal sum = d_pq + d_qr;
    if (d_pr.is_infinite()) return false;
    if (sum.is_infinite()) return true;
    return d_pr.finite_value() + tol < sum.finite_value();
}

}  // namespace

namespace serial {

ViolationReport check_reverse_triangle(const DistanceMatrix& d, double tol) {
    ViolationReport report;
    const std::size_t n = d.size();
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            if (!ext_positive(d.at(p, q), tol)) continue;
            for (std::size_t r = 0; r < n; ++r) {
                if (triple_violates(d, p, q, r, tol)) {
                    report.violations.push_back(
                        {p, q, r, d.at(p, r), d.at(p, q), d.at(q, r)});
                }
            }
        }
    }
    return report;
}

}  // namespace serial

ViolationReport check_reverse_triangle(const DistanceMatrix& d, double tol) {
    const std::size_t n = d.size();
    ViolationReport report;
#ifdef _OPENMP
    const int threads = omp_get_max_threads();
    std::vector<std::vector<TripleViolation>> local(threads);
#pragma omp parallel for schedule(dynamic, 4)
    for (long long pp = 0; pp < static_cast<long long>(n); ++pp) {
        const std::size_t p = static_cast<std::size_t>(pp);
        std::vector<TripleViolation>& mine = local[omp_get_thread_num()];
        for (std::size_t q = 0; q < n; ++q) {
            if (!ext_positive(d.at(p, q), tol)) continue;
            for (std::size_t r = 0; r < n; ++r) {
                if (triple_violates(d, p, q, r, tol)) {
                    mine.push_back({p, q, r, d.at(p, r), d.at(p, q), d.at(q, r)});
                }
            }
        }
    }
    for (auto& chunk : local) {
        report.violations.insert(report.violations.end(), chunk.begin(), chunk.end());
    }
    std::sort(report.violations.begin(), report.violations.end(),
              [](const TripleViolation& a, const TripleViolation& b) {
                  return std::tie(a.p, a.q, a.r) < std::tie(b.p, b.q, b.r);
              });
#else
    report = serial::check_reverse_triangle(d, tol);
#endif
    return report;
}

}  // namespace dkit::core
