/// @file distance_core.hpp
/// @brief The chronology relation I = {d > 0}, chronological diamonds, and the
///        reverse-triangle-inequality scanner. Everything here is a pure
///        function of a DistanceMatrix; the triple scan is the first of the
///        OpenMP kernels and keeps a serial reference twin for testing.

#pragma once

#include <string>
#include <vector>

#include "dkit/distance_matrix.hpp"

namespace dkit::core {

/// One reverse-triangle violation: d(p,r) + tol < d(p,q) + d(q,r) on a
/// chronologically related triple p << q << r.
struct TripleViolation {
    std::size_t p, q, r;
    ExtReal d_pr, d_pq, d_qr;
};

struct ViolationReport {
    std::vector<TripleViolation> violations;  // sorted lexicographically by (p,q,r)
    bool pass() const noexcept { return violations.empty(); }
};

/// I = {(p,q): d(p,q) > tol or d(p,q) = +inf}.
Relation chronology(const DistanceMatrix& d, double tol = kDefaultTol);

/// I(p,q) = {r: d(p,r) > 0 and d(r,q) > 0} over the sampled ground set.
std::vector<std::size_t> diamond(const DistanceMatrix& d, std::size_t p, std::size_t q,
                                 double tol = kDefaultTol);
std::vector<std::string> diamond(const DistanceMatrix& d, const std::string& p,
                                 const std::string& q, double tol = kDefaultTol);

/// Exhaustive O(n^3) scan of ordered triples with both gaps chronological.
ViolationReport check_reverse_triangle(const DistanceMatrix& d, double tol = kDefaultTol);

namespace serial {
/// Reference implementation of the triple scan, kept for testing the parallel
/// kernel against.
ViolationReport check_reverse_triangle(const DistanceMatrix& d, double tol = kDefaultTol);
}  // namespace serial

}  // namespace dkit::core
