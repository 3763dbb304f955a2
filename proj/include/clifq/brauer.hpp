#pragma once

#include "clifq/algebras.hpp"

#include <set>
#include <string>
#include <utility>

namespace clifq {

/// A class in Br(Q)[2], stored as its (even) set of ramified places.
/// Over F_p the Brauer group is trivial; such classes carry
/// `finite_field = true` and an empty ramification set.
struct BrauerClass2 {
    std::set<nt::Place> ramified;
    bool finite_field = false;

    BrauerClass2() = default;
    explicit BrauerClass2(std::set<nt::Place> places);

    bool is_trivial() const { return ramified.empty(); }
    std::string to_string() const;
    bool operator==(const BrauerClass2& o) const { return ramified == o.ramified; }
};

/// Places v with (a, b)_v = -1.
BrauerClass2 class_of_quaternion(const Rational& a, const Rational& b);
/// Sum in Br(Q)[2]: symmetric difference.
BrauerClass2 add(const BrauerClass2& c, const BrauerClass2& d);
/// 1 when the class is trivial, else 2.
int index(const BrauerClass2& c);

/// First pair (a, b) whose quaternion algebra has class c. Candidates are
/// products of -1, the ramified primes and a few auxiliary primes, sorted by
/// |v| with positive first; pairs are visited in shells of growing
/// max(pos(a), pos(b)), lexicographically inside a shell.
std::pair<Rational, Rational> quaternion_from_class(const BrauerClass2& c, long max_candidates = 10000);

/// Class of a 4-dimensional central simple algebra over Q (or F_p).
BrauerClass2 class_of_algebra(const StructureAlgebra& a);

} // namespace clifq
