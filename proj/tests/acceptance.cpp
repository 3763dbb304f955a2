// One line per acceptance criterion; exit status 1 when any criterion fails.

#include "clifq/errors.hpp"
#include "clifq/verify.hpp"

#include <cstdio>
#include <string>
#include <vector>

using namespace clifq;

namespace {

struct Criterion {
    int id;
    std::string title;
    std::vector<std::string> suites;
    size_t min_cases;     // total cases across the suites
    double time_limit_s;  // 0: no limit
};

const std::vector<Criterion> criteria{
    {1, "Clifford dimensions 2^(n-1), 200 forms over Q and F_3..F_11", {"clifford-dims"}, 200, 30.0},
    {2, "center law, 200 forms", {"center-law"}, 200, 0},
    {3, "discriminant additivity, 100 even-rank pairs", {"discriminant-additivity"}, 100, 0},
    {4, "[C0+] = [C0-] on 50 rank-4 trivial-discriminant forms", {"components-equal"}, 50, 0},
    {5, "e2 additivity, 50 pairs of rank-4 I^2(Q) forms", {"e2-additivity"}, 50, 60.0},
    {6, "sum isomorphism, all rank pairs with total <= 6 over Q and F_3", {"sum-isomorphism"}, 30, 0},
    {7, "metabolic splitting, hyperbolic ranks 2, 4, 6", {"metabolic-splitting"}, 24, 0},
    {8, "hyperbolic model Phi0 bijective for r <= 3", {"hyperbolic-model"}, 12, 0},
    {9, "norm round trip, 20 quaternions", {"norm-roundtrip"}, 20, 0},
    {10, "pfaffian round trip, 10 biquaternions", {"pfaffian-roundtrip"}, 10, 0},
    {11, "surjectivity, all 32 even subsets of {2,3,5,7,11,inf}", {"surjectivity"}, 32, 120.0},
    {12, "Hilbert product formula, 1000 pairs", {"hilbert-product"}, 1000, 0},
    {13, "Milnor residues, 20 random + 10 curated forms over Q(t)", {"milnor-residues"}, 30, 0},
    {14, "Dedekind layer over Z[sqrt(-5)]", {"dedekind"}, 185, 0},
};

} // namespace

int main(int argc, char** argv)
{
    const unsigned long seed = argc > 1 ? std::stoul(argv[1]) : 0;
    int failed = 0;
    for (const auto& c : criteria) {
        size_t cases = 0, failures = 0;
        double seconds = 0;
        std::string note;
        for (const auto& s : c.suites) {
            try {
                auto r = run_suite(s, seed, 1);
                cases += r.cases;
                failures += r.failures.size();
                seconds += r.wall_seconds;
                if (!r.failures.empty() && note.empty()) note = "case " + std::to_string(r.failures[0].index) + ": " + r.failures[0].witness;
            } catch (const std::exception& e) {
                ++failures;
                note = e.what();
            }
        }
        const bool time_ok = c.time_limit_s == 0 || seconds < c.time_limit_s;
        const bool ok = failures == 0 && cases >= c.min_cases && time_ok;
        if (!ok) ++failed;
        std::printf("%s AC-%02d %s: %zu cases, %zu failures, %.2f s", ok ? "PASS" : "FAIL", c.id, c.title.c_str(), cases,
                    failures, seconds);
        if (c.time_limit_s > 0) std::printf(" (limit %.0f s)", c.time_limit_s);
        if (cases < c.min_cases) std::printf(" [expected at least %zu cases]", c.min_cases);
        if (!note.empty()) std::printf(" [%s]", note.c_str());
        std::printf("\n");
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed ? 1 : 0;
}
