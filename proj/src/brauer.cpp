#include "clifq/brauer.hpp"

#include "clifq/errors.hpp"

#include <algorithm>
#include <sstream>

namespace clifq {

BrauerClass2::BrauerClass2(std::set<nt::Place> places) : ramified(std::move(places))
{
    if (ramified.size() % 2) throw DomainError("a Brauer class of Q ramifies at an even number of places");
}

std::string BrauerClass2::to_string() const
{
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& v : ramified) {
        os << (first ? "" : ", ") << v.to_string();
        first = false;
    }
    os << "}";
    return os.str();
}

BrauerClass2 class_of_quaternion(const Rational& a, const Rational& b)
{
    if (a == 0 || b == 0) throw DomainError("quaternion symbol with a zero entry");
    std::set<nt::Place> ram;
    for (const auto& v : nt::relevant_places({a, b}))
        if (nt::hilbert_symbol(a, b, v) == -1) ram.insert(v);
    return BrauerClass2(std::move(ram));
}

BrauerClass2 add(const BrauerClass2& c, const BrauerClass2& d)
{
    std::set<nt::Place> out;
    std::set_symmetric_difference(c.ramified.begin(), c.ramified.end(), d.ramified.begin(), d.ramified.end(),
                                  std::inserter(out, out.begin()));
    BrauerClass2 r(std::move(out));
    r.finite_field = c.finite_field && d.finite_field;
    return r;
}

int index(const BrauerClass2& c) { return c.is_trivial() ? 1 : 2; }

std::pair<Rational, Rational> quaternion_from_class(const BrauerClass2& c, long max_candidates)
{
    if (c.ramified.size() % 2) throw DomainError("class with an odd number of ramified places");
    std::vector<Integer> gens{Integer(-1)};
    for (const auto& v : c.ramified)
        if (!v.is_infinite()) gens.push_back(v.prime());
    int aux = 0;
    for (long p = 2; aux < 4; ++p) {
        if (!nt::is_prime(Integer(p))) continue;
        if (std::find(gens.begin(), gens.end(), Integer(p)) != gens.end()) continue;
        gens.push_back(Integer(p));
        ++aux;
    }
    std::vector<Integer> values;
    const size_t k = gens.size();
    for (size_t mask = 0; mask < (size_t{1} << k); ++mask) {
        Integer v = 1;
        for (size_t i = 0; i < k; ++i)
            if (mask >> i & 1) v *= gens[i];
        values.push_back(v);
    }
    std::sort(values.begin(), values.end(), [](const Integer& x, const Integer& y) {
        if (abs(x) != abs(y)) return abs(x) < abs(y);
        return x > y;
    });
    // pairs (values[i], values[j]) in shells of increasing max(i, j), lexicographic inside a shell
    long tried = 0;
    for (size_t m = 0; m < values.size(); ++m)
        for (size_t i = 0; i <= m; ++i)
            for (size_t j = 0; j <= m; ++j) {
                if (std::max(i, j) != m) continue;
                if (++tried > max_candidates)
                    throw BoundExceeded("quaternion realization search exhausted " + std::to_string(max_candidates) +
                                        " candidates");
                if (class_of_quaternion(Rational(values[i]), Rational(values[j])) == c)
                    return {Rational(values[i]), Rational(values[j])};
            }
    throw BoundExceeded("quaternion realization search exhausted its candidate set");
}

BrauerClass2 class_of_algebra(const StructureAlgebra& a)
{
    const Field& f = a.field();
    if (f.kind() == Field::Kind::PrimeField) {
        find_quaternion_basis(a);
        BrauerClass2 r;
        r.finite_field = true;
        return r;
    }
    if (f.kind() != Field::Kind::Rational) throw Unsupported("Brauer classes are computed over Q and F_p only");
    auto qb = find_quaternion_basis(a);
    return class_of_quaternion(qb.a.rational(), qb.b.rational());
}

} // namespace clifq
