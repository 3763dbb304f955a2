#include <doctest.h>

#include "clifq/brauer.hpp"
#include "clifq/errors.hpp"

#include <random>

using namespace clifq;
using nt::Place;

namespace {

const Field Q = Field::rationals();

BrauerClass2 cls(std::initializer_list<const char*> names)
{
    std::set<Place> s;
    for (const char* n : names) s.insert(Place::parse(n));
    return BrauerClass2(s);
}

Rational nonzero(std::mt19937_64& rng, long bound)
{
    std::uniform_int_distribution<long> d(-bound, bound);
    long x = 0;
    while (!x) x = d(rng);
    return Rational(x);
}

} // namespace

TEST_CASE("class of quaternion examples")
{
    CHECK(class_of_quaternion(1, 7).is_trivial());
    CHECK(class_of_quaternion(-1, -1) == cls({"2", "inf"}));
    CHECK(class_of_quaternion(-1, 3) == cls({"2", "3"}));
    CHECK_THROWS_AS(class_of_quaternion(0, 3), DomainError);
    CHECK(class_of_quaternion(-1, -1).to_string() == "{2, inf}");
}

TEST_CASE("class arithmetic")
{
    auto a = cls({"2", "inf"}), b = cls({"3", "inf"});
    CHECK(add(a, a).is_trivial());
    CHECK(add(a, b) == cls({"2", "3"}));
    std::mt19937_64 rng(11);
    for (int i = 0; i < 50; ++i) {
        auto x = class_of_quaternion(nonzero(rng, 50), nonzero(rng, 50));
        auto y = class_of_quaternion(nonzero(rng, 50), nonzero(rng, 50));
        auto z = class_of_quaternion(nonzero(rng, 50), nonzero(rng, 50));
        CHECK(add(add(x, y), z) == add(x, add(y, z)));
        CHECK(add(x, y) == add(y, x));
    }
    CHECK(index(BrauerClass2{}) == 1);
    CHECK(index(cls({"2", "inf"})) == 2);
    CHECK(index(cls({"3", "5"})) == 2);
    CHECK_THROWS_AS(cls({"2"}), DomainError);
}

TEST_CASE("class properties on random pairs")
{
    std::mt19937_64 rng(101);
    for (int i = 0; i < 1000; ++i) {
        auto c = class_of_quaternion(nonzero(rng, 10000), nonzero(rng, 10000));
        CHECK(c.ramified.size() % 2 == 0);
    }
    for (int i = 0; i < 100; ++i) {
        Rational a = nonzero(rng, 300), b = nonzero(rng, 300), b2 = nonzero(rng, 300);
        CHECK(add(class_of_quaternion(a, b), class_of_quaternion(a, b2)) == class_of_quaternion(a, b * b2));
    }
    for (int i = 0; i < 50; ++i) {
        Rational a = nonzero(rng, 200), b = nonzero(rng, 200);
        CHECK(class_of_quaternion(a, b) == class_of_quaternion(a, -a * b));
        auto h = quaternion(Scalar(Q, a), Scalar(Q, b));
        CHECK(class_of_quaternion(a, b).is_trivial() == is_split_quaternion(h));
    }
}

TEST_CASE("realization")
{
    CHECK(quaternion_from_class(BrauerClass2{}) == std::pair<Rational, Rational>{1, 1});
    CHECK(quaternion_from_class(cls({"2", "inf"})) == std::pair<Rational, Rational>{-1, -1});
    CHECK(quaternion_from_class(cls({"2", "3"})) == std::pair<Rational, Rational>{-1, 3});
    std::mt19937_64 rng(5);
    for (int i = 0; i < 60; ++i) {
        auto c = class_of_quaternion(nonzero(rng, 100), nonzero(rng, 100));
        auto [a, b] = quaternion_from_class(c);
        CHECK(class_of_quaternion(a, b) == c);
        CHECK((index(c) == 1) == is_split_quaternion(quaternion(Scalar(Q, a), Scalar(Q, b))));
    }
    CHECK_THROWS_AS(quaternion_from_class(cls({"3", "5", "7", "11", "13", "17"}), 10), BoundExceeded);
}

TEST_CASE("class of algebra")
{
    CHECK(class_of_algebra(matrix_algebra(Q, 2)).is_trivial());
    CHECK(class_of_algebra(quaternion(Scalar::from_int(Q, -1), Scalar::from_int(Q, 3))) == cls({"2", "3"}));
    Field f5 = Field::prime_field(5);
    auto c = class_of_algebra(quaternion(Scalar::from_int(f5, 2), Scalar::from_int(f5, 3)));
    CHECK(c.finite_field);
    CHECK(c.is_trivial());
}
