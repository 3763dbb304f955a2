#include <doctest.h>

#include "clifq/clifford.hpp"
#include "clifq/errors.hpp"
#include "clifq/io.hpp"
#include "clifq/verify.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace clifq;
using io::json;

namespace {

std::string tmp_path(const std::string& name) { return "/tmp/clifq_test_" + name; }

void write(const std::string& path, const std::string& text)
{
    std::ofstream o(path);
    o << text;
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("scalars serialize as strings")
{
    CHECK(io::to_json(Scalar(Field::rationals(), Rational(-3, 4))) == "-3/4");
    CHECK(io::to_json(Scalar::from_int(Field::prime_field(7), 10)) == "3 mod 7");
    const Field K = Field::quadratic(-5);
    auto x = Scalar::quadratic(K, Rational(1, 2), 3);
    CHECK(io::scalar_from_json(K, io::to_json(x)) == x);
    CHECK(io::scalar_from_json(Field::rationals(), json(5)) == Scalar::from_int(Field::rationals(), 5));
    CHECK_THROWS_AS(io::scalar_from_json(Field::rationals(), json(true)), ParseError);
}

TEST_CASE("form round trip is byte identical")
{
    const Field Q = Field::rationals();
    for (const auto& q : {DiagonalForm::of_ints(Q, {1, -2, 3}).to_form(), hyperbolic(Q, 2),
                          DiagonalForm::of_ints(Field::prime_field(5), {1, 2}).to_form()}) {
        std::string text = io::dump(io::to_json(q));
        write(tmp_path("form.json"), text);
        io::convert(tmp_path("form.json"), tmp_path("form2.json"), "json");
        CHECK(slurp(tmp_path("form2.json")) == text);
        auto back = io::form_from_json(io::parse(text));
        CHECK(back.gram == q.gram);
        CHECK(back.value_label == "trivial");
    }
    write(tmp_path("loose.json"), R"({"gram": [[1, 0], [0, "-1/2"]], "base": "Q"})");
    io::convert(tmp_path("loose.json"), tmp_path("canon.json"), "json");
    std::string canon = slurp(tmp_path("canon.json"));
    write(tmp_path("canon_in.json"), canon);
    io::convert(tmp_path("canon_in.json"), tmp_path("canon2.json"), "json");
    CHECK(slurp(tmp_path("canon2.json")) == canon);
}

TEST_CASE("malformed input reports a location")
{
    auto expect = [](const std::string& text, const std::string& fragment) {
        try {
            io::form_from_json(io::parse(text));
            FAIL("no error for " << text);
        } catch (const ParseError& e) {
            CHECK_MESSAGE(std::string(e.what()).find(fragment) != std::string::npos, e.what());
        }
    };
    expect(R"({"base": "Q", "gram": [[1, 0], [0]]})", "/gram/1");
    expect(R"({"base": "Q", "gram": [[1, 2], [3, 1]]})", "symmetric");
    expect(R"({"base": "Q", "gram": [[1, "x"], ["x", 1]]})", "/gram/0/1");
    expect(R"({"gram": [[1]]})", "base");
    expect(R"({"base": "Q", "gram": [[1]],})", ":1:");
    expect("{\n  \"base\": \"Q\",\n  \"gram\": [[1]\n}", ":4:");
}

TEST_CASE("algebra, Brauer and ideal round trips")
{
    const Field Q = Field::rationals();
    auto c = even_clifford(DiagonalForm::of_ints(Q, {1, -2, 3, 5}));
    auto a = io::algebra_from_json(io::parse(io::dump(io::to_json(c.algebra))));
    CHECK(a.dense_table() == c.algebra.dense_table());
    CHECK(a.labels() == c.algebra.labels());
    auto h = quaternion(Scalar::from_int(Q, -1), Scalar::from_int(Q, 3));
    std::string t = io::dump(io::to_json(h));
    write(tmp_path("alg.json"), t);
    io::convert(tmp_path("alg.json"), tmp_path("alg2.json"), "json");
    CHECK(slurp(tmp_path("alg2.json")) == t);
    io::convert(tmp_path("alg.json"), tmp_path("alg.txt"), "table");
    CHECK(slurp(tmp_path("alg.txt")).find("dimension 4") != std::string::npos);
    CHECK_THROWS_AS(io::algebra_from_json(io::parse(R"({"dim": 2, "labels": ["1", "x"], "table": [], "base": "Q"})")), ParseError);

    auto b = class_of_quaternion(-1, -1);
    CHECK(io::brauer_from_json(io::to_json(b)) == b);
    CHECK(io::to_json(b).dump() == R"({"ramified":["2","inf"]})");
    CHECK_THROWS_AS(io::brauer_from_json(io::parse(R"({"ramified": ["2"]})")), ParseError);

    QuadOrder o(-5);
    auto p2 = primes_above(o, 2).front();
    CHECK(io::ideal_from_json(io::to_json(p2)) == p2);
    auto hq = hyperbolic_ideal_form({FracIdeal::unit(o), p2}, primes_above(o, 3)[0]);
    std::string ht = io::dump(io::to_json(hq));
    auto back = io::ideal_form_from_json(io::parse(ht));
    CHECK(back.coeffs == hq.coeffs);
    CHECK(back.gram == hq.gram);
    CHECK(back.value == hq.value);
    CHECK(io::detect_kind(io::parse(ht)) == io::Kind::IdealForm);
    CHECK(io::render_table(io::parse(ht)).find("rank 4") != std::string::npos);
}

TEST_CASE("suites are deterministic and named")
{
    CHECK(suites().size() >= 14);
    auto a = run_suite("e2-additivity", 42, 1);
    auto b = run_suite("e2-additivity", 42, 4);
    CHECK(io::dump(to_json(a)) == io::dump(to_json(b)));
    CHECK(a.passed());
    auto c = run_suite("clifford-dims", 42, 1);
    CHECK(c.cases == 200);
    CHECK(c.failures.empty());
    CHECK_THROWS_AS(run_suite("nonexistent", 0, 1), UsageError);
}
