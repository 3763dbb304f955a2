// clifq: command-line front end.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 bound exceeded.

#include "clifq/clifford.hpp"
#include "clifq/dedekind.hpp"
#include "clifq/errors.hpp"
#include "clifq/exceptional.hpp"
#include "clifq/invariants.hpp"
#include "clifq/io.hpp"
#include "clifq/verify.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <thread>

using namespace clifq;
using io::json;

namespace {

struct Options {
    bool json_out = false;
    // form input
    std::string form_file;
    std::string entries;
    std::string base = "Q";
    // second form (sum-check)
    std::string form_file2;
    std::string entries2;
    // algebra input
    std::string algebra_file;
    // scalars
    std::vector<std::string> args;
    std::string ramified;
    // dedekind
    long d = -5;
    std::string lattice = "O";
    std::string value = "O";
    std::string ideal_form_file;
    // verify / convert
    unsigned long seed = 0;
    size_t jobs = 1;
    bool timing = false;
    bool list = false;
    std::vector<std::string> suite_names;
    std::string in_path, out_path, kind = "json";
};

int exit_code = 0;

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep))
        if (!cur.empty()) out.push_back(cur);
    return out;
}

DiagonalForm read_form(const std::string& file, const std::string& entries, const std::string& base)
{
    if (!file.empty()) return diagonal_of(io::form_from_json(io::read_file(file)));
    if (entries.empty()) throw UsageError("give a form with --form FILE or --entries a,b,...");
    const Field f = Field::parse(base);
    std::vector<Scalar> e;
    for (const auto& x : split(entries, ',')) e.push_back(Scalar::parse(f, x));
    return DiagonalForm(f, e);
}

DiagonalForm form_of(const Options& o) { return read_form(o.form_file, o.entries, o.base); }

Scalar arg(const Options& o, size_t i)
{
    if (o.args.size() <= i) throw UsageError("missing scalar argument " + std::to_string(i + 1));
    return Scalar::parse(Field::parse(o.base), o.args[i]);
}

BrauerClass2 parse_places(const std::string& s)
{
    std::set<nt::Place> p;
    for (const auto& x : split(s, ',')) p.insert(nt::Place::parse(x));
    if (p.size() % 2) throw UsageError("a class needs an even number of ramified places");
    return BrauerClass2(p);
}

// "O", "p2", "p3,1", "p2^3", products joined by '*'
FracIdeal parse_ideal(const QuadOrder& o, const std::string& s)
{
    FracIdeal out = FracIdeal::unit(o);
    for (const auto& factor : split(s, '*')) {
        if (factor == "O") continue;
        std::string f = factor;
        int e = 1;
        if (auto k = f.find('^'); k != std::string::npos) {
            e = std::stoi(f.substr(k + 1));
            f = f.substr(0, k);
        }
        if (f.empty() || f[0] != 'p') throw UsageError("bad ideal \"" + factor + "\"");
        size_t which = 1;
        if (auto k = f.find(','); k != std::string::npos) {
            which = std::stoul(f.substr(k + 1));
            f = f.substr(0, k);
        }
        long p = std::stol(f.substr(1));
        auto ps = primes_above(o, p);
        if (which < 1 || which > ps.size())
            throw UsageError("no prime \"" + factor + "\" (" + std::to_string(ps.size()) + " primes above " + std::to_string(p) + ")");
        out = out * ps[which - 1].pow(e);
    }
    return out;
}

void emit(const Options& o, const json& j, const std::string& text)
{
    if (o.json_out) std::cout << io::dump(j);
    else std::cout << text << (text.empty() || text.back() == '\n' ? "" : "\n");
}

void check(bool ok) { if (!ok && exit_code == 0) exit_code = 1; }

// ------------------------------------------------------------------ qf

void qf_diag(const Options& o)
{
    auto q = form_of(o);
    emit(o, io::to_json(q), q.to_string());
}

void qf_witt(const Options& o)
{
    auto w = witt_decompose(form_of(o));
    json j{{"witt_index", w.witt_index}, {"anisotropic_kernel", io::to_json(w.anisotropic_kernel)}};
    emit(o, j, "witt index " + std::to_string(w.witt_index) + ", anisotropic kernel " + w.anisotropic_kernel.to_string());
}

void qf_disc(const Options& o)
{
    auto d = signed_discriminant(form_of(o));
    emit(o, json{{"signed_discriminant", d.to_string()}}, "signed discriminant " + d.to_string());
}

// ------------------------------------------------------------------ alg

StructureAlgebra algebra_of(const Options& o)
{
    if (o.algebra_file.empty()) throw UsageError("give an algebra with --algebra FILE");
    return io::algebra_from_json(io::read_file(o.algebra_file));
}

json vecs(const std::vector<Vec>& v)
{
    json j = json::array();
    for (const auto& x : v) {
        json r = json::array();
        for (const auto& s : x) r.push_back(io::to_json(s));
        j.push_back(std::move(r));
    }
    return j;
}

std::string vecs_text(const StructureAlgebra& a, const std::vector<Vec>& v)
{
    std::string s;
    for (const auto& x : v) s += "  " + a.element_to_string(x) + "\n";
    return s;
}

void alg_center(const Options& o)
{
    auto a = algebra_of(o);
    auto z = center(a);
    emit(o, json{{"dim", z.size()}, {"basis", vecs(z)}}, "center of dimension " + std::to_string(z.size()) + ":\n" + vecs_text(a, z));
}

void alg_idempotents(const Options& o)
{
    auto a = algebra_of(o);
    auto e = central_idempotents(a);
    emit(o, json{{"idempotents", vecs(e)}}, "central idempotents:\n" + vecs_text(a, e));
}

void alg_quaternion(const Options& o)
{
    auto h = quaternion(arg(o, 0), arg(o, 1));
    std::string text = "quaternion algebra (" + o.args[0] + ", " + o.args[1] + ") over " + h.field().name();
    if (h.field().kind() == Field::Kind::Rational) text += ", class " + class_of_algebra(h).to_string();
    emit(o, io::to_json(h), text);
}

// ------------------------------------------------------------------ cliff

void cliff_even(const Options& o)
{
    auto c = even_clifford(form_of(o));
    emit(o, io::to_json(c.algebra), "C0 of " + c.form.to_string() + ", dimension " + std::to_string(c.dim()));
}

void cliff_bimodule(const Options& o)
{
    auto q = form_of(o);
    auto c0 = even_clifford(q);
    auto c1 = clifford_bimodule(q);
    json labels = json::array();
    for (uint32_t s : c1.subsets) labels.push_back(CliffordMonomials::label(s));
    json j{{"dim", c1.dim()}, {"labels", labels}, {"even", io::to_json(c0.algebra)}};
    emit(o, j, "C1 of " + q.to_string() + ", dimension " + std::to_string(c1.dim()));
}

void cliff_center(const Options& o)
{
    auto q = form_of(o);
    auto c = even_clifford(q);
    auto z = center(c.algebra);
    json j{{"dim", z.size()}, {"basis", vecs(z)}};
    std::string text = "center of dimension " + std::to_string(z.size());
    if (q.rank() % 2 == 0) {
        auto d = discriminant_algebra(q);
        j["delta"] = io::to_json(d.delta);
        j["split"] = d.split;
        text += ", z^2 = " + d.delta.to_string() + (d.split ? " (split)" : " (field)");
    }
    emit(o, j, text);
}

void cliff_split(const Options& o)
{
    auto q = form_of(o);
    auto sc = split_components(q);
    json j{{"plus", io::to_json(sc.plus.algebra)}, {"minus", io::to_json(sc.minus.algebra)}};
    std::string text = "components of dimension " + std::to_string(sc.plus.algebra.dim()) + " and " +
                       std::to_string(sc.minus.algebra.dim());
    if (q.field.kind() == Field::Kind::Rational && sc.plus.algebra.dim() == 4) {
        auto p = class_of_algebra(sc.plus.algebra), m = class_of_algebra(sc.minus.algebra);
        j["classes"] = {io::to_json(p), io::to_json(m)};
        text += ", classes " + p.to_string() + " and " + m.to_string();
    }
    emit(o, j, text);
}

void cliff_sum_check(const Options& o)
{
    auto q = form_of(o);
    auto r = read_form(o.form_file2, o.entries2, o.base);
    auto s = sum_isomorphism(q, r);
    bool ok = s.homomorphism && s.bijective && s.unit_preserving;
    check(ok);
    emit(o, json{{"homomorphism", s.homomorphism}, {"bijective", s.bijective}, {"unit_preserving", s.unit_preserving}},
         std::string("sum isomorphism ") + (ok ? "verified" : "FAILED"));
}

// ------------------------------------------------------------------ br

void br_class(const Options& o)
{
    if (o.args.size() < 2) throw UsageError("br class needs -a and -b");
    auto c = class_of_quaternion(Scalar::parse(Field::rationals(), o.args[0]).rational(),
                                 Scalar::parse(Field::rationals(), o.args[1]).rational());
    emit(o, io::to_json(c), "(" + o.args[0] + ", " + o.args[1] + ") ramified at " + c.to_string());
}

void br_realize(const Options& o)
{
    auto c = parse_places(o.ramified);
    auto [a, b] = quaternion_from_class(c);
    emit(o, json{{"a", a.get_str()}, {"b", b.get_str()}}, c.to_string() + " = (" + a.get_str() + ", " + b.get_str() + ")");
}

// ------------------------------------------------------------------ inv

void inv_e(const Options& o, int which)
{
    auto q = form_of(o);
    if (which == 0) {
        emit(o, json{{"e0", e0(q)}}, "e0 = " + std::to_string(e0(q)));
    } else if (which == 1) {
        auto c = e1(q);
        emit(o, json{{"e1", c.to_string()}}, "e1 = " + c.to_string());
    } else {
        auto c = e2(q);
        emit(o, io::to_json(c), "e2 = " + c.to_string());
    }
}

void inv_preimage(const Options& o)
{
    auto c = parse_places(o.ramified);
    auto q = construct_preimage(c);
    emit(o, io::to_json(q), q.to_string());
}

void inv_reciprocity(const Options& o)
{
    auto q = form_of(o);
    auto r = milnor_reciprocity(q);
    check(r.holds);
    json res = json::array();
    std::string text;
    for (const auto& x : r.residues) {
        json e = json::array();
        for (const auto& p : x.entries) e.push_back(p.to_string());
        res.push_back({{"place", x.place()}, {"entries", e}, {"transfer", io::to_json(transfer(x))}});
        text += "  residue at " + x.place() + ": transfer " + transfer(x).to_string() + "\n";
    }
    emit(o, json{{"residues", res}, {"total", io::to_json(r.total)}, {"holds", r.holds}},
         text + "sum of transfers " + r.total.to_string() + (r.holds ? " is hyperbolic" : " is NOT hyperbolic"));
}

// ------------------------------------------------------------------ exc

void exc_norm(const Options& o)
{
    auto n = reduced_norm_form(arg(o, 0), arg(o, 1));
    emit(o, io::to_json(n.form), n.form.to_string());
}

void exc_albert(const Options& o)
{
    auto a = albert_form(arg(o, 0), arg(o, 1), arg(o, 2), arg(o, 3));
    emit(o, io::to_json(a.form), a.form.to_string());
}

void exc_roundtrip(const Options& o)
{
    if (o.args.size() == 2) {
        bool ok = norm_roundtrip_check(arg(o, 0), arg(o, 1));
        check(ok);
        emit(o, json{{"holds", ok}}, std::string("norm round trip ") + (ok ? "holds" : "FAILED"));
        return;
    }
    if (o.args.size() != 4) throw UsageError("exc roundtrip takes 2 (norm) or 4 (pfaffian) scalars");
    auto r = pfaffian_roundtrip(arg(o, 0), arg(o, 1), arg(o, 2), arg(o, 3));
    check(r.holds);
    emit(o, json{{"albert_class", io::to_json(r.albert_class)}, {"expected", io::to_json(r.expected)}, {"holds", r.holds}},
         "e2(Albert form) = " + r.albert_class.to_string() + ", (a,b)+(c,d) = " + r.expected.to_string() +
             (r.holds ? "" : "  FAILED"));
}

// ------------------------------------------------------------------ ded

void ded_clgrp(const Options& o)
{
    QuadOrder ord(o.d);
    auto reps = class_group_mod_squares(ord);
    json j = json::array();
    std::string text;
    for (const auto& r : reps) {
        j.push_back({{"label", r.label}, {"ideal", io::to_json(r.ideal)}});
        text += r.label + " = " + r.ideal.to_string() + "\n";
    }
    emit(o, j, text);
}

IdealValuedForm hyp_of(const Options& o)
{
    QuadOrder ord(o.d);
    std::vector<FracIdeal> p;
    for (const auto& s : split(o.lattice, ';')) p.push_back(parse_ideal(ord, s));
    return hyperbolic_ideal_form(p, parse_ideal(ord, o.value));
}

void ded_hyp(const Options& o)
{
    auto h = hyp_of(o);
    json j = io::to_json(h);
    j["regular"] = h.is_regular();
    emit(o, j, io::render_table(io::to_json(h)) + "regular: " + (h.is_regular() ? "yes" : "no"));
}

void ded_clifford_order(const Options& o)
{
    auto q = o.ideal_form_file.empty() ? hyp_of(o) : io::ideal_form_from_json(io::read_file(o.ideal_form_file));
    auto c = even_clifford_order(q);
    check(c.closed);
    json ideals = json::array();
    std::string text;
    for (size_t k = 0; k < c.subsets.size(); ++k) {
        ideals.push_back({{"basis", CliffordMonomials::label(c.subsets[k])}, {"ideal", io::to_json(c.ideals[k])}});
        text += "  " + CliffordMonomials::label(c.subsets[k]) + ": " + c.ideals[k].to_string() + "\n";
    }
    json j{{"diagonal", io::to_json(c.diagonal)}, {"algebra", io::to_json(c.algebra)}, {"ideals", ideals}, {"closed", c.closed}};
    text = "C0 over " + c.algebra.field().name() + " of " + c.diagonal.to_string() + "\n" + text +
           "closure: " + (c.closed ? "holds" : "FAILS");
    if (c.witness) {
        j["witness"] = {CliffordMonomials::label(c.subsets[c.witness->first]), CliffordMonomials::label(c.subsets[c.witness->second])};
        text += " at " + j["witness"][0].get<std::string>() + " * " + j["witness"][1].get<std::string>();
    }
    if (q.rank() % 2 == 0) {
        bool split = order_center_split(c);
        j["center_split"] = split;
        text += std::string("\ncenter O x O: ") + (split ? "yes" : "no");
    }
    emit(o, j, text);
}

// ------------------------------------------------------------------ verify / convert

void verify(const Options& o)
{
    if (o.list) {
        json j = json::array();
        std::string text;
        for (const auto& s : suites()) {
            j.push_back({{"name", s.name}, {"cases", s.cases}, {"description", s.description}});
            text += s.name + " (" + std::to_string(s.cases) + "): " + s.description + "\n";
        }
        emit(o, j, text);
        return;
    }
    std::vector<std::string> names = o.suite_names;
    if (names.empty()) throw UsageError("name a suite, \"all\", or pass --list");
    if (names.size() == 1 && names[0] == "all") {
        names.clear();
        for (const auto& s : suites()) names.push_back(s.name);
    }
    json reports = json::array();
    for (const auto& n : names) {
        auto r = run_suite(n, o.seed, o.jobs);
        check(r.passed());
        reports.push_back(to_json(r, o.timing));
        if (!o.json_out) {
            std::cout << (r.passed() ? "PASS " : "FAIL ") << r.suite << ": " << r.cases << " cases, "
                      << r.failures.size() << " failures";
            if (o.timing) std::cout << ", " << r.wall_seconds << " s";
            std::cout << "\n";
            for (const auto& f : r.failures) std::cout << "  case " << f.index << ": " << f.witness << "\n";
        }
    }
    if (o.json_out) std::cout << io::dump(reports.size() == 1 ? reports[0] : reports);
}

void convert(const Options& o) { io::convert(o.in_path, o.out_path, o.kind); }

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"clifq: Clifford algebras, quadratic forms and their invariants"};
    app.require_subcommand(1);
    Options o;
    app.add_flag("--json", o.json_out, "machine-readable output");

    auto form_opts = [&](CLI::App* c) {
        c->add_option("--form", o.form_file, "form JSON file");
        c->add_option("--entries", o.entries, "diagonal entries, comma separated");
        c->add_option("--base", o.base, "base field: Q, F_p, Q(sqrt(d)), Q(t), F_p(t)")->capture_default_str();
    };
    std::function<void()> action;
    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, std::function<void()> fn) {
        auto c = parent->add_subcommand(name, help);
        c->callback([&action, fn] { action = fn; });
        return c;
    };

    auto qf = app.add_subcommand("qf", "quadratic forms")->require_subcommand(1);
    form_opts(leaf(qf, "diag", "diagonalize", [&] { qf_diag(o); }));
    form_opts(leaf(qf, "witt", "Witt decomposition", [&] { qf_witt(o); }));
    form_opts(leaf(qf, "disc", "signed discriminant", [&] { qf_disc(o); }));

    auto alg = app.add_subcommand("alg", "finite-dimensional algebras")->require_subcommand(1);
    leaf(alg, "center", "basis of the center", [&] { alg_center(o); })->add_option("--algebra", o.algebra_file)->required();
    leaf(alg, "idempotents", "central idempotents", [&] { alg_idempotents(o); })->add_option("--algebra", o.algebra_file)->required();
    {
        auto c = leaf(alg, "quaternion", "quaternion algebra (a, b)", [&] { alg_quaternion(o); });
        c->add_option("a_b", o.args, "a b")->expected(2)->required();
        c->add_option("--base", o.base)->capture_default_str();
    }

    auto cliff = app.add_subcommand("cliff", "Clifford algebras")->require_subcommand(1);
    form_opts(leaf(cliff, "even", "even Clifford algebra C0", [&] { cliff_even(o); }));
    form_opts(leaf(cliff, "bimodule", "Clifford bimodule C1", [&] { cliff_bimodule(o); }));
    form_opts(leaf(cliff, "center", "center of C0", [&] { cliff_center(o); }));
    form_opts(leaf(cliff, "split", "components of C0 for square discriminant", [&] { cliff_split(o); }));
    {
        auto c = leaf(cliff, "sum-check", "C0(q + q') against C0(q) C0(q') + C1(q) C1(q')", [&] { cliff_sum_check(o); });
        form_opts(c);
        c->add_option("--form2", o.form_file2, "second form JSON file");
        c->add_option("--entries2", o.entries2, "second form entries");
    }

    auto br = app.add_subcommand("br", "Brauer classes over Q")->require_subcommand(1);
    {
        auto c = leaf(br, "class", "class of (a, b)", [&] { br_class(o); });
        c->add_option_function<std::string>("-a", [&](const std::string& s) { o.args.insert(o.args.begin(), s); })->required();
        c->add_option_function<std::string>("-b", [&](const std::string& s) { o.args.push_back(s); })->required();
        leaf(br, "realize", "quaternion algebra with given ramification", [&] { br_realize(o); })
            ->add_option("--ramified", o.ramified, "places, e.g. 2,3 or 3,inf")
            ->required();
    }

    auto inv = app.add_subcommand("inv", "cohomological invariants")->require_subcommand(1);
    form_opts(leaf(inv, "e0", "rank mod 2", [&] { inv_e(o, 0); }));
    form_opts(leaf(inv, "e1", "signed discriminant", [&] { inv_e(o, 1); }));
    form_opts(leaf(inv, "e2", "Clifford invariant", [&] { inv_e(o, 2); }));
    leaf(inv, "preimage", "form in I^2 with the given e2", [&] { inv_preimage(o); })
        ->add_option("--ramified", o.ramified)
        ->required();
    form_opts(leaf(inv, "reciprocity", "second residues and their transfers over F(t)", [&] { inv_reciprocity(o); }));

    auto exc = app.add_subcommand("exc", "exceptional isomorphisms")->require_subcommand(1);
    for (auto [name, help, n, fn] : std::vector<std::tuple<std::string, std::string, int, std::function<void()>>>{
             {"norm", "reduced norm form of (a, b)", 2, [&] { exc_norm(o); }},
             {"albert", "Albert form of (a, b) (x) (c, d)", 4, [&] { exc_albert(o); }},
             {"roundtrip", "norm (a b) or pfaffian (a b c d) round trip", -1, [&] { exc_roundtrip(o); }}}) {
        auto c = leaf(exc, name, help, fn);
        auto opt = c->add_option("scalars", o.args)->required();
        if (n > 0) opt->expected(n);
        c->add_option("--base", o.base)->capture_default_str();
    }

    auto ded = app.add_subcommand("ded", "forms over quadratic Dedekind domains")->require_subcommand(1);
    leaf(ded, "clgrp", "representatives of Cl/2", [&] { ded_clgrp(o); })->add_option("-d", o.d)->capture_default_str();
    for (auto* c : {leaf(ded, "hyp", "hyperbolic form H_L(P)", [&] { ded_hyp(o); }),
                    leaf(ded, "clifford-order", "even Clifford order with closure check", [&] { ded_clifford_order(o); })}) {
        c->add_option("-d", o.d)->capture_default_str();
        c->add_option("--lattice", o.lattice, "coefficient ideals of P, ';' separated (O, p2, p3,1, p2^3, ...)")->capture_default_str();
        c->add_option("--value", o.value, "value ideal L")->capture_default_str();
        if (c->get_name() == "clifford-order") c->add_option("--ideal-form", o.ideal_form_file, "ideal-valued form JSON file");
    }

    {
        auto c = leaf(&app, "verify", "run verification suites", [&] { verify(o); });
        c->add_option("suites", o.suite_names, "suite names or \"all\"");
        c->add_flag("--list", o.list, "list the suites");
        c->add_option("--seed", o.seed)->capture_default_str();
        c->add_option("--jobs,-j", o.jobs, "worker threads")->capture_default_str();
        c->add_flag("--timing", o.timing, "report wall time");
    }
    {
        auto c = leaf(&app, "convert", "canonical JSON or table rendering", [&] { convert(o); });
        c->add_option("input", o.in_path)->required();
        c->add_option("output", o.out_path, "output path, - for stdout")->required();
        c->add_option("--kind", o.kind, "json or table")->capture_default_str();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int r = app.exit(e);
        return r == 0 ? 0 : 2;
    }
    try {
        if (action) action();
    } catch (const BoundExceeded& e) {
        std::cerr << "clifq: bound exceeded: " << e.what() << "\n";
        return 3;
    } catch (const VerificationFailure& e) {
        std::cerr << "clifq: verification failure: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "clifq: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "clifq: bad number: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
