#include "clifq/io.hpp"

#include "clifq/errors.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace clifq::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what)
{
    throw ParseError((where.empty() ? std::string("<root>") : where) + ": " + what);
}

const json& member(const json& j, const char* key, const std::string& where)
{
    if (!j.is_object()) fail(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(where, std::string("missing key \"") + key + "\"");
    return *it;
}

Field field_from(const json& j, const std::string& where)
{
    if (!j.is_string()) fail(where, "base must be a string");
    try {
        return Field::parse(j.get<std::string>());
    } catch (const Error& e) {
        fail(where, e.what());
    }
}

long long_from(const json& j, const std::string& where)
{
    if (!j.is_number_integer()) fail(where, "expected an integer");
    return j.get<long>();
}

Matrix matrix_from(const Field& f, const json& j, const std::string& where)
{
    if (!j.is_array()) fail(where, "gram must be an array of rows");
    const size_t n = j.size();
    Matrix m(f, n, n);
    for (size_t i = 0; i < n; ++i) {
        const std::string wr = where + "/" + std::to_string(i);
        if (!j[i].is_array()) fail(wr, "row must be an array");
        if (j[i].size() != n)
            fail(wr, "gram is not square: row has " + std::to_string(j[i].size()) + " entries, expected " +
                         std::to_string(n));
        for (size_t k = 0; k < n; ++k) m(i, k) = scalar_from_json(f, j[i][k], wr + "/" + std::to_string(k));
    }
    return m;
}

json matrix_json(const Matrix& m)
{
    json rows = json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (size_t k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string pad(const std::string& s, size_t w) { return s + std::string(w > s.size() ? w - s.size() : 0, ' '); }

std::string grid(const std::vector<std::string>& head, const std::vector<std::vector<std::string>>& rows)
{
    std::vector<size_t> w(head.size(), 0);
    for (size_t c = 0; c < head.size(); ++c) w[c] = head[c].size();
    for (const auto& r : rows)
        for (size_t c = 0; c < r.size(); ++c) w[c] = std::max(w[c], r[c].size());
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& r) {
        for (size_t c = 0; c < r.size(); ++c) os << (c ? "  " : "") << (c + 1 == r.size() ? r[c] : pad(r[c], w[c]));
        os << "\n";
    };
    line(head);
    for (const auto& r : rows) line(r);
    return os.str();
}

} // namespace

json to_json(const Scalar& x) { return x.to_string(); }

Scalar scalar_from_json(const Field& f, const json& j, const std::string& where)
{
    try {
        if (j.is_number_integer()) return Scalar::from_int(f, j.get<long>());
        if (j.is_string()) return Scalar::parse(f, j.get<std::string>());
    } catch (const Error& e) {
        fail(where, e.what());
    }
    fail(where, "scalar must be a string or an integer");
}

json to_json(const QuadraticForm& q)
{
    json j;
    j["base"] = q.field().name();
    j["gram"] = matrix_json(q.gram);
    j["value_label"] = q.value_label;
    return j;
}

json to_json(const DiagonalForm& q) { return to_json(q.to_form()); }

QuadraticForm form_from_json(const json& j)
{
    const Field f = field_from(member(j, "base", ""), "/base");
    Matrix g = matrix_from(f, member(j, "gram", ""), "/gram");
    if (!g.is_symmetric()) fail("/gram", "gram matrix is not symmetric");
    std::string label = "trivial";
    if (j.contains("value_label")) {
        if (!j["value_label"].is_string()) fail("/value_label", "expected a string");
        label = j["value_label"].get<std::string>();
    }
    return QuadraticForm(std::move(g), label);
}

json to_json(const StructureAlgebra& a)
{
    json j;
    j["dim"] = a.dim();
    j["labels"] = a.labels();
    json t = json::array();
    for (const auto& x : a.dense_table()) t.push_back(to_json(x));
    j["table"] = std::move(t);
    j["base"] = a.field().name();
    if (a.unit() != a.basis(0)) {
        json u = json::array();
        for (const auto& x : a.unit()) u.push_back(to_json(x));
        j["unit"] = std::move(u);
    }
    return j;
}

StructureAlgebra algebra_from_json(const json& j)
{
    const Field f = field_from(member(j, "base", ""), "/base");
    const long dl = long_from(member(j, "dim", ""), "/dim");
    if (dl < 1 || dl > static_cast<long>(StructureAlgebra::max_dim)) fail("/dim", "dimension out of range");
    const size_t n = static_cast<size_t>(dl);
    const json& labels = member(j, "labels", "");
    if (!labels.is_array() || labels.size() != n) fail("/labels", "expected " + std::to_string(n) + " labels");
    std::vector<std::string> names;
    for (size_t i = 0; i < n; ++i) {
        if (!labels[i].is_string()) fail("/labels/" + std::to_string(i), "expected a string");
        names.push_back(labels[i].get<std::string>());
    }
    const json& table = member(j, "table", "");
    if (!table.is_array() || table.size() != n * n * n)
        fail("/table", "expected " + std::to_string(n * n * n) + " structure constants");
    std::vector<Scalar> t;
    for (size_t i = 0; i < table.size(); ++i) t.push_back(scalar_from_json(f, table[i], "/table/" + std::to_string(i)));
    Vec unit = unit_vec(f, n, 0);
    if (j.contains("unit")) {
        if (!j["unit"].is_array() || j["unit"].size() != n) fail("/unit", "expected " + std::to_string(n) + " entries");
        for (size_t i = 0; i < n; ++i) unit[i] = scalar_from_json(f, j["unit"][i], "/unit/" + std::to_string(i));
    }
    try {
        return StructureAlgebra::from_dense(f, std::move(names), t, std::move(unit));
    } catch (const Error& e) {
        fail("", e.what());
    }
}

json to_json(const BrauerClass2& c)
{
    json j;
    json r = json::array();
    for (const auto& v : c.ramified) r.push_back(v.to_string());
    j["ramified"] = std::move(r);
    if (c.finite_field) j["finite_field"] = true;
    return j;
}

BrauerClass2 brauer_from_json(const json& j)
{
    const json& r = member(j, "ramified", "");
    if (!r.is_array()) fail("/ramified", "expected an array of places");
    std::set<nt::Place> places;
    for (size_t i = 0; i < r.size(); ++i) {
        const std::string w = "/ramified/" + std::to_string(i);
        if (!r[i].is_string() && !r[i].is_number_integer()) fail(w, "place must be a string");
        try {
            places.insert(nt::Place::parse(r[i].is_string() ? r[i].get<std::string>() : std::to_string(r[i].get<long>())));
        } catch (const Error& e) {
            fail(w, e.what());
        }
    }
    if (places.size() % 2) fail("/ramified", "a class of Br(Q)[2] has an even number of ramified places");
    BrauerClass2 c(std::move(places));
    if (j.contains("finite_field")) c.finite_field = j["finite_field"].get<bool>();
    return c;
}

json to_json(const FracIdeal& i)
{
    json j;
    j["d"] = i.order().d();
    auto [a, b] = i.basis();
    j["generators"] = json::array({to_json(a), to_json(b)});
    return j;
}

namespace {

FracIdeal ideal_at(const json& j, const std::string& where, std::optional<long> d_expected)
{
    const long d = long_from(member(j, "d", where), where + "/d");
    if (d_expected && d != *d_expected) fail(where + "/d", "ideal over a different order");
    const json& g = member(j, "generators", where);
    if (!g.is_array() || g.empty()) fail(where + "/generators", "expected a nonempty array");
    try {
        QuadOrder o(d);
        std::vector<Scalar> gens;
        for (size_t k = 0; k < g.size(); ++k)
            gens.push_back(scalar_from_json(o.field(), g[k], where + "/generators/" + std::to_string(k)));
        return FracIdeal(o, gens);
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        fail(where, e.what());
    }
}

} // namespace

FracIdeal ideal_from_json(const json& j) { return ideal_at(j, "", std::nullopt); }

json to_json(const IdealValuedForm& q)
{
    json j;
    j["d"] = q.order.d();
    json c = json::array();
    for (const auto& a : q.coeffs) c.push_back(to_json(a));
    j["coeffs"] = std::move(c);
    j["gram"] = matrix_json(q.gram);
    j["value"] = to_json(q.value);
    return j;
}

IdealValuedForm ideal_form_from_json(const json& j)
{
    const long d = long_from(member(j, "d", ""), "/d");
    QuadOrder o = [&] {
        try {
            return QuadOrder(d);
        } catch (const Error& e) {
            fail("/d", e.what());
        }
    }();
    const json& c = member(j, "coeffs", "");
    if (!c.is_array()) fail("/coeffs", "expected an array of ideals");
    std::vector<FracIdeal> a;
    for (size_t k = 0; k < c.size(); ++k) a.push_back(ideal_at(c[k], "/coeffs/" + std::to_string(k), d));
    Matrix g = matrix_from(o.field(), member(j, "gram", ""), "/gram");
    if (g.rows() != a.size()) fail("/gram", "gram size does not match the number of coefficient ideals");
    FracIdeal l = ideal_at(member(j, "value", ""), "/value", d);
    try {
        return IdealValuedForm(o, std::move(a), std::move(g), std::move(l));
    } catch (const Error& e) {
        fail("", e.what());
    }
}

json parse(const std::string& text, const std::string& source)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // line and column from the byte offset
        size_t line = 1, col = 1;
        for (size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
            if (text[k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": invalid JSON");
    }
}

json read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

Kind detect_kind(const json& j)
{
    if (!j.is_object()) throw ParseError("<root>: expected an object");
    if (j.contains("coeffs")) return Kind::IdealForm;
    if (j.contains("table")) return Kind::Algebra;
    if (j.contains("ramified")) return Kind::Brauer;
    if (j.contains("gram")) return Kind::Form;
    throw ParseError("<root>: cannot tell what kind of object this is");
}

std::string render_table(const json& j)
{
    std::ostringstream os;
    switch (detect_kind(j)) {
    case Kind::Form: {
        auto q = form_from_json(j);
        os << "form over " << q.field().name() << ", rank " << q.rank() << ", values in " << q.value_label << "\n";
        std::vector<std::string> head{""};
        std::vector<std::vector<std::string>> rows;
        for (size_t i = 0; i < q.rank(); ++i) head.push_back("e" + std::to_string(i + 1));
        for (size_t i = 0; i < q.rank(); ++i) {
            std::vector<std::string> r{"e" + std::to_string(i + 1)};
            for (size_t k = 0; k < q.rank(); ++k) r.push_back(q.gram(i, k).to_string());
            rows.push_back(std::move(r));
        }
        os << grid(head, rows);
        break;
    }
    case Kind::Algebra: {
        auto a = algebra_from_json(j);
        os << "algebra over " << a.field().name() << ", dimension " << a.dim() << "\n";
        std::vector<std::string> head{"*"};
        for (const auto& l : a.labels()) head.push_back(l);
        std::vector<std::vector<std::string>> rows;
        for (size_t i = 0; i < a.dim(); ++i) {
            std::vector<std::string> r{a.labels()[i]};
            for (size_t k = 0; k < a.dim(); ++k) r.push_back(a.element_to_string(a.multiply(a.basis(i), a.basis(k))));
            rows.push_back(std::move(r));
        }
        os << grid(head, rows);
        break;
    }
    case Kind::Brauer: {
        auto c = brauer_from_json(j);
        os << "Brauer class " << c.to_string() << (c.is_trivial() ? " (split)" : "") << "\n";
        break;
    }
    case Kind::IdealForm: {
        auto q = ideal_form_from_json(j);
        os << "form over O of " << q.order.field().name() << ", rank " << q.rank() << ", values in "
           << q.value.to_string() << "\n";
        std::vector<std::string> head{"", "ideal"};
        for (size_t i = 0; i < q.rank(); ++i) head.push_back("e" + std::to_string(i + 1));
        std::vector<std::vector<std::string>> rows;
        for (size_t i = 0; i < q.rank(); ++i) {
            std::vector<std::string> r{"e" + std::to_string(i + 1), q.coeffs[i].to_string()};
            for (size_t k = 0; k < q.rank(); ++k) r.push_back(q.gram(i, k).to_string());
            rows.push_back(std::move(r));
        }
        os << grid(head, rows);
        break;
    }
    }
    return os.str();
}

void convert(const std::string& in_path, const std::string& out_path, const std::string& kind)
{
    json j = read_file(in_path);
    std::string out;
    if (kind == "json") {
        switch (detect_kind(j)) {
        case Kind::Form: out = dump(to_json(form_from_json(j))); break;
        case Kind::Algebra: out = dump(to_json(algebra_from_json(j))); break;
        case Kind::Brauer: out = dump(to_json(brauer_from_json(j))); break;
        case Kind::IdealForm: out = dump(to_json(ideal_form_from_json(j))); break;
        }
    } else if (kind == "table") {
        out = render_table(j);
    } else {
        throw UsageError("unknown output kind \"" + kind + "\" (expected json or table)");
    }
    if (out_path == "-") {
        std::fwrite(out.data(), 1, out.size(), stdout);
        return;
    }
    std::ofstream o(out_path);
    if (!o) throw UsageError(out_path + ": cannot open for writing");
    o << out;
}

} // namespace clifq::io
