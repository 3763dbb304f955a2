#include "clifq/scalar.hpp"

#include "clifq/errors.hpp"

#include <cctype>
#include <sstream>

namespace clifq {

// ---------------------------------------------------------------- Field

Field Field::rationals() { return Field{}; }

Field Field::prime_field(long p)
{
    if (p <= 2 || !nt::is_prime(Integer(p)))
        throw DomainError("prime field modulus must be an odd prime, got " + std::to_string(p));
    if (p > (1L << 31)) throw Unsupported("prime field modulus too large");
    Field f;
    f.kind_ = Kind::PrimeField;
    f.p_ = p;
    return f;
}

Field Field::quadratic(long d)
{
    if (d == 0 || d == 1) throw DomainError("quadratic field needs d != 0, 1");
    if (nt::squarefree_part(Integer(d)) != d) throw DomainError("quadratic field needs squarefree d, got " + std::to_string(d));
    Field f;
    f.kind_ = Kind::Quadratic;
    f.d_ = d;
    return f;
}

Field Field::function_field(long p)
{
    if (p != 0) (void)prime_field(p);
    Field f;
    f.kind_ = Kind::FunctionField;
    f.p_ = p;
    return f;
}

std::string Field::name() const
{
    switch (kind_) {
    case Kind::Rational: return "Q";
    case Kind::PrimeField: return "F_" + std::to_string(p_);
    case Kind::Quadratic: return "Q(sqrt(" + std::to_string(d_) + "))";
    case Kind::FunctionField: return p_ == 0 ? "Q(t)" : "F_" + std::to_string(p_) + "(t)";
    }
    return "?";
}

Field Field::parse(const std::string& text)
{
    if (text == "Q") return rationals();
    if (text == "Q(t)") return function_field(0);
    if (text.rfind("F_", 0) == 0) {
        size_t pos = 2;
        long p = std::stol(text.substr(pos));
        if (text.size() >= 3 && text.substr(text.size() - 3) == "(t)") return function_field(p);
        return prime_field(p);
    }
    if (text.rfind("Q(sqrt(", 0) == 0 && text.size() > 9) {
        long d = std::stol(text.substr(7, text.size() - 9));
        return quadratic(d);
    }
    throw DomainError("unknown base field '" + text + "'");
}

// ---------------------------------------------------------------- helpers

namespace {

RatFunc make_ratfunc(Poly num, Poly den)
{
    if (den.is_zero()) throw DomainError("rational function with zero denominator");
    if (num.is_zero()) return {Poly(num.characteristic()), Poly::constant(1, num.characteristic())};
    Poly g = gcd(num, den);
    num = num / g;
    den = den / g;
    Rational lc = den.lc();
    Rational il = den.inv(lc);
    return {num.scaled(il), den.scaled(il)};
}

std::string strip(const std::string& s)
{
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    return out;
}

Rational parse_rational(const std::string& s)
{
    if (s.empty()) throw DomainError("empty number");
    Rational r;
    if (r.set_str(s, 10) != 0) throw DomainError("cannot parse rational '" + s + "'");
    if (r.get_den() == 0) throw DomainError("zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

// Split at top-level '+' / '-' (not inside parentheses, not a leading sign,
// not directly after '(' '*' '/' '^').
std::vector<std::string> split_terms(const std::string& s)
{
    std::vector<std::string> terms;
    int depth = 0;
    size_t start = 0;
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if ((c == '+' || c == '-') && depth == 0 && i > start) {
            char prev = s[i - 1];
            if (prev == '*' || prev == '/' || prev == '^' || prev == '(') continue;
            terms.push_back(s.substr(start, i - start));
            start = i;
        }
    }
    terms.push_back(s.substr(start));
    return terms;
}

Poly parse_poly(const std::string& text, long p)
{
    std::string s = strip(text);
    if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
    Poly acc(p);
    for (std::string term : split_terms(s)) {
        if (!term.empty() && term[0] == '+') term = term.substr(1);
        bool neg = false;
        if (!term.empty() && term[0] == '-') {
            neg = true;
            term = term.substr(1);
        }
        if (term.empty()) throw DomainError("empty polynomial term in '" + text + "'");
        Rational coef = 1;
        int deg = 0;
        size_t tpos = term.find('t');
        if (tpos == std::string::npos) {
            coef = parse_rational(term);
        } else {
            std::string cs = term.substr(0, tpos);
            if (!cs.empty()) {
                if (cs.back() != '*') throw DomainError("malformed polynomial term '" + term + "'");
                cs.pop_back();
                coef = parse_rational(cs);
            }
            std::string rest = term.substr(tpos + 1);
            deg = 1;
            if (!rest.empty()) {
                if (rest[0] != '^') throw DomainError("malformed polynomial term '" + term + "'");
                deg = std::stoi(rest.substr(1));
            }
        }
        if (neg) coef = -coef;
        std::vector<Rational> c(static_cast<size_t>(deg + 1), Rational(0));
        c.back() = coef;
        acc = acc + Poly(p, std::move(c));
    }
    return acc;
}

// Split "num/den" at a top-level '/' that separates parenthesized groups.
std::pair<std::string, std::string> split_fraction(const std::string& s)
{
    int depth = 0;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        if (s[i] == ')') --depth;
        if (s[i] == '/' && depth == 0 && i > 0 && s[i - 1] == ')') return {s.substr(0, i), s.substr(i + 1)};
    }
    return {s, "1"};
}

} // namespace

// ---------------------------------------------------------------- Scalar

Scalar::Scalar(const Field& f, const Rational& r) : field_(f)
{
    switch (f.kind()) {
    case Field::Kind::Rational: {
        Rational x = r;
        x.canonicalize();
        v_ = x;
        break;
    }
    case Field::Kind::PrimeField: v_ = Poly(f.characteristic()).norm(r); break;
    case Field::Kind::Quadratic: {
        Rational x = r;
        x.canonicalize();
        v_ = QuadValue{x, Rational(0)};
        break;
    }
    case Field::Kind::FunctionField:
        v_ = make_ratfunc(Poly::constant(r, f.characteristic()), Poly::constant(1, f.characteristic()));
        break;
    }
}

Scalar Scalar::quadratic(const Field& f, const Rational& a, const Rational& b)
{
    if (f.kind() != Field::Kind::Quadratic) throw DomainError("quadratic value outside a quadratic field");
    Scalar s(f, a);
    Rational bb = b;
    bb.canonicalize();
    std::get<QuadValue>(s.v_).b = bb;
    return s;
}

Scalar Scalar::ratfunc(const Field& f, const Poly& num, const Poly& den)
{
    if (f.kind() != Field::Kind::FunctionField) throw DomainError("rational function outside a function field");
    if (num.characteristic() != f.characteristic() || den.characteristic() != f.characteristic())
        throw DomainError("polynomial characteristic mismatch");
    Scalar s(f, Rational(0));
    s.v_ = make_ratfunc(num, den);
    return s;
}

Scalar Scalar::generator(const Field& f)
{
    if (f.kind() == Field::Kind::Quadratic) return quadratic(f, 0, 1);
    if (f.kind() == Field::Kind::FunctionField)
        return ratfunc(f, Poly::t(f.characteristic()), Poly::constant(1, f.characteristic()));
    throw DomainError("field " + f.name() + " has no distinguished generator");
}

Scalar Scalar::parse(const Field& f, const std::string& text)
{
    std::string s = strip(text);
    switch (f.kind()) {
    case Field::Kind::Rational: return Scalar(f, parse_rational(s));
    case Field::Kind::PrimeField: {
        auto pos = s.find("mod");
        if (pos != std::string::npos) {
            long p = std::stol(s.substr(pos + 3));
            if (p != f.characteristic()) throw DomainError("modulus mismatch in '" + text + "' for " + f.name());
            s = s.substr(0, pos);
        }
        return Scalar(f, parse_rational(s));
    }
    case Field::Kind::Quadratic: {
        Rational a = 0, b = 0;
        for (std::string term : split_terms(s)) {
            if (!term.empty() && term[0] == '+') term = term.substr(1);
            auto pos = term.find("sqrt(");
            if (pos == std::string::npos) {
                a += parse_rational(term);
                continue;
            }
            long d = std::stol(term.substr(pos + 5, term.find(')', pos) - pos - 5));
            if (d != f.d()) throw DomainError("sqrt(" + std::to_string(d) + ") does not belong to " + f.name());
            std::string cs = term.substr(0, pos);
            Rational c = 1;
            if (cs == "-") {
                c = -1;
            } else if (!cs.empty()) {
                if (cs.back() == '*') cs.pop_back();
                c = parse_rational(cs);
            }
            b += c;
        }
        return quadratic(f, a, b);
    }
    case Field::Kind::FunctionField: {
        auto [n, d] = split_fraction(s);
        return ratfunc(f, parse_poly(n, f.characteristic()), parse_poly(d, f.characteristic()));
    }
    }
    throw DomainError("unreachable");
}

std::string Scalar::to_string() const
{
    switch (field_.kind()) {
    case Field::Kind::Rational: return std::get<Rational>(v_).get_str();
    case Field::Kind::PrimeField:
        return std::get<Rational>(v_).get_str() + " mod " + std::to_string(field_.characteristic());
    case Field::Kind::Quadratic: {
        const auto& q = std::get<QuadValue>(v_);
        if (q.b == 0) return q.a.get_str();
        std::string sq = "sqrt(" + std::to_string(field_.d()) + ")";
        std::string bpart = (q.b == 1) ? sq : (q.b == -1) ? "-" + sq : q.b.get_str() + "*" + sq;
        if (q.a == 0) return bpart;
        return q.a.get_str() + (q.b > 0 ? "+" : "") + bpart;
    }
    case Field::Kind::FunctionField: {
        const auto& r = std::get<RatFunc>(v_);
        if (r.den.degree() == 0) return r.num.to_string();
        return "(" + r.num.to_string() + ")/(" + r.den.to_string() + ")";
    }
    }
    return "?";
}

bool Scalar::is_zero() const
{
    switch (field_.kind()) {
    case Field::Kind::Rational:
    case Field::Kind::PrimeField: return std::get<Rational>(v_) == 0;
    case Field::Kind::Quadratic: {
        const auto& q = std::get<QuadValue>(v_);
        return q.a == 0 && q.b == 0;
    }
    case Field::Kind::FunctionField: return std::get<RatFunc>(v_).num.is_zero();
    }
    return false;
}

bool Scalar::is_one() const { return *this == one(field_); }

namespace {

void require_same(const Field& a, const Field& b)
{
    if (!(a == b)) throw DomainError("field mismatch: " + a.name() + " vs " + b.name());
}

} // namespace

Scalar Scalar::operator+(const Scalar& o) const
{
    require_same(field_, o.field_);
    Scalar r = *this;
    switch (field_.kind()) {
    case Field::Kind::Rational: std::get<Rational>(r.v_) += std::get<Rational>(o.v_); break;
    case Field::Kind::PrimeField:
        r.v_ = Poly(field_.characteristic()).norm(std::get<Rational>(v_) + std::get<Rational>(o.v_));
        break;
    case Field::Kind::Quadratic: {
        auto& q = std::get<QuadValue>(r.v_);
        q.a += std::get<QuadValue>(o.v_).a;
        q.b += std::get<QuadValue>(o.v_).b;
        break;
    }
    case Field::Kind::FunctionField: {
        const auto& x = std::get<RatFunc>(v_);
        const auto& y = std::get<RatFunc>(o.v_);
        if (x.den == y.den)
            r.v_ = make_ratfunc(x.num + y.num, x.den);
        else
            r.v_ = make_ratfunc(x.num * y.den + y.num * x.den, x.den * y.den);
        break;
    }
    }
    return r;
}

Scalar Scalar::operator-() const
{
    Scalar r = *this;
    switch (field_.kind()) {
    case Field::Kind::Rational: std::get<Rational>(r.v_) = -std::get<Rational>(v_); break;
    case Field::Kind::PrimeField: r.v_ = Poly(field_.characteristic()).norm(-std::get<Rational>(v_)); break;
    case Field::Kind::Quadratic: {
        auto& q = std::get<QuadValue>(r.v_);
        q.a = -q.a;
        q.b = -q.b;
        break;
    }
    case Field::Kind::FunctionField: {
        auto& x = std::get<RatFunc>(r.v_);
        x.num = -x.num;
        break;
    }
    }
    return r;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const
{
    require_same(field_, o.field_);
    Scalar r = *this;
    switch (field_.kind()) {
    case Field::Kind::Rational: std::get<Rational>(r.v_) *= std::get<Rational>(o.v_); break;
    case Field::Kind::PrimeField:
        r.v_ = Poly(field_.characteristic()).norm(std::get<Rational>(v_) * std::get<Rational>(o.v_));
        break;
    case Field::Kind::Quadratic: {
        const auto& x = std::get<QuadValue>(v_);
        const auto& y = std::get<QuadValue>(o.v_);
        r.v_ = QuadValue{x.a * y.a + x.b * y.b * field_.d(), x.a * y.b + x.b * y.a};
        break;
    }
    case Field::Kind::FunctionField: {
        const auto& x = std::get<RatFunc>(v_);
        const auto& y = std::get<RatFunc>(o.v_);
        r.v_ = make_ratfunc(x.num * y.num, x.den * y.den);
        break;
    }
    }
    return r;
}

Scalar Scalar::inverse() const
{
    if (is_zero()) throw DomainError("division by zero in " + field_.name());
    Scalar r = *this;
    switch (field_.kind()) {
    case Field::Kind::Rational: std::get<Rational>(r.v_) = 1 / std::get<Rational>(v_); break;
    case Field::Kind::PrimeField: r.v_ = Poly(field_.characteristic()).inv(std::get<Rational>(v_)); break;
    case Field::Kind::Quadratic: {
        const auto& x = std::get<QuadValue>(v_);
        Rational n = x.a * x.a - x.b * x.b * field_.d();
        r.v_ = QuadValue{x.a / n, -x.b / n};
        break;
    }
    case Field::Kind::FunctionField: {
        const auto& x = std::get<RatFunc>(v_);
        r.v_ = make_ratfunc(x.den, x.num);
        break;
    }
    }
    return r;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

bool Scalar::operator==(const Scalar& o) const
{
    if (!(field_ == o.field_)) return false;
    switch (field_.kind()) {
    case Field::Kind::Rational:
    case Field::Kind::PrimeField: return std::get<Rational>(v_) == std::get<Rational>(o.v_);
    case Field::Kind::Quadratic: {
        const auto& x = std::get<QuadValue>(v_);
        const auto& y = std::get<QuadValue>(o.v_);
        return x.a == y.a && x.b == y.b;
    }
    case Field::Kind::FunctionField: {
        const auto& x = std::get<RatFunc>(v_);
        const auto& y = std::get<RatFunc>(o.v_);
        return x.num == y.num && x.den == y.den;
    }
    }
    return false;
}

const Rational& Scalar::rational() const
{
    if (const auto* r = std::get_if<Rational>(&v_)) return *r;
    if (const auto* q = std::get_if<QuadValue>(&v_)) {
        if (q->b != 0) throw DomainError("irrational element " + to_string() + " has no rational value");
        return q->a;
    }
    const auto& f = std::get<RatFunc>(v_);
    if (f.num.degree() > 0 || f.den.degree() > 0)
        throw DomainError("nonconstant rational function " + to_string() + " has no rational value");
    static thread_local Rational zero = 0;
    return f.num.is_zero() ? zero : f.num.coeffs()[0];
}

const QuadValue& Scalar::quad() const
{
    if (const auto* q = std::get_if<QuadValue>(&v_)) return *q;
    throw DomainError(field_.name() + " element is not a quadratic-field value");
}

const RatFunc& Scalar::ratfunc() const
{
    if (const auto* f = std::get_if<RatFunc>(&v_)) return *f;
    throw DomainError(field_.name() + " element is not a rational function");
}

bool Scalar::is_prime_subfield() const
{
    switch (field_.kind()) {
    case Field::Kind::Rational:
    case Field::Kind::PrimeField: return true;
    case Field::Kind::Quadratic: return std::get<QuadValue>(v_).b == 0;
    case Field::Kind::FunctionField: {
        const auto& f = std::get<RatFunc>(v_);
        return f.num.degree() <= 0 && f.den.degree() <= 0;
    }
    }
    return false;
}

namespace {

std::optional<Poly> poly_sqrt(const Poly& f)
{
    long p = f.characteristic();
    std::optional<Rational> c;
    if (p == 0) {
        c = nt::rational_sqrt(f.lc());
    } else if (auto r = nt::sqrt_mod_prime(Integer(f.lc().get_num()), Integer(p))) {
        c = Rational(*r);
    }
    if (!c) return std::nullopt;
    Poly root = Poly::constant(*c, p);
    for (const auto& [g, e] : squarefree_decomposition(f)) {
        if (e % 2) return std::nullopt;
        for (int i = 0; i < e / 2; ++i) root = root * g;
    }
    return root;
}

} // namespace

std::optional<Scalar> Scalar::sqrt() const
{
    if (is_zero()) return *this;
    switch (field_.kind()) {
    case Field::Kind::Rational:
        if (auto r = nt::rational_sqrt(std::get<Rational>(v_))) return Scalar(field_, *r);
        return std::nullopt;
    case Field::Kind::PrimeField: {
        auto r = nt::sqrt_mod_prime(Integer(std::get<Rational>(v_).get_num()), Integer(field_.characteristic()));
        if (!r) return std::nullopt;
        Integer x = *r;
        if (x > field_.characteristic() - x) x = field_.characteristic() - x;
        return Scalar(field_, Rational(x));
    }
    case Field::Kind::Quadratic: {
        const auto& q = std::get<QuadValue>(v_);
        const long d = field_.d();
        if (q.b == 0) {
            if (auto r = nt::rational_sqrt(q.a)) return quadratic(field_, *r, 0);
            if (auto r = nt::rational_sqrt(q.a / d)) return quadratic(field_, 0, *r);
            return std::nullopt;
        }
        auto n = nt::rational_sqrt(q.a * q.a - q.b * q.b * d);
        if (!n) return std::nullopt;
        for (const Rational& cand : std::vector<Rational>{Rational((q.a + *n) / 2), Rational((q.a - *n) / 2)}) {
            if (cand == 0) continue;
            if (auto x = nt::rational_sqrt(cand)) {
                Scalar s = quadratic(field_, *x, q.b / (2 * *x));
                if (s * s == *this) return s;
            }
        }
        return std::nullopt;
    }
    case Field::Kind::FunctionField: {
        const auto& f = std::get<RatFunc>(v_);
        auto root = poly_sqrt(f.num * f.den);
        if (!root) return std::nullopt;
        return ratfunc(field_, *root, f.den);
    }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- SquareClass

SquareClass SquareClass::of(const Scalar& a)
{
    if (a.is_zero()) throw DomainError("square class of zero");
    const Field& f = a.field();
    auto prime_class = [](const Rational& c, long p) -> Rational {
        if (p == 0) return Rational(nt::squarefree_class(c));
        if (nt::legendre(Integer(c.get_num()), Integer(p)) == 1) return Rational(1);
        long n = 2;
        while (nt::legendre(Integer(n), Integer(p)) != -1) ++n;
        return Rational(n);
    };
    switch (f.kind()) {
    case Field::Kind::Rational:
    case Field::Kind::PrimeField: return SquareClass(Scalar(f, prime_class(a.rational(), f.characteristic())));
    case Field::Kind::Quadratic:
        throw Unsupported("canonical square classes over " + f.name() + " are not supported; use is_square()");
    case Field::Kind::FunctionField: {
        const auto& rf = a.ratfunc();
        Poly prod = rf.num * rf.den;
        Rational c = prime_class(prod.lc(), f.characteristic());
        Poly odd = Poly::constant(c, f.characteristic());
        for (const auto& [g, e] : squarefree_decomposition(prod))
            if (e % 2) odd = odd * g;
        return SquareClass(Scalar::ratfunc(f, odd, Poly::constant(1, f.characteristic())));
    }
    }
    throw DomainError("unreachable");
}

SquareClass SquareClass::operator*(const SquareClass& o) const
{
    return of(rep_ * o.rep_);
}

int legendre(long a, long p)
{
    return nt::legendre(Integer(a), Integer(p));
}

// ---------------------------------------------------------------- ReductionMap

ReductionMap ReductionMap::rational_to(long p)
{
    ReductionMap m;
    m.source_ = Field::rationals();
    m.target_ = Field::prime_field(p);
    return m;
}

ReductionMap ReductionMap::quadratic_to(long d, long p, long root)
{
    ReductionMap m;
    m.source_ = Field::quadratic(d);
    m.target_ = Field::prime_field(p);
    if (((root * root - d) % p + p) % p != 0)
        throw DomainError(std::to_string(root) + " is not a square root of " + std::to_string(d) + " mod " + std::to_string(p));
    m.root_ = root;
    return m;
}

ReductionMap ReductionMap::split_prime(long d, long p)
{
    auto r = nt::sqrt_mod_prime(Integer(d), Integer(p));
    if (!r || (Integer(d) % p) == 0) throw DomainError(std::to_string(p) + " is not split in Q(sqrt(" + std::to_string(d) + "))");
    Integer x = *r;
    if (x > p - x) x = p - x;
    return quadratic_to(d, p, x.get_si());
}

Scalar ReductionMap::operator()(const Scalar& x) const
{
    if (!(x.field() == source_)) throw DomainError("reduction map applied to " + x.field().name());
    if (source_.kind() == Field::Kind::Rational) return Scalar(target_, x.rational());
    const auto& q = x.quad();
    return Scalar(target_, q.a) + Scalar(target_, q.b) * Scalar::from_int(target_, root_);
}

} // namespace clifq
