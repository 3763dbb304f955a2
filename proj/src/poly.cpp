#include "clifq/errors.hpp"
#include "clifq/scalar.hpp"

#include <algorithm>
#include <set>

namespace clifq {

namespace {

Integer mod_p(const Integer& x, long p)
{
    Integer r = x % p;
    if (r < 0) r += p;
    return r;
}

} // namespace

Poly::Poly(long p, std::vector<Rational> coeffs) : p_(p), c_(std::move(coeffs))
{
    for (auto& c : c_) c = norm(c);
    trim();
}

Poly Poly::constant(const Rational& c, long p)
{
    return Poly(p, {c});
}

Poly Poly::t(long p)
{
    return Poly(p, {Rational(0), Rational(1)});
}

Rational Poly::norm(const Rational& x) const
{
    if (p_ == 0) {
        Rational r = x;
        r.canonicalize();
        return r;
    }
    Integer den = mod_p(x.get_den(), p_);
    if (den == 0) throw DomainError("denominator not invertible modulo " + std::to_string(p_));
    Integer num = mod_p(x.get_num(), p_);
    long inv = nt::mod_inverse(den.get_si(), p_);
    return Rational(mod_p(num * inv, p_));
}

Rational Poly::inv(const Rational& x) const
{
    if (x == 0) throw DomainError("division by zero");
    if (p_ == 0) return Rational(1) / x;
    return Rational(nt::mod_inverse(Integer(x.get_num()).get_si(), p_));
}

void Poly::trim()
{
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational Poly::coeff(int i) const
{
    if (i < 0 || i >= static_cast<int>(c_.size())) return Rational(0);
    return c_[static_cast<size_t>(i)];
}

const Rational& Poly::lc() const
{
    if (c_.empty()) throw DomainError("leading coefficient of zero polynomial");
    return c_.back();
}

Poly Poly::operator+(const Poly& o) const
{
    std::vector<Rational> r(std::max(c_.size(), o.c_.size()));
    for (size_t i = 0; i < r.size(); ++i) r[i] = coeff(static_cast<int>(i)) + o.coeff(static_cast<int>(i));
    return Poly(p_, std::move(r));
}

Poly Poly::operator-() const
{
    std::vector<Rational> r(c_.size());
    for (size_t i = 0; i < r.size(); ++i) r[i] = -c_[i];
    return Poly(p_, std::move(r));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const
{
    if (is_zero() || o.is_zero()) return Poly(p_);
    std::vector<Rational> r(c_.size() + o.c_.size() - 1);
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return Poly(p_, std::move(r));
}

Poly Poly::scaled(const Rational& c) const
{
    std::vector<Rational> r(c_);
    for (auto& x : r) x *= c;
    return Poly(p_, std::move(r));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& o) const
{
    if (o.is_zero()) throw DomainError("polynomial division by zero");
    Poly rem = *this;
    if (degree() < o.degree()) return {Poly(p_), rem};
    std::vector<Rational> q(static_cast<size_t>(degree() - o.degree() + 1));
    Rational inv_lc = inv(o.lc());
    while (!rem.is_zero() && rem.degree() >= o.degree()) {
        int shift = rem.degree() - o.degree();
        Rational f = norm(rem.lc() * inv_lc);
        q[static_cast<size_t>(shift)] = f;
        for (int i = 0; i <= o.degree(); ++i) {
            auto& c = rem.c_[static_cast<size_t>(i + shift)];
            c = norm(c - f * o.c_[static_cast<size_t>(i)]);
        }
        rem.trim();
    }
    return {Poly(p_, std::move(q)), rem};
}

Poly Poly::monic() const
{
    if (is_zero()) return *this;
    return scaled(inv(lc()));
}

Poly Poly::derivative() const
{
    if (c_.size() <= 1) return Poly(p_);
    std::vector<Rational> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<long>(i);
    return Poly(p_, std::move(r));
}

Rational Poly::eval(const Rational& x) const
{
    Rational acc = 0;
    for (size_t i = c_.size(); i-- > 0;) acc = norm(acc * x + c_[i]);
    return acc;
}

bool Poly::operator<(const Poly& o) const
{
    if (degree() != o.degree()) return degree() < o.degree();
    for (size_t i = c_.size(); i-- > 0;)
        if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
    return false;
}

std::string Poly::to_string(const std::string& var) const
{
    if (is_zero()) return "0";
    std::string out;
    for (size_t i = c_.size(); i-- > 0;) {
        const Rational& c = c_[i];
        if (c == 0) continue;
        Rational mag = abs(c);
        bool neg = c < 0;
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? "-" : "+";
        }
        std::string mono;
        if (i >= 1) mono = var + (i > 1 ? "^" + std::to_string(i) : "");
        if (i == 0) {
            out += mag.get_str();
        } else if (mag == 1) {
            out += mono;
        } else {
            out += mag.get_str() + "*" + mono;
        }
    }
    return out;
}

Poly gcd(Poly a, Poly b)
{
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

namespace {

// p-th root of a polynomial in t^p over F_p.
Poly pth_root(const Poly& f)
{
    long p = f.characteristic();
    std::vector<Rational> r;
    for (int i = 0; i <= f.degree(); i += static_cast<int>(p)) r.push_back(f.coeff(i));
    return Poly(p, std::move(r));
}

void sqf_rec(const Poly& f, int mult, std::vector<std::pair<Poly, int>>& out)
{
    if (f.degree() <= 0) return;
    long p = f.characteristic();
    Poly g = f.derivative();
    if (g.is_zero()) {
        sqf_rec(pth_root(f), mult * static_cast<int>(p), out);
        return;
    }
    Poly c = gcd(f, g);
    Poly w = f / c;
    int i = 1;
    while (w.degree() > 0) {
        Poly y = gcd(w, c);
        Poly z = w / y;
        if (z.degree() > 0) out.emplace_back(z.monic(), i * mult);
        ++i;
        w = y;
        c = c / y;
    }
    if (c.degree() > 0) {
        if (p == 0) throw VerificationFailure("squarefree decomposition left a nonconstant cofactor");
        sqf_rec(pth_root(c.monic()), mult * static_cast<int>(p), out);
    }
}

// Enumerate monic polynomials of degree d over F_p in lexicographic order.
bool next_monic(std::vector<Rational>& c, long p)
{
    for (size_t i = 0; i + 1 < c.size(); ++i) {
        Integer v = c[i].get_num() + 1;
        if (v < p) {
            c[i] = Rational(v);
            return true;
        }
        c[i] = 0;
    }
    return false;
}

std::vector<Poly> factor_squarefree_fp(Poly f)
{
    long p = f.characteristic();
    std::vector<Poly> out;
    for (int d = 1; 2 * d <= f.degree(); ++d) {
        double count = 1;
        for (int i = 0; i < d; ++i) count *= static_cast<double>(p);
        if (count > 2e6) throw BoundExceeded("polynomial factorization search over F_" + std::to_string(p) + " too large");
        std::vector<Rational> c(static_cast<size_t>(d + 1), Rational(0));
        c.back() = 1;
        do {
            Poly cand(p, c);
            while (f.degree() >= d) {
                auto [q, r] = f.divmod(cand);
                if (!r.is_zero()) break;
                out.push_back(cand);
                f = q;
            }
        } while (2 * d <= f.degree() && next_monic(c, p));
    }
    if (f.degree() > 0) out.push_back(f.monic());
    return out;
}

std::vector<Integer> divisors(const Integer& n)
{
    std::vector<Integer> ds{Integer(1)};
    if (n == 0) return ds;
    for (const auto& [p, e] : nt::factor(n)) {
        size_t cur = ds.size();
        Integer pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < cur; ++i) ds.push_back(ds[i] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

std::vector<Poly> factor_squarefree_q(Poly f)
{
    std::vector<Poly> out;
    f = f.monic();
    while (f.degree() >= 1) {
        if (f.coeff(0) == 0) {
            out.push_back(Poly::t(0));
            f = f / Poly::t(0);
            continue;
        }
        // Integer primitive multiple.
        Integer den = 1;
        for (const auto& c : f.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
        Integer lead = Integer(f.lc() * den);
        Integer cst = Integer(f.coeff(0) * den);
        bool found = false;
        for (const auto& a : divisors(cst)) {
            for (const auto& b : divisors(lead)) {
                for (int s : {1, -1}) {
                    Rational r(a * s, b);
                    r.canonicalize();
                    if (f.eval(r) == 0) {
                        Poly lin(0, {-r, Rational(1)});
                        out.push_back(lin);
                        f = f / lin;
                        found = true;
                        break;
                    }
                }
                if (found) break;
            }
            if (found) break;
        }
        if (found) continue;
        if (f.degree() <= 3) {
            out.push_back(f);
            break;
        }
        throw BoundExceeded("cannot certify a factorization of the root-free polynomial " + f.to_string() +
                            " of degree " + std::to_string(f.degree()));
    }
    return out;
}

} // namespace

std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& f)
{
    if (f.is_zero()) throw DomainError("squarefree decomposition of zero");
    std::vector<std::pair<Poly, int>> out;
    sqf_rec(f.monic(), 1, out);
    return out;
}

PolyFactorization factor_poly(const Poly& f)
{
    if (f.is_zero()) throw DomainError("cannot factor the zero polynomial");
    PolyFactorization res{f.lc(), {}};
    std::vector<std::pair<Poly, int>> raw;
    for (const auto& [g, e] : squarefree_decomposition(f)) {
        auto irr = f.characteristic() == 0 ? factor_squarefree_q(g) : factor_squarefree_fp(g);
        for (auto& h : irr) raw.emplace_back(std::move(h), e);
    }
    std::sort(raw.begin(), raw.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (auto& [g, e] : raw) {
        if (!res.factors.empty() && res.factors.back().first == g)
            res.factors.back().second += e;
        else
            res.factors.emplace_back(std::move(g), e);
    }
    return res;
}

bool is_irreducible(const Poly& f)
{
    if (f.degree() < 1) return false;
    auto fac = factor_poly(f);
    return fac.factors.size() == 1 && fac.factors[0].second == 1;
}

} // namespace clifq
