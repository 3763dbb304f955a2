#include "clifq/integer.hpp"

#include "clifq/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <set>

namespace clifq::nt {

namespace {

long initial_bound()
{
    if (const char* env = std::getenv("QF_FACTOR_BOUND")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v >= 2) return v;
    }
    return 1000000;
}

std::atomic<long>& bound_storage()
{
    static std::atomic<long> bound{initial_bound()};
    return bound;
}

int mod8(const Integer& n)
{
    Integer r = n % 8;
    if (r < 0) r += 8;
    return static_cast<int>(r.get_si());
}

} // namespace

long factor_bound() { return bound_storage().load(); }

void set_factor_bound(long bound)
{
    if (bound < 2) throw DomainError("factor bound must be at least 2");
    bound_storage().store(bound);
}

std::vector<std::pair<Integer, int>> factor(const Integer& n)
{
    if (n == 0) throw DomainError("cannot factor zero");
    Integer m = abs(n);
    std::vector<std::pair<Integer, int>> out;
    auto strip = [&](long p) {
        if (mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(p))) {
            int e = 0;
            while (mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(p))) {
                mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), static_cast<unsigned long>(p));
                ++e;
            }
            out.emplace_back(Integer(p), e);
        }
    };
    const long bound = factor_bound();
    strip(2);
    for (long p = 3; p <= bound; p += 2) {
        if (m == 1) break;
        if (Integer(p) * p > m) break;
        strip(p);
    }
    if (m > 1) {
        Integer b(bound);
        if (m <= b * b || mpz_probab_prime_p(m.get_mpz_t(), 40) > 0) {
            out.emplace_back(m, 1);
        } else {
            throw BoundExceeded("trial division bound " + std::to_string(bound) +
                                " exceeded while factoring " + n.get_str());
        }
    }
    return out;
}

bool is_prime(const Integer& n)
{
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

Integer squarefree_part(const Integer& n)
{
    if (n == 0) throw DomainError("squarefree part of zero");
    Integer s = n < 0 ? Integer(-1) : Integer(1);
    for (const auto& [p, e] : factor(n))
        if (e % 2 == 1) s *= p;
    return s;
}

Integer squarefree_class(const Rational& q)
{
    if (q == 0) throw DomainError("square class of zero");
    return squarefree_part(Integer(q.get_num() * q.get_den()));
}

bool is_square(const Integer& n)
{
    if (n < 0) return false;
    return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

bool is_square(const Rational& q)
{
    return is_square(q.get_num()) && is_square(q.get_den());
}

std::optional<Rational> rational_sqrt(const Rational& q)
{
    if (!is_square(q)) return std::nullopt;
    Integer a, b;
    mpz_sqrt(a.get_mpz_t(), q.get_num_mpz_t());
    mpz_sqrt(b.get_mpz_t(), q.get_den_mpz_t());
    Rational r(a, b);
    r.canonicalize();
    return r;
}

int legendre(const Integer& a, const Integer& p)
{
    if (p == 2 || !is_prime(p)) throw DomainError("legendre symbol needs an odd prime, got " + p.get_str());
    Integer r = a % p;
    if (r < 0) r += p;
    return mpz_legendre(r.get_mpz_t(), p.get_mpz_t());
}

std::optional<Integer> sqrt_mod_prime(const Integer& a_in, const Integer& p)
{
    Integer a = a_in % p;
    if (a < 0) a += p;
    if (a == 0) return Integer(0);
    if (mpz_legendre(a.get_mpz_t(), p.get_mpz_t()) != 1) return std::nullopt;
    auto powm = [&](const Integer& b, const Integer& e) {
        Integer r;
        mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
        return r;
    };
    if (mod8(p) % 4 == 3) return powm(a, (p + 1) / 4);
    // Tonelli-Shanks
    Integer q = p - 1;
    long s = 0;
    while (mpz_even_p(q.get_mpz_t())) {
        q /= 2;
        ++s;
    }
    Integer z = 2;
    while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;
    Integer c = powm(z, q);
    Integer x = powm(a, (q + 1) / 2);
    Integer t = powm(a, q);
    long m = s;
    while (t != 1) {
        long i = 0;
        Integer tt = t;
        while (tt != 1) {
            tt = tt * tt % p;
            ++i;
        }
        Integer b = c;
        for (long j = 0; j < m - i - 1; ++j) b = b * b % p;
        x = x * b % p;
        c = b * b % p;
        t = t * c % p;
        m = i;
    }
    return x;
}

int valuation(Integer n, const Integer& p)
{
    if (n == 0) throw DomainError("valuation of zero");
    int v = 0;
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
        n /= p;
        ++v;
    }
    return v;
}

long mod_pow(long base, long exp, long p)
{
    __int128 result = 1;
    __int128 b = ((base % p) + p) % p;
    while (exp > 0) {
        if (exp & 1) result = result * b % p;
        b = b * b % p;
        exp >>= 1;
    }
    return static_cast<long>(result);
}

long mod_inverse(long a, long p)
{
    a = ((a % p) + p) % p;
    if (a == 0) throw DomainError("zero has no inverse modulo " + std::to_string(p));
    return mod_pow(a, p - 2, p);
}

Place Place::finite(Integer p)
{
    if (!is_prime(p)) throw DomainError("place must be a prime, got " + p.get_str());
    Place v;
    v.prime_ = std::move(p);
    return v;
}

Place Place::infinity()
{
    Place v;
    v.infinite_ = true;
    return v;
}

std::string Place::to_string() const
{
    return infinite_ ? std::string("inf") : prime_.get_str();
}

Place Place::parse(const std::string& text)
{
    if (text == "inf" || text == "oo" || text == "infinity") return infinity();
    Integer p;
    if (p.set_str(text, 10) != 0) throw DomainError("cannot parse place '" + text + "'");
    return finite(p);
}

bool Place::operator==(const Place& other) const
{
    return infinite_ == other.infinite_ && (infinite_ || prime_ == other.prime_);
}

bool Place::operator<(const Place& other) const
{
    if (infinite_ != other.infinite_) return !infinite_;
    if (infinite_) return false;
    return prime_ < other.prime_;
}

namespace {

// Integer in the same square class as q.
Integer integral_rep(const Rational& q)
{
    return Integer(q.get_num() * q.get_den());
}

} // namespace

int hilbert_symbol(const Rational& a, const Rational& b, const Place& v)
{
    if (a == 0 || b == 0) throw DomainError("hilbert symbol of zero");
    if (v.is_infinite()) return (a < 0 && b < 0) ? -1 : 1;
    Integer x = integral_rep(a), y = integral_rep(b);
    const Integer& p = v.prime();
    int alpha = valuation(x, p), beta = valuation(y, p);
    Integer u = x, w = y;
    for (int i = 0; i < alpha; ++i) u /= p;
    for (int i = 0; i < beta; ++i) w /= p;
    if (p == 2) {
        int um = mod8(u), wm = mod8(w);
        auto eps = [](int r) { return ((r - 1) / 2) & 1; };
        auto omega = [](int r) { return ((r * r - 1) / 8) & 1; };
        int e = eps(um) * eps(wm) + alpha * omega(wm) + beta * omega(um);
        return (e & 1) ? -1 : 1;
    }
    int sign = 1;
    if ((alpha * beta) & 1 && mod8(p) % 4 == 3) sign = -sign;
    if (beta & 1) sign *= mpz_legendre(Integer(((u % p) + p) % p).get_mpz_t(), p.get_mpz_t());
    if (alpha & 1) sign *= mpz_legendre(Integer(((w % p) + p) % p).get_mpz_t(), p.get_mpz_t());
    return sign;
}

std::vector<Place> relevant_places(const std::vector<Rational>& values)
{
    std::set<Place> places{Place::finite(2), Place::infinity()};
    for (const auto& q : values) {
        if (q == 0) throw DomainError("relevant places of zero");
        for (const auto& [p, e] : factor(integral_rep(q))) places.insert(Place::finite(p));
    }
    return {places.begin(), places.end()};
}

bool product_formula_check(const Rational& a, const Rational& b)
{
    int prod = 1;
    for (const auto& v : relevant_places({a, b})) prod *= hilbert_symbol(a, b, v);
    return prod == 1;
}

bool is_local_square(const Rational& q, const Place& v)
{
    if (q == 0) throw DomainError("local square test of zero");
    if (v.is_infinite()) return q > 0;
    Integer x = integral_rep(q);
    const Integer& p = v.prime();
    int e = valuation(x, p);
    if (e % 2) return false;
    for (int i = 0; i < e; ++i) x /= p;
    if (p == 2) return mod8(x) == 1;
    return legendre(x, p) == 1;
}

} // namespace clifq::nt
