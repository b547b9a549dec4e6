#include "idexp/field.hpp"

#include <algorithm>
#include <sstream>

namespace idexp {

std::string rat_to_string(const Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

bool rat_is_integer(const Rat& r) {
    return r.get_den() == 1;
}

long rat_ceil(const Rat& r) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q.get_si();
}

Rat rat_lcm(const Rat& a, const Rat& b) {
    mpz_class ln, gd;
    mpz_lcm(ln.get_mpz_t(), a.get_num().get_mpz_t(), b.get_num().get_mpz_t());
    mpz_gcd(gd.get_mpz_t(), a.get_den().get_mpz_t(), b.get_den().get_mpz_t());
    Rat c(ln, gd);
    c.canonicalize();
    return c;
}

namespace {

using detail::FpPoly;

bool is_prime_u32(uint32_t p) {
    if (p < 2) return false;
    for (uint32_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

uint32_t mod_pow(uint64_t base, uint64_t e, uint32_t p) {
    uint64_t r = 1 % p;
    base %= p;
    while (e) {
        if (e & 1) r = r * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<uint32_t>(r);
}

uint32_t mod_inv(uint32_t a, uint32_t p) {
    if (a % p == 0) throw FieldError("division by zero in F_p");
    return mod_pow(a, p - 2, p);
}

void fp_trim(FpPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

FpPoly fp_add(const FpPoly& a, const FpPoly& b, uint32_t p) {
    FpPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        uint64_t s = (i < a.size() ? a[i] : 0u);
        if (i < b.size()) s += b[i];
        r[i] = static_cast<uint32_t>(s % p);
    }
    fp_trim(r);
    return r;
}

FpPoly fp_neg(const FpPoly& a, uint32_t p) {
    FpPoly r(a);
    for (auto& c : r) c = c ? p - c : 0;
    return r;
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, uint32_t p) {
    if (a.empty() || b.empty()) return {};
    FpPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            r[i + j] = static_cast<uint32_t>((r[i + j] + uint64_t(a[i]) * b[j]) % p);
        }
    }
    fp_trim(r);
    return r;
}

FpPoly fp_scale(const FpPoly& a, uint32_t c, uint32_t p) {
    FpPoly r(a);
    for (auto& x : r) x = static_cast<uint32_t>(uint64_t(x) * c % p);
    fp_trim(r);
    return r;
}

// Division with remainder; b nonzero.
std::pair<FpPoly, FpPoly> fp_divmod(FpPoly a, const FpPoly& b, uint32_t p) {
    FpPoly q;
    if (b.empty()) throw FieldError("division by zero polynomial in F_p[lam]");
    if (a.size() < b.size()) return {q, a};
    q.assign(a.size() - b.size() + 1, 0);
    uint32_t lead_inv = mod_inv(b.back(), p);
    for (size_t shift = a.size() - b.size() + 1; shift-- > 0;) {
        size_t i = shift + b.size() - 1;
        if (a[i] == 0) continue;
        uint32_t f = static_cast<uint32_t>(uint64_t(a[i]) * lead_inv % p);
        q[shift] = f;
        for (size_t j = 0; j < b.size(); ++j) {
            uint64_t sub = uint64_t(f) * b[j] % p;
            uint64_t cur = a[shift + j];
            a[shift + j] = static_cast<uint32_t>((cur + p - sub) % p);
        }
    }
    fp_trim(a);
    fp_trim(q);
    return {q, a};
}

FpPoly fp_gcd(FpPoly a, FpPoly b, uint32_t p) {
    while (!b.empty()) {
        auto [q, r] = fp_divmod(a, b, p);
        (void)q;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && a.back() != 1) a = fp_scale(a, mod_inv(a.back(), p), p);
    return a;
}

FieldElement::RatFun ratfun_make(FpPoly num, FpPoly den, uint32_t p) {
    if (den.empty()) throw FieldError("division by zero in F_p(lam)");
    if (num.empty()) return {FpPoly{}, FpPoly{1}};
    FpPoly g = fp_gcd(num, den, p);
    if (g.size() > 1 || (g.size() == 1 && g[0] != 1)) {
        num = fp_divmod(num, g, p).first;
        den = fp_divmod(den, g, p).first;
    }
    if (den.back() != 1) {
        uint32_t inv = mod_inv(den.back(), p);
        num = fp_scale(num, inv, p);
        den = fp_scale(den, inv, p);
    }
    return {std::move(num), std::move(den)};
}

std::string fp_poly_str(const FpPoly& f) {
    if (f.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = f.size(); i-- > 0;) {
        if (!f[i]) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0) {
            os << f[i];
        } else {
            if (f[i] != 1) os << f[i] << "*";
            os << "lam";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

}  // namespace

Field Field::prime(uint32_t p) {
    if (!is_prime_u32(p)) throw FieldError("characteristic must be prime: " + std::to_string(p));
    return Field(FieldKind::Prime, p);
}

Field Field::prime_function(uint32_t p) {
    if (!is_prime_u32(p)) throw FieldError("characteristic must be prime: " + std::to_string(p));
    return Field(FieldKind::PrimeFunction, p);
}

void Field::check(const FieldElement& a) const {
    if (a.kind() != kind_) throw FieldError("field descriptor mismatch");
}

FieldElement Field::zero() const { return from_int(0); }
FieldElement Field::one() const { return from_int(1); }

FieldElement Field::from_int(long n) const {
    switch (kind_) {
        case FieldKind::Rationals:
            return FieldElement(mpq_class(n));
        case FieldKind::Prime: {
            long r = n % static_cast<long>(p_);
            if (r < 0) r += p_;
            return FieldElement(static_cast<uint32_t>(r));
        }
        case FieldKind::PrimeFunction: {
            long r = n % static_cast<long>(p_);
            if (r < 0) r += p_;
            FpPoly num;
            if (r) num.push_back(static_cast<uint32_t>(r));
            return FieldElement(FieldElement::RatFun{num, FpPoly{1}});
        }
    }
    throw FieldError("unreachable");
}

FieldElement Field::from_rat(const Rat& q_in) const {
    Rat q(q_in);
    q.canonicalize();
    if (kind_ == FieldKind::Rationals) return FieldElement(std::move(q));
    mpz_class den = q.get_den();
    mpz_class p(p_);
    if (mpz_divisible_p(den.get_mpz_t(), p.get_mpz_t()))
        throw FieldError("denominator not invertible mod p");
    mpz_class num_m = q.get_num() % p;
    mpz_class den_m = den % p;
    long num = num_m.get_si();
    if (num < 0) num += p_;
    long denr = den_m.get_si();
    if (denr < 0) denr += p_;
    uint32_t v = static_cast<uint32_t>(uint64_t(num) * mod_inv(static_cast<uint32_t>(denr), p_) % p_);
    if (kind_ == FieldKind::Prime) return FieldElement(v);
    FpPoly numpoly;
    if (v) numpoly.push_back(v);
    return FieldElement(FieldElement::RatFun{numpoly, FpPoly{1}});
}

FieldElement Field::lambda() const {
    if (kind_ != FieldKind::PrimeFunction) throw FieldError("lam only exists in F_p(lam)");
    return FieldElement(FieldElement::RatFun{FpPoly{0, 1}, FpPoly{1}});
}

bool Field::is_zero(const FieldElement& a) const {
    check(a);
    switch (kind_) {
        case FieldKind::Rationals: return a.rat() == 0;
        case FieldKind::Prime: return a.residue() == 0;
        case FieldKind::PrimeFunction: return a.fun().num.empty();
    }
    return false;
}

bool Field::is_one(const FieldElement& a) const {
    check(a);
    switch (kind_) {
        case FieldKind::Rationals: return a.rat() == 1;
        case FieldKind::Prime: return a.residue() == 1;
        case FieldKind::PrimeFunction:
            return a.fun().num == FpPoly{1} && a.fun().den == FpPoly{1};
    }
    return false;
}

FieldElement Field::add(const FieldElement& a, const FieldElement& b) const {
    check(a); check(b);
    switch (kind_) {
        case FieldKind::Rationals: return FieldElement(mpq_class(a.rat() + b.rat()));
        case FieldKind::Prime: return FieldElement((a.residue() + b.residue()) % p_);
        case FieldKind::PrimeFunction: {
            const auto& x = a.fun();
            const auto& y = b.fun();
            FpPoly num = fp_add(fp_mul(x.num, y.den, p_), fp_mul(y.num, x.den, p_), p_);
            FpPoly den = fp_mul(x.den, y.den, p_);
            return FieldElement(ratfun_make(std::move(num), std::move(den), p_));
        }
    }
    throw FieldError("unreachable");
}

FieldElement Field::sub(const FieldElement& a, const FieldElement& b) const {
    return add(a, neg(b));
}

FieldElement Field::neg(const FieldElement& a) const {
    check(a);
    switch (kind_) {
        case FieldKind::Rationals: return FieldElement(mpq_class(-a.rat()));
        case FieldKind::Prime: return FieldElement(a.residue() ? p_ - a.residue() : 0u);
        case FieldKind::PrimeFunction: {
            auto f = a.fun();
            f.num = fp_neg(f.num, p_);
            return FieldElement(std::move(f));
        }
    }
    throw FieldError("unreachable");
}

FieldElement Field::mul(const FieldElement& a, const FieldElement& b) const {
    check(a); check(b);
    switch (kind_) {
        case FieldKind::Rationals: return FieldElement(mpq_class(a.rat() * b.rat()));
        case FieldKind::Prime:
            return FieldElement(static_cast<uint32_t>(uint64_t(a.residue()) * b.residue() % p_));
        case FieldKind::PrimeFunction: {
            const auto& x = a.fun();
            const auto& y = b.fun();
            return FieldElement(ratfun_make(fp_mul(x.num, y.num, p_), fp_mul(x.den, y.den, p_), p_));
        }
    }
    throw FieldError("unreachable");
}

FieldElement Field::inverse(const FieldElement& a) const {
    check(a);
    if (is_zero(a)) throw FieldError("division by zero");
    switch (kind_) {
        case FieldKind::Rationals: return FieldElement(mpq_class(1 / a.rat()));
        case FieldKind::Prime: return FieldElement(mod_inv(a.residue(), p_));
        case FieldKind::PrimeFunction: {
            const auto& f = a.fun();
            return FieldElement(ratfun_make(f.den, f.num, p_));
        }
    }
    throw FieldError("unreachable");
}

FieldElement Field::div(const FieldElement& a, const FieldElement& b) const {
    return mul(a, inverse(b));
}

FieldElement Field::pow(const FieldElement& a, unsigned long e) const {
    FieldElement r = one();
    FieldElement base = a;
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

std::optional<FieldElement> Field::pth_root(const FieldElement& a) const {
    check(a);
    if (p_ == 0) throw FieldError("pthRoot called in characteristic zero");
    if (kind_ == FieldKind::Prime) return a;  // Frobenius is the identity on F_p
    // F_p(lam): a = sum_{i<p} c_i^p lam^i with the p-basis {lam}; a p-th power
    // iff c_i = 0 for i >= 1, and then the root is c_0.
    const auto& f = a.fun();
    if (f.num.empty()) return from_int(0);
    FpPoly w = fp_mul(f.num, [&] {
        FpPoly dp{1};
        for (uint32_t i = 0; i + 1 < p_; ++i) dp = fp_mul(dp, f.den, p_);
        return dp;
    }(), p_);
    // w / den^p = a; split w by exponent residue mod p.
    std::vector<FpPoly> parts(p_);
    for (size_t j = 0; j < w.size(); ++j) {
        if (!w[j]) continue;
        auto& part = parts[j % p_];
        size_t k = j / p_;
        if (part.size() <= k) part.resize(k + 1, 0);
        part[k] = w[j];
    }
    for (uint32_t i = 1; i < p_; ++i) {
        fp_trim(parts[i]);
        if (!parts[i].empty()) return std::nullopt;
    }
    fp_trim(parts[0]);
    return FieldElement(ratfun_make(std::move(parts[0]), f.den, p_));
}

std::vector<FieldElement> Field::p_basis_decompose(const FieldElement& a) const {
    check(a);
    if (p_ == 0) throw FieldError("p_basis_decompose called in characteristic zero");
    if (kind_ == FieldKind::Prime) return {a};
    const auto& f = a.fun();
    std::vector<FieldElement> out;
    if (f.num.empty()) {
        out.assign(p_, from_int(0));
        return out;
    }
    FpPoly denpow{1};
    for (uint32_t i = 0; i + 1 < p_; ++i) denpow = fp_mul(denpow, f.den, p_);
    FpPoly w = fp_mul(f.num, denpow, p_);
    // a = w / den^p; split w by exponent residue mod p, using a^p = a on F_p
    std::vector<FpPoly> parts(p_);
    for (size_t j = 0; j < w.size(); ++j) {
        if (!w[j]) continue;
        auto& part = parts[j % p_];
        size_t k = j / p_;
        if (part.size() <= k) part.resize(k + 1, 0);
        part[k] = w[j];
    }
    for (uint32_t i = 0; i < p_; ++i) {
        fp_trim(parts[i]);
        out.push_back(FieldElement(ratfun_make(std::move(parts[i]), f.den, p_)));
    }
    return out;
}

std::optional<FieldElement> Field::qth_root(const FieldElement& a, unsigned long q) const {
    FieldElement r = a;
    while (q > 1) {
        if (p_ == 0 || q % p_ != 0) throw FieldError("qth_root: q must be a power of p");
        auto s = pth_root(r);
        if (!s) return std::nullopt;
        r = *s;
        q /= p_;
    }
    return r;
}

std::optional<FieldElement> Field::nth_root(const FieldElement& a, unsigned long n) const {
    check(a);
    if (n == 1) return a;
    if (is_zero(a)) return a;
    switch (kind_) {
        case FieldKind::Rationals: {
            mpz_class num = a.rat().get_num(), den = a.rat().get_den();
            mpz_class rn, rd;
            bool neg_in = num < 0;
            if (neg_in && n % 2 == 0) return std::nullopt;
            mpz_class absnum = abs(num);
            if (!mpz_root(rn.get_mpz_t(), absnum.get_mpz_t(), n)) return std::nullopt;
            if (!mpz_root(rd.get_mpz_t(), den.get_mpz_t(), n)) return std::nullopt;
            if (neg_in) rn = -rn;
            return FieldElement(mpq_class(Rat(rn, rd)));
        }
        case FieldKind::Prime: {
            // brute scan; p is small in this artifact
            for (uint32_t r = 0; r < p_; ++r)
                if (mod_pow(r, n, p_) == a.residue()) return FieldElement(r);
            return std::nullopt;
        }
        case FieldKind::PrimeFunction: {
            // only constants and pure p-power situations arise here
            unsigned long m = n;
            FieldElement r = a;
            while (p_ && m % p_ == 0) {
                auto s = pth_root(r);
                if (!s) return std::nullopt;
                r = *s;
                m /= p_;
            }
            if (m == 1) return r;
            const auto& f = r.fun();
            if (f.den == FpPoly{1} && f.num.size() <= 1) {
                uint32_t c = f.num.empty() ? 0 : f.num[0];
                for (uint32_t x = 0; x < p_; ++x)
                    if (mod_pow(x, m, p_) == c) {
                        FpPoly np;
                        if (x) np.push_back(x);
                        return FieldElement(FieldElement::RatFun{np, FpPoly{1}});
                    }
            }
            return std::nullopt;
        }
    }
    return std::nullopt;
}

std::string Field::str(const FieldElement& a) const {
    check(a);
    switch (kind_) {
        case FieldKind::Rationals: return rat_to_string(a.rat());
        case FieldKind::Prime: return std::to_string(a.residue());
        case FieldKind::PrimeFunction: {
            const auto& f = a.fun();
            std::string num = fp_poly_str(f.num);
            if (f.den == FpPoly{1}) return num;
            std::string den = fp_poly_str(f.den);
            std::string lhs = f.num.size() > 1 ? "(" + num + ")" : num;
            std::string rhs = f.den.size() > 1 ? "(" + den + ")" : den;
            return lhs + "/" + rhs;
        }
    }
    return "?";
}

std::string Field::descriptor() const {
    switch (kind_) {
        case FieldKind::Rationals: return "Q";
        case FieldKind::Prime: return "Fp(" + std::to_string(p_) + ")";
        case FieldKind::PrimeFunction: return "Fp(" + std::to_string(p_) + ",lam)";
    }
    return "?";
}

}  // namespace idexp
